"""Binomial arborescences: the arc structure of a single-elimination win.

The champion of a 2**c bracket beats one opponent per round, and the opponent
beaten in round r had itself won a sub-bracket of size 2**(r-1).  Drawing an
arc from each match winner to its loser therefore yields a spanning binomial
arborescence, and conversely any spanning binomial arborescence rooted at a
player can be folded back into a seeding that player wins.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .core import Seeding, Tournament, bracket_rounds, simulate

__all__ = [
    "UbaShape",
    "Lba",
    "uba_shape",
    "is_lba",
    "seeding_to_lba",
    "lba_to_seeding",
    "arbitrary_lba",
    "merge_lbas",
    "serialize_lba",
    "parse_lba",
]


@dataclass(frozen=True)
class UbaShape:
    """Canonical unlabeled binomial arborescence on 2**order nodes.

    Node 0 is the root and the parent of node i > 0 clears i's lowest set
    bit.  Under that numbering the subtree of node i is the contiguous range
    [i, i + lowbit(i)), so the root's children 1, 2, 4, ... carry subtrees of
    sizes 1, 2, 4, ... in ascending order.
    """

    order: int

    def __post_init__(self):
        if self.order < 0:
            raise ValueError("order must be non-negative")

    @property
    def size(self) -> int:
        return 1 << self.order

    def parent_of(self, i: int) -> int:
        if not 0 < i < self.size:
            raise ValueError(f"node {i} has no parent")
        return i & (i - 1)

    def children_of(self, i: int) -> list[int]:
        """Children of node i, ascending (equivalently: by subtree size)."""
        limit = (i & -i) if i else self.size
        return [i + (1 << j) for j in range(limit.bit_length() - 1)]

    def subtree_size(self, i: int) -> int:
        return self.size if i == 0 else i & -i

    def parents(self) -> tuple[int, ...]:
        """Parent of every node, -1 for the root."""
        return (-1,) + tuple(i & (i - 1) for i in range(1, self.size))


def uba_shape(c: int) -> UbaShape:
    """The (unique) binomial arborescence shape on 2**c nodes."""
    return UbaShape(c)


@dataclass(frozen=True)
class Lba:
    """Binomial arborescence labeled by player ids.

    ``parent`` maps every non-root vertex to its parent; arcs run parent to
    child and stand for "parent beat child".  Treat instances as immutable.
    """

    root: int
    parent: dict[int, int]

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(self.parent) | {self.root}

    @property
    def size(self) -> int:
        return len(self.parent) + 1


def _tree_structure(l: Lba) -> tuple[dict[int, list[int]], dict[int, int]] | None:
    """Children lists and subtree sizes, or None if not a tree rooted at l.root."""
    if l.root in l.parent:
        return None
    verts = l.vertices
    children: dict[int, list[int]] = {v: [] for v in verts}
    for v, p in l.parent.items():
        if p not in verts:
            return None
        children[p].append(v)
    sizes: dict[int, int] = {}
    order: list[int] = []
    stack = [l.root]
    while stack:  # reachability from the root rules out cycles and strays
        u = stack.pop()
        order.append(u)
        stack.extend(children[u])
    if len(order) != len(verts):
        return None
    for u in reversed(order):
        sizes[u] = 1 + sum(sizes[c] for c in children[u])
    return children, sizes


def _shape_ok(children: dict[int, list[int]], sizes: dict[int, int], root: int) -> bool:
    """Every node's child subtrees must have sizes exactly 1, 2, 4, ..."""
    for u, kids in children.items():
        got = sorted(sizes[c] for c in kids)
        if got != [1 << j for j in range(len(kids))]:
            return False
    return sizes[root] == len(sizes)


def is_lba(t: Tournament, cand: Lba) -> bool:
    """True iff cand is a binomial arborescence whose arcs all exist in t."""
    if not all(0 <= v < t.n for v in cand.vertices):
        return False
    struct = _tree_structure(cand)
    if struct is None:
        return False
    children, sizes = struct
    if not _shape_ok(children, sizes, cand.root):
        return False
    return all(t.beats(p, v) for v, p in cand.parent.items())


def seeding_to_lba(t: Tournament, s: Seeding) -> Lba:
    """Spanning arborescence of the bracket ``s``: every loser hangs off its winner."""
    trace = simulate(t, s)
    parent = {l: w for matches in trace.rounds for w, l in matches}
    return Lba(root=trace.champion, parent=parent)


def lba_to_seeding(l: Lba) -> Seeding:
    """Fold a spanning arborescence back into a seeding its root wins.

    At every node the largest child subtree becomes the opposite half of the
    block, so the root meets that child's root in the block's last round.
    """
    struct = _tree_structure(l)
    if struct is None or not _shape_ok(*struct, l.root):
        raise ValueError("not a binomial arborescence")
    children, sizes = struct
    for u in children:
        children[u].sort(key=lambda c: sizes[c])

    def fill(u: int, kids: list[int]) -> list[int]:
        if not kids:
            return [u]
        return fill(u, kids[:-1]) + fill(kids[-1], children[kids[-1]])

    return Seeding(tuple(fill(l.root, children[l.root])))


def arbitrary_lba(t: Tournament, x: Iterable[int]) -> Lba:
    """Arborescence over the player set ``x`` from a fixed (ascending) bracket."""
    xs = sorted(set(x))
    if not xs or len(xs) & (len(xs) - 1):
        raise ValueError(f"block size {len(xs)} is not a power of two")
    if not all(0 <= v < t.n for v in xs):
        raise ValueError("block contains unknown players")
    rounds = bracket_rounds(t, xs)
    parent = {l: w for matches in rounds for w, l in matches}
    root = rounds[-1][0][0] if rounds else xs[0]
    return Lba(root=root, parent=parent)


def merge_lbas(t: Tournament, a: Lba, b: Lba) -> Lba:
    """Join two disjoint equal-size arborescences by playing root against root."""
    if a.size != b.size:
        raise ValueError("can only merge arborescences of equal size")
    if a.vertices & b.vertices:
        raise ValueError("arborescences overlap")
    win, lose = (a, b) if t.beats(a.root, b.root) else (b, a)
    parent = dict(win.parent)
    parent.update(lose.parent)
    parent[lose.root] = win.root
    return Lba(root=win.root, parent=parent)


def serialize_lba(l: Lba) -> str:
    """Line format: ``lba root=<id>`` then one ``child <v> parent <u>`` per arc."""
    out = [f"lba root={l.root}"]
    for v in sorted(l.parent):
        out.append(f"child {v} parent {l.parent[v]}")
    return "\n".join(out) + "\n"


def parse_lba(text: str) -> Lba:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("lba root="):
        raise ValueError("expected 'lba root=<id>' header")
    root = int(lines[0].removeprefix("lba root="))
    parent = {}
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 4 or parts[0] != "child" or parts[2] != "parent":
            raise ValueError(f"malformed arc line: {ln!r}")
        parent[int(parts[1])] = int(parts[3])
    return Lba(root=root, parent=parent)
