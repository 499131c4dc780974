"""Colorful rooted-tree embedding into digraphs, and the exact bracket solver.

The engine answers: does the host contain a copy of a rooted tree pattern,
with the pattern root pinned to a distinguished host vertex, all arcs running
parent to child, and all image vertices carrying pairwise distinct colors?
It runs a bottom-up DP whose state per (pattern node, host vertex) is the
family of usable color sets, kept as bitmasks, so the work is bounded by
2**num_colors times a polynomial in the host size.

Two specializations live here as well:

* a bit-packed batch evaluator that decides many colorings of the same
  pattern/host at once (64 per machine word), and
* ``solve_exact``, which runs the identity coloring.  There a color set IS a
  player set, so the per-(node, vertex) families collapse into one word per
  subset of players: bit u of ``winners[S]`` says u can win a bracket on
  exactly S.  That keeps the spanning-arborescence search at 2**n words.
"""

from __future__ import annotations

import itertools
import sys
from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

from .arborescence import Lba, UbaShape
from .core import Tournament

__all__ = [
    "PatternTree",
    "HostGraph",
    "Coloring",
    "Embedding",
    "embed_colorful_tree",
    "solve_exact",
]

DEFAULT_MAX_COLORS = 24


@dataclass(frozen=True)
class PatternTree:
    """Rooted tree on nodes 0..n-1; ``parents[root]`` is -1, arcs run parent to child."""

    parents: tuple[int, ...]
    root: int

    def __post_init__(self):
        n = len(self.parents)
        if not 0 <= self.root < n or self.parents[self.root] != -1:
            raise ValueError("root must be the unique node with parent -1")
        for x in range(n):
            seen = set()
            y = x
            while y != self.root:
                if y in seen or not 0 <= self.parents[y] < n:
                    raise ValueError("parents do not form a tree on the root")
                seen.add(y)
                y = self.parents[y]

    @property
    def n(self) -> int:
        return len(self.parents)

    @cached_property
    def children(self) -> tuple[tuple[int, ...], ...]:
        kids: list[list[int]] = [[] for _ in range(self.n)]
        for x, p in enumerate(self.parents):
            if p >= 0:
                kids[p].append(x)
        return tuple(tuple(k) for k in kids)

    @cached_property
    def subtree_sizes(self) -> tuple[int, ...]:
        sizes = [1] * self.n
        for x in self.postorder:  # children come first
            for c in self.children[x]:
                sizes[x] += sizes[c]
        return tuple(sizes)

    @cached_property
    def postorder(self) -> tuple[int, ...]:
        order: list[int] = []
        stack: list[tuple[int, bool]] = [(self.root, False)]
        while stack:
            x, done = stack.pop()
            if done:
                order.append(x)
                continue
            stack.append((x, True))
            stack.extend((c, False) for c in self.children[x])
        return tuple(order)

    @classmethod
    def from_uba(cls, shape: UbaShape) -> "PatternTree":
        return cls(parents=shape.parents(), root=0)


@dataclass(frozen=True)
class HostGraph:
    """Digraph over vertices 0..n-1 stored as out-neighbor bitmask rows."""

    out_masks: tuple[int, ...]
    distinguished: int | None = None

    def __post_init__(self):
        full = (1 << self.n) - 1
        for u, row in enumerate(self.out_masks):
            if row & ~full or row >> u & 1:
                raise ValueError(f"bad out-mask for vertex {u}")

    @property
    def n(self) -> int:
        return len(self.out_masks)

    def out_list(self, u: int) -> list[int]:
        out = []
        m = self.out_masks[u]
        while m:
            low = m & -m
            out.append(low.bit_length() - 1)
            m ^= low
        return out

    @classmethod
    def from_tournament(cls, t: Tournament) -> "HostGraph":
        return cls(out_masks=t.out_masks)


@dataclass(frozen=True)
class Coloring:
    """Total vertex coloring with colors drawn from 1..num_colors inclusive."""

    color_of: dict[int, int]
    num_colors: int

    def __post_init__(self):
        for v, c in self.color_of.items():
            if not 1 <= c <= self.num_colors:
                raise ValueError(f"color {c} of vertex {v} outside 1..{self.num_colors}")


@dataclass(frozen=True)
class Embedding:
    """Injective pattern-node to host-vertex map found by the engine."""

    mapping: dict[int, int]


def _run_dp(pattern: PatternTree, host: HostGraph, d: int, col: Coloring):
    """Families of color masks per (pattern node, host vertex), plus back-pointers.

    Families at the pattern root are only evaluated at host vertex d.  Every
    merge stage records, per merged mask, the (prefix mask, child host, child
    mask) that first produced it, which is enough to rebuild one witness.
    """
    colbit = [col.color_of[v] - 1 for v in range(host.n)]
    out = [host.out_list(u) for u in range(host.n)]
    children = pattern.children
    fam: dict[int, dict[int, set[int]]] = {}
    back: dict[tuple[int, int, int], dict[int, tuple[int, int, int]]] = {}
    for x in pattern.postorder:
        hosts = [d] if x == pattern.root else list(range(host.n))
        fx: dict[int, set[int]] = {}
        for h in hosts:
            cur: set[int] = {1 << colbit[h]}
            for i, y in enumerate(children[x]):
                reach: dict[int, int] = {}
                fy = fam[y]
                for h2 in out[h]:
                    for m2 in sorted(fy[h2]):
                        reach.setdefault(m2, h2)
                stage: dict[int, tuple[int, int, int]] = {}
                for s1 in sorted(cur):
                    for m2, h2 in reach.items():
                        if s1 & m2:
                            continue
                        merged = s1 | m2
                        if merged not in stage:
                            stage[merged] = (s1, h2, m2)
                back[(x, i, h)] = stage
                cur = set(stage)
                if not cur:
                    break
            fx[h] = cur
        fam[x] = fx
    return fam, back


def _dp_families(pattern, host, f, d, col):
    """Test hook: the raw DP families (root family evaluated at d only)."""
    fam, _ = _run_dp(pattern, host, d, col)
    return fam


def _check_embedding(pattern, host, f, d, col, emb: Embedding) -> None:
    m = emb.mapping
    assert set(m) == set(range(pattern.n)), "embedding must cover the pattern"
    assert m[f] == d, "root must land on the distinguished vertex"
    images = list(m.values())
    assert len(set(images)) == len(images), "embedding must be injective"
    colors = [col.color_of[h] for h in images]
    assert len(set(colors)) == len(colors), "image colors must be distinct"
    for x, p in enumerate(pattern.parents):
        if p >= 0:
            assert host.out_masks[m[p]] >> m[x] & 1, "pattern arc missing in host"


def embed_colorful_tree(
    pattern: PatternTree,
    host: HostGraph,
    f: int,
    d: int,
    col: Coloring,
    *,
    max_colors: int = DEFAULT_MAX_COLORS,
) -> Embedding | None:
    """Find a color-injective copy of ``pattern`` whose root lands on ``d``.

    Returns one witness embedding, or None when no colorful copy exists.  The
    search is exact; the answer is one-sided only in the sense that callers
    sampling colorings may miss copies that their coloring does not make
    colorful.  ``max_colors`` guards the 2**num_colors DP width.
    """
    if f != pattern.root:
        raise ValueError("distinguished pattern node must be the pattern root")
    if not 0 <= d < host.n:
        raise ValueError(f"distinguished host vertex {d} out of range")
    for v in range(host.n):
        if v not in col.color_of:
            raise ValueError(f"coloring misses host vertex {v}")
    if col.num_colors > max_colors:
        raise ValueError(
            f"coloring uses {col.num_colors} colors, above the DP budget {max_colors}"
        )

    fam, back = _run_dp(pattern, host, d, col)
    masks = fam[pattern.root][d]
    if not masks:
        return None
    mapping: dict[int, int] = {}

    def rebuild(x: int, h: int, mask: int) -> None:
        mapping[x] = h
        kids = pattern.children[x]
        m = mask
        for i in reversed(range(len(kids))):
            s1, h2, m2 = back[(x, i, h)][m]
            rebuild(kids[i], h2, m2)
            m = s1

    rebuild(pattern.root, d, min(masks))
    emb = Embedding(mapping)
    _check_embedding(pattern, host, f, d, col, emb)
    return emb


# ---------------------------------------------------------------------------
# Batched decisions: many colorings of one pattern/host, bit-packed.

_BATCH_MAX_COLORS = 20


@lru_cache(maxsize=None)
def _masks_of_popcount(num_colors: int, pc: int) -> tuple[int, ...]:
    return tuple(
        sum(1 << b for b in comb)
        for comb in itertools.combinations(range(num_colors), pc)
    )


@lru_cache(maxsize=None)
def _disjoint_pairs(num_colors: int, a: int, b: int) -> tuple[tuple[int, int, int], ...]:
    pairs = []
    for s1 in _masks_of_popcount(num_colors, a):
        for s2 in _masks_of_popcount(num_colors, b):
            if not s1 & s2:
                pairs.append((s1, s2, s1 | s2))
    return tuple(pairs)


def _pack_bits(bools: np.ndarray) -> np.ndarray:
    """[B, H] bools with B % 64 == 0 -> [B//64, H] uint64, bit j = row 64w+j."""
    packed = np.packbits(bools, axis=0, bitorder="little")  # [B//8, H]
    words = packed.T.copy().view(np.uint64)  # [H, B//64]
    if sys.byteorder == "big":
        words = words.byteswap()
    return words.T


def _unpack_bits(words: np.ndarray, count: int) -> np.ndarray:
    w = words.byteswap() if sys.byteorder == "big" else words
    bits = np.unpackbits(np.ascontiguousarray(w).view(np.uint8), bitorder="little")
    return bits[:count].astype(bool)


def _shape_keys(pattern: PatternTree) -> list[tuple]:
    """Canonical key of every node's subtree; equal keys share DP families."""
    keys: list[tuple] = [()] * pattern.n
    for x in pattern.postorder:
        keys[x] = tuple(sorted(keys[c] for c in pattern.children[x]))
    return keys


def _decide_colorful_batch(
    pattern: PatternTree,
    host: HostGraph,
    d: int,
    color_idx: np.ndarray,
    num_colors: int,
) -> np.ndarray:
    """Per-coloring embedding decisions for a [B, H] array of 0-based colors.

    Exactly the engine's DP with a batch dimension bit-packed 64 colorings per
    word; identical subtree shapes are evaluated once and the root only at d.
    """
    if num_colors > _BATCH_MAX_COLORS:
        raise ValueError(f"batch DP capped at {_BATCH_MAX_COLORS} colors")
    B, H = color_idx.shape
    if H != host.n:
        raise ValueError("color array width must match the host")
    C = num_colors
    M = 1 << C
    padded_rows = -(-B // 64) * 64
    W = padded_rows // 64
    idx = np.full((padded_rows, H), -1, dtype=np.int32)
    idx[:B] = color_idx

    base = np.zeros((W, H, M), np.uint64)
    for c in range(C):
        base[:, :, 1 << c] = _pack_bits(idx == c)

    keys = _shape_keys(pattern)
    sizes = pattern.subtree_sizes
    size_of = {keys[x]: sizes[x] for x in range(pattern.n)}
    out_lists = [host.out_list(u) for u in range(host.n)]

    def reach_of(child_fam: np.ndarray) -> np.ndarray:
        r = np.zeros_like(child_fam)
        for h in range(H):
            if out_lists[h]:
                r[:, h, :] = np.bitwise_or.reduce(child_fam[:, out_lists[h], :], axis=1)
        return r

    fam: dict[tuple, np.ndarray] = {(): base}
    reach_memo: dict[tuple, np.ndarray] = {}
    inner = sorted(
        {keys[x] for x in range(pattern.n) if x != pattern.root and keys[x] != ()},
        key=lambda kk: size_of[kk],
    )
    for key in inner:
        cur = base
        acc = 1
        for ck in key:
            if ck not in reach_memo:
                reach_memo[ck] = reach_of(fam[ck])
            reach = reach_memo[ck]
            new = np.zeros((W, H, M), np.uint64)
            for s1, s2, un in _disjoint_pairs(C, acc, size_of[ck]):
                new[:, :, un] |= cur[:, :, s1] & reach[:, :, s2]
            cur = new
            acc += size_of[ck]
        fam[key] = cur

    # root: evaluated at the distinguished vertex only
    cur_d = base[:, d, :]
    acc = 1
    out_d = out_lists[d]
    for ck in keys[pattern.root]:
        child_fam = fam[ck]
        reach_d = (
            np.bitwise_or.reduce(child_fam[:, out_d, :], axis=1)
            if out_d
            else np.zeros((W, M), np.uint64)
        )
        new = np.zeros((W, M), np.uint64)
        for s1, s2, un in _disjoint_pairs(C, acc, size_of[ck]):
            new[:, un] |= cur_d[:, s1] & reach_d[:, s2]
        cur_d = new
        acc += size_of[ck]

    dec = np.zeros(W, np.uint64)
    for m in _masks_of_popcount(C, pattern.n):
        dec |= cur_d[:, m]
    return _unpack_bits(dec, B)


# ---------------------------------------------------------------------------
# Exact solver via the identity coloring.


@lru_cache(maxsize=None)
def _split_levels(n: int):
    """Per bracket size s: all (sub, rest) splits of every s-subset of players.

    Splits are grouped set-major with a fixed count per set, and each sub
    contains its set's smallest player so that unordered splits appear once.
    """
    levels = []
    size = 2
    while size <= n:
        combos = np.array(list(itertools.combinations(range(n), size)), np.int64)
        masks = (np.int64(1) << combos).sum(axis=1)
        pats = list(itertools.combinations(range(1, size), size // 2 - 1))
        cols = [
            (np.int64(1) << combos[:, [0, *p]]).sum(axis=1) for p in pats
        ]
        s1 = np.stack(cols, axis=1).reshape(-1)
        s2 = np.repeat(masks, len(pats)) - s1
        levels.append((s1, s2, masks, len(pats)))
        size *= 2
    return tuple(levels)


def _winners_table(t: Tournament) -> np.ndarray:
    """Bit u of winners[S]: player u can win a bracket on exactly the set S."""
    n = t.n
    winners = np.zeros(1 << n, np.uint32)
    for u in range(n):
        winners[1 << u] = 1 << u
    for s1, s2, targets, per_set in _split_levels(n):
        a = winners[s1]
        b = winners[s2]
        ch = np.zeros(a.shape, np.uint32)
        for u in range(n):
            om = t.out_masks[u]
            bit = np.uint32(1 << u)
            ch |= ((a & bit != 0) & (b & om != 0)).astype(np.uint32) * bit
            ch |= ((b & bit != 0) & (a & om != 0)).astype(np.uint32) * bit
        winners[targets] = np.bitwise_or.reduce(ch.reshape(-1, per_set), axis=1)
    return winners


def _extract_arborescence(
    t: Tournament, winners: np.ndarray, root: int, mask: int, parent: dict[int, int]
) -> None:
    if mask == 1 << root:
        return
    bits = [b for b in range(t.n) if mask >> b & 1]
    half = len(bits) // 2
    others = [b for b in bits if b != root]
    for sub_bits in itertools.combinations(others, half - 1):
        sub = (1 << root) + sum(1 << b for b in sub_bits)
        rest = mask ^ sub
        if not int(winners[sub]) >> root & 1:
            continue
        cand = int(winners[rest]) & t.out_masks[root]
        if not cand:
            continue
        v = (cand & -cand).bit_length() - 1
        parent[v] = root
        _extract_arborescence(t, winners, root, sub, parent)
        _extract_arborescence(t, winners, v, rest, parent)
        return
    raise AssertionError("winners table admits no split; table is inconsistent")


def solve_exact(t: Tournament, *, limit: int = 16) -> Lba | None:
    """Spanning arborescence rooted at the favorite, or None if none exists.

    Equivalent to embedding the full-bracket tree pattern under the identity
    coloring with the root pinned to the favorite; see the module docstring
    for why that collapses to one winners word per player subset.  Guarded at
    ``limit`` players since the table has 2**n entries.
    """
    if t.n > limit:
        raise ValueError(f"exact solver is capped at {limit} players, got n={t.n}")
    if t.n == 1:
        return Lba(root=t.vstar, parent={})
    winners = _winners_table(t)
    full = (1 << t.n) - 1
    if not int(winners[full]) >> t.vstar & 1:
        return None
    parent: dict[int, int] = {}
    _extract_arborescence(t, winners, t.vstar, full, parent)
    return Lba(root=t.vstar, parent=parent)
