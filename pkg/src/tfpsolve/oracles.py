"""Exhaustive baselines and structural checks used to validate the solvers.

Everything here favors being obviously correct over being fast: seedings are
enumerated one bracket-equivalence class at a time, witness forests are found
by straight backtracking, and the niceness/repair machinery manipulates
explicit match lists.  Hard player caps raise ``OracleLimitError`` before a
call can silently take hours.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

from .arborescence import Lba, _tree_structure, arbitrary_lba, is_lba
from .core import (
    KnockoutTrace,
    Match,
    Seeding,
    Tournament,
    bracket_rounds,
    champion_of,
    seeding_from_sequence,
    simulate,
    validate_match_sequence,
)

__all__ = [
    "OracleLimitError",
    "NicenessReport",
    "enumerate_seedings",
    "brute_force_decide",
    "niceness",
    "repair_to_nice",
    "extract_local_lba",
    "is_wwf",
    "brute_force_wwf",
]


class OracleLimitError(ValueError):
    """An exhaustive routine was asked for more players than its cap allows."""


def _brackets(players: tuple[int, ...]) -> Iterator[list[int]]:
    # One representative per bracket-equivalence class: the first player
    # always sits in the left half, recursively.  Counts per size 1/2/4/8:
    # 1, 1, 3, 315.
    if len(players) == 1:
        yield [players[0]]
        return
    half = len(players) // 2
    first, rest = players[0], players[1:]
    for mates in itertools.combinations(rest, half - 1):
        left = (first,) + mates
        right = tuple(x for x in rest if x not in mates)
        for lo in _brackets(left):
            for ro in _brackets(right):
                yield lo + ro


def enumerate_seedings(n: int, *, limit: int = 8) -> Iterator[Seeding]:
    """All seedings of n players up to mirror-symmetry of sub-brackets."""
    if n > limit:
        raise OracleLimitError(f"seeding enumeration is capped at {limit} players")
    if n & (n - 1) or n < 1:
        raise ValueError(f"player count must be a power of two, got {n}")
    for order in _brackets(tuple(range(n))):
        yield Seeding(tuple(order))


def brute_force_decide(t: Tournament, *, limit: int = 8) -> Seeding | None:
    """First seeding (in enumeration order) that crowns the favorite, else None."""
    for s in enumerate_seedings(t.n, limit=limit):
        if champion_of(t, s.leaf_order) == t.vstar:
            return s
    return None


@dataclass(frozen=True)
class NicenessReport:
    per_round: tuple[bool, ...]
    all_nice: bool


def niceness(t: Tournament, trace: KnockoutTrace) -> NicenessReport:
    """A round is *nice* when it eliminates someone who beats the favorite,
    or when nobody of that kind was still standing as it began."""
    ins = t.in_neighbors
    per = []
    for i in range(len(trace.rounds)):
        per.append(bool(trace.losers[i] & ins) or not (trace.survivors[i] & ins))
    return NicenessReport(per_round=tuple(per), all_nice=all(per))


def repair_to_nice(t: Tournament, s: Seeding) -> tuple[Seeding, int]:
    """Rewrite a winning seeding until every round is nice.

    Returns (seeding, number of rewrites).  Each rewrite locates the last
    non-nice round, pulls its losers W out (none of them beat the favorite,
    by non-niceness), replays W as its own side bracket overlaid onto the
    later rounds, and gives the favorite the W-champion as a bonus final.
    That leaves earlier rounds untouched and makes every round from the
    rewritten one onward nice, so at most log2(n) rewrites happen.
    """
    trace = simulate(t, s)
    if trace.champion != t.vstar:
        raise ValueError("can only repair a seeding that crowns the favorite")
    total = t.num_rounds
    cur = s
    count = 0
    while True:
        rep = niceness(t, trace)
        if rep.all_nice:
            return cur, count
        p = max(i for i, ok in enumerate(rep.per_round) if not ok) + 1
        assert p < total, "the final round of a winning bracket is always nice"
        w = sorted(trace.losers[p - 1])
        assert t.vstar not in w and not t.in_neighbors.intersection(w)
        w_rounds = bracket_rounds(t, w)
        new_rounds: list[list[Match]] = [list(r) for r in trace.rounds[: p - 1]]
        for q in range(p, total):
            new_rounds.append(list(trace.rounds[q]) + w_rounds[q - p])
        new_rounds.append([(t.vstar, champion_of(t, w))])
        assert validate_match_sequence(t, new_rounds), "rewrite broke the schedule"
        cur = seeding_from_sequence(new_rounds)
        trace = simulate(t, cur)
        count += 1
        assert count <= total, "repair failed to terminate"


def extract_local_lba(t: Tournament, full: Lba, b: int) -> Lba:
    """Carve a bracket tree of size 2**k around ``b`` out of a spanning one.

    ``full`` must come from a *nice* winning seeding.  Walk up from ``b`` to
    the first ancestor whose subtree reaches 2**k players, then keep that
    ancestor with its k smallest child subtrees: their sizes are forced to be
    1, 2, ..., 2**(k-1), which pack to exactly 2**k and include the branch
    holding ``b``.  The carved root survived at least k rounds, and in a nice
    bracket everyone who beats the favorite is gone by then, so the root is
    not one of the favorite's conquerors.
    """
    size = 1 << t.k
    if size > full.size:
        raise ValueError("the tree is smaller than one block")
    structure = _tree_structure(full)
    if structure is None:
        raise ValueError("input is not a rooted tree")
    children, sizes = structure
    if b != full.root and b not in full.parent:
        raise ValueError(f"vertex {b} is not in the tree")
    u = b
    while sizes[u] < size:
        u = full.parent[u]
    kids = sorted(children[u], key=lambda c: sizes[c])[: t.k]
    keep = {u}
    stack = list(kids)
    while stack:
        x = stack.pop()
        keep.add(x)
        stack.extend(children[x])
    assert len(keep) == size and b in keep
    assert u not in t.in_neighbors, "carving from a non-nice bracket"
    sub = Lba(root=u, parent={v: full.parent[v] for v in keep if v != u})
    assert is_lba(t, sub)
    return sub


def is_wwf(t: Tournament, w) -> bool:
    """Check the witness-forest conditions; accepts a Wwf or a tree sequence.

    Conditions: exactly k trees, each a bracket tree on 2**k players, mutually
    disjoint, no root beats the favorite, everyone who beats the favorite is
    swallowed, and the favorite may appear only as a root.
    """
    trees = tuple(getattr(w, "trees", w))
    if len(trees) != t.k:
        return False
    size = 1 << t.k
    seen: set[int] = set()
    for tree in trees:
        if tree.size != size or not is_lba(t, tree):
            return False
        if not seen.isdisjoint(tree.vertices):
            return False
        seen |= tree.vertices
        if tree.root in t.in_neighbors:
            return False
        if t.vstar in tree.vertices and tree.root != t.vstar:
            return False
    return t.in_neighbors <= seen


def _lba_from_order(t: Tournament, order: Sequence[int]) -> Lba:
    parent = {}
    for rnd in bracket_rounds(t, order):
        for winner, loser in rnd:
            parent[loser] = winner
    return Lba(root=champion_of(t, order), parent=parent)


def brute_force_wwf(t: Tournament, *, limit: int = 16) -> "Wwf | None":  # noqa: F821
    """Backtracking search for a witness forest; None when none exists.

    Blocks are chosen for the smallest not-yet-covered conqueror of the
    favorite, trying every vertex set of the right size; a block is usable if
    some bracket on it crowns an allowed root (the favorite itself when the
    favorite is inside, anyone outside the favorite's in-set otherwise).
    Once every conqueror is covered the remaining trees are filled with the
    lowest leftover players, whose roots are automatically allowed.
    """
    if t.n > limit:
        raise OracleLimitError(f"witness-forest search is capped at {limit} players")
    from .indeg import Wwf

    k = t.k
    size = 1 << k
    if k == 0:
        return Wwf(trees=())
    if k * size >= t.n:
        raise ValueError("witness forests only characterize instances with k*2**k < n")
    outcome_cache: dict[frozenset, dict[int, tuple[int, ...]]] = {}

    def outcomes(block: tuple[int, ...]) -> dict[int, tuple[int, ...]]:
        key = frozenset(block)
        got = outcome_cache.get(key)
        if got is None:
            got = {}
            for order in _brackets(block):
                got.setdefault(champion_of(t, order), tuple(order))
            outcome_cache[key] = got
        return got

    def search(available: set[int], uncovered: list[int], picked: list[Lba]) -> list[Lba] | None:
        if not uncovered:
            rest = sorted(available)
            fillers = [
                arbitrary_lba(t, rest[i * size : (i + 1) * size])
                for i in range(k - len(picked))
            ]
            return picked + fillers
        b = uncovered[0]
        pool = sorted(available - {b})
        for mates in itertools.combinations(pool, size - 1):
            block = tuple(sorted((b,) + mates))
            outs = outcomes(block)
            if t.vstar in block:
                order = outs.get(t.vstar)
            else:
                order = next(
                    (outs[c] for c in sorted(outs) if c not in t.in_neighbors), None
                )
            if order is None:
                continue
            got = search(
                available - set(block),
                [x for x in uncovered if x not in block],
                picked + [_lba_from_order(t, order)],
            )
            if got is not None:
                return got
        return None

    found = search(set(t.players), sorted(t.in_neighbors), [])
    if found is None:
        return None
    wwf = Wwf(trees=tuple(found))
    assert is_wwf(t, wwf), "backtracker assembled an invalid forest"
    return wwf
