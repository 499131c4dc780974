"""Randomized solver parameterized by how many players beat the favorite.

Write k for the number of players that beat the favorite.  A seeding that
crowns the favorite survives in three regimes:

* k == 0: the favorite beats everyone, so any seeding works.
* k * 2**k >= n: the instance is small in the parameter; solve exactly.
* otherwise: a seeding exists iff the tournament contains a *witness
  forest* -- k vertex-disjoint arborescences, each on exactly 2**k
  vertices and shaped like a bracket, whose roots all avoid the
  favorite's in-set, which jointly swallow every in-neighbor, and in
  which the favorite appears only as the root of one tree.  Such a
  forest is tiny (k * 2**k vertices), so it is found by color coding:
  in-neighbors get k fixed colors, everyone else draws uniformly from
  the remaining 2**k * k - k, and a colorful copy of the forest pattern
  is searched by the tree-embedding engine.  A draw makes a fixed
  witness colorful with probability at least e**-(k*2**k - k), so
  ceil(multiplier * e**(k*2**k - k)) draws miss with probability at most
  e**-multiplier.  YES answers carry a verified seeding; NO answers are
  correct up to that failure bound.

``complete_wwf`` then grows the witness forest into a spanning bracket
tree: leftover players are chunked into blocks of 2**k, each block gets
an arbitrary internal bracket, and trees are merged pairwise.  Every
merge root lies outside the favorite's in-set, so the favorite's own
tree keeps winning merges and ends up spanning the field.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .arborescence import Lba, arbitrary_lba, is_lba, lba_to_seeding, merge_lbas
from .core import Seeding, Tournament, champion_of
from .embed import (
    Coloring,
    Embedding,
    HostGraph,
    PatternTree,
    _decide_colorful_batch,
    embed_colorful_tree,
    solve_exact,
)

__all__ = [
    "Wwf",
    "IndegConfig",
    "sample_coloring",
    "build_pattern_forest",
    "build_host",
    "extend_coloring",
    "find_wwf",
    "complete_wwf",
    "solve_indeg",
]

_BUDGET_CAP = 100_000_000


@dataclass(frozen=True)
class Wwf:
    """Witness forest: disjoint bracket-shaped trees covering the in-set."""

    trees: tuple[Lba, ...]


@dataclass(frozen=True)
class IndegConfig:
    """Knobs for the randomized search.

    ``iteration_multiplier`` scales the draw budget (failure probability
    e**-multiplier); ``max_iterations_override`` replaces the budget outright,
    which is the only way to run when the computed budget would be absurd.
    """

    rng_seed: int = 0
    iteration_multiplier: float = 1.0
    max_iterations_override: int | None = None


def build_pattern_forest(k: int) -> PatternTree:
    """Pattern for the embedding engine: a stem node over k bracket trees.

    Node 0 is the stem; block i occupies ids 1 + i*2**k onward, wired like a
    canonical bracket tree (parent of in-block offset j is offset j & (j-1)).
    The stem exists so the whole pattern is one rooted tree.
    """
    if k < 1:
        raise ValueError("pattern needs at least one block")
    size = 1 << k
    parents = [-1]
    for i in range(k):
        off = 1 + i * size
        parents.append(0)
        parents.extend(off + (j & (j - 1)) for j in range(1, size))
    return PatternTree(parents=tuple(parents), root=0)


def build_host(t: Tournament) -> HostGraph:
    """Host digraph: the tournament minus arcs into the favorite, plus a
    fresh stem vertex d = n with arcs to the favorite and its out-set.

    Dropping arcs into the favorite means no embedded tree may contain the
    favorite below its root, and the stem's arcs force every block root into
    the favorite's out-set or the favorite itself.
    """
    masks = []
    for u in range(t.n):
        m = t.out_masks[u]
        if u != t.vstar:
            m &= ~(1 << t.vstar)
        masks.append(m)
    d_mask = 1 << t.vstar
    for v in t.out_neighbors:
        d_mask |= 1 << v
    masks.append(d_mask)
    return HostGraph(out_masks=tuple(masks), distinguished=t.n)


def _coloring_from_draw(t: Tournament, draw: np.ndarray) -> Coloring:
    k = t.k
    color_of = {}
    for i, v in enumerate(sorted(t.in_neighbors)):
        color_of[v] = i + 1
    for j, v in enumerate(sorted(t.out_neighbors | {t.vstar})):
        color_of[v] = int(draw[j])
    return Coloring(color_of=color_of, num_colors=k * (1 << k))


def sample_coloring(t: Tournament, rng: np.random.Generator) -> Coloring:
    """One random coloring: in-neighbors get colors 1..k in ascending player
    order, everyone else draws uniformly from k+1 .. k*2**k."""
    k = t.k
    if k < 1:
        raise ValueError("coloring is only defined when someone beats the favorite")
    hi = k * (1 << k)
    return _coloring_from_draw(t, rng.integers(k + 1, hi + 1, size=t.n - k))


def extend_coloring(col: Coloring, d: int) -> Coloring:
    """Give the stem vertex ``d`` a fresh color one past the palette."""
    if d in col.color_of:
        raise ValueError(f"vertex {d} is already colored")
    extended = dict(col.color_of)
    extended[d] = col.num_colors + 1
    return Coloring(color_of=extended, num_colors=col.num_colors + 1)


def _iteration_budget(exponent: int, cfg: IndegConfig) -> int:
    if cfg.max_iterations_override is not None:
        if cfg.max_iterations_override < 1:
            raise ValueError("max_iterations_override must be positive")
        return cfg.max_iterations_override
    if exponent <= 700:
        raw = cfg.iteration_multiplier * math.exp(exponent)
    else:
        raw = math.inf
    if raw > _BUDGET_CAP:
        raise ValueError(
            f"iteration budget ceil({cfg.iteration_multiplier} * e**{exponent}) "
            f"exceeds {_BUDGET_CAP}; set max_iterations_override to force a run"
        )
    return max(1, math.ceil(raw))


def _chunk_sizes(total: int) -> list[int]:
    sizes = []
    step = 64
    remaining = total
    while remaining > 0:
        take = min(step, remaining)
        sizes.append(take)
        remaining -= take
        if step < 1024:
            step *= 2
    return sizes


def _wwf_from_embedding(t: Tournament, pattern: PatternTree, emb: Embedding, k: int) -> Wwf:
    size = 1 << k
    m = emb.mapping
    trees = []
    for i in range(k):
        off = 1 + i * size
        parent = {m[off + j]: m[off + (j & (j - 1))] for j in range(1, size)}
        trees.append(Lba(root=m[off], parent=parent))
    return Wwf(trees=tuple(trees))


def find_wwf(t: Tournament, cfg: IndegConfig = IndegConfig()) -> Wwf | None:
    """Search for a witness forest by repeated random colorings.

    Draws happen one iteration at a time off ``cfg.rng_seed`` but are decided
    in batches; a hit reports the lowest iteration index in the batch, so the
    result for a given seed is identical to deciding draws one by one.
    Returns None once the budget is exhausted (see the module docstring for
    the failure bound).
    """
    k, n = t.k, t.n
    if k < 1 or k * (1 << k) >= n:
        raise ValueError("witness-forest search applies when 1 <= k and k*2**k < n")
    hi = k * (1 << k)
    pattern = build_pattern_forest(k)
    host = build_host(t)
    d = t.n
    budget = _iteration_budget(hi - k, cfg)
    rng = np.random.default_rng(cfg.rng_seed)
    ins = sorted(t.in_neighbors)
    others = sorted(t.out_neighbors | {t.vstar})
    for chunk in _chunk_sizes(budget):
        draws = np.stack(
            [rng.integers(k + 1, hi + 1, size=n - k) for _ in range(chunk)]
        )
        color_idx = np.empty((chunk, n + 1), np.int32)
        for i, v in enumerate(ins):
            color_idx[:, v] = i
        color_idx[:, others] = draws - 1
        color_idx[:, n] = hi
        hits = _decide_colorful_batch(pattern, host, d, color_idx, num_colors=hi + 1)
        if hits.any():
            j = int(np.argmax(hits))
            col = extend_coloring(_coloring_from_draw(t, draws[j]), d)
            emb = embed_colorful_tree(pattern, host, pattern.root, d, col)
            assert emb is not None, "batch decision disagreed with the engine"
            wwf = _wwf_from_embedding(t, pattern, emb, k)
            from .oracles import is_wwf

            assert is_wwf(t, wwf), "embedded forest failed the witness checks"
            return wwf
    return None


def _assert_mergeable(t: Tournament, trees: list[Lba]) -> None:
    roots = [tree.root for tree in trees]
    assert len(trees) % 2 == 0, "tree count must halve cleanly"
    assert all(r not in t.in_neighbors for r in roots), (
        "a merge root fell inside the favorite's in-set"
    )
    assert sum(r == t.vstar for r in roots) == 1, (
        "the favorite must root exactly one tree"
    )


def complete_wwf(t: Tournament, wwf: Wwf) -> Lba:
    """Grow a witness forest into a spanning bracket tree rooted at the
    favorite.

    Leftover players (none of whom beat the favorite, since the forest
    swallowed the whole in-set) are chunked in ascending order into blocks of
    the forest's tree size, bracketed arbitrarily, and merged pairwise in
    list order until one tree remains.
    """
    size = 1 << t.k
    covered: set[int] = set()
    for tree in wwf.trees:
        assert covered.isdisjoint(tree.vertices), "witness trees overlap"
        covered |= tree.vertices
    rest = sorted(set(t.players) - covered)
    assert len(covered) == len(wwf.trees) * size, "witness trees have a wrong size"
    trees = list(wwf.trees)
    for lo in range(0, len(rest), size):
        trees.append(arbitrary_lba(t, rest[lo : lo + size]))
    while len(trees) > 1:
        _assert_mergeable(t, trees)
        trees = [merge_lbas(t, trees[i], trees[i + 1]) for i in range(0, len(trees), 2)]
    final = trees[0]
    assert final.root == t.vstar, "completion lost the favorite"
    assert final.vertices == set(t.players), "completion does not span the field"
    assert is_lba(t, final), "completion is not a valid bracket tree"
    return final


def _verify(t: Tournament, s: Seeding) -> None:
    if champion_of(t, s.leaf_order) != t.vstar:
        raise AssertionError("solver produced a seeding that does not crown the favorite")


def solve_indeg(
    t: Tournament, cfg: IndegConfig = IndegConfig(), *, exact_limit: int = 16
) -> Seeding | None:
    """Winning seeding for the favorite, or None.

    YES answers are always verified by simulation before being returned.  A
    None in the randomized regime is wrong with probability at most
    e**-iteration_multiplier; elsewhere it is exact.
    """
    k = t.k
    if k == 0:
        s = Seeding(tuple(range(t.n)))
        _verify(t, s)
        return s
    if k * (1 << k) >= t.n:
        lba = solve_exact(t, limit=exact_limit)
        if lba is None:
            return None
        s = lba_to_seeding(lba)
        _verify(t, s)
        return s
    wwf = find_wwf(t, cfg)
    if wwf is None:
        return None
    s = lba_to_seeding(complete_wwf(t, wwf))
    _verify(t, s)
    return s
