import itertools

import numpy as np
import pytest
from conftest import tournaments
from hypothesis import given, settings

from tfpsolve import (
    Coloring,
    HostGraph,
    Lba,
    PatternTree,
    Tournament,
    brute_force_decide,
    embed_colorful_tree,
    is_lba,
    solve_exact,
)
from tfpsolve.embed import _decide_colorful_batch, _dp_families, _winners_table


def brute_embed(pattern, host, d, col):
    """Reference decision: try every injective map with distinct image colors."""
    nodes = list(range(pattern.n))
    for image in itertools.permutations(range(host.n), pattern.n):
        m = dict(zip(nodes, image))
        if m[pattern.root] != d:
            continue
        if len({col.color_of[h] for h in image}) != pattern.n:
            continue
        if all(
            host.out_masks[m[p]] >> m[x] & 1
            for x, p in enumerate(pattern.parents)
            if p >= 0
        ):
            return True
    return False


def random_pattern(rng, n):
    parents = [-1] + [int(rng.integers(0, x)) for x in range(1, n)]
    return PatternTree(parents=tuple(parents), root=0)


def random_host(rng, n):
    masks = [0] * n
    for u in range(n):
        for v in range(n):
            if u != v and rng.integers(0, 2):
                masks[u] |= 1 << v
    return HostGraph(out_masks=tuple(masks))


class TestPatternTree:
    def test_children_and_postorder(self):
        p = PatternTree(parents=(-1, 0, 0, 2), root=0)
        assert p.children == ((1, 2), (), (3,), ())
        assert p.subtree_sizes == (4, 1, 2, 1)
        order = p.postorder
        assert set(order) == {0, 1, 2, 3}
        assert order.index(3) < order.index(2)
        assert order[-1] == 0

    def test_rejects_cycle(self):
        with pytest.raises(ValueError):
            PatternTree(parents=(-1, 2, 1), root=0)

    def test_rejects_bad_root(self):
        with pytest.raises(ValueError):
            PatternTree(parents=(0, -1), root=0)


class TestHostGraph:
    def test_out_list(self):
        h = HostGraph(out_masks=(6, 0, 1))
        assert h.out_list(0) == [1, 2]
        assert h.out_list(1) == []

    def test_rejects_self_loop(self):
        with pytest.raises(ValueError):
            HostGraph(out_masks=(1, 0))


class TestColoring:
    def test_validates_range(self):
        with pytest.raises(ValueError):
            Coloring(color_of={0: 3}, num_colors=2)
        Coloring(color_of={0: 2}, num_colors=2)


class TestEngine:
    def test_reference_embedding(self, t4_yes):
        # stem over a single 2-block, hosted on the no-arcs-into-0 variant
        from tfpsolve import build_host, build_pattern_forest

        pattern = build_pattern_forest(1)
        host = build_host(t4_yes)
        col = Coloring(color_of={0: 2, 1: 2, 2: 1, 3: 2, 4: 3}, num_colors=3)
        emb = embed_colorful_tree(pattern, host, 0, 4, col)
        assert emb is not None and emb.mapping == {0: 4, 1: 1, 2: 2}

    def test_no_embedding_when_colors_clash(self, t4_yes):
        from tfpsolve import build_host, build_pattern_forest

        pattern = build_pattern_forest(1)
        host = build_host(t4_yes)
        # only one color for everything but the stem: blocks need two
        col = Coloring(color_of={0: 1, 1: 1, 2: 1, 3: 1, 4: 2}, num_colors=2)
        assert embed_colorful_tree(pattern, host, 0, 4, col) is None

    def test_rejects_wrong_root(self):
        p = PatternTree(parents=(-1, 0), root=0)
        h = HostGraph(out_masks=(2, 0))
        col = Coloring(color_of={0: 1, 1: 2}, num_colors=2)
        with pytest.raises(ValueError):
            embed_colorful_tree(p, h, 1, 0, col)

    def test_rejects_uncolored_vertex(self):
        p = PatternTree(parents=(-1, 0), root=0)
        h = HostGraph(out_masks=(2, 0))
        with pytest.raises(ValueError):
            embed_colorful_tree(p, h, 0, 0, Coloring(color_of={0: 1}, num_colors=2))

    def test_color_budget_guard(self):
        p = PatternTree(parents=(-1, 0), root=0)
        h = HostGraph(out_masks=(2, 0))
        col = Coloring(color_of={0: 1, 1: 2}, num_colors=25)
        with pytest.raises(ValueError):
            embed_colorful_tree(p, h, 0, 0, col)

    def test_dp_families_root_only_at_d(self):
        p = PatternTree(parents=(-1, 0), root=0)
        h = HostGraph(out_masks=(2, 0))
        col = Coloring(color_of={0: 1, 1: 2}, num_colors=2)
        fam = _dp_families(p, h, 0, 0, col)
        assert set(fam[0]) == {0}
        assert fam[0][0] == {0b11}
        assert fam[1][1] == {0b10}

    def test_agrees_with_brute_force(self):
        rng = np.random.default_rng(2024)
        hits = 0
        for trial in range(1000):
            pn = int(rng.integers(1, 5))
            hn = int(rng.integers(pn, 7))
            pattern = random_pattern(rng, pn)
            host = random_host(rng, hn)
            ncol = int(rng.integers(pn, pn + 3))
            col = Coloring(
                color_of={v: int(rng.integers(1, ncol + 1)) for v in range(hn)},
                num_colors=ncol,
            )
            d = int(rng.integers(0, hn))
            emb = embed_colorful_tree(pattern, host, 0, d, col)
            expect = brute_embed(pattern, host, d, col)
            assert (emb is not None) == expect, (trial, pattern, host, col, d)
            if emb is not None:
                hits += 1
        # make sure the sample actually exercised both outcomes
        assert 100 < hits < 900


class TestBatchEngine:
    def test_matches_single_engine(self, t4_yes):
        from tfpsolve import build_host, build_pattern_forest, extend_coloring
        from tfpsolve.indeg import _coloring_from_draw

        for t, k, seed in [(t4_yes, 1, 1), (None, 2, 2)]:
            if t is None:
                from tfpsolve import gen_random

                t = gen_random(16, 2, seed=99)
                k = t.k
            pattern = build_pattern_forest(k)
            host = build_host(t)
            n, hi = t.n, k * (1 << k)
            rng = np.random.default_rng(seed)
            B = 200
            draws = np.stack([rng.integers(k + 1, hi + 1, size=n - k) for _ in range(B)])
            idx = np.empty((B, n + 1), np.int32)
            for i, v in enumerate(sorted(t.in_neighbors)):
                idx[:, v] = i
            idx[:, sorted(t.out_neighbors | {t.vstar})] = draws - 1
            idx[:, n] = hi
            got = _decide_colorful_batch(pattern, host, n, idx, num_colors=hi + 1)
            for j in range(B):
                col = extend_coloring(_coloring_from_draw(t, draws[j]), n)
                single = embed_colorful_tree(pattern, host, 0, n, col) is not None
                assert got[j] == single

    def test_color_cap(self):
        p = PatternTree(parents=(-1,), root=0)
        h = HostGraph(out_masks=(0,))
        with pytest.raises(ValueError):
            _decide_colorful_batch(p, h, 0, np.zeros((1, 1), np.int32), num_colors=21)


class TestSolveExact:
    def test_reference_yes(self, t4_yes):
        assert solve_exact(t4_yes) == Lba(root=0, parent={3: 0, 1: 0, 2: 3})

    def test_reference_no(self, t4_no):
        assert solve_exact(t4_no) is None

    def test_winners_table_frozen(self, t4_yes):
        winners = _winners_table(t4_yes)
        assert int(winners[0b1111]) == 0b0011  # only players 0 and 1 can win it all
        assert int(winners[0b0011]) == 0b0001  # 0 beats 1 head to head

    def test_single_player(self):
        t = Tournament(n=1, vstar=0, out_masks=(0,))
        assert solve_exact(t) == Lba(root=0, parent={})

    def test_two_players(self):
        t = Tournament(n=2, vstar=0, out_masks=(2, 0))
        assert solve_exact(t) == Lba(root=0, parent={1: 0})
        t = Tournament(n=2, vstar=0, out_masks=(0, 1))
        assert solve_exact(t) is None

    def test_player_cap(self):
        with pytest.raises(ValueError):
            solve_exact(Tournament(n=1, vstar=0, out_masks=(0,)), limit=0)

    @settings(max_examples=60)
    @given(tournaments(max_rounds=2))
    def test_agrees_with_seeding_enumeration(self, t):
        lba = solve_exact(t)
        winning = brute_force_decide(t)
        assert (lba is None) == (winning is None)
        if lba is not None:
            assert lba.root == t.vstar
            assert is_lba(t, lba)
            assert lba.vertices == set(range(t.n))
