"""Tests for consistency graphs and star finding"""

import itertools

import pytest

from vsslab.graphs.consistency import ConsistencyGraph
from vsslab.graphs.star import (
    Star,
    brute_force_star,
    expand_ef,
    find_star,
    has_clique,
    is_ef_valid,
    is_star,
    prune_low_degree,
)
from vsslab.utils.rng import SeededRng


def all_graphs(n):
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    for mask in range(1 << len(pairs)):
        yield ConsistencyGraph(n, [pair for k, pair in enumerate(pairs) if mask >> k & 1])


def random_graph(n, rng, density, planted=()):
    edges = [
        (j, k)
        for j, k in itertools.combinations(range(1, n + 1), 2)
        if rng.below(100) < density or (j in planted and k in planted)
    ]
    return ConsistencyGraph(n, edges)


def check_star_search(G, n, t):
    star = find_star(G, n, t)
    if star is not None:
        assert is_star(G, star, n, t)
        assert brute_force_star(G, n, t) is not None
    if has_clique(G, n - t):
        assert star is not None


class TestConsistencyGraph:
    def test_add_edge_is_monotone(self):
        G = ConsistencyGraph(4)
        assert G.add_edge(1, 2)
        assert not G.add_edge(2, 1)
        assert not G.add_edge(3, 3)
        assert G.has_edge(2, 1)
        assert G.has_edge(4, 4)
        assert G.edge_count == 1

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            ConsistencyGraph(4).add_edge(1, 5)

    def test_closed_neighbourhood(self):
        G = ConsistencyGraph(4, [(1, 2), (1, 3)])
        assert G.closed_neighbors(1) == {1, 2, 3}
        assert G.degree_within(1, {1, 2, 4}) == 2

    def test_complement(self):
        G = ConsistencyGraph.complete(4)
        assert G.complement().number_of_edges() == 0
        assert G.copy().edge_count == 6


class TestStar:
    @pytest.mark.parametrize("n, t", [(1, 0), (2, 0), (3, 0), (4, 1), (5, 1), (6, 1)])
    def test_exhaustive_small_graphs(self, n, t):
        for G in all_graphs(n):
            check_star_search(G, n, t)

    def test_random_graphs_on_eight_parties(self):
        rng = SeededRng(2024, "star")
        n, t = 8, 2
        for k in range(500):
            planted = set()
            if k % 2 == 0:
                # a clique of at least n - t parties
                planted = set(range(1, n + 1)) - {1 + rng.below(n) for _ in range(t)}
            G = random_graph(n, rng, density=30 + rng.below(60), planted=planted)
            check_star_search(G, n, t)

    def test_complete_graph(self):
        G = ConsistencyGraph.complete(7)
        star = find_star(G, 7, 2)
        assert star is not None
        assert star.D == frozenset(range(1, 8))

    def test_empty_graph_has_no_star(self):
        assert find_star(ConsistencyGraph(4), 4, 1) is None
        assert brute_force_star(ConsistencyGraph(4), 4, 1) is None

    def test_definition(self):
        G = ConsistencyGraph(4, [(1, 2), (1, 3), (2, 3)])
        assert is_star(G, Star.of({1, 2}, {1, 2, 3}), 4, 1)
        assert not is_star(G, Star.of({1, 2}, {1, 2, 4}), 4, 1)
        assert not is_star(G, Star.of({1}, {1, 2, 3}), 4, 1)


class TestExpansion:
    def test_complete_graph_expands_to_everyone(self):
        n, t, d = 9, 2, 3
        G = ConsistencyGraph.complete(n)
        ef = expand_ef(G, find_star(G, n, t), d, t)
        assert ef.E == ef.F == frozenset(range(1, n + 1))
        assert is_ef_valid(G, ef, n, t, d)

    def test_isolated_party_left_out(self):
        n, t, d = 5, 1, 1
        G = ConsistencyGraph(n, itertools.combinations(range(1, 5), 2))
        star = find_star(G, n, t)
        ef = expand_ef(G, star, d, t)
        assert 5 not in ef.F
        assert 5 not in ef.E
        assert is_ef_valid(G, ef, n, t, d)

    def test_expansion_grows_with_graph(self):
        n, t, d = 5, 1, 1
        G = ConsistencyGraph(n, itertools.combinations(range(1, 5), 2))
        star = find_star(G, n, t)
        before = expand_ef(G, star, d, t)
        for j in range(1, 5):
            G.add_edge(j, 5)
        after = expand_ef(G, star, d, t)
        assert before.E <= after.E
        assert before.F <= after.F
        assert 5 in after.F

    def test_small_sets_rejected(self):
        G = ConsistencyGraph.complete(5)
        star = find_star(G, 5, 1)
        ef = expand_ef(G, star, 1, 1)
        shrunk = type(ef)(frozenset({1, 2, 3}), ef.F, star)
        assert not is_ef_valid(G, shrunk, 5, 1, 1)


class TestPruning:
    def test_drops_low_degree_parties(self):
        G = ConsistencyGraph(5, itertools.combinations(range(1, 5), 2))
        assert prune_low_degree(G, 4) == {1, 2, 3, 4}

    def test_cascade(self):
        # a path collapses entirely
        G = ConsistencyGraph(4, [(1, 2), (2, 3), (3, 4)])
        assert prune_low_degree(G, 3) == set()
