"""Brute-force ground truth: independence, clique cover, tiny minrank,
acyclic induced subgraphs, and the sandwich of inequalities between them."""

import itertools
import random

import pytest

from minrank_lab import (
    Bounds,
    DiGraph,
    Graph,
    ParameterError,
    SearchBudget,
    check_sandwich,
    clique_cover_number,
    complement,
    directed_ternary,
    independence_number,
    kneser,
    max_acyclic_induced,
    minrank_bruteforce,
)

from util_oracles import fp_rank_naive


def cycle(n):
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n):
    return Graph.from_edges(
        n, [(i, j) for i in range(n) for j in range(i + 1, n)]
    )


def empty(n):
    return Graph.from_edges(n, [])


def minrank_by_matrix_enumeration(g, p):
    """Smallest rank over all matrices with unit-free nonzero diagonal and
    zeros on ordered non-edges.  Exponential, for cross-checks only."""
    n = g.n
    free = [
        (i, j)
        for i in range(n)
        for j in range(n)
        if i != j and g.has_edge(i, j)
    ]
    best = n
    for diag in itertools.product(range(1, p), repeat=n):
        for vals in itertools.product(range(p), repeat=len(free)):
            m = [[0] * n for _ in range(n)]
            for i in range(n):
                m[i][i] = diag[i]
            for (i, j), v in zip(free, vals):
                m[i][j] = v
            best = min(best, fp_rank_naive(m, p))
            if best == 1:
                return 1
    return best


def all_labeled_graphs(n):
    pairs = list(itertools.combinations(range(n), 2))
    for bits in range(1 << len(pairs)):
        edges = [pairs[k] for k in range(len(pairs)) if bits >> k & 1]
        yield Graph.from_edges(n, edges)


# ---------------------------------------------------------------- basic counts


def test_independence_number_extremes():
    assert independence_number(empty(6)) == 6
    assert independence_number(complete(6)) == 1


def test_independence_number_petersen():
    assert independence_number(kneser(5, 2, {0})) == 4


def test_independence_number_is_relabeling_invariant():
    g = kneser(6, 2, {0})
    base = independence_number(g)
    rng = random.Random(2)
    for _ in range(5):
        perm = rng.sample(range(g.n), g.n)
        edges = [(perm[i], perm[j]) for i, j in g.edges()]
        assert independence_number(Graph.from_edges(g.n, edges)) == base


def test_clique_cover_extremes():
    assert clique_cover_number(complete(5)) == 1
    assert clique_cover_number(empty(5)) == 5


def test_clique_cover_of_5_cycle():
    assert clique_cover_number(cycle(5)) == 3


# -------------------------------------------------------------------- minrank


def test_minrank_empty_graph_is_n():
    for p in (2, 3):
        for n in (1, 2, 4):
            assert minrank_bruteforce(empty(n), p) == n


def test_minrank_complete_graph_is_one():
    for p in (2, 3):
        assert minrank_bruteforce(complete(4), p) == 1


def test_minrank_5_cycle_over_f2():
    g = cycle(5)
    assert minrank_bruteforce(g, 2) == 3
    assert minrank_by_matrix_enumeration(g, 2) == 3


def test_minrank_matches_matrix_enumeration_small():
    for n in (1, 2, 3):
        for g in all_labeled_graphs(n):
            for p in (2, 3):
                assert minrank_bruteforce(g, p) == minrank_by_matrix_enumeration(g, p)


def test_minrank_matches_matrix_enumeration_on_4_vertices():
    rng = random.Random(6)
    graphs = list(all_labeled_graphs(4))
    for g in rng.sample(graphs, 12):
        assert minrank_bruteforce(g, 2) == minrank_by_matrix_enumeration(g, 2)


def test_minrank_directed_3_cycle():
    dg = DiGraph.from_edges(3, [(0, 1), (1, 2), (2, 0)])
    got = minrank_bruteforce(dg, 2)
    assert got == minrank_by_matrix_enumeration(dg, 2) == 2


def test_minrank_budget_exhaustion_returns_bounds():
    got = minrank_bruteforce(empty(4), 2, SearchBudget(max_rank=2))
    assert isinstance(got, Bounds)
    assert got == Bounds(3, 4)


def test_minrank_node_budget_exhaustion():
    got = minrank_bruteforce(
        cycle(5), 2, SearchBudget(max_nodes_expanded=3)
    )
    assert isinstance(got, Bounds)
    assert got.lower <= 3 <= got.upper


# ---------------------------------------------------------------- acyclic part


def test_max_acyclic_on_acyclic_digraph():
    dg = DiGraph.from_edges(4, [(0, 1), (1, 2), (0, 3)])
    assert max_acyclic_induced(dg) == 4


def test_max_acyclic_directed_3_cycle():
    dg = DiGraph.from_edges(3, [(0, 1), (1, 2), (2, 0)])
    assert max_acyclic_induced(dg) == 2


def test_max_acyclic_ternary_small():
    assert max_acyclic_induced(directed_ternary(1)) == 2
    assert max_acyclic_induced(directed_ternary(2)) == 4


# ------------------------------------------------------------------- sandwich


def test_sandwich_on_5_cycle():
    report = check_sandwich(cycle(5), 2)
    assert report.n == 5
    assert report.alpha == 2
    assert report.clique_cover == 3
    assert report.minrank == 3
    assert report.minrank_complement == 3
    assert report.product_bound_ok


def test_sandwich_empty_graph_attains_equality():
    report = check_sandwich(empty(5), 2)
    assert report.minrank == 5
    assert report.minrank_complement == 1
    assert report.minrank * report.minrank_complement == report.n


def test_sandwich_inequalities_on_random_graphs():
    rng = random.Random(10)
    graphs = list(all_labeled_graphs(4))
    for g in rng.sample(graphs, 15):
        report = check_sandwich(g, 2)
        assert report.alpha <= report.minrank <= report.clique_cover
        assert report.minrank * report.minrank_complement >= report.n


def test_sandwich_rejects_exhausted_budgets():
    with pytest.raises(ParameterError):
        check_sandwich(cycle(5), 2, SearchBudget(max_nodes_expanded=2))


# --------------------------------------------------------------------- budget


def test_budget_validation():
    with pytest.raises(ParameterError):
        SearchBudget(max_vertices=0)
    with pytest.raises(ParameterError):
        SearchBudget(max_rank=-1)
    with pytest.raises(ParameterError):
        SearchBudget(time_limit_seconds=0)


def test_vertex_budget_is_a_precondition():
    small = SearchBudget(max_vertices=4)
    with pytest.raises(ParameterError):
        independence_number(empty(6), small)
    with pytest.raises(ParameterError):
        clique_cover_number(kneser(5, 2, {0}), small)


def test_alpha_under_tiny_node_budget_brackets_truth():
    pet = kneser(5, 2, {0})
    got = independence_number(pet, SearchBudget(max_nodes_expanded=2))
    assert isinstance(got, Bounds)
    assert got.lower <= 4 <= got.upper


def test_alpha_at_most_minrank_on_samples():
    rng = random.Random(1)
    for g in rng.sample(list(all_labeled_graphs(4)), 10):
        mr = minrank_bruteforce(g, 3)
        assert independence_number(g) <= mr
        assert mr <= clique_cover_number(g)


def test_complement_pairs_multiply_to_at_least_n():
    for g in (cycle(5), kneser(4, 2, {0}), complete(4)):
        mr = minrank_bruteforce(g, 2)
        mrc = minrank_bruteforce(complement(g), 2)
        assert mr * mrc >= g.n
