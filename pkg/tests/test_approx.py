import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dtdigraph.approx import clique_cover_approx, coloring_approx, independent_set_approx
from dtdigraph.dag import build_dag, is_clique, is_independent
from dtdigraph.lambda_solver import compute_lambda
from dtdigraph.oracles import (
    all_dags,
    brute_chromatic,
    brute_clique_cover,
    brute_independent_set,
    brute_lambda,
    chain_plus_isolated,
    from_colored_graph,
    random_colored,
    random_dag,
    transitive_tournament,
)


def check_structure(d):
    mis = independent_set_approx(d)
    assert mis.solution and is_independent(d, mis.solution)
    col = coloring_approx(d)
    assert sorted(v for c in col.solution for v in c) == list(range(d.n))
    assert all(c and is_independent(d, c) for c in col.solution)
    cov = clique_cover_approx(d)
    assert sorted(v for c in cov.solution for v in c) == list(range(d.n))
    assert all(c and is_clique(d, c) for c in cov.solution)
    return mis, col, cov


def check_factors(d):
    mis, col, cov = check_structure(d)
    k = mis.k
    assert brute_independent_set(d)[0] <= k * len(mis.solution)
    assert len(col.solution) <= k * brute_chromatic(d)[0]
    assert len(cov.solution) <= k * brute_clique_cover(d)[0]


def test_p3_examples(p3):
    mis = independent_set_approx(p3)
    assert len(mis.solution) == 1 and mis.k == 3
    assert [sorted(c) for c in coloring_approx(p3).solution] == [[0], [1], [2]]
    assert sorted(sorted(c) for c in clique_cover_approx(p3).solution) == [[0], [1], [2]]
    check_factors(p3)


def test_single_edge():
    d = build_dag([(0, 1)], 2)
    assert len(independent_set_approx(d).solution) == 1


def test_chain_plus_isolated():
    d = chain_plus_isolated(6)
    mis = independent_set_approx(d)
    assert mis.k == 3
    check_factors(d)


def test_edgeless_is_exact():
    d = build_dag([], 4)
    assert independent_set_approx(d).solution == frozenset(range(4))
    assert len(coloring_approx(d).solution) == 1
    assert len(clique_cover_approx(d).solution) == 4
    assert coloring_approx(d).k == 1


def test_transitive_tournaments():
    tt3 = transitive_tournament(3)
    assert len(coloring_approx(tt3).solution) == 3
    tt4 = transitive_tournament(4)
    cov = clique_cover_approx(tt4)
    assert len(cov.solution) <= 2 * brute_clique_cover(tt4)[0]


def test_degenerate_results_are_optimal():
    d = build_dag([(0, 2), (0, 3), (1, 2), (1, 3)], 4)
    assert len(independent_set_approx(d).solution) == brute_independent_set(d)[0]
    assert len(coloring_approx(d).solution) == brute_chromatic(d)[0]
    assert len(clique_cover_approx(d).solution) == brute_clique_cover(d)[0]


def test_factor_bounds_on_all_small_dags():
    for n in range(1, 5):
        for d in all_dags(n):
            check_factors(d)


@settings(max_examples=120, deadline=None)
@given(st.integers(1, 8), st.floats(0, 1), st.integers(0, 10**6))
def test_factor_bounds_random(n, p, seed):
    check_factors(random_dag(n, p, seed))


@settings(max_examples=60, deadline=None)
@given(st.integers(20, 60), st.floats(0, 1), st.integers(0, 10**6))
def test_structure_larger(n, p, seed):
    check_structure(random_dag(n, p, seed))


def test_deterministic(five_thirds):
    assert independent_set_approx(five_thirds) == independent_set_approx(five_thirds)
    assert clique_cover_approx(five_thirds) == clique_cover_approx(five_thirds)


def test_colored_triangle_orientation():
    d = from_colored_graph(3, [(0, 1), (1, 2), (0, 2)], [0, 1, 2])
    assert sorted(d.edges()) == [(0, 1), (0, 2), (1, 2)]


@settings(max_examples=150, deadline=None)
@given(st.integers(3, 10), st.floats(0.1, 1), st.integers(0, 10**6))
def test_colored_family_lambda_at_most_two(n, p, seed):
    d, colors = random_colored(n, p, seed)
    lam = compute_lambda(d)
    assert lam <= 2
    assert lam == brute_lambda(d)


def test_colored_family_reaches_two():
    # odd cycles through three colour classes force the ratio 2
    edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)]
    d = from_colored_graph(6, edges, [0, 1, 2, 0, 1, 2])
    assert compute_lambda(d) == brute_lambda(d) == 2
