import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dtdigraph.dag import (
    build_dag,
    classify_degenerate,
    components,
    hop_count,
    hops,
    is_transitive,
    topological_sort,
)
from dtdigraph.errors import CycleDetected, DuplicateEdge, InputError, SelfLoop
from dtdigraph.oracles import all_dags, path, random_dag, transitive_tournament


def test_build_path():
    d = build_dag([(0, 1), (1, 2)], 3)
    assert d.n == 3 and d.m == 2
    assert d.has_edge(0, 1) and not d.has_edge(1, 0)
    assert d.adjacent(1, 0)


def test_cycle_rejected_with_witness():
    with pytest.raises(CycleDetected) as info:
        build_dag([(0, 1), (1, 0)], 2)
    assert info.value.cycle == [0, 1]


def test_longer_cycle_witness_is_a_cycle():
    edges = [(0, 1), (1, 2), (2, 3), (3, 1)]
    with pytest.raises(CycleDetected) as info:
        build_dag(edges, 4)
    cyc = info.value.cycle
    assert all((cyc[i], cyc[(i + 1) % len(cyc)]) in edges for i in range(len(cyc)))


def test_single_vertex():
    d = build_dag([], 1)
    assert d.n == 1 and d.m == 0


@pytest.mark.parametrize("edges, exc", [
    ([(0, 0)], SelfLoop),
    ([(0, 1), (0, 1)], DuplicateEdge),
    ([(0, 5)], InputError),
])
def test_bad_edges(edges, exc):
    with pytest.raises(exc):
        build_dag(edges, 2)


def test_labels_preserved():
    d = build_dag([(0, 1)], 2, ["a", "b"])
    assert d.labels == ("a", "b")
    assert d.label(1) == "b"


@pytest.mark.parametrize("dag, expected", [
    (path(3), [0, 1, 2]),
    (build_dag([], 2), [0, 1]),
    (build_dag([(0, 1), (0, 2), (1, 3), (2, 3)], 4), [0, 1, 2, 3]),
    (build_dag([(2, 0), (1, 0)], 3), [1, 2, 0]),
])
def test_topological_sort(dag, expected):
    assert topological_sort(dag) == expected


def test_hops_examples():
    assert list(hops(path(3))) == [(0, 2)]
    assert list(hops(transitive_tournament(3))) == []
    assert list(hops(build_dag([], 3))) == [(0, 1), (0, 2), (1, 2)]


def test_is_transitive_examples():
    assert not is_transitive(path(3))
    assert is_transitive(transitive_tournament(4))
    assert is_transitive(build_dag([], 5))


def test_classify_examples():
    kb = build_dag([(0, 2), (0, 3), (1, 2), (1, 3)], 4)
    c = classify_degenerate(kb)
    assert c.degenerate and c.levels == (0, 0, 1, 1)
    assert not classify_degenerate(path(3)).degenerate
    c = classify_degenerate(build_dag([], 1))
    assert c.degenerate and c.levels == (0,)


def _weak_order_brute(dag):
    # any level map with edge(u, v) <=> level u < level v
    for levels in itertools.product(range(dag.n), repeat=dag.n):
        if all(dag.has_edge(u, v) == (levels[u] < levels[v])
               for u in range(dag.n) for v in range(dag.n) if u != v):
            return True
    return False


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_classify_matches_exhaustive(n):
    for d in all_dags(n):
        assert classify_degenerate(d).degenerate == _weak_order_brute(d)


def test_classify_matches_exhaustive_random_6():
    for seed in range(40):
        d = random_dag(6, 0.3 + 0.4 * (seed % 2), seed)
        c = classify_degenerate(d)
        assert c.degenerate == _weak_order_brute(d)
        if c.degenerate:
            assert all(d.has_edge(u, v) == (c.levels[u] < c.levels[v])
                       for u in range(6) for v in range(6) if u != v)


dags = st.builds(random_dag, st.integers(0, 9), st.floats(0, 1), st.integers(0, 10**6))


@settings(max_examples=150, deadline=None)
@given(dags)
def test_structural_invariants(d):
    assert hop_count(d) + d.m == d.n * (d.n - 1) // 2
    assert len(list(hops(d))) == hop_count(d)
    order = topological_sort(d)
    assert sorted(order) == list(range(d.n))
    pos = {v: i for i, v in enumerate(order)}
    assert all(pos[u] < pos[v] for u, v in d.edges())
    assert {(u, v) for u in range(d.n) for v in d.out_adj[u]} == {(u, v) for v in range(d.n) for u in d.in_adj[v]}
    assert sorted(v for c in components(d) for v in c) == list(range(d.n))
