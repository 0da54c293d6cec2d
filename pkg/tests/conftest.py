from fractions import Fraction

import networkx as nx
import pytest

from dtdigraph.dag import build_dag
from dtdigraph.oracles import path, standard_corpus, transitive_tournament

# transitive dag with lambda = 5/3 certified by an 8-cycle of 5 edges and 3 hops
FIVE_THIRDS_EDGES = [(0, 2), (0, 3), (0, 5), (0, 6), (2, 6), (4, 2), (4, 6), (5, 3), (7, 1)]


@pytest.fixture(scope="session")
def corpus():
    return standard_corpus(500)


@pytest.fixture
def p3():
    return path(3)


@pytest.fixture
def diamond():
    return build_dag([(0, 1), (0, 2), (1, 3), (2, 3)], 4)


@pytest.fixture
def five_thirds():
    return build_dag(FIVE_THIRDS_EDGES, 8)


@pytest.fixture
def tt4():
    return transitive_tournament(4)


def explicit_constraint_graph(dag, t1, t2):
    g = nx.DiGraph()
    g.add_nodes_from(range(dag.n))
    for u in range(dag.n):
        for v in range(dag.n):
            if u == v:
                continue
            if dag.has_edge(v, u):
                g.add_edge(u, v, w=-t1)
            elif not dag.has_edge(u, v):
                g.add_edge(u, v, w=t2)
    return g


def cycle_mean_by_enumeration(dag, t1, t2):
    """Minimum cycle mean over every simple cycle of the explicit constraint digraph."""
    g = explicit_constraint_graph(dag, t1, t2)
    best = None
    for c in nx.simple_cycles(g):
        w = sum(g[c[i]][c[(i + 1) % len(c)]]["w"] for i in range(len(c)))
        mean = Fraction(w, len(c))
        if best is None or mean < best:
            best = mean
    return best
