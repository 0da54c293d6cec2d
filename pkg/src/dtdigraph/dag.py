"""Immutable directed acyclic graphs with dense integer vertices.

Every algorithm in the package indexes arrays by vertex id, so vertices are
always ``0 .. n-1``.  Optional string labels live in a side table and are
only used for input and output.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, NamedTuple, Optional, Sequence

from .errors import CycleDetected, DuplicateEdge, InputError, SelfLoop


class Hop(NamedTuple):
    """An unordered non-adjacent pair, stored with ``u < v``."""

    u: int
    v: int


class Dag:
    """A validated dag.  Build instances with :func:`build_dag`."""

    def __init__(self, n, out_adj, in_adj, edge_set, labels=None):
        self.n = n
        self.out_adj = out_adj
        self.in_adj = in_adj
        self._edge_set = edge_set
        self.labels = labels

    @property
    def m(self) -> int:
        return len(self._edge_set)

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self._edge_set

    def adjacent(self, u: int, v: int) -> bool:
        """Adjacency in the underlying undirected graph."""
        return (u, v) in self._edge_set or (v, u) in self._edge_set

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.out_adj[u]]

    @cached_property
    def neighbors(self) -> tuple[frozenset, ...]:
        return tuple(frozenset(self.out_adj[v]) | frozenset(self.in_adj[v]) for v in range(self.n))

    @cached_property
    def topological_order(self) -> tuple[int, ...]:
        return tuple(topological_sort(self))

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels is not None else str(v)

    def induced(self, vertices: Sequence[int]) -> "Dag":
        """Sub-dag on ``vertices``; vertex ``vertices[i]`` becomes ``i``."""
        index = {v: i for i, v in enumerate(vertices)}
        edges = [(index[u], index[w]) for u in vertices for w in self.out_adj[u] if w in index]
        labels = [self.label(v) for v in vertices] if self.labels is not None else None
        return build_dag(edges, len(vertices), labels)

    def __eq__(self, other):
        if not isinstance(other, Dag):
            return NotImplemented
        return self.n == other.n and self._edge_set == other._edge_set and self.labels == other.labels

    def __hash__(self):
        return hash((self.n, frozenset(self._edge_set)))

    def __repr__(self):
        return f"Dag(n={self.n}, edges={self.edges()})"


def build_dag(edges: Iterable[tuple[int, int]], n: int, labels: Optional[Sequence[str]] = None) -> Dag:
    """Validate an edge list and return an immutable :class:`Dag`.

    Raises SelfLoop, DuplicateEdge, or CycleDetected (carrying the vertices of
    one directed cycle); out-of-range ids raise InputError.
    """
    if n < 0:
        raise InputError(f"vertex count must be nonnegative, got {n}")
    if labels is not None:
        labels = tuple(str(s) for s in labels)
        if len(labels) != n:
            raise InputError(f"expected {n} labels, got {len(labels)}")
    out_adj: list[list[int]] = [[] for _ in range(n)]
    in_adj: list[list[int]] = [[] for _ in range(n)]
    edge_set: set[tuple[int, int]] = set()
    for u, v in edges:
        u, v = int(u), int(v)
        if not (0 <= u < n and 0 <= v < n):
            raise InputError(f"edge ({u}, {v}) has a vertex outside 0..{n - 1}")
        if u == v:
            raise SelfLoop(u)
        if (u, v) in edge_set:
            raise DuplicateEdge(u, v)
        edge_set.add((u, v))
        out_adj[u].append(v)
        in_adj[v].append(u)
    cycle = _find_cycle(n, out_adj)
    if cycle is not None:
        raise CycleDetected(cycle)
    return Dag(
        n,
        tuple(tuple(sorted(a)) for a in out_adj),
        tuple(tuple(sorted(a)) for a in in_adj),
        frozenset(edge_set),
        labels,
    )


def _find_cycle(n, out_adj):
    # iterative three-colour DFS; returns the vertices of one cycle in edge order
    state = [0] * n
    parent = [-1] * n
    for root in range(n):
        if state[root]:
            continue
        stack = [(root, iter(sorted(out_adj[root])))]
        state[root] = 1
        while stack:
            v, it = stack[-1]
            for w in it:
                if state[w] == 0:
                    state[w] = 1
                    parent[w] = v
                    stack.append((w, iter(sorted(out_adj[w]))))
                    break
                if state[w] == 1:
                    cycle = [v]
                    while cycle[-1] != w:
                        cycle.append(parent[cycle[-1]])
                    cycle.reverse()
                    return cycle
            else:
                state[v] = 2
                stack.pop()
    return None


def topological_sort(dag: Dag) -> list[int]:
    """Kahn's algorithm, always emitting the smallest available source."""
    indeg = [len(dag.in_adj[v]) for v in range(dag.n)]
    heap = [v for v in range(dag.n) if indeg[v] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        v = heapq.heappop(heap)
        order.append(v)
        for w in dag.out_adj[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                heapq.heappush(heap, w)
    return order


def hops(dag: Dag) -> Iterator[Hop]:
    """Yield every non-adjacent pair in lexicographic order."""
    for u in range(dag.n):
        nb = dag.neighbors[u]
        for v in range(u + 1, dag.n):
            if v not in nb:
                yield Hop(u, v)


def hop_count(dag: Dag) -> int:
    return dag.n * (dag.n - 1) // 2 - dag.m


def is_transitive(dag: Dag) -> bool:
    for v in range(dag.n):
        for u in dag.in_adj[v]:
            for w in dag.out_adj[v]:
                if not dag.has_edge(u, w):
                    return False
    return True


def longest_path_levels(dag: Dag) -> list[int]:
    """Number of edges on a longest directed path ending at each vertex."""
    level = [0] * dag.n
    for v in dag.topological_order:
        for w in dag.out_adj[v]:
            if level[v] + 1 > level[w]:
                level[w] = level[v] + 1
    return level


@dataclass(frozen=True)
class DegeneracyClass:
    """Result of :func:`classify_degenerate`.

    ``levels`` is the weak-order witness when ``degenerate`` is true: ``(u, v)``
    is an edge exactly when ``levels[u] < levels[v]``.
    """

    degenerate: bool
    levels: Optional[tuple[int, ...]] = None


def classify_degenerate(dag: Dag) -> DegeneracyClass:
    """Decide whether ``dag`` models a weak order.

    In a weak order the level of a vertex is forced to be the length of the
    longest path ending at it.  Every edge already climbs a level under that
    assignment, so the dag is a weak order exactly when it has one edge per
    pair of vertices on different levels.
    """
    level = longest_path_levels(dag)
    sizes: dict[int, int] = {}
    for lv in level:
        sizes[lv] = sizes.get(lv, 0) + 1
    same_level_pairs = sum(s * (s - 1) // 2 for s in sizes.values())
    cross_pairs = dag.n * (dag.n - 1) // 2 - same_level_pairs
    if dag.m == cross_pairs:
        return DegeneracyClass(True, tuple(level))
    return DegeneracyClass(False)


def is_degenerate(dag: Dag) -> bool:
    return classify_degenerate(dag).degenerate


def weak_order_levels(levels: Sequence[int]) -> list[list[int]]:
    """Group vertices by level, lowest level first."""
    groups: dict[int, list[int]] = {}
    for v, lv in enumerate(levels):
        groups.setdefault(lv, []).append(v)
    return [groups[k] for k in sorted(groups)]


def components(dag: Dag) -> list[list[int]]:
    """Connected components of the underlying undirected graph, by smallest vertex."""
    seen = [False] * dag.n
    comps = []
    for s in range(dag.n):
        if seen[s]:
            continue
        seen[s] = True
        comp, stack = [], [s]
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in dag.neighbors[v]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def is_clique(dag: Dag, vertices: Iterable[int]) -> bool:
    vs = list(vertices)
    return all(dag.adjacent(a, b) for i, a in enumerate(vs) for b in vs[i + 1:])


def is_independent(dag: Dag, vertices: Iterable[int]) -> bool:
    vs = list(vertices)
    return not any(dag.adjacent(a, b) for i, a in enumerate(vs) for b in vs[i + 1:])
