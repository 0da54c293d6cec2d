"""Maximum cliques of dags through k-clique extendable orderings.

Given an ordering in which overlapping k-cliques that share k - 1 vertices
always extend to a clique, a maximum clique is found by labelling every
k-clique with the size of the largest clique ending with it.  A topological
sort of a dag has this property for ``k = floor(lambda) + 1``.
"""

from __future__ import annotations

from fractions import Fraction
from math import floor
from typing import Mapping, Optional, Sequence

from .dag import Dag, build_dag, classify_degenerate, components, is_clique
from .errors import InputError, InvalidFactor, NonpositiveWeight
from .lambda_solver import compute_lambda, lambda_assignment


def degeneracy_order(dag: Dag) -> list[int]:
    """Smallest-last vertex order of the underlying undirected graph."""
    n = dag.n
    deg = [len(dag.neighbors[v]) for v in range(n)]
    buckets: list[set[int]] = [set() for _ in range(n)]
    for v in range(n):
        buckets[deg[v]].add(v)
    removed = [False] * n
    order = []
    d = 0
    for _ in range(n):
        d = max(d - 1, 0)
        while not buckets[d]:
            d += 1
        v = min(buckets[d])
        buckets[d].discard(v)
        removed[v] = True
        order.append(v)
        for w in dag.neighbors[v]:
            if not removed[w]:
                buckets[deg[w]].discard(w)
                deg[w] -= 1
                buckets[deg[w]].add(w)
    return order


def enumerate_k_cliques(dag: Dag, k: int) -> list[tuple[int, ...]]:
    """All k-vertex cliques of the underlying graph, as sorted id tuples.

    Each edge is oriented forward along a degeneracy order, so every clique
    is grown exactly once from its earliest vertex by intersecting forward
    neighbourhoods.
    """
    if k < 1:
        raise InputError(f"clique size must be at least 1, got {k}")
    if k == 1:
        return [(v,) for v in range(dag.n)]
    rank = {v: i for i, v in enumerate(degeneracy_order(dag))}
    fwd = [frozenset(w for w in dag.neighbors[v] if rank[w] > rank[v]) for v in range(dag.n)]
    found = []

    def grow(members, cand):
        if len(members) == k:
            found.append(tuple(sorted(members)))
            return
        if len(members) + len(cand) < k:
            return
        for w in sorted(cand):
            members.append(w)
            grow(members, cand & fwd[w])
            members.pop()

    for v in range(dag.n):
        grow([v], fwd[v])
    found.sort()
    return found


def _radix_sort(items: list, key_len: int, digit, n: int) -> list:
    # LSD: stable counting sorts from the least to the most significant digit
    for d in range(key_len - 1, -1, -1):
        buckets: list[list] = [[] for _ in range(n)]
        for it in items:
            buckets[digit(it, d)].append(it)
        items = [it for b in buckets for it in b]
    return items


def _check_weights(weights, n):
    for v in range(n):
        if weights[v] <= 0:
            raise NonpositiveWeight(f"vertex {v} has weight {weights[v]}")


def max_clique_with_ordering(dag: Dag, order: Sequence[int], k: int,
                             weights: Optional[Sequence] = None) -> frozenset:
    """Block dynamic program over the k-cliques, assuming ``order`` is k-extendable.

    The result is a maximum (or maximum-weight) clique when the assumption
    holds.  Otherwise it is the vertex set of a longest chain of k-cliques
    whose consecutive members overlap in k - 1 vertices, which can fail to
    be a clique; callers verify.
    """
    if k < 2:
        raise InputError(f"the block dynamic program needs k >= 2, got {k}")
    n = dag.n
    w = [1] * n if weights is None else list(weights)
    if weights is not None:
        _check_weights(w, n)
    if n == 0:
        return frozenset()
    pos = [0] * n
    for i, v in enumerate(order):
        pos[v] = i

    cliques = enumerate_k_cliques(dag, k)
    if not cliques:
        if weights is not None:
            return _heaviest_small(dag, k, w)
        for size in range(k - 1, 0, -1):
            smaller = enumerate_k_cliques(dag, size)
            if smaller:
                return frozenset(smaller[0])
        return frozenset()

    tuples = [tuple(sorted(c, key=pos.__getitem__)) for c in cliques]
    # table order: lexicographic on (u_k, ..., u_1)
    table = _radix_sort(tuples, k, lambda t, d: pos[t[k - 1 - d]], n)

    block_of = [0] * len(table)
    block_keys: list[tuple[int, ...]] = []
    for t, K in enumerate(table):
        if t == 0 or K[1:] != table[t - 1][1:]:
            block_keys.append(tuple(pos[x] for x in reversed(K[1:])))
        block_of[t] = len(block_keys) - 1

    # relevant block of K is the block keyed by K[:-1]; sorting the cliques
    # by (u_{k-1}, ..., u_1) lists those keys in block order, so one merge wires them
    by_prefix = _radix_sort(list(range(len(table))), k - 1,
                            lambda t, d: pos[table[t][k - 2 - d]], n)
    relevant: list[Optional[int]] = [None] * len(table)
    b = 0
    for t in by_prefix:
        key = tuple(pos[x] for x in reversed(table[t][:-1]))
        while b < len(block_keys) and block_keys[b] < key:
            b += 1
        if b < len(block_keys) and block_keys[b] == key:
            relevant[t] = b

    label = [0] * len(table)
    block_best: list[Optional[int]] = [None] * len(block_keys)
    best = 0
    for t, K in enumerate(table):
        r = relevant[t]
        if r is None:
            label[t] = sum(w[v] for v in K)
        else:
            label[t] = w[K[-1]] + label[block_best[r]]
        blk = block_of[t]
        if block_best[blk] is None or label[t] > label[block_best[blk]]:
            block_best[blk] = t
        if label[t] > label[best]:
            best = t

    members = list(table[best])
    t = best
    while relevant[t] is not None:
        t = block_best[relevant[t]]
        members.append(table[t][0])
    found = frozenset(members)
    if weights is not None:
        # with weights a clique below size k can outweigh every chain
        small = _heaviest_small(dag, k, w)
        if sum(w[v] for v in small) > label[best]:
            return small
    return found


def _heaviest_small(dag: Dag, k: int, w) -> frozenset:
    best: frozenset = frozenset()
    for size in range(1, k):
        for c in enumerate_k_cliques(dag, size):
            if sum(w[v] for v in c) > sum(w[v] for v in best):
                best = frozenset(c)
    return best


def max_weight_clique_with_ordering(dag: Dag, order: Sequence[int], k: int,
                                    weights: Sequence | Mapping) -> frozenset:
    if isinstance(weights, Mapping):
        weights = [weights[v] for v in range(dag.n)]
    _check_weights(weights, dag.n)
    return max_clique_with_ordering(dag, order, k, weights)


def _component_clique(sub: Dag, strict: bool, stats: dict) -> frozenset:
    order = sub.topological_order
    if sub.n == 1:
        return frozenset({0})
    if classify_degenerate(sub).degenerate:
        stats.setdefault("stages", []).append(2)
        return max_clique_with_ordering(sub, order, 2)
    if not strict:
        for k in (2, 3):
            stats.setdefault("stages", []).append(k)
            cand = max_clique_with_ordering(sub, order, k)
            if is_clique(sub, cand):
                return cand
    k = floor(compute_lambda(sub)) + 1
    stats.setdefault("stages", []).append(k)
    cand = max_clique_with_ordering(sub, order, k)
    if not is_clique(sub, cand):
        raise AssertionError(f"topological sort is not {k}-clique extendable")
    return cand


def max_clique_exact(dag: Dag, strict: bool = False, stats: Optional[dict] = None) -> frozenset:
    """A maximum clique, solved per connected component.

    By default the k = 2 and k = 3 programs run first and their result is
    accepted when it is a clique: each program maximises over chains that
    include every clique, so a chain that is a clique is maximum.  Only then
    is lambda computed.  ``strict`` computes lambda first and runs the one
    program guaranteed to be exact.
    """
    stats = {} if stats is None else stats
    best: frozenset = frozenset()
    for comp in components(dag):
        sub = dag.induced(comp) if len(comp) < dag.n else dag
        got = frozenset(comp[v] for v in _component_clique(sub, strict, stats))
        if len(got) > len(best):
            best = got
    return best


def prune_short_edges(dag: Dag, alpha: Sequence[int], span: int) -> Dag:
    """Drop every edge whose utility difference is below ``span``."""
    kept = [(u, v) for u, v in dag.edges() if alpha[v] - alpha[u] >= span]
    return build_dag(kept, dag.n, dag.labels)


def max_clique_approx(dag: Dag, i: int, stats: Optional[dict] = None) -> frozenset:
    """A clique at least ``1 / i`` the size of a maximum one, for ``1 <= i <= lambda``.

    Edges spanning fewer than ``i`` units of ``t1`` are removed, which
    divides lambda by at least ``i`` and keeps every ``i``-th vertex of any
    maximum clique; the smaller instance is then solved exactly.
    """
    if not isinstance(i, int) or i < 1:
        raise InvalidFactor(f"approximation factor must be a positive integer, got {i!r}")
    lam, alpha = lambda_assignment(dag)
    if Fraction(i) > lam:
        raise InvalidFactor(f"factor {i} exceeds lambda = {lam}")
    pruned = prune_short_edges(dag, alpha.alpha, i * alpha.t1)
    if stats is not None:
        stats["pruned_edges"] = dag.m - pruned.m
    return max_clique_exact(pruned, stats=stats)
