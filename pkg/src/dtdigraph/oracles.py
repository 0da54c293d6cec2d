"""Brute-force ground truth and reproducible instance families.

Nothing here shares code with the optimized solvers beyond the Dag type
and the degeneracy test.  Everything is exponential or cubic and meant for
small instances only.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Mapping, Optional, Sequence

import numpy as np

from .dag import Dag, build_dag, classify_degenerate
from .errors import BadParams, CycleDetected, TooLarge
from .feasibility import EDGE, HOP, ForcingCycle, UtilityAssignment

MAX_CYCLE_N = 12
MAX_SUBSET_N = 12
MAX_PARTITION_N = 8
MAX_DENSE_N = 300


# -- forcing cycles -----------------------------------------------------------

def _steps(dag: Dag) -> list[list[tuple[int, int]]]:
    # (next vertex, 1 for an edge step, 0 for a hop step)
    out = []
    for v in range(dag.n):
        nb = dag.neighbors[v]
        s = [(w, 1) for w in dag.out_adj[v]]
        s += [(w, 0) for w in range(dag.n) if w != v and w not in nb]
        out.append(s)
    return out


def max_forcing_ratio_brute(dag: Dag) -> Optional[Fraction]:
    """Largest edge/hop ratio over all simple forcing cycles, or None.

    Exhaustive over simple cycles, anchored at their smallest vertex.  For
    every (visited set, endpoint) the set of achievable edge counts is kept
    as a bitset, so each simple cycle is accounted for without listing it.
    """
    n = dag.n
    if n > MAX_CYCLE_N:
        raise TooLarge(f"cycle enumeration is limited to n <= {MAX_CYCLE_N}")
    steps = _steps(dag)
    best: Optional[Fraction] = None
    for s in range(n):
        frontier = {(1 << s, s): 1}
        size = 1
        while frontier:
            nxt: dict[tuple[int, int], int] = {}
            for (mask, v), bits in frontier.items():
                for w, e in steps[v]:
                    if w == s:
                        if size >= 2:
                            closed = bits << e
                            j = closed.bit_length() - 1
                            if j < size:
                                r = Fraction(j, size - j)
                                if best is None or r > best:
                                    best = r
                    elif w > s and not mask >> w & 1:
                        key = (mask | 1 << w, w)
                        nxt[key] = nxt.get(key, 0) | bits << e
            frontier = nxt
            size += 1
    return best


def brute_lambda(dag: Dag) -> Fraction:
    if dag.n > MAX_CYCLE_N:
        raise TooLarge(f"brute_lambda is limited to n <= {MAX_CYCLE_N}")
    if classify_degenerate(dag).degenerate:
        return Fraction(0)
    r = max_forcing_ratio_brute(dag)
    return max(Fraction(1), r)


def enumerate_forcing_cycles(dag: Dag) -> Iterator[ForcingCycle]:
    """Every simple forcing cycle of length >= 3, once per direction."""
    steps = _steps(dag)
    n = dag.n

    def extend(path, kinds, seen):
        v = path[-1]
        for w, e in steps[v]:
            kind = EDGE if e else HOP
            if w == path[0] and len(path) >= 3:
                yield ForcingCycle(tuple(zip(path, kinds + [kind])))
            elif w > path[0] and w not in seen:
                seen.add(w)
                path.append(w)
                yield from extend(path, kinds + [kind], seen)
                path.pop()
                seen.discard(w)

    for s in range(n):
        yield from extend([s], [], {s})


# -- difference constraints ---------------------------------------------------

@dataclass
class BruteFeasibility:
    feasible: bool
    assignment: Optional[UtilityAssignment] = None


def constraint_matrix(dag: Dag, t1: int, t2: int) -> np.ndarray:
    """Dense weight matrix of the constraint digraph; ``big`` marks no edge."""
    n = dag.n
    big = np.int64(1) << 40
    w = np.full((n, n), big, dtype=np.int64)
    for u in range(n):
        for v in range(n):
            if u == v:
                continue
            if dag.has_edge(v, u):
                w[u, v] = -t1
            elif not dag.has_edge(u, v):
                w[u, v] = t2
    return w


def brute_feasible(dag: Dag, th) -> BruteFeasibility:
    """Floyd-Warshall on the explicit constraint digraph."""
    t1, t2 = (th.t1, th.t2) if hasattr(th, "t1") else th
    n = dag.n
    if n > MAX_DENSE_N:
        raise TooLarge(f"brute_feasible is limited to n <= {MAX_DENSE_N}")
    if n == 0:
        return BruteFeasibility(True, UtilityAssignment((), t1, t2))
    d = constraint_matrix(dag, t1, t2)
    np.fill_diagonal(d, np.minimum(np.diag(d), 0))
    big = np.int64(1) << 40
    for k in range(n):
        d = np.minimum(d, d[:, k:k + 1] + d[k:k + 1, :])
        d[d > big] = big
        if d[k, k] < 0:
            return BruteFeasibility(False)
    if (np.diag(d) < 0).any():
        return BruteFeasibility(False)
    alpha = np.minimum(d.min(axis=0), 0)
    return BruteFeasibility(True, UtilityAssignment(tuple(int(a) for a in alpha), t1, t2))


def candidate_ratios(n: int) -> list[Fraction]:
    return sorted({Fraction(j, i) for i in range(1, n) for j in range(i, n - i + 1)})


def binary_search_lambda(dag: Dag) -> Fraction:
    """Binary search over the ``j / i`` candidates with dense feasibility probes."""
    if dag.n > MAX_DENSE_N:
        raise TooLarge(f"binary_search_lambda is limited to n <= {MAX_DENSE_N}")
    if classify_degenerate(dag).degenerate:
        return Fraction(0)
    cands = candidate_ratios(dag.n)
    lo, hi = 0, len(cands) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        r = cands[mid]
        if brute_feasible(dag, (r.denominator, r.numerator)).feasible:
            hi = mid
        else:
            lo = mid + 1
    return cands[lo]


# -- NP-hard optima by exhaustion ---------------------------------------------

def _nbr_masks(dag: Dag) -> list[int]:
    return [sum(1 << w for w in dag.neighbors[v]) for v in range(dag.n)]


def _members(mask: int) -> tuple[int, ...]:
    return tuple(v for v in range(mask.bit_length()) if mask >> v & 1)


def _clique_table(nbr: list[int], n: int) -> list[bool]:
    ok = [True] * (1 << n)
    for mask in range(1, 1 << n):
        low = (mask & -mask).bit_length() - 1
        rest = mask & ~(1 << low)
        ok[mask] = ok[rest] and rest & ~nbr[low] == 0
    return ok


def _independent_table(nbr: list[int], n: int) -> list[bool]:
    ok = [True] * (1 << n)
    for mask in range(1, 1 << n):
        low = (mask & -mask).bit_length() - 1
        rest = mask & ~(1 << low)
        ok[mask] = ok[rest] and rest & nbr[low] == 0
    return ok


def _best_subset(ok: list[bool]) -> tuple[int, ...]:
    best = 0
    for mask, good in enumerate(ok):
        if good and bin(mask).count("1") > bin(best).count("1"):
            best = mask
    return _members(best)


def brute_max_clique(dag: Dag) -> tuple[int, tuple[int, ...]]:
    if dag.n > MAX_SUBSET_N:
        raise TooLarge(f"brute_max_clique is limited to n <= {MAX_SUBSET_N}")
    w = _best_subset(_clique_table(_nbr_masks(dag), dag.n))
    return len(w), w


def brute_independent_set(dag: Dag) -> tuple[int, tuple[int, ...]]:
    if dag.n > MAX_SUBSET_N:
        raise TooLarge(f"brute_independent_set is limited to n <= {MAX_SUBSET_N}")
    w = _best_subset(_independent_table(_nbr_masks(dag), dag.n))
    return len(w), w


def _min_partition(ok: list[bool], n: int) -> list[tuple[int, ...]]:
    full = (1 << n) - 1
    cost = [0] * (1 << n)
    choice = [0] * (1 << n)
    for mask in range(1, full + 1):
        low = mask & -mask
        rest = mask & ~low
        best, pick = n + 1, 0
        sub = rest
        while True:
            part = sub | low
            if ok[part] and cost[mask & ~part] + 1 < best:
                best, pick = cost[mask & ~part] + 1, part
            if sub == 0:
                break
            sub = (sub - 1) & rest
        cost[mask], choice[mask] = best, pick
    parts, mask = [], full
    while mask:
        parts.append(_members(choice[mask]))
        mask &= ~choice[mask]
    return parts


def brute_chromatic(dag: Dag) -> tuple[int, list[tuple[int, ...]]]:
    if dag.n > MAX_PARTITION_N:
        raise TooLarge(f"brute_chromatic is limited to n <= {MAX_PARTITION_N}")
    parts = _min_partition(_independent_table(_nbr_masks(dag), dag.n), dag.n)
    return len(parts), parts


def brute_clique_cover(dag: Dag) -> tuple[int, list[tuple[int, ...]]]:
    if dag.n > MAX_PARTITION_N:
        raise TooLarge(f"brute_clique_cover is limited to n <= {MAX_PARTITION_N}")
    parts = _min_partition(_clique_table(_nbr_masks(dag), dag.n), dag.n)
    return len(parts), parts


def is_k_clique_extendable(dag: Dag, order: Sequence[int], k: int) -> bool:
    """Direct check of k-clique extendability for ``order``.

    For every pair of k-cliques sharing k - 1 vertices, where the vertex
    only in the first comes before the whole union and the vertex only in
    the second comes after it, the two private vertices must be adjacent.
    Cliques are found by exhaustive subset filtering.
    """
    if k < 2:
        return True
    pos = {v: i for i, v in enumerate(order)}
    cliques = [c for c in itertools.combinations(range(dag.n), k)
               if all(dag.adjacent(a, b) for a, b in itertools.combinations(c, 2))]
    by_core: dict[frozenset, list[int]] = {}
    for c in cliques:
        for x in c:
            core = frozenset(c) - {x}
            by_core.setdefault(core, []).append(x)
    for core, extras in by_core.items():
        lo, hi = min(pos[v] for v in core), max(pos[v] for v in core)
        for a in extras:
            for b in extras:
                if pos[a] < lo and pos[b] > hi and not dag.adjacent(a, b):
                    return False
    return True


# -- instance families --------------------------------------------------------

def all_dags(n: int) -> list[Dag]:
    """Every labeled dag on ``n`` vertices (25 for n = 3, 543 for n = 4)."""
    if n > 5:
        raise BadParams("all_dags is limited to n <= 5")
    pairs = list(itertools.combinations(range(n), 2))
    out = []
    for choice in itertools.product((0, 1, 2), repeat=len(pairs)):
        edges = [(u, v) if c == 1 else (v, u) for (u, v), c in zip(pairs, choice) if c]
        try:
            out.append(build_dag(edges, n))
        except CycleDetected:
            pass
    return out


def random_dag(n: int, p: float, seed: int) -> Dag:
    """G(n, p) oriented along a uniformly random vertex order."""
    if n < 0 or not 0 <= p <= 1:
        raise BadParams(f"random_dag needs n >= 0 and 0 <= p <= 1, got n={n}, p={p}")
    rng = random.Random(seed)
    rank = list(range(n))
    rng.shuffle(rank)
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                edges.append((u, v) if rank[u] < rank[v] else (v, u))
    return build_dag(edges, n)


def path(n: int) -> Dag:
    return build_dag([(i, i + 1) for i in range(n - 1)], n)


def transitive_tournament(n: int) -> Dag:
    return build_dag(list(itertools.combinations(range(n), 2)), n)


def chain_plus_isolated(n: int) -> Dag:
    """A total order on ``n - 1`` vertices plus one vertex comparable to none."""
    if n < 1:
        raise BadParams("chain_plus_isolated needs n >= 1")
    return build_dag(list(itertools.combinations(range(n - 1), 2)), n)


def from_colored_graph(n: int, edges, coloring: Mapping[int, int] | Sequence[int]) -> Dag:
    """Orient each edge from the lower colour class to the higher one."""
    cls = [coloring[v] for v in range(n)]
    out = []
    for u, v in edges:
        if cls[u] == cls[v]:
            raise BadParams(f"edge ({u}, {v}) joins two vertices of colour {cls[u]}")
        out.append((u, v) if cls[u] < cls[v] else (v, u))
    return build_dag(out, n)


def random_colored(n: int, p: float, seed: int, colors: int = 3) -> tuple[Dag, list[int]]:
    """A random properly coloured graph turned into a dag, with its colouring."""
    rng = random.Random(seed)
    cls = [rng.randrange(colors) for _ in range(n)]
    edges = [(u, v) for u in range(n) for v in range(u + 1, n)
             if cls[u] != cls[v] and rng.random() < p]
    return from_colored_graph(n, edges, cls), cls


FAMILIES = ("random", "path", "chain_plus_isolated", "transitive", "colored", "all_dags")


def gen(family: str, params: Optional[Mapping] = None, seed: int = 0):
    """Build an instance of ``family``; ``all_dags`` returns a list."""
    params = dict(params or {})
    try:
        if family == "random":
            return random_dag(int(params["n"]), float(params.get("p", 0.5)), seed)
        if family == "path":
            return path(int(params["n"]))
        if family == "chain_plus_isolated":
            return chain_plus_isolated(int(params["n"]))
        if family == "transitive":
            return transitive_tournament(int(params["n"]))
        if family == "colored":
            return random_colored(int(params["n"]), float(params.get("p", 0.5)), seed)[0]
        if family == "all_dags":
            return all_dags(int(params["n"]))
    except KeyError as exc:
        raise BadParams(f"family {family!r} needs parameter {exc.args[0]!r}") from None
    except ValueError as exc:
        raise BadParams(str(exc)) from None
    raise BadParams(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")


def standard_corpus(random_count: int = 500, seed: int = 20240917) -> list[tuple[str, Dag]]:
    """All labeled 4-vertex dags plus seeded random dags on 5 to 8 vertices."""
    corpus = [(f"all4[{i}]", d) for i, d in enumerate(all_dags(4))]
    rng = random.Random(seed)
    for i in range(random_count):
        n = 5 + i % 4
        p = rng.choice((0.2, 0.35, 0.5, 0.65, 0.8))
        s = rng.randrange(1 << 30)
        corpus.append((f"random(n={n},p={p},seed={s})", random_dag(n, p, s)))
    return corpus
