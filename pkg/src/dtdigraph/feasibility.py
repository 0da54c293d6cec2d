"""Decide whether a dag has a satisfying utility function for ``(t1, t2)``.

The constraints form a system of difference constraints whose constraint
digraph has a reversed copy of every dag edge with weight ``-t1`` and both
orientations of every hop with weight ``t2``.  The solver runs Bellman-Ford
with the table indexed by the number of ``t2`` edges on a path, which needs
only about ``n / (r + 1)`` passes for ``r = t2 / t1``.  Each pass is a hop
relaxation followed by a relaxation along the acyclic ``-t1`` edges.

All weights are integers, so every value in this module is exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, NamedTuple, Optional, Sequence, Union

from .dag import Dag, hops
from .errors import InvalidThresholds, MissingVertex, NotSimple, WrongStepKind

INF = math.inf
EDGE = "edge"
HOP = "hop"


@dataclass(frozen=True)
class Thresholds:
    t1: int
    t2: int

    def __post_init__(self):
        if not isinstance(self.t1, int) or not isinstance(self.t2, int):
            raise InvalidThresholds(f"thresholds must be integers, got ({self.t1!r}, {self.t2!r})")
        if self.t1 <= 0:
            raise InvalidThresholds(f"t1 must be positive, got {self.t1}")
        if self.t2 < self.t1:
            raise InvalidThresholds(f"t2 must be at least t1, got ({self.t1}, {self.t2})")

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.t2, self.t1)


@dataclass(frozen=True)
class UtilityAssignment:
    alpha: tuple[int, ...]
    t1: int
    t2: int

    def __getitem__(self, v):
        return self.alpha[v]

    def __len__(self):
        return len(self.alpha)


@dataclass(frozen=True)
class ForcingCycle:
    """A cycle of the dag in which each consecutive pair is an edge or a hop.

    ``steps[q] = (v, kind)`` says how ``v`` connects to the next vertex of the
    cycle: by the dag edge ``v -> next`` or by a hop.
    """

    steps: tuple[tuple[int, str], ...]

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(v for v, _ in self.steps)

    @property
    def edge_count(self) -> int:
        return sum(1 for _, k in self.steps if k == EDGE)

    @property
    def hop_count(self) -> int:
        return sum(1 for _, k in self.steps if k == HOP)

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.edge_count, self.hop_count)

    def canonical(self) -> "ForcingCycle":
        """Rotate so the smallest vertex comes first."""
        if not self.steps:
            return self
        i = min(range(len(self.steps)), key=lambda q: self.steps[q][0])
        return ForcingCycle(self.steps[i:] + self.steps[:i])


@dataclass
class BTable:
    """Rows ``B(i, .)`` plus the back-links that reconstruct each cell's path.

    ``edge_links[i][v] = y`` means ``B(i, v) = B(i, y) - t1`` (the dag edge
    ``v -> y``).  Otherwise ``hop_links[i][v] = x`` means ``B(i, v)`` came
    from ``B(i - 1, x) + t2``; ``-1`` in both means the value was inherited
    from ``B(i - 1, v)``.
    """

    rows: list[list[int]] = field(default_factory=list)
    hop_links: list[Optional[list[int]]] = field(default_factory=list)
    edge_links: list[list[int]] = field(default_factory=list)
    passes: int = 0


@dataclass
class FeasibilityResult:
    feasible: bool
    thresholds: tuple[int, int]
    assignment: Optional[UtilityAssignment] = None
    cycle: Optional[ForcingCycle] = None
    passes: int = 0
    table: Optional[BTable] = None

    def __bool__(self):
        return self.feasible


class Violation(NamedTuple):
    kind: str  # EDGE or HOP
    u: int
    v: int
    difference: int


def ascending_order(w: Sequence[float]) -> list[int]:
    """Vertices sorted by ``w`` ascending, ties by id, infinities last.

    Uses a counting sort when the finite keys span a range linear in ``n``
    and falls back to a comparison sort otherwise.
    """
    n = len(w)
    finite = [v for v in range(n) if w[v] != INF]
    tail = [v for v in range(n) if w[v] == INF]
    if not finite:
        return tail
    lo = min(w[v] for v in finite)
    hi = max(w[v] for v in finite)
    if hi - lo <= 4 * n + 16:
        buckets: list[list[int]] = [[] for _ in range(int(hi - lo) + 1)]
        for v in finite:
            buckets[int(w[v] - lo)].append(v)
        order = [v for b in buckets for v in b]
    else:
        order = sorted(finite, key=w.__getitem__)
    return order + tail


def relax_hops(dag: Dag, w: Sequence[float], t2: int, keep: bool = True):
    """General relaxation over the uniform-weight hop edges.

    Returns ``(w2, link)`` with ``w2[v] = min(w[v], w[x] + t2)`` where ``x``
    minimises ``w`` over the hop partners of ``v`` and ``link[v] = x`` when
    the hop improved ``v``.  With ``keep=False`` the ``w[v]`` term is dropped,
    so the result counts walks with exactly one more hop.

    The minimising partner is found by scanning the vertices in ascending
    order of ``w`` and skipping ``v`` and its dag neighbours, so the scan for
    ``v`` stops within ``deg(v) + 2`` steps.
    """
    n = dag.n
    order = ascending_order(w)
    nbrs = dag.neighbors
    out = list(w) if keep else [INF] * n
    link = [-1] * n
    for v in range(n):
        marked = nbrs[v]
        for x in order:
            if x != v and x not in marked:
                if w[x] != INF:
                    cand = w[x] + t2
                    if cand < out[v]:
                        out[v] = cand
                        link[v] = x
                break
    return out, link


def relax_edges(dag: Dag, w: Sequence[float], t1: int):
    """Dag relaxation over the ``-t1`` edges of the constraint digraph.

    The constraint digraph has an edge ``y -> v`` for every dag edge
    ``v -> y``, so vertices are settled in reverse topological order.
    Returns ``(w2, link)`` where ``link[v] = y`` when ``w2[v] = w2[y] - t1``.
    """
    out = list(w)
    link = [-1] * dag.n
    for v in reversed(dag.topological_order):
        best = out[v]
        for y in dag.out_adj[v]:
            if out[y] != INF and out[y] - t1 < best:
                best = out[y] - t1
                link[v] = y
        out[v] = best
    return out, link


def stopping_index(n: int, t1: int, t2: int) -> int:
    """Pass after which a solvable system can no longer improve."""
    return max(n - 1, 0) * t1 // (t1 + t2) + 1


def solve_constraints(dag: Dag, t1: int, t2: int, keep_table: bool = False) -> FeasibilityResult:
    """Core solver without the ``t1 <= t2`` model check.

    Only ``t1 > 0`` and ``t2 >= 0`` are required.  Certificate extraction
    uses thresholds with ``t2 < t1``, which the public entry point rejects.
    """
    if t1 <= 0 or t2 < 0:
        raise InvalidThresholds(f"need t1 > 0 and t2 >= 0, got ({t1}, {t2})")
    n = dag.n
    table = BTable()
    row, elink = relax_edges(dag, [0] * n, t1)
    table.rows.append(row)
    table.hop_links.append(None)
    table.edge_links.append(elink)
    stop = stopping_index(n, t1, t2)
    for i in range(1, stop + 2):
        tmp, hlink = relax_hops(dag, row, t2, keep=True)
        new, elink = relax_edges(dag, tmp, t1)
        table.rows.append(new)
        table.hop_links.append(hlink)
        table.edge_links.append(elink)
        table.passes = i
        if new == row:
            alpha = UtilityAssignment(tuple(int(a) for a in new), t1, t2)
            return FeasibilityResult(True, (t1, t2), assignment=alpha, passes=i,
                                     table=table if keep_table else None)
        row = new
    prev = table.rows[-2]
    v = next(u for u in range(n) if row[u] < prev[u])
    cycle = _extract_cycle(table, len(table.rows) - 1, v)
    return FeasibilityResult(False, (t1, t2), cycle=cycle, passes=table.passes,
                             table=table if keep_table else None)


def _extract_cycle(table: BTable, layer: int, v: int) -> ForcingCycle:
    # Walk back-links from cell (layer, v).  seq[q+1] -> seq[q] is a
    # constraint-digraph edge of kind kinds[q]; reversing it gives the dag
    # orientation seq[q] -> seq[q+1].
    seq = [v]
    kinds: list[str] = []
    pos = {v: 0}
    while True:
        while True:
            y = table.edge_links[layer][v]
            if y >= 0:
                kind = EDGE
                break
            hl = table.hop_links[layer]
            if hl is None:
                raise AssertionError("back-link walk reached row 0 without repeating a vertex")
            x = hl[v]
            if x >= 0:
                y, kind, layer = x, HOP, layer - 1
                break
            layer -= 1
        v = y
        kinds.append(kind)
        if v in pos:
            p = pos[v]
            steps = tuple((seq[q], kinds[q]) for q in range(p, len(seq)))
            return ForcingCycle(steps).canonical()
        pos[v] = len(seq)
        seq.append(v)


def check_feasible(dag: Dag, th: Union[Thresholds, tuple[int, int]], keep_table: bool = False) -> FeasibilityResult:
    """Find a satisfying assignment for ``th`` or a forcing cycle refuting it.

    A feasible result carries ``alpha(v)``, the least weight of a path ending
    at ``v`` in the constraint digraph.  An infeasible result carries a
    forcing cycle whose edge/hop ratio exceeds ``t2 / t1``.
    """
    if not isinstance(th, Thresholds):
        th = Thresholds(*th)
    return solve_constraints(dag, th.t1, th.t2, keep_table=keep_table)


def _alpha_list(dag: Dag, alpha) -> list:
    if isinstance(alpha, UtilityAssignment):
        alpha = alpha.alpha
    if isinstance(alpha, Mapping):
        missing = [v for v in range(dag.n) if v not in alpha]
        if missing:
            raise MissingVertex(f"no utility value for vertices {missing}")
        return [alpha[v] for v in range(dag.n)]
    alpha = list(alpha)
    if len(alpha) < dag.n:
        raise MissingVertex(f"no utility value for vertices {list(range(len(alpha), dag.n))}")
    return alpha


def verify_assignment(dag: Dag, th, alpha) -> list[Violation]:
    """Every constraint ``alpha`` violates; an empty list means it satisfies ``th``."""
    t1, t2 = (th.t1, th.t2) if isinstance(th, Thresholds) else th
    a = _alpha_list(dag, alpha)
    bad = []
    for u, v in dag.edges():
        if a[v] - a[u] < t1:
            bad.append(Violation(EDGE, u, v, a[v] - a[u]))
    for u, v in hops(dag):
        if abs(a[v] - a[u]) > t2:
            bad.append(Violation(HOP, u, v, a[v] - a[u]))
    return bad


def verify_forcing_cycle(dag: Dag, cycle) -> Fraction:
    """Check that ``cycle`` is a forcing cycle of ``dag`` and return its ratio."""
    steps = cycle.steps if isinstance(cycle, ForcingCycle) else tuple((int(v), k) for v, k in cycle)
    if len(steps) < 2:
        raise NotSimple("a forcing cycle needs at least two vertices")
    verts = [v for v, _ in steps]
    for v in verts:
        if not 0 <= v < dag.n:
            raise NotSimple(f"vertex {v} is not in the dag")
    if len(set(verts)) != len(verts):
        raise NotSimple(f"vertices repeat: {verts}")
    for q, (u, kind) in enumerate(steps):
        w = verts[(q + 1) % len(verts)]
        if kind == EDGE:
            if not dag.has_edge(u, w):
                raise WrongStepKind(q, f"({u}, {w}) is not an edge")
        elif kind == HOP:
            if dag.adjacent(u, w):
                raise WrongStepKind(q, f"{{{u}, {w}}} is not a hop")
        else:
            raise WrongStepKind(q, f"unknown step kind {kind!r}")
    hop_steps = sum(1 for _, k in steps if k == HOP)
    if hop_steps == 0:
        raise WrongStepKind(0, "a cycle of dag edges alone cannot exist")
    return Fraction(len(steps) - hop_steps, hop_steps)
