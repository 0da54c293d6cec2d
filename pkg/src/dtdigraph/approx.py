"""Independent set, colouring and clique cover within ``floor(lambda) + 1``.

All three read a satisfying assignment at ``t2 / t1 = lambda``.  Vertices
whose utilities differ by less than ``t1`` are never joined by an edge, and
vertices whose utilities differ by more than ``t2`` always are.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from fractions import Fraction
from math import floor
from typing import Optional, Union

from .dag import Dag, classify_degenerate, weak_order_levels
from .feasibility import UtilityAssignment
from .lambda_solver import lambda_assignment


@dataclass(frozen=True)
class ApproxResult:
    solution: Union[frozenset, list]
    k: int
    lam: Fraction
    assignment: Optional[UtilityAssignment]


def _setup(dag: Dag):
    lam, alpha = lambda_assignment(dag)
    return lam, alpha, floor(lam) + 1


def _best_window(values: list[int], width: int, closed: bool) -> int:
    """Left end ``x`` among ``values`` maximising the count in the window.

    The window is ``[x, x + width)`` or, with ``closed``, ``[x, x + width]``.
    Ties go to the smallest ``x``.
    """
    srt = sorted(values)
    edge = bisect_right if closed else bisect_left
    best_x, best_count = srt[0], -1
    for x in sorted(set(srt)):
        count = edge(srt, x + width) - bisect_left(srt, x)
        if count > best_count:
            best_x, best_count = x, count
    return best_x


def independent_set_approx(dag: Dag) -> ApproxResult:
    deg = classify_degenerate(dag)
    if deg.degenerate:
        levels = weak_order_levels(deg.levels)
        top = max(levels, key=len) if levels else []
        return ApproxResult(frozenset(top), 1, Fraction(0), None)
    lam, alpha, k = _setup(dag)
    a, t1 = alpha.alpha, alpha.t1
    x = _best_window(list(a), t1, closed=False)
    chosen = frozenset(v for v in range(dag.n) if x <= a[v] < x + t1)
    return ApproxResult(chosen, k, lam, alpha)


def coloring_approx(dag: Dag) -> ApproxResult:
    """Colour classes are the nonempty ``t1``-wide utility buckets."""
    deg = classify_degenerate(dag)
    if deg.degenerate:
        return ApproxResult([frozenset(c) for c in weak_order_levels(deg.levels)], 1, Fraction(0), None)
    lam, alpha, k = _setup(dag)
    a, t1 = alpha.alpha, alpha.t1
    lo = min(a)
    buckets: dict[int, list[int]] = {}
    for v in range(dag.n):
        buckets.setdefault((a[v] - lo) // t1, []).append(v)
    return ApproxResult([frozenset(buckets[b]) for b in sorted(buckets)], k, lam, alpha)


def _spread_chain(a, remaining: set, start: int, t2: int) -> list[int]:
    # from ``start`` keep taking the nearest utility more than t2 above
    # (then below) the last pick; pairwise gaps above t2 force adjacency
    up = sorted(remaining, key=lambda v: (a[v], v))
    chain = [start]
    last = a[start]
    for v in up:
        if a[v] > last + t2:
            chain.append(v)
            last = a[v]
    last = a[start]
    for v in sorted(remaining, key=lambda v: (-a[v], v)):
        if a[v] < last - t2:
            chain.append(v)
            last = a[v]
    return chain


def clique_cover_approx(dag: Dag) -> ApproxResult:
    deg = classify_degenerate(dag)
    if deg.degenerate:
        levels = [list(c) for c in weak_order_levels(deg.levels)]
        cover = []
        while any(levels):
            cover.append(frozenset(c.pop(0) for c in levels if c))
        return ApproxResult(cover, 1, Fraction(0), None)
    lam, alpha, k = _setup(dag)
    a, t2 = alpha.alpha, alpha.t2
    remaining = set(range(dag.n))
    cover = []
    while remaining:
        y = _best_window([a[v] for v in remaining], t2, closed=True)
        start = min((v for v in remaining if y <= a[v] <= y + t2), key=lambda v: (a[v], v))
        clique = _spread_chain(a, remaining, start, t2)
        cover.append(frozenset(clique))
        remaining.difference_update(clique)
    return ApproxResult(cover, k, lam, alpha)
