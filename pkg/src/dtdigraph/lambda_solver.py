"""Exact minimum satisfiable ratio of a dag.

``lambda(G)`` is found through the minimum cycle mean ``c`` of the
constraint digraph weighted with ``(t1, t2) = (1, 1)``: shifting every edge
weight by ``c`` turns the critical cycle into a zero-weight one, which gives
``lambda = (t2 - c) / (t1 + c)``.

The cycle mean uses Karp's formula with the table reindexed by the number of
hop edges: ``H(i, v)`` is the least weight of a walk ending at ``v`` with
exactly ``i`` hop edges.  Such a walk has a determined length
``l(i, v) = i + (i * t2 - H(i, v)) / t1``, and only the terms with length
exactly ``n`` are evaluated.  The loop stops as soon as the mean of every
later walk of length ``n`` exceeds the best value found, which happens after
roughly ``n / (lambda + 1)`` passes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .dag import Dag, classify_degenerate
from .errors import DegenerateInput
from .feasibility import (
    INF,
    ForcingCycle,
    Thresholds,
    UtilityAssignment,
    relax_edges,
    relax_hops,
    solve_constraints,
)


@dataclass
class HTable:
    rows: list[list[float]]
    lengths: list[list[Optional[int]]]
    hop_links: list[Optional[list[int]]]
    edge_links: list[list[int]]


@dataclass
class CycleMeanRun:
    mean: Fraction
    passes: int
    table_reads: int
    table: HTable


def _lengths(row, i, t1, t2):
    out = []
    for h in row:
        if h == INF:
            out.append(None)
        else:
            k, rem = divmod(i * t2 - h, t1)
            if rem:
                raise AssertionError(f"walk weight {h} is not a combination of ({t1}, {t2})")
            out.append(i + k)
    return out


def cycle_mean_run(dag: Dag, th) -> CycleMeanRun:
    """Run the reindexed minimum-cycle-mean loop and keep its table."""
    if not isinstance(th, Thresholds):
        th = Thresholds(*th)
    if classify_degenerate(dag).degenerate:
        raise DegenerateInput("a weak order has no cycle mean of interest")
    n, t1, t2 = dag.n, th.t1, th.t2
    row, elink = relax_edges(dag, [0] * n, t1)
    table = HTable([row], [_lengths(row, 0, t1, t2)], [None], [elink])
    best: Optional[Fraction] = None
    reads = 0
    passes = 0
    for i in range(1, n + 1):
        if best is not None and best < Fraction(i * t2 - (n - i) * t1, n):
            break
        tmp, hlink = relax_hops(dag, table.rows[-1], t2, keep=False)
        row, elink = relax_edges(dag, tmp, t1)
        lengths = _lengths(row, i, t1, t2)
        table.rows.append(row)
        table.lengths.append(lengths)
        table.hop_links.append(hlink)
        table.edge_links.append(elink)
        passes = i
        for v in range(n):
            if lengths[v] != n:
                continue
            top = None
            for j in range(i):
                reads += 1
                lj = table.lengths[j][v]
                if lj is None or lj >= n:
                    continue
                val = Fraction(int(row[v] - table.rows[j][v]), n - lj)
                if top is None or val > top:
                    top = val
            if top is not None and (best is None or top < best):
                best = top
    if best is None:
        raise AssertionError("no walk of length n exists in the constraint digraph")
    return CycleMeanRun(best, passes, reads, table)


def min_cycle_mean(dag: Dag, th, stats: Optional[dict] = None) -> Fraction:
    """Minimum mean edge weight over the cycles of the constraint digraph.

    Raises DegenerateInput for weak orders.  When ``stats`` is given, the
    pass count and the number of inner-maximum table reads are stored in it.
    """
    run = cycle_mean_run(dag, th)
    if stats is not None:
        stats["passes"] = run.passes
        stats["table_reads"] = run.table_reads
    return run.mean


def max_forcing_ratio(dag: Dag, stats: Optional[dict] = None) -> Fraction:
    """Largest edge/hop ratio of a forcing cycle of a nondegenerate dag."""
    c = min_cycle_mean(dag, (1, 1), stats)
    return (1 - c) / (1 + c)


def compute_lambda(dag: Dag, stats: Optional[dict] = None) -> Fraction:
    """``lambda(G)`` as a reduced fraction; ``0`` for weak orders.

    The model requires ``t1 <= t2``, so a dag whose forcing cycles all have
    ratio below one still gets ``lambda = 1``.
    """
    if classify_degenerate(dag).degenerate:
        if stats is not None:
            stats["passes"] = 0
            stats["table_reads"] = 0
        return Fraction(0)
    return max(Fraction(1), max_forcing_ratio(dag, stats))


@dataclass(frozen=True)
class LambdaCertificate:
    """A satisfying assignment at ``(den, num)`` plus a forcing cycle.

    When ``clamped`` is false the cycle's ratio equals ``lam`` and the two
    halves pin it exactly.  When it is true every forcing cycle has ratio
    below one, ``cycle`` is one of maximum ratio, and the lower bound
    ``lam >= 1`` comes from the model's ``t1 <= t2`` requirement instead.
    """

    lam: Fraction
    assignment: UtilityAssignment
    cycle: ForcingCycle
    clamped: bool = False


def _cycle_with_ratio(dag: Dag, ratio: Fraction) -> ForcingCycle:
    # Any forcing cycle with ratio above (jn - 1) / (in) has ratio j / i:
    # ratios have numerator + denominator <= n, so none fall in between.
    j, i, n = ratio.numerator, ratio.denominator, dag.n
    res = solve_constraints(dag, i * n, j * n - 1)
    if res.feasible:
        raise AssertionError(f"no forcing cycle with ratio {ratio} was found")
    if res.cycle.ratio != ratio:
        raise AssertionError(f"extracted cycle has ratio {res.cycle.ratio}, expected {ratio}")
    return res.cycle


def certify_lambda(dag: Dag) -> LambdaCertificate:
    if classify_degenerate(dag).degenerate:
        raise DegenerateInput("weak orders have lambda = 0 and no forcing-cycle certificate")
    raw = max_forcing_ratio(dag)
    lam = max(Fraction(1), raw)
    res = solve_constraints(dag, lam.denominator, lam.numerator)
    if not res.feasible:
        raise AssertionError(f"no satisfying assignment at ratio {lam}")
    return LambdaCertificate(lam, res.assignment, _cycle_with_ratio(dag, raw), clamped=raw < 1)


def lambda_assignment(dag: Dag) -> tuple[Fraction, UtilityAssignment]:
    """``lambda`` and a satisfying assignment at ``(den, num)``, any dag.

    Weak orders get their level numbers at ``(1, 1)``, which also satisfy
    every ratio above zero.
    """
    deg = classify_degenerate(dag)
    if deg.degenerate:
        return Fraction(0), UtilityAssignment(tuple(deg.levels), 1, 1)
    lam = compute_lambda(dag)
    res = solve_constraints(dag, lam.denominator, lam.numerator)
    if not res.feasible:
        raise AssertionError(f"no satisfying assignment at ratio {lam}")
    return lam, res.assignment
