"""Command-line front end.

Every subcommand prints one JSON document on standard output (``gen``
prints an instance file).  Exit codes: 0 success, 1 infeasible thresholds
for ``check``, 2 input error, 3 internal error.
"""

from __future__ import annotations

import argparse
import logging
import random
import sys
import time
from fractions import Fraction
from math import floor, lcm

from . import approx, clique, oracles
from .dag import Dag, classify_degenerate, is_clique
from .errors import BadParams, DtdError, InputError
from .feasibility import check_feasible, solve_constraints, verify_assignment, verify_forcing_cycle
from .fileio import assignment_doc, cycle_doc, dump_document, emit_instance, ratio_doc, read_instance
from .lambda_solver import certify_lambda, compute_lambda

log = logging.getLogger("dtdigraph")

EXIT_OK, EXIT_INFEASIBLE, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3


def parse_threshold(text: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"threshold {text!r} is not an integer or a fraction p/q") from None
    return value


def scale_thresholds(t1: Fraction, t2: Fraction) -> tuple[int, int]:
    """Scale rational thresholds by the lcm of their denominators."""
    k = lcm(t1.denominator, t2.denominator)
    return int(t1 * k), int(t2 * k)


def _base(dag: Dag, command: str) -> dict:
    doc = {"command": command, "n": dag.n, "m": dag.m}
    if dag.labels is not None:
        doc["labels"] = list(dag.labels)
    return doc


def _sets(sets) -> list[list[int]]:
    return [sorted(s) for s in sets]


def cmd_lambda(args) -> tuple[dict, int]:
    dag = read_instance(args.file)
    stats: dict = {}
    start = time.perf_counter()
    lam = compute_lambda(dag, stats)
    doc = _base(dag, "lambda")
    doc["lambda"] = ratio_doc(lam)
    doc["degenerate"] = lam == 0
    doc["instrumentation"] = {
        "passes": stats["passes"],
        "table_cells": (stats["passes"] + 1) * dag.n if lam else 0,
        "table_reads": stats["table_reads"],
        "elapsed": round(time.perf_counter() - start, 6),
    }
    return doc, EXIT_OK


def cmd_check(args) -> tuple[dict, int]:
    dag = read_instance(args.file)
    t1, t2 = scale_thresholds(parse_threshold(args.t1), parse_threshold(args.t2))
    start = time.perf_counter()
    res = check_feasible(dag, (t1, t2))
    doc = _base(dag, "check")
    doc["thresholds"] = {"t1": t1, "t2": t2}
    doc["feasible"] = res.feasible
    doc["instrumentation"] = {
        "passes": res.passes,
        "table_cells": (res.passes + 1) * dag.n,
        "elapsed": round(time.perf_counter() - start, 6),
    }
    if res.feasible:
        doc["assignment"] = assignment_doc(res.assignment)
        return doc, EXIT_OK
    doc["cycle"] = cycle_doc(res.cycle)
    return doc, EXIT_INFEASIBLE


def cmd_certify(args) -> tuple[dict, int]:
    dag = read_instance(args.file)
    doc = _base(dag, "certify")
    deg = classify_degenerate(dag)
    if deg.degenerate:
        doc["lambda"] = ratio_doc(Fraction(0))
        doc["degenerate"] = True
        doc["levels"] = list(deg.levels)
        return doc, EXIT_OK
    cert = certify_lambda(dag)
    doc["lambda"] = ratio_doc(cert.lam)
    doc["degenerate"] = False
    doc["clamped"] = cert.clamped
    doc["assignment"] = assignment_doc(cert.assignment)
    doc["cycle"] = cycle_doc(cert.cycle)
    return doc, EXIT_OK


def cmd_clique(args) -> tuple[dict, int]:
    dag = read_instance(args.file)
    stats: dict = {}
    start = time.perf_counter()
    if args.approx is not None:
        found = clique.max_clique_approx(dag, args.approx, stats)
    else:
        found = clique.max_clique_exact(dag, strict=args.strict, stats=stats)
    if not is_clique(dag, found):
        raise AssertionError("clique search returned a non-clique")
    doc = _base(dag, "clique")
    doc["clique"] = sorted(found)
    doc["size"] = len(found)
    doc["instrumentation"] = {"stages": stats.get("stages", []),
                              "elapsed": round(time.perf_counter() - start, 6)}
    if args.approx is not None:
        doc["factor"] = args.approx
    return doc, EXIT_OK


def _approx_cmd(name, fn):
    def run(args) -> tuple[dict, int]:
        dag = read_instance(args.file)
        res = fn(dag)
        doc = _base(dag, name)
        doc["k"] = res.k
        doc["lambda"] = ratio_doc(res.lam)
        if res.assignment is not None:
            doc["assignment"] = assignment_doc(res.assignment)
        if isinstance(res.solution, frozenset):
            doc["solution"] = sorted(res.solution)
        else:
            doc["solution"] = _sets(res.solution)
        return doc, EXIT_OK
    return run


def _parse_params(items) -> dict:
    out = {}
    for item in items or []:
        key, sep, value = item.partition("=")
        if not sep:
            raise BadParams(f"parameter {item!r} is not of the form key=value")
        out[key] = value
    return out


def cmd_gen(args) -> tuple[str, int]:
    if args.family == "all_dags":
        raise BadParams("all_dags yields many instances; use it through the library")
    dag = oracles.gen(args.family, _parse_params(args.params), args.seed)
    return emit_instance(dag), EXIT_OK


def bench_row(dag: Dag) -> dict:
    row = {"n": dag.n, "m": dag.m}
    stats: dict = {}
    start = time.perf_counter()
    lam = compute_lambda(dag, stats)
    row["lambda"] = str(lam)
    row["lambda_elapsed"] = round(time.perf_counter() - start, 6)
    row["alg1_passes"] = stats["passes"]
    row["alg1_bound"] = floor(dag.n / (lam + 1)) + 2
    if lam:
        t1, t2 = lam.denominator, lam.numerator
        start = time.perf_counter()
        res = solve_constraints(dag, t1, t2)
        row["feasibility_elapsed"] = round(time.perf_counter() - start, 6)
        row["feasibility_passes"] = res.passes
        row["feasibility_bound"] = (dag.n - 1) * t1 // (t1 + t2) + 2
        row["table_cells"] = (res.passes + 1) * dag.n
    row["within_bounds"] = (row["alg1_passes"] <= row["alg1_bound"]
                            and row.get("feasibility_passes", 0) <= row.get("feasibility_bound", 0))
    return row


def cmd_bench(args) -> tuple[dict, int]:
    params = _parse_params(args.params)
    rows = []
    for n in args.sizes:
        for rep in range(args.reps):
            dag = oracles.gen(args.family, {**params, "n": n}, args.seed + rep)
            row = bench_row(dag)
            row["seed"] = args.seed + rep
            rows.append(row)
            log.info("n=%d m=%d lambda=%s passes=%d", row["n"], row["m"], row["lambda"], row["alg1_passes"])
    return {"command": "bench", "family": args.family, "rows": rows}, EXIT_OK


def selftest_report(max_n: int, random_count: int, seed: int) -> dict:
    """Cross-check the solvers against the oracles on small dags."""
    corpus = []
    for n in range(1, min(max_n, 4) + 1):
        corpus += oracles.all_dags(n)
    rng = random.Random(seed)
    if max_n >= 5:
        for _ in range(random_count):
            n = rng.randint(5, max_n)
            corpus.append(oracles.random_dag(n, rng.choice((0.2, 0.4, 0.6, 0.8)), rng.randrange(1 << 30)))
    failures: list[str] = []
    for dag in corpus:
        lam = compute_lambda(dag)
        if dag.n <= oracles.MAX_CYCLE_N:
            if lam != oracles.brute_lambda(dag) or lam != oracles.binary_search_lambda(dag):
                failures.append(f"lambda mismatch on {dag!r}")
        for th in ((1, 1), (1, 2), (2, 3), (1, 3)):
            res = check_feasible(dag, th)
            if res.feasible != oracles.brute_feasible(dag, th).feasible:
                failures.append(f"feasibility verdict mismatch at {th} on {dag!r}")
            elif res.feasible and verify_assignment(dag, th, res.assignment):
                failures.append(f"assignment violates {th} on {dag!r}")
            elif not res.feasible and verify_forcing_cycle(dag, res.cycle) <= Fraction(th[1], th[0]):
                failures.append(f"weak certificate at {th} on {dag!r}")
        if lam:
            cert = certify_lambda(dag)
            if verify_assignment(dag, (lam.denominator, lam.numerator), cert.assignment):
                failures.append(f"certificate assignment fails on {dag!r}")
            verify_forcing_cycle(dag, cert.cycle)
    return {"command": "selftest", "instances": len(corpus), "failures": failures, "ok": not failures}


def cmd_selftest(args) -> tuple[dict, int]:
    report = selftest_report(args.max_n, args.random, args.seed)
    return report, EXIT_OK if report["ok"] else EXIT_INTERNAL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dtdigraph", description="Double-threshold digraph toolkit.")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("lambda", help="minimum satisfiable ratio t2/t1")
    s.add_argument("file")
    s.set_defaults(func=cmd_lambda)

    s = sub.add_parser("check", help="satisfying assignment or forcing cycle for (t1, t2)")
    s.add_argument("file")
    s.add_argument("--t1", required=True)
    s.add_argument("--t2", required=True)
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("certify", help="lambda with an assignment and a forcing cycle")
    s.add_argument("file")
    s.set_defaults(func=cmd_certify)

    s = sub.add_parser("clique", help="maximum clique, or an i-approximation")
    s.add_argument("file")
    s.add_argument("--approx", type=int, metavar="I")
    s.add_argument("--strict", action="store_true", help="compute lambda first")
    s.set_defaults(func=cmd_clique)

    for name, fn, text in (("mis", approx.independent_set_approx, "approximate maximum independent set"),
                           ("color", approx.coloring_approx, "approximate minimum colouring"),
                           ("cover", approx.clique_cover_approx, "approximate minimum clique cover")):
        s = sub.add_parser(name, help=text)
        s.add_argument("file")
        s.set_defaults(func=_approx_cmd(name, fn))

    s = sub.add_parser("gen", help="write a generated instance file")
    s.add_argument("--family", required=True, choices=oracles.FAMILIES)
    s.add_argument("--params", nargs="*", metavar="KEY=VALUE")
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("bench", help="instrumented timing over an instance family")
    s.add_argument("--family", required=True, choices=[f for f in oracles.FAMILIES if f != "all_dags"])
    s.add_argument("--sizes", type=int, nargs="+", required=True)
    s.add_argument("--params", nargs="*", metavar="KEY=VALUE")
    s.add_argument("--reps", type=int, default=1)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_bench)

    s = sub.add_parser("selftest", help="cross-check against brute-force oracles")
    s.add_argument("--max-n", type=int, default=6)
    s.add_argument("--random", type=int, default=100)
    s.add_argument("--seed", type=int, default=1)
    s.set_defaults(func=cmd_selftest)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s", stream=sys.stderr)
    try:
        out, code = args.func(args)
    except (DtdError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except AssertionError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    sys.stdout.write(out if isinstance(out, str) else dump_document(out))
    return code


if __name__ == "__main__":
    sys.exit(main())
