"""End-to-end acceptance checks.

Each test prints one ``PASS``/``FAIL`` line.  Run alone with
``pytest tests/test_acceptance.py -v`` to see them grouped.
"""

import time
from fractions import Fraction
from math import floor

import pytest

from dtdigraph.approx import clique_cover_approx, coloring_approx, independent_set_approx
from dtdigraph.clique import max_clique_approx, max_clique_exact
from dtdigraph.dag import classify_degenerate, is_clique, is_independent, is_transitive
from dtdigraph.feasibility import check_feasible, verify_assignment, verify_forcing_cycle
from dtdigraph.fileio import (
    assignment_doc,
    assignment_from_doc,
    cycle_doc,
    cycle_from_doc,
    dump_document,
    load_document,
)
from dtdigraph.lambda_solver import certify_lambda, compute_lambda
from dtdigraph.oracles import (
    binary_search_lambda,
    brute_chromatic,
    brute_clique_cover,
    brute_feasible,
    brute_independent_set,
    brute_lambda,
    brute_max_clique,
    chain_plus_isolated,
    is_k_clique_extendable,
    path,
    random_dag,
)

THRESHOLDS = [(1, 1), (1, 2), (2, 3), (1, 3)]


@pytest.fixture
def report(capsys):
    def _report(number, title, failures, detail=""):
        status = "PASS" if not failures else "FAIL"
        line = f"[acceptance {number:>2}] {status}  {title}"
        if detail:
            line += f"  ({detail})"
        if failures:
            line += f"  failures={len(failures)} first={failures[0]}"
        with capsys.disabled():
            print("\n" + line)
        assert not failures, line
    return _report


@pytest.fixture(scope="module")
def lambdas(corpus):
    return [compute_lambda(d) for _, d in corpus]


def test_01_path_family(report):
    start = time.perf_counter()
    failures = [n for n in range(3, 13) if compute_lambda(path(n)) != Fraction(n - 1)]
    elapsed = time.perf_counter() - start
    if elapsed >= 1:
        failures.append(f"took {elapsed:.2f}s")
    report(1, "path(n) has lambda n - 1 for n = 3..12", failures, f"{elapsed:.3f}s")


def test_02_chain_plus_isolated(report):
    failures = []
    for n in range(4, 13):
        want = Fraction(n - 2, 2)
        got = compute_lambda(chain_plus_isolated(n))
        if got != want or brute_lambda(chain_plus_isolated(n)) != want:
            failures.append((n, got))
    report(2, "chain plus isolated vertex has lambda (n - 2)/2 for n = 4..12", failures)


def test_03_lambda_oracles(report, corpus):
    start = time.perf_counter()
    failures = []
    for name, d in corpus:
        a, b, c = compute_lambda(d), brute_lambda(d), binary_search_lambda(d)
        if not a == b == c:
            failures.append((name, a, b, c))
    elapsed = time.perf_counter() - start
    if elapsed >= 60:
        failures.append(f"took {elapsed:.1f}s")
    assert sum(1 for name, _ in corpus if name.startswith("random")) >= 500
    report(3, "lambda agrees with both oracles on the corpus", failures,
           f"{len(corpus)} dags, {elapsed:.1f}s")


def test_04_feasibility_split(report, corpus):
    failures = []
    for name, d in corpus:
        for th in THRESHOLDS:
            res = check_feasible(d, th)
            if res.feasible != brute_feasible(d, th).feasible:
                failures.append((name, th, "verdict"))
            elif res.feasible and verify_assignment(d, th, res.assignment):
                failures.append((name, th, "assignment"))
            elif not res.feasible and verify_forcing_cycle(d, res.cycle) <= Fraction(th[1], th[0]):
                failures.append((name, th, "cycle"))
    report(4, "feasibility verdicts and certificates", failures, f"{len(corpus) * len(THRESHOLDS)} runs")


def test_05_certificates(report, corpus):
    failures = []
    checked = 0
    for name, d in corpus:
        if classify_degenerate(d).degenerate:
            continue
        checked += 1
        cert = certify_lambda(d)
        num, den = cert.lam.numerator, cert.lam.denominator
        if verify_assignment(d, (den, num), cert.assignment):
            failures.append((name, "assignment"))
        if verify_forcing_cycle(d, cert.cycle) != Fraction(num, den):
            failures.append((name, "cycle ratio", str(cert.cycle.ratio), str(cert.lam)))
        if not (den <= num and num + den <= d.n):
            failures.append((name, "shape"))
    report(5, "certificates: assignment at (den, num) and cycle of ratio num/den", failures,
           f"{checked} nondegenerate dags")


def test_06_extendable_orderings(report, corpus, lambdas):
    failures = [name for (name, d), lam in zip(corpus, lambdas)
                if not is_k_clique_extendable(d, d.topological_order, floor(lam) + 1)]
    report(6, "topological sorts are (floor(lambda)+1)-clique extendable", failures)


def test_07_clique(report, corpus, lambdas):
    failures = []
    for (name, d), lam in zip(corpus, lambdas):
        opt = brute_max_clique(d)[0]
        got = max_clique_exact(d)
        if not is_clique(d, got) or len(got) != opt:
            failures.append((name, "exact"))
        for i in (1, 2, 3):
            if i <= lam:
                got = max_clique_approx(d, i)
                if not is_clique(d, got) or len(got) * i < opt:
                    failures.append((name, "approx", i))
    report(7, "exact and approximate maximum clique", failures)


def test_08_approximations(report, corpus, lambdas):
    failures = []
    for (name, d), lam in zip(corpus, lambdas):
        k = floor(lam) + 1
        mis = independent_set_approx(d).solution
        if not is_independent(d, mis) or brute_independent_set(d)[0] > k * len(mis):
            failures.append((name, "independent set"))
        col = coloring_approx(d).solution
        if (sorted(v for c in col for v in c) != list(range(d.n))
                or not all(is_independent(d, c) for c in col)
                or len(col) > k * brute_chromatic(d)[0]):
            failures.append((name, "coloring"))
        cov = clique_cover_approx(d).solution
        if (sorted(v for c in cov for v in c) != list(range(d.n))
                or not all(is_clique(d, c) for c in cov)
                or len(cov) > k * brute_clique_cover(d)[0]):
            failures.append((name, "cover"))
    report(8, "independent set, coloring and clique cover within floor(lambda)+1", failures)


def test_09_transitivity(report, corpus, lambdas):
    failures = [name for (name, d), lam in zip(corpus, lambdas) if lam < 2 and not is_transitive(d)]
    report(9, "lambda below 2 implies transitive", failures)


def test_10_pass_bounds_and_speed(report, corpus):
    failures = []
    for name, d in corpus:
        for th in THRESHOLDS:
            res = check_feasible(d, th)
            r = Fraction(th[1], th[0])
            if res.passes > floor((d.n - 1) / (r + 1)) + 2:
                failures.append((name, th, "feasibility passes", res.passes))
        stats = {}
        lam = compute_lambda(d, stats)
        if lam and stats["passes"] > floor(d.n / (lam + 1)) + 2:
            failures.append((name, "cycle-mean passes", stats["passes"]))
    big = random_dag(2000, 0.01, 11)
    stats = {}
    start = time.perf_counter()
    lam = compute_lambda(big, stats)
    elapsed = time.perf_counter() - start
    if elapsed >= 10:
        failures.append(f"n=2000 took {elapsed:.1f}s")
    if stats["passes"] > floor(big.n / (lam + 1)) + 2:
        failures.append(("n=2000", "cycle-mean passes", stats["passes"]))
    res = check_feasible(big, (lam.denominator, lam.numerator))
    if not res.feasible or res.passes > floor((big.n - 1) / (lam + 1)) + 2:
        failures.append(("n=2000", "feasibility passes", res.passes))
    report(10, "pass-count bounds and n=2000 lambda under 10 s", failures,
           f"m={big.m}, lambda={lam}, {elapsed:.2f}s")


def test_11_round_trip(report, corpus):
    failures = []
    count = 0
    for name, d in corpus:
        docs = []
        if not classify_degenerate(d).degenerate:
            cert = certify_lambda(d)
            docs.append({"assignment": assignment_doc(cert.assignment), "cycle": cycle_doc(cert.cycle)})
        for th in THRESHOLDS:
            res = check_feasible(d, th)
            docs.append({"assignment": assignment_doc(res.assignment)} if res.feasible
                        else {"cycle": cycle_doc(res.cycle)})
        for doc in docs:
            count += 1
            back = load_document(dump_document(doc))
            if dump_document(back) != dump_document(doc):
                failures.append((name, "bytes"))
            if "assignment" in back:
                a = assignment_from_doc(back["assignment"])
                if verify_assignment(d, (a.t1, a.t2), a):
                    failures.append((name, "assignment"))
            if "cycle" in back:
                c = cycle_from_doc(back["cycle"])
                if verify_forcing_cycle(d, c) != Fraction(back["cycle"]["ratio"]["num"], back["cycle"]["ratio"]["den"]):
                    failures.append((name, "cycle"))
    report(11, "certificates re-verify after a serialization round trip", failures, f"{count} documents")
