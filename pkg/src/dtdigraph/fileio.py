"""Instance files and JSON result documents.

Instance format::

    n m
    u v        (m lines, directed edge u -> v, 0-based)
    labels     (optional section)
    label_0    (n lines)
    ...

Blank lines and lines starting with ``#`` are ignored.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Optional

from .dag import Dag, build_dag
from .errors import CycleDetected, DuplicateEdge, InputError, ParseError, SelfLoop
from .feasibility import EDGE, HOP, ForcingCycle, UtilityAssignment


def emit_instance(dag: Dag) -> str:
    lines = [f"{dag.n} {dag.m}"]
    lines += [f"{u} {v}" for u, v in dag.edges()]
    if dag.labels is not None:
        lines.append("labels")
        lines += list(dag.labels)
    return "\n".join(lines) + "\n"


def _content_lines(text: str):
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield no, line


def parse_instance(text: str) -> Dag:
    """Parse an instance file; every error names the offending line."""
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError(1, "empty instance: expected header 'n m'")
    no, header = lines[0]
    parts = header.split()
    if len(parts) != 2 or not all(p.isdigit() for p in parts):
        raise ParseError(no, f"expected header 'n m', got {header!r}")
    n, m = int(parts[0]), int(parts[1])
    if len(lines) < 1 + m:
        raise ParseError(lines[-1][0], f"expected {m} edge lines, found {len(lines) - 1}")
    edges = []
    seen = set()
    for no, line in lines[1:1 + m]:
        parts = line.split()
        if len(parts) != 2 or not all(p.lstrip("-").isdigit() for p in parts):
            raise ParseError(no, f"expected edge 'u v', got {line!r}")
        u, v = int(parts[0]), int(parts[1])
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(no, f"vertex out of range 0..{n - 1} in {line!r}")
        if u == v:
            raise _at_line(SelfLoop(u), no)
        if (u, v) in seen:
            raise _at_line(DuplicateEdge(u, v), no)
        seen.add((u, v))
        edges.append((u, v))
    labels: Optional[list[str]] = None
    rest = lines[1 + m:]
    if rest:
        no, line = rest[0]
        if line != "labels":
            raise ParseError(no, f"unexpected content after {m} edges: {line!r}")
        labels = [s for _, s in rest[1:]]
        if len(labels) != n:
            raise ParseError(no, f"label section has {len(labels)} entries, expected {n}")
    try:
        return build_dag(edges, n, labels)
    except CycleDetected as exc:
        raise _at_line(exc, lines[0][0]) from None


def _at_line(exc: InputError, line: int) -> InputError:
    exc.line = line
    exc.args = (f"line {line}: {exc.args[0] if exc.args else exc}",)
    return exc


def read_instance(path: str) -> Dag:
    with open(path, encoding="utf-8") as fh:
        return parse_instance(fh.read())


# -- result documents ---------------------------------------------------------

def ratio_doc(r: Fraction) -> dict:
    return {"num": r.numerator, "den": r.denominator}


def ratio_from_doc(doc: dict) -> Fraction:
    return Fraction(int(doc["num"]), int(doc["den"]))


def assignment_doc(a: UtilityAssignment) -> dict:
    return {"t1": a.t1, "t2": a.t2, "alpha": {str(v): x for v, x in enumerate(a.alpha)}}


def assignment_from_doc(doc: dict) -> UtilityAssignment:
    alpha = doc["alpha"]
    n = len(alpha)
    try:
        values = tuple(int(alpha[str(v)]) for v in range(n))
    except KeyError as exc:
        raise InputError(f"assignment is missing vertex {exc.args[0]}") from None
    return UtilityAssignment(values, int(doc["t1"]), int(doc["t2"]))


def cycle_doc(c: ForcingCycle) -> dict:
    return {
        "steps": [{"vertex": v, "step": k} for v, k in c.steps],
        "edges": c.edge_count,
        "hops": c.hop_count,
        "ratio": ratio_doc(c.ratio),
    }


def cycle_from_doc(doc: dict) -> ForcingCycle:
    steps = []
    for i, s in enumerate(doc["steps"]):
        if s["step"] not in (EDGE, HOP):
            raise InputError(f"cycle step {i} has unknown kind {s['step']!r}")
        steps.append((int(s["vertex"]), s["step"]))
    return ForcingCycle(tuple(steps))


def dump_document(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def load_document(text: str) -> dict:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.lineno, exc.msg) from None
