"""Line-oriented manifest format and the verification task runner.

A manifest is a sectioned text file declaring one problem: dimension, named
polynomials, vector fields, bivectors, optional metric and volume weight,
followed by an ordered list of verification tasks.  Example::

    [dim]
    3
    [poly]
    alpha = (z1)^2 + (z2)^2 + (z3)^2 - z1*z2*z3
    [bivector]
    P 1 2 = 2*z3 - z1*z2
    P 1 3 = z1*z3 - 2*z2
    P 2 3 = 2*z1 - z2*z3
    [task]
    jacobi P
    modular_zero P
    bivector_lm alpha P

Task verdicts are `pass`/`fail` for predicates and `found`/`inconsistent`
for searches.  Exit-code policy: 0 when every task passes, 1 when some task
is a mathematical negative, 2 for malformed input (reported with a line
number).
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field as dataclass_field
from typing import Dict, List, Optional, Tuple

from . import multipliers, poisson
from .calculus import VectorField, VolumeForm, divergence
from .metric import HoloMetric, gradient_lm_residual
from .parser import ParseError, parse_expr
from .poisson import Bivector
from .poly import CPoly, poly_summary
from .scalars import GaussianRational

SCHEMA = "holomult-report/1"


class ManifestError(ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass
class Task:
    kind: str
    args: List[str]
    line: int


@dataclass
class Manifest:
    dimension: int
    polys: Dict[str, CPoly]
    fields: Dict[str, VectorField]
    bivectors: Dict[str, Bivector]
    metrics: Dict[str, HoloMetric]
    volume: VolumeForm
    tasks: List[Task]


_SECTIONS = ("dim", "poly", "field", "bivector", "metric", "volume", "task")


def parse_manifest(text: str) -> Manifest:
    dimension: Optional[int] = None
    weight = GaussianRational(1)
    poly_lines: List[Tuple[str, str, int]] = []
    field_lines: List[Tuple[str, str, int]] = []
    bivector_lines: List[Tuple[str, int, int, str, int]] = []
    metric_lines: List[Tuple[str, str, int]] = []
    tasks: List[Task] = []

    section = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            section = line[1:-1].strip().lower()
            if section not in _SECTIONS:
                raise ManifestError(f"unknown section [{section}]", lineno)
            continue
        if section is None:
            raise ManifestError("content before any section header", lineno)
        if section == "dim":
            if dimension is not None:
                raise ManifestError("dimension declared twice", lineno)
            try:
                dimension = int(line)
            except ValueError:
                raise ManifestError(f"dimension must be an integer, got {line!r}", lineno)
            if dimension < 1:
                raise ManifestError("dimension must be positive", lineno)
        elif section == "volume":
            try:
                value = parse_expr(line, 0)
            except ParseError as exc:
                raise ManifestError(f"bad volume weight: {exc}", lineno)
            if value.total_degree() > 0:
                raise ManifestError("volume weight must be a constant", lineno)
            weight = value.terms.get((), GaussianRational(0))
            if not weight:
                raise ManifestError("volume weight must be nonzero", lineno)
        elif section in ("poly", "field", "metric"):
            if "=" not in line:
                raise ManifestError("expected 'name = ...'", lineno)
            name, body = (part.strip() for part in line.split("=", 1))
            if not name.isidentifier():
                raise ManifestError(f"bad name {name!r}", lineno)
            target = {"poly": poly_lines, "field": field_lines, "metric": metric_lines}[section]
            if any(existing == name for existing, _, _ in target):
                raise ManifestError(f"duplicate definition of {name!r}", lineno)
            target.append((name, body, lineno))
        elif section == "bivector":
            if "=" not in line:
                raise ManifestError("expected 'name i j = expr'", lineno)
            head, body = (part.strip() for part in line.split("=", 1))
            pieces = head.split()
            if len(pieces) != 3:
                raise ManifestError("bivector entries look like 'P 1 2 = expr'", lineno)
            name = pieces[0]
            try:
                i, j = int(pieces[1]), int(pieces[2])
            except ValueError:
                raise ManifestError("bivector indices must be integers", lineno)
            bivector_lines.append((name, i, j, body, lineno))
        elif section == "task":
            pieces = line.split()
            tasks.append(Task(kind=pieces[0], args=pieces[1:], line=lineno))

    if dimension is None:
        raise ManifestError("manifest must declare [dim]", 0)

    def parse_body(body: str, lineno: int, nvars: int) -> CPoly:
        try:
            return parse_expr(body, nvars)
        except ParseError as exc:
            raise ManifestError(str(exc), lineno)

    polys: Dict[str, CPoly] = {}
    for name, body, lineno in poly_lines:
        polys[name] = parse_body(body, lineno, dimension)

    fields: Dict[str, VectorField] = {}
    for name, body, lineno in field_lines:
        parts = [p.strip() for p in body.split(";")]
        if len(parts) != dimension:
            raise ManifestError(
                f"field {name} needs {dimension} ';'-separated components, got {len(parts)}",
                lineno,
            )
        fields[name] = VectorField(dimension, [parse_body(p, lineno, dimension) for p in parts])

    bivectors: Dict[str, Bivector] = {}
    grouped: Dict[str, Dict[Tuple[int, int], CPoly]] = {}
    for name, i, j, body, lineno in bivector_lines:
        if not (1 <= i <= dimension and 1 <= j <= dimension and i != j):
            raise ManifestError(f"bivector indices ({i},{j}) out of range", lineno)
        entry = parse_body(body, lineno, dimension)
        grouped.setdefault(name, {})
        key, value = ((i, j), entry) if i < j else ((j, i), -entry)
        if key in grouped[name]:
            raise ManifestError(f"duplicate bivector entry {name} {i} {j}", lineno)
        grouped[name][key] = value
    for name, comps in grouped.items():
        bivectors[name] = Bivector(dimension, {k: v for k, v in comps.items() if v})

    metrics: Dict[str, HoloMetric] = {}
    for name, body, lineno in metric_lines:
        rows = []
        for row_text in body.split(";"):
            row = []
            for cell in row_text.split(","):
                value = parse_body(cell.strip(), lineno, 0)
                if value.total_degree() > 0:
                    raise ManifestError("metric entries must be constants", lineno)
                row.append(value.terms.get((), GaussianRational(0)))
            rows.append(row)
        try:
            metrics[name] = HoloMetric(rows)
        except ValueError as exc:
            raise ManifestError(f"bad metric {name}: {exc}", lineno)

    return Manifest(
        dimension=dimension,
        polys=polys,
        fields=fields,
        bivectors=bivectors,
        metrics=metrics,
        volume=VolumeForm(dimension, weight),
        tasks=tasks,
    )


def load_manifest(path: str) -> Manifest:
    with open(path, "r", encoding="utf-8") as handle:
        return parse_manifest(handle.read())


# ---------------------------------------------------------------------------
# task execution
# ---------------------------------------------------------------------------


@dataclass
class TaskRecord:
    task_id: int
    kind: str
    args: List[str]
    verdict: str  # pass | fail | found | inconsistent
    residual: str
    derived: Dict[str, object] = dataclass_field(default_factory=dict)
    timing_ms: Optional[float] = None

    @property
    def ok(self) -> bool:
        return self.verdict in ("pass", "found")


@dataclass
class Report:
    dimension: int
    records: List[TaskRecord]

    @property
    def all_ok(self) -> bool:
        return all(r.ok for r in self.records)

    def exit_code(self) -> int:
        return 0 if self.all_ok else 1


class _TaskContext:
    def __init__(self, manifest: Manifest):
        self.m = manifest

    def poly(self, name: str, line: int) -> CPoly:
        if name not in self.m.polys:
            raise ManifestError(f"undefined polynomial {name!r}", line)
        return self.m.polys[name]

    def field(self, name: str, line: int) -> VectorField:
        if name not in self.m.fields:
            raise ManifestError(f"undefined field {name!r}", line)
        return self.m.fields[name]

    def bivector(self, name: str, line: int) -> Bivector:
        if name not in self.m.bivectors:
            raise ManifestError(f"undefined bivector {name!r}", line)
        return self.m.bivectors[name]

    def metric(self, name: str, line: int) -> HoloMetric:
        if name not in self.m.metrics:
            raise ManifestError(f"undefined metric {name!r}", line)
        return self.m.metrics[name]


def _field_summary(field: VectorField) -> str:
    worst = next((c for c in field.components if c), None)
    if worst is None:
        return "0"
    return poly_summary(worst)


def run_tasks(manifest: Manifest, include_timings: bool = False) -> Report:
    ctx = _TaskContext(manifest)
    omega = manifest.volume
    records: List[TaskRecord] = []
    for task_id, task in enumerate(manifest.tasks, start=1):
        started = time.perf_counter()
        kind, args, line = task.kind, task.args, task.line

        def need(count: int):
            if len(args) != count:
                raise ManifestError(f"task {kind} takes {count} arguments", line)

        derived: Dict[str, object] = {}
        if kind == "first_integral":
            need(2)
            check = multipliers.is_first_integral(ctx.poly(args[0], line), ctx.field(args[1], line))
            verdict, residual = ("pass" if check.ok else "fail"), poly_summary(check.residual)
        elif kind == "last_multiplier":
            need(2)
            check = multipliers.is_last_multiplier(
                ctx.poly(args[0], line), ctx.field(args[1], line), omega
            )
            verdict, residual = ("pass" if check.ok else "fail"), poly_summary(check.residual)
        elif kind == "inverse_multiplier":
            need(2)
            check = multipliers.is_inverse_multiplier(
                ctx.poly(args[0], line), ctx.field(args[1], line), omega
            )
            verdict, residual = ("pass" if check.ok else "fail"), poly_summary(check.residual)
        elif kind == "darboux_search":
            if len(args) < 2:
                raise ManifestError("darboux_search needs a field and at least one candidate", line)
            base = ctx.field(args[0], line)
            candidates = [ctx.poly(a, line) for a in args[1:]]
            try:
                solution = multipliers.darboux_multiplier_search(base, candidates, omega)
            except ValueError as exc:
                raise ManifestError(str(exc), line)
            if solution is None:
                verdict, residual = "inconsistent", "-"
            else:
                verdict, residual = "found", "0"
                derived["exponents"] = [str(e) for e in solution.exponents]
                derived["cofactors"] = [pair.cofactor.format() for pair in solution.basis]
                derived["nullspace"] = [[str(x) for x in vec] for vec in solution.nullspace]
        elif kind == "jacobi":
            need(1)
            defect = poisson.jacobiator(ctx.bivector(args[0], line))
            ok = defect.is_zero()
            worst = next(iter(defect.comps.values()), None)
            verdict, residual = ("pass" if ok else "fail"), ("0" if ok else poly_summary(worst))
        elif kind == "modular_zero":
            need(1)
            mod = poisson.modular_field(ctx.bivector(args[0], line), omega)
            verdict, residual = ("pass" if mod.is_zero() else "fail"), _field_summary(mod)
        elif kind == "self_multiplier":
            need(2)
            res = poisson.self_multiplier_residual(
                ctx.poly(args[0], line), ctx.bivector(args[1], line), omega
            )
            verdict, residual = ("pass" if res.is_zero() else "fail"), poly_summary(res)
        elif kind == "bivector_lm":
            need(2)
            check = poisson.bivector_lm_check(
                ctx.poly(args[0], line), ctx.bivector(args[1], line), omega
            )
            verdict, residual = ("pass" if check.ok else "fail"), _field_summary(check.residual)
        elif kind == "casimir":
            need(2)
            ham = poisson.hamiltonian_field(ctx.poly(args[0], line), ctx.bivector(args[1], line))
            verdict, residual = ("pass" if ham.is_zero() else "fail"), _field_summary(ham)
        elif kind == "unimodular":
            need(2)
            ok = poisson.is_unimodular_with(
                ctx.bivector(args[0], line), ctx.poly(args[1], line), omega
            )
            verdict, residual = ("pass" if ok else "fail"), "-"
        elif kind == "exactness":
            need(1)
            result = poisson.exactness_check(ctx.bivector(args[0], line), omega)
            verdict, residual = (
                ("pass" if result.exact else "fail"),
                _field_summary(result.residual),
            )
        elif kind == "hamiltonian_lm":
            need(3)
            res = poisson.hamiltonian_lm_residual(
                ctx.poly(args[0], line), ctx.poly(args[1], line), ctx.bivector(args[2], line), omega
            )
            verdict, residual = ("pass" if res.is_zero() else "fail"), poly_summary(res)
        elif kind == "gradient_lm":
            need(3)
            res = gradient_lm_residual(
                ctx.poly(args[0], line), ctx.poly(args[1], line), ctx.metric(args[2], line)
            )
            verdict, residual = ("pass" if res.is_zero() else "fail"), poly_summary(res)
        elif kind == "divergence_zero":
            need(1)
            div = divergence(ctx.field(args[0], line), omega)
            verdict, residual = ("pass" if div.is_zero() else "fail"), poly_summary(div)
        else:
            raise ManifestError(f"unknown task kind {kind!r}", line)

        elapsed_ms = (time.perf_counter() - started) * 1000.0
        records.append(
            TaskRecord(
                task_id=task_id,
                kind=kind,
                args=list(args),
                verdict=verdict,
                residual=residual,
                derived=derived,
                timing_ms=elapsed_ms if include_timings else None,
            )
        )
    return Report(dimension=manifest.dimension, records=records)


# ---------------------------------------------------------------------------
# report emission
# ---------------------------------------------------------------------------


def emit_report(report: Report, fmt: str = "text") -> str:
    if fmt == "json":
        payload = {
            "schema": SCHEMA,
            "dimension": report.dimension,
            "tasks": [
                {
                    "id": rec.task_id,
                    "kind": rec.kind,
                    "args": rec.args,
                    "verdict": rec.verdict,
                    "residual": rec.residual,
                    "derived": rec.derived,
                    "timing_ms": rec.timing_ms,
                }
                for rec in report.records
            ],
            "summary": {
                "total": len(report.records),
                "passed": sum(1 for r in report.records if r.ok),
                "failed": sum(1 for r in report.records if not r.ok),
            },
        }
        return json.dumps(payload, indent=2, sort_keys=False) + "\n"
    if fmt != "text":
        raise ValueError(f"unknown report format {fmt!r}")
    lines = [f"dimension {report.dimension}, {len(report.records)} task(s)"]
    for rec in report.records:
        timing = f"  [{rec.timing_ms:.1f} ms]" if rec.timing_ms is not None else ""
        args = " ".join(rec.args)
        lines.append(f"{rec.task_id:3d}. {rec.kind} {args}: {rec.verdict}{timing}")
        if rec.residual not in ("0", "-"):
            lines.append(f"     residual: {rec.residual}")
        for key, value in rec.derived.items():
            lines.append(f"     {key}: {value}")
    passed = sum(1 for r in report.records if r.ok)
    lines.append(f"{passed}/{len(report.records)} passed")
    return "\n".join(lines) + "\n"
