"""Job documents: parse, validate, run, and serialize reports.

Jobs are plain JSON with explicit keys and decimal numbers, so they are
trivially reproducible and parseable from any language. Unknown keys are
rejected everywhere.
"""

from __future__ import annotations

import hashlib
import json
import time
from dataclasses import dataclass, field

from . import __version__
from .certify import (
    Certificate,
    GridSpec,
    VERDICT_FAIL,
    VERDICT_HYPOTHESIS,
    VERDICT_PASS,
    certify_convex,
    certify_ml_starlike,
    certify_starlike,
    check_log_deriv_bound,
)
from .defaults import EVAL_TOLERANCE, QUAD_TOL_CERTIFY, SERIES_TOL
from .errors import DomainError, JobFileError
from .mittag_leffler import MLParams
from .operators import FactorSpec, OperatorSpec
from .orders import convex_delta, log_deriv_bound, psi, starlike_delta

__all__ = ["Job", "JobOperator", "ReportDocument", "load_job", "job_to_dict", "run_job"]

SCHEMA_VERSION = 1

KIND_STARLIKE = "starlike"
KIND_CONVEX = "convex"
KIND_ML_STARLIKE = "ml-starlike"
KIND_LOG_DERIV_BOUND = "log-deriv-bound"
_KINDS = (KIND_STARLIKE, KIND_CONVEX, KIND_ML_STARLIKE, KIND_LOG_DERIV_BOUND)

_TOP_KEYS = {"schema", "grid", "tolerance", "outputs", "operators"}
_GRID_KEYS = {"radii", "angles", "r_max"}
_TOL_KEYS = {"margin", "quadrature", "series"}
_FACTOR_KEYS = {"alpha", "beta", "lambda", "eta"}
_OP_KEYS_COMMON = {"name", "kind", "predicted"}


@dataclass(frozen=True)
class JobOperator:
    name: str
    kind: str
    factors: tuple = ()            # starlike / convex kinds
    zeta: float = None             # starlike kind only
    alpha: float = None            # ml kinds
    beta: float = None
    eta: float = None              # ml-starlike kind
    predicted: float = None

    def operator_spec(self) -> OperatorSpec:
        return OperatorSpec(self.factors, self.zeta)

    def ml_params(self) -> MLParams:
        return MLParams(self.alpha, self.beta)


@dataclass(frozen=True)
class Job:
    operators: tuple
    grid: GridSpec
    margin_tol: float = EVAL_TOLERANCE
    quad_tol: float = QUAD_TOL_CERTIFY
    series_tol: float = SERIES_TOL
    outputs: tuple = ("text",)


def _require(condition, message):
    if not condition:
        raise JobFileError(message)


def _number(raw, key, context):
    _require(isinstance(raw, (int, float)) and not isinstance(raw, bool),
             f"{context}: key '{key}' must be a number, got {raw!r}")
    return float(raw)


def _check_keys(mapping, allowed, context):
    _require(isinstance(mapping, dict), f"{context}: expected an object")
    unknown = set(mapping) - allowed
    _require(not unknown, f"{context}: unknown keys {sorted(unknown)!r}")


def _parse_factor(raw, context):
    _check_keys(raw, _FACTOR_KEYS, context)
    _require("alpha" in raw and "beta" in raw and "lambda" in raw,
             f"{context}: factors need alpha, beta and lambda")
    try:
        return FactorSpec(
            MLParams(_number(raw["alpha"], "alpha", context),
                     _number(raw["beta"], "beta", context)),
            _number(raw["lambda"], "lambda", context),
            _number(raw.get("eta", 0.0), "eta", context),
        )
    except DomainError as exc:
        raise JobFileError(f"{context}: {exc}") from exc


def _parse_operator(raw, index):
    context = f"operators[{index}]"
    _require(isinstance(raw, dict), f"{context}: expected an object")
    name = raw.get("name")
    _require(isinstance(name, str) and name, f"{context}: needs a nonempty 'name'")
    kind = raw.get("kind")
    _require(kind in _KINDS, f"{context}: 'kind' must be one of {_KINDS}, got {kind!r}")
    predicted = raw.get("predicted")
    if predicted is not None:
        predicted = _number(predicted, "predicted", context)

    if kind in (KIND_STARLIKE, KIND_CONVEX):
        allowed = _OP_KEYS_COMMON | {"factors"}
        if kind == KIND_STARLIKE:
            allowed |= {"zeta"}
        _check_keys(raw, allowed, context)
        raw_factors = raw.get("factors")
        _require(isinstance(raw_factors, list) and raw_factors,
                 f"{context}: needs a nonempty 'factors' list")
        factors = tuple(
            _parse_factor(f, f"{context}.factors[{i}]") for i, f in enumerate(raw_factors)
        )
        zeta = None
        if kind == KIND_STARLIKE:
            _require("zeta" in raw, f"{context}: starlike operators need 'zeta'")
            zeta = _number(raw["zeta"], "zeta", context)
            try:
                OperatorSpec(factors, zeta)
            except DomainError as exc:
                raise JobFileError(f"{context}: {exc}") from exc
        return JobOperator(name, kind, factors=factors, zeta=zeta, predicted=predicted)

    _check_keys(raw, _OP_KEYS_COMMON | {"alpha", "beta", "eta"}, context)
    _require("alpha" in raw and "beta" in raw, f"{context}: needs 'alpha' and 'beta'")
    alpha = _number(raw["alpha"], "alpha", context)
    beta = _number(raw["beta"], "beta", context)
    try:
        MLParams(alpha, beta)
    except DomainError as exc:
        raise JobFileError(f"{context}: {exc}") from exc
    eta = None
    if kind == KIND_ML_STARLIKE:
        _require("eta" in raw, f"{context}: ml-starlike needs 'eta'")
        eta = _number(raw["eta"], "eta", context)
        _require(0.0 <= eta < 1.0, f"{context}: eta must lie in [0, 1)")
    else:
        _require("eta" not in raw, f"{context}: log-deriv-bound entries take no 'eta'")
    return JobOperator(name, kind, alpha=alpha, beta=beta, eta=eta, predicted=predicted)


def parse_job(document: dict) -> Job:
    """Validate a decoded job document; JobFileError on any problem."""
    _check_keys(document, _TOP_KEYS, "job")
    _require(document.get("schema") == SCHEMA_VERSION,
             f"job: 'schema' must equal {SCHEMA_VERSION}")

    grid_raw = document.get("grid", {})
    _check_keys(grid_raw, _GRID_KEYS, "job.grid")
    grid_kwargs = {}
    if "radii" in grid_raw:
        radii = grid_raw["radii"]
        _require(isinstance(radii, list) and radii, "job.grid: 'radii' must be a nonempty list")
        grid_kwargs["radii"] = tuple(_number(r, "radii", "job.grid") for r in radii)
    if "angles" in grid_raw:
        angles = grid_raw["angles"]
        _require(isinstance(angles, int) and not isinstance(angles, bool),
                 "job.grid: 'angles' must be an integer")
        grid_kwargs["angles"] = angles
    if "r_max" in grid_raw:
        grid_kwargs["r_max"] = _number(grid_raw["r_max"], "r_max", "job.grid")
    try:
        grid = GridSpec(**grid_kwargs)
    except DomainError as exc:
        raise JobFileError(f"job.grid: {exc}") from exc

    tol_raw = document.get("tolerance", {})
    _check_keys(tol_raw, _TOL_KEYS, "job.tolerance")
    margin_tol = _number(tol_raw.get("margin", EVAL_TOLERANCE), "margin", "job.tolerance")
    quad_tol = _number(tol_raw.get("quadrature", QUAD_TOL_CERTIFY), "quadrature", "job.tolerance")
    series_tol = _number(tol_raw.get("series", SERIES_TOL), "series", "job.tolerance")
    for key, value in (("margin", margin_tol), ("quadrature", quad_tol), ("series", series_tol)):
        _require(value > 0.0, f"job.tolerance: '{key}' must be positive")

    outputs = document.get("outputs", ["text"])
    _require(isinstance(outputs, list) and outputs, "job: 'outputs' must be a nonempty list")
    for fmt in outputs:
        _require(fmt in ("text", "json"), f"job: unknown output format {fmt!r}")

    raw_ops = document.get("operators", [])
    _require(isinstance(raw_ops, list), "job: 'operators' must be a list")
    operators = tuple(_parse_operator(op, i) for i, op in enumerate(raw_ops))
    names = [op.name for op in operators]
    _require(len(names) == len(set(names)), "job: operator names must be unique")

    return Job(operators, grid, margin_tol, quad_tol, series_tol, tuple(outputs))


def load_job(path) -> Job:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            document = json.load(handle)
    except OSError as exc:
        raise JobFileError(f"cannot read job file {path!r}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise JobFileError(f"job file {path!r} is not valid JSON: {exc}") from exc
    return parse_job(document)


def _factor_dict(factor: FactorSpec) -> dict:
    out = {
        "alpha": factor.params.alpha,
        "beta": factor.params.beta,
        "lambda": factor.lam,
    }
    if factor.eta != 0.0:
        out["eta"] = factor.eta
    return out


def job_to_dict(job: Job) -> dict:
    """Canonical round-trippable form of a job."""
    operators = []
    for op in job.operators:
        entry = {"name": op.name, "kind": op.kind}
        if op.kind in (KIND_STARLIKE, KIND_CONVEX):
            entry["factors"] = [_factor_dict(f) for f in op.factors]
            if op.kind == KIND_STARLIKE:
                entry["zeta"] = op.zeta
        else:
            entry["alpha"] = op.alpha
            entry["beta"] = op.beta
            if op.kind == KIND_ML_STARLIKE:
                entry["eta"] = op.eta
        if op.predicted is not None:
            entry["predicted"] = op.predicted
        operators.append(entry)
    return {
        "schema": SCHEMA_VERSION,
        "grid": job.grid.to_dict(),
        "tolerance": {
            "margin": job.margin_tol,
            "quadrature": job.quad_tol,
            "series": job.series_tol,
        },
        "outputs": list(job.outputs),
        "operators": operators,
    }


def canonical_json(document: dict) -> str:
    return json.dumps(document, sort_keys=True, separators=(",", ":"))


def job_digest(document: dict) -> str:
    return hashlib.sha256(canonical_json(document).encode("utf-8")).hexdigest()[:12]


def run_certificate(op: JobOperator, job: Job) -> Certificate:
    common = dict(grid=job.grid, eval_tolerance=job.margin_tol,
                  series_tol=job.series_tol, predicted=op.predicted)
    if op.kind == KIND_STARLIKE:
        return certify_starlike(op.operator_spec(), quad_tol=job.quad_tol, **common)
    if op.kind == KIND_CONVEX:
        return certify_convex(op.factors, **common)
    if op.kind == KIND_ML_STARLIKE:
        return certify_ml_starlike(op.ml_params(), op.eta, **common)
    return check_log_deriv_bound(op.ml_params(), **common)


@dataclass
class ReportDocument:
    """Tool metadata, the job echo, certificates, timings, and a verdict."""

    job: Job
    names: list = field(default_factory=list)
    certificates: list = field(default_factory=list)
    timings: list = field(default_factory=list)

    @property
    def summary_verdict(self) -> str:
        verdicts = [c.verdict for c in self.certificates]
        if any(v == VERDICT_FAIL for v in verdicts):
            return VERDICT_FAIL
        if any(v == VERDICT_HYPOTHESIS for v in verdicts):
            return VERDICT_HYPOTHESIS
        return VERDICT_PASS

    def to_dict(self, include_timings: bool = True) -> dict:
        out = {
            "schema": SCHEMA_VERSION,
            "tool": {"name": "mlstar", "version": __version__},
            "job": job_to_dict(self.job),
            "certificates": [
                {"name": name, **cert.to_dict()}
                for name, cert in zip(self.names, self.certificates)
            ],
            "summary": {"verdict": self.summary_verdict},
        }
        if include_timings:
            out["timings"] = [
                {"name": name, "seconds": seconds}
                for name, seconds in zip(self.names, self.timings)
            ]
        return out


def run_job(job: Job) -> ReportDocument:
    """Certify every operator in the job; per-operator errors become failures."""
    report = ReportDocument(job)
    for op in job.operators:
        start = time.perf_counter()
        certificate = run_certificate(op, job)
        report.names.append(op.name)
        report.certificates.append(certificate)
        report.timings.append(time.perf_counter() - start)
    return report


def predicted_orders(job: Job):
    """(name, kind, delta, hypothesis_ok) rows for the orders command."""
    rows = []
    for op in job.operators:
        if op.kind == KIND_STARLIKE:
            rep = starlike_delta(op.operator_spec())
            rows.append((op.name, op.kind, rep.delta, rep.hypothesis_ok))
        elif op.kind == KIND_CONVEX:
            rep = convex_delta(op.factors)
            rows.append((op.name, op.kind, rep.delta, rep.hypothesis_ok))
        elif op.kind == KIND_ML_STARLIKE:
            ok = op.alpha >= 1.0 and op.beta >= psi(op.eta)
            rows.append((op.name, op.kind, op.eta, ok))
        else:
            rows.append((op.name, op.kind, log_deriv_bound(op.ml_params()), True))
    return rows
