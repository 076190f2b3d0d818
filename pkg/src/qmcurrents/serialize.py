"""JSON problem files and report serialization.

A problem file looks like::

    {"dimension": 1, "section_exponents": [1], "holo_pole": [1], "anti_pole": [1],
     "numerator": [{"z": [0], "zbar": [0], "re": "1", "im": "0"}],
     "bump_exponents": [2], "metric_weight": [], "tasks": ["laurent"]}

Coefficients are integers or ``"p/q"`` strings; floats are rejected.
Variable indices in forms are 0-based.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, List, Mapping, Optional, Sequence, Tuple

from .algebra import ConjForm, ConjPolynomial
from .exact import ExactValue, GaussianRational, LaurentWindow, as_rational
from .model import QMIntegrand, Section, ValidationError, assemble

__all__ = [
    "TASKS",
    "Problem",
    "ProblemError",
    "parse_problem",
    "load_problem",
    "problem_to_json",
    "poly_to_json",
    "poly_from_json",
    "form_to_json",
    "value_json",
    "window_json",
    "dumps",
]

TASKS = ("laurent", "canonical", "pv", "aeppli", "dolbeault", "verify-all", "pole-audit", "metric-dependence")


class ProblemError(ValidationError):
    """Malformed problem file; ``field`` is a path like ``numerator[2].zbar``."""


@dataclass(frozen=True)
class Problem:
    omega: QMIntegrand
    section: Section
    tasks: Tuple[str, ...]
    section_given: bool = True


def _require(data: Mapping, key: str, path: str = ""):
    if key not in data:
        raise ProblemError("missing required field", path + key)
    return data[key]


def _int_array(value, dim: int, path: str) -> Tuple[int, ...]:
    if not isinstance(value, list):
        raise ProblemError(f"expected an array of length {dim}", path)
    if len(value) != dim:
        raise ProblemError(f"expected length {dim}, got {len(value)}", path)
    for i, v in enumerate(value):
        if isinstance(v, bool) or not isinstance(v, int) or v < 0:
            raise ProblemError(f"expected a non-negative integer, got {v!r}", f"{path}[{i}]")
    return tuple(value)


def _rational(value, path: str):
    if isinstance(value, bool) or isinstance(value, float) or not isinstance(value, (int, str)):
        raise ProblemError(f"expected an integer or a \"p/q\" string, got {value!r}", path)
    try:
        return as_rational(value)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise ProblemError(f"not an exact rational: {value!r}", path) from exc


def poly_from_json(terms, dim: int, path: str) -> ConjPolynomial:
    if not isinstance(terms, list):
        raise ProblemError("expected an array of terms", path)
    out = {}
    for i, term in enumerate(terms):
        tpath = f"{path}[{i}]"
        if not isinstance(term, dict):
            raise ProblemError("expected an object with z, zbar, re, im", tpath)
        unknown = set(term) - {"z", "zbar", "re", "im"}
        if unknown:
            raise ProblemError(f"unknown keys {sorted(unknown)}", tpath)
        a = _int_array(term.get("z", [0] * dim), dim, tpath + ".z")
        b = _int_array(term.get("zbar", [0] * dim), dim, tpath + ".zbar")
        c = GaussianRational(_rational(term.get("re", 0), tpath + ".re"), _rational(term.get("im", 0), tpath + ".im"))
        out[(a, b)] = out.get((a, b), GaussianRational(0)) + c
    return ConjPolynomial(dim, out)


def poly_to_json(P: ConjPolynomial) -> List[dict]:
    return [{"z": list(a), "zbar": list(b), **c.to_json()} for (a, b), c in sorted(P.items())]


def form_to_json(form: ConjForm) -> List[dict]:
    return [{"dz": list(A), "dzbar": list(B), "coefficient": poly_to_json(P)} for (A, B), P in sorted(form.items())]


def value_json(v: ExactValue) -> dict:
    return {"text": str(v), "exact": v.to_json()}


def window_json(w: LaurentWindow, prefix: str = "C") -> dict:
    return {
        "lowest_order": w.lowest_order,
        "validity_order": w.validity_order,
        "coefficients": {f"{prefix}_{n}": value_json(c) for n, c in w.items()},
    }


def parse_problem(data: Any) -> Problem:
    """Validate a decoded problem file; errors carry the offending field path."""
    if not isinstance(data, dict):
        raise ProblemError("top level must be an object", "$")
    known = {
        "dimension",
        "section_exponents",
        "holo_pole",
        "anti_pole",
        "numerator",
        "bump_exponents",
        "metric_weight",
        "tasks",
    }
    unknown = set(data) - known
    if unknown:
        raise ProblemError(f"unknown fields {sorted(unknown)}", "$")
    dim = _require(data, "dimension")
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
        raise ProblemError(f"must be a positive integer, got {dim!r}", "dimension")
    J = _int_array(_require(data, "holo_pole"), dim, "holo_pole")
    K = _int_array(_require(data, "anti_pole"), dim, "anti_pole")
    q = _int_array(_require(data, "bump_exponents"), dim, "bump_exponents")
    numerator = poly_from_json(_require(data, "numerator"), dim, "numerator")
    phi = poly_from_json(data.get("metric_weight", []), dim, "metric_weight")
    I = data.get("section_exponents")
    if I is not None:
        I = _int_array(I, dim, "section_exponents")
    tasks = data.get("tasks", ["laurent"])
    if not isinstance(tasks, list):
        raise ProblemError("expected an array of task names", "tasks")
    for i, t in enumerate(tasks):
        if t not in TASKS:
            raise ProblemError(f"unknown task {t!r}; expected one of {list(TASKS)}", f"tasks[{i}]")
    try:
        omega, section = assemble(dim, J, K, numerator, q, phi, I)
    except ValidationError as exc:
        raise ProblemError(str(exc).split(": ", 1)[-1] if exc.field else str(exc), exc.field) from exc
    given = section is not None
    if section is None:
        section = Section.minimal(omega.pole)
    return Problem(omega, section, tuple(tasks), given)


def load_problem(text: str) -> Problem:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProblemError(f"invalid JSON: {exc.msg} (line {exc.lineno}, column {exc.colno})", "$") from exc
    return parse_problem(data)


def problem_to_json(omega: QMIntegrand, section: Optional[Section], tasks: Sequence[str] = ("laurent",)) -> dict:
    if omega.numerator is None or omega.bump is None:
        raise ValueError("only integrands built from numerator and bump data can be serialized")
    out = {
        "dimension": omega.dim,
        "holo_pole": list(omega.pole.J),
        "anti_pole": list(omega.pole.K),
        "numerator": poly_to_json(omega.numerator),
        "bump_exponents": list(omega.bump),
        "metric_weight": poly_to_json(omega.phi),
        "tasks": list(tasks),
    }
    if section is not None:
        out["section_exponents"] = list(section.I)
    return out


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False)
