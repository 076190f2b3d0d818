"""Task runners behind the command line: each returns a JSON-ready dict and
a list of verification outcomes."""
from __future__ import annotations

from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

from .algebra import ConjForm, ConjPolynomial, wedge
from .continuation import PolarForm, canonical_current, g_derivative, laurent_coeffs, principal_value
from .exact import GaussianRational, LaurentWindow
from .model import QMIntegrand, Section, ValidationError, kappa, order_factor
from .oracle import pole_bound, run_oracle
from .residues import (
    CheckReport,
    check_cor_main,
    check_metric_dependence,
    check_rescale,
    check_thm_aeppli,
    check_thm_aeppli2,
    check_thm_residue,
    integrate_representative,
    res_aeppli_iter,
    res_dolbeault,
)
from .serialize import Problem, value_json, window_json

__all__ = ["TaskResult", "run_task", "run_problem", "verify_instance"]

Outcome = Tuple[str, bool]


class TaskResult:
    def __init__(self, payload: dict, outcomes: Optional[List[Outcome]] = None):
        self.payload = payload
        self.outcomes = outcomes or []

    @property
    def passed(self) -> bool:
        return all(ok for _, ok in self.outcomes)


def _checks_json(reports: List[CheckReport]) -> List[dict]:
    return [r.to_json() for r in reports]


def _outcomes(reports: List[CheckReport]) -> List[Outcome]:
    return [(r.check, r.passed) for r in reports]


def task_laurent(omega: QMIntegrand, section: Section, truncation: Optional[int] = None) -> TaskResult:
    cont = laurent_coeffs(omega, section)
    orc = run_oracle(omega, section, truncation, audit=False)
    o_s = cont.o_s
    bare = orc.laurent
    agree = all(bare.coeff(-r) == cont.C[r] * o_s for r in range(cont.kappa + 1) if -r <= bare.validity_order)
    oracle_bare = LaurentWindow(
        bare.lowest_order, tuple(c * Fraction(1, o_s) for c in bare.coefficients), bare.validity_order
    )
    payload = {
        "kappa": cont.kappa,
        "p": cont.p,
        "o_s": o_s,
        "continuation": window_json(cont.window()),
        "oracle": window_json(oracle_bare),
        "pathways_agree": agree,
        "pole_order_ok": orc.pole_order_ok,
    }
    return TaskResult(payload, [("pathways_agree", agree), ("pole_order_ok", orc.pole_order_ok)])


def task_canonical(omega: QMIntegrand, section: Section) -> TaskResult:
    return TaskResult({"value": value_json(canonical_current(omega))})


def task_pv(omega: QMIntegrand, section: Section) -> TaskResult:
    return TaskResult({"value": value_json(principal_value(omega, section))})


def _aeppli_reports(omega: QMIntegrand) -> List[CheckReport]:
    reports = [check_thm_aeppli2(omega)]
    if kappa(omega.pole) == 1:
        reports.append(check_thm_aeppli(omega))
    if omega.pole.holomorphic_support == omega.pole.anti_support:
        reports.append(check_cor_main(omega))
    return reports


def task_aeppli(omega: QMIntegrand, section: Section) -> TaskResult:
    E = sorted(omega.pole.two_sided)
    rep = res_aeppli_iter(omega, E)
    reports = _aeppli_reports(omega)
    payload = {
        "E": E,
        "representative": rep.to_json(),
        "integral": value_json(integrate_representative(rep)),
        "checks": _checks_json(reports),
    }
    return TaskResult(payload, _outcomes(reports))


def dolbeault_data(omega: QMIntegrand) -> Tuple[PolarForm, ConjForm]:
    """``alpha = P / z_j^m dz`` and ``xi = bump dzbar_{others}`` from single-variable holomorphic pole data."""
    pole = omega.pole
    if any(pole.K) or len(pole.holomorphic_support) != 1:
        raise ValidationError("needs a holomorphic pole in exactly one variable (anti_pole = 0)", "holo_pole")
    if omega.numerator is None or omega.bump is None:
        raise ValidationError("needs numerator and bump data", "numerator")
    d = omega.dim
    (j,) = pole.holomorphic_support
    top = tuple(range(d))
    alpha = PolarForm(ConjForm(d, {(top, ()): omega.numerator}), pole.J[j], j)
    others = tuple(k for k in range(d) if k != j)
    xi = ConjForm(d, {((), others): ConjPolynomial.bump(d, omega.bump)})
    return alpha, xi


def task_dolbeault(omega: QMIntegrand, section: Section) -> TaskResult:
    alpha, xi = dolbeault_data(omega)
    rep = res_dolbeault(PolarForm(wedge(alpha.numerator, xi), alpha.order, alpha.var))
    report = check_thm_residue(alpha, xi)
    payload = {
        "representative": rep.to_json(),
        "integral": value_json(integrate_representative(rep)),
        "checks": _checks_json([report]),
    }
    return TaskResult(payload, _outcomes([report]))


def task_pole_audit(omega: QMIntegrand, section: Section, truncation: Optional[int] = None) -> TaskResult:
    orc = run_oracle(omega, section, truncation)
    bound = pole_bound(omega.pole, section)
    payload = {
        "bound": None if bound is None else str(bound),
        "poles": [c.to_json() for c in orc.pole_audit],
        "pole_order_ok": orc.pole_order_ok,
    }
    return TaskResult(payload, [("pole_bound", orc.audit_ok), ("pole_order_ok", orc.pole_order_ok)])


def task_metric(omega: QMIntegrand, section: Section) -> TaskResult:
    reports = check_metric_dependence(omega.with_phi(ConjPolynomial.zero(omega.dim)), section, omega.phi)
    return TaskResult({"checks": _checks_json(reports)}, _outcomes(reports))


def _alternate_section(omega: QMIntegrand, section: Section) -> Section:
    return Section(tuple(i + 1 if i else 0 for i in section.I))


def verify_instance(omega: QMIntegrand, section: Section) -> TaskResult:
    """Pathway agreement, pole structure, section independence and every applicable identity."""
    outcomes: List[Outcome] = []
    payload: Dict[str, object] = {}

    laurent = task_laurent(omega, section)
    outcomes += laurent.outcomes

    orc = run_oracle(omega, section)
    outcomes.append(("pole_bound", orc.audit_ok))

    kap = kappa(omega.pole)
    p = omega.p
    vanish = all(not g_derivative(omega, section.I, k) for k in range(p - kap))
    outcomes.append(("g_vanishing", vanish))

    current = canonical_current(omega)
    cont = laurent_coeffs(omega, section)
    alt = _alternate_section(omega, section)
    cont_alt = laurent_coeffs(omega, alt)
    leading = current == cont.C[kap] * cont.o_s
    independent = cont.C[kap] * cont.o_s == cont_alt.C[kap] * cont_alt.o_s
    outcomes += [("leading_is_canonical", leading), ("section_independence", independent)]

    reports = _aeppli_reports(omega)
    for j in range(omega.dim):
        reports += check_rescale(omega, j, GaussianRational(0, 1))
    if omega.phi:
        reports += check_metric_dependence(omega.with_phi(ConjPolynomial.zero(omega.dim)), section, omega.phi)
    if kap == 0 and omega.pole.support:
        j = min(omega.pole.support)
        vanishing = not res_aeppli_iter(omega, [j]).form
        outcomes.append(("semi_meromorphic_aeppli_zero", vanishing))
    if not any(omega.pole.K) and len(omega.pole.holomorphic_support) == 1 and omega.numerator is not None:
        reports.append(check_thm_residue(*dolbeault_data(omega)))
    outcomes += _outcomes(reports)
    payload["checks"] = _checks_json(reports)
    summary: Dict[str, bool] = {}
    for name, ok in outcomes:
        summary[name] = summary.get(name, True) and ok
    payload["summary"] = summary
    payload["canonical_current"] = value_json(current)
    return TaskResult(payload, outcomes)


RUNNERS: Dict[str, Callable[[QMIntegrand, Section], TaskResult]] = {
    "laurent": task_laurent,
    "canonical": task_canonical,
    "pv": task_pv,
    "aeppli": task_aeppli,
    "dolbeault": task_dolbeault,
    "pole-audit": task_pole_audit,
    "metric-dependence": task_metric,
    "verify-all": verify_instance,
}


TRUNCATABLE = ("laurent", "pole-audit")


def run_task(name: str, omega: QMIntegrand, section: Section, truncation: Optional[int] = None) -> TaskResult:
    """``truncation`` (oracle terms beyond kappa extend the window) applies to laurent and pole-audit only."""
    if truncation is not None and name in TRUNCATABLE:
        if truncation < kappa(omega.pole):
            raise ValidationError(f"truncation {truncation} is below kappa = {kappa(omega.pole)}", "truncation")
        return RUNNERS[name](omega, section, truncation)
    return RUNNERS[name](omega, section)


def run_problem(problem: Problem, tasks=None, truncation: Optional[int] = None) -> Tuple[dict, bool]:
    """Run tasks in declaration order; returns the report and whether every verification passed."""
    tasks = problem.tasks if tasks is None else tasks
    results = []
    passed = True
    for name in tasks:
        result = run_task(name, problem.omega, problem.section, truncation)
        passed = passed and result.passed
        entry = {"task": name, "result": result.payload}
        if result.outcomes:
            entry["pass"] = result.passed
        results.append(entry)
    report = {
        "dimension": problem.omega.dim,
        "holo_pole": list(problem.omega.pole.J),
        "anti_pole": list(problem.omega.pole.K),
        "section_exponents": list(problem.section.I),
        "kappa": kappa(problem.omega.pole),
        "o_s": order_factor(problem.section, problem.omega.pole),
        "tasks": results,
        "pass": passed,
    }
    return report, passed
