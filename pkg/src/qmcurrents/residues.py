"""Residue representatives on coordinate subspaces and exact identity checks.

Everything lives in a single chart with unit cut-off function, so a residue
representative is an explicit form on ``{z_j = 0, j in base}``.  Integrals
over such a subspace run over the remaining coordinates of the polydisc.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .algebra import ConjForm, ConjPolynomial, conj, dbar, wedge
from .continuation import PolarForm, canonical_current, laurent_coeffs, pairing_dbar_pv, pv_of_top_form
from .exact import ExactValue, GaussianRational
from .model import PoleData, QMIntegrand, Section, ValidationError, kappa, order_factor
from .serialize import form_to_json, value_json

__all__ = [
    "ResidueRepresentative",
    "CheckReport",
    "representative_of",
    "res_dolbeault",
    "poincare_res",
    "res_aeppli",
    "res_aeppli_iter",
    "integrate_representative",
    "check_thm_residue",
    "check_thm_aeppli",
    "check_thm_aeppli2",
    "check_cor_main",
    "check_aeppli_poincare",
    "check_metric_dependence",
    "check_rescale",
    "rescale",
]

_TWO_PI_I = ExactValue.scalar(GaussianRational(0, 2), 1)
_MINUS_TWO_PI_I = -_TWO_PI_I


@dataclass(frozen=True)
class ResidueRepresentative:
    """``form / (z^J zbar^K)`` on the subspace ``{z_j = 0, j in base}``."""

    base: FrozenSet[int]
    form: ConjForm
    residual_pole: PoleData

    def __post_init__(self):
        object.__setattr__(self, "base", frozenset(self.base))
        for j in self.base:
            if self.residual_pole.J[j] or self.residual_pole.K[j]:
                raise ValidationError(f"residual pole in restricted variable z_{j}")
            for (A, B), P in self.form.items():
                if j in A or j in B or j in P.variables():
                    raise ValidationError(f"form depends on restricted variable z_{j}")

    @property
    def dim(self) -> int:
        return self.form.dim

    @property
    def remaining(self) -> Tuple[int, ...]:
        return tuple(j for j in range(self.dim) if j not in self.base)

    def to_json(self) -> dict:
        return {
            "base": sorted(self.base),
            "form": form_to_json(self.form),
            "residual_pole": {"holo": list(self.residual_pole.J), "anti": list(self.residual_pole.K)},
        }


def representative_of(omega: QMIntegrand) -> ResidueRepresentative:
    """The top-degree integrand ``psi / (z^J zbar^K) dz ^ dzbar`` over the active variables."""
    return ResidueRepresentative(omega.frozen, ConjForm.top(omega.psi, omega.active), omega.pole)


def _extract(form: ConjForm, j: int, both: bool) -> ConjForm:
    """Write ``form = dz_j ^ [dzbar_j ^] rest`` and return ``rest``.

    Terms without ``dz_j`` (or ``dzbar_j`` when ``both``) restrict to zero on
    ``{z_j = 0}`` after the residue operation, so they are dropped.
    """
    out: Dict = {}
    for (A, B), P in form.items():
        if j not in A or (both and j not in B):
            continue
        ia = A.index(j)
        A2 = A[:ia] + A[ia + 1 :]
        sign = (-1) ** ia
        B2 = B
        if both:
            ib = B.index(j)
            B2 = B[:ib] + B[ib + 1 :]
            sign *= (-1) ** (len(A2) + ib)
        else:
            # dz_j ^ dz_A2 ^ dzbar_B: no further reordering needed
            pass
        out[(A2, B2)] = P if sign > 0 else -P
    return ConjForm(form.dim, out)


def res_dolbeault(alpha: PolarForm) -> ResidueRepresentative:
    """``(1/(m-1)!) d^{m-1} alpha~ / dz_j^{m-1}`` restricted to ``z_j = 0``."""
    j, m = alpha.var, alpha.order
    d = alpha.dim
    if m <= 0:
        return ResidueRepresentative({j}, ConjForm(d), PoleData.smooth(d))
    rest = _extract(alpha.numerator, j, both=False)
    J = [0] * d
    J[j] = m - 1
    rest = rest.derivative(J, [0] * d).scale(Fraction(1, factorial(m - 1)))
    return ResidueRepresentative({j}, rest.restrict({j}), PoleData.smooth(d))


def poincare_res(beta: PolarForm) -> ResidueRepresentative:
    if beta.order != 1:
        raise ValidationError(f"Poincare residue needs a simple pole, got order {beta.order}")
    d = beta.dim
    if beta.numerator and beta.numerator.bidegree != (d, 0):
        raise ValidationError("Poincare residue needs a (d,0)-form")
    for _, P in beta.numerator.items():
        if not P.is_holomorphic():
            raise ValidationError("Poincare residue needs a holomorphic numerator")
    return res_dolbeault(beta)


def res_aeppli(rep: ResidueRepresentative, j: int) -> ResidueRepresentative:
    """``(1/((m-1)!(n-1)!)) d^{m-1} dbar^{n-1} w~`` at ``z_j = 0`` for the pole ``(m, n)`` in z_j.

    A missing side is padded: the numerator picks up ``z_j`` (or ``zbar_j``)
    and the order becomes 1, so semi-meromorphic data has residue 0.
    """
    if j in rep.base:
        raise ValidationError(f"variable z_{j} already restricted")
    d = rep.dim
    pole = rep.residual_pole
    m, n = pole.J[j], pole.K[j]
    rest = _extract(rep.form, j, both=True)
    if m == 0:
        rest = rest.scale(ConjPolynomial.z(d, j))
        m = 1
    if n == 0:
        rest = rest.scale(ConjPolynomial.zbar(d, j))
        n = 1
    J = [0] * d
    K = [0] * d
    J[j] = m - 1
    K[j] = n - 1
    rest = rest.derivative(J, K).scale(Fraction(1, factorial(m - 1) * factorial(n - 1)))
    return ResidueRepresentative(rep.base | {j}, rest.restrict({j}), pole.without({j}))


def res_aeppli_iter(rep, E: Iterable[int]) -> ResidueRepresentative:
    """Resolve the variables of ``E`` in the given order (empty ``E``: unchanged)."""
    if isinstance(rep, QMIntegrand):
        rep = representative_of(rep)
    for j in E:
        rep = res_aeppli(rep, j)
    return rep


def integrate_representative(rep: ResidueRepresentative) -> ExactValue:
    """Pair the representative with 1 on its subspace: canonical current of the
    residual integrand (a plain integral when no pole is left)."""
    if not rep.form:
        return ExactValue()
    psi = rep.form.top_coefficient(rep.remaining)
    return canonical_current(QMIntegrand(rep.residual_pole, psi, frozen=rep.base))


@dataclass(frozen=True)
class CheckReport:
    check: str
    lhs: ExactValue
    rhs: ExactValue
    details: Dict[str, object] = field(default_factory=dict)

    @property
    def difference(self) -> ExactValue:
        return self.lhs - self.rhs

    @property
    def passed(self) -> bool:
        return not self.difference

    def to_json(self) -> dict:
        out = {
            "check": self.check,
            "lhs": value_json(self.lhs),
            "rhs": value_json(self.rhs),
            "difference": value_json(self.difference),
            "pass": self.passed,
        }
        if self.details:
            out["details"] = {k: (value_json(v) if isinstance(v, ExactValue) else v) for k, v in self.details.items()}
        return out


def check_thm_residue(alpha: PolarForm, xi: ConjForm) -> CheckReport:
    """<dbar[alpha], xi> = <[dbar alpha], xi> + 2 pi i int_D Res(alpha ^ xi)."""
    d = alpha.dim
    if not alpha.numerator:
        return CheckReport("thm_residue", ExactValue(), ExactValue())
    p, q = alpha.numerator.bidegree
    if xi and xi.bidegree != (d - p, d - q - 1):
        raise ValidationError(f"test form must have bidegree {(d - p, d - q - 1)}, got {xi.bidegree}")
    lhs = pairing_dbar_pv(alpha, xi)
    middle = pv_of_top_form(wedge(dbar(alpha.numerator), xi), alpha.order, alpha.var)
    rep = res_dolbeault(PolarForm(wedge(alpha.numerator, xi), alpha.order, alpha.var))
    residue = integrate_representative(rep)
    rhs = middle + _TWO_PI_I * residue
    return CheckReport("thm_residue", lhs, rhs, {"pv_dbar_alpha": middle, "residue_integral": residue})


def check_thm_aeppli2(omega: QMIntegrand, order: Optional[Sequence[int]] = None) -> CheckReport:
    """{omega} = (-2 pi i)^kappa <{Res_A^E(omega)}, 1>_E with E the two-sided polar set."""
    E = sorted(omega.pole.two_sided) if order is None else list(order)
    if set(E) != set(omega.pole.two_sided):
        raise ValidationError("resolution order must list exactly the two-sided polar variables")
    lhs = canonical_current(omega)
    rep = res_aeppli_iter(omega, E)
    integral = integrate_representative(rep)
    rhs = _MINUS_TWO_PI_I ** len(E) * integral
    return CheckReport("thm_aeppli2", lhs, rhs, {"residue_integral": integral, "E": E})


def check_thm_aeppli(omega: QMIntegrand) -> CheckReport:
    """{omega} = -2 pi i int_D Res_A(omega) for a single two-sided polar variable."""
    if kappa(omega.pole) != 1:
        raise ValidationError(f"needs exactly one two-sided polar variable, kappa = {kappa(omega.pole)}")
    report = check_thm_aeppli2(omega)
    return CheckReport("thm_aeppli", report.lhs, report.rhs, report.details)


def check_cor_main(omega: QMIntegrand) -> CheckReport:
    pole = omega.pole
    if pole.holomorphic_support != pole.anti_support:
        raise ValidationError("holomorphic and anti-holomorphic poles must have the same support")
    rep = res_aeppli_iter(omega, sorted(pole.two_sided))
    if rep.residual_pole.support:
        raise AssertionError("residual after resolving all polar variables is not smooth")
    report = check_thm_aeppli2(omega)
    return CheckReport("cor_main", report.lhs, report.rhs, report.details)


def check_aeppli_poincare(alpha: PolarForm, beta: PolarForm) -> CheckReport:
    """Res_A(alpha ^ conj(beta)) = (-1)^{d-1} Res(alpha) ^ conj(PoincareRes(beta))."""
    d = alpha.dim
    if alpha.var != beta.var:
        raise ValidationError("alpha and beta must be polar in the same variable")
    if alpha.numerator and alpha.numerator.bidegree != (d, 0):
        raise ValidationError("alpha must be a (d,0)-form")
    j = alpha.var
    res_beta = poincare_res(beta)
    J = [0] * d
    K = [0] * d
    J[j] = alpha.order
    K[j] = 1
    product = wedge(alpha.numerator, conj(beta.numerator))
    lhs_rep = res_aeppli(ResidueRepresentative(frozenset(), product, PoleData(tuple(J), tuple(K))), j)
    rhs_form = wedge(res_dolbeault(alpha).form, conj(res_beta.form))
    if (d - 1) % 2:
        rhs_form = -rhs_form
    rhs_rep = ResidueRepresentative({j}, rhs_form, PoleData.smooth(d))
    lhs = integrate_representative(lhs_rep)
    rhs = integrate_representative(rhs_rep)
    return CheckReport("aeppli_poincare", lhs, rhs, {"representatives_equal": lhs_rep.form == rhs_form})


def _finite_difference(values: Sequence[ExactValue], order: int) -> ExactValue:
    row = list(values)
    for _ in range(order):
        row = [b - a for a, b in zip(row, row[1:])]
    return row[0]


def check_metric_dependence(omega: QMIntegrand, section: Section, phi: ConjPolynomial) -> List[CheckReport]:
    """Polynomial dependence of C_{-r} on the metric weight ``t*phi`` and its top homogeneous part."""
    kap = kappa(omega.pole)
    o_s = order_factor(section, omega.pole)
    E = sorted(omega.pole.two_sided)
    columns = [laurent_coeffs(omega.with_phi(phi.scale(t)), section) for t in range(kap + 2)]
    reports = []
    for r in range(kap + 1):
        deg = kap - r
        values = [col.C[r] for col in columns[: deg + 2]]
        reports.append(
            CheckReport(f"metric_degree_r{r}", _finite_difference(values, deg + 1), ExactValue(), {"degree": deg})
        )
        # leading t-coefficient of a degree-deg polynomial sampled at t = 0..deg
        lead = _finite_difference(values[: deg + 1], deg) * Fraction(1, factorial(deg))
        weighted = omega.with_psi(omega.psi * phi**deg)
        integral = integrate_representative(res_aeppli_iter(weighted, E))
        factor = _MINUS_TWO_PI_I**kap * Fraction((-2) ** deg, o_s * factorial(deg))
        reports.append(CheckReport(f"metric_top_r{r}", lead, integral * factor, {"residue_integral": integral}))
    if kap == 1:
        res0 = integrate_representative(res_aeppli_iter(omega, E))
        res1 = integrate_representative(res_aeppli_iter(omega.with_psi(omega.psi * phi), E))
        reports.append(
            CheckReport("metric_leading", columns[1].C[1], _MINUS_TWO_PI_I * res0 * Fraction(1, o_s))
        )
        reports.append(
            CheckReport(
                "metric_constant_shift",
                columns[1].C[0] - columns[0].C[0],
                ExactValue.scalar(GaussianRational(0, 4), 1) * res1 * Fraction(1, o_s),
            )
        )
    return reports


def rescale(omega: QMIntegrand, j: int, c) -> QMIntegrand:
    """The same integrand in the coordinate ``w_j = c z_j`` (``|c| = 1``)."""
    c = GaussianRational.coerce(c)
    if c * c.conjugate() != 1:
        raise ValidationError("rescaling constant must have modulus 1")
    pole = omega.pole
    psi = omega.psi.substitute_scale(j, c).scale(c ** pole.J[j] * c.conjugate() ** pole.K[j])
    phi = omega.phi.substitute_scale(j, c)
    return QMIntegrand(pole, psi, phi, omega.bump, None, omega.frozen)


def check_rescale(omega: QMIntegrand, j: int, c) -> List[CheckReport]:
    moved = rescale(omega, j, c)
    out = [CheckReport("rescale_current", canonical_current(omega), canonical_current(moved))]
    E = sorted(omega.pole.two_sided)
    out.append(
        CheckReport(
            "rescale_residue",
            integrate_representative(res_aeppli_iter(omega, E)),
            integrate_representative(res_aeppli_iter(moved, E)),
        )
    )
    return out
