"""Closed-form rational function of lam for the regularized integral.

Only angular orthogonality and the radial moment formula are used: a term
``c z^a zbar^b`` of ``psi phi^t`` contributes when ``a - J == b - K`` and then
integrates to ``prod_j -2 pi i / (lam I_j + a_j - J_j + 1)``.  No integration
by parts is involved, so this pathway is independent of the continuation.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Dict, List, Optional, Tuple

from .algebra import ConjPolynomial, orientation_sign
from .exact import ExactValue, GaussianRational, LaurentWindow, RationalFunctionLambda
from .model import PoleData, QMIntegrand, Section, kappa, order_factor

__all__ = ["PoleCheck", "OracleResult", "build_F", "build_family", "laurent", "pole_bound", "pole_audit", "run_oracle"]


@dataclass(frozen=True)
class PoleCheck:
    location: Fraction
    order: int
    bound_satisfied: bool
    t: int = 0

    def to_json(self) -> dict:
        return {
            "t": self.t,
            "location": str(self.location),
            "order": self.order,
            "bound_satisfied": self.bound_satisfied,
        }


@dataclass(frozen=True)
class OracleResult:
    F: RationalFunctionLambda
    family: Tuple[RationalFunctionLambda, ...]
    laurent: LaurentWindow
    pole_audit: Tuple[PoleCheck, ...]
    kappa: int
    truncation: int
    o_s: int

    @property
    def pole_order_ok(self) -> bool:
        return self.laurent.lowest_order >= -self.kappa

    @property
    def audit_ok(self) -> bool:
        return all(c.bound_satisfied for c in self.pole_audit)

    def to_json(self) -> dict:
        return {
            "pathway": "oracle",
            "kappa": self.kappa,
            "truncation": self.truncation,
            "o_s": self.o_s,
            "laurent": self.laurent.to_json(),
            "pole_order_ok": self.pole_order_ok,
            "pole_audit": [c.to_json() for c in self.pole_audit],
        }


def build_family(omega: QMIntegrand, section: Section, truncation: int) -> Tuple[RationalFunctionLambda, ...]:
    """``G_t(lam) = o(s) int |z^I|^{2 lam} psi phi^t / (z^J zbar^K)`` for t = 0..truncation.

    ``F = sum_t (-2 lam)^t / t! * G_t`` up to the truncation.
    """
    pole = omega.pole
    I = section.I
    o_s = order_factor(section, pole)
    active = omega.active
    charge = tuple(x - y for x, y in zip(pole.J, pole.K))
    scale = ExactValue.scalar(GaussianRational(0, -2) ** len(active) * (orientation_sign(len(active)) * o_s), len(active))
    family = []
    power = ConjPolynomial.constant(omega.dim)
    for t in range(truncation + 1):
        if t:
            if not omega.phi:
                family.append(RationalFunctionLambda())
                continue
            power = power * omega.phi
        G = omega.psi.mul(power, charge=charge) if t else omega.psi.filter_charge(charge)
        family.append(_integrate_against_pole(G, pole, I, active, omega.frozen) * scale)
    return tuple(family)


def _integrate_against_pole(G: ConjPolynomial, pole: PoleData, I, active, frozen) -> RationalFunctionLambda:
    out = []
    for (a, b), c in G.items():
        s = tuple(x - y for x, y in zip(a, pole.J))
        for j in frozen:
            if a[j] or b[j] or pole.J[j] or pole.K[j]:
                raise ValueError(f"frozen variable z_{j} occurs in the integrand")
        value = Fraction(1)
        factors = []
        for j in active:
            if I[j]:
                factors.append((I[j], s[j] + 1))
            else:
                value /= s[j] + 1
        out.append(((c * value,), tuple(factors)))
    return RationalFunctionLambda(out)


def build_F(omega: QMIntegrand, section: Section, truncation: Optional[int] = None) -> RationalFunctionLambda:
    if truncation is None:
        truncation = kappa(omega.pole)
    return _combine(build_family(omega, section, truncation))


def _combine(family) -> RationalFunctionLambda:
    F = RationalFunctionLambda()
    for t, G in enumerate(family):
        if not t:
            F = F + G
        elif G:
            weight = [ExactValue()] * t + [ExactValue.scalar(Fraction((-2) ** t, factorial(t)))]
            F = F + G * RationalFunctionLambda.polynomial(weight)
    return F


def laurent(F: RationalFunctionLambda, kappa_: int, truncation: Optional[int] = None) -> LaurentWindow:
    """Window from ``lam^{-kappa}`` through the last order the truncation makes exact."""
    if truncation is None:
        truncation = kappa_
    return F.laurent_at_zero(truncation - kappa_, lowest=-kappa_)


def pole_bound(pole: PoleData, section: Section) -> Optional[Fraction]:
    """``max_j min((J_j - 1)/I_j, (K_j - 1)/I_j)`` over the section's zero set."""
    values = [
        min(Fraction(pole.J[j] - 1, I), Fraction(pole.K[j] - 1, I)) for j, I in enumerate(section.I) if I
    ]
    return max(values) if values else None


def pole_audit(family, pole: PoleData, section: Section) -> Tuple[PoleCheck, ...]:
    """Check every genuine pole of each ``G_t`` against :func:`pole_bound`."""
    if isinstance(family, RationalFunctionLambda):
        family = (family,)
    bound = pole_bound(pole, section)
    out = []
    for t, G in enumerate(family):
        for location, order in G.poles():
            ok = bound is not None and location <= bound
            out.append(PoleCheck(Fraction(location), order, ok, t))
    return tuple(out)


def run_oracle(
    omega: QMIntegrand, section: Section, truncation: Optional[int] = None, audit: bool = True
) -> OracleResult:
    kap = kappa(omega.pole)
    if truncation is None:
        truncation = kap
    family = build_family(omega, section, truncation)
    F = _combine(family)
    window = laurent(F, kap, truncation)
    checks = pole_audit(family, omega.pole, section) if audit else ()
    return OracleResult(F, family, window, checks, kap, truncation, order_factor(section, omega.pole))
