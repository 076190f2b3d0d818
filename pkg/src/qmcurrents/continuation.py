"""Derivative-based continuation of ``lam -> int |s|^{2 lam} omega ^ xi``.

The pole factor is traded for derivatives of ``|z^I|^{2 lam}``::

    |z^I|^{2 lam} / (z^J zbar^K) = h(lam) / lam^p * d^{J+K} |z^I|^{2 lam} / dz^J dzbar^K

and after integrating by parts the integral becomes
``(-1)^{|J|+|K|} h(lam) g(lam) / lam^p`` with ``g`` holomorphic at 0.  The
Taylor coefficients of ``g`` are integrals of log-weighted polynomials.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import comb, factorial
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import ConjForm, ConjPolynomial, LogPolynomial, dbar, orientation_sign, wedge
from .exact import ExactValue, GaussianRational, LaurentWindow, RationalFunctionLambda
from .model import PoleData, QMIntegrand, Section, ValidationError, kappa, order_factor, p_of
from .moments import integrate_logpoly, lambda_moment, polydisc_prefactor

__all__ = [
    "HFactor",
    "CoefficientReport",
    "PolarForm",
    "h_factor",
    "verify_lemma_multi",
    "g_derivative",
    "g_derivatives",
    "g_derivative_reference",
    "laurent_coeffs",
    "canonical_current",
    "principal_value",
    "pv_of_top_form",
    "pairing_dbar_pv",
    "shifted_F",
]


@dataclass(frozen=True)
class HFactor:
    """``h(lam) = constant / prod_i (a_i lam + b_i)``; ``p`` is the power of lam split off."""

    constant: Fraction
    factors: Tuple[Tuple[int, int], ...]
    p: int

    @cached_property
    def h(self) -> RationalFunctionLambda:
        return RationalFunctionLambda([((ExactValue.scalar(self.constant),), self.factors)])

    def at_zero(self) -> Fraction:
        value = Fraction(self.constant)
        for a, b in self.factors:
            value /= b
        return value

    def poles(self) -> List[Tuple[Fraction, int]]:
        counts: Dict[Fraction, int] = {}
        for a, b in self.factors:
            root = Fraction(-b, a)
            counts[root] = counts.get(root, 0) + 1
        return sorted(counts.items())

    def taylor(self, upto: int) -> List[Fraction]:
        """Taylor coefficients h_0 .. h_upto at lam = 0."""
        window = self.h.laurent_at_zero(upto, lowest=0)
        out = []
        for n in range(upto + 1):
            c = window.coeff(n).coefficient(0)
            out.append(c.re)
        return out


def _h_factors(I, J, K, shift: int = 0):
    constant = Fraction(1)
    factors = []
    for orders in (J, K):
        for j, order in enumerate(orders):
            if order == 0:
                continue
            constant /= I[j]
            for i in range(1, order):
                # I_j (lam + shift) - i
                factors.append((I[j], I[j] * shift - i))
    return constant, tuple(factors)


def h_factor(I: Sequence[int], J: Sequence[int], K: Sequence[int]) -> HFactor:
    I, J, K = tuple(I), tuple(J), tuple(K)
    if not len(I) == len(J) == len(K):
        raise ValidationError("I, J, K must have the same length")
    for j in range(len(I)):
        if I[j] == 0 and (J[j] or K[j]):
            raise ValidationError(f"I_{j} = 0 requires J_{j} = K_{j} = 0", "section_exponents")
    constant, factors = _h_factors(I, J, K)
    p = sum(1 for x in J if x) + sum(1 for x in K if x)
    return HFactor(constant, factors, p)


def _poly_mul_int(p: List[int], q: List[int]) -> List:
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return out


def verify_lemma_multi(I: Sequence[int], J: Sequence[int], K: Sequence[int]) -> bool:
    """Check ``d^J dbar^K |z^I|^{2 lam} = (lam^p / h(lam)) |z^I|^{2 lam} / (z^J zbar^K)`` on formal
    symbols ``c(lam) z^a zbar^b |z^I|^{2 lam}``.

    ``d/dz_j`` maps the symbol to ``(a_j + lam I_j) c(lam) z^{a - e_j} zbar^b |z^I|^{2 lam}``.
    """
    hf = h_factor(I, J, K)
    d = len(I)
    coeff = [1]
    a = [0] * d
    b = [0] * d
    for j in range(d):
        for _ in range(J[j]):
            coeff = _poly_mul_int(coeff, [a[j], I[j]])
            a[j] -= 1
        for _ in range(K[j]):
            coeff = _poly_mul_int(coeff, [b[j], I[j]])
            b[j] -= 1
    if a != [-x for x in J] or b != [-x for x in K]:
        return False
    # right side: (h/lam^p) * coeff must be the constant 1, i.e.
    # coeff == lam^p * prod(a_i lam + b_i) / constant; 1/constant is a product of I_j
    inverse = 1 / Fraction(hf.constant)
    if inverse.denominator != 1:
        return False
    expected = [0] * hf.p + [inverse.numerator]
    for fa, fb in hf.factors:
        expected = _poly_mul_int(expected, [fb, fa])
    while len(coeff) > 1 and coeff[-1] == 0:
        coeff.pop()
    while len(expected) > 1 and expected[-1] == 0:
        expected.pop()
    return coeff == expected


class _GTaylor:
    """Taylor coefficients of g(lam) = int |z^I|^{2 lam} d^{J+K}(exp(-2 lam phi) psi)."""

    def __init__(self, omega: QMIntegrand, I: Sequence[int], max_order: int = 0):
        self.omega = omega
        self.I = tuple(I)
        self.max_order = max_order
        pole = omega.pole
        self.charge = tuple(x - y for x, y in zip(pole.J, pole.K))
        self._phi_powers = [ConjPolynomial.constant(omega.dim)]
        self._derived: Dict[int, ConjPolynomial] = {}
        self._integrals: Dict[Tuple[int, int], ExactValue] = {}
        self._vectors: Dict[int, List[ExactValue]] = {}

    def _phi_power(self, t: int) -> ConjPolynomial:
        while len(self._phi_powers) <= t:
            self._phi_powers.append(self._phi_powers[-1] * self.omega.phi)
        return self._phi_powers[t]

    def derived(self, t: int) -> ConjPolynomial:
        """d^{J+K}(psi phi^t), keeping only the terms that survive angular integration."""
        if t not in self._derived:
            omega = self.omega
            if t and not omega.phi:
                prod = ConjPolynomial.zero(omega.dim)
            else:
                prod = omega.psi.mul(self._phi_power(t), charge=self.charge)
            self._derived[t] = prod.derivative(omega.pole.J, omega.pole.K)
        return self._derived[t]

    def log_integral(self, ell: int, t: int) -> ExactValue:
        """int (log|z^I|^2)^ell d^{J+K}(psi phi^t) dz^dzbar."""
        key = (ell, t)
        if key not in self._integrals:
            self._integrals[key] = self._log_integrals(t, max(ell, self.max_order - t))[ell]
        return self._integrals[key]

    def _log_integrals(self, t: int, upto: int) -> List[ExactValue]:
        # Per diagonal monomial |z^a|^2 the integral of (sum_j I_j L_j)^ell is
        #   ell! (-1)^ell prod_j 1/(a_j+1) * h_ell(I_j/(a_j+1))
        # with h_ell the complete homogeneous symmetric polynomial.
        cached = self._vectors.get(t)
        if cached is not None and len(cached) > upto:
            return cached
        active = self.omega.active
        re = [Fraction(0)] * (upto + 1)
        im = [Fraction(0)] * (upto + 1)
        for (a, b), c in self.derived(t).items():
            if a != b:
                continue
            # H_n = h_n R^n with R = prod (a_j + 1), kept in integers
            R = 1
            H = [1] + [0] * upto
            for j in active:
                r = a[j] + 1
                Ij = self.I[j]
                new = [1] + [0] * upto
                rn = 1
                for n in range(1, upto + 1):
                    rn *= r
                    new[n] = H[n] * rn + Ij * R * new[n - 1]
                H = new
                R *= r
            denominator = R
            for n in range(upto + 1):
                if H[n]:
                    w = Fraction(H[n], denominator)
                    if c.re:
                        re[n] += c.re * w
                    if c.im:
                        im[n] += c.im * w
                denominator *= R
        prefactor = polydisc_prefactor(len(active))
        out = [
            prefactor * (GaussianRational(re[n], im[n]) * ((-1) ** n * factorial(n))) for n in range(upto + 1)
        ]
        self._vectors[t] = out
        return out

    def log_integral_reference(self, ell: int, t: int) -> ExactValue:
        """Same integral through the expanded log-polynomial and the moment table."""
        D = self.derived(t)
        if not D:
            return ExactValue()
        Q = LogPolynomial.log_power_sum(self.I, ell) * D
        return integrate_logpoly(Q, self.omega.frozen)

    def derivative(self, k: int, ell_min: int = 0) -> ExactValue:
        """g^{(k)}(0) = sum_l C(k,l) (-2)^{k-l} int (log|z^I|^2)^l d^{J+K}(psi phi^{k-l})."""
        total = ExactValue()
        for ell in range(ell_min, k + 1):
            t = k - ell
            if t and not self.omega.phi:
                continue
            val = self.log_integral(ell, t)
            if val:
                total = total + val * (comb(k, ell) * (-2) ** t)
        return total


def g_derivative(omega: QMIntegrand, I: Sequence[int], k: int) -> ExactValue:
    return _GTaylor(omega, I).derivative(k)


def g_derivative_reference(omega: QMIntegrand, I: Sequence[int], k: int) -> ExactValue:
    """g^{(k)}(0) via explicit multinomial expansion into log-polynomials."""
    g = _GTaylor(omega, I)
    total = ExactValue()
    for ell in range(k + 1):
        t = k - ell
        if t and not omega.phi:
            continue
        val = g.log_integral_reference(ell, t)
        if val:
            total = total + val * (comb(k, ell) * (-2) ** t)
    return total


def g_derivatives(omega: QMIntegrand, I: Sequence[int], upto: int) -> List[ExactValue]:
    g = _GTaylor(omega, I)
    return [g.derivative(k) for k in range(upto + 1)]


@dataclass(frozen=True)
class CoefficientReport:
    """Coefficients ``C[r]`` of ``lam^{-r}`` (r = 0..kappa) of the bare integral
    ``int |s|^{2 lam} omega ^ xi``; ``o_s`` is reported separately."""

    C: Dict[int, ExactValue]
    kappa: int
    p: int
    o_s: int
    pathway: str = "continuation"

    def window(self) -> LaurentWindow:
        return LaurentWindow(-self.kappa, tuple(self.C[r] for r in range(self.kappa, -1, -1)), 0)

    def to_json(self) -> dict:
        return {
            "pathway": self.pathway,
            "kappa": self.kappa,
            "p": self.p,
            "o_s": self.o_s,
            "coefficients": {f"C_{-r}": self.C[r].to_json() for r in range(self.kappa, -1, -1)},
        }


def laurent_coeffs(omega: QMIntegrand, section: Section) -> CoefficientReport:
    """C_{-r} = (-1)^{|J|+|K|} sum_{k=p-kappa}^{p-r} h_{p-r-k} g^{(k)}(0) / k!."""
    pole = omega.pole
    o_s = order_factor(section, pole)
    kap = kappa(pole)
    p = p_of(pole)
    hf = h_factor(section.I, pole.J, pole.K)
    h_taylor = hf.taylor(p)
    g = _GTaylor(omega, section.I, p)
    g_vals = {k: g.derivative(k) for k in range(p - kap, p + 1)}
    sign = -1 if (sum(pole.J) + sum(pole.K)) % 2 else 1
    C = {}
    for r in range(kap + 1):
        total = ExactValue()
        for k in range(p - kap, p - r + 1):
            hk = h_taylor[p - r - k]
            if hk and g_vals[k]:
                total = total + g_vals[k] * (Fraction(hk) / factorial(k))
        C[r] = total * sign
    return CoefficientReport(C, kap, p, o_s)


def _bang(multi_index) -> int:
    out = 1
    for x in multi_index:
        if x:
            out *= factorial(x - 1)
    return out


def canonical_current(omega: QMIntegrand) -> ExactValue:
    """Section- and metric-free formula for the leading coefficient::

        (-1)^p / ((J-1_J)! (K-1_K)!) int (prod_{j polar} log|z_j|^2) d^{J+K} psi dz^dzbar
    """
    pole = omega.pole
    p = p_of(pole)
    weights = [1 if j in pole.support else 0 for j in range(omega.dim)]
    m = tuple(weights)
    D = omega.psi.filter_charge(tuple(x - y for x, y in zip(pole.J, pole.K))).derivative(pole.J, pole.K)
    Q = LogPolynomial.log_monomial(omega.dim, m) * D
    value = integrate_logpoly(Q, omega.frozen)
    return value * (Fraction((-1) ** p) / (_bang(pole.J) * _bang(pole.K)))


def principal_value(omega: QMIntegrand, section: Section) -> ExactValue:
    if kappa(omega.pole) > 0:
        raise ValidationError("principal value requires a semi-meromorphic integrand (kappa = 0)")
    report = laurent_coeffs(omega, section)
    return report.C[0]


@dataclass(frozen=True)
class PolarForm:
    """Semi-meromorphic form ``numerator / z_var^order``."""

    numerator: ConjForm
    order: int
    var: int = 0

    @property
    def dim(self) -> int:
        return self.numerator.dim


def pv_of_top_form(form: ConjForm, order: int, var: int = 0) -> ExactValue:
    """Principal value of ``form / z_var^order`` for a top-degree ``form``."""
    d = form.dim
    psi = form.top_coefficient() if form else ConjPolynomial.zero(d)
    J = [0] * d
    J[var] = order
    pole = PoleData(tuple(J), (0,) * d)
    return principal_value(QMIntegrand(pole, psi), Section.minimal(pole))


def pairing_dbar_pv(alpha: PolarForm, xi: ConjForm) -> ExactValue:
    """<dbar[alpha], xi> := (-1)^{p+q+1} <[alpha], dbar xi>."""
    d = alpha.dim
    p, q = alpha.numerator.bidegree
    if xi:
        if xi.bidegree != (d - p, d - q - 1):
            raise ValidationError(f"test form must have bidegree {(d - p, d - q - 1)}, got {xi.bidegree}")
    else:
        return ExactValue()
    value = pv_of_top_form(wedge(alpha.numerator, dbar(xi)), alpha.order, alpha.var)
    return -value if (p + q) % 2 == 0 else value


def shifted_F(omega: QMIntegrand, section: Section, N: int = 0) -> RationalFunctionLambda:
    """F(lam) built from the N-shifted representation (phi must vanish)::

        F = o(s) (-1)^{|J'|+|K'|} h'(lam+N) / (lam+N)^{p'} int |z^I|^{2(lam+N)} d^{J'+K'} psi

    with ``J' = J + N I``, ``K' = K + N I``.
    """
    if omega.phi:
        raise ValidationError("the shifted representation is only built for phi = 0")
    I = section.I
    pole = omega.pole
    o_s = order_factor(section, pole)
    J2 = tuple(x + N * i for x, i in zip(pole.J, I))
    K2 = tuple(x + N * i for x, i in zip(pole.K, I))
    constant, factors = _h_factors(I, J2, K2, shift=N)
    p2 = sum(1 for x in J2 if x) + sum(1 for x in K2 if x)
    sign = -1 if (sum(J2) + sum(K2)) % 2 else 1
    prefactor = RationalFunctionLambda(
        [((ExactValue.scalar(Fraction(constant) * o_s * sign),), factors + ((1, N),) * p2)]
    )
    if omega.bump is not None:
        for j in range(omega.dim):
            if omega.bump[j] < J2[j] + K2[j]:
                raise ValidationError(
                    f"bump exponent {omega.bump[j]} too small for shift {N} at coordinate {j}", "bump_exponents"
                )
    charge = tuple(x - y for x, y in zip(J2, K2))
    D = omega.psi.filter_charge(charge).derivative(J2, K2)
    integral = RationalFunctionLambda()
    active = omega.active
    osign = orientation_sign(len(active))
    for (a, b), c in D.items():
        if a != b:
            continue
        term = RationalFunctionLambda.constant(ExactValue.scalar(c * osign))
        for j in active:
            term = term * lambda_moment(I[j], a[j] + N * I[j])
        integral = integral + term
    return prefactor * integral
