"""Closed-form integrals over the unit polydisc.

Per variable, with ``u = |z|^2`` and ``dz ^ dzbar = -2i dA``::

    int_{|z|<=1} |z|^{2a} (log|z|^2)^m dz^dzbar = -2*pi*i * int_0^1 u^a (log u)^m du
                                               = -2*pi*i * (-1)^m m! / (a+1)^{m+1}

and the monomial ``z^a zbar^b`` integrates to zero unless ``a == b``.  The
n-variable form ``dz ^ dzbar`` adds the reordering sign ``(-1)^{n(n-1)/2}``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import FrozenSet, Iterable, Sequence

from .algebra import LogPolynomial, orientation_sign
from .exact import ExactValue, GaussianRational, RationalFunctionLambda, ZERO

__all__ = ["MomentRequest", "polydisc_moment", "polydisc_prefactor", "integrate_logpoly", "integrate_polynomial", "lambda_moment"]

_MINUS_2I = GaussianRational(0, -2)


@dataclass(frozen=True)
class MomentRequest:
    a: tuple
    b: tuple
    m: tuple
    frozen: FrozenSet[int] = field(default_factory=frozenset)

    def __post_init__(self):
        if not len(self.a) == len(self.b) == len(self.m):
            raise ValueError("multi-indices must share one length")
        if min(self.a + self.b + self.m, default=0) < 0:
            raise ValueError("exponents must be non-negative")
        for j in self.frozen:
            if self.a[j] or self.b[j] or self.m[j]:
                raise ValueError(f"frozen variable z_{j} occurs in the integrand")


def _radial(a: int, m: int) -> Fraction:
    # int_0^1 u^a (log u)^m du
    return Fraction((-1) ** m * factorial(m), (a + 1) ** (m + 1))


def polydisc_prefactor(n: int) -> ExactValue:
    # (-1)^{n(n-1)/2} (-2 i)^n pi^n
    return ExactValue.scalar(_MINUS_2I ** n * orientation_sign(n), n)


def polydisc_moment(req: MomentRequest) -> ExactValue:
    """Integral of ``z^a zbar^b prod (log|z_j|^2)^{m_j} dz^dzbar`` over the
    non-frozen coordinates of the unit polydisc."""
    d = len(req.a)
    active = [j for j in range(d) if j not in req.frozen]
    value = Fraction(1)
    for j in active:
        if req.a[j] != req.b[j]:
            return ExactValue()
        value *= _radial(req.a[j], req.m[j])
    return polydisc_prefactor(len(active)) * value


def integrate_logpoly(Q: LogPolynomial, frozen: Iterable[int] = ()) -> ExactValue:
    """Linear extension of :func:`polydisc_moment` over the terms of ``Q``."""
    frozen = frozenset(frozen)
    active = [j for j in range(Q.dim) if j not in frozen]
    total = ZERO
    for (a, b, m), c in Q.items():
        for j in frozen:
            if a[j] or b[j] or m[j]:
                raise ValueError(f"frozen variable z_{j} occurs in the integrand")
        value = 1
        for j in active:
            if a[j] != b[j]:
                value = 0
                break
            value *= _radial(a[j], m[j])
        if value:
            total = total + c * value
    return polydisc_prefactor(len(active)) * total


def integrate_polynomial(P, frozen: Iterable[int] = ()) -> ExactValue:
    return integrate_logpoly(LogPolynomial.from_polynomial(P), frozen)


def lambda_moment(I_j: int, s: int, m: int = 0, s_bar: int = None) -> RationalFunctionLambda:
    """``int_{|z|<=1} |z|^{2 lam I_j} z^s zbar^{s_bar} (log|z|^2)^m dz^dzbar`` as a
    rational function of lam (continued from Re lam >> 0)."""
    if s_bar is None:
        s_bar = s
    if s != s_bar:
        return RationalFunctionLambda()
    c = ExactValue.scalar(_MINUS_2I * ((-1) ** m * factorial(m)), 1)
    if I_j == 0:
        if s < 0:
            raise ValueError("negative exponent without a section factor is not integrable")
        return RationalFunctionLambda.constant(c * Fraction(1, (s + 1) ** (m + 1)))
    return RationalFunctionLambda.simple(c, I_j, s + 1, m + 1)
