"""Local model of a quasi-meromorphic integrand on the unit polydisc.

The integrand is ``psi / (z^J zbar^K) dz ^ dzbar`` where ``psi`` is a
polynomial numerator times the bump ``prod_j (1 - z_j zbar_j)^{q_j}``; the
section is the monomial ``s = z^I`` and the metric weight is ``exp(-phi)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import FrozenSet, List, Optional, Sequence, Tuple

from .algebra import ConjPolynomial

__all__ = [
    "ValidationError",
    "PoleData",
    "Section",
    "QMIntegrand",
    "Stratification",
    "kappa",
    "p_of",
    "order_factor",
    "stratification",
    "assemble",
]


class ValidationError(ValueError):
    """Invalid problem data; ``field`` names the offending input."""

    def __init__(self, message: str, field: Optional[str] = None):
        super().__init__(f"{field}: {message}" if field else message)
        self.field = field


def _multi_index(values: Sequence[int], dim: int, name: str) -> Tuple[int, ...]:
    values = tuple(values)
    if len(values) != dim:
        raise ValidationError(f"expected length {dim}, got {len(values)}", name)
    for i, v in enumerate(values):
        if isinstance(v, bool) or not isinstance(v, int) or v < 0:
            raise ValidationError(f"entry {i} must be a non-negative integer, got {v!r}", name)
    return values


@dataclass(frozen=True)
class PoleData:
    """Holomorphic (J) and anti-holomorphic (K) pole orders per coordinate."""

    J: Tuple[int, ...]
    K: Tuple[int, ...]

    def __post_init__(self):
        if len(self.J) != len(self.K):
            raise ValidationError("holo_pole and anti_pole must have the same length")
        _multi_index(self.J, len(self.J), "holo_pole")
        _multi_index(self.K, len(self.K), "anti_pole")

    @classmethod
    def smooth(cls, dim: int) -> "PoleData":
        return cls((0,) * dim, (0,) * dim)

    @property
    def dim(self) -> int:
        return len(self.J)

    @property
    def holomorphic_support(self) -> FrozenSet[int]:
        return frozenset(j for j, x in enumerate(self.J) if x)

    @property
    def anti_support(self) -> FrozenSet[int]:
        return frozenset(j for j, x in enumerate(self.K) if x)

    @property
    def support(self) -> FrozenSet[int]:
        return self.holomorphic_support | self.anti_support

    @property
    def two_sided(self) -> FrozenSet[int]:
        return self.holomorphic_support & self.anti_support

    def without(self, S) -> "PoleData":
        J = list(self.J)
        K = list(self.K)
        for j in S:
            J[j] = K[j] = 0
        return PoleData(tuple(J), tuple(K))

    def swapped(self) -> "PoleData":
        return PoleData(self.K, self.J)


@dataclass(frozen=True)
class Section:
    """Monomial section ``s = z^I``."""

    I: Tuple[int, ...]

    def __post_init__(self):
        _multi_index(self.I, len(self.I), "section_exponents")

    @property
    def dim(self) -> int:
        return len(self.I)

    def check_against(self, pole: PoleData):
        if self.dim != pole.dim:
            raise ValidationError(f"expected length {pole.dim}, got {self.dim}", "section_exponents")
        for j in range(pole.dim):
            polar = pole.J[j] + pole.K[j] > 0
            if polar and self.I[j] < 1:
                raise ValidationError(
                    f"section must vanish on the polar coordinate hyperplane z_{j}=0 (I_{j} >= 1)",
                    "section_exponents",
                )
            if not polar and self.I[j] != 0:
                raise ValidationError(
                    f"section may only vanish on polar hyperplanes (I_{j} must be 0)", "section_exponents"
                )

    @classmethod
    def minimal(cls, pole: PoleData) -> "Section":
        return cls(tuple(1 if j in pole.support else 0 for j in range(pole.dim)))


def kappa(pole: PoleData) -> int:
    """Number of coordinates carrying both holomorphic and anti-holomorphic poles."""
    return len(pole.two_sided)


def p_of(pole: PoleData) -> int:
    p = len(pole.holomorphic_support) + len(pole.anti_support)
    assert p - kappa(pole) == len(pole.support)
    return p


def order_factor(section: Section, pole: PoleData) -> int:
    """Product of the section's vanishing orders over the two-sided polar components."""
    section.check_against(pole)
    out = 1
    for j in pole.two_sided:
        out *= section.I[j]
    return out


@dataclass(frozen=True)
class Stratification:
    """Strata ``H_0 ⊇ H_1 ⊇ ...``; stratum ``k`` lists the coordinate
    subspaces ``{z_S = 0}`` (as index sets ``S``) whose union it is."""

    strata: Tuple[Tuple[FrozenSet[int], ...], ...]
    kappa: int
    E: FrozenSet[int]


def stratification(pole: PoleData) -> Stratification:
    E = pole.two_sided
    strata = []
    for k in range(len(E) + 1):
        strata.append(tuple(frozenset(S) for S in combinations(sorted(E), k)))
    return Stratification(tuple(strata), len(E), E)


@dataclass(frozen=True)
class QMIntegrand:
    """``psi / (z^J zbar^K) dz^dzbar`` with metric weight ``phi``.

    ``psi`` is the fully expanded numerator (bump included).  ``frozen`` lists
    variables already restricted to zero; integrals then run over the
    remaining coordinates only.
    """

    pole: PoleData
    psi: ConjPolynomial
    phi: ConjPolynomial = None
    bump: Optional[Tuple[int, ...]] = None
    numerator: Optional[ConjPolynomial] = None
    frozen: FrozenSet[int] = field(default_factory=frozenset)

    def __post_init__(self):
        if self.phi is None:
            object.__setattr__(self, "phi", ConjPolynomial.zero(self.psi.dim))
        if self.psi.dim != self.pole.dim or self.phi.dim != self.pole.dim:
            raise ValidationError("dimension mismatch between numerator, metric weight and pole data")
        object.__setattr__(self, "frozen", frozenset(self.frozen))

    @property
    def dim(self) -> int:
        return self.pole.dim

    @property
    def active(self) -> Tuple[int, ...]:
        return tuple(j for j in range(self.dim) if j not in self.frozen)

    @property
    def kappa(self) -> int:
        return kappa(self.pole)

    @property
    def p(self) -> int:
        return p_of(self.pole)

    def with_psi(self, psi: ConjPolynomial) -> "QMIntegrand":
        return QMIntegrand(self.pole, psi, self.phi, self.bump, None, self.frozen)

    def with_phi(self, phi: ConjPolynomial) -> "QMIntegrand":
        return QMIntegrand(self.pole, self.psi, phi, self.bump, self.numerator, self.frozen)

    def with_pole(self, pole: PoleData) -> "QMIntegrand":
        return QMIntegrand(pole, self.psi, self.phi, self.bump, self.numerator, self.frozen)

    def conjugate(self) -> "QMIntegrand":
        """Conjugate numerator with J and K swapped (phi is real and unchanged)."""
        return QMIntegrand(
            self.pole.swapped(),
            self.psi.conjugate(),
            self.phi,
            self.bump,
            None if self.numerator is None else self.numerator.conjugate(),
            self.frozen,
        )


def assemble(
    dimension: int,
    holo_pole: Sequence[int],
    anti_pole: Sequence[int],
    numerator: ConjPolynomial,
    bump_exponents: Sequence[int],
    metric_weight: Optional[ConjPolynomial] = None,
    section_exponents: Optional[Sequence[int]] = None,
) -> Tuple[QMIntegrand, Optional[Section]]:
    """Validate raw problem data and expand ``psi = P * prod (1 - z_j zbar_j)^{q_j}``."""
    if isinstance(dimension, bool) or not isinstance(dimension, int) or dimension < 1:
        raise ValidationError(f"must be a positive integer, got {dimension!r}", "dimension")
    J = _multi_index(holo_pole, dimension, "holo_pole")
    K = _multi_index(anti_pole, dimension, "anti_pole")
    q = _multi_index(bump_exponents, dimension, "bump_exponents")
    pole = PoleData(J, K)
    for j in range(dimension):
        # derivatives of order < J_j + K_j must vanish on |z_j| = 1
        need = max(J[j] + K[j], 1)
        if q[j] < need:
            raise ValidationError(
                f"bump exponent {q[j]} < max(J+K, 1) = {need} at coordinate {j}", "bump_exponents"
            )
    if numerator.dim != dimension:
        raise ValidationError(f"numerator dimension {numerator.dim} != {dimension}", "numerator")
    if metric_weight is None:
        metric_weight = ConjPolynomial.zero(dimension)
    if metric_weight.dim != dimension:
        raise ValidationError(f"metric weight dimension {metric_weight.dim} != {dimension}", "metric_weight")
    if not metric_weight.is_real():
        raise ValidationError("metric weight not real (coefficient(a,b) must equal conj(coefficient(b,a)))", "metric_weight")
    section = None
    if section_exponents is not None:
        section = Section(_multi_index(section_exponents, dimension, "section_exponents"))
        section.check_against(pole)
    psi = numerator * ConjPolynomial.bump(dimension, q)
    return QMIntegrand(pole, psi, metric_weight, q, numerator), section
