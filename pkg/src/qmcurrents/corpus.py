"""Random problem instances for cross-validation and fuzzing.

Numerators mix terms of the charge ``a - b = J - K`` (the only ones that
survive angular integration) with arbitrary terms, so that the checked
quantities are rarely zero.  All sizes are per-variable degrees.
"""
from __future__ import annotations

import random
from fractions import Fraction
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

from .algebra import ConjForm, ConjPolynomial
from .continuation import PolarForm
from .exact import GaussianRational
from .model import PoleData, QMIntegrand, Section

__all__ = [
    "Instance",
    "random_coefficient",
    "random_poly",
    "random_real_poly",
    "random_pole",
    "random_instance",
    "random_residue_pair",
    "random_poincare_pair",
]

KINDS = ("general", "equal_support", "kappa1", "semi")


def random_coefficient(rng: random.Random, real: bool = False) -> GaussianRational:
    re = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.choice([1, 1, 1, 2, 3]))
    im = 0 if real or rng.random() < 0.5 else rng.randint(-2, 2)
    return GaussianRational(re, im)


def random_poly(
    rng: random.Random,
    dim: int,
    max_deg: int,
    charge: Optional[Sequence[int]] = None,
    terms: int = 3,
    holomorphic: bool = False,
) -> ConjPolynomial:
    """Random polynomial of per-variable degree <= max_deg.

    With ``charge`` most terms satisfy ``a - b == charge``.
    """
    out = ConjPolynomial.zero(dim)
    for _ in range(rng.randint(1, terms)):
        a = [0] * dim
        b = [0] * dim
        fits = charge is not None and all(abs(c) <= max_deg for c in charge)
        if fits and rng.random() < 0.75:
            for j in range(dim):
                c = charge[j]
                e = rng.randint(0, (max_deg - abs(c)) // 2)
                a[j] = e + max(c, 0)
                b[j] = e + max(-c, 0)
        else:
            for j in range(dim):
                total = rng.randint(0, max_deg)
                a[j] = total if holomorphic else rng.randint(0, total)
                b[j] = total - a[j]
        out = out + ConjPolynomial.monomial(dim, a, b, random_coefficient(rng))
    if not out:
        return random_poly(rng, dim, max_deg, charge, terms, holomorphic)
    return out


def random_real_poly(rng: random.Random, dim: int, max_deg: int) -> ConjPolynomial:
    P = random_poly(rng, dim, max_deg, charge=(0,) * dim if rng.random() < 0.7 else None)
    return P + P.conjugate()


def random_pole(rng: random.Random, dim: int, max_exp: int, kind: str = "general") -> PoleData:
    J = [0] * dim
    K = [0] * dim
    if kind == "general":
        J = [rng.randint(0, max_exp) for _ in range(dim)]
        K = [rng.randint(0, max_exp) for _ in range(dim)]
    elif kind == "equal_support":
        for j in range(dim):
            if rng.random() < 0.7:
                J[j] = rng.randint(1, max_exp)
                K[j] = rng.randint(1, max_exp)
    elif kind == "kappa1":
        two = rng.randrange(dim)
        J[two] = rng.randint(1, max_exp)
        K[two] = rng.randint(1, max_exp)
        for j in range(dim):
            if j != two and rng.random() < 0.5:
                if rng.random() < 0.5:
                    J[j] = rng.randint(1, max_exp)
                else:
                    K[j] = rng.randint(1, max_exp)
    elif kind == "semi":
        for j in range(dim):
            if rng.random() < 0.6:
                if rng.random() < 0.5:
                    J[j] = rng.randint(1, max_exp)
                else:
                    K[j] = rng.randint(1, max_exp)
    else:
        raise ValueError(f"unknown instance kind {kind!r}")
    return PoleData(tuple(J), tuple(K))


@dataclass(frozen=True)
class Instance:
    omega: QMIntegrand
    section: Section

    def to_problem(self, tasks: Sequence[str]) -> dict:
        from .serialize import problem_to_json

        return problem_to_json(self.omega, self.section, tasks)


def random_instance(
    rng: random.Random,
    dim: int,
    max_exp: int,
    max_deg: int,
    kind: str = "general",
    with_phi: Optional[bool] = None,
    extra_bump: int = 0,
) -> Instance:
    """Pole, minimal admissible bump, charge-biased numerator, optional real metric weight."""
    pole = random_pole(rng, dim, max_exp, kind)
    I = tuple(rng.randint(1, 3) if j in pole.support else 0 for j in range(dim))
    q = tuple(max(pole.J[j] + pole.K[j], 1) + extra_bump for j in range(dim))
    charge = tuple(x - y for x, y in zip(pole.J, pole.K))
    numerator = random_poly(rng, dim, max_deg, charge)
    if with_phi is None:
        with_phi = rng.random() < 0.5
    phi = random_real_poly(rng, dim, 2) if with_phi else ConjPolynomial.zero(dim)
    psi = numerator * ConjPolynomial.bump(dim, q)
    return Instance(QMIntegrand(pole, psi, phi, q, numerator), Section(I))


def random_residue_pair(rng: random.Random, dim: int, max_exp: int, max_deg: int) -> Tuple[PolarForm, ConjForm]:
    """``alpha = N / z_j^m`` of bidegree (p, q) and a bump test form of the complementary bidegree."""
    j = rng.randrange(dim)
    m = rng.randint(1, max_exp)
    p = rng.randint(0, dim)
    q = rng.randint(0, dim - 1)
    A = tuple(sorted(rng.sample(range(dim), p)))
    # keeping dzbar_j out of alpha lets the residue term survive restriction
    pool = [k for k in range(dim) if k != j] if rng.random() < 0.8 else list(range(dim))
    B = tuple(sorted(rng.sample(pool, q)))
    charge = [0] * dim
    charge[j] = rng.choice([m - 1, m - 1, m])
    alpha = ConjForm(dim, {(A, B): random_poly(rng, dim, max(max_deg, m), charge)})
    bump_q = [1] * dim
    bump_q[j] = m + 1
    bump = ConjPolynomial.bump(dim, bump_q)
    A2 = tuple(k for k in range(dim) if k not in A)
    free = [k for k in range(dim) if k not in B]
    drop = j if j in free and rng.random() < 0.7 else rng.choice(free)
    B2 = tuple(k for k in free if k != drop)
    xi_terms = {(A2, B2): random_poly(rng, dim, max_deg, (0,) * dim) * bump}
    if rng.random() < 0.3:
        A3 = tuple(sorted(rng.sample(range(dim), dim - p)))
        B3 = tuple(sorted(rng.sample(range(dim), dim - q - 1)))
        xi_terms[(A3, B3)] = random_poly(rng, dim, max_deg) * bump
    return PolarForm(alpha, m, j), ConjForm(dim, xi_terms)


def random_poincare_pair(rng: random.Random, dim: int, max_exp: int, max_deg: int) -> Tuple[PolarForm, PolarForm]:
    j = rng.randrange(dim)
    m = rng.randint(1, max_exp)
    top = tuple(range(dim))
    charge = [0] * dim
    charge[j] = m - 1
    a = random_poly(rng, dim, max(max_deg, m), charge)
    b = random_poly(rng, dim, max_deg, holomorphic=True) + rng.randint(1, 3)
    alpha = PolarForm(ConjForm(dim, {(top, ()): a}), m, j)
    beta = PolarForm(ConjForm(dim, {(top, ()): b}), 1, j)
    return alpha, beta
