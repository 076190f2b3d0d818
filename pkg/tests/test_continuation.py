import random
from fractions import Fraction
from itertools import product
from math import factorial

import pytest

from qmcurrents.algebra import ConjForm, ConjPolynomial
from qmcurrents.continuation import (
    PolarForm,
    canonical_current,
    g_derivative,
    g_derivative_reference,
    h_factor,
    laurent_coeffs,
    pairing_dbar_pv,
    principal_value,
    shifted_F,
    verify_lemma_multi,
)
from qmcurrents.corpus import random_instance, random_poly
from qmcurrents.exact import ExactValue
from qmcurrents.model import PoleData, QMIntegrand, Section, ValidationError, assemble
from qmcurrents.oracle import build_F

from conftest import pi_i

Z, ZB = ConjPolynomial.z, ConjPolynomial.zbar
ONE = ConjPolynomial.constant(1)


def test_h_examples():
    assert h_factor((2,), (3,), (1,)).at_zero() == Fraction(1, 8)
    hf = h_factor((1,), (1,), (1,))
    assert hf.factors == () and hf.constant == 1
    hf = h_factor((1,), (2,), (0,))
    assert hf.p == 1 and hf.poles() == [(1, 1)]


@pytest.mark.parametrize("I,J,K", [((2,), (3,), (1,)), ((1, 3), (2, 0), (1, 3)), ((3, 2, 1), (1, 2, 3), (3, 0, 2))])
def test_h_at_zero_closed_form(I, J, K):
    hf = h_factor(I, J, K)
    expected = Fraction((-1) ** ((sum(J) + sum(K) - hf.p) % 2))
    for orders in (J, K):
        for j, x in enumerate(orders):
            if x:
                expected /= factorial(x - 1) * I[j]
    assert hf.at_zero() == expected


def test_lemma_examples():
    assert verify_lemma_multi((1,), (1,), (1,))
    assert verify_lemma_multi((1,), (2,), (0,))


def test_lemma_random_small():
    rng = random.Random(3)
    for _ in range(30):
        d = rng.randint(1, 3)
        J = tuple(rng.randint(0, 3) for _ in range(d))
        K = tuple(rng.randint(0, 3) for _ in range(d))
        I = tuple(rng.randint(1, 3) if J[j] or K[j] else rng.randint(0, 3) for j in range(d))
        assert verify_lemma_multi(I, J, K)


def test_g_derivatives_golden(golden):
    omega, section = golden
    assert [g_derivative(omega, section.I, k) for k in range(3)] == [ExactValue(), pi_i(-2), pi_i(6)]


def test_golden_coefficients(golden):
    omega, section = golden
    report = laurent_coeffs(omega, section)
    assert report.C[1] == pi_i(-2)
    assert report.C[0] == pi_i(3)
    assert report.o_s == 1
    assert canonical_current(omega) == pi_i(-2)


def test_semi_meromorphic_principal_value():
    omega = QMIntegrand(PoleData((1,), (0,)), Z(1, 0) * ConjPolynomial.bump(1, (2,)))
    section = Section((1,))
    report = laurent_coeffs(omega, section)
    assert report.kappa == 0 and set(report.C) == {0}
    assert principal_value(omega, section) == pi_i(Fraction(-2, 3))
    assert canonical_current(omega) == pi_i(Fraction(-2, 3))


def test_principal_value_rejects_two_sided(golden):
    with pytest.raises(ValidationError):
        principal_value(*golden)


def test_smooth_quotient_and_no_pole():
    psi = Z(1, 0) * ZB(1, 0) * ConjPolynomial.bump(1, (1,))
    omega = QMIntegrand(PoleData((1,), (0,)), psi)
    plain = QMIntegrand(PoleData((0,), (0,)), ZB(1, 0) * ConjPolynomial.bump(1, (1,)))
    assert principal_value(omega, Section((2,))) == principal_value(plain, Section((0,)))
    smooth = QMIntegrand(PoleData((0,), (0,)), ConjPolynomial.bump(1, (1,)))
    assert principal_value(smooth, Section((0,))) == pi_i(-1)


@pytest.mark.parametrize("m,n", [(1, 1), (2, 1), (1, 3), (3, 2)])
def test_one_variable_canonical_current(m, n):
    rng = random.Random(m * 10 + n)
    numerator = random_poly(rng, 1, 3, (m - n,))
    omega, _ = assemble(1, (m,), (n,), numerator, (m + n,))
    d = omega.psi.derivative((m - 1,), (n - 1,))
    expected = pi_i(-2) * ExactValue.coerce(d.constant_term()) / (factorial(m - 1) * factorial(n - 1))
    assert canonical_current(omega) == expected


@pytest.mark.parametrize("seed", range(40))
def test_g_matches_reference(seed):
    rng = random.Random(seed)
    inst = random_instance(rng, rng.randint(1, 3), 2, 2)
    k = rng.randint(0, inst.omega.p + 1)
    assert g_derivative(inst.omega, inst.section.I, k) == g_derivative_reference(inst.omega, inst.section.I, k)


@pytest.mark.parametrize("seed", range(15))
def test_shifted_representation(seed):
    rng = random.Random(seed)
    d = rng.randint(1, 2)
    inst = random_instance(rng, d, 2, 2, with_phi=False, extra_bump=6)
    omega, section = inst.omega, inst.section
    F0 = shifted_F(omega, section, 0)
    F1 = shifted_F(omega, section, 1)
    kap = omega.kappa
    w0 = F0.laurent_at_zero(2, lowest=-kap)
    w1 = F1.laurent_at_zero(2, lowest=-kap)
    assert all(w0[n] == w1[n] for n in range(-kap, 3))
    w = build_F(omega, section).laurent_at_zero(0, lowest=-kap)
    assert all(w[n] == w0[n] for n in range(-kap, 1))


def test_shifted_representation_needs_bump():
    omega, section = assemble(1, (1,), (1,), ONE, (2,), None, (1,))
    with pytest.raises(ValidationError):
        shifted_F(omega, section, 1)


def test_pairing_dbar_pv_degenerate():
    bump = ConjPolynomial.bump(1, (2,))
    alpha = PolarForm(ConjForm.basis(1, (0,), (), bump), 1, 0)
    assert pairing_dbar_pv(alpha, ConjForm(1)) == ExactValue()
    # smooth closed alpha: Stokes gives zero
    smooth = PolarForm(ConjForm.basis(1, (0,), (), Z(1, 0) * Z(1, 0)), 0, 0)
    assert pairing_dbar_pv(smooth, ConjForm.function(bump)) == ExactValue()


def test_multiplication_needs_order_two():
    # z {1/(z zbar)} != {1/zbar}: the simple pole is annihilated instead
    xi = (ZB(1, 0) + 1) * ConjPolynomial.bump(1, (3,))
    lhs = canonical_current(QMIntegrand(PoleData((1,), (1,)), Z(1, 0) * xi))
    rhs = canonical_current(QMIntegrand(PoleData((0,), (1,)), xi))
    assert not lhs and rhs
