import random
from itertools import permutations

import pytest

from qmcurrents.algebra import ConjForm, ConjPolynomial, wedge
from qmcurrents.continuation import PolarForm, canonical_current, laurent_coeffs
from qmcurrents.corpus import random_instance, random_poincare_pair, random_poly, random_residue_pair
from qmcurrents.exact import ExactValue, GaussianRational
from qmcurrents.model import PoleData, QMIntegrand, ValidationError, assemble
from qmcurrents.residues import (
    ResidueRepresentative,
    check_aeppli_poincare,
    check_cor_main,
    check_metric_dependence,
    check_rescale,
    check_thm_aeppli,
    check_thm_aeppli2,
    check_thm_residue,
    integrate_representative,
    poincare_res,
    res_aeppli,
    res_aeppli_iter,
    res_dolbeault,
)

from conftest import pi_i

Z, ZB = ConjPolynomial.z, ConjPolynomial.zbar
basis = ConjForm.basis


def test_dolbeault_simple_pole():
    alpha = PolarForm(basis(2, (0,), (1,), ZB(2, 1)), 1, 0)
    rep = res_dolbeault(alpha)
    assert rep.base == {0}
    assert rep.form == basis(2, (), (1,), ZB(2, 1))


def test_dolbeault_cubic_pole():
    b = ConjPolynomial.constant(1, 5)
    alpha = PolarForm(basis(1, (0,), (), Z(1, 0, 2) * b), 3, 0)
    assert res_dolbeault(alpha).form == basis(1, (), (), b)
    smooth = PolarForm(basis(1, (0,), (), b), 0, 0)
    assert not res_dolbeault(smooth).form


def test_poincare_residue():
    assert poincare_res(PolarForm(basis(2, (0, 1)), 1, 0)).form == basis(2, (1,))
    assert poincare_res(PolarForm(basis(2, (0, 1), (), Z(2, 1)), 1, 0)).form == basis(2, (1,), (), Z(2, 1))
    with pytest.raises(ValidationError):
        poincare_res(PolarForm(basis(1, (0,)), 2, 0))


def _per_variable_top(dim, psi):
    form = ConjForm.function(psi)
    for j in range(dim):
        form = wedge(form, basis(dim, (j,), (j,)))
    return form


def test_aeppli_simple_and_double():
    rng = random.Random(1)
    psi = random_poly(rng, 2, 2)
    rep = ResidueRepresentative(frozenset(), _per_variable_top(2, psi), PoleData((1, 1), (1, 1)))
    one = res_aeppli(rep, 0)
    assert one.form == basis(2, (1,), (1,), psi.restrict_zero({0}))
    both = res_aeppli_iter(rep, [0, 1])
    assert both.form == ConjForm.function(psi.restrict_zero({0, 1}))
    assert res_aeppli_iter(rep, []) == rep


def test_aeppli_semi_meromorphic_is_zero():
    rng = random.Random(2)
    psi = random_poly(rng, 1, 3)
    rep = ResidueRepresentative(frozenset(), _per_variable_top(1, psi), PoleData((2,), (0,)))
    assert not res_aeppli(rep, 0).form


def test_aeppli_mixed_orders():
    a = Z(1, 0, 2) + Z(1, 0) * 3 + ZB(1, 0) + 7
    rep = ResidueRepresentative(frozenset(), _per_variable_top(1, a), PoleData((2,), (1,)))
    assert res_aeppli(rep, 0).form == ConjForm.function(ConjPolynomial.constant(1, 3))


def test_aeppli_one_variable_shape():
    # one resolved variable with simple anti-pole: (1/(J-1)!) d^{J-1} psi at 0
    rng = random.Random(4)
    numerator = random_poly(rng, 2, 3)
    omega, _ = assemble(2, (3, 0), (1, 0), numerator, (4, 1))
    rep = res_aeppli_iter(omega, [0])
    expected = omega.psi.derivative((2, 0), (0, 0)).scale(GaussianRational(1, 0) / 2).restrict_zero({0})
    assert rep.form == basis(2, (1,), (1,), expected)


def test_golden_aeppli(golden):
    omega, _ = golden
    report = check_thm_aeppli(omega)
    assert report.lhs == pi_i(-2) and report.rhs == pi_i(-2)
    assert not report.difference
    assert report.to_json()["pass"] is True


def test_aeppli_with_one_sided_residual():
    rng = random.Random(5)
    numerator = random_poly(rng, 2, 3, (0, 2), terms=4)
    omega, _ = assemble(2, (1, 2), (1, 0), numerator, (2, 2))
    assert check_thm_aeppli(omega).passed
    with pytest.raises(ValidationError):
        check_cor_main(omega)


def test_cor_main_two_variables():
    rng = random.Random(6)
    numerator = random_poly(rng, 2, 2, (0, 0), terms=4)
    omega, _ = assemble(2, (1, 1), (1, 1), numerator, (2, 2))
    report = check_cor_main(omega)
    assert report.passed
    assert report.rhs == pi_i(-2) ** 2 * ExactValue.coerce(numerator.constant_term())


@pytest.mark.parametrize("seed", range(12))
def test_resolution_order_independent(seed):
    rng = random.Random(seed)
    inst = random_instance(rng, 3, 2, 2, kind="equal_support")
    omega = inst.omega
    E = sorted(omega.pole.two_sided)
    values = {integrate_representative(res_aeppli_iter(omega, list(o))) for o in permutations(E)}
    assert len(values) == 1
    for o in permutations(E):
        assert check_thm_aeppli2(omega, o).passed


def test_thm_residue_one_variable():
    bump = ConjPolynomial.bump(1, (2,))
    alpha = PolarForm(basis(1, (0,), (), ConjPolynomial.constant(1)), 1, 0)
    report = check_thm_residue(alpha, ConjForm.function(bump))
    assert report.passed
    assert report.details["residue_integral"] == ExactValue.coerce(1)


def test_thm_residue_smooth_alpha():
    rng = random.Random(7)
    alpha = PolarForm(basis(1, (0,), (), random_poly(rng, 1, 2)), 0, 0)
    report = check_thm_residue(alpha, ConjForm.function(ConjPolynomial.bump(1, (1,))))
    assert report.passed and not report.details["residue_integral"]


@pytest.mark.parametrize("seed", range(10))
def test_thm_residue_random(seed):
    rng = random.Random(seed)
    alpha, xi = random_residue_pair(rng, 2, 2, 2)
    assert check_thm_residue(alpha, xi).passed


def test_aeppli_poincare_examples():
    a = Z(1, 0, 2) + Z(1, 0) * ZB(1, 0) + 2
    alpha = PolarForm(basis(1, (0,), (), a), 2, 0)
    beta_const = PolarForm(basis(1, (0,), (), ConjPolynomial.constant(1, 3)), 1, 0)
    beta = PolarForm(basis(1, (0,), (), Z(1, 0) + 3), 1, 0)
    assert check_aeppli_poincare(alpha, beta_const).passed
    assert check_aeppli_poincare(alpha, beta).passed
    zero = PolarForm(ConjForm(1), 1, 0)
    report = check_aeppli_poincare(alpha, zero)
    assert report.passed and not report.lhs


@pytest.mark.parametrize("seed", range(10))
def test_aeppli_poincare_random(seed):
    rng = random.Random(seed)
    report = check_aeppli_poincare(*random_poincare_pair(rng, 2, 2, 2))
    assert report.passed and report.details["representatives_equal"]


def test_metric_dependence_golden(golden):
    omega, section = golden
    phi = Z(1, 0) * ZB(1, 0)
    reports = {r.check: r for r in check_metric_dependence(omega, section, phi)}
    assert all(r.passed for r in reports.values())
    c = [laurent_coeffs(omega.with_phi(phi.scale(t)), section) for t in range(3)]
    assert c[0].C[1] == c[1].C[1] == c[2].C[1]
    assert c[2].C[0] - c[1].C[0] == c[1].C[0] - c[0].C[0]
    # slope 4 pi i (phi psi)(0) with (phi psi)(0) = 0 here
    assert reports["metric_constant_shift"].rhs == ExactValue()


def test_metric_dependence_zero_phi(golden):
    omega, section = golden
    for report in check_metric_dependence(omega, section, ConjPolynomial.zero(1)):
        assert report.passed


def test_metric_shift_nonzero():
    omega, section = assemble(1, (1,), (1,), ConjPolynomial.constant(1), (2,), None, (1,))
    phi = ConjPolynomial.constant(1, 1)
    shift = {r.check: r for r in check_metric_dependence(omega, section, phi)}["metric_constant_shift"]
    assert shift.passed and shift.lhs == pi_i(4)


@pytest.mark.parametrize("seed", range(10))
def test_rescale_invariance(seed):
    rng = random.Random(seed)
    inst = random_instance(rng, 2, 2, 2)
    for c in (GaussianRational(0, 1), GaussianRational(-1, 0), GaussianRational(0, -1)):
        for j in range(2):
            assert all(r.passed for r in check_rescale(inst.omega, j, c))
    with pytest.raises(ValidationError):
        check_rescale(inst.omega, 0, 2)


def test_integrate_representative_empty():
    rep = ResidueRepresentative(frozenset({0}), ConjForm(1), PoleData.smooth(1))
    assert integrate_representative(rep) == ExactValue()
    omega = QMIntegrand(PoleData.smooth(1), ConjPolynomial.bump(1, (1,)))
    assert integrate_representative(res_aeppli_iter(omega, [])) == canonical_current(omega)
