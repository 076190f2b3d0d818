import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qmcurrents.exact import (
    ExactValue,
    GaussianRational,
    LaurentWindow,
    RationalFunctionLambda,
    format_rational,
    parse_rational,
)
from qmcurrents.exact import cauchy_product

from conftest import pi_i

R = RationalFunctionLambda

rationals = st.builds(Fraction, st.integers(-50, 50), st.integers(1, 12))
gaussians = st.builds(GaussianRational, rationals, rationals)


def test_pi_grading():
    assert pi_i(2) + pi_i(-2) == ExactValue()
    assert not (pi_i(2) + pi_i(-2))
    assert pi_i(1) * pi_i(1) == ExactValue.scalar(-1, 2)
    assert pi_i(2) * Fraction(3, 2) == pi_i(3)


def test_text_rendering():
    assert str(pi_i(-2)) == "-2·π·i"
    assert str(ExactValue()) == "0"
    assert format_rational(Fraction(-3, 4)) == "-3/4"
    assert parse_rational("6/4") == Fraction(3, 2)


def test_json_roundtrip():
    v = pi_i(Fraction(-2, 3)) + ExactValue.scalar(GaussianRational(1, 5), 2) + 7
    assert ExactValue.from_json(v.to_json()) == v
    c = GaussianRational(Fraction(1, 3), -2)
    assert GaussianRational.from_json(c.to_json()) == c


@given(gaussians, gaussians, gaussians)
def test_gaussian_field_laws(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b).conjugate() == a.conjugate() * b.conjugate()
    if b:
        assert (a / b) * b == a


@given(gaussians, st.integers(0, 3))
def test_exact_value_conjugation(c, k):
    v = ExactValue.scalar(c, k)
    assert v.conjugate().conjugate() == v
    assert (v * v.conjugate()).conjugate() == v * v.conjugate()


def test_laurent_three_poles():
    f = R.simple(1, 1, 0) + R.simple(-2, 1, 1) + R.simple(1, 1, 2)
    w = f.laurent_at_zero(0)
    assert w.lowest_order == -1
    assert [w[-1], w[0]] == [ExactValue.coerce(1), ExactValue.coerce(Fraction(-3, 2))]
    assert f.poles() == [(0, 1), (-1, 1), (-2, 1)] or sorted(f.poles()) == sorted([(0, 1), (-1, 1), (-2, 1)])


def test_laurent_geometric_and_double_pole():
    w = R.simple(1, 1, 1).laurent_at_zero(2)
    assert [w[n] for n in range(3)] == [ExactValue.coerce(1), ExactValue.coerce(-1), ExactValue.coerce(1)]
    w = R.simple(1, 1, 0, power=2).laurent_at_zero(0)
    assert w.lowest_order == -2
    assert [w[-2], w[-1], w[0]] == [ExactValue.coerce(1), ExactValue(), ExactValue()]


def test_pole_cancellation():
    assert (R.simple(1, 1, 1) - R.simple(1, 1, 1)).poles() == []
    f = R([((0, 1), ((1, 0), (2, -1)))])  # lam / (lam (2 lam - 1))
    assert f.poles() == [(Fraction(1, 2), 1)]
    assert f.pole_order_at(0) == 0


def _random_rf(rng):
    terms = []
    for _ in range(rng.randint(1, 8)):
        num = tuple(Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(rng.randint(1, 2)))
        den = tuple((rng.randint(1, 3), rng.randint(-2, 3)) for _ in range(rng.randint(0, 2)))
        terms.append((num, den))
    return R(terms)


@pytest.mark.parametrize("seed", range(15))
def test_laurent_is_multiplicative(seed):
    rng = random.Random(seed)
    f, g = _random_rf(rng), _random_rf(rng)
    lo_f, lo_g = -f.pole_order_at(0), -g.pole_order_at(0)
    wf = f.laurent_at_zero(3 + lo_f, lowest=lo_f) if lo_f <= 0 else f.laurent_at_zero(3)
    wg = g.laurent_at_zero(3 + lo_g, lowest=lo_g) if lo_g <= 0 else g.laurent_at_zero(3)
    prod = cauchy_product(wf, wg)
    direct = (f * g).laurent_at_zero(prod.validity_order, lowest=prod.lowest_order)
    assert all(direct[n] == prod[n] for n in range(prod.lowest_order, prod.validity_order + 1))


@pytest.mark.parametrize("seed", range(10))
def test_evaluate_matches_window(seed):
    rng = random.Random(100 + seed)
    f = _random_rf(rng)
    point = Fraction(rng.randint(5, 9), 7)
    if f.pole_order_at(point):
        pytest.skip("random point hit a pole")
    w = f.laurent_at(point, 0)
    assert w[0] == f.evaluate(point)


def test_conjugate_window():
    w = LaurentWindow(-1, (pi_i(2), ExactValue.scalar(GaussianRational(1, 1))), 0)
    assert w.conjugate()[-1] == pi_i(-2)
    assert w.pole_order == 1
