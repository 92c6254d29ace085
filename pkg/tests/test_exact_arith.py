"""Ring-level tests for the exact arithmetic tower."""

import random
from fractions import Fraction

import pytest

from realgw.exact_arith import (
    Polynomial,
    RationalFunction,
    Series,
    poly_gcd,
    series_exp,
    series_log,
    series_pow,
    series_sinc,
)


def rand_fraction(rng):
    return Fraction(rng.randint(-8, 8), rng.randint(1, 9))


def rand_poly(rng, max_deg=4):
    return Polynomial([rand_fraction(rng) for _ in range(rng.randint(0, max_deg))])


def rand_ratfunc(rng):
    den = Polynomial()
    while den.is_zero():
        den = rand_poly(rng)
    return RationalFunction(rand_poly(rng), den)


def rand_series(rng, order=5):
    return Series([rand_fraction(rng) for _ in range(order + 1)], order)


# -- sinc kernels ------------------------------------------------------------


def test_sinc_sin_taylor_coefficients():
    s = series_sinc("sin", 4)
    assert s.coeffs == (1, 0, Fraction(-1, 24), 0, Fraction(1, 1920))


def test_sinc_sinh_taylor_coefficients():
    s = series_sinc("sinh", 2)
    assert s.coeffs == (1, 0, Fraction(1, 24))


def test_sinc_constant_term_only():
    assert series_sinc("sin", 0).coeffs == (1,)


def test_sinc_sign_patterns():
    sin = series_sinc("sin", 12)
    sinh = series_sinc("sinh", 12)
    for g in range(7):
        assert sin[2 * g] * (-1) ** g > 0
        assert sinh[2 * g] > 0
    for k in range(1, 13, 2):
        assert sin[k] == 0 and sinh[k] == 0


def test_sinc_rejects_bad_arguments():
    with pytest.raises(ValueError):
        series_sinc("cos", 4)
    with pytest.raises(ValueError):
        series_sinc("sin", -1)


# -- series powers, exp, log -------------------------------------------------


def test_square_of_sin_kernel_by_hand_multiplication():
    # (1 - t^2/24 + t^4/1920)^2 = 1 - 2/24 t^2 + (1/24^2 + 2/1920) t^4 + ...
    sq = series_pow(series_sinc("sin", 4), 2)
    assert sq[2] == Fraction(-1, 12)
    assert sq[4] == Fraction(1, 576) + Fraction(2, 1920)
    assert sq[4] == Fraction(1, 360)


def test_zeroth_power_is_one():
    s = rand_series(random.Random(1))
    s = s - Series([s.coeffs[0] - 1], s.truncation_order)  # force s(0) = 1
    assert series_pow(s, 0) == Series.one(s.truncation_order)


def test_negative_power_geometric_series():
    s = Series([1, 0, 1], 4)  # 1 + t^2
    inv = series_pow(s, -1)
    assert inv.coeffs == (1, 0, -1, 0, 1)


def test_power_additivity_on_random_series():
    rng = random.Random(7)
    for _ in range(20):
        s = rand_series(rng)
        s = Series([Fraction(1)] + list(s.coeffs[1:]), s.truncation_order)
        a, b = rng.randint(-3, 3), rng.randint(-3, 3)
        assert series_pow(s, a) * series_pow(s, b) == series_pow(s, a + b)


def test_exp_log_round_trip():
    assert series_exp(Series([0], 4)) == Series.one(4)
    s = Series([0, 0, Fraction(1, 24)], 6)
    assert series_log(series_exp(s)) == s


def test_log_of_inverse_sin_kernel_is_alpha_generating_series():
    # The t^2 coefficient of log(1 / (sin kernel)) is 1/24.
    inv = series_pow(series_sinc("sin", 6), -1)
    logged = series_log(inv)
    assert logged[2] == Fraction(1, 24)
    assert logged[4] == Fraction(1, 2880)


def test_exp_log_preconditions():
    with pytest.raises(ValueError):
        series_exp(Series([1, 1], 2))
    with pytest.raises(ValueError):
        series_log(Series([0, 1], 2))


def test_series_parity_flag_enforced():
    with pytest.raises(ValueError):
        Series([1, 1], 2, parity="even")
    even = Series([1, 0, 2], 2, parity="even")
    assert (even * even).parity == "even"


def test_series_truncation_minimum_order():
    a = Series([1, 1, 1, 1], 3)
    b = Series([1, 1], 1)
    assert (a * b).truncation_order == 1
    assert (a + b).truncation_order == 1


def test_series_truncate_method():
    s = series_sinc("sin", 8)
    cut = s.truncate(4)
    assert cut.truncation_order == 4
    assert cut == series_sinc("sin", 4)
    assert s.truncate(10) is s


# -- polynomials and rational functions --------------------------------------


def test_poly_gcd_example():
    z = Polynomial.variable()
    one = Polynomial.const(1)
    g = poly_gcd(z * z - one, z - one)
    assert g == (z - one).monic()


def test_ratfunc_cancellation_to_normal_form():
    z = Polynomial.variable()
    one = Polynomial.const(1)
    f = RationalFunction(z * z - one, z - one)
    assert f == RationalFunction(z + one)
    assert f.den.degree == 0


def test_ratfunc_eval():
    z = RationalFunction.z()
    f = 1 / (1 - z * z)
    assert f.eval_at(Fraction(1, 2)) == Fraction(4, 3)
    with pytest.raises(ZeroDivisionError):
        f.eval_at(1)


def test_ratfunc_constant_detection():
    z = RationalFunction.z()
    f = (z * z - 1) / (z - 1) - z
    assert f.is_constant() and f.constant_value() == 1
    assert not (z + 1).is_constant()
    with pytest.raises(ValueError):
        (z + 1).constant_value()


def test_ratfunc_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        RationalFunction.const(1) / RationalFunction.const(0)
    with pytest.raises(ZeroDivisionError):
        RationalFunction(Polynomial.const(1), Polynomial())


def test_ring_axioms_on_random_inputs():
    rng = random.Random(11)
    for _ in range(25):
        a, b, c = (rand_ratfunc(rng) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + b == b + a and a * b == b * a
    for _ in range(25):
        a, b, c = (rand_series(rng) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c


def test_eval_commutes_with_arithmetic():
    rng = random.Random(13)
    for _ in range(25):
        f, g = rand_ratfunc(rng), rand_ratfunc(rng)
        q = rand_fraction(rng)
        try:
            fv, gv = f.eval_at(q), g.eval_at(q)
            pv = (f * g).eval_at(q)
            sv = (f + g).eval_at(q)
        except ZeroDivisionError:
            continue
        assert pv == fv * gv
        assert sv == fv + gv
