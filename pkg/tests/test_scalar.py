from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from mop.scalar import (
    ExactArith,
    FloatArith,
    MonoPolynomial,
    PochPolynomial,
    PoleError,
    format_scalar,
    gamma_ratio,
    mono_to_poch,
    parse_rational,
    poch_to_mono,
    pochhammer,
)

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=50)
coeff_lists = st.lists(rationals, max_size=7)


def test_pochhammer_small_cases():
    assert pochhammer(Fraction(1, 2), 0) == 1
    assert pochhammer(Fraction(1, 2), 3) == Fraction(15, 8)
    assert pochhammer(-3, 4) == 0
    assert pochhammer(-3, 3) == -6
    with pytest.raises(ValueError):
        pochhammer(1, -1)


@given(rationals, st.integers(0, 12))
def test_pochhammer_matches_mpmath(x, n):
    got = pochhammer(x, n)
    want = mpmath.rf(mpmath.mpf(x.numerator) / x.denominator, n)
    assert abs(mpmath.mpf(got.numerator) / got.denominator - want) <= 1e-10 * max(1, abs(want))


@given(rationals, st.integers(0, 8), st.integers(0, 8))
def test_pochhammer_splits(x, m, n):
    assert pochhammer(x, m + n) == pochhammer(x, m) * pochhammer(x + m, n)


@given(rationals, st.integers(1, 6))
def test_gamma_ratio_negative_shift_inverts(x, n):
    try:
        r = gamma_ratio(x, -n)
    except PoleError:
        assert pochhammer(x - n, n) == 0
        return
    assert r * pochhammer(x - n, n) == 1


@given(coeff_lists)
def test_basis_round_trip(cs):
    p = PochPolynomial(tuple(cs))
    assert mono_to_poch(poch_to_mono(p)) == p
    m = MonoPolynomial(tuple(cs))
    assert poch_to_mono(mono_to_poch(m)) == m


@given(coeff_lists, st.integers(-6, 12))
def test_basis_change_preserves_values(cs, x):
    p = PochPolynomial(tuple(cs))
    assert poch_to_mono(p)(x) == p(x)
    assert p.times_x()(x) == x * p(x)


def test_poch_basis_evaluation():
    # (-x)_2 = x^2 - x
    p = PochPolynomial((0, 0, 1))
    assert [p(x) for x in range(4)] == [0, 0, 2, 6]
    assert p.degree == 2 and PochPolynomial(()).degree == -1


def test_trailing_zeros_trimmed():
    assert PochPolynomial((1, 0, 0)) == PochPolynomial((1,))


def test_parse_and_format():
    assert parse_rational("-3/4") == Fraction(-3, 4)
    assert parse_rational("7") == 7
    assert format_scalar(Fraction(1, 4)) == "1/4"
    with pytest.raises(ValueError):
        parse_rational("0.25")


def test_float_arith_poles_and_precision():
    ar = FloatArith(256)
    assert ar.ctx.prec == 256
    with pytest.raises(PoleError):
        ar.gamma(-2)
    assert abs(ar.gamma(ar.num(Fraction(1, 2))) ** 2 - ar.ctx.pi) < ar.ctx.mpf(10) ** -70
    assert ExactArith().poch(Fraction(1, 2), 2) == Fraction(3, 4)


def test_float_contexts_are_private():
    before = mpmath.mp.prec
    FloatArith(512).num(1)
    assert mpmath.mp.prec == before
