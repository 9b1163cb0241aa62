from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from mop import hahn
from mop.hahn import HahnParams, InvalidIndexError, Kind, MomentRangeError, MultiIndex

P = HahnParams(Fraction(1, 2), Fraction(1, 3), Fraction(1, 4), 12)

params_st = st.builds(
    HahnParams,
    st.fractions(min_value=Fraction(-9, 10), max_value=4, max_denominator=12),
    st.fractions(min_value=Fraction(-9, 10), max_value=4, max_denominator=12),
    st.fractions(min_value=Fraction(-9, 10), max_value=4, max_denominator=12),
    st.integers(6, 10),
)
index_st = st.tuples(st.integers(0, 3), st.integers(0, 3))


def _gamma_weight(k, alpha, beta, N):
    # independent of the Pochhammer form used by the library
    g = mpmath.gamma
    return g(alpha + k + 1) * g(beta + N - k + 1) / (g(alpha + 1) * g(beta + 1) * mpmath.factorial(k) * mpmath.factorial(N - k))


def _mp(v):
    return mpmath.mpf(v.numerator) / v.denominator


def test_weight_matches_gamma_form():
    for k in range(P.N + 1):
        assert abs(_mp(hahn.hahn_weight(k, 1, P)) - _gamma_weight(k, _mp(P.alpha1), _mp(P.beta), P.N)) < 1e-10


def test_type2_orthogonal_in_floats():
    idx = MultiIndex(2, 3)
    b = hahn.hahn_type2(idx, P)
    for a in (1, 2):
        al = _mp(P.alpha(a))
        for j in range(idx.n(a)):
            s = mpmath.fsum(_mp(b(k)) * mpmath.rf(-k, j) * _gamma_weight(k, al, _mp(P.beta), P.N) for k in range(P.N + 1))
            assert abs(s) < 1e-8


@settings(max_examples=25, deadline=None)
@given(params_st, index_st)
def test_type2_orthogonality_exact(p, idx):
    idx = MultiIndex(*idx)
    if idx.total > p.N:
        return
    for a in (1, 2):
        for j in range(idx.n(a)):
            assert hahn.moment_sum(idx, Kind.typeII, j, p, a=a) == 0


@settings(max_examples=25, deadline=None)
@given(params_st, st.tuples(st.integers(1, 3), st.integers(1, 3)))
def test_type1_explicit_equals_oracle(p, idx):
    try:
        want = hahn.solve_oracle(idx, Kind.typeI, p)
    except hahn.SingularSystemError:
        return
    assert hahn.explicit_type1(idx, p).same_as(want)


@settings(max_examples=25, deadline=None)
@given(params_st, index_st)
def test_swap_covariance(p, idx):
    idx = MultiIndex(*idx)
    assert hahn.hahn_type2(idx, p) == hahn.hahn_type2(idx.swapped(), p.swapped())
    assert hahn.recursion_coeffs(idx, p).swapped() == hahn.recursion_coeffs(idx.swapped(), p.swapped())


def test_type2_is_monic_in_poch_basis():
    b = hahn.hahn_type2((2, 1), P)
    assert b.degree == 3 and b.leading() == -1


def test_type1_normalization():
    assert hahn.moment_sum((1, 1), Kind.typeI, 1, P) == 1
    assert hahn.moment_sum((2, 2), Kind.typeI, 2, P) == 0


def test_moment_range_enforced():
    with pytest.raises(MomentRangeError):
        hahn.moment_sum((1, 1), Kind.typeI, 2, P)
    with pytest.raises(MomentRangeError):
        hahn.moment_sum((1, 1), Kind.typeII, 1, P, a=1)


def test_b1_at_origin():
    p = HahnParams(0, Fraction(1, 3), 0, 10)
    assert hahn.recursion_coeffs((0, 0), p).b1 == 5


def test_d_vanishes_on_the_edge():
    r = hahn.recursion_coeffs((0, 2), P)
    assert r.d1 == 0
    assert hahn.recursion_coeffs((2, 0), P).d2 == 0


def test_invalid_indexes():
    with pytest.raises(InvalidIndexError):
        MultiIndex(-1, 0)
    with pytest.raises(InvalidIndexError):
        hahn.hahn_type2((7, 7), P)
    with pytest.raises(ValueError):
        HahnParams(-1, 0, 0, 3)


def test_relations_on_grid():
    for n1 in range(4):
        for n2 in range(4):
            for key, res in hahn.recursion_residuals((n1, n2), P).items():
                assert hahn.residual_is_zero(res), (n1, n2, key)


def test_biorth_expected_cases():
    assert hahn.biorth_expected((2, 1), (1, 1)) == 1
    assert hahn.biorth_expected((1, 1), (1, 1)) == 0
    assert hahn.biorth_expected((3, 1), (0, 1)) == 0
    assert hahn.biorth_pairing((2, 1), (1, 1), P) == 1


def test_float_coefficients_agree_with_exact():
    from mop.scalar import FloatArith

    ar = FloatArith(256)
    exact = hahn.type2_coeffs(2, 2, P.alpha1, P.alpha2, P.beta, P.N)
    approx = hahn.type2_coeffs(2, 2, P.alpha1, P.alpha2, P.beta, P.N, ar)
    for e, f in zip(exact, approx):
        assert abs(ar.num(e) - f) < ar.ctx.mpf(10) ** -60
