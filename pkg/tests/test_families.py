from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from mop import families
from mop.families import FamilyId
from mop.hahn import MultiIndex
from mop.verify import DEFAULT_PARAMS

F = Fraction
ALL = list(FamilyId)
GRID = [MultiIndex(n1, n2) for n1 in range(4) for n2 in range(4)]


def _mp(v):
    return mpmath.mpf(v.numerator) / v.denominator if isinstance(v, Fraction) else mpmath.mpf(v)


def test_charlier_first_polynomial():
    p = families.CharlierParams(F(2), F(3))
    b = families.family_type2(FamilyId.Charlier, (1, 0), p)
    assert [b(x) for x in range(4)] == [x - 2 for x in range(4)]


def test_kravchuk_first_polynomial():
    p = families.KravchukParams(F(1, 3), F(1, 4), 9)
    b = families.family_type2(FamilyId.Kravchuk, (1, 0), p)
    assert [b(x) for x in range(4)] == [x - 3 for x in range(4)]


def test_kravchuk_weights_sum_to_one():
    p = families.KravchukParams(F(1, 2), F(1, 3), 2)
    w = [families.family_weight(FamilyId.Kravchuk, 1, x, p, mode="exact") for x in range(3)]
    assert w == [F(1, 4), F(1, 2), F(1, 4)]


def test_laguerre_one_c():
    p = families.LaguerreIParams(F(1, 2), F(1, 3))
    assert families.family_recursion_coeffs(FamilyId.LaguerreI, (1, 1), p).c == 3 + F(1, 2) + F(1, 3)


def test_charlier_series_residual():
    p = DEFAULT_PARAMS[FamilyId.Charlier.value]
    r = families.family_orth_residual(FamilyId.Charlier, (1, 1), 0, p, mode="float")
    assert abs(r.value) < 1e-30
    assert r.tail_bound is not None and r.within(1e-30)


@pytest.mark.parametrize("fid", ALL)
def test_oracle_agreement(fid):
    p = DEFAULT_PARAMS[fid.value]
    f = families.family(fid, p)
    for idx in GRID:
        if f.finite_support and idx.total > p.N:
            continue
        assert f.type2(idx) == f.oracle_type2(idx)
        if idx.total:
            assert f.type1_core(idx).same_as(f.oracle_type1_core(idx))


@pytest.mark.parametrize("fid", ALL)
def test_recursion_relations(fid):
    p = DEFAULT_PARAMS[fid.value]
    for idx in GRID:
        if fid is FamilyId.Kravchuk and idx.total + 2 > p.N:
            continue
        for key, res in families.family_recursion_residuals(fid, idx, p).items():
            polys = res if isinstance(res, tuple) else (res,)
            assert all(q.is_zero() for q in polys), (idx, key)


@pytest.mark.parametrize("fid", ALL)
def test_reconstruction_from_two_seeds(fid):
    p = DEFAULT_PARAMS[fid.value]
    for idx in GRID:
        if idx.total == 0 or (fid is FamilyId.Kravchuk and idx.total > p.N):
            continue
        got = families.family_type1_via_recursion(fid, idx, p)
        assert got.same_as(families.family_type1_core(fid, idx, p))


@pytest.mark.parametrize("fid", ALL)
def test_swap_covariance(fid):
    p = DEFAULT_PARAMS[fid.value]
    f, g = families.family(fid, p), families.family(fid, p.swapped())
    for idx in GRID:
        if f.finite_support and idx.total > p.N:
            continue
        assert f.type2(idx) == g.type2(idx.swapped())


def test_kravchuk_direct_finite_sum_exact():
    p = DEFAULT_PARAMS[FamilyId.Kravchuk.value]
    f = families.family(FamilyId.Kravchuk, p)
    idx = MultiIndex(2, 2)
    pair = families.family_type1(FamilyId.Kravchuk, idx, p, mode="exact")
    for j in range(4):
        test = f.test_function(j) if j < 3 else f.norm_function(4)
        s = sum(
            test(k) * (pair.q1(k) * families.family_weight(FamilyId.Kravchuk, 1, k, p, "exact")
                       + pair.q2(k) * families.family_weight(FamilyId.Kravchuk, 2, k, p, "exact"))
            for k in range(p.N + 1)
        )
        assert s == (1 if j == 3 else 0)


# continuous families: quadrature against the true weights

def _quad_linear_form(fid, idx, j):
    p = DEFAULT_PARAMS[fid.value]
    pair = families.family_type1(fid, idx, p, mode="float", bits=128)
    with mpmath.workdps(30):
        if fid is FamilyId.JacobiPineiro:
            a1, a2, b = (_mp(v) for v in (p.alpha1, p.alpha2, p.beta))
            integrand = lambda x: (pair.q1(x) * x**a1 + pair.q2(x) * x**a2) * (1 - x) ** b * x**j
            return mpmath.quad(integrand, [0, 1])
        if fid is FamilyId.LaguerreI:
            a1, a2 = _mp(p.alpha1), _mp(p.alpha2)
            integrand = lambda x: (pair.q1(x) * x**a1 + pair.q2(x) * x**a2) * mpmath.exp(-x) * x**j
        else:
            a0, c1, c2 = _mp(p.alpha0), _mp(p.c1), _mp(p.c2)
            integrand = lambda x: (pair.q1(x) * mpmath.exp(-c1 * x) + pair.q2(x) * mpmath.exp(-c2 * x)) * x**a0 * x**j
        return mpmath.quad(integrand, [0, 1, 10, mpmath.inf])


@pytest.mark.parametrize("fid", [FamilyId.JacobiPineiro, FamilyId.LaguerreI, FamilyId.LaguerreII])
@pytest.mark.parametrize("idx", [MultiIndex(1, 1), MultiIndex(2, 1), MultiIndex(1, 2)])
def test_continuous_orthogonality_by_quadrature(fid, idx):
    n = idx.total
    for j in range(n):
        v = _quad_linear_form(fid, idx, j)
        assert abs(v - (1 if j == n - 1 else 0)) < 1e-12, (j, v)


@pytest.mark.parametrize("m", range(4))
def test_jacobi_moments_by_quadrature(m):
    p = DEFAULT_PARAMS[FamilyId.JacobiPineiro.value]
    f = families.family(FamilyId.JacobiPineiro, p)
    with mpmath.workdps(30):
        a1, b = _mp(p.alpha1), _mp(p.beta)
        g = mpmath.gamma(a1 + b + 2) / (mpmath.gamma(a1 + 1) * mpmath.gamma(b + 1))
        v = g * mpmath.quad(lambda x: x ** (a1 + m) * (1 - x) ** b, [0, 1])
        assert abs(v - _mp(f.nu(1, m))) < 1e-20


@pytest.mark.parametrize("fid", [FamilyId.MeixnerI, FamilyId.MeixnerII, FamilyId.Charlier])
def test_tail_bound_covers_longer_sum(fid):
    p = DEFAULT_PARAMS[fid.value]
    r = families.family_orth_residual(fid, (2, 1), 1, p, mode="float", bits=256)
    assert r.tail_bound is not None and abs(r.value) <= r.tail_bound + mpmath.mpf(10) ** -70
    assert abs(r.value) < 1e-30


@settings(max_examples=15, deadline=None)
@given(
    st.fractions(min_value=Fraction(1, 10), max_value=5, max_denominator=10),
    st.fractions(min_value=Fraction(1, 10), max_value=5, max_denominator=10),
)
def test_charlier_orthogonality_random_params(b1, b2):
    if b1 == b2:
        return
    p = families.CharlierParams(b1, b2)
    for j in range(3):
        assert families.family_orth_residual(FamilyId.Charlier, (2, 1), j, p, mode="exact").value == 0


def test_wrong_params_type_rejected():
    with pytest.raises(TypeError):
        families.family(FamilyId.Charlier, DEFAULT_PARAMS[FamilyId.Kravchuk.value])
