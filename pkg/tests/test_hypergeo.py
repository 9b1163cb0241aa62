import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from mop.hypergeo import (
    HypothesisViolation,
    IdentityId,
    KdfSpec,
    NonTerminatingError,
    PfqSpec,
    RationalSampler,
    identity_residual,
    kdf,
    hahn_reduction_sides,
    pfq,
    sample_identity_params,
)
from mop.scalar import PoleError, pochhammer

nonint = st.fractions(min_value=-5, max_value=5, max_denominator=30).filter(lambda v: v.denominator != 1)


def _mp(v):
    return mpmath.mpf(v.numerator) / v.denominator


@given(st.integers(0, 8), nonint, nonint, nonint, nonint)
def test_pfq_matches_mpmath_terms(n, a, b, c, z):
    got = pfq(PfqSpec((-n, a), (b, c), z))
    # term by term with mpmath's rising factorial; hyper() itself cannot
    # converge when the sum cancels to 0
    terms = [
        mpmath.rf(-n, l) * mpmath.rf(_mp(a), l) / (mpmath.rf(_mp(b), l) * mpmath.rf(_mp(c), l))
        * _mp(z) ** l / mpmath.factorial(l)
        for l in range(n + 1)
    ]
    want = mpmath.fsum(terms)
    scale = mpmath.fsum(abs(t) for t in terms)
    assert abs(_mp(got) - want) <= 1e-12 * scale


@given(st.integers(0, 5), st.integers(0, 5), nonint, nonint, nonint, nonint)
def test_kdf_matches_brute_double_sum(n, k, a, b, c, d):
    spec = KdfSpec((-n,), (a,), (-k,), (b,), (c,), (d,), Fraction(1, 2), Fraction(-1, 3))
    want = Fraction(0)
    for l in range(n + 1):
        for m in range(n + 1 - l):
            want += (
                pochhammer(Fraction(-n), l + m) / pochhammer(a, l + m)
                * pochhammer(Fraction(-k), l) / pochhammer(b, l)
                * pochhammer(c, m) / pochhammer(d, m)
                * Fraction(1, 2) ** l * Fraction(-1, 3) ** m
                / (pochhammer(1, l) * pochhammer(1, m))
            )
    assert kdf(spec) == want
    assert kdf(spec.swapped()) == kdf(KdfSpec((-n,), (a,), (c,), (d,), (-k,), (b,), Fraction(-1, 3), Fraction(1, 2)))


def test_pfq_needs_termination():
    with pytest.raises(NonTerminatingError):
        pfq(PfqSpec((Fraction(1, 2),), (), 1))
    assert pfq(PfqSpec((Fraction(1, 2),), (), Fraction(1, 2)), max_terms=1) == 1


def test_pfq_lower_pole():
    with pytest.raises(PoleError):
        pfq(PfqSpec((-3,), (-1,), 1))


def test_chu_vandermonde_value():
    # 2F1(-2, 1; 3; 1) = (3-1)_2/(3)_2 = 6/12
    assert pfq(PfqSpec((-2, 1), (3,), 1)) == Fraction(1, 2)


def test_unbalanced_saalschutz_is_hypothesis_violation():
    p = {"n": 2, "a": Fraction(1, 2), "b": Fraction(1, 3), "c": Fraction(1, 5), "d": Fraction(7, 3)}
    with pytest.raises(HypothesisViolation):
        identity_residual(IdentityId.PfaffSaalschutz, p)


def test_odd_reversal_is_hypothesis_violation():
    with pytest.raises(HypothesisViolation):
        identity_residual(IdentityId.Reversal, {"n": 2, "a": [Fraction(1, 2)], "b": []})


def test_noninteger_length_is_hypothesis_violation():
    with pytest.raises(HypothesisViolation):
        identity_residual(IdentityId.NewtonBinomial, {"n": Fraction(1, 2), "a": 1, "b": 1})


@pytest.mark.parametrize("ident", list(IdentityId))
@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32))
def test_identities_vanish_on_random_draws(ident, seed):
    p = sample_identity_params(ident, RationalSampler(random.Random(seed)), max_length=6)
    try:
        r = identity_residual(ident, p)
    except PoleError:
        return
    assert r == 0


def test_karp_prilepkina_degenerate_stratum():
    # b - f + 1 = -1 with m = 2 used to give a nonzero residual
    p = {"n": 1, "p": 2, "b": Fraction(1, 2), "f": [Fraction(5, 2)], "m": [2]}
    assert identity_residual(IdentityId.KarpPrilepkina, p) == 0


def test_hahn_reduction_sides_against_mpmath():
    p = {"n_a": 3, "n_hat": 2, "alpha_a": Fraction(1, 2), "alpha_hat": Fraction(1, 3),
         "beta": Fraction(1, 4), "N": 12, "j": Fraction(1)}
    lhs, rhs = hahn_reduction_sides(p)
    assert lhs == rhs
    al, ah, b, j = (_mp(p[k]) for k in ("alpha_a", "alpha_hat", "beta", "j"))
    pref = mpmath.rf(ah - al - 2, 2) * mpmath.rf(al + b + 14, 2) / (mpmath.rf(-3, 2) * mpmath.rf(ah + b + 3, 2))
    want = pref * mpmath.hyp3f2(-2, al + b + 5, al - ah - 1, al + b + j + 2, al - ah + 1, 1)
    assert abs(_mp(rhs) - want) < 1e-12
