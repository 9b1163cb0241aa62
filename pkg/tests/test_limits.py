from fractions import Fraction

import mpmath
import pytest

from mop import limits
from mop.hahn import Kind
from mop.limits import LIMIT_DEFAULTS, LimitRoute
from mop.scalar import PoleError


@pytest.mark.parametrize("route", list(LimitRoute))
def test_zero_index_type2_is_exact(route):
    params, seq = LIMIT_DEFAULTS[route]
    assert limits.limit_residual(route, (0, 0), seq[0], params, "type2") == 0


def test_hahn_jp_residual_drops_tenfold_per_decade():
    params, seq = LIMIT_DEFAULTS[LimitRoute.HAHN_JP]
    rec = limits.convergence_study(LimitRoute.HAHN_JP, (2, 1), seq, params, Kind.typeII)
    r = [float(v) for v in rec.residuals]
    for a, b in zip(r, r[1:]):
        assert abs(b / a - 0.1) < 0.02
    assert rec.order_within(1.0, 0.2)


def test_fit_order_on_synthetic_data():
    scales = [10, 100, 1000]
    assert abs(limits.fit_order(scales, [mpmath.mpf(3) / s**2 for s in scales]) - 2) < 1e-12


def test_all_zero_residuals_give_no_order():
    params, seq = LIMIT_DEFAULTS[LimitRoute.HAHN_K]
    rec = limits.convergence_study(LimitRoute.HAHN_K, (0, 0), seq, params, Kind.typeII)
    assert rec.order is None and "vanish" in rec.note


def test_sequence_must_move_toward_limit():
    params, _ = LIMIT_DEFAULTS[LimitRoute.HAHN_JP]
    with pytest.raises(ValueError):
        limits.convergence_study(LimitRoute.HAHN_JP, (1, 1), [1000, 100, 10], params)
    with pytest.raises(ValueError):
        limits.convergence_study(LimitRoute.HAHN_JP, (1, 1), [100, 1000], params)


def test_hahn_mi_pole_is_reported():
    # (1 - c2) N integral puts the printed prefactor on a Gamma pole
    params = limits.LIMIT_DEFAULTS[LimitRoute.HAHN_MI][0]
    bad = type(params)(params.beta, params.c1, Fraction(1, 4))
    with pytest.raises(PoleError):
        limits.limit_residual(LimitRoute.HAHN_MI, (2, 1), 100, bad, "type1")


def test_laguerre_routes_meet():
    params = LIMIT_DEFAULTS[LimitRoute.JP_LI][0]
    for kind in ("type1", "type2"):
        assert limits.laguerre_two_route_gap((2, 1), params, limits.LAGUERRE_MATCH_T, kind) < 1e-25


@pytest.mark.parametrize("route", list(LimitRoute))
def test_recursion_coefficients_converge(route):
    params, seq = LIMIT_DEFAULTS[route]
    res, order = limits.recursion_convergence(route, (2, 1), seq, params)
    assert order is not None and abs(float(order) - 1) <= 0.2


def test_route_parse():
    assert LimitRoute.parse("hahn-jp") is LimitRoute.HAHN_JP
    with pytest.raises(ValueError):
        LimitRoute.parse("nowhere")
