"""Limit relations of the multiple Askey scheme, evaluated numerically.

Each route rescales a source family (argument substitution and, for type I,
a route-dependent prefactor) and compares it with the target family at a
finite value of the limit parameter.  All work happens in float mode; the
residual is expected to shrink like ``1/scale`` where ``scale`` is ``N``,
``t``, ``beta`` or ``1/(1-c)`` depending on the route.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Sequence

from . import hahn
from .families import (
    CharlierParams,
    FamilyId,
    JacobiPineiroParams,
    KravchukParams,
    LaguerreIIParams,
    LaguerreIParams,
    MeixnerIIParams,
    MeixnerIParams,
    PARAMS_TYPE,
    family,
)
from .hahn import MultiIndex, RecursionCoefficients, as_index
from .scalar import DEFAULT_PRECISION, FloatArith, PochPolynomial, parse_rational, pochhammer


class LimitRoute(str, enum.Enum):
    HAHN_JP = "hahn-jp"
    HAHN_MI = "hahn-mi"
    HAHN_MII = "hahn-mii"
    HAHN_K = "hahn-k"
    JP_LI = "jp-li"
    MII_LI = "mii-li"
    MI_LII = "mi-lii"
    MI_C = "mi-c"
    K_C = "k-c"

    @classmethod
    def parse(cls, text) -> "LimitRoute":
        if isinstance(text, cls):
            return text
        key = str(text).strip().lower().replace("_", "-")
        for r in cls:
            if key in (r.value, r.name.lower().replace("_", "-")):
                return r
        raise ValueError(f"unknown limit route {text!r}; known: {', '.join(r.value for r in cls)}")


@dataclass(frozen=True)
class RouteInfo:
    source: str
    target: FamilyId
    param_name: str
    integer_param: bool = False
    to_one: bool = False  # the parameter tends to 1 rather than infinity


ROUTES = {
    LimitRoute.HAHN_JP: RouteInfo("Hahn", FamilyId.JacobiPineiro, "N", integer_param=True),
    LimitRoute.HAHN_MI: RouteInfo("Hahn", FamilyId.MeixnerI, "N"),
    LimitRoute.HAHN_MII: RouteInfo("Hahn", FamilyId.MeixnerII, "N", integer_param=True),
    LimitRoute.HAHN_K: RouteInfo("Hahn", FamilyId.Kravchuk, "t"),
    LimitRoute.JP_LI: RouteInfo("JacobiPineiro", FamilyId.LaguerreI, "beta"),
    LimitRoute.MII_LI: RouteInfo("MeixnerII", FamilyId.LaguerreI, "c", to_one=True),
    LimitRoute.MI_LII: RouteInfo("MeixnerI", FamilyId.LaguerreII, "t"),
    LimitRoute.MI_C: RouteInfo("MeixnerI", FamilyId.Charlier, "beta"),
    LimitRoute.K_C: RouteInfo("Kravchuk", FamilyId.Charlier, "N", integer_param=True),
}

DEFAULT_EVAL_POINTS = {
    True: tuple(Fraction(k) for k in range(6)),
    False: tuple(Fraction(k, 7) for k in range(1, 7)),
}
_HALF_LINE_POINTS = tuple(Fraction(k, 2) for k in range(1, 7))


def default_eval_points(route) -> tuple:
    target = ROUTES[LimitRoute.parse(route)].target
    if target in (FamilyId.LaguerreI, FamilyId.LaguerreII):
        return _HALF_LINE_POINTS
    return DEFAULT_EVAL_POINTS[target not in (FamilyId.JacobiPineiro,)]


def route_scale(route, limit_param, ar: FloatArith):
    """The quantity that tends to infinity along the route."""
    info = ROUTES[LimitRoute.parse(route)]
    v = ar.num(limit_param)
    return 1 / (1 - v) if info.to_one else v


class _Side:
    """Evaluators for one side of a limit: type II and the two type I parts."""

    def __init__(self, type2: Callable, type1: Callable):
        self.type2 = type2
        self.type1 = type1  # (a, x) -> value


def _poly_eval(poly, ar):
    return lambda x: poly(ar.num(x))


def _check_param(info: RouteInfo, value):
    if info.integer_param:
        if Fraction(value).denominator != 1:
            raise ValueError(f"{info.param_name} must be an integer on this route, got {value}")
        if value < 1:
            raise ValueError(f"{info.param_name} must be positive, got {value}")
    elif info.to_one:
        if not 0 < value < 1:
            raise ValueError(f"{info.param_name} must lie in (0, 1), got {value}")
    elif value <= 0:
        raise ValueError(f"{info.param_name} must be positive, got {value}")


def _coerce_param(value):
    if isinstance(value, str):
        return parse_rational(value)
    if isinstance(value, float):
        return Fraction(value)
    return value


# ---------------------------------------------------------------------------
# Hahn sources


def _hahn_type2(idx, a1, a2, beta, N, ar):
    return PochPolynomial(tuple(hahn.type2_coeffs(idx.n1, idx.n2, a1, a2, beta, N, ar)))


def _hahn_type1(a, idx, a1, a2, beta, N, ar):
    return PochPolynomial(tuple(hahn.type1_coeffs(a, idx.n1, idx.n2, a1, a2, beta, N, ar)))


def _require_interior(idx, kind_needed):
    if kind_needed and min(idx) < 1:
        raise hahn.InvalidIndexError("Hahn type I limits use the explicit formula and need n1, n2 >= 1")


def _source_hahn_jp(idx, N, p: JacobiPineiroParams, ar, need1):
    _require_interior(idx, need1)
    a1, a2, b = (ar.num(v) for v in (p.alpha1, p.alpha2, p.beta))
    N = int(N)
    n = idx.total
    Nf = ar.num(N)
    q2 = _hahn_type2(idx, a1, a2, b, N, ar)
    s2 = (-1) ** n / pochhammer(-Nf, n)

    def t1(a, x):
        na = idx.n(a)
        al = a1 if a == 1 else a2
        pref = (-1) ** (na - 1) / pochhammer(-Nf, na - 1)
        pref = pref * ar.gamma(al + b + N + na + 1) / (ar.gamma(al + 1) * ar.gamma(b + 1) * ar.fact(N + 1 - n))
        return pref * _hahn_type1(a, idx, a1, a2, b, N, ar)(Nf * ar.num(x))

    return _Side(lambda x: s2 * q2(Nf * ar.num(x)), t1)


def _source_hahn_mi(idx, N, p: MeixnerIParams, ar, need1):
    _require_interior(idx, need1)
    b, c1, c2 = (ar.num(v) for v in (p.beta, p.c1, p.c2))
    Nf = ar.num(N)
    n = idx.total
    src = (c1 * Nf, c2 * Nf, -Nf, -b)
    q2 = _hahn_type2(idx, *src, ar)

    def t1(a, x):
        na = idx.n(a)
        c = c1 if a == 1 else c2
        pref = ar.power(1 - c, n - 1 + b) / ar.gamma(1 - b) * pochhammer(-Nf + 1, n - 1)
        pref = pref * ar.gamma((c - 1) * Nf + na + 1 - b) / ar.gamma((c - 1) * Nf + n + na)
        return pref * _hahn_type1(a, idx, *src, ar)(ar.num(x))

    return _Side(_poly_eval(q2, ar), t1)


def _source_hahn_mii(idx, N, p: MeixnerIIParams, ar, need1):
    _require_interior(idx, need1)
    b1, b2, c = (ar.num(v) for v in (p.beta1, p.beta2, p.c))
    N = int(N)
    n = idx.total
    src = (b1 - 1, b2 - 1, (1 - c) / c * N, N)
    q2 = _hahn_type2(idx, *src, ar)

    def t1(a, x):
        na = idx.n(a)
        ba = b1 if a == 1 else b2
        pref = ar.power(1 - c, ba + n + na - 2) / c ** (n - 1)
        pref = pref * ar.poch(ba + (1 - c) / c * N + n + na - 1, N + 1 - n) / ar.fact(N + 1 - n)
        return pref * _hahn_type1(a, idx, *src, ar)(ar.num(x))

    return _Side(_poly_eval(q2, ar), t1)


def _source_hahn_k(idx, t, p: KravchukParams, ar, need1):
    _require_interior(idx, need1)
    p1, p2 = ar.num(p.p1), ar.num(p.p2)
    N = p.N
    tf = ar.num(t)
    n = idx.total
    src = (p1 / (1 - p1) * tf, p2 / (1 - p2) * tf, tf, N)
    q2 = _hahn_type2(idx, *src, ar)

    def t1(a, x):
        na = idx.n(a)
        pa = p1 if a == 1 else p2
        pref = (1 / (1 - pa)) ** (n - 1) / ar.fact(N)
        pref = pref * pochhammer(tf + 1, n - 1) * ar.poch(tf / (1 - pa) + n + na, N + 1 - n)
        return pref * _hahn_type1(a, idx, *src, ar)(ar.num(x))

    return _Side(_poly_eval(q2, ar), t1)


# ---------------------------------------------------------------------------
# family sources


def _family_side(fid, params, idx, ar, arg: Callable, s2, s1: Callable):
    f = family(fid, params)
    q2 = f.type2(idx)
    pair = f.type1(idx, ar) if s1 is not None else None

    def t1(a, x):
        return s1(a) * pair[a](arg(ar.num(x)))

    return _Side(lambda x: s2 * q2(arg(ar.num(x))), t1)


def _source_jp_li(idx, beta, p: LaguerreIParams, ar, need1):
    b = ar.num(beta)
    a1, a2 = ar.num(p.alpha1), ar.num(p.alpha2)
    n = idx.total
    k = pochhammer(a1 + b + n, idx.n1) * pochhammer(a2 + b + n, idx.n2)
    src = JacobiPineiroParams(a1, a2, b)

    def s1(a):
        al = a1 if a == 1 else a2
        return ar.gamma(b + n) / ar.gamma(al + b + n) / k

    return _family_side(FamilyId.JacobiPineiro, src, idx, ar, lambda x: x / b, k, s1 if need1 else None)


def _source_mii_li(idx, c, p: LaguerreIParams, ar, need1):
    c = ar.num(c)
    a1, a2 = ar.num(p.alpha1), ar.num(p.alpha2)
    n = idx.total
    src = MeixnerIIParams(a1 + 1, a2 + 1, c)

    def s1(a):
        al = a1 if a == 1 else a2
        return 1 / (ar.power(1 - c, al + n) * ar.gamma(al + 1))

    return _family_side(FamilyId.MeixnerII, src, idx, ar, lambda x: x / (1 - c), (1 - c) ** n, s1 if need1 else None)


def _source_mi_lii(idx, t, p: LaguerreIIParams, ar, need1):
    t = ar.num(t)
    a0, c1, c2 = (ar.num(v) for v in (p.alpha0, p.c1, p.c2))
    n = idx.total
    src = MeixnerIParams(a0 + 1, t / (t + c1), t / (t + c2))

    def s1(a):
        c = c1 if a == 1 else c2
        return t ** (n - 1) * ar.power(c + t, a0 + 1) / ar.gamma(a0 + 1)

    return _family_side(FamilyId.MeixnerI, src, idx, ar, lambda x: t * x, t**-n, s1 if need1 else None)


def _source_mi_c(idx, beta, p: CharlierParams, ar, need1):
    b = ar.num(beta)
    src = MeixnerIParams(b, ar.num(p.b1) / b, ar.num(p.b2) / b)
    return _family_side(FamilyId.MeixnerI, src, idx, ar, lambda x: x, 1, (lambda a: 1) if need1 else None)


def _source_k_c(idx, N, p: CharlierParams, ar, need1):
    N = int(N)
    b1, b2 = ar.num(p.b1), ar.num(p.b2)
    src = KravchukParams(b1 / N, b2 / N, N)

    def s1(a):
        return ar.exp(-(b1 if a == 1 else b2))

    return _family_side(FamilyId.Kravchuk, src, idx, ar, lambda x: x, 1, s1 if need1 else None)


_SOURCES = {
    LimitRoute.HAHN_JP: _source_hahn_jp,
    LimitRoute.HAHN_MI: _source_hahn_mi,
    LimitRoute.HAHN_MII: _source_hahn_mii,
    LimitRoute.HAHN_K: _source_hahn_k,
    LimitRoute.JP_LI: _source_jp_li,
    LimitRoute.MII_LI: _source_mii_li,
    LimitRoute.MI_LII: _source_mi_lii,
    LimitRoute.MI_C: _source_mi_c,
    LimitRoute.K_C: _source_k_c,
}


def _target_side(fid, params, idx, ar, need1) -> _Side:
    f = family(fid, params)
    q2 = f.type2(idx)
    pair = f.type1(idx, ar) if need1 else None
    return _Side(_poly_eval(q2, ar), lambda a, x: pair[a](ar.num(x)))


def route_values(route, idx, limit_param, params, kind, eval_points, bits: int = DEFAULT_PRECISION):
    """``(source, target)`` value lists at ``eval_points``.

    Type I values are listed for ``a = 1`` then ``a = 2``.
    """
    route = LimitRoute.parse(route)
    info = ROUTES[route]
    if not isinstance(params, PARAMS_TYPE[info.target]):
        raise TypeError(f"route {route.value} needs {PARAMS_TYPE[info.target].__name__}")
    idx = as_index(idx)
    limit_param = _coerce_param(limit_param)
    _check_param(info, limit_param)
    ar = FloatArith(bits)
    kind = hahn.Kind(kind)
    need1 = kind is hahn.Kind.typeI
    if eval_points is None:
        eval_points = default_eval_points(route)
    target = _target_side(info.target, params, idx, ar, need1)
    if need1 and idx.total == 0:
        zero = [ar.num(0)] * (2 * len(eval_points))
        return zero, list(zero)
    source = _SOURCES[route](idx, limit_param, params, ar, need1)
    if not need1:
        return [source.type2(x) for x in eval_points], [target.type2(x) for x in eval_points]
    src, tgt = [], []
    for a in (1, 2):
        for x in eval_points:
            if idx.n(a) == 0:
                src.append(ar.num(0))
                tgt.append(ar.num(0))
            else:
                src.append(source.type1(a, x))
                tgt.append(target.type1(a, x))
    return src, tgt


def limit_residual(
    route,
    idx,
    limit_param,
    params,
    kind="type2",
    eval_points: Sequence | None = None,
    bits: int = DEFAULT_PRECISION,
):
    """Max absolute deviation between the rescaled source and the target."""
    src, tgt = route_values(route, idx, limit_param, params, kind, eval_points, bits)
    return max((abs(s - t) for s, t in zip(src, tgt)), default=FloatArith(bits).num(0))


# ---------------------------------------------------------------------------
# convergence studies


@dataclass(frozen=True)
class RateRecord:
    route: LimitRoute
    idx: MultiIndex
    kind: str
    params: tuple
    residuals: tuple
    order: Any  # None when undefined (zero or underflowing residuals)
    note: str = ""

    def order_within(self, target: float = 1.0, tol: float = 0.2) -> bool:
        return self.order is not None and abs(float(self.order) - target) <= tol


def fit_order(scales: Sequence, residuals: Sequence, ctx=None):
    """Least-squares slope of ``-log(residual)`` against ``log(scale)``."""
    import mpmath

    ctx = ctx or mpmath.mp
    xs = [ctx.log(s) for s in scales]
    ys = [ctx.log(r) for r in residuals]
    mx = sum(xs) / len(xs)
    my = sum(ys) / len(ys)
    sxx = sum((x - mx) ** 2 for x in xs)
    sxy = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    return -sxy / sxx


def convergence_study(
    route,
    idx,
    param_sequence: Sequence,
    params,
    kind="type2",
    eval_points: Sequence | None = None,
    bits: int = DEFAULT_PRECISION,
) -> RateRecord:
    route = LimitRoute.parse(route)
    info = ROUTES[route]
    idx = as_index(idx)
    seq = [_coerce_param(v) for v in param_sequence]
    if len(seq) < 3:
        raise ValueError("convergence study needs at least three parameter values")
    ar = FloatArith(bits)
    scales = [route_scale(route, v, ar) for v in seq]
    if any(b <= a for a, b in zip(scales, scales[1:])):
        raise ValueError(
            f"{info.param_name} sequence must move monotonically toward the limit ({'1' if info.to_one else 'infinity'})"
        )
    residuals = tuple(limit_residual(route, idx, v, params, kind, eval_points, bits) for v in seq)
    floor = ar.ctx.ldexp(1, -(bits - 16))
    kind = hahn.Kind(kind).value
    if all(r == 0 for r in residuals):
        return RateRecord(route, idx, kind, tuple(seq), residuals, None, "all residuals vanish; order undefined")
    if any(r <= floor for r in residuals):
        return RateRecord(route, idx, kind, tuple(seq), residuals, None, "residual underflow at this precision")
    order = fit_order(scales, residuals, ar.ctx)
    return RateRecord(route, idx, kind, tuple(seq), residuals, order)


def laguerre_two_route_gap(idx, params: LaguerreIParams, T, kind="type2", eval_points=None, bits: int = DEFAULT_PRECISION):
    """Max gap between the JP route at ``beta = T`` and the MII route at ``c = 1 - 1/T``."""
    T = _coerce_param(T)
    c = 1 - 1 / Fraction(T)
    a, _ = route_values(LimitRoute.JP_LI, idx, T, params, kind, eval_points, bits)
    b, _ = route_values(LimitRoute.MII_LI, idx, c, params, kind, eval_points, bits)
    return max((abs(x - y) for x, y in zip(a, b)), default=FloatArith(bits).num(0))


# ---------------------------------------------------------------------------
# recursion coefficients along the routes


def _scaled(rc: RecursionCoefficients, s) -> RecursionCoefficients:
    return RecursionCoefficients(rc.b1 * s, rc.b2 * s, rc.c * s**2, rc.d1 * s**3, rc.d2 * s**3)


def route_recursion(route, idx, limit_param, params, bits: int = DEFAULT_PRECISION) -> RecursionCoefficients:
    """Source recursion coefficients, rescaled so they tend to the target's."""
    route = LimitRoute.parse(route)
    idx = as_index(idx)
    ar = FloatArith(bits)
    v = ar.num(_coerce_param(limit_param))
    n1, n2 = idx
    p = params
    if route is LimitRoute.HAHN_JP:
        rc = hahn.recursion_raw(n1, n2, ar.num(p.alpha1), ar.num(p.alpha2), ar.num(p.beta), v)
        return _scaled(rc, 1 / v)
    if route is LimitRoute.HAHN_MI:
        b, c1, c2 = (ar.num(x) for x in (p.beta, p.c1, p.c2))
        return hahn.recursion_raw(n1, n2, c1 * v, c2 * v, -v, -b)
    if route is LimitRoute.HAHN_MII:
        b1, b2, c = (ar.num(x) for x in (p.beta1, p.beta2, p.c))
        return hahn.recursion_raw(n1, n2, b1 - 1, b2 - 1, (1 - c) / c * v, v)
    if route is LimitRoute.HAHN_K:
        p1, p2 = ar.num(p.p1), ar.num(p.p2)
        return hahn.recursion_raw(n1, n2, p1 / (1 - p1) * v, p2 / (1 - p2) * v, v, p.N)
    if route is LimitRoute.JP_LI:
        src = JacobiPineiroParams(ar.num(p.alpha1), ar.num(p.alpha2), v)
        return _scaled(family(FamilyId.JacobiPineiro, src).recursion(n1, n2), v)
    if route is LimitRoute.MII_LI:
        src = MeixnerIIParams(ar.num(p.alpha1) + 1, ar.num(p.alpha2) + 1, v)
        return _scaled(family(FamilyId.MeixnerII, src).recursion(n1, n2), 1 - v)
    if route is LimitRoute.MI_LII:
        a0, c1, c2 = (ar.num(x) for x in (p.alpha0, p.c1, p.c2))
        src = MeixnerIParams(a0 + 1, v / (v + c1), v / (v + c2))
        return _scaled(family(FamilyId.MeixnerI, src).recursion(n1, n2), 1 / v)
    if route is LimitRoute.MI_C:
        src = MeixnerIParams(v, ar.num(p.b1) / v, ar.num(p.b2) / v)
        return family(FamilyId.MeixnerI, src).recursion(n1, n2)
    if route is LimitRoute.K_C:
        N = int(_coerce_param(limit_param))
        src = KravchukParams(ar.num(p.b1) / N, ar.num(p.b2) / N, N)
        return family(FamilyId.Kravchuk, src).recursion(n1, n2)
    raise ValueError(route)  # pragma: no cover


def recursion_limit_residual(route, idx, limit_param, params, bits: int = DEFAULT_PRECISION):
    """Max deviation between the rescaled source coefficients and the target's."""
    route = LimitRoute.parse(route)
    src = route_recursion(route, idx, limit_param, params, bits)
    ar = FloatArith(bits)
    tgt = family(ROUTES[route].target, params).recursion(*as_index(idx))
    names = ("b1", "b2", "c", "d1", "d2")
    return max(abs(ar.num(getattr(src, k)) - ar.num(getattr(tgt, k))) for k in names)


def recursion_convergence(route, idx, param_sequence, params, bits: int = DEFAULT_PRECISION):
    """``(residuals, fitted order)`` for the recursion coefficients along a route."""
    route = LimitRoute.parse(route)
    ar = FloatArith(bits)
    seq = [_coerce_param(v) for v in param_sequence]
    res = [recursion_limit_residual(route, idx, v, params, bits) for v in seq]
    if any(r == 0 for r in res):
        return res, None
    return res, fit_order([route_scale(route, v, ar) for v in seq], res, ar.ctx)



# ---------------------------------------------------------------------------
# defaults used by the verification suite and the CLI

_DECADES = (100, 1000, 10000)

# c2 = 2/7 keeps (1 - c_a) N off the integers for N = 10^k, where the Hahn
# type I formula and the route prefactor hit matching Gamma poles
LIMIT_DEFAULTS = {
    LimitRoute.HAHN_JP: (JacobiPineiroParams(Fraction(1, 2), Fraction(1, 3), Fraction(1, 4)), _DECADES),
    LimitRoute.HAHN_MI: (MeixnerIParams(Fraction(5, 2), Fraction(1, 3), Fraction(2, 7)), _DECADES),
    LimitRoute.HAHN_MII: (MeixnerIIParams(Fraction(3, 2), Fraction(7, 3), Fraction(1, 3)), _DECADES),
    LimitRoute.HAHN_K: (KravchukParams(Fraction(1, 3), Fraction(1, 4), 7), _DECADES),
    LimitRoute.JP_LI: (LaguerreIParams(Fraction(1, 2), Fraction(1, 3)), _DECADES),
    LimitRoute.MII_LI: (
        LaguerreIParams(Fraction(1, 2), Fraction(1, 3)),
        (Fraction(99, 100), Fraction(999, 1000), Fraction(9999, 10000)),
    ),
    LimitRoute.MI_LII: (LaguerreIIParams(Fraction(1, 2), Fraction(1, 3), Fraction(2, 5)), _DECADES),
    LimitRoute.MI_C: (CharlierParams(Fraction(2), Fraction(3)), _DECADES),
    LimitRoute.K_C: (CharlierParams(Fraction(2), Fraction(3)), _DECADES),
}

LAGUERRE_MATCH_T = 10**30
