"""Hahn multiple orthogonal polynomials of type I and type II.

Everything lives on the support ``{0, ..., N}``; polynomials are returned in
the Pochhammer basis ``(-x)_l``.  The explicit Kampé de Fériet formulas are
cross-checked against :func:`solve_oracle`, which builds the moment system
straight from the orthogonality conditions.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .linalg import SingularSystemError, solve
from .scalar import (
    ExactArith,
    PochPolynomial,
    PoleError,
    factorial,
    pochhammer,
)


class InvalidIndexError(ValueError):
    pass


class Kind(str, enum.Enum):
    typeI = "type1"
    typeII = "type2"


@dataclass(frozen=True)
class HahnParams:
    alpha1: Any
    alpha2: Any
    beta: Any
    N: int

    def __post_init__(self):
        for name in ("alpha1", "alpha2", "beta"):
            v = getattr(self, name)
            if isinstance(v, (int, Fraction)):
                object.__setattr__(self, name, Fraction(v))
            if not v > -1:
                raise ValueError(f"{name} must exceed -1, got {v}")
        if int(self.N) != self.N or self.N < 0:
            raise ValueError(f"N must be a nonnegative integer, got {self.N}")
        object.__setattr__(self, "N", int(self.N))

    def alpha(self, a: int):
        return self.alpha1 if a == 1 else self.alpha2

    def swapped(self) -> "HahnParams":
        return HahnParams(self.alpha2, self.alpha1, self.beta, self.N)


@dataclass(frozen=True)
class MultiIndex:
    n1: int
    n2: int

    def __post_init__(self):
        if self.n1 < 0 or self.n2 < 0:
            raise InvalidIndexError(f"negative multi-index {(self.n1, self.n2)}")

    @property
    def total(self) -> int:
        return self.n1 + self.n2

    def __iter__(self):
        return iter((self.n1, self.n2))

    def n(self, a: int) -> int:
        return self.n1 if a == 1 else self.n2

    def swapped(self) -> "MultiIndex":
        return MultiIndex(self.n2, self.n1)

    def __str__(self):
        return f"({self.n1},{self.n2})"


def as_index(idx) -> MultiIndex:
    return idx if isinstance(idx, MultiIndex) else MultiIndex(*idx)


@dataclass(frozen=True)
class TypeIPair:
    """Type I pair ``(A^(1), A^(2))``; ``source`` says which route built it."""

    q1: PochPolynomial
    q2: PochPolynomial
    source: str = "explicit"
    diagnostic: str | None = field(default=None, compare=False)

    def __getitem__(self, a: int):
        if a not in (1, 2):
            raise IndexError(a)
        return self.q1 if a == 1 else self.q2

    def coefficients(self) -> tuple[tuple, tuple]:
        return self.q1.coeffs, self.q2.coeffs

    def same_as(self, other: "TypeIPair") -> bool:
        return self.q1 == other.q1 and self.q2 == other.q2

    def combine(self, other: "TypeIPair", sign=1) -> "TypeIPair":
        return TypeIPair(self.q1 + other.q1.scale(sign), self.q2 + other.q2.scale(sign), "derived")

    def scale(self, f) -> "TypeIPair":
        return TypeIPair(self.q1.scale(f), self.q2.scale(f), self.source)


ZERO_PAIR = TypeIPair(PochPolynomial(()), PochPolynomial(()), "zero")


@dataclass(frozen=True)
class RecursionCoefficients:
    b1: Any
    b2: Any
    c: Any
    d1: Any
    d2: Any

    def swapped(self) -> "RecursionCoefficients":
        return RecursionCoefficients(self.b2, self.b1, self.c, self.d2, self.d1)

    def b(self, a: int):
        return self.b1 if a == 1 else self.b2

    def d(self, a: int):
        return self.d1 if a == 1 else self.d2


def _check_index(idx: MultiIndex, params: HahnParams) -> None:
    if idx.total > params.N + 1:
        raise InvalidIndexError(f"index {idx} needs n1+n2 <= N+1 = {params.N + 1}")


def _nonzero(v, what: str):
    if v == 0:
        raise PoleError(f"vanishing {what}")
    return v


# ---------------------------------------------------------------------------
# weights


def weight_raw(k, alpha, beta, N, ar=None):
    """``Gamma(alpha+k+1) Gamma(beta+N-k+1) / (Gamma(alpha+1) k! Gamma(beta+1) (N-k)!)``.

    ``k`` and ``N`` must be integers; ``alpha`` and ``beta`` are free.
    """
    return pochhammer(alpha + 1, k) / factorial(k) * pochhammer(beta + 1, N - k) / factorial(N - k)


def hahn_weight(k: int, a: int, params: HahnParams):
    if not 0 <= k <= params.N:
        raise ValueError(f"point {k} outside the support 0..{params.N}")
    return weight_raw(k, params.alpha(a), params.beta, params.N)


# ---------------------------------------------------------------------------
# type II


def type2_coeffs(n1: int, n2: int, a1, a2, beta, N, ar=None) -> list:
    """Pochhammer-basis coefficients of the monic type II Hahn polynomial.

    Parameters are unconstrained scalars so limit routes can feed in
    out-of-domain values such as ``beta = -N``.  ``(-N)_{n1+n2}/(-N)_l`` is
    folded into ``(-N+l)_{n1+n2-l}`` so integer ``N < n1+n2`` stays finite.
    """
    ar = ar or ExactArith()
    n = n1 + n2
    one = ar.num(1)
    pref = pochhammer(a1 + 1, n1) * pochhammer(a2 + 1, n2)
    pref = pref / _nonzero(
        pochhammer(a1 + beta + n + 1, n1) * pochhammer(a2 + beta + n + 1, n2),
        "(alpha1+beta+n1+n2+1)_n1 (alpha2+beta+n1+n2+1)_n2",
    )
    coeffs = []
    for l in range(n + 1):
        inner = 0 * one
        for m in range(max(0, l - n2), min(l, n1) + 1):
            r = l - m
            t = pochhammer(-n1, m) * pochhammer(-n2, r) / (factorial(m) * factorial(r))
            t = t * pochhammer(a2 + beta + n + 1, r) * pochhammer(a1 + n1 + 1, r)
            t = t / _nonzero(pochhammer(a2 + 1, r) * pochhammer(a1 + beta + n1 + 1, r), "(alpha2+1)_r (alpha1+beta+n1+1)_r")
            inner = inner + t
        outer = pochhammer(a1 + beta + n1 + 1, l) / _nonzero(pochhammer(a1 + 1, l), "(alpha1+1)_l")
        coeffs.append(pref * outer * inner * pochhammer(-N + l, n - l) * one)
    return coeffs


def hahn_type2(idx, params: HahnParams) -> PochPolynomial:
    idx = as_index(idx)
    _check_index(idx, params)
    p = params
    return PochPolynomial(tuple(type2_coeffs(idx.n1, idx.n2, p.alpha1, p.alpha2, p.beta, p.N)))


# ---------------------------------------------------------------------------
# type I explicit formula


def type1_coeffs(a: int, n1: int, n2: int, a1, a2, beta, N, ar=None) -> list:
    """Coefficients ``C^{(a),l}`` of the explicit type I Hahn polynomial.

    Valid for ``n1, n2 >= 1``.  ``N`` may be non-integer in float mode (the
    factorial and the long Pochhammer become Gamma ratios).
    """
    ar = ar or ExactArith()
    if n1 < 1 or n2 < 1:
        raise InvalidIndexError("explicit type I formula needs n1, n2 >= 1")
    n = n1 + n2
    na = n1 if a == 1 else n2
    nh = n - na
    al, ah = (a1, a2) if a == 1 else (a2, a1)
    shift = al - ah - nh + 1

    den = (
        factorial(n1 - 1)
        * factorial(n2 - 1)
        * pochhammer(beta + 1, n - 1)
        * ar.poch(al + beta + n + na, N + 1 - n)
        * pochhammer(shift, n - 1)
    )
    pref = (-1) ** (na - 1) * ar.fact(N + 1 - n) * factorial(n - 2) * pochhammer(ah + beta + nh + 1, n - 1)
    pref = pref / _nonzero(den, "type I prefactor denominator (alpha_a-alpha_hat-n_hat+1)_{n1+n2-1} etc.")

    coeffs = []
    for l in range(na):
        inner = 0 * ar.num(1)
        for m in range(na - l):
            t = pochhammer(-na + 1, l + m) * pochhammer(-N + l, m) * pochhammer(ah - al - na + 1, m)
            t = t / _nonzero(
                factorial(m) * pochhammer(-n + 2, l + m) * pochhammer(ah + beta + nh + 1, l + m),
                "(-n1-n2+2)_{l+m} (alpha_hat+beta+n_hat+1)_{l+m}",
            )
            inner = inner + t
        # (-N)_l cancels against the (-N)_{l+m} of the inner sum
        outer = pochhammer(al + beta + n, l) * pochhammer(shift, l)
        outer = outer / _nonzero(factorial(l) * pochhammer(al + 1, l), "(alpha_a+1)_l")
        coeffs.append(pref * outer * inner)
    return coeffs


def explicit_type1(idx, params: HahnParams) -> TypeIPair:
    idx = as_index(idx)
    p = params
    q = [
        PochPolynomial(tuple(type1_coeffs(a, idx.n1, idx.n2, p.alpha1, p.alpha2, p.beta, p.N)))
        for a in (1, 2)
    ]
    return TypeIPair(q[0], q[1], "explicit")


def hahn_type1(idx, params: HahnParams) -> TypeIPair:
    """Type I pair at ``idx``.

    Interior indexes use the explicit formula; boundary indexes, and any
    parameter point where a Pochhammer denominator vanishes, go to the oracle.
    """
    idx = as_index(idx)
    _check_index(idx, params)
    if idx.total == 0:
        return ZERO_PAIR
    if min(idx.n1, idx.n2) == 0:
        return _oracle_type1(idx, params, "boundary index")
    try:
        return explicit_type1(idx, params)
    except PoleError as exc:
        return _oracle_type1(idx, params, f"pole in explicit formula: {exc}")


def _oracle_type1(idx, params, why):
    pair = solve_oracle(idx, Kind.typeI, params)
    return TypeIPair(pair.q1, pair.q2, "oracle", why)


# ---------------------------------------------------------------------------
# linear forms and sums


def linear_form(k: int, idx, params: HahnParams, pair: TypeIPair | None = None):
    if not 0 <= k <= params.N:
        raise ValueError(f"point {k} outside the support 0..{params.N}")
    pair = pair or hahn_type1(idx, params)
    return pair.q1(k) * hahn_weight(k, 1, params) + pair.q2(k) * hahn_weight(k, 2, params)


def linear_form_values(idx, params: HahnParams, pair: TypeIPair | None = None) -> list:
    pair = pair or hahn_type1(idx, params)
    return [linear_form(k, idx, params, pair) for k in range(params.N + 1)]


class MomentRangeError(ValueError):
    pass


def moment_sum(idx, kind, j: int, params: HahnParams, a: int | None = None, force: bool = False):
    """Type I: ``sum_k (-N+k)_j Q(k)``; type II: ``sum_k (-k)_j B(k) w_a(k)``."""
    idx = as_index(idx)
    kind = Kind(kind)
    N = params.N
    if kind is Kind.typeI:
        if not force and not 0 <= j <= idx.total - 1:
            raise MomentRangeError(f"type I moment j={j} outside 0..{idx.total - 1}")
        vals = linear_form_values(idx, params)
        return sum((pochhammer(-N + k, j) * vals[k] for k in range(N + 1)), Fraction(0))
    if a not in (1, 2):
        raise ValueError("type II moment needs a weight index a in {1, 2}")
    if not force and not 0 <= j <= idx.n(a) - 1:
        raise MomentRangeError(f"type II moment j={j} outside 0..{idx.n(a) - 1}")
    b = hahn_type2(idx, params)
    return sum((pochhammer(-k, j) * b(k) * hahn_weight(k, a, params) for k in range(N + 1)), Fraction(0))


def biorth_pairing(n, m, params: HahnParams):
    n, m = as_index(n), as_index(m)
    vals = linear_form_values(n, params)
    b = hahn_type2(m, params)
    return sum((vals[k] * b(k) for k in range(params.N + 1)), Fraction(0))


def biorth_expected(n, m) -> int | None:
    """0/1 value the biorthogonality theorem assigns, or ``None`` if silent."""
    n, m = as_index(n), as_index(m)
    if m.total == n.total - 1:
        return 1
    if n.n1 <= m.n1 and n.n2 <= m.n2:
        return 0
    if m.total <= n.total - 2:
        return 0
    return None


# ---------------------------------------------------------------------------
# recursion coefficients


def _A_core(n1, n2, a1, a2, b):
    """``A`` without its factor ``(N + n1 + a1 + b + 1)``."""
    num = n1 * (n1 + n2 + a2 + b) * (n1 + n2 + b)
    if num == 0:
        return num
    den = (n1 + 2 * n2 + a2 + b) * (2 * n1 + n2 + a1 + b) * (2 * n1 + n2 + a1 + b + 1)
    return num / _nonzero(den, "denominator of A")


def _B_core(n1, n2, a1, a2, b):
    """``B`` without its factor ``(N - n1 - n2 + 1)``."""
    num = (n1 + a1 - a2) * (n1 + n2 + a1 + b) * (n1 + n2 + b - 1)
    if num == 0:
        return num
    den = (n1 + 2 * n2 + a2 + b - 1) * (2 * n1 + n2 + a1 + b) * (2 * n1 + n2 + a1 + b - 1)
    return num / _nonzero(den, "denominator of B")


def _C_core(n1, n2, a1, a2, b):
    """``C`` without its factor ``(N - n1 - n2 + 2)``."""
    num = (n1 + a1) * (n1 + n2 + a1 + b - 1) * (n1 + n2 + a2 + b - 1)
    if num == 0:
        return num
    den = (n1 + 2 * n2 + a2 + b - 2) * (2 * n1 + n2 + a1 + b - 2) * (2 * n1 + n2 + a1 + b - 1)
    return num / _nonzero(den, "denominator of C")


def _A(n1, n2, a1, a2, b, N):
    return _A_core(n1, n2, a1, a2, b) * (N + n1 + a1 + b + 1)


def _B(n1, n2, a1, a2, b, N):
    return _B_core(n1, n2, a1, a2, b) * (N - n1 - n2 + 1)


def _C(n1, n2, a1, a2, b, N):
    return _C_core(n1, n2, a1, a2, b) * (N - n1 - n2 + 2)


def _D(n1, n2, a1, a2, b, N):
    num = n1 * n2 * (n1 + n2 + b)
    den = (2 * n1 + n2 + a1 + b + 1) * (n1 + 2 * n2 + a2 + b)
    if num == 0:
        return num
    return num / _nonzero(den, "denominator of D")


def b1_raw(n1, n2, a1, a2, b, N):
    return _A(n1, n2, a1, a2, b, N) + _A(n2, n1, a2, a1 + 1, b, N) + _C(n1 + 1, n2 + 1, a1, a2, b, N) + _D(
        n1, n2, a1, a2, b, N
    )


def c_raw(n1, n2, a1, a2, b, N):
    A = _A(n1, n2, a1, a2, b, N)
    first = (A + _A(n2, n1, a2, a1 + 1, b, N) + _D(n1, n2, a1, a2, b, N)) * _C(n2, n1 + 1, a2, a1, b, N)
    return first + (A * _B(n1, n2, a1, a2, b, N) if A != 0 else A)


def _abc(n1, n2, a1, a2, b, N):
    A = _A(n1, n2, a1, a2, b, N)
    if A == 0:
        return A
    return A * _B(n1, n2, a1, a2, b, N) * _C(n1, n2, a1, a2, b, N)


def d1_raw(n1, n2, a1, a2, b, N):
    """``d1`` from the A-B-C product taken at swapped arguments.

    The product at unswapped arguments is the pairing against
    ``Q_(n1, n2-1)``, i.e. ``d2``; the two labels are interchanged in print.
    ``d1`` vanishes when ``n1 == 0`` since ``Q_(-1, n2)`` is zero.
    """
    if n1 == 0:
        return b * 0
    return _abc(n2, n1, a2, a1, b, N)


def recursion_raw(n1, n2, a1, a2, b, N) -> RecursionCoefficients:
    return RecursionCoefficients(
        b1_raw(n1, n2, a1, a2, b, N),
        b1_raw(n2, n1, a2, a1, b, N),
        c_raw(n1, n2, a1, a2, b, N),
        d1_raw(n1, n2, a1, a2, b, N),
        d1_raw(n2, n1, a2, a1, b, N),
    )


def recursion_coeffs(idx, params: HahnParams) -> RecursionCoefficients:
    idx = as_index(idx)
    _check_index(idx, params)
    p = params
    return recursion_raw(idx.n1, idx.n2, p.alpha1, p.alpha2, p.beta, p.N)


# ---------------------------------------------------------------------------
# recursion relations and reconstruction

_ZERO_POLY = PochPolynomial(())


def _type2_or_zero(i, j, params):
    if i < 0 or j < 0:
        return _ZERO_POLY
    return hahn_type2((i, j), params)


def _type1_or_zero(i, j, params):
    if i < 0 or j < 0:
        return ZERO_PAIR
    return hahn_type1((i, j), params)


def recursion_residuals(idx, params: HahnParams) -> dict:
    """Residual polynomials of the near-neighbor relations at ``idx``.

    Keys ``II.1``..``II.4`` and ``II.conn`` map to one polynomial; ``I.1``..``I.4``
    and ``I.conn`` map to the pair of residuals for ``A^(1)``, ``A^(2)``.  A
    relation is reported only when every index it touches is non-negative.
    All residuals vanish identically for a correct implementation.
    """
    idx = as_index(idx)
    n1, n2 = idx
    p = params
    rc = lambda i, j: recursion_coeffs((i, j), p)
    B = lambda i, j: _type2_or_zero(i, j, p)
    out: dict = {}

    r = rc(n1, n2)
    xb = B(n1, n2).times_x()
    if n1 >= 1:
        out["II.1"] = xb - B(n1 + 1, n2) - B(n1, n2) * r.b1 - B(n1 - 1, n2) * r.c - B(n1 - 1, n2 - 1) * r.d1
        out["II.2"] = xb - B(n1, n2 + 1) - B(n1, n2) * r.b2 - B(n1 - 1, n2) * r.c - B(n1 - 1, n2 - 1) * r.d1
    if n2 >= 1:
        out["II.3"] = xb - B(n1 + 1, n2) - B(n1, n2) * r.b1 - B(n1, n2 - 1) * r.c - B(n1 - 1, n2 - 1) * r.d2
        out["II.4"] = xb - B(n1, n2 + 1) - B(n1, n2) * r.b2 - B(n1, n2 - 1) * r.c - B(n1 - 1, n2 - 1) * r.d2
    out["II.conn"] = B(n1 + 1, n2) - B(n1, n2 + 1) - B(n1, n2) * (r.b2 - r.b1)

    if idx.total == 0:
        return out
    Q = lambda i, j: _type1_or_zero(i, j, p)
    q = Q(n1, n2)
    top = Q(n1 + 1, n2 + 1)
    c = r.c

    def pair_res(lower, bcoef, mid, dcoef):
        return tuple(q[a].times_x() - lower[a] - q[a] * bcoef - mid[a] * c - top[a] * dcoef for a in (1, 2))

    if n1 >= 1:
        b1 = rc(n1 - 1, n2).b1
        out["I.1"] = pair_res(Q(n1 - 1, n2), b1, Q(n1 + 1, n2), rc(n1 + 1, n2).d1)
        out["I.3"] = pair_res(Q(n1 - 1, n2), b1, Q(n1, n2 + 1), rc(n1, n2 + 1).d2)
    if n2 >= 1:
        b2 = rc(n1, n2 - 1).b2
        out["I.2"] = pair_res(Q(n1, n2 - 1), b2, Q(n1 + 1, n2), rc(n1 + 1, n2).d1)
        out["I.4"] = pair_res(Q(n1, n2 - 1), b2, Q(n1, n2 + 1), rc(n1, n2 + 1).d2)
    if n1 >= 1 and n2 >= 1:
        delta = rc(n1, n2 - 1).b2 - rc(n1 - 1, n2).b1
        lo1, lo2 = Q(n1 - 1, n2), Q(n1, n2 - 1)
        out["I.conn"] = tuple(lo1[a] - lo2[a] - q[a] * delta for a in (1, 2))
    return dict(sorted(out.items()))


def residual_is_zero(res) -> bool:
    if isinstance(res, tuple):
        return all(r.is_zero() for r in res)
    return res.is_zero()


def reconstruct_type1(idx, seed10: TypeIPair, seed11: TypeIPair, coeffs, zero: TypeIPair = ZERO_PAIR) -> TypeIPair:
    """Rebuild ``Q_idx`` from ``Q_(1,0)``, ``Q_(1,1)`` and recursion coefficients.

    ``coeffs(i, j)`` must return the :class:`RecursionCoefficients` at
    ``(i, j)``.  The step line ``(n, n)``, ``(n+1, n)`` is climbed with the
    second and third type I relations; every other index is reached from the
    step line along its diagonal with the connection relation.
    """
    idx = as_index(idx)
    memo: dict = {(0, 0): zero, (1, 0): seed10, (1, 1): seed11}

    def step(pair):
        return TypeIPair(pair.q1.times_x(), pair.q2.times_x(), "recursion")

    def divide(pair, d, where):
        if d == 0:
            raise PoleError(f"vanishing d coefficient at {where} on the step line")
        return pair.scale(1 / d)

    def step_line(i, j):
        # (n+1, n+1) from the second relation at (n, n)
        if i == j:
            n = i - 1
            rest = step(get(n, n))
            rest = rest.combine(get(n, n - 1), -1)
            rest = rest.combine(get(n, n).scale(coeffs(n, n - 1).b2), -1)
            rest = rest.combine(get(n + 1, n).scale(coeffs(n, n).c), -1)
            return divide(rest, coeffs(n + 1, n).d1, (n + 1, n))
        # (n+2, n+1) from the third relation at (n+1, n)
        n = j - 1
        rest = step(get(n + 1, n))
        rest = rest.combine(get(n, n), -1)
        rest = rest.combine(get(n + 1, n).scale(coeffs(n, n).b1), -1)
        rest = rest.combine(get(n + 1, n + 1).scale(coeffs(n + 1, n).c), -1)
        return divide(rest, coeffs(n + 1, n + 1).d2, (n + 1, n + 1))

    def get(i, j):
        if i < 0 or j < 0:
            return zero
        key = (i, j)
        if key in memo:
            return memo[key]
        m = j - i
        if m in (0, -1):
            val = step_line(i, j)
        elif m < -1:
            # connection at (i, j+1): Q_(i-1,j+1) - Q_(i,j) = delta Q_(i,j+1)
            delta = coeffs(i, j).b2 - coeffs(i - 1, j + 1).b1
            val = get(i - 1, j + 1).combine(get(i, j + 1).scale(delta), -1)
        else:
            # connection at (i+1, j): Q_(i,j) - Q_(i+1,j-1) = delta Q_(i+1,j)
            delta = coeffs(i + 1, j - 1).b2 - coeffs(i, j).b1
            val = get(i + 1, j - 1).combine(get(i + 1, j).scale(delta))
        memo[key] = TypeIPair(val.q1, val.q2, "recursion")
        return memo[key]

    return get(idx.n1, idx.n2)


def type1_via_recursion(idx, params: HahnParams) -> TypeIPair:
    idx = as_index(idx)
    _check_index(idx, params)
    if tuple(idx) in ((1, 0), (1, 1)):
        return hahn_type1(idx, params)
    return reconstruct_type1(
        idx,
        hahn_type1((1, 0), params),
        hahn_type1((1, 1), params),
        lambda i, j: recursion_coeffs((i, j), params),
    )


# ---------------------------------------------------------------------------
# oracle


def _moment_matrix_type1(idx: MultiIndex, params: HahnParams):
    N = params.N
    w = {a: [hahn_weight(k, a, params) for k in range(N + 1)] for a in (1, 2)}
    n = idx.total
    rows = []
    for j in range(n):
        test = [pochhammer(-N + k, j) for k in range(N + 1)]
        row = []
        for a in (1, 2):
            for l in range(idx.n(a)):
                row.append(sum((test[k] * pochhammer(-k, l) * w[a][k] for k in range(N + 1)), Fraction(0)))
        rows.append(row)
    return rows


def solve_oracle(idx, kind, params: HahnParams):
    """Brute-force type I pair or type II polynomial from the moment system."""
    idx = as_index(idx)
    kind = Kind(kind)
    _check_index(idx, params)
    n = idx.total
    N = params.N
    if kind is Kind.typeII:
        if n == 0:
            return PochPolynomial((Fraction(1),))
        lead = Fraction((-1) ** n)
        rows, rhs = [], []
        for a in (1, 2):
            w = [hahn_weight(k, a, params) for k in range(N + 1)]
            for j in range(idx.n(a)):
                test = [pochhammer(-k, j) * w[k] for k in range(N + 1)]
                rows.append([sum((test[k] * pochhammer(-k, l) for k in range(N + 1)), Fraction(0)) for l in range(n)])
                rhs.append(-lead * sum((test[k] * pochhammer(-k, n) for k in range(N + 1)), Fraction(0)))
        try:
            sol = solve(rows, rhs)
        except SingularSystemError as exc:
            raise SingularSystemError(f"type II moment system singular at {idx}") from exc
        return PochPolynomial(tuple(sol) + (lead,))
    if n == 0:
        return ZERO_PAIR
    rows = _moment_matrix_type1(idx, params)
    rhs = [Fraction(0)] * (n - 1) + [Fraction(1)]
    try:
        sol = solve(rows, rhs)
    except SingularSystemError as exc:
        raise SingularSystemError(f"type I moment system singular at {idx}") from exc
    return TypeIPair(PochPolynomial(tuple(sol[: idx.n1])), PochPolynomial(tuple(sol[idx.n1 :])), "oracle")
