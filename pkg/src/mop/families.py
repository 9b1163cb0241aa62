"""The seven descendants of the Hahn family in the multiple Askey scheme.

Each family carries its weights, explicit type II and type I polynomials,
near-neighbor recursion coefficients and a moment functional.  Type I
polynomials factor as ``g_a * core`` where ``g_a`` is a per-weight constant
that does not depend on the index (a Beta or Gamma value, ``(1-c)^beta``,
``e^{-b}``) and ``core`` is rational for rational parameters.  The matching
moments ``nu_a(m) = g_a * <basis_m, w_a>`` are rational as well, so every
orthogonality relation can be checked exactly on the cores.

Discrete families use the basis ``(-x)_l``, continuous ones ``x^l``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, fields, replace
from fractions import Fraction
from typing import Any

from . import hahn
from .hahn import (
    InvalidIndexError,
    MultiIndex,
    RecursionCoefficients,
    TypeIPair,
    as_index,
    reconstruct_type1,
)
from .linalg import SingularSystemError, solve
from .scalar import (
    DEFAULT_PRECISION,
    ExactArith,
    FloatArith,
    MonoPolynomial,
    PochPolynomial,
    PoleError,
    binomial,
    factorial,
    mono_to_poch,
    poch_to_mono,
    pochhammer,
)


class FamilyId(str, enum.Enum):
    JacobiPineiro = "JacobiPineiro"
    MeixnerI = "MeixnerI"
    MeixnerII = "MeixnerII"
    Kravchuk = "Kravchuk"
    LaguerreI = "LaguerreI"
    LaguerreII = "LaguerreII"
    Charlier = "Charlier"

    @classmethod
    def parse(cls, text: str) -> "FamilyId":
        key = text.replace("-", "").replace("_", "").replace(" ", "").lower()
        for fam in cls:
            if key in (fam.value.lower(), SHORT_NAMES[fam].lower()):
                return fam
        raise ValueError(f"unknown family {text!r}")


SHORT_NAMES = {
    FamilyId.JacobiPineiro: "JP",
    FamilyId.MeixnerI: "MI",
    FamilyId.MeixnerII: "MII",
    FamilyId.Kravchuk: "K",
    FamilyId.LaguerreI: "LI",
    FamilyId.LaguerreII: "LII",
    FamilyId.Charlier: "C",
}


class TailBoundError(ArithmeticError):
    """Truncated series could not reach the requested tail bound."""


# ---------------------------------------------------------------------------
# parameter records


def _is_int(v) -> bool:
    try:
        return v == int(v)
    except (TypeError, ValueError, OverflowError):
        return False


class _Params:
    check_domain = True

    def __post_init__(self):
        if self.check_domain:
            self.validate()

    def validate(self):  # pragma: no cover - overridden
        pass

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


@dataclass(frozen=True)
class JacobiPineiroParams(_Params):
    alpha1: Any
    alpha2: Any
    beta: Any

    def validate(self):
        if not (self.alpha1 > -1 and self.alpha2 > -1 and self.beta > -1):
            raise ValueError("Jacobi-Pineiro needs alpha1, alpha2, beta > -1")
        if _is_int(self.alpha1 - self.alpha2):
            raise ValueError("Jacobi-Pineiro needs alpha1 - alpha2 not an integer")

    def swapped(self):
        return replace(self, alpha1=self.alpha2, alpha2=self.alpha1)


@dataclass(frozen=True)
class MeixnerIParams(_Params):
    beta: Any
    c1: Any
    c2: Any

    def validate(self):
        if not self.beta > 0:
            raise ValueError("Meixner I needs beta > 0")
        if not (0 < self.c1 < 1 and 0 < self.c2 < 1) or self.c1 == self.c2:
            raise ValueError("Meixner I needs 0 < c1, c2 < 1 and c1 != c2")

    def swapped(self):
        return replace(self, c1=self.c2, c2=self.c1)


@dataclass(frozen=True)
class MeixnerIIParams(_Params):
    beta1: Any
    beta2: Any
    c: Any

    def validate(self):
        if not (self.beta1 > 0 and self.beta2 > 0):
            raise ValueError("Meixner II needs beta1, beta2 > 0")
        if not 0 < self.c < 1:
            raise ValueError("Meixner II needs 0 < c < 1")
        if _is_int(self.beta1 - self.beta2):
            raise ValueError("Meixner II needs beta1 - beta2 not an integer")

    def swapped(self):
        return replace(self, beta1=self.beta2, beta2=self.beta1)


@dataclass(frozen=True)
class KravchukParams(_Params):
    p1: Any
    p2: Any
    N: int

    def validate(self):
        if not (0 < self.p1 < 1 and 0 < self.p2 < 1) or self.p1 == self.p2:
            raise ValueError("Kravchuk needs 0 < p1, p2 < 1 and p1 != p2")
        if not _is_int(self.N) or self.N < 0:
            raise ValueError("Kravchuk needs a non-negative integer N")
        object.__setattr__(self, "N", int(self.N))

    def swapped(self):
        return replace(self, p1=self.p2, p2=self.p1)


@dataclass(frozen=True)
class LaguerreIParams(_Params):
    alpha1: Any
    alpha2: Any

    def validate(self):
        if not (self.alpha1 > -1 and self.alpha2 > -1):
            raise ValueError("Laguerre I needs alpha1, alpha2 > -1")
        if _is_int(self.alpha1 - self.alpha2):
            raise ValueError("Laguerre I needs alpha1 - alpha2 not an integer")

    def swapped(self):
        return replace(self, alpha1=self.alpha2, alpha2=self.alpha1)


@dataclass(frozen=True)
class LaguerreIIParams(_Params):
    alpha0: Any
    c1: Any
    c2: Any

    def validate(self):
        if not self.alpha0 > -1:
            raise ValueError("Laguerre II needs alpha0 > -1")
        if not (self.c1 > 0 and self.c2 > 0) or self.c1 == self.c2:
            raise ValueError("Laguerre II needs c1, c2 > 0 and c1 != c2")

    def swapped(self):
        return replace(self, c1=self.c2, c2=self.c1)


@dataclass(frozen=True)
class CharlierParams(_Params):
    b1: Any
    b2: Any

    def validate(self):
        if not (self.b1 > 0 and self.b2 > 0) or self.b1 == self.b2:
            raise ValueError("Charlier needs b1, b2 > 0 and b1 != b2")

    def swapped(self):
        return replace(self, b1=self.b2, b2=self.b1)


PARAMS_TYPE = {
    FamilyId.JacobiPineiro: JacobiPineiroParams,
    FamilyId.MeixnerI: MeixnerIParams,
    FamilyId.MeixnerII: MeixnerIIParams,
    FamilyId.Kravchuk: KravchukParams,
    FamilyId.LaguerreI: LaguerreIParams,
    FamilyId.LaguerreII: LaguerreIIParams,
    FamilyId.Charlier: CharlierParams,
}


def make_params(fam, **values):
    return PARAMS_TYPE[FamilyId(fam)](**values)


# ---------------------------------------------------------------------------
# small helpers


def _nz(v, what):
    if v == 0:
        raise PoleError(f"vanishing {what}")
    return v


def _hat(a: int, v1, v2):
    """``(v_a, v_hat_a)`` for a pair of per-weight symbols."""
    return (v1, v2) if a == 1 else (v2, v1)


def _poch_expand(roots_shift, j):
    """Monomial coefficients of ``(x + s)(x + s + 1)...(x + s + j - 1)``."""
    poly = MonoPolynomial((1,))
    one = roots_shift * 0 + 1
    for i in range(j):
        poly = poly.times_x() + poly.scale(roots_shift + i)
    return MonoPolynomial(tuple(c * one for c in poly.coeffs)) if poly.coeffs else poly


def poch_product_coeffs(l: int, j: int) -> list:
    """``(-x)_l (-x)_j`` in the ``(-x)_m`` basis (index ``m``)."""
    out = [0] * (l + j + 1)
    for i in range(min(l, j) + 1):
        out[l + j - i] += (-1) ** i * binomial(l, i) * binomial(j, i) * factorial(i)
    return out


def _mul_poch(p: PochPolynomial, q: PochPolynomial) -> PochPolynomial:
    out: list = [0] * (len(p) + len(q))
    for l, a in enumerate(p.coeffs):
        if a == 0:
            continue
        for j, b in enumerate(q.coeffs):
            if b == 0:
                continue
            for m, w in enumerate(poch_product_coeffs(l, j)):
                if w:
                    out[m] += w * a * b
    return PochPolynomial(tuple(out))


def _mul_mono(p: MonoPolynomial, q: MonoPolynomial) -> MonoPolynomial:
    out: list = [0] * (len(p) + len(q))
    for l, a in enumerate(p.coeffs):
        for j, b in enumerate(q.coeffs):
            out[l + j] += a * b
    return MonoPolynomial(tuple(out))


# ---------------------------------------------------------------------------
# family base


class Family:
    """Common machinery; subclasses fill in the printed formulas."""

    fid: FamilyId
    discrete = True
    finite_support = False

    def __init__(self, params):
        self.p = params

    # -- basis ---------------------------------------------------------------
    @property
    def poly_type(self):
        return PochPolynomial if self.discrete else MonoPolynomial

    def poly(self, coeffs) -> Any:
        return self.poly_type(tuple(coeffs))

    def mul(self, p, q):
        return _mul_poch(p, q) if self.discrete else _mul_mono(p, q)

    def basis(self, m: int):
        return self.poly([0] * m + [1])

    @property
    def zero_pair(self) -> TypeIPair:
        z = self.poly([])
        return TypeIPair(z, z, "zero")

    # -- hooks ---------------------------------------------------------------
    def weight(self, a: int, x, ar):
        raise NotImplementedError

    def scale(self, a: int, ar):
        """Index-free constant ``g_a`` with ``Q^(a) = g_a * core``."""
        raise NotImplementedError

    def nu(self, a: int, m: int):
        """``g_a`` times the ``m``-th basis moment of ``w_a``."""
        raise NotImplementedError

    def type2_coeffs(self, n1: int, n2: int) -> list:
        raise NotImplementedError

    def type1_core_coeffs(self, a: int, n1: int, n2: int) -> list:
        raise NotImplementedError

    def recursion(self, n1: int, n2: int) -> RecursionCoefficients:
        raise NotImplementedError

    def test_function(self, j: int):
        """The printed orthogonality test function of degree ``j``."""
        return self.basis(j)

    def norm_function(self, n: int):
        """Test function of the normalization ``<Q, t> = 1``."""
        if self.discrete:
            return self.basis(n - 1).scale((-1) ** (n - 1))
        return self.basis(n - 1)

    def check_index(self, idx: MultiIndex):
        if idx.n1 < 0 or idx.n2 < 0:
            raise InvalidIndexError(f"negative index {idx}")

    # -- derived -------------------------------------------------------------
    def functional(self, a: int, poly):
        """``g_a * sum/integral of poly * w_a``, via the moments ``nu``."""
        total = 0
        for m, c in enumerate(poly.coeffs):
            if c != 0:
                total = total + c * self.nu(a, m)
        return total

    def type2(self, idx):
        idx = as_index(idx)
        self.check_index(idx)
        return self.poly(self.type2_coeffs(idx.n1, idx.n2))

    def type1_core(self, idx) -> TypeIPair:
        idx = as_index(idx)
        self.check_index(idx)
        if idx.total == 0:
            return self.zero_pair
        if min(idx) == 0:
            return self.oracle_type1_core(idx)
        try:
            q = [self.poly(self.type1_core_coeffs(a, idx.n1, idx.n2)) for a in (1, 2)]
        except PoleError:
            return self.oracle_type1_core(idx)
        return TypeIPair(q[0], q[1], "explicit")

    def type1(self, idx, ar) -> TypeIPair:
        core = self.type1_core(idx)
        g1, g2 = self.scale(1, ar), self.scale(2, ar)
        q1 = core.q1.map(lambda c: ar.num(c) * g1)
        q2 = core.q2.map(lambda c: ar.num(c) * g2)
        return TypeIPair(q1, q2, core.source, core.diagnostic)

    def pairing(self, pair: TypeIPair, test) -> Any:
        """``sum_a g_a <A^(a) * test, w_a>`` evaluated on cores."""
        return self.functional(1, self.mul(pair.q1, test)) + self.functional(2, self.mul(pair.q2, test))

    def oracle_type1_core(self, idx) -> TypeIPair:
        idx = as_index(idx)
        n = idx.total
        if n == 0:
            return self.zero_pair
        rows = []
        for j in range(n):
            t = self.test_function(j) if j < n - 1 else self.norm_function(n)
            row = []
            for a in (1, 2):
                for l in range(idx.n(a)):
                    row.append(self.functional(a, self.mul(self.basis(l), t)))
            rows.append(row)
        rhs = [0] * (n - 1) + [1]
        try:
            sol = solve(rows, rhs)
        except SingularSystemError as exc:
            raise SingularSystemError(f"{self.fid.value} type I moment system singular at {idx}") from exc
        return TypeIPair(self.poly(sol[: idx.n1]), self.poly(sol[idx.n1 :]), "oracle")

    def oracle_type2(self, idx):
        idx = as_index(idx)
        n = idx.total
        lead = (-1) ** n if self.discrete else 1
        if n == 0:
            return self.poly([1])
        rows, rhs = [], []
        for a in (1, 2):
            for j in range(idx.n(a)):
                t = self.test_function(j)
                rows.append([self.functional(a, self.mul(self.basis(l), t)) for l in range(n)])
                rhs.append(-lead * self.functional(a, self.mul(self.basis(n), t)))
        try:
            sol = solve(rows, rhs)
        except SingularSystemError as exc:
            raise SingularSystemError(f"{self.fid.value} type II moment system singular at {idx}") from exc
        return self.poly(list(sol) + [lead])


# ---------------------------------------------------------------------------
# Jacobi-Pineiro


class JacobiPineiro(Family):
    fid = FamilyId.JacobiPineiro
    discrete = False

    def weight(self, a, x, ar):
        if not 0 <= x <= 1:
            raise ValueError(f"Jacobi-Pineiro point {x} outside [0, 1]")
        al = self.p.alpha1 if a == 1 else self.p.alpha2
        return ar.power(x, al)

    def measure_density(self, x, ar):
        return ar.power(1 - ar.num(x), self.p.beta)

    def scale(self, a, ar):
        al = self.p.alpha1 if a == 1 else self.p.alpha2
        b = self.p.beta
        return ar.gamma(al + b + 2) / (ar.gamma(al + 1) * ar.gamma(b + 1))

    def nu(self, a, m):
        al = self.p.alpha1 if a == 1 else self.p.alpha2
        return pochhammer(al + 1, m) / pochhammer(al + self.p.beta + 2, m)

    def type2_coeffs(self, n1, n2):
        a1, a2, b = self.p.alpha1, self.p.alpha2, self.p.beta
        n = n1 + n2
        pref = (-1) ** n * pochhammer(a1 + 1, n1) * pochhammer(a2 + 1, n2)
        pref = pref / _nz(pochhammer(n + a1 + b + 1, n1) * pochhammer(n + a2 + b + 1, n2), "JP type II prefactor")
        out = []
        for l in range(n + 1):
            inner = 0
            for m in range(max(0, l - n2), min(l, n1) + 1):
                r = l - m
                t = pochhammer(-n1, m) * pochhammer(-n2, r) / (factorial(m) * factorial(r))
                t = t * pochhammer(a2 + b + n + 1, r) * pochhammer(a1 + n1 + 1, r)
                inner = inner + t / _nz(pochhammer(a2 + 1, r) * pochhammer(a1 + b + n1 + 1, r), "JP inner sum")
            out.append(pref * pochhammer(a1 + b + n1 + 1, l) / pochhammer(a1 + 1, l) * inner)
        return out

    def type1_core_coeffs(self, a, n1, n2):
        a1, a2, b = self.p.alpha1, self.p.alpha2, self.p.beta
        n = n1 + n2
        al, ah = _hat(a, a1, a2)
        na, nh = _hat(a, n1, n2)
        pref = (-1) ** (n - 1) * pochhammer(a1 + b + n, n1) * pochhammer(a2 + b + n, n2)
        pref = pref / _nz(factorial(na - 1) * pochhammer(ah - al, nh), "(alpha_hat - alpha_a)_{n_hat}")
        # Gamma(al+b+n) / (Gamma(b+n) Gamma(al+1)) = g_a (al+b+1)_{n-1} / ((al+b+1) (b+1)_{n-1})
        pref = pref * pochhammer(al + b + 1, n - 1) / ((al + b + 1) * pochhammer(b + 1, n - 1))
        out = []
        for l in range(na):
            t = pochhammer(-na + 1, l) * pochhammer(al + b + n, l) * pochhammer(al - ah - nh + 1, l)
            t = t / _nz(factorial(l) * pochhammer(al + 1, l) * pochhammer(al - ah + 1, l), "JP type I denominator")
            out.append(pref * t)
        return out

    def recursion(self, n1, n2):
        a1, a2, b = self.p.alpha1, self.p.alpha2, self.p.beta

        def b1(n1, n2, a1, a2):
            return (
                hahn._A_core(n1, n2, a1, a2, b)
                + hahn._A_core(n2, n1, a2, a1 + 1, b)
                + hahn._C_core(n1 + 1, n2 + 1, a1, a2, b)
            )

        def abc(n1, n2, a1, a2):
            A = hahn._A_core(n1, n2, a1, a2, b)
            if A == 0:
                return A
            return A * hahn._B_core(n1, n2, a1, a2, b) * hahn._C_core(n1, n2, a1, a2, b)

        A = hahn._A_core(n1, n2, a1, a2, b)
        c = (A + hahn._A_core(n2, n1, a2, a1 + 1, b)) * hahn._C_core(n2, n1 + 1, a2, a1, b)
        if A != 0:
            c = c + A * hahn._B_core(n1, n2, a1, a2, b)
        return _assign_d(self.fid, n1, n2, b1(n1, n2, a1, a2), b1(n2, n1, a2, a1), c, abc(n1, n2, a1, a2), abc(n2, n1, a2, a1))


# ---------------------------------------------------------------------------
# Meixner I


class MeixnerI(Family):
    fid = FamilyId.MeixnerI

    def weight(self, a, x, ar):
        c = self.p.c1 if a == 1 else self.p.c2
        if _is_int(x) and x >= 0:
            return ar.num(pochhammer(self.p.beta, int(x)) * c ** int(x) / factorial(int(x)))
        return ar.gamma(self.p.beta + x) * ar.power(c, x) / (ar.gamma(self.p.beta) * ar.gamma(ar.num(x) + 1))

    def weight_ratio_bound(self, a, K):
        c = self.p.c1 if a == 1 else self.p.c2
        return c * max(1, (self.p.beta + K) / (K + 1))

    def scale(self, a, ar):
        c = self.p.c1 if a == 1 else self.p.c2
        return ar.power(1 - ar.num(c), self.p.beta)

    def nu(self, a, m):
        c = self.p.c1 if a == 1 else self.p.c2
        return (-1) ** m * pochhammer(self.p.beta, m) * (c / (1 - c)) ** m

    def test_function(self, j):
        return mono_to_poch(_poch_expand(self.p.beta, j))

    def type2_coeffs(self, n1, n2):
        b, c1, c2 = self.p.beta, self.p.c1, self.p.c2
        n = n1 + n2
        u1, u2 = (c1 - 1) / c1, (c2 - 1) / c2
        pref = (c1 / (c1 - 1)) ** n1 * (c2 / (c2 - 1)) ** n2 * pochhammer(b, n)
        out = []
        for l in range(n + 1):
            s = 0
            for m in range(max(0, l - n2), min(l, n1) + 1):
                s = s + pochhammer(-n1, m) * pochhammer(-n2, l - m) / (factorial(m) * factorial(l - m)) * u1**m * u2 ** (l - m)
            out.append(pref * s / _nz(pochhammer(b, l), "(beta)_l"))
        return out

    def type1_core_coeffs(self, a, n1, n2):
        b = self.p.beta
        n = n1 + n2
        c, ch = _hat(a, self.p.c1, self.p.c2)
        na, _ = _hat(a, n1, n2)
        pref = (-1) ** (na - 1) * factorial(n - 2) * (1 - c) ** (n - 1)
        pref = pref / _nz(factorial(n1 - 1) * factorial(n2 - 1) * pochhammer(b, n - 1), "(beta)_{n-1}")
        pref = pref * ((1 - ch) / _nz(c - ch, "c_a - c_hat")) ** (n - 1)
        X = (c - ch) * (1 - c) / (c * (1 - ch))
        Y = (c - ch) / (1 - ch)
        out = []
        for l in range(na):
            s = 0
            for m in range(na - l):
                t = pochhammer(-na + 1, l + m) * pochhammer(b, l + m)
                t = t / (factorial(l) * factorial(m) * _nz(pochhammer(-n + 2, l + m) * pochhammer(b, l), "MI denominator"))
                s = s + t * X**l * Y**m
            out.append(pref * s)
        return out

    def recursion(self, n1, n2):
        b, c1, c2 = self.p.beta, self.p.c1, self.p.c2
        n = n1 + n2
        r1, r2 = c1 / (1 - c1), c2 / (1 - c2)
        b1 = n1 * (1 + c1) / (1 - c1) + n2 * (r1 + r2 + 1) + r1 * b
        b2 = n2 * (1 + c2) / (1 - c2) + n1 * (r1 + r2 + 1) + r2 * b
        cc = (b + n - 1) * (n1 * c1 / (1 - c1) ** 2 + n2 * c2 / (1 - c2) ** 2)
        common = (b + n - 2) * (b + n - 1)
        p1 = n1 * common * c1 * (c1 - c2) / ((1 - c1) ** 3 * (1 - c2))
        p2 = n2 * common * c2 * (c2 - c1) / ((1 - c1) * (1 - c2) ** 3)
        return _assign_d(self.fid, n1, n2, b1, b2, cc, p1, p2)


# ---------------------------------------------------------------------------
# Meixner II


class MeixnerII(Family):
    fid = FamilyId.MeixnerII

    def _beta(self, a):
        return self.p.beta1 if a == 1 else self.p.beta2

    def weight(self, a, x, ar):
        b, c = self._beta(a), self.p.c
        if _is_int(x) and x >= 0:
            return ar.num(pochhammer(b, int(x)) * c ** int(x) / factorial(int(x)))
        return ar.gamma(b + x) * ar.power(c, x) / (ar.gamma(b) * ar.gamma(ar.num(x) + 1))

    def weight_ratio_bound(self, a, K):
        return self.p.c * max(1, (self._beta(a) + K) / (K + 1))

    def scale(self, a, ar):
        return ar.power(1 - ar.num(self.p.c), self._beta(a))

    def nu(self, a, m):
        c = self.p.c
        return (-1) ** m * pochhammer(self._beta(a), m) * (c / (1 - c)) ** m

    def type2_coeffs(self, n1, n2):
        b1, b2, c = self.p.beta1, self.p.beta2, self.p.c
        n = n1 + n2
        pref = (c / (c - 1)) ** n * pochhammer(b1, n1) * pochhammer(b2, n2)
        u = (c - 1) / c
        out = []
        for l in range(n + 1):
            s = 0
            for m in range(max(0, l - n2), min(l, n1) + 1):
                r = l - m
                t = pochhammer(-n1, m) * pochhammer(-n2, r) * pochhammer(b1 + n1, r)
                s = s + t / (factorial(m) * factorial(r) * _nz(pochhammer(b2, r), "(beta2)_r"))
            out.append(pref * s * u**l / _nz(pochhammer(b1, l), "(beta1)_l"))
        return out

    def type1_core_coeffs(self, a, n1, n2):
        c = self.p.c
        n = n1 + n2
        ba, bh = _hat(a, self.p.beta1, self.p.beta2)
        na, nh = _hat(a, n1, n2)
        shift = ba - bh - nh + 1
        pref = (1 - c) ** (n + na - 2) / c ** (n - 1) * (-1) ** (na - 1) * factorial(n - 2)
        pref = pref / _nz(factorial(n1 - 1) * factorial(n2 - 1) * pochhammer(shift, n - 1), "(beta_a-beta_hat-n_hat+1)_{n-1}")
        w = c / (c - 1)
        out = []
        for l in range(na):
            s = 0
            for m in range(na - l):
                t = pochhammer(-na + 1, l + m) * pochhammer(bh - ba - na + 1, m)
                s = s + t / (factorial(m) * _nz(pochhammer(-n + 2, l + m), "(-n+2)_{l+m}")) * w**m
            out.append(pref * pochhammer(shift, l) / (factorial(l) * _nz(pochhammer(ba, l), "(beta_a)_l")) * s)
        return out

    def recursion(self, n1, n2):
        b1, b2, c = self.p.beta1, self.p.beta2, self.p.c
        n = n1 + n2
        r = c / (1 - c)
        bb1 = n + r * (b1 + n + n1)
        bb2 = n + r * (b2 + n + n2)
        cc = c / (1 - c) ** 2 * (n1 * n2 + n1 * (n1 + b1 - 1) + n2 * (n2 + b2 - 1))
        k = c**2 / (1 - c) ** 3
        p1 = k * n1 * (n1 + b1 - 1) * (n1 + b1 - b2)
        p2 = k * n2 * (n2 + b2 - 1) * (n2 + b2 - b1)
        return _assign_d(self.fid, n1, n2, bb1, bb2, cc, p1, p2)


# ---------------------------------------------------------------------------
# Kravchuk


class Kravchuk(Family):
    fid = FamilyId.Kravchuk
    finite_support = True

    def check_index(self, idx):
        super().check_index(idx)
        if idx.total > self.p.N:
            raise InvalidIndexError(f"Kravchuk index {idx} needs n1+n2 <= N = {self.p.N}")

    def weight(self, a, x, ar):
        N = self.p.N
        if not (_is_int(x) and 0 <= x <= N):
            raise ValueError(f"Kravchuk point {x} outside 0..{N}")
        p = self.p.p1 if a == 1 else self.p.p2
        k = int(x)
        return ar.num(binomial(N, k) * p**k * (1 - p) ** (N - k))

    def scale(self, a, ar):
        return ar.num(1)

    def nu(self, a, m):
        p = self.p.p1 if a == 1 else self.p.p2
        return pochhammer(-self.p.N, m) * p**m

    def test_function(self, j):
        return mono_to_poch(_poch_expand(Fraction(-self.p.N), j))

    def type2_coeffs(self, n1, n2):
        p1, p2, N = self.p.p1, self.p.p2, self.p.N
        n = n1 + n2
        pref = p1**n1 * p2**n2
        out = []
        for l in range(n + 1):
            s = 0
            for m in range(max(0, l - n2), min(l, n1) + 1):
                s = s + pochhammer(-n1, m) * pochhammer(-n2, l - m) / (factorial(m) * factorial(l - m)) * (1 / p1) ** m * (1 / p2) ** (l - m)
            # (-N)_n / (-N)_l folded into (-N+l)_{n-l}
            out.append(pref * s * pochhammer(-N + l, n - l))
        return out

    def type1_core_coeffs(self, a, n1, n2):
        N = self.p.N
        n = n1 + n2
        p, ph = _hat(a, self.p.p1, self.p.p2)
        na, _ = _hat(a, n1, n2)
        pref = (-1) ** (na - 1) * Fraction(factorial(n - 2))
        den = _nz(
            factorial(n1 - 1) * factorial(n2 - 1) * pochhammer(N - n + 2, n - 1) * (p - ph) ** (n - 1),
            "Kravchuk type I prefactor",
        )
        pref = pref * (1 / den)
        X = (p - ph) / (p * (1 - p))
        Y = (ph - p) / (1 - p)
        out = []
        for l in range(na):
            s = 0
            for m in range(na - l):
                t = pochhammer(-na + 1, l + m) * pochhammer(-N + l, m)
                s = s + t / (factorial(l) * factorial(m) * _nz(pochhammer(-n + 2, l + m), "(-n+2)_{l+m}")) * X**l * Y**m
            out.append(pref * s)
        return out

    def recursion(self, n1, n2):
        p1, p2, N = self.p.p1, self.p.p2, self.p.N
        n = n1 + n2
        b1 = n + (N - n - n1) * p1 - n2 * p2
        b2 = n - n1 * p1 + (N - n - n2) * p2
        cc = (N - n + 1) * (n1 * p1 * (1 - p1) + n2 * p2 * (1 - p2))
        k = (N - n + 1) * (N - n + 2)
        q1 = k * n1 * p1 * (1 - p1) * (p1 - p2)
        q2 = k * n2 * p2 * (1 - p2) * (p2 - p1)
        return _assign_d(self.fid, n1, n2, b1, b2, cc, q1, q2)


# ---------------------------------------------------------------------------
# Laguerre I


class LaguerreI(Family):
    fid = FamilyId.LaguerreI
    discrete = False

    def _alpha(self, a):
        return self.p.alpha1 if a == 1 else self.p.alpha2

    def weight(self, a, x, ar):
        if x < 0:
            raise ValueError(f"Laguerre I point {x} outside [0, inf)")
        return ar.exp(-ar.num(x)) * ar.power(x, self._alpha(a))

    def scale(self, a, ar):
        return 1 / ar.gamma(self._alpha(a) + 1)

    def nu(self, a, m):
        return pochhammer(self._alpha(a) + 1, m)

    def type2_coeffs(self, n1, n2):
        a1, a2 = self.p.alpha1, self.p.alpha2
        n = n1 + n2
        pref = (-1) ** n * pochhammer(a1 + 1, n1) * pochhammer(a2 + 1, n2)
        out = []
        for l in range(n + 1):
            s = 0
            for m in range(max(0, l - n2), min(l, n1) + 1):
                r = l - m
                t = pochhammer(-n1, m) * pochhammer(-n2, r) * pochhammer(a1 + 1 + n1, r)
                s = s + t / (factorial(m) * factorial(r) * _nz(pochhammer(a2 + 1, r), "(alpha2+1)_r"))
            out.append(pref * s / _nz(pochhammer(a1 + 1, l), "(alpha1+1)_l"))
        return out

    def type1_core_coeffs(self, a, n1, n2):
        n = n1 + n2
        al, ah = _hat(a, self.p.alpha1, self.p.alpha2)
        na, nh = _hat(a, n1, n2)
        pref = (-1) ** (n - 1) / _nz(factorial(na - 1) * pochhammer(ah - al, nh), "(alpha_hat-alpha_a)_{n_hat}")
        out = []
        for l in range(na):
            t = pochhammer(-na + 1, l) * pochhammer(al - ah - nh + 1, l)
            out.append(pref * t / _nz(factorial(l) * pochhammer(al + 1, l) * pochhammer(al - ah + 1, l), "LI denominator"))
        return out

    def recursion(self, n1, n2):
        a1, a2 = self.p.alpha1, self.p.alpha2
        n = n1 + n2
        b1 = n + n1 + a1 + 1
        b2 = n + n2 + a2 + 1
        cc = n1 * n2 + n1 * (n1 + a1) + n2 * (n2 + a2)
        q1 = n1 * (n1 + a1) * (n1 + a1 - a2)
        q2 = n2 * (n2 + a2) * (n2 + a2 - a1)
        return _assign_d(self.fid, n1, n2, b1, b2, cc, q1, q2)


# ---------------------------------------------------------------------------
# Laguerre II


class LaguerreII(Family):
    fid = FamilyId.LaguerreII
    discrete = False

    def weight(self, a, x, ar):
        if x < 0:
            raise ValueError(f"Laguerre II point {x} outside [0, inf)")
        c = self.p.c1 if a == 1 else self.p.c2
        return ar.exp(-ar.num(c) * x) * ar.power(x, self.p.alpha0)

    def scale(self, a, ar):
        # c_a^{alpha0+1} cancels the moment factor c_a^{-(alpha0+1)}
        c = self.p.c1 if a == 1 else self.p.c2
        return ar.power(c, self.p.alpha0 + 1) / ar.gamma(self.p.alpha0 + 1)

    def nu(self, a, m):
        c = self.p.c1 if a == 1 else self.p.c2
        return pochhammer(self.p.alpha0 + 1, m) / c**m

    def type2_coeffs(self, n1, n2):
        a0, c1, c2 = self.p.alpha0, self.p.c1, self.p.c2
        n = n1 + n2
        pref = (-1) ** n * pochhammer(a0 + 1, n) / (c1**n1 * c2**n2)
        out = []
        for l in range(n + 1):
            s = 0
            for m in range(max(0, l - n2), min(l, n1) + 1):
                s = s + pochhammer(-n1, m) * pochhammer(-n2, l - m) / (factorial(m) * factorial(l - m)) * c1**m * c2 ** (l - m)
            out.append(pref * s / _nz(pochhammer(a0 + 1, l), "(alpha0+1)_l"))
        return out

    def type1_core_coeffs(self, a, n1, n2):
        a0 = self.p.alpha0
        n = n1 + n2
        c, ch = _hat(a, self.p.c1, self.p.c2)
        na, _ = _hat(a, n1, n2)
        # 1/Gamma(alpha0+n) = 1/(Gamma(alpha0+1) (alpha0+1)_{n-1})
        pref = (-1) ** (na - 1) * factorial(n - 2)
        pref = pref / _nz(factorial(n1 - 1) * factorial(n2 - 1) * pochhammer(a0 + 1, n - 1), "(alpha0+1)_{n-1}")
        pref = pref * (c * ch / _nz(ch - c, "c_hat - c_a")) ** (n - 1)
        X = (c - ch) * c / ch
        Y = (ch - c) / ch
        out = []
        for l in range(na):
            s = 0
            for m in range(na - l):
                t = pochhammer(-na + 1, l + m) * pochhammer(a0 + 1, l + m)
                t = t / (factorial(l) * factorial(m) * _nz(pochhammer(-n + 2, l + m) * pochhammer(a0 + 1, l), "LII denominator"))
                s = s + t * X**l * Y**m
            out.append(pref * s)
        return out

    def recursion(self, n1, n2):
        a0, c1, c2 = self.p.alpha0, self.p.c1, self.p.c2
        n = n1 + n2
        b1 = (n2 * c1 + 2 * n1 * c2 + n2 * c2 + a0 * c2 + c2) / (c1 * c2)
        b2 = (n1 * c2 + 2 * n2 * c1 + n1 * c1 + a0 * c1 + c1) / (c1 * c2)
        cc = (n1 * c2**2 + n2 * c1**2) * (n + a0) / (c1**2 * c2**2)
        q1 = n1 * (c2 - c1) * (n + a0 - 1) * (n + a0) / (c1**3 * c2)
        q2 = n2 * (c1 - c2) * (n + a0 - 1) * (n + a0) / (c1 * c2**3)
        return _assign_d(self.fid, n1, n2, b1, b2, cc, q1, q2)


# ---------------------------------------------------------------------------
# Charlier


class Charlier(Family):
    fid = FamilyId.Charlier

    def weight(self, a, x, ar):
        b = self.p.b1 if a == 1 else self.p.b2
        if _is_int(x) and x >= 0:
            return ar.num(b ** int(x) / Fraction(factorial(int(x))))
        return ar.power(b, x) / ar.gamma(ar.num(x) + 1)

    def weight_ratio_bound(self, a, K):
        b = self.p.b1 if a == 1 else self.p.b2
        return b / (K + 1)

    def scale(self, a, ar):
        b = self.p.b1 if a == 1 else self.p.b2
        return ar.exp(-ar.num(b))

    def nu(self, a, m):
        b = self.p.b1 if a == 1 else self.p.b2
        return (-b) ** m

    def type2_coeffs(self, n1, n2):
        b1, b2 = self.p.b1, self.p.b2
        n = n1 + n2
        pref = (-1) ** n * b1**n1 * b2**n2
        out = []
        for l in range(n + 1):
            s = 0
            for m in range(max(0, l - n2), min(l, n1) + 1):
                t = pochhammer(-n2, l - m) * pochhammer(-n1, m) / (factorial(l - m) * factorial(m))
                s = s + t * (-1 / b1) ** m * (-1 / b2) ** (l - m)
            out.append(pref * s)
        return out

    def type1_core_coeffs(self, a, n1, n2):
        n = n1 + n2
        b, bh = _hat(a, self.p.b1, self.p.b2)
        na, _ = _hat(a, n1, n2)
        pref = (-1) ** (na - 1) * factorial(n - 2) / _nz(
            factorial(n1 - 1) * factorial(n2 - 1) * (b - bh) ** (n - 1), "(b_a - b_hat)^{n-1}"
        )
        X = (b - bh) / b
        Y = b - bh
        out = []
        for l in range(na):
            s = 0
            for m in range(na - l):
                t = pochhammer(-na + 1, l + m) / (factorial(l) * factorial(m) * _nz(pochhammer(-n + 2, l + m), "(-n+2)_{l+m}"))
                s = s + t * X**l * Y**m
            out.append(pref * s)
        return out

    def recursion(self, n1, n2):
        b1, b2 = self.p.b1, self.p.b2
        n = n1 + n2
        q1 = n1 * b1 * (b1 - b2)
        q2 = n2 * b2 * (b2 - b1)
        return _assign_d(self.fid, n1, n2, n + b1, n + b2, n1 * b1 + n2 * b2, q1, q2)


# ---------------------------------------------------------------------------
# d labels

#: families whose printed ``d^(1)``/``d^(2)`` closed forms carry labels
#: interchanged relative to the defining pairings.  Exact relation checks put
#: every family here, as for Hahn itself.
SWAPPED_D: frozenset = frozenset(FamilyId)


def _assign_d(fid, n1, n2, b1, b2, c, printed1, printed2):
    if fid in SWAPPED_D:
        d1, d2 = printed2, printed1
    else:
        d1, d2 = printed1, printed2
    # d1 pairs with Q_(n1-1, n2), d2 with Q_(n1, n2-1); both vanish off the lattice
    if n1 == 0:
        d1 = 0 * c
    if n2 == 0:
        d2 = 0 * c
    return RecursionCoefficients(b1, b2, c, d1, d2)


_CLASSES = {
    FamilyId.JacobiPineiro: JacobiPineiro,
    FamilyId.MeixnerI: MeixnerI,
    FamilyId.MeixnerII: MeixnerII,
    FamilyId.Kravchuk: Kravchuk,
    FamilyId.LaguerreI: LaguerreI,
    FamilyId.LaguerreII: LaguerreII,
    FamilyId.Charlier: Charlier,
}


def family(fam, params) -> Family:
    fam = FamilyId(fam)
    if not isinstance(params, PARAMS_TYPE[fam]):
        raise TypeError(f"{fam.value} needs {PARAMS_TYPE[fam].__name__}, got {type(params).__name__}")
    return _CLASSES[fam](params)


def _arith(mode, bits):
    return ExactArith() if mode == "exact" else FloatArith(bits)


# ---------------------------------------------------------------------------
# public operations


def family_weight(fam, a: int, point, params, mode: str = "float", bits: int = DEFAULT_PRECISION):
    if a not in (1, 2):
        raise ValueError("weight index must be 1 or 2")
    return family(fam, params).weight(a, point, _arith(mode, bits))


def family_type2(fam, idx, params):
    return family(fam, params).type2(idx)


def family_type1_core(fam, idx, params) -> TypeIPair:
    """Type I pair with the per-weight constants ``g_a`` stripped."""
    return family(fam, params).type1_core(idx)


def family_type1(fam, idx, params, mode: str = "float", bits: int = DEFAULT_PRECISION) -> TypeIPair:
    """Type I pair; exact mode works only where ``g_a`` is rational (Kravchuk)."""
    return family(fam, params).type1(idx, _arith(mode, bits))


def family_scale(fam, a: int, params, mode: str = "float", bits: int = DEFAULT_PRECISION):
    return family(fam, params).scale(a, _arith(mode, bits))


def family_recursion_coeffs(fam, idx, params) -> RecursionCoefficients:
    idx = as_index(idx)
    return family(fam, params).recursion(idx.n1, idx.n2)


def family_oracle(fam, idx, kind, params):
    """Moment-system solution; type I is returned as cores (see ``family_type1_core``)."""
    f = family(fam, params)
    if hahn.Kind(kind) is hahn.Kind.typeII:
        return f.oracle_type2(idx)
    return f.oracle_type1_core(idx)


def family_type1_via_recursion(fam, idx, params) -> TypeIPair:
    f = family(fam, params)
    idx = as_index(idx)
    if tuple(idx) in ((1, 0), (1, 1)):
        return f.type1_core(idx)
    return reconstruct_type1(idx, f.type1_core((1, 0)), f.type1_core((1, 1)), f.recursion, f.zero_pair)


@dataclass(frozen=True)
class OrthResidual:
    """Orthogonality residual; ``tail_bound`` is set for truncated series."""

    value: Any
    tail_bound: Any = None
    terms: int | None = None
    method: str = "moments"

    def within(self, tol) -> bool:
        bound = tol if self.tail_bound is None else max(tol, self.tail_bound)
        return abs(self.value) <= bound


def _test_for(f: Family, idx: MultiIndex, j: int):
    n = idx.total
    if j == n - 1:
        return f.norm_function(n), 1
    return f.test_function(j), 0


def family_orth_residual(fam, idx, j: int, params, mode: str = "exact", bits: int = DEFAULT_PRECISION) -> OrthResidual:
    """Residual of the ``j``-th orthogonality relation of the type I linear form.

    For ``j <= n1+n2-2`` the target is 0; ``j = n1+n2-1`` checks the
    normalization (target 1) and returns the deviation.  Exact mode reduces
    every sum or integral to the rational moments ``nu``; float mode sums
    Kravchuk directly, sums Meixner and Charlier series with a certified tail
    bound, and evaluates the moment reduction in floats for the continuous
    families.
    """
    f = family(fam, params)
    idx = as_index(idx)
    n = idx.total
    if n == 0:
        raise InvalidIndexError("the (0, 0) linear form is zero")
    if not 0 <= j <= n - 1:
        raise hahn.MomentRangeError(f"j={j} outside 0..{n - 1}")
    test, target = _test_for(f, idx, j)
    core = f.type1_core(idx)
    if mode == "exact":
        return OrthResidual(f.pairing(core, test) - target, method="moments")
    ar = FloatArith(bits)
    if f.discrete:
        pair = f.type1(idx, ar)
        if f.finite_support:
            total = ar.num(0)
            for k in range(f.p.N + 1):
                total += test(ar.num(k)) * (pair.q1(k) * f.weight(1, k, ar) + pair.q2(k) * f.weight(2, k, ar))
            return OrthResidual(total - target, terms=f.p.N + 1, method="finite sum")
        return _truncated_residual(f, pair, test, target, ar)
    return OrthResidual(ar.num(f.pairing(core, test)) - target, method="moments")


def _cauchy_radius(poly: MonoPolynomial, ctx) -> Any:
    """Upper bound on the modulus of every root (Cauchy)."""
    lead = abs(poly.leading())
    if poly.degree <= 0:
        return ctx.mpf(0)
    return 1 + max(abs(c) for c in poly.coeffs[:-1]) / lead


def _truncated_residual(f: Family, pair: TypeIPair, test, target, ar, max_terms: int = 200000) -> OrthResidual:
    ctx = ar.ctx
    eps = ctx.mpf(2) ** (-(ar.precision - 16))
    polys, radii, degs = [], [], []
    for a in (1, 2):
        p = poch_to_mono(f.mul(pair[a], test)) if not pair[a].is_zero() else MonoPolynomial(())
        polys.append(p)
        radii.append(_cauchy_radius(p, ctx) if not p.is_zero() else ctx.mpf(0))
        degs.append(max(p.degree, 0))
    w = [ar.num(1), ar.num(1)]
    total = ar.num(0)
    k = 0
    while k < max_terms:
        terms = [polys[a](ar.num(k)) * w[a] if not polys[a].is_zero() else ar.num(0) for a in (0, 1)]
        total += terms[0] + terms[1]
        bound = ar.num(0)
        ok = True
        for a in (0, 1):
            if polys[a].is_zero():
                continue
            if k <= radii[a] + 1:
                ok = False
                break
            rho = (1 + 1 / (k - radii[a])) ** degs[a] * f.weight_ratio_bound(a + 1, k)
            if rho >= 1:
                ok = False
                break
            bound += abs(terms[a]) * rho / (1 - rho)
        if ok and bound < eps:
            return OrthResidual(total - target, tail_bound=bound, terms=k + 1, method="truncated series")
        for a in (0, 1):
            w[a] = w[a] * _weight_step(f, a + 1, k, ar)
        k += 1
    raise TailBoundError(f"{f.fid.value}: tail bound not reached within {max_terms} terms")


def _weight_step(f: Family, a: int, k: int, ar):
    """``w_a(k+1) / w_a(k)`` for the infinite discrete families."""
    if isinstance(f, MeixnerI):
        c = f.p.c1 if a == 1 else f.p.c2
        return ar.num(c) * (ar.num(f.p.beta) + k) / (k + 1)
    if isinstance(f, MeixnerII):
        return ar.num(f.p.c) * (ar.num(f._beta(a)) + k) / (k + 1)
    if isinstance(f, Charlier):
        b = f.p.b1 if a == 1 else f.p.b2
        return ar.num(b) / (k + 1)
    raise TypeError(f"{f.fid.value} has no infinite support")


def family_recursion_residuals(fam, idx, params) -> dict:
    """Near-neighbor relation residuals on type II polynomials and type I cores."""
    f = family(fam, params)
    idx = as_index(idx)
    n1, n2 = idx
    Z = f.poly([])

    def B(i, j):
        return Z if i < 0 or j < 0 else f.type2((i, j))

    def Q(i, j):
        return f.zero_pair if i < 0 or j < 0 else f.type1_core((i, j))

    rc = f.recursion
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
    q, top, c = Q(n1, n2), Q(n1 + 1, n2 + 1), r.c

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


def jp_reduction_residual(idx, params: JacobiPineiroParams, x, bits: int = DEFAULT_PRECISION):
    """``|KdF - (1-x)^{-beta} 3F2|`` for the Jacobi-Pineiro type II reduction.

    The Kampé de Fériet side is the terminating double sum of the type II
    display; the other side uses mpmath's ``hyp3f2`` as an independent
    evaluator.  Needs ``|x| < 1``.
    """
    from .hypergeo import KdfSpec, kdf

    idx = as_index(idx)
    n1, n2 = idx
    n = n1 + n2
    ar = FloatArith(bits)
    ctx = ar.ctx
    a1, a2, b = (ar.num(v) for v in (params.alpha1, params.alpha2, params.beta))
    xv = ar.num(x)
    if not abs(xv) < 1:
        raise ValueError("the 3F2 side needs |x| < 1")
    spec = KdfSpec([a1 + b + n1 + 1], [a1 + 1], [-n2, a2 + b + n + 1, a1 + n1 + 1], [a2 + 1, a1 + b + n1 + 1], [-n1], [], xv, xv)
    lhs = kdf(spec)
    rhs = ctx.power(1 - xv, -b) * ctx.hyp3f2(-n - b, a1 + n1 + 1, a2 + n2 + 1, a1 + 1, a2 + 1, xv)
    return abs(lhs - rhs)
