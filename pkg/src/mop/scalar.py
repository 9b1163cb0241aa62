"""Exact and multiprecision scalar primitives.

Exact values are :class:`fractions.Fraction`; float values are ``mpf``
instances bound to a private :class:`mpmath.MPContext`, so precision never
leaks through global state.  Polynomials are stored either in the falling
Pochhammer basis ``{(-x)_l}`` or in the monomial basis ``{x^l}``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any, Callable, Iterable, Sequence

import mpmath

DEFAULT_PRECISION = 256
MIN_PRECISION = 64


class PoleError(ArithmeticError):
    """A Pochhammer or Gamma denominator vanished."""


# ---------------------------------------------------------------------------
# scalar kinds


def float_context(bits: int = DEFAULT_PRECISION) -> mpmath.ctx_mp.MPContext:
    """Return a fresh mpmath context running at ``bits`` of mantissa."""
    if bits < MIN_PRECISION:
        raise ValueError(f"precision must be >= {MIN_PRECISION} bits, got {bits}")
    ctx = mpmath.MPContext()
    ctx.prec = bits
    return ctx


_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` (optional leading minus) into a Fraction."""
    m = _RATIONAL_RE.match(text)
    if not m:
        raise ValueError(f"not a rational literal: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ZeroDivisionError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def format_scalar(value: Any, digits: int | None = None) -> str:
    """Render a scalar losslessly: Fractions as ``p/q``, floats via mpmath."""
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, int):
        return str(value)
    if digits is None:
        return mpmath.nstr(value, 20)
    return mpmath.nstr(value, digits, strip_zeros=False)


def is_exact(value: Any) -> bool:
    return isinstance(value, (int, Fraction))


def to_ctx(ctx, value):
    """Convert an int/Fraction/mpf into ``ctx``'s float type."""
    if isinstance(value, Fraction):
        return ctx.mpf(value.numerator) / value.denominator
    return ctx.mpf(value)


def is_nonpositive_integer(x) -> bool:
    if isinstance(x, (int, Fraction)):
        return x <= 0 and Fraction(x).denominator == 1
    return x <= 0 and x == int(x)


# ---------------------------------------------------------------------------
# Pochhammer-type products


def pochhammer(x, n: int):
    """Rising factorial ``x (x+1) ... (x+n-1)``; 1 for ``n == 0``."""
    if n < 0:
        raise ValueError(f"pochhammer needs n >= 0, got {n}")
    if isinstance(x, int):
        x = Fraction(x)
    result = x * 0 + 1
    for i in range(n):
        result *= x + i
    return result


def gamma_ratio(x, n: int):
    """``Gamma(x+n)/Gamma(x)`` for integer ``n`` of either sign."""
    if n >= 0:
        return pochhammer(x, n)
    den = pochhammer(x + n, -n)
    if den == 0:
        raise PoleError(f"Gamma({x}+{n})/Gamma({x}) hits a pole")
    return 1 / den


@lru_cache(maxsize=None)
def factorial(n: int) -> int:
    if n < 0:
        raise ValueError(f"factorial of negative integer {n}")
    return math.factorial(n)


def binomial(n: int, k: int) -> int:
    if n < 0 or k < 0 or k > n:
        raise ValueError(f"binomial({n}, {k}) outside 0 <= k <= n")
    return math.comb(n, k)


def div(num, den, what: str = "denominator"):
    """Division that raises :class:`PoleError` instead of ZeroDivisionError."""
    if den == 0:
        raise PoleError(f"vanishing {what}")
    return num / den


# ---------------------------------------------------------------------------
# Stirling tables for basis changes


@lru_cache(maxsize=None)
def _stirling1_signed(n: int) -> tuple[int, ...]:
    """Coefficients of ``x(x-1)...(x-n+1)`` in powers of ``x``."""
    row = [1]
    for i in range(n):
        nxt = [0] * (len(row) + 1)
        for k, c in enumerate(row):
            nxt[k + 1] += c
            nxt[k] -= i * c
        row = nxt
    return tuple(row)


@lru_cache(maxsize=None)
def _stirling2(n: int) -> tuple[int, ...]:
    """``x^n = sum_k S(n,k) x(x-1)...(x-k+1)``."""
    if n == 0:
        return (1,)
    prev = _stirling2(n - 1)
    row = [0] * (n + 1)
    for k, c in enumerate(prev):
        row[k] += k * c
        row[k + 1] += c
    return tuple(row)


# ---------------------------------------------------------------------------
# polynomials


def _trim(coeffs: Iterable) -> tuple:
    out = list(coeffs)
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


@dataclass(frozen=True)
class _Poly:
    coeffs: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim(self.coeffs))

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def _combine(self, other, sign):
        if type(other) is not type(self):
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return type(self)(tuple(x + sign * y for x, y in zip(a, b)))

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return type(self)(tuple(-c for c in self.coeffs))

    def scale(self, factor):
        return type(self)(tuple(factor * c for c in self.coeffs))

    def __mul__(self, factor):
        if isinstance(factor, _Poly):
            return NotImplemented
        return self.scale(factor)

    __rmul__ = __mul__

    def map(self, fn: Callable) -> "_Poly":
        return type(self)(tuple(fn(c) for c in self.coeffs))

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0


class PochPolynomial(_Poly):
    """Polynomial ``sum_l coeffs[l] * (-x)_l``."""

    def __call__(self, x):
        # Horner form: (-x)_{l+1} = (-x)_l * (l - x)
        acc = 0
        for l in range(len(self.coeffs) - 1, -1, -1):
            acc = acc * (l - x) + self.coeffs[l]
        return acc

    def times_x(self) -> "PochPolynomial":
        """Multiply by ``x`` using ``x (-x)_l = l (-x)_l - (-x)_{l+1}``."""
        out = [0] * (len(self.coeffs) + 1)
        for l, c in enumerate(self.coeffs):
            out[l] += l * c
            out[l + 1] -= c
        return PochPolynomial(tuple(out))

    def leading(self):
        return self.coeffs[-1] if self.coeffs else 0


class MonoPolynomial(_Poly):
    """Polynomial ``sum_l coeffs[l] * x**l``."""

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def times_x(self) -> "MonoPolynomial":
        return MonoPolynomial((0,) + self.coeffs) if self.coeffs else self

    def leading(self):
        return self.coeffs[-1] if self.coeffs else 0


def poch_to_mono(p: PochPolynomial) -> MonoPolynomial:
    """Re-express a Pochhammer-basis polynomial in powers of ``x``.

    ``(-x)_l = (-1)^l x(x-1)...(x-l+1)``, expanded with signed Stirling
    numbers of the first kind.
    """
    out = [0] * len(p.coeffs)
    for l, c in enumerate(p.coeffs):
        if c == 0:
            continue
        sign = -1 if l % 2 else 1
        for k, s in enumerate(_stirling1_signed(l)):
            if s:
                out[k] += sign * s * c
    return MonoPolynomial(tuple(out))


def mono_to_poch(p: MonoPolynomial) -> PochPolynomial:
    """Inverse of :func:`poch_to_mono` via Stirling numbers of the second kind."""
    out = [0] * len(p.coeffs)
    for n, c in enumerate(p.coeffs):
        if c == 0:
            continue
        for k, s in enumerate(_stirling2(n)):
            if s:
                out[k] += (-1 if k % 2 else 1) * s * c
    return PochPolynomial(tuple(out))


def sum_terms(values: Sequence):
    """Sum preserving exactness (``sum`` with a typed zero)."""
    total = 0
    for v in values:
        total = total + v
    return total


# ---------------------------------------------------------------------------
# arithmetic backends


class ExactArith:
    """Rational arithmetic; Gamma only at integer offsets."""

    exact = True
    precision = None

    def num(self, v):
        if isinstance(v, (int, Fraction)):
            return Fraction(v)
        raise TypeError(f"exact mode needs rational input, got {type(v).__name__}")

    def poch(self, x, n):
        if Fraction(n).denominator != 1:
            raise TypeError("exact mode needs an integer Pochhammer length")
        return gamma_ratio(x, int(n))

    def fact(self, n):
        if Fraction(n).denominator != 1:
            raise TypeError("exact mode needs an integer factorial argument")
        return Fraction(factorial(int(n)))

    def gamma(self, x):
        raise TypeError("Gamma at a free argument is not available in exact mode")

    def power(self, base, exponent):
        if Fraction(exponent).denominator != 1:
            raise TypeError("exact mode needs an integer exponent")
        return Fraction(base) ** int(exponent)

    def exp(self, x):
        raise TypeError("exp is not available in exact mode")


class FloatArith:
    """mpmath arithmetic at a fixed precision (private context)."""

    exact = False

    def __init__(self, bits: int = DEFAULT_PRECISION):
        self.ctx = float_context(bits)
        self.precision = bits

    def num(self, v):
        return to_ctx(self.ctx, v)

    def _is_int(self, n):
        if isinstance(n, (int, Fraction)):
            return Fraction(n).denominator == 1
        return self.ctx.isint(n)

    def poch(self, x, n):
        x = self.num(x)
        if self._is_int(n) and abs(int(n)) <= 64:
            return gamma_ratio(x, int(n))
        try:
            return self.ctx.rf(x, self.num(n))
        except ValueError as exc:
            raise PoleError(f"({x})_{n} hits a Gamma pole") from exc

    def fact(self, n):
        if self._is_int(n) and 0 <= int(n) <= 64:
            return self.ctx.mpf(factorial(int(n)))
        return self.gamma(self.num(n) + 1)

    def gamma(self, x):
        try:
            return self.ctx.gamma(self.num(x))
        except ValueError as exc:
            raise PoleError(f"Gamma({x}) hits a pole") from exc

    def power(self, base, exponent):
        return self.ctx.power(self.num(base), self.num(exponent))

    def exp(self, x):
        return self.ctx.exp(self.num(x))


def arith(mode: str = "exact", bits: int = DEFAULT_PRECISION):
    if mode == "exact":
        return ExactArith()
    if mode == "float":
        return FloatArith(bits)
    raise ValueError(f"unknown mode {mode!r}")
