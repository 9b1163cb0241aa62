"""Terminating pFq and Kampé de Fériet series, plus summation identities.

Both evaluators walk the series by forward term ratios so every partial sum
stays inside the scalar field of the inputs (Fractions stay exact).
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Mapping, Sequence

from .scalar import (
    PoleError,
    binomial,
    factorial,
    gamma_ratio,
    is_nonpositive_integer,
    pochhammer,
)


class NonTerminatingError(ValueError):
    """The series has no nonpositive-integer numerator and no term cap."""


class HypothesisViolation(ValueError):
    """Parameters fall outside the hypotheses of a summation identity."""


def termination_length(params: Sequence) -> int | None:
    """Smallest ``m`` with ``-m`` among ``params``; ``None`` if there is none."""
    best = None
    for p in params:
        if is_nonpositive_integer(p):
            m = int(-p)
            best = m if best is None else min(best, m)
    return best


def _check_lower(lower: Sequence, length: int, where: str) -> None:
    # (b)_l vanishes for some l <= length iff b is an integer in [-(length-1), 0]
    for b in lower:
        if is_nonpositive_integer(b) and int(-b) < length:
            raise PoleError(f"lower parameter {b} of {where} vanishes inside the summation range")


@dataclass(frozen=True)
class PfqSpec:
    upper: tuple = ()
    lower: tuple = ()
    argument: Any = 1

    def __post_init__(self):
        object.__setattr__(self, "upper", tuple(self.upper))
        object.__setattr__(self, "lower", tuple(self.lower))


@dataclass(frozen=True)
class KdfSpec:
    """Kampé de Fériet double series ``F^{p:r;s}_{q:n;k}``.

    ``joint_*`` parameters enter through ``(.)_{l+m}``, ``first_*`` through
    ``(.)_l`` and ``second_*`` through ``(.)_m``.
    """

    joint_upper: tuple = ()
    joint_lower: tuple = ()
    first_upper: tuple = ()
    first_lower: tuple = ()
    second_upper: tuple = ()
    second_lower: tuple = ()
    x: Any = 1
    y: Any = 1

    def __post_init__(self):
        for name in ("joint_upper", "joint_lower", "first_upper", "first_lower", "second_upper", "second_lower"):
            object.__setattr__(self, name, tuple(getattr(self, name)))

    def swapped(self) -> "KdfSpec":
        return KdfSpec(
            self.joint_upper,
            self.joint_lower,
            self.second_upper,
            self.second_lower,
            self.first_upper,
            self.first_lower,
            self.y,
            self.x,
        )


def _prod(values):
    out = 1
    for v in values:
        out = out * v
    return out


def pfq(spec: PfqSpec, max_terms: int | None = None):
    """Sum ``sum_l prod (a_i)_l / prod (b_j)_l * z^l / l!``.

    The range is ``l = 0..m`` where ``-m`` is the smallest-magnitude
    nonpositive-integer numerator, or ``l < max_terms`` when given.
    """
    m = termination_length(spec.upper)
    if m is None:
        if max_terms is None:
            raise NonTerminatingError("pFq has no nonpositive-integer numerator; pass max_terms")
        last = max_terms - 1
    else:
        last = m if max_terms is None else min(m, max_terms - 1)
    if last < 0:
        return spec.argument * 0
    _check_lower(spec.lower, last, "pFq")
    z = spec.argument
    term = z * 0 + 1
    total = term
    for l in range(last):
        num = _prod(a + l for a in spec.upper) * z
        den = _prod(b + l for b in spec.lower) * (l + 1)
        term = term * num / den
        total = total + term
    return total


def kdf(spec: KdfSpec, max_terms: int | None = None):
    """Sum the Kampé de Fériet double series over its finite support.

    ``max_terms`` caps both indices when no parameter truncates them.
    """
    joint = termination_length(spec.joint_upper)
    first = termination_length(spec.first_upper)
    second = termination_length(spec.second_upper)
    lmax = min(v for v in (joint, first, max_terms and max_terms - 1) if v is not None) if any(
        v is not None for v in (joint, first, max_terms)
    ) else None
    mmax = min(v for v in (joint, second, max_terms and max_terms - 1) if v is not None) if any(
        v is not None for v in (joint, second, max_terms)
    ) else None
    if lmax is None or mmax is None:
        raise NonTerminatingError("Kampé de Fériet series does not terminate in both indices")
    span = lmax + mmax if joint is None else min(joint, lmax + mmax)
    _check_lower(spec.joint_lower, span, "joint block")
    _check_lower(spec.first_lower, lmax, "first block")
    _check_lower(spec.second_lower, mmax, "second block")

    x, y = spec.x, spec.y
    zero = x * 0 * y
    total = zero
    row = zero + 1  # term(l, 0)
    for l in range(lmax + 1):
        if l > 0:
            s = l - 1
            num = _prod(a + s for a in spec.joint_upper) * _prod(b + s for b in spec.first_upper) * x
            den = _prod(a + s for a in spec.joint_lower) * _prod(b + s for b in spec.first_lower) * l
            row = row * num / den
        term = row
        total = total + term
        for m in range(1, mmax + 1):
            if joint is not None and l + m > joint:
                break
            s = l + m - 1
            num = _prod(a + s for a in spec.joint_upper) * _prod(c + m - 1 for c in spec.second_upper) * y
            den = _prod(a + s for a in spec.joint_lower) * _prod(c + m - 1 for c in spec.second_lower) * m
            term = term * num / den
            total = total + term
    return total


# ---------------------------------------------------------------------------
# identity registry


class IdentityId(str, enum.Enum):
    ChuVandermonde = "chu-vandermonde"
    PfaffSaalschutz = "pfaff-saalschutz"
    RakhaRathie = "rakha-rathie"
    KarpPrilepkina = "karp-prilepkina"
    Reversal = "reversal"
    NewtonBinomial = "newton-binomial"
    SimpleFraction = "simple-fraction"
    HahnReduction = "hahn-reduction"


def _require_nonneg_int(params, *names):
    for n in names:
        v = params[n]
        if Fraction(v).denominator != 1 or v < 0:
            raise HypothesisViolation(f"{n} must be a nonnegative integer, got {v}")


def _chu_vandermonde(p):
    # (-N+j)_l / (s+j+2)_l = 2F1(-l, s+N+2; s+j+2; 1)
    _require_nonneg_int(p, "l")
    l, N, j, s = int(p["l"]), p["N"], p["j"], p["s"]
    lower = s + j + 2
    lhs = pochhammer(-N + j, l) / _nonzero(pochhammer(lower, l), "(s+j+2)_l")
    rhs = pfq(PfqSpec((-l, s + N + 2), (lower,), 1))
    return lhs - rhs


def _pfaff_saalschutz(p):
    _require_nonneg_int(p, "n")
    n, a, b, c, d = int(p["n"]), p["a"], p["b"], p["c"], p["d"]
    if -n + a + b + 1 != c + d:
        raise HypothesisViolation("Saalschütz balance -n+a+b+1 = c+d fails")
    lhs = pfq(PfqSpec((-n, a, b), (c, d), 1))
    rhs = pochhammer(c - a, n) * pochhammer(c - b, n) / _nonzero(
        pochhammer(c, n) * pochhammer(c - a - b, n), "(c)_n (c-a-b)_n"
    )
    return lhs - rhs


def _rakha_rathie(p):
    # alpha = -n makes the double series terminate and the Gamma factor rational
    _require_nonneg_int(p, "n")
    n = int(p["n"])
    lam, gam, beta, eps, mu, delta = (p[k] for k in ("lam", "gam", "beta", "eps", "mu", "delta"))
    lhs = kdf(KdfSpec((-n, lam), (beta, mu), (gam, beta - eps), (delta,), (eps,), (), 1, 1))
    pref = pochhammer(mu - lam, n) / _nonzero(pochhammer(mu, n), "(mu)_n")
    rhs = pref * pfq(PfqSpec((-n, lam, delta - gam, beta - eps), (beta, delta, 1 - mu - n + lam), 1))
    return lhs - rhs


def _karp_prilepkina(p):
    # a = -n terminates the left side; Gamma(1-a)/Gamma(b-a+1) = n!/(b+1)_n
    _require_nonneg_int(p, "n", "p")
    n, pp, b = int(p["n"]), int(p["p"]), p["b"]
    f = list(p.get("f", ()))
    ms = [int(v) for v in p.get("m", ())]
    if len(f) != len(ms):
        raise HypothesisViolation("f and m must have equal length")
    if any(v < 0 for v in ms):
        raise HypothesisViolation("m_i must be nonnegative")
    if pp < 1:
        raise HypothesisViolation("p must be a positive integer")
    if not pp + n - sum(ms) > 0:
        raise HypothesisViolation("Re(p - a - m_1 - ... - m_r) > 0 fails")
    a = -n
    lhs = pfq(PfqSpec((a, b) + tuple(fi + mi for fi, mi in zip(f, ms)), (b + pp,) + tuple(f), 1))
    pref = Fraction(factorial(n), factorial(pp - 1)) * gamma_ratio(b + n + 1, pp - n - 1)
    # (f-b)_m/(f)_m times the pair (b-f+1)_k/(b-f+1-m)_k of the right-hand
    # series equals (-1)^m (b-f+1-m+k)_m/(f)_m; summing in that form keeps the
    # continuation valid when b-f+1 is a nonpositive integer (0/0 otherwise)
    dens = [_nonzero(pochhammer(fi, mi), "(f_i)_{m_i}") for fi, mi in zip(f, ms)]
    rhs = 0
    for k in range(pp):
        t = pochhammer(-pp + 1, k) * pochhammer(b, k) / (pochhammer(b - a + 1, k) * factorial(k))
        for fi, mi, d in zip(f, ms, dens):
            t = t * (-1) ** mi * pochhammer(b - fi + 1 - mi + k, mi) / d
        rhs = rhs + t
    return lhs - pref * rhs


def _reversal(p):
    _require_nonneg_int(p, "n")
    n = int(p["n"])
    a = tuple(p["a"])
    b = tuple(p["b"])
    # reflecting l -> n-l produces the argument (-1)^(p+q); unit argument needs even p+q
    if (len(a) + len(b)) % 2:
        raise HypothesisViolation("reversal at unit argument needs an even count of a's and b's")
    lhs = pfq(PfqSpec((-n,) + a, b, 1))
    ratio = _prod(pochhammer(ai, n) for ai in a) / _nonzero(_prod(pochhammer(bj, n) for bj in b), "(b)_n")
    rhs = (-1) ** n * ratio * pfq(PfqSpec((-n,) + tuple(-bj - n + 1 for bj in b), tuple(-ai - n + 1 for ai in a), 1))
    return lhs - rhs


def _newton_binomial(p):
    _require_nonneg_int(p, "n")
    n, a, b = int(p["n"]), p["a"], p["b"]
    rhs = sum((binomial(n, k) * pochhammer(a, k) * pochhammer(b, n - k) for k in range(n + 1)), Fraction(0))
    return pochhammer(a + b, n) - rhs


def _simple_fraction(p):
    # 1/((z-b)(z-a)_n) = 1/((z-b)(b-a)_n)
    #                    + 1/(n-1)! sum_p (-1)^p C(n-1,p) / ((a-p-b)(z-a+p))
    _require_nonneg_int(p, "n")
    n, z, a, b = int(p["n"]), p["z"], p["a"], p["b"]
    if n < 1:
        raise HypothesisViolation("n must be >= 1")
    lhs = 1 / _nonzero((z - b) * pochhammer(z - a, n), "(z-b)(z-a)_n")
    rhs = 1 / _nonzero((z - b) * pochhammer(b - a, n), "(z-b)(b-a)_n")
    acc = Fraction(0)
    for q in range(n):
        acc += (-1) ** q * binomial(n - 1, q) / _nonzero((a - q - b) * (z - a + q), "(a-p-b)(z-a+p)")
    return lhs - rhs - acc / factorial(n - 1)


def hahn_reduction_sides(p):
    """Both sides of the Kampé de Fériet -> 3F2 reduction used for Hahn type I."""
    _require_nonneg_int(p, "n_a", "n_hat")
    na, nh = int(p["n_a"]), int(p["n_hat"])
    if na < 1 or nh < 1:
        raise HypothesisViolation("n_a and n_hat must be positive integers")
    al, ah, beta, N, j = p["alpha_a"], p["alpha_hat"], p["beta"], p["N"], p["j"]
    n12 = na + nh
    lhs = kdf(
        KdfSpec(
            (-na + 1, -N),
            (-n12 + 2, ah + beta + nh + 1),
            (al + beta + n12, -N + j, al - ah - nh + 1),
            (al + beta + j + 2, -N),
            (ah - al - na + 1,),
            (),
            1,
            1,
        )
    )
    pref = pochhammer(ah - al - na + 1, na - 1) * pochhammer(al + beta + N + 2, na - 1)
    pref = pref / _nonzero(pochhammer(-n12 + 2, na - 1) * pochhammer(ah + beta + nh + 1, na - 1), "prefactor")
    rhs = pref * pfq(PfqSpec((-na + 1, al + beta + n12, al - ah - nh + 1), (al + beta + j + 2, al - ah + 1), 1))
    return lhs, rhs


def _hahn_reduction(p):
    lhs, rhs = hahn_reduction_sides(p)
    return lhs - rhs


def _nonzero(v, what):
    if v == 0:
        raise PoleError(f"vanishing {what}")
    return v


_IDENTITIES = {
    IdentityId.ChuVandermonde: _chu_vandermonde,
    IdentityId.PfaffSaalschutz: _pfaff_saalschutz,
    IdentityId.RakhaRathie: _rakha_rathie,
    IdentityId.KarpPrilepkina: _karp_prilepkina,
    IdentityId.Reversal: _reversal,
    IdentityId.NewtonBinomial: _newton_binomial,
    IdentityId.SimpleFraction: _simple_fraction,
    IdentityId.HahnReduction: _hahn_reduction,
}


def identity_residual(identity: IdentityId | str, params: Mapping[str, Any]):
    """LHS - RHS of ``identity`` at ``params``.

    Raises :class:`HypothesisViolation` when ``params`` are outside the
    identity's domain and :class:`PoleError` when either side is undefined.
    """
    identity = IdentityId(identity)
    try:
        return _IDENTITIES[identity](params)
    except ZeroDivisionError as exc:
        raise PoleError(str(exc)) from exc
    except KeyError as exc:
        raise HypothesisViolation(f"missing parameter {exc.args[0]!r}") from exc


# ---------------------------------------------------------------------------
# seeded parameter draws


@dataclass
class RationalSampler:
    """Draws small rationals (numerator, denominator <= ``bound``) from a seed."""

    rng: random.Random
    bound: int = 40

    def rational(self, lo: Fraction | int = -5, hi: Fraction | int = 5) -> Fraction:
        lo, hi = Fraction(lo), Fraction(hi)
        while True:
            den = self.rng.randint(1, self.bound)
            num = self.rng.randint(-self.bound, self.bound)
            v = Fraction(num, den)
            if lo <= v <= hi:
                return v

    def non_integer(self, lo=-5, hi=5) -> Fraction:
        while True:
            v = self.rational(lo, hi)
            if v.denominator != 1:
                return v

    def integer(self, lo: int, hi: int) -> int:
        return self.rng.randint(lo, hi)


def sample_identity_params(identity: IdentityId | str, sampler: RationalSampler, max_length: int = 8) -> dict:
    """One random parameter record inside the hypotheses of ``identity``."""
    identity = IdentityId(identity)
    s = sampler
    if identity is IdentityId.ChuVandermonde:
        return {"l": s.integer(0, max_length), "N": s.rational(), "j": s.rational(), "s": s.non_integer()}
    if identity is IdentityId.PfaffSaalschutz:
        n = s.integer(0, max_length)
        a, b, c = s.non_integer(), s.non_integer(), s.non_integer()
        return {"n": n, "a": a, "b": b, "c": c, "d": -n + a + b + 1 - c}
    if identity is IdentityId.RakhaRathie:
        return {
            "n": s.integer(0, max_length),
            "lam": s.non_integer(),
            "gam": s.non_integer(),
            "beta": s.non_integer(),
            "eps": s.non_integer(),
            "mu": s.non_integer(),
            "delta": s.non_integer(),
        }
    if identity is IdentityId.KarpPrilepkina:
        r = s.integer(0, 2)
        ms = [s.integer(0, 3) for _ in range(r)]
        n = s.integer(0, max_length)
        # p + n > sum(m); p - 1 is the right-hand series length
        p = s.integer(max(1, sum(ms) - n + 1), max_length + 1)
        return {"n": n, "p": p, "b": s.non_integer(), "f": [s.non_integer() for _ in range(r)], "m": ms}
    if identity is IdentityId.Reversal:
        pcount = s.integer(0, 3)
        qcount = s.rng.choice([q for q in range(4) if (q + pcount) % 2 == 0])
        return {
            "n": s.integer(0, max_length),
            "a": [s.non_integer() for _ in range(pcount)],
            "b": [s.non_integer() for _ in range(qcount)],
        }
    if identity is IdentityId.NewtonBinomial:
        return {"n": s.integer(0, max_length), "a": s.rational(), "b": s.rational()}
    if identity is IdentityId.SimpleFraction:
        return {"n": s.integer(1, max_length), "z": s.non_integer(), "a": s.non_integer(), "b": s.non_integer()}
    if identity is IdentityId.HahnReduction:
        return {
            "n_a": s.integer(1, max_length),
            "n_hat": s.integer(1, max_length),
            "alpha_a": s.rational(Fraction(-19, 20), 5),
            "alpha_hat": s.non_integer(Fraction(-19, 20), 5),
            "beta": s.rational(Fraction(-19, 20), 5),
            "N": s.non_integer(0, 20) if s.integer(0, 1) else s.integer(max_length, 20),
            "j": s.rational(0, 10),
        }
    raise AssertionError(identity)
