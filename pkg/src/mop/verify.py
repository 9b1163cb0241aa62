"""Verification suites and their JSON reports.

A suite expands a :class:`SuiteConfig` into named cases, runs each one with
its own timer and never lets a single pole abort the run.  Case ids are
stable strings, so identical configs produce identical reports apart from the
``elapsed_ms`` fields.
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Iterable, Iterator

import mpmath

from . import __version__, families, hahn, limits
from .families import FamilyId, TailBoundError
from .hahn import HahnParams, Kind, MultiIndex, SingularSystemError
from .hypergeo import HypothesisViolation, IdentityId, RationalSampler, identity_residual, sample_identity_params
from .scalar import DEFAULT_PRECISION, FloatArith, PoleError, format_scalar, parse_rational

SUITES = ("orthogonality", "biorthogonality", "recurrence", "identities", "limits", "oracle", "all")

PASS, FAIL, SKIPPED, VIOLATION = "pass", "fail", "skipped-pole", "hypothesis-violation"

HAHN = "hahn"

DEFAULT_PARAMS: dict[str, Any] = {
    HAHN: HahnParams(Fraction(1, 2), Fraction(1, 3), Fraction(1, 4), 12),
    FamilyId.JacobiPineiro.value: families.JacobiPineiroParams(Fraction(1, 2), Fraction(1, 3), Fraction(1, 4)),
    FamilyId.MeixnerI.value: families.MeixnerIParams(Fraction(5, 2), Fraction(1, 3), Fraction(1, 4)),
    FamilyId.MeixnerII.value: families.MeixnerIIParams(Fraction(3, 2), Fraction(7, 3), Fraction(1, 3)),
    FamilyId.Kravchuk.value: families.KravchukParams(Fraction(1, 3), Fraction(1, 4), 9),
    FamilyId.LaguerreI.value: families.LaguerreIParams(Fraction(1, 2), Fraction(1, 3)),
    FamilyId.LaguerreII.value: families.LaguerreIIParams(Fraction(1, 2), Fraction(1, 3), Fraction(2, 5)),
    FamilyId.Charlier.value: families.CharlierParams(Fraction(2), Fraction(3)),
}


class ConfigError(ValueError):
    pass


def family_key(name: str) -> str:
    """Canonical selector: ``hahn``, ``all`` or a :class:`FamilyId` value."""
    key = str(name).strip()
    if key.lower() in (HAHN, "all"):
        return key.lower()
    try:
        return FamilyId.parse(key).value
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def make_family_params(fam: str, values: dict | None):
    """Parameter record for ``fam`` from ``name -> literal`` (defaults if None)."""
    fam = family_key(fam)
    if not values:
        return DEFAULT_PARAMS[fam]
    parsed = {k: parse_rational(v) if isinstance(v, str) else Fraction(v) for k, v in values.items()}
    try:
        if fam == HAHN:
            if "N" in parsed:
                if parsed["N"].denominator != 1:
                    raise ValueError("N must be an integer")
                parsed["N"] = int(parsed["N"])
            return HahnParams(**parsed)
        fid = FamilyId(fam)
        if fid is FamilyId.Kravchuk and "N" in parsed:
            if parsed["N"].denominator != 1:
                raise ValueError("N must be an integer")
            parsed["N"] = int(parsed["N"])
        return families.make_params(fid, **parsed)
    except TypeError as exc:
        raise ConfigError(f"bad parameter names for {fam}: {exc}") from exc


@dataclass(frozen=True)
class SuiteConfig:
    suite: str
    family: str = HAHN
    max_order: int = 4
    params: dict | None = None
    mode: str = "auto"  # auto: exact where the arithmetic allows, floats for infinite sums
    precision: int = DEFAULT_PRECISION
    seed: int = 0
    draws: int = 200
    max_length: int = 8
    tolerance: float = 1e-30
    identity_cases: tuple = ()  # extra (identity, params) pairs run verbatim

    def validate(self) -> "SuiteConfig":
        if self.suite not in SUITES:
            raise ConfigError(f"unknown suite {self.suite!r}; choose from {', '.join(SUITES)}")
        if self.mode not in ("auto", "exact", "float"):
            raise ConfigError(f"unknown mode {self.mode!r}")
        if self.precision < 64:
            raise ConfigError("precision must be at least 64 bits")
        if self.max_order < 0:
            raise ConfigError("index bound must be nonnegative")
        if self.draws < 0 or self.max_length < 0:
            raise ConfigError("draws and max_length must be nonnegative")
        family_key(self.family)
        return self

    def families(self) -> list[str]:
        key = family_key(self.family)
        if key == "all":
            return [HAHN] + [f.value for f in FamilyId]
        return [key]

    def params_for(self, fam: str):
        if self.params and family_key(self.family) == fam:
            return make_family_params(fam, self.params)
        return DEFAULT_PARAMS[fam]


@dataclass
class CaseResult:
    id: str
    status: str
    residual: str
    elapsed_ms: float
    inputs: dict = field(default_factory=dict)
    note: str = ""

    def as_dict(self) -> dict:
        out = {"id": self.id, "status": self.status, "residual": self.residual, "elapsed_ms": round(self.elapsed_ms, 3)}
        if self.inputs:
            out["inputs"] = self.inputs
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class VerificationReport:
    suite: str
    precision_bits: int
    seed: int
    cases: list = field(default_factory=list)
    version: str = __version__

    @property
    def summary(self) -> dict:
        tally = {"pass": 0, "fail": 0, "skipped": 0, "hypothesis_violation": 0}
        for c in self.cases:
            key = {PASS: "pass", FAIL: "fail", SKIPPED: "skipped", VIOLATION: "hypothesis_violation"}[c.status]
            tally[key] += 1
        return tally

    @property
    def status(self) -> str:
        return FAIL if self.summary["fail"] else PASS

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def as_dict(self) -> dict:
        return {
            "suite": self.suite,
            "status": self.status,
            "environment": {"precision_bits": self.precision_bits, "seed": self.seed, "version": self.version},
            "cases": [c.as_dict() for c in self.cases],
            "summary": self.summary,
        }

    def to_json(self, timings: bool = True) -> str:
        data = self.as_dict()
        if not timings:
            for c in data["cases"]:
                c.pop("elapsed_ms")
        return json.dumps(data, indent=2, sort_keys=False) + "\n"

    def render(self) -> str:
        s = self.summary
        lines = [f"suite {self.suite}: {self.status} ({s['pass']} pass, {s['fail']} fail, {s['skipped']} skipped"]
        if s["hypothesis_violation"]:
            lines[0] += f", {s['hypothesis_violation']} hypothesis violations"
        lines[0] += ")"
        lines += [f"  FAIL {c.id}: residual {c.residual} {c.note}".rstrip() for c in self.cases if c.status == FAIL]
        return "\n".join(lines)


# a case body returns (residual, ok) or (residual, ok, note)
Case = tuple[str, dict, Callable[[], tuple]]


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (int, Fraction)) or isinstance(value, mpmath.mpf) or hasattr(value, "_mpf_"):
        return format_scalar(value)
    return str(value)


def _run_case(case: Case) -> CaseResult:
    cid, inputs, body = case
    t0 = time.perf_counter()
    note = ""
    try:
        out = body()
        residual, ok = out[0], out[1]
        if len(out) > 2:
            note = out[2]
        status = PASS if ok else FAIL
        text = _fmt(residual)
    except (PoleError, SingularSystemError, ZeroDivisionError) as exc:
        status, text, note = SKIPPED, "", str(exc)
    except HypothesisViolation as exc:
        status, text, note = VIOLATION, "", str(exc)
    except Exception as exc:  # a broken case is a failure, never an abort
        status, text, note = FAIL, "", f"{type(exc).__name__}: {exc}"
    return CaseResult(cid, status, text, (time.perf_counter() - t0) * 1000.0, inputs, note)


def _indexes(bound: int, lo: int = 0) -> Iterator[MultiIndex]:
    for total in range(lo, bound + 1):
        for n1 in range(total, -1, -1):
            yield MultiIndex(n1, total - n1)


def _params_dict(params) -> dict:
    return {k: format_scalar(v) for k, v in params.as_dict().items()} if hasattr(params, "as_dict") else {
        "alpha1": format_scalar(params.alpha1),
        "alpha2": format_scalar(params.alpha2),
        "beta": format_scalar(params.beta),
        "N": str(params.N),
    }


def _poly_zero(p) -> bool:
    return all(c == 0 for c in p.coeffs)


def _poly_norm(p):
    return max((abs(c) for c in p.coeffs), default=Fraction(0))


def _residual_norm(res):
    if isinstance(res, tuple):
        return max(_poly_norm(p) for p in res)
    return _poly_norm(res)


def _family_max_index(fam: str, params, bound: int) -> int:
    if fam == HAHN:
        return min(bound, params.N)
    if fam == FamilyId.Kravchuk.value:
        return min(bound, params.N)
    return bound


# ---------------------------------------------------------------------------
# orthogonality


def _orthogonality_cases(cfg: SuiteConfig) -> Iterator[Case]:
    for fam in cfg.families():
        params = cfg.params_for(fam)
        pin = _params_dict(params)
        top = _family_max_index(fam, params, cfg.max_order)
        for idx in _indexes(top, lo=1):
            n = idx.total
            for j in range(n):
                target = 1 if j == n - 1 else 0
                inputs = {"family": fam, "idx": [idx.n1, idx.n2], "j": j, "params": pin}
                if fam == HAHN:
                    yield (
                        f"orth/{fam}/typeI/{idx}/j={j}",
                        inputs,
                        lambda idx=idx, j=j, t=target, p=params: _exact(hahn.moment_sum(idx, Kind.typeI, j, p) - t),
                    )
                else:
                    yield (
                        f"orth/{fam}/typeI/{idx}/j={j}",
                        inputs,
                        lambda idx=idx, j=j, fam=fam, p=params: _family_orth(cfg, fam, idx, j, p),
                    )
            for a in (1, 2):
                for j in range(idx.n(a)):
                    inputs = {"family": fam, "idx": [idx.n1, idx.n2], "a": a, "j": j, "params": pin}
                    if fam == HAHN:
                        body = lambda idx=idx, j=j, a=a, p=params: _exact(hahn.moment_sum(idx, Kind.typeII, j, p, a=a))
                    else:
                        body = lambda idx=idx, j=j, a=a, fam=fam, p=params: _family_type2_orth(fam, idx, j, a, p)
                    yield (f"orth/{fam}/typeII/{idx}/a={a}/j={j}", inputs, body)


def _exact(residual) -> tuple:
    return residual, residual == 0


def _float_family(fam: str) -> bool:
    return fam in (FamilyId.MeixnerI.value, FamilyId.MeixnerII.value, FamilyId.Charlier.value)


def _family_orth(cfg: SuiteConfig, fam, idx, j, params):
    mode = cfg.mode
    if mode == "auto":
        mode = "float" if _float_family(fam) else "exact"
    try:
        r = families.family_orth_residual(fam, idx, j, params, mode=mode, bits=cfg.precision)
    except TailBoundError as exc:
        return None, False, str(exc)
    if mode == "exact":
        return r.value, r.value == 0
    note = f"{r.method}; terms={r.terms}; tail_bound={format_scalar(r.tail_bound)}" if r.tail_bound is not None else r.method
    return r.value, r.within(cfg.tolerance) and abs(r.value) < cfg.tolerance, note


def _family_type2_orth(fam, idx, j, a, params):
    f = families.family(fam, params)
    value = f.functional(a, f.mul(f.type2(idx), f.test_function(j)))
    return value, value == 0


# ---------------------------------------------------------------------------
# biorthogonality


@dataclass
class BiorthMatrix:
    rows: list  # type I indexes n
    cols: list  # type II indexes m
    entries: dict  # (n, m) -> value, or None for a pole
    verdict: bool
    violations: list
    poles: list

    def expected(self, n, m):
        return hahn.biorth_expected(n, m)


def _pairing_fn(params):
    if isinstance(params, HahnParams):
        return lambda n, m: hahn.biorth_pairing(n, m, params)
    f = families.family(_fid_of(params), params)
    cache: dict = {}

    def pair(n, m):
        if n not in cache:
            cache[n] = f.type1_core(n)
        return f.pairing(cache[n], f.type2(m))

    return pair


def _fid_of(params) -> FamilyId:
    for fid, cls in families.PARAMS_TYPE.items():
        if isinstance(params, cls):
            return fid
    raise ConfigError(f"no family takes {type(params).__name__}")


def biorth_matrix(params, max_order: int) -> BiorthMatrix:
    """Pairings of type I forms (``1 <= |n| <= max_order``) with type II polynomials (``|m| <= max_order``)."""
    if max_order < 1:
        raise ValueError("max_order must be at least 1")
    if isinstance(params, (HahnParams, families.KravchukParams)):
        max_order = min(max_order, params.N)
    rows = list(_indexes(max_order, lo=1))
    cols = list(_indexes(max_order))
    pair = _pairing_fn(params)
    entries, violations, poles = {}, [], []
    for n in rows:
        for m in cols:
            key = (tuple(n), tuple(m))
            try:
                v = pair(n, m)
            except (PoleError, SingularSystemError):
                entries[key] = None
                poles.append(key)
                continue
            entries[key] = v
            want = hahn.biorth_expected(n, m)
            if want is not None and v != want:
                violations.append(key)
    return BiorthMatrix([tuple(n) for n in rows], [tuple(m) for m in cols], entries, not violations, violations, poles)


def _biorth_cases(cfg: SuiteConfig) -> Iterator[Case]:
    for fam in cfg.families():
        params = cfg.params_for(fam)
        top = _family_max_index(fam, params, cfg.max_order)
        pair = _pairing_fn(params)
        for n in _indexes(top, lo=1):
            for m in _indexes(top):
                want = hahn.biorth_expected(n, m)
                if want is None:
                    continue
                yield (
                    f"biorth/{fam}/{n}x{m}",
                    {"family": fam, "n": list(n), "m": list(m), "expected": want},
                    lambda n=n, m=m, w=want: (lambda v: (v - w, v == w))(pair(n, m)),
                )


# ---------------------------------------------------------------------------
# recursion relations and reconstruction


def _recurrence_cases(cfg: SuiteConfig) -> Iterator[Case]:
    for fam in cfg.families():
        params = cfg.params_for(fam)
        # the relations reach (n1+1, n2+1)
        top = _family_max_index(fam, params, cfg.max_order + 2) - 2
        if top < 0:
            continue
        for idx in _indexes(min(top, cfg.max_order)):
            if fam == HAHN:
                body = lambda idx=idx, p=params: hahn.recursion_residuals(idx, p)
            else:
                body = lambda idx=idx, fam=fam, p=params: families.family_recursion_residuals(fam, idx, p)
            yield (f"recursion/{fam}/{idx}", {"family": fam, "idx": list(idx)}, lambda body=body: _all_zero(body()))
        for idx in _indexes(_family_max_index(fam, params, cfg.max_order), lo=1):
            if fam == HAHN:
                body = lambda idx=idx, p=params: (hahn.type1_via_recursion(idx, p), hahn.hahn_type1(idx, p))
            else:
                body = lambda idx=idx, fam=fam, p=params: (
                    families.family_type1_via_recursion(fam, idx, p),
                    families.family_type1_core(fam, idx, p),
                )
            yield (f"reconstruct/{fam}/{idx}", {"family": fam, "idx": list(idx)}, lambda body=body: _pair_diff(*body()))


def _all_zero(res: dict):
    worst = max((_residual_norm(v) for v in res.values()), default=Fraction(0))
    bad = [k for k, v in res.items() if not (all(_poly_zero(p) for p in v) if isinstance(v, tuple) else _poly_zero(v))]
    return worst, not bad, ("nonzero: " + ", ".join(bad)) if bad else f"relations: {', '.join(res)}"


def _pair_diff(got, want):
    d = max(_poly_norm(got[a] - want[a]) for a in (1, 2))
    return d, got.same_as(want)


# ---------------------------------------------------------------------------
# oracle comparisons and structural contracts


def _oracle_cases(cfg: SuiteConfig) -> Iterator[Case]:
    for fam in cfg.families():
        params = cfg.params_for(fam)
        top = _family_max_index(fam, params, cfg.max_order)
        for idx in _indexes(top):
            base = {"family": fam, "idx": list(idx)}
            if fam == HAHN:
                t2 = lambda idx=idx, p=params: (hahn.hahn_type2(idx, p), hahn.solve_oracle(idx, Kind.typeII, p))
                t1 = lambda idx=idx, p=params: (hahn.explicit_type1(idx, p), hahn.solve_oracle(idx, Kind.typeI, p))
                lead = 1
            else:
                f = families.family(fam, params)
                t2 = lambda idx=idx, f=f: (f.type2(idx), f.oracle_type2(idx))
                t1 = lambda idx=idx, f=f: (f.type1_core(idx), f.oracle_type1_core(idx))
                lead = 1 if f.discrete else 0
            yield (f"oracle/{fam}/typeII/{idx}", base, lambda t2=t2: _poly_diff(*t2()))
            if min(idx) >= 1:
                yield (f"oracle/{fam}/typeI/{idx}", base, lambda t1=t1: _pair_diff(*t1()))
            yield (f"structure/{fam}/{idx}", base, lambda idx=idx, fam=fam, p=params, lead=lead: _structure(fam, idx, p, lead))


def _poly_diff(got, want):
    return _poly_norm(got - want), got == want


def _structure(fam, idx, params, poch_basis):
    """Monicity, type I degrees and weight-swap covariance at one index."""
    n = idx.total
    if fam == HAHN:
        b = hahn.hahn_type2(idx, params)
        q = hahn.hahn_type1(idx, params)
        bs = hahn.hahn_type2(idx.swapped(), params.swapped())
        qs = hahn.hahn_type1(idx.swapped(), params.swapped())
    else:
        f = families.family(fam, params)
        g = families.family(fam, params.swapped())
        b, q = f.type2(idx), f.type1_core(idx)
        bs, qs = g.type2(idx.swapped()), g.type1_core(idx.swapped())
    lead = (-1) ** n if poch_basis else 1
    problems = []
    if b.degree != n or b.leading() != lead:
        problems.append("type II leading coefficient")
    for a in (1, 2):
        if q[a].degree > idx.n(a) - 1:
            problems.append(f"deg Q^({a})")
    if bs != b:
        problems.append("type II swap")
    if not (qs.q1 == q.q2 and qs.q2 == q.q1):
        problems.append("type I swap")
    return len(problems), not problems, "; ".join(problems)


# ---------------------------------------------------------------------------
# identities


def _identity_cases(cfg: SuiteConfig) -> Iterator[Case]:
    for ident in IdentityId:
        sampler = RationalSampler(random.Random(f"{cfg.seed}:{ident.value}"))
        for i in range(cfg.draws):
            p = sample_identity_params(ident, sampler, cfg.max_length)
            yield (
                f"identity/{ident.value}/{i:04d}",
                {"identity": ident.value, "params": _jsonable(p)},
                lambda ident=ident, p=p: _exact(identity_residual(ident, p)),
            )
    for k, (ident, p) in enumerate(cfg.identity_cases):
        ident = IdentityId(ident)
        yield (
            f"identity/{ident.value}/extra{k:03d}",
            {"identity": ident.value, "params": _jsonable(p)},
            lambda ident=ident, p=p: _exact(identity_residual(ident, p)),
        )


def _jsonable(v):
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, (int, Fraction)):
        return format_scalar(v)
    return str(v)


# ---------------------------------------------------------------------------
# limits


def _route_selected(route: limits.LimitRoute, fams: list[str]) -> bool:
    info = limits.ROUTES[route]
    source = HAHN if info.source == "Hahn" else FamilyId(info.source).value
    return source in fams or info.target.value in fams


def _limit_cases(cfg: SuiteConfig) -> Iterator[Case]:
    fams = cfg.families()
    idx = MultiIndex(2, 1)
    for route in limits.LimitRoute:
        if not _route_selected(route, fams):
            continue
        params, seq = limits.LIMIT_DEFAULTS[route]
        for kind in (Kind.typeII, Kind.typeI):
            yield (
                f"limit/{route.value}/{kind.value}/{idx}",
                {"route": route.value, "kind": kind.value, "sequence": [format_scalar(v) for v in seq]},
                lambda r=route, k=kind, p=params, s=seq: _order_case(limits.convergence_study(r, idx, s, p, k, bits=cfg.precision)),
            )
        yield (
            f"limit/{route.value}/coefficients/{idx}",
            {"route": route.value, "sequence": [format_scalar(v) for v in seq]},
            lambda r=route, p=params, s=seq: _coeff_order_case(*limits.recursion_convergence(r, idx, s, p, cfg.precision)),
        )
    if FamilyId.LaguerreI.value in fams or HAHN in fams:
        p = limits.LIMIT_DEFAULTS[limits.LimitRoute.JP_LI][0]
        for kind in (Kind.typeII, Kind.typeI):
            yield (
                f"limit/laguerre-two-routes/{kind.value}/{idx}",
                {"T": str(limits.LAGUERRE_MATCH_T), "kind": kind.value},
                lambda k=kind: (
                    lambda gap: (gap, gap < 1e-25)
                )(limits.laguerre_two_route_gap(idx, p, limits.LAGUERRE_MATCH_T, k, bits=cfg.precision)),
            )


def _order_case(rec: limits.RateRecord):
    note = "residuals " + ", ".join(format_scalar(r) for r in rec.residuals)
    if rec.order is None:
        return None, False, rec.note + "; " + note
    return rec.order, rec.order_within(1.0, 0.2), note


def _coeff_order_case(res, order):
    note = "residuals " + ", ".join(format_scalar(r) for r in res)
    if order is None:
        return None, all(r == 0 for r in res), note
    return order, abs(float(order) - 1.0) <= 0.2, note


# ---------------------------------------------------------------------------
# driver

_GENERATORS: dict[str, Callable[[SuiteConfig], Iterable[Case]]] = {
    "orthogonality": _orthogonality_cases,
    "biorthogonality": _biorth_cases,
    "recurrence": _recurrence_cases,
    "identities": _identity_cases,
    "limits": _limit_cases,
    "oracle": _oracle_cases,
}


def suite_cases(cfg: SuiteConfig) -> list[Case]:
    cfg.validate()
    names = [s for s in SUITES if s != "all"] if cfg.suite == "all" else [cfg.suite]
    out: list[Case] = []
    for name in names:
        if name != "identities" and name != "limits" and cfg.max_order == 0:
            continue
        out.extend(_GENERATORS[name](cfg))
    return out


def run_suite(cfg: SuiteConfig) -> VerificationReport:
    cfg.validate()
    report = VerificationReport(cfg.suite, cfg.precision, cfg.seed)
    for case in suite_cases(cfg):
        report.cases.append(_run_case(case))
    return report


# ---------------------------------------------------------------------------
# uniform access to Hahn and the descendant families (used by the CLI)


class ExactUnavailable(TypeError):
    """The requested value is not rational; use float mode or the core."""


def type2_of(fam: str, idx, params):
    fam = family_key(fam)
    if fam == HAHN:
        return hahn.hahn_type2(idx, params)
    return families.family_type2(fam, idx, params)


def type1_of(fam: str, idx, params, mode: str = "exact", bits: int = DEFAULT_PRECISION, core: bool = False):
    """Type I pair; ``core`` strips the per-weight constants of a family."""
    fam = family_key(fam)
    if fam == HAHN:
        pair = hahn.hahn_type1(idx, params)
        if mode == "float":
            ctx = FloatArith(bits)
            return hahn.TypeIPair(pair.q1.map(ctx.num), pair.q2.map(ctx.num), pair.source, pair.diagnostic)
        return pair
    if core:
        pair = families.family_type1_core(fam, idx, params)
        if mode == "float":
            ctx = FloatArith(bits)
            return hahn.TypeIPair(pair.q1.map(ctx.num), pair.q2.map(ctx.num), pair.source, pair.diagnostic)
        return pair
    try:
        return families.family_type1(fam, idx, params, mode=mode, bits=bits)
    except TypeError as exc:
        raise ExactUnavailable(f"{fam} type I values carry a non-rational constant ({exc}); use --mode float or --core") from exc


def weight_of(fam: str, a: int, x, params, mode: str = "exact", bits: int = DEFAULT_PRECISION):
    fam = family_key(fam)
    if fam == HAHN:
        if Fraction(x).denominator != 1:
            raise ValueError(f"Hahn point {x} is not an integer")
        w = hahn.hahn_weight(int(x), a, params)
        return FloatArith(bits).num(w) if mode == "float" else w
    try:
        return families.family_weight(fam, a, x, params, mode=mode, bits=bits)
    except TypeError as exc:
        raise ExactUnavailable(f"{fam} weight at {x} is not rational here ({exc}); use --mode float") from exc


def finite_support(fam: str, params) -> range | None:
    """Support points for Hahn and Kravchuk, else ``None``."""
    fam = family_key(fam)
    if fam == HAHN or fam == FamilyId.Kravchuk.value:
        return range(params.N + 1)
    return None


def is_discrete(fam: str) -> bool:
    fam = family_key(fam)
    return fam == HAHN or families.family(fam, DEFAULT_PARAMS[fam]).discrete
