"""Acceptance checks, each at its stated tolerance and time budget.

Run with ``pytest tests/test_acceptance.py -s`` to see the verdict lines as
they happen; they are also repeated in the terminal summary.
"""

import random
import time
from fractions import Fraction

from mop import families, hahn, limits
from mop.families import FamilyId
from mop.hahn import HahnParams, Kind, MultiIndex
from mop.hypergeo import IdentityId, RationalSampler, identity_residual, sample_identity_params
from mop.scalar import PoleError
from mop.verify import DEFAULT_PARAMS, biorth_matrix

HAHN = HahnParams(Fraction(1, 2), Fraction(1, 3), Fraction(1, 4), 12)
BITS = 256


def _grid(bound, lo=0):
    return [MultiIndex(n1, t - n1) for t in range(lo, bound + 1) for n1 in range(t + 1)]


def _square(top):
    return [MultiIndex(n1, n2) for n1 in range(top + 1) for n2 in range(top + 1)]


def test_hahn_type1_orthogonality(verdict):
    t0 = time.perf_counter()
    bad = []
    for idx in _grid(6, lo=1):
        n = idx.total
        for j in range(n):
            v = hahn.moment_sum(idx, Kind.typeI, j, HAHN)
            want = 1 if j == n - 1 else 0
            if not (isinstance(v, Fraction) and v == want):
                bad.append((tuple(idx), j, v))
    dt = time.perf_counter() - t0
    ok = not bad and dt < 30
    verdict("1 Hahn type I orthogonality, n1+n2 <= 6, exact", ok, dt, f"{len(bad)} bad")
    assert not bad
    assert dt < 30


def test_biorthogonality(verdict):
    t0 = time.perf_counter()
    m = biorth_matrix(HAHN, 5)
    dt = time.perf_counter() - t0
    checked = sum(1 for k in m.entries if hahn.biorth_expected(*k) is not None)
    ok = m.verdict and not m.poles and dt < 60
    verdict("2 biorthogonality matrix, max_order 5, exact", ok, dt, f"{checked} constrained entries")
    assert m.verdict, m.violations
    assert not m.poles
    assert dt < 60


def test_oracle_equivalence(verdict):
    t0 = time.perf_counter()
    bad = []
    for idx in _grid(6):
        if hahn.hahn_type2(idx, HAHN) != hahn.solve_oracle(idx, Kind.typeII, HAHN):
            bad.append(("II", tuple(idx)))
        if min(idx) >= 1 and not hahn.hahn_type1(idx, HAHN).same_as(hahn.solve_oracle(idx, Kind.typeI, HAHN)):
            bad.append(("I", tuple(idx)))
    dt = time.perf_counter() - t0
    verdict("3 oracle equivalence, n1+n2 <= 6, exact", not bad and dt < 60, dt)
    assert not bad, bad
    assert dt < 60


def test_recursion_reconstruction(verdict):
    t0 = time.perf_counter()
    bad = []
    for idx in _square(4):
        if idx.total == 0:
            continue
        got = hahn.type1_via_recursion(idx, HAHN)
        if not got.same_as(hahn.solve_oracle(idx, Kind.typeI, HAHN)):
            bad.append(tuple(idx))
        # the closed form only covers interior indexes
        elif min(idx) >= 1 and not got.same_as(hahn.explicit_type1(idx, HAHN)):
            bad.append(tuple(idx))
    dt = time.perf_counter() - t0
    verdict("4 type I from Q(1,0), Q(1,1) and recursion, n1,n2 <= 4", not bad and dt < 60, dt)
    assert not bad, bad
    assert dt < 60


def test_recursion_residuals(verdict):
    t0 = time.perf_counter()
    bad, seen = [], set()
    for idx in _square(4):
        for key, res in hahn.recursion_residuals(idx, HAHN).items():
            seen.add(key)
            if not hahn.residual_is_zero(res):
                bad.append((tuple(idx), key))
    dt = time.perf_counter() - t0
    relations = {f"II.{i}" for i in range(1, 5)} | {f"I.{i}" for i in range(1, 5)}
    ok = not bad and relations <= seen and dt < 120
    verdict("5 eight near-neighbor relations, n1,n2 <= 4, exact", ok, dt, f"{len(bad)} nonzero")
    assert relations <= seen
    assert not bad, bad
    assert dt < 120


def test_identity_suites(verdict):
    t0 = time.perf_counter()
    bad, skipped = [], {}
    for ident in IdentityId:
        sampler = RationalSampler(random.Random(f"acceptance:{ident.value}"))
        done = 0
        while done < 200:
            p = sample_identity_params(ident, sampler, max_length=8)
            try:
                r = identity_residual(ident, p)
            except PoleError:
                skipped[ident.value] = skipped.get(ident.value, 0) + 1
                continue
            done += 1
            if r != 0:
                bad.append((ident.value, p, r))
    dt = time.perf_counter() - t0
    note = f"{len(IdentityId)} identities x 200 draws; pole draws redrawn: {sum(skipped.values())}"
    verdict("6 hypergeometric identity suites, exact", not bad and dt < 120, dt, note)
    assert not bad, bad[:3]
    assert dt < 120


EXACT_FAMILIES = (FamilyId.Kravchuk, FamilyId.JacobiPineiro, FamilyId.LaguerreI, FamilyId.LaguerreII)
SERIES_FAMILIES = (FamilyId.MeixnerI, FamilyId.MeixnerII, FamilyId.Charlier)


def test_family_orthogonality(verdict):
    t0 = time.perf_counter()
    bad = []
    for fid in EXACT_FAMILIES + SERIES_FAMILIES:
        params = DEFAULT_PARAMS[fid.value]
        for idx in _grid(5, lo=1):
            for j in range(idx.total):
                if fid in EXACT_FAMILIES:
                    r = families.family_orth_residual(fid, idx, j, params, mode="exact")
                    if r.value != 0:
                        bad.append((fid.value, tuple(idx), j, r.value))
                else:
                    r = families.family_orth_residual(fid, idx, j, params, mode="float", bits=BITS)
                    if r.tail_bound is None or not r.tail_bound < 1e-30 or not abs(r.value) < 1e-30:
                        bad.append((fid.value, tuple(idx), j, r.value, r.tail_bound))
    dt = time.perf_counter() - t0
    verdict("7 family orthogonality, n1+n2 <= 5", not bad and dt < 120, dt, f"{len(bad)} bad")
    assert not bad, bad[:3]
    assert dt < 120


def test_limit_convergence(verdict):
    t0 = time.perf_counter()
    idx = MultiIndex(2, 1)
    orders, bad = {}, []
    for route in limits.LimitRoute:
        params, seq = limits.LIMIT_DEFAULTS[route]
        for kind in (Kind.typeI, Kind.typeII):
            rec = limits.convergence_study(route, idx, seq, params, kind, bits=BITS)
            orders[(route.value, kind.value)] = rec.order
            if not rec.order_within(1.0, 0.2):
                bad.append((route.value, kind.value, rec.order, rec.note))
    lag = limits.LIMIT_DEFAULTS[limits.LimitRoute.JP_LI][0]
    gaps = [limits.laguerre_two_route_gap(idx, lag, limits.LAGUERRE_MATCH_T, k, bits=BITS) for k in (Kind.typeI, Kind.typeII)]
    dt = time.perf_counter() - t0
    lo = min(float(o) for o in orders.values() if o is not None)
    hi = max(float(o) for o in orders.values() if o is not None)
    ok = not bad and all(g < 1e-25 for g in gaps) and dt < 300
    verdict("8 limit routes order 1 +- 0.2, Laguerre I routes agree", ok, dt, f"orders {lo:.3f}..{hi:.3f}, gap {float(max(gaps)):.1e}")
    assert not bad, bad
    assert all(g < 1e-25 for g in gaps)
    assert dt < 300


def _structure_problems(b, q, bs, qs, idx, lead):
    out = []
    if b.degree != idx.total or b.leading() != lead:
        out.append("leading")
    out += [f"deg{a}" for a in (1, 2) if q[a].degree > idx.n(a) - 1]
    if bs != b:
        out.append("II swap")
    if not (qs.q1 == q.q2 and qs.q2 == q.q1):
        out.append("I swap")
    return out


def test_structural_contracts(verdict):
    t0 = time.perf_counter()
    bad = []
    swapped = HAHN.swapped()
    for idx in _square(4):
        b = hahn.hahn_type2(idx, HAHN)
        bs = hahn.hahn_type2(idx.swapped(), swapped)
        if idx.total == 0:
            q = qs = hahn.ZERO_PAIR
        else:
            q, qs = hahn.hahn_type1(idx, HAHN), hahn.hahn_type1(idx.swapped(), swapped)
        for p in _structure_problems(b, q, bs, qs, idx, (-1) ** idx.total):
            bad.append(("hahn", tuple(idx), p))
    for fid in FamilyId:
        params = DEFAULT_PARAMS[fid.value]
        f, g = families.family(fid, params), families.family(fid, params.swapped())
        for idx in _square(4):
            if f.finite_support and idx.total > params.N:
                continue
            b, bs = f.type2(idx), g.type2(idx.swapped())
            if idx.total == 0:
                q = qs = f.zero_pair
            else:
                q, qs = f.type1_core(idx), g.type1_core(idx.swapped())
            lead = (-1) ** idx.total if f.discrete else 1
            for p in _structure_problems(b, q, bs, qs, idx, lead):
                bad.append((fid.value, tuple(idx), p))
    dt = time.perf_counter() - t0
    verdict("9 monic type II, type I degrees, swap covariance, n1,n2 <= 4", not bad and dt < 30, dt)
    assert not bad, bad
    assert dt < 30
