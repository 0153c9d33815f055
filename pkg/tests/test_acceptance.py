"""Acceptance criteria, one test each; every test records a pass/fail line.

Fixture for the end-to-end criteria: Gamma = 10, c = 1, p = inf with the
enumeration overridden so that (q_1, ell_1) = (1, 1) comes first.
"""

import math
import time
from fractions import Fraction
from functools import lru_cache

import mpmath
import numpy as np
import pytest

from fhc.analysis import (TAIL_TOL, block_bound_check, block_radius_grid, default_radius_grid,
                          glue_check, growth_report, lambda_table, lemma_sum_check, loglinear_check,
                          pmean, stirling_checks)
from fhc.construction import DictStream, ExpStream, SparseCoeffStream, coeff_bound_ok, p1_check_radii
from fhc.enumeration import ConstructionParams, GaussQ, RationalPoly
from fhc.hypercyclicity import lower_bound_probe, verify_visit
from fhc.kernel_polys import pnorm_with_error, rudin_shapiro_poly, sup_norm_bounds, vallee_poussin_poly

HORIZON_N = 1200


def nonzero_active(stream, n_max):
    return [s for s in stream.active_blocks(n_max) if stream.block(s.n)]


@lru_cache(maxsize=None)
def grs(n):
    if n == 0:
        return 1
    if n % 2 == 0:
        return grs(n // 2)
    return (-1) ** ((n - 1) // 2) * grs((n - 1) // 2)


def parseval_series(coeffs, r, j_max=None):
    """``e^{-r} (sum_j |a_j|^2 r^{2j}/j!^2)^{1/2}`` by direct mpmath summation."""
    with mpmath.workdps(40):
        rr = mpmath.mpf(r)
        logr = mpmath.log(rr)
        items = coeffs.items() if isinstance(coeffs, dict) else ((j, 1) for j in range(j_max + 1))
        total = mpmath.fsum(abs(complex(a)) ** 2 * mpmath.exp(2 * (j * logr - mpmath.loggamma(j + 1) - rr))
                            for j, a in items)
        return float(mpmath.sqrt(total))


# -- 1 ------------------------------------------------------------------------------------

def test_criterion_01_polynomial_suite(record):
    t0 = time.perf_counter()
    worst_rs, worst_vp, ones_ok = 0.0, 0.0, True
    for m in range(1, 4097):
        rs = rudin_shapiro_poly(m)
        _, upper = sup_norm_bounds(rs)
        worst_rs = max(worst_rs, upper / (5 * math.sqrt(m)))
        ones_ok &= rs.count(1) >= (m + 1) // 2
        vp = vallee_poussin_poly(m)
        ones_ok &= vp.count(1) >= m // 4
        for p in (1.0, 1.5, 2.0):
            val, err = pnorm_with_error(vp, p, rtol=1e-3)
            worst_vp = max(worst_vp, (val + err) / (3 * m ** (1 - 1 / p)))
    elapsed = time.perf_counter() - t0
    ok = worst_rs <= 1 and worst_vp <= 1 and ones_ok and elapsed < 60
    record(1, ok, f"max RS sup/(5 sqrt m) = {worst_rs:.4f}, max VP norm/bound = {worst_vp:.4f}, "
                  f"{elapsed:.1f} s")
    assert ok


# -- 2 ------------------------------------------------------------------------------------

def test_criterion_02_multiplier_suite(record):
    t0 = time.perf_counter()
    worst, exact = 0.0, True
    for n in range(1, 513):
        t = lambda_table(n)
        worst = max(worst, t.max_deviation * n / 12)
        exact &= t.inner[0] == 1.0 and t.outer[0] == 1.0
    elapsed = time.perf_counter() - t0
    ok = worst <= 1 and exact and elapsed < 10
    record(2, ok, f"max n*dev/12 = {worst:.4f}, {elapsed:.2f} s")
    assert ok


# -- 3 ------------------------------------------------------------------------------------

def test_criterion_03_lemma_suite(record):
    t0 = time.perf_counter()
    a_vals = (0.0, 0.25, 0.5, 0.75, 1.0)
    sum_max = max(lemma_sum_check(m, a) for m in range(1, 51) for a in a_vals)
    ll = [loglinear_check(a, m * m, (m + 1) ** 2) for m in range(1, 51) for a in a_vals]
    rng = np.random.default_rng(20240601)
    for _ in range(500):
        x0 = float(rng.uniform(1e-3, 1e4))
        ll.append(loglinear_check(float(rng.uniform(0, 5)), x0, x0 * (1 + float(rng.uniform(1e-4, 20)))))
    st = stirling_checks(range(1, 101), range(2, 101))
    elapsed = time.perf_counter() - t0
    ok = sum_max <= 1 and all(r.passed for r in ll) and all(r.passed for r in st) and elapsed < 10
    record(3, ok, f"max sum ratio = {sum_max:.4f}, {len(ll)} loglinear triples, {len(st)} Stirling rows, "
                  f"{elapsed:.2f} s")
    assert ok


# -- 4 ------------------------------------------------------------------------------------

def test_criterion_04_growth(fixture_params, fixture_stream, record):
    t0 = time.perf_counter()
    assert fixture_stream.alpha(1) == 101
    first = nonzero_active(fixture_stream, HORIZON_N)
    assert first[0].n == 1010 and first[0].k == 1
    radii = sorted(set(default_radius_grid(2e4)) | set(block_radius_grid([s.n for s in first[:3]])))
    rep = growth_report(fixture_stream, math.inf, radii, 0.25)
    guaranteed = fixture_params.guaranteed_constant(1)
    elapsed = time.perf_counter() - t0
    ok = (rep.max_tail <= TAIL_TOL and rep.max_ratio_upper <= guaranteed
          and all(math.isfinite(r.ratio) and r.ratio >= 0 for r in rep.rows) and elapsed < 600)
    record(4, ok, f"measured max M r^1/4 e^-r = {rep.max_ratio:.4g} (certified {rep.max_ratio_upper:.4g}) "
                  f"vs guaranteed {guaranteed:.6g}; {len(radii)} radii, max tail {rep.max_tail:.2e}, "
                  f"{elapsed:.1f} s")
    assert ok


# -- 5 ------------------------------------------------------------------------------------

def test_criterion_05_block_and_glue(fixture_stream, record):
    specs = nonzero_active(fixture_stream, HORIZON_N)
    blocks = [block_bound_check(fixture_stream, s.n, math.inf) for s in specs]
    worst_block = max(max(b.ratios) for b in blocks)
    radii = sorted(set(default_radius_grid(2e4)) | set(block_radius_grid([s.n for s in specs[:3]])))
    glue = glue_check(fixture_stream, math.inf, 0.25, radii)
    ok = all(b.passed for b in blocks) and glue.passed and glue.certified and glue.p0_zero
    record(5, ok, f"{len(blocks)} blocks, worst measured/(20 B/sqrt r) = {worst_block:.4f}; "
                  f"glue max {glue.max_upper_ratio:.4g} vs 1e3 b = {1e3 * glue.b:.4g}")
    assert ok


# -- 6 ------------------------------------------------------------------------------------

def test_criterion_06_visits(fixture_stream, half_stream, record):
    out = []
    for stream, n, tol in ((fixture_stream, 1010, 1.0), (half_stream, 4010, 0.5)):
        t0 = time.perf_counter()
        rep = verify_visit(stream, 1, n=n)
        elapsed = time.perf_counter() - t0
        out.append((rep, elapsed, rep.passed and rep.s == min(stream.b_set(n)) and rep.tolerance == tol
                    and elapsed < 30))
    ok = all(o[2] for o in out)
    record(6, ok, "; ".join(f"ell={r.ell}: sup error {r.sup_error:.3e} <= {r.tolerance} ({t:.2f} s)"
                            for r, t, _ in out))
    assert ok


# -- 7 ------------------------------------------------------------------------------------

def expected_block(params, stream, n):
    """Independent rebuild of block ``n`` from the construction rules."""
    if n < 2 or n % 2:
        return {}
    k = (n & -n).bit_length() - 1
    pair = params.pair(k)
    al = 1 + max(int((10 * pair.ell) ** 2), 2 * pair.degree + 8 * pair.ell)
    assert al == stream.alpha(k)
    if n < 10 * al:
        return {}
    m = n // al
    signs = [grs(i) for i in range(m)]
    if sum(1 for s in signs if s == 1) < (m + 1) // 2:
        signs = [-s for s in signs]
    out = {}
    for i, b in enumerate(signs):
        for t, qt in enumerate(pair.poly.taylor_coeffs):
            if qt != 0:
                out[n * n + al * i + t] = b * qt
    return out


def test_criterion_07_coefficient_invariants(fixture_params, record):
    t0 = time.perf_counter()
    stream = SparseCoeffStream(fixture_params)
    N = HORIZON_N ** 2
    bound_ok, matches, gaps_ok, nonzero, visits = True, True, True, 0, 0
    for n in range(0, HORIZON_N + 1):
        blk = stream.block(n)
        matches &= blk == expected_block(fixture_params, stream, n)
        for j, a in blk.items():
            if j <= N:
                nonzero += 1
                bound_ok &= j >= 1 and coeff_bound_ok(j, a)
    dense = stream.window(0, N + 200)
    for spec in stream.active_blocks(HORIZON_N):
        pair = stream.pair(spec.k)
        q = np.array([complex(c) for c in pair.poly.taylor_coeffs])
        for s in stream.b_set(spec.n):
            if s > N:
                continue
            visits += 1
            d = pair.degree
            gaps_ok &= np.array_equal(dense[s:s + d + 1], q) if not pair.poly.is_zero() else True
            gaps_ok &= not np.any(dense[s + d + 1:s + d + 1 + 8 * pair.ell])
    elapsed = time.perf_counter() - t0
    ok = bound_ok and matches and gaps_ok and elapsed < 60
    record(7, ok, f"j <= {N}: {nonzero} nonzero coefficients, {visits} visit windows checked, "
                  f"rebuild matches: {matches}, {elapsed:.1f} s")
    assert ok


# -- 8 ------------------------------------------------------------------------------------

def test_criterion_08_lower_bound(fixture_stream, record):
    ns = [s.n for s in nonzero_active(fixture_stream, HORIZON_N)[:3]]
    value = lower_bound_probe(fixture_stream, math.inf, ns)
    literal = [s.n for s in list(fixture_stream.active_blocks(HORIZON_N))[:3]]
    literal_value = lower_bound_probe(fixture_stream, math.inf, literal)
    ok = value > 1e-3
    record(8, ok, f"blocks {ns}: {value:.4g} (first three active indices {literal}, which include an "
                  f"all-zero block: {literal_value:.4g})")
    assert ok


# -- 9 ------------------------------------------------------------------------------------

def phi_log(r):
    return 1.0 + math.log1p(r)


def test_criterion_09_p1_mode(record):
    override = [(RationalPoly((1,)), 1), (RationalPoly((Fraction(1, 2), Fraction(-1, 2))), 2)]
    params = ConstructionParams(mode="p1", c=1, gamma=10, phi=phi_log, override=override)
    grid = default_radius_grid(2e4)
    stream = SparseCoeffStream(params, p1_radii=grid)
    rows, ok = [], True
    for k in (1, 2):
        al = stream.alpha(k)
        piece = SparseCoeffStream(params, restrict_to={k}, alpha_fixed={k: al})
        radii = p1_check_radii(piece, k, grid)
        worst = max(pmean(piece, 1, r).upper / (2.0 ** -k * phi_log(r) / math.sqrt(r)) for r in radii)
        ok &= worst <= 1 and bool(piece.block(next(s.n for s in piece.active_blocks(10 ** 4, k))))
        rows.append(f"k={k}: alpha={al}, worst ratio {worst:.4f} over {len(radii)} radii")
    record(9, ok, "; ".join(rows))
    assert ok


# -- 10 -----------------------------------------------------------------------------------

def test_criterion_10_parseval(fixture_stream, record):
    rng = np.random.default_rng(7)
    worst = {}
    # f(z) = z: tolerance scaled to the size of f so the lone coefficient is resolved
    errs = []
    for r in rng.uniform(0.05, 50, 20):
        tol = 1e-14 * r * math.exp(-r)
        got = pmean(DictStream({1: 1}), 2, r, tol=tol).scaled
        errs.append(abs(got / parseval_series({1: 1}, r) - 1))
    worst["z"] = max(errs)
    errs = []
    for r in rng.uniform(0.5, 2e4, 20):
        got = pmean(ExpStream(), 2, r).scaled
        j_max = int(r + 40 * math.sqrt(r) + 100)
        errs.append(abs(got / parseval_series(None, r, j_max) - 1))
    worst["exp"] = max(errs)
    blk = fixture_stream.block(1010)
    errs = []
    for r in rng.uniform(1009.0 ** 2, 1012.0 ** 2, 20):
        got = pmean(DictStream(blk), 2, r).scaled
        errs.append(abs(got / parseval_series(blk, r) - 1))
    worst["block"] = max(errs)
    ok = all(v <= 1e-10 for v in worst.values())
    record(10, ok, ", ".join(f"{k}: max rel err {v:.2e}" for k, v in worst.items()))
    assert ok
