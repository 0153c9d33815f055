import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate

from fhc.kernel_polys import (CoeffPoly, fejer_kernel, grs_sign, pnorm_with_error, poly_pnorm,
                              rudin_shapiro_poly, sup_norm_bounds, vallee_poussin_poly)


def grs_recursive(n):
    if n == 0:
        return 1
    if n % 2 == 0:
        return grs_recursive(n // 2)
    h = (n - 1) // 2
    return (-1) ** h * grs_recursive(h)


def fejer_closed_form(k, theta):
    s = np.sin(theta / 2)
    return np.where(np.abs(s) < 1e-12, float(k), np.sin(k * theta / 2) ** 2 / (k * s ** 2 + 1e-300))


def evaluate(q: CoeffPoly, theta):
    theta = np.asarray(theta)
    return sum(complex(c) * np.exp(1j * (q.degree_lo + i) * theta) for i, c in enumerate(q.coeffs))


# -- Rudin-Shapiro ---------------------------------------------------------------

@pytest.mark.parametrize("m, expected", [(1, [1]), (2, [1, 1]), (4, [1, 1, 1, -1])])
def test_rudin_shapiro_examples(m, expected):
    assert list(rudin_shapiro_poly(m).coeffs) == expected


def test_rudin_shapiro_matches_recursion():
    m = 600
    assert list(rudin_shapiro_poly(m).coeffs) == [grs_recursive(i) for i in range(m)]
    assert [grs_sign(i) for i in range(m)] == [grs_recursive(i) for i in range(m)]


def test_rudin_shapiro_length_ten():
    # +1 positions of the length-10 prefix per the recursion
    p = rudin_shapiro_poly(10)
    assert [i for i, b in enumerate(p.coeffs) if b == 1] == [0, 1, 2, 4, 5, 7, 8, 9]


def test_rudin_shapiro_rejects_zero():
    with pytest.raises(ValueError):
        rudin_shapiro_poly(0)


@given(st.integers(1, 700))
@settings(max_examples=60, deadline=None)
def test_rudin_shapiro_properties(m):
    p = rudin_shapiro_poly(m)
    assert len(p) == m and p.degree_hi - p.degree_lo + 1 == m
    assert set(p.coeffs) <= {1, -1}
    assert p.count(1) >= math.ceil(m / 2)
    assert poly_pnorm(p, 2) == pytest.approx(math.sqrt(m), rel=1e-12)
    assert poly_pnorm(p, math.inf) <= 5 * math.sqrt(m)


# -- Fejer and de la Vallee-Poussin ---------------------------------------------

def test_fejer_examples():
    assert fejer_kernel(1).as_dict() == {0: 1}
    assert fejer_kernel(2).as_dict() == {-1: Fraction(1, 2), 0: 1, 1: Fraction(1, 2)}
    for k in range(1, 20):
        assert fejer_kernel(k)[0] == 1
    with pytest.raises(ValueError):
        fejer_kernel(0)


@pytest.mark.parametrize("k", [1, 2, 5, 13])
def test_fejer_against_closed_form(k):
    theta = np.linspace(-3, 3, 37) + 1e-3
    assert np.allclose(evaluate(fejer_kernel(k), theta).real, fejer_closed_form(k, theta), atol=1e-10)


def test_vallee_poussin_examples():
    assert vallee_poussin_poly(1).coeffs == (1,)
    assert vallee_poussin_poly(4).as_dict() == {1: 1, 2: 1, 3: 1}
    # exact expansion of e^{4i.}(2F_4 - F_2)
    got = vallee_poussin_poly(8).coeffs
    assert got == (0, Fraction(1, 2), 1, 1, 1, 1, 1, Fraction(1, 2))
    with pytest.raises(ValueError):
        vallee_poussin_poly(0)


@pytest.mark.parametrize("m", [4, 7, 9, 22, 63])
def test_vallee_poussin_against_kernels(m):
    k = m // 4
    theta = np.linspace(-3, 3, 41) + 1e-3
    oracle = np.exp(2j * k * theta) * (2 * fejer_closed_form(2 * k, theta) - fejer_closed_form(k, theta))
    assert np.allclose(evaluate(vallee_poussin_poly(m), theta), oracle, atol=1e-9)


@given(st.integers(1, 600))
@settings(max_examples=40, deadline=None)
def test_vallee_poussin_properties(m):
    p = vallee_poussin_poly(m)
    assert p.degree_lo == 0 and len(p) == (m if m >= 4 else 1)
    assert all(abs(c) <= 1 for c in p.coeffs)
    assert p.count(1) >= m // 4
    for q in (1.0, 1.5, 2.0):
        bound = 3 * m ** (1 - 1 / q)
        assert poly_pnorm(p, q) <= bound
    assert poly_pnorm(p, 1) <= 3


# -- norms -------------------------------------------------------------------------

def test_pnorm_examples():
    assert poly_pnorm(CoeffPoly((1,)), math.inf) == 1
    assert poly_pnorm(CoeffPoly((1, 1)), 2) == pytest.approx(math.sqrt(2), rel=1e-14)
    assert poly_pnorm(fejer_kernel(2), 1) == pytest.approx(1, abs=1e-12)
    with pytest.raises(ValueError):
        poly_pnorm(CoeffPoly(()), 2)


@pytest.mark.parametrize("p", [1.0, 1.5, 3.0])
def test_pnorm_against_quadrature(p):
    rng = np.random.default_rng(7)
    q = CoeffPoly(tuple(rng.normal(size=9) + 1j * rng.normal(size=9)), -3)
    val, err = pnorm_with_error(q, p)
    f = lambda t: abs(evaluate(q, t)) ** p
    oracle = (integrate.quad(f, 0, 2 * np.pi, limit=400, epsabs=1e-13)[0] / (2 * np.pi)) ** (1 / p)
    assert val == pytest.approx(oracle, rel=1e-7)
    assert abs(val - oracle) <= max(err, 1e-12) * 10
    assert err < 1e-6


def test_sup_bounds_bracket_dense_maximum():
    rng = np.random.default_rng(3)
    for span in (1, 5, 40):
        q = CoeffPoly(tuple(rng.normal(size=span + 1) + 1j * rng.normal(size=span + 1)))
        lo, hi = sup_norm_bounds(q)
        theta = np.linspace(0, 2 * np.pi, 200_001)
        dense = np.abs(evaluate(q, theta)).max()
        assert lo <= dense + 1e-12
        assert dense <= hi


coeff_lists = st.lists(st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False),
                       min_size=1, max_size=30)


@given(coeff_lists)
@settings(max_examples=60, deadline=None)
def test_parseval(cs):
    q = CoeffPoly(tuple(cs))
    ssq = sum(abs(c) ** 2 for c in cs)
    assert poly_pnorm(q, 2) ** 2 == pytest.approx(ssq, rel=1e-12, abs=1e-300)


@given(coeff_lists)
@settings(max_examples=40, deadline=None)
def test_norm_monotone_in_p(cs):
    q = CoeffPoly(tuple(cs))
    vals = [pnorm_with_error(q, p) for p in (1.0, 1.5, 2.0, 4.0)]
    for (a, ea), (b, eb) in zip(vals, vals[1:]):
        assert a <= b + ea + eb + 1e-12 * b
    assert vals[-1][0] <= poly_pnorm(q, math.inf) * (1 + 1e-12)
