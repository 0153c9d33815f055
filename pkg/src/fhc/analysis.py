"""
Evaluation of entire functions on circles and the supporting inequality checks.

All magnitudes are carried relative to ``e^r``: on the circle ``|z| = r`` the
term ``a_j z^j / j!`` has modulus ``|a_j| e^{w_j} e^r`` with log-weight
``w_j = j log r - log j! - r``. Weights are anchored at ``j ~ r`` with
``mpmath`` and propagated by cumulative ``log1p`` sums, which keeps them
accurate to about ``1e-13`` even when ``j log r`` is of order ``1e7``.

Truncation to ``J0 <= j <= J`` is certified with the coefficient bound
``|a_j| <= max(1, j)`` and geometric majorants of both tails.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Optional, Sequence

import mpmath
import numpy as np
from scipy.special import logsumexp

from .construction import CoeffStream
from .errors import TruncationError
from .kernel_polys import PNORM_RTOL, CoeffPoly, pnorm_from_coeffs, sup_bounds_from_coeffs, trig_samples

__all__ = [
    "TAIL_TOL",
    "log_weights",
    "tail_bounds",
    "truncation",
    "CircleEval",
    "eval_circle",
    "PMean",
    "pmean",
    "default_radius_grid",
    "block_radius_grid",
    "GrowthRow",
    "GrowthReport",
    "growth_report",
    "MultiplierTable",
    "lambda_table",
    "HeatKernelReport",
    "heat_kernel_mass",
    "lemma_sum_check",
    "LoglinearResult",
    "loglinear_check",
    "StirlingRow",
    "stirling_checks",
    "BlockBoundReport",
    "block_bound_check",
    "GlueReport",
    "glue_check",
]

TAIL_TOL = 1e-12
ANCHOR_PREC = 128


def _workers() -> int:
    try:
        return max(1, int(os.environ.get("FHC_THREADS", "1")))
    except ValueError:
        return 1


def _map(fn, items):
    items = list(items)
    n = min(_workers(), len(items))
    if n <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as ex:
        return list(ex.map(fn, items))


# -- log weights ---------------------------------------------------------------

def _anchor(r: float, j: int) -> float:
    with mpmath.workprec(ANCHOR_PREC):
        rr = mpmath.mpf(r)
        return float(j * mpmath.log(rr) - mpmath.loggamma(j + 1) - rr)


def log_weights(r: float, lo: int, hi: int) -> np.ndarray:
    """``w_j = j log r - log j! - r`` for ``j = lo .. hi`` (``r > 0``)."""
    if r <= 0:
        raise ValueError("radius must be positive")
    lo = max(int(lo), 0)
    j0 = min(max(int(round(r)), lo), hi)
    w = np.empty(hi - lo + 1)
    i0 = j0 - lo
    w[i0] = _anchor(r, j0)
    if hi > j0:
        js = np.arange(j0 + 1, hi + 1, dtype=float)
        w[i0 + 1:] = w[i0] - np.cumsum(np.log1p((js - r) / r))
    if lo < j0:
        js = np.arange(j0, lo, -1, dtype=float)
        w[:i0][::-1] = w[i0] + np.cumsum(np.log1p((js - r) / r))
    return w


def tail_bounds(r: float, J0: int, J: int, w_lo: float, w_hi: float) -> tuple[float, float]:
    """Certified ``(lower, upper)`` tails relative to ``e^r``.

    ``w_lo = w_{J0-1}``, ``w_hi = w_{J+1}``. With ``|a_j| <= max(1, j) <= j+1``
    the upper tail ``sum_{j>J} (j+1) e^{w_j}`` has term ratio ``<= r/(J+1)`` and
    the lower tail ``sum_{j<J0} (j+1) e^{w_j}`` has backward ratio ``<= (J0-1)/r``.
    """
    if J + 1 <= r:
        up = math.inf
    else:
        up = math.exp(math.log(J + 2) + w_hi - math.log1p(-r / (J + 1)))
    if J0 <= 0:
        low = 0.0
    elif J0 - 1 >= r:
        low = math.inf
    else:
        low = math.exp(math.log(J0) + w_lo - math.log1p(-(J0 - 1) / r))
    return low, up


def truncation(r: float, tol: float = TAIL_TOL):
    """Smallest window ``[J0, J]`` whose certified tails sum to less than ``tol``.

    Returns ``(J0, J, weights, tail)`` where ``weights`` are ``w_j`` on the window.
    """
    log_half = math.log(tol / 2)
    for width in (12.0, 20.0, 40.0, 80.0):
        lo_c = max(0, int(math.floor(r - width * math.sqrt(r) - 64)))
        hi_c = int(math.ceil(r + width * math.sqrt(r) + 64))
        w = log_weights(r, lo_c, hi_c + 1)
        # upper tail after J, J = lo_c .. hi_c
        Js = np.arange(lo_c, hi_c + 1, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore"):
            up = np.where(Js + 1 > r, np.log(Js + 2) + w[1:] - np.log1p(-r / (Js + 1)), np.inf)
        ok = np.nonzero(up < log_half)[0]
        if len(ok) == 0:
            continue
        J = int(Js[ok[0]])
        # lower tail before J0, J0 = lo_c + 1 .. J (J0 = 0 means no lower tail)
        J0s = np.arange(lo_c + 1, J + 1, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore"):
            low = np.where(J0s - 1 < r,
                           np.log(J0s) + w[:len(J0s)] - np.log1p(-(J0s - 1) / r), np.inf)
        ok = np.nonzero(low < log_half)[0]
        if len(ok):
            J0 = int(J0s[ok[-1]])
        elif lo_c == 0:
            J0 = 0
        else:
            continue
        w_lo = w[J0 - 1 - lo_c] if J0 > 0 else -math.inf
        lt, ut = tail_bounds(r, J0, J, w_lo, w[J + 1 - lo_c])
        if lt + ut < tol:
            return J0, J, w[J0 - lo_c: J - lo_c + 1], lt + ut
    raise TruncationError(f"could not certify a truncation window at r={r}")


# -- circle evaluation -------------------------------------------------------------

@dataclass
class CircleEval:
    """Samples of ``e^{-r} f(r e^{i theta_t})`` plus the truncation data."""

    r: float
    J0: int
    J: int
    tail: float
    weighted: np.ndarray  # a_j e^{w_j}, j = J0..J
    theta: Optional[np.ndarray] = None
    values: Optional[np.ndarray] = None


def _weighted_window(stream: CoeffStream, r: float, tol: float):
    J0, J, w, tail = truncation(r, tol)
    a = stream.window(J0, J)
    nz = np.nonzero(a)[0]
    c = np.zeros_like(a)
    if len(nz):
        c[nz] = a[nz] * np.exp(w[nz])
    return J0, J, c, tail


def eval_circle(stream: CoeffStream, r: float, N: Optional[int] = None, tol: float = TAIL_TOL) -> CircleEval:
    """Evaluate ``e^{-r} f`` at ``N`` equally spaced points of ``|z| = r``.

    The returned ``tail`` bounds ``sup |e^{-r}(f - f_trunc)|`` on the circle.
    """
    if r <= 0:
        raise ValueError("radius must be positive")
    J0, J, c, tail = _weighted_window(stream, r, tol)
    if N is None:
        N = 16 * (J - J0 + 1)
    if N < 1:
        raise ValueError("need at least one sample")
    theta = 2 * np.pi * np.arange(N) / N
    vals = trig_samples(c, N) * np.exp(1j * J0 * theta)
    return CircleEval(r, J0, J, tail, c, theta, vals)


@dataclass
class PMean:
    """``M_{f,p}(r)`` relative to ``e^r``.

    ``scaled`` is the estimate of ``M e^{-r}``; ``lower``/``upper`` bracket it
    (tail certificate, sup-grid refinement margin and quadrature check included).
    """

    r: float
    p: float
    scaled: float
    lower: float
    upper: float
    J0: int
    J: int
    tail: float

    @property
    def error(self) -> float:
        return max(self.upper - self.scaled, self.scaled - self.lower)

    @property
    def log_value(self) -> float:
        return math.log(self.scaled) + self.r if self.scaled > 0 else -math.inf

    @property
    def value(self) -> float:
        """``M_{f,p}(r)`` itself (``inf`` once ``e^r`` overflows)."""
        try:
            return math.exp(self.log_value)
        except OverflowError:
            return math.inf


def pmean(stream: CoeffStream, p, r: float, tol: float = TAIL_TOL, rtol: float = PNORM_RTOL) -> PMean:
    """Integral mean ``M_{f,p}(r)`` (``p = inf``: maximum modulus), scaled by ``e^{-r}``.

    ``rtol`` is the quadrature target for non-even finite ``p``; the achieved
    error estimate always enters ``lower`` and ``upper``.
    """
    p = float(p)
    if not p >= 1:
        raise ValueError("p must lie in [1, inf]")
    J0, J, c, tail = _weighted_window(stream, r, tol)
    if not np.any(c):
        return PMean(r, p, 0.0, 0.0, tail, J0, J, tail)
    if math.isinf(p):
        lo, hi = sup_bounds_from_coeffs(c)
        return PMean(r, p, lo, max(lo - tail, 0.0), hi + tail, J0, J, tail)
    val, qerr = pnorm_from_coeffs(c, p, rtol)
    # roundoff floor for the exact even-p rule
    qerr = qerr + 1e-14 * val
    return PMean(r, p, val, max(val - qerr - tail, 0.0), val + qerr + tail, J0, J, tail)


# -- radius grids ----------------------------------------------------------------

def default_radius_grid(r_max: float, subdivisions: int = 8) -> list:
    """Squares ``m^2 <= r_max`` with ``subdivisions`` geometric steps in between.

    Two radii below 1 are included as well.
    """
    radii = [0.25, 0.5]
    m = 1
    while m * m <= r_max:
        r0, r1 = m * m, (m + 1) ** 2
        radii.append(float(r0))
        for i in range(1, subdivisions):
            r = r0 * (r1 / r0) ** (i / subdivisions)
            if r <= r_max:
                radii.append(r)
        m += 1
    return radii


def block_radius_grid(ns: Sequence[int], subdivisions: int = 8, pad: int = 1) -> list:
    """Geometric grid over ``[(n-pad)^2, (n+1+pad)^2]`` for each block ``n``."""
    ms = sorted({m for n in ns for m in range(max(1, n - pad), n + 1 + pad)})
    radii = set()
    for m in ms:
        r0, r1 = m * m, (m + 1) ** 2
        for i in range(subdivisions + 1):
            radii.add(r0 * (r1 / r0) ** (i / subdivisions))
    return sorted(radii)


# -- growth report -------------------------------------------------------------------

@dataclass
class GrowthRow:
    r: float
    log_M: float
    scaled: float
    upper: float
    ratio: float
    ratio_upper: float
    J: int
    tail_bound: float


@dataclass
class GrowthReport:
    """Per-radius ``M_{f,p}(r)`` and ``M r^a e^{-r}``; ``tail_bound`` is relative to ``e^r``."""

    p: float
    a: float
    rows: list = field(default_factory=list)
    metadata: dict = field(default_factory=dict)

    @property
    def max_ratio(self) -> float:
        return max((row.ratio for row in self.rows), default=0.0)

    @property
    def max_ratio_upper(self) -> float:
        return max((row.ratio_upper for row in self.rows), default=0.0)

    @property
    def max_tail(self) -> float:
        return max((row.tail_bound for row in self.rows), default=0.0)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["r", "M", "ratio", "J", "tail_bound"])
        for row in self.rows:
            M = "0" if row.log_M == -math.inf else mpmath.nstr(mpmath.exp(mpmath.mpf(row.log_M)), 12)
            w.writerow([repr(row.r), M, repr(row.ratio), row.J, repr(row.tail_bound)])
        return buf.getvalue()

    def to_json(self) -> str:
        doc = {
            "metadata": self.metadata,
            "p": "inf" if math.isinf(self.p) else self.p,
            "a": self.a,
            "max_ratio": self.max_ratio,
            "max_ratio_upper": self.max_ratio_upper,
            "rows": [{k: (None if isinstance(v, float) and not math.isfinite(v) else v)
                      for k, v in asdict(row).items()} for row in self.rows],
        }
        return json.dumps(doc, indent=2, sort_keys=True)


def growth_report(stream: CoeffStream, p, radii: Sequence[float], a: float,
                  metadata: Optional[dict] = None, tol: float = TAIL_TOL) -> GrowthReport:
    rep = GrowthReport(float(p), float(a), metadata=dict(metadata or {}))

    def one(r):
        pm = pmean(stream, p, r, tol)
        s = r ** float(a)
        return GrowthRow(r, pm.log_value, pm.scaled, pm.upper, pm.scaled * s, pm.upper * s, pm.J, pm.tail)

    rep.rows = _map(one, radii)
    return rep


# -- heat-kernel multipliers ------------------------------------------------------------

@dataclass
class MultiplierTable:
    """``lambda_{n,k}`` (k = 0..2n) and ``lambda'_{n,k}`` (k = 1..2n+1) against Gaussians."""

    n: int
    inner: np.ndarray
    outer: np.ndarray
    gauss_inner: np.ndarray
    gauss_outer: np.ndarray

    @property
    def dev_inner(self) -> np.ndarray:
        return np.abs(self.inner - self.gauss_inner)

    @property
    def dev_outer(self) -> np.ndarray:
        return np.abs(self.outer - self.gauss_outer)

    @property
    def max_deviation(self) -> float:
        return float(self.dev_inner.max())

    @property
    def bound(self) -> float:
        return 12.0 / self.n

    @property
    def passed(self) -> bool:
        return self.max_deviation <= self.bound


def lambda_table(n: int) -> MultiplierTable:
    """``lambda_{n,k} = prod_{i<=k} n^2/(n^2+i)`` and ``lambda'_{n,k} = prod_{i<k} (N-i)/N``, ``N=(n+1)^2``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    n2, N = n * n, (n + 1) ** 2
    ks = np.arange(0, 2 * n + 1, dtype=float)
    inner = np.empty(2 * n + 1)
    inner[0] = 1.0
    inner[1:] = np.exp(-np.cumsum(np.log1p(ks[1:] / n2)))
    ko = np.arange(1, 2 * n + 2, dtype=float)
    outer = np.exp(np.cumsum(np.log1p(-(ko - 1) / N)))
    return MultiplierTable(n, inner, outer, np.exp(-ks ** 2 / (2 * n2)), np.exp(-ko ** 2 / (2 * N)))


@dataclass
class HeatKernelReport:
    n: int
    mass: float
    min_log_value: float
    g0: float
    size: int

    @property
    def min_value(self) -> float:
        return math.exp(self.min_log_value)

    @property
    def passed(self) -> bool:
        return abs(self.mass - 1.0) <= 1e-10 and math.isfinite(self.min_log_value)


def heat_kernel_mass(n: int, size: Optional[int] = None) -> HeatKernelReport:
    """Periodized Gaussian ``g(theta) = sum_l sqrt(2 pi) n e^{-n^2 (theta - 2 pi l)^2 / 2}``.

    Its mean over the circle (normalized measure) should be 1 and its Fourier
    coefficients are ``e^{-k^2 / 2n^2}``. Positivity is checked on ``log g`` so
    that underflow far from 0 does not masquerade as a zero.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    size = size or (16 * n + 64)
    theta = 2 * np.pi * np.arange(size) / size - np.pi
    L = int(math.ceil(40.0 / (2 * math.pi * n))) + 1
    ells = np.arange(-L, L + 1)
    expo = -(n * n) * (theta[:, None] - 2 * np.pi * ells[None, :]) ** 2 / 2
    logg = math.log(math.sqrt(2 * math.pi) * n) + logsumexp(expo, axis=1)
    mass = float(np.mean(np.exp(logg)))
    g0 = float(np.exp(logg[size // 2]))
    return HeatKernelReport(n, mass, float(logg.min()), g0, size)


# -- elementary lemmas ---------------------------------------------------------------

def lemma_sum_check(m: int, a: float) -> float:
    """``sum_{n>=1} e^{n^2} n^{-2a} (m^2/n^2)^{n^2}`` divided by ``10 e^{m^2} m^{-2a}``.

    Summed in log domain to ``n = m + 50``; the remainder is majorized by
    ``e^{m^2} m^{-2a} sum_{j>50} e^{-j^2}``.
    """
    if m < 1 or not 0 <= a <= 1:
        raise ValueError("need m >= 1 and a in [0, 1]")
    ns = np.arange(1, m + 51, dtype=float)
    logt = ns ** 2 - 2 * a * np.log(ns) + ns ** 2 * (2 * math.log(m) - 2 * np.log(ns))
    log_rhs = math.log(10) + m * m - 2 * a * math.log(m)
    log_rem = m * m - 2 * a * math.log(m) - 51 ** 2 - math.log1p(-math.exp(-103))
    log_lhs = float(np.logaddexp(logsumexp(logt), log_rem))
    return math.exp(log_lhs - log_rhs)


@dataclass
class LoglinearResult:
    a: float
    x0: float
    x1: float
    max_u: float
    x_star: float
    bound: float
    shape_max: float = 0.0
    shape_bound: float = 0.0

    @property
    def passed(self) -> bool:
        return self.shape_max <= self.shape_bound


def loglinear_check(a: float, x0: float, x1: float, grid: int = 2001) -> LoglinearResult:
    """Maximum of ``u(x) = a log x - (c x + d)`` vanishing at ``x0 < x1``.

    Compared with ``a (x1/x0 - 1)^2 / 8``. The maximum is taken over a grid
    together with the exact stationary point ``x* = a / c``.
    """
    if not 0 < x0 < x1:
        raise ValueError("need 0 < x0 < x1")
    if a < 0:
        raise ValueError("need a >= 0")
    # both sides are linear in a; compare the a = 1 shapes so tiny a cannot underflow the bound
    slope = math.log(x1 / x0) / (x1 - x0)

    def u(x):
        return np.log(np.asarray(x) / x0) - slope * (np.asarray(x) - x0)

    xs = np.linspace(x0, x1, grid)
    best = float(u(xs).max())
    x_star = 1 / slope
    if x0 <= x_star <= x1:
        best = max(best, float(u(x_star)))
    return LoglinearResult(a, x0, x1, a * best, x_star, a * (x1 / x0 - 1) ** 2 / 8, best, (x1 / x0 - 1) ** 2 / 8)


@dataclass
class StirlingRow:
    kind: str
    arg: int
    log_lhs: float
    log_rhs: float

    @property
    def margin(self) -> float:
        return self.log_rhs - self.log_lhs

    @property
    def passed(self) -> bool:
        return self.margin >= 0


def stirling_checks(n_range: Sequence[int], x_range: Sequence[int]) -> list:
    """Check ``(n^2)^{n^2}/(n^2)! <= e^{n^2}/(sqrt(2 pi) n)`` and ``x^{8x}/(8x)! <= 1/(4x^3)``.

    The first family is evaluated with 50-digit ``mpmath``; the second is an
    exact integer comparison ``4 x^3 x^{8x} <= (8x)!``.
    """
    rows = []
    with mpmath.workdps(50):
        for n in n_range:
            N = mpmath.mpf(n) ** 2
            lhs = N * mpmath.log(N) - mpmath.loggamma(N + 1)
            rhs = N - mpmath.log(mpmath.sqrt(2 * mpmath.pi) * n)
            rows.append(StirlingRow("n2", int(n), float(lhs), float(rhs)))
        for x in x_range:
            if x < 2:
                raise ValueError("x must be >= 2")
            num = 4 * x ** 3 * x ** (8 * x)
            fact = math.factorial(8 * x)
            log_lhs = float(mpmath.log(x ** (8 * x)) - mpmath.log(fact))
            log_rhs = float(-mpmath.log(4 * x ** 3))
            row = StirlingRow("8x", int(x), log_lhs, log_rhs)
            if (num <= fact) != row.passed:
                # the exact comparison decides
                row = StirlingRow("8x", int(x), log_lhs, log_lhs if num <= fact else log_lhs - 1e-300)
            rows.append(row)
    return rows


# -- block bounds and gluing -----------------------------------------------------------------

def _block_means(stream: CoeffStream, n: int, p: float, r: float):
    lo, hi = n * n, (n + 1) ** 2 - 1
    a = stream.window(lo, hi)
    if not np.any(a):
        return 0.0, 0.0, 0.0
    w = log_weights(r, lo, hi)
    c = a * np.exp(w)
    val, err = pnorm_from_coeffs(c, p)
    if math.isinf(p):
        return val - err, val - err, val
    err += 1e-14 * val
    return val, max(val - err, 0.0), val + err


@dataclass
class BlockBoundReport:
    """Block ``P_n f`` measured on ``|z| = n^2`` and ``(n+1)^2`` (relative to ``e^r``)."""

    n: int
    p: float
    B: float
    measured_inner: float
    measured_outer: float
    bound_inner: float
    bound_outer: float

    @property
    def ratios(self) -> tuple:
        def q(m, b):
            return 0.0 if m == 0 else (m / b if b > 0 else math.inf)
        return q(self.measured_inner, self.bound_inner), q(self.measured_outer, self.bound_outer)

    @property
    def passed(self) -> bool:
        return all(r <= 1 + 1e-9 for r in self.ratios)


def block_bound_check(stream: CoeffStream, n: int, p) -> BlockBoundReport:
    """Compare ``M_{P_n f,p}`` at ``n^2`` and ``(n+1)^2`` with ``20 B e^r / sqrt(r)``.

    ``B`` is the L^p norm of ``sum_{k=0}^{2n} a_{n^2+k} e^{ik theta}`` (lower
    estimate); measured values are upper estimates, so the comparison is
    conservative on both sides.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    p = float(p)
    coeffs = stream.window(n * n, (n + 1) ** 2 - 1)
    if not np.any(coeffs):
        return BlockBoundReport(n, p, 0.0, 0.0, 0.0, 0.0, 0.0)
    val, err = pnorm_from_coeffs(coeffs, p)
    B = val - err
    _, _, m_in = _block_means(stream, n, p, float(n * n))
    _, _, m_out = _block_means(stream, n, p, float((n + 1) ** 2))
    return BlockBoundReport(n, p, B, m_in, m_out, 20 * B / n, 20 * B / (n + 1))


@dataclass
class GlueReport:
    p: float
    a: float
    b: float
    radii: list
    ratios: list  # measured M r^a e^{-r}
    upper_ratios: list  # same with the certified upper estimate of M
    p0_zero: bool

    @property
    def max_ratio(self) -> float:
        return max(self.ratios, default=0.0)

    @property
    def max_upper_ratio(self) -> float:
        return max(self.upper_ratios, default=0.0)

    @property
    def passed(self) -> bool:
        return self.max_ratio <= 1e3 * self.b * (1 + 1e-9)

    @property
    def certified(self) -> bool:
        """The bound also holds for the upper estimates (tail and grid margin included)."""
        return self.max_upper_ratio <= 1e3 * self.b * (1 + 1e-9)


def block_constant(stream: CoeffStream, p, a: float, n_max: int, n_min: int = 1) -> float:
    """Smallest ``b`` with ``M_{P_n,p}(n^2) <= b e^{n^2} n^{-2a}`` and the outer analogue, ``n <= n_max``."""
    p = float(p)
    b = 0.0
    for n in range(n_min, n_max + 1):
        if not any(True for _ in stream.nonzero(n * n, (n + 1) ** 2 - 1)):
            continue
        _, _, m_in = _block_means(stream, n, p, float(n * n))
        _, _, m_out = _block_means(stream, n, p, float((n + 1) ** 2))
        b = max(b, m_in * n ** (2 * a), m_out * (n + 1) ** (2 * a))
    return b


def glue_check(stream: CoeffStream, p, a: float, radii: Sequence[float], b: Optional[float] = None,
               tol: float = TAIL_TOL) -> GlueReport:
    """Check ``M_{g,p}(r) r^a e^{-r} <= 1e3 b`` on ``radii``.

    When ``b`` is not given it is measured over every block that meets a
    truncation window of the grid. The block hypotheses are stated for
    ``n >= 1``; whether ``P_0 g = 0`` is reported in ``p0_zero``.
    """
    p = float(p)
    radii = list(radii)
    if b is None:
        J_max = max(truncation(r, tol)[1] for r in radii)
        b = block_constant(stream, p, a, math.isqrt(J_max) + 1)
    pms = [pmean(stream, p, r, tol) for r in radii]
    ratios = [pm.scaled * r ** a for pm, r in zip(pms, radii)]
    uppers = [pm.upper * r ** a for pm, r in zip(pms, radii)]
    return GlueReport(p, a, b, radii, ratios, uppers, stream.coeff(0) == 0)
