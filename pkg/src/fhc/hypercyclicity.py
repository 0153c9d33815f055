"""
Frequent-hypercyclicity checks: derivative approximation at visit indices,
density of visit sets and of large coefficients, and two-sided growth probes.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence, Union

import numpy as np

from .analysis import pmean
from .construction import CoeffStream, SparseCoeffStream, coeff_bound_ok
from .enumeration import RationalPoly, abs2, class_members
from .errors import TruncationError
from .kernel_polys import sup_bounds_from_coeffs

__all__ = [
    "DerivativeError",
    "derivative_sup_error",
    "VisitReport",
    "verify_visit",
    "window_ok",
    "DensityReport",
    "visit_density",
    "lower_bound_probe",
    "coefficient_H_density",
]


def _log_pow_fact(ell: float, m) -> np.ndarray:
    m = np.asarray(m, dtype=float)
    from scipy.special import gammaln
    return m * math.log(ell) - gammaln(m + 1)


@dataclass
class DerivativeError:
    """``sup_{|z|=ell} |q(z) - D^s f(z)|`` with its certificate pieces."""

    s: int
    ell: float
    sup_error: float  # certified upper bound
    grid_max: float
    tail: float
    terms: int


def derivative_sup_error(stream: CoeffStream, s: int, q: RationalPoly, ell: float,
                         N: Optional[int] = None) -> DerivativeError:
    """Certified bound for ``sup_{|z| = ell} |q(z) - D^s f(z)|``.

    ``D^s f(z) = sum_{j >= s} a_j z^{j-s} / (j-s)!``. Terms with
    ``j - s <= M0 = 16 ell + 64`` are summed exactly (differences with ``q``
    taken in exact arithmetic); the rest is bounded by a geometric series with
    ratio at most 1/2, using ``|a_j| <= max(1, j)``.
    """
    if s < 0 or ell < 1:
        raise ValueError("need s >= 0 and ell >= 1")
    M0 = int(16 * ell + 64)
    diff = [Fraction(0)] * (M0 + 1)
    for j, a in stream.nonzero(s, s + M0):
        diff[j - s] = a
    for t, qt in enumerate(q.taylor_coeffs):
        if t > M0:
            raise ValueError("target degree exceeds the exact window")
        diff[t] = diff[t] - qt
    scale = np.exp(_log_pow_fact(ell, np.arange(M0 + 1)))
    c = np.array([complex(x) for x in diff]) * scale
    if N is not None:
        from .kernel_polys import trig_samples
        grid = float(np.abs(trig_samples(c, N)).max())
        upper = sup_bounds_from_coeffs(c)[1] if np.any(c) else 0.0
    elif np.any(c):
        grid, upper = sup_bounds_from_coeffs(c)
    else:
        grid = upper = 0.0
    # sum_{m > M0} (s+m+1) ell^m/m!  <=  2 (s+M0+2) ell^{M0+1}/(M0+1)!
    log_tail = math.log(2 * (s + M0 + 2)) + float(_log_pow_fact(ell, M0 + 1))
    tail = math.exp(log_tail)
    if not tail <= 1e-3 / ell:
        raise TruncationError(f"derivative tail bound {tail:.3e} too large at s={s}, ell={ell}")
    return DerivativeError(s, ell, upper + tail, grid, tail, M0 + 1)


def window_ok(stream: CoeffStream, s: int, q: RationalPoly, ell: int) -> bool:
    """``a_s .. a_{s+d}`` equal ``q``'s coefficients and the next ``8 ell`` vanish."""
    d = q.degree
    if any(stream.coeff(s + t) != qt for t, qt in enumerate(q.taylor_coeffs)):
        return False
    return not any(True for _ in stream.nonzero(s + d + 1, s + d + 8 * ell))


@dataclass
class VisitReport:
    k: int
    n: int
    s: int
    ell: int
    sup_error: float
    tolerance: float
    s1_bound: float
    s2_bound: float
    s1_measured: float
    s2_measured: float
    window_ok: bool

    @property
    def passed(self) -> bool:
        return self.window_ok and self.sup_error <= self.tolerance

    def to_json(self) -> str:
        d = asdict(self)
        d["pass"] = self.passed
        return json.dumps({k: d[k] for k in ("k", "n", "s", "ell", "sup_error", "tolerance",
                                             "s1_bound", "s2_bound", "pass")}, sort_keys=True)


def _geom_log_sum(ell: float, m0: int) -> float:
    """log of ``2 ell^{m0} / m0!`` (bounds ``sum_{m>=m0} ell^m/m!`` once ``m0 >= 2 ell``)."""
    return math.log(2) + float(_log_pow_fact(ell, m0))


def verify_visit(stream: SparseCoeffStream, k: int, n: Optional[int] = None,
                 s: Optional[int] = None) -> VisitReport:
    """Check ``sup_{|z|=ell_k} |q_k - D^s f| <= 1/ell_k`` at a visit index.

    Defaults to the first active ``n`` in ``A_k`` and ``s = min B_n``. Also
    reports the chain bounds ``S1 <= 2 ell^{8 ell + 1}/(8 ell)!`` and
    ``S2 <= ell^2 * 2 ell^{8 ell}/(8 ell)!`` next to absolute-value majorants of
    the same two sums for the actual coefficients.
    """
    pair = stream.pair(k)
    ell, q = pair.ell, pair.poly
    if n is None:
        al = stream.alpha(k)
        n = next(class_members(k, 10 * al))
    spec = stream.block_spec(n)
    if spec.k != k or not spec.active:
        raise ValueError(f"block {n} is not an active block of class {k}")
    B = stream.b_set(n)
    if s is None:
        s = B[0]
    if s not in B:
        raise ValueError(f"s={s} is not in B_{n}")
    err = derivative_sup_error(stream, s, q, ell)
    s1_bound = math.exp(math.log(2) + (8 * ell + 1) * math.log(ell) - math.lgamma(8 * ell + 1))
    s2_bound = math.exp(math.log(2) + (8 * ell + 2) * math.log(ell) - math.lgamma(8 * ell + 1))
    # in-block remainder after the q window, summed with absolute values
    s1 = 0.0
    for j, a in stream.nonzero(s + q.degree + 1, spec.stop):
        s1 += abs(complex(a)) * math.exp(float(_log_pow_fact(ell, j - s)))
    # everything from the next nonzero block on, via |a_j| <= j
    m0 = (n + 2) ** 2 - s
    s2 = math.exp(math.log(2 * (s + m0 + 1)) + float(_log_pow_fact(ell, m0)))
    return VisitReport(k, n, s, ell, err.sup_error, 1.0 / ell, s1_bound, s2_bound, s1, s2,
                       window_ok(stream, s, q, ell))


@dataclass
class DensityReport:
    k: int
    N: int
    count: int
    blocks: list = field(default_factory=list)  # (n, m, #B_n, fraction, provable fraction)

    @property
    def density(self) -> float:
        return self.count / self.N


def visit_density(stream: SparseCoeffStream, k: int, N: int) -> DensityReport:
    """Density in ``[1, N]`` of visit indices ``s in B_n``, ``n in A_k`` active.

    Per block the fraction ``#B_n/(2n+1)`` is listed with its provable floor:
    ``(m/2 - 1)/(2n+1)`` for Rudin-Shapiro blocks and ``(m/4 - 1)/(2n+1)``
    otherwise, ``m = n // alpha_k``.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    al = stream.alpha(k)
    rep = DensityReport(k, N, 0)
    share = 2 if stream.params.uses_rudin_shapiro else 4
    for n in class_members(k, 10 * al):
        if n * n > N:
            break
        B = stream.b_set(n)
        m = n // al
        rep.count += sum(1 for s in B if s <= N)
        rep.blocks.append((n, m, len(B), len(B) / (2 * n + 1), (m / share - 1) / (2 * n + 1)))
    return rep


def lower_bound_probe(stream: CoeffStream, p, ns: Sequence[int], a: Optional[float] = None) -> float:
    """``min_n M_{f,p}(n^2) n^{2a} e^{-n^2}`` using certified lower estimates."""
    from .enumeration import a_exponent
    if a is None:
        a = float(a_exponent(p))
    vals = [pmean(stream, p, float(n * n)).lower * n ** (2 * a) for n in ns]
    return min(vals) if vals else 0.0


def coefficient_H_density(coeffs: Union[CoeffStream, Callable, Sequence], N: int) -> float:
    """Exact density ``#{1 <= j <= N : |a_j| >= 1} / N``."""
    if N < 1:
        raise ValueError("N must be >= 1")
    if isinstance(coeffs, CoeffStream):
        hits = sum(1 for j, a in coeffs.nonzero(1, N) if abs2(a) >= 1)
    elif callable(coeffs):
        hits = sum(1 for j in range(1, N + 1) if abs2(coeffs(j)) >= 1)
    else:
        hits = sum(1 for a in list(coeffs)[1:N + 1] if abs2(a) >= 1)
    return hits / N
