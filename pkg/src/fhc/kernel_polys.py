"""
Flat polynomials with prescribed +1 coefficients, and L^p norms on the circle.

Two families are provided:

* ``rudin_shapiro_poly(m)``: length-``m`` prefixes of the Golay-Rudin-Shapiro
  sequence (coefficients +-1, sup norm of order sqrt(m)).
* ``vallee_poussin_poly(m)``: shifted de la Vallee-Poussin kernels
  ``e^{2ik theta} (2 F_{2k} - F_k)``, ``k = m // 4`` (coefficients in [0, 1],
  L^1 norm at most 3).

Norms use the normalized measure ``d theta / 2 pi``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np
from scipy import fft as sfft

__all__ = [
    "CoeffPoly",
    "grs_sign",
    "rudin_shapiro_poly",
    "fejer_kernel",
    "vallee_poussin_poly",
    "poly_pnorm",
    "pnorm_with_error",
    "sup_norm_bounds",
    "trig_samples",
]

# sup-norm grid density, samples per unit of degree span
SUP_OVERSAMPLE = 16
PNORM_RTOL = 1e-8


@dataclass(frozen=True)
class CoeffPoly:
    """Laurent/trigonometric polynomial ``sum_j coeffs[j - degree_lo] e^{ij theta}``.

    Coefficients are kept exact (int, Fraction or any number convertible to
    ``complex``). The object is immutable.
    """

    coeffs: tuple
    degree_lo: int = 0

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.coeffs))

    @property
    def degree_hi(self) -> int:
        return self.degree_lo + len(self.coeffs) - 1

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, j: int):
        """Coefficient at degree ``j`` (zero outside the stored range)."""
        i = j - self.degree_lo
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def as_dict(self) -> dict:
        return {self.degree_lo + i: c for i, c in enumerate(self.coeffs) if c != 0}

    def as_array(self) -> np.ndarray:
        arr = self.__dict__.get("_array")
        if arr is None:
            arr = np.array([complex(c) for c in self.coeffs], dtype=complex)
            arr.flags.writeable = False
            object.__setattr__(self, "_array", arr)
        return arr

    def count(self, value) -> int:
        return sum(1 for c in self.coeffs if c == value)

    def l1(self) -> float:
        """Sum of coefficient moduli (an upper bound for the sup norm)."""
        return float(np.abs(self.as_array()).sum())


def grs_sign(n: int) -> int:
    """Golay-Rudin-Shapiro sign ``s_n``.

    ``s_0 = 1``, ``s_{2n} = s_n``, ``s_{2n+1} = (-1)^n s_n``; equivalently
    ``(-1)`` to the number of (possibly overlapping) ``11`` pairs in binary ``n``.
    """
    if n < 0:
        raise ValueError("index must be nonnegative")
    return -1 if bin(n & (n >> 1)).count("1") % 2 else 1


@lru_cache(maxsize=1)
def _grs_prefix_cache(length: int) -> np.ndarray:
    idx = np.arange(length, dtype=np.int64)
    pairs = idx & (idx >> 1)
    parity = np.zeros(length, dtype=np.int64)
    while np.any(pairs):
        parity ^= pairs & 1
        pairs >>= 1
    return 1 - 2 * parity


def _grs_prefix(m: int) -> np.ndarray:
    length = 1 << max(0, (m - 1).bit_length())
    return _grs_prefix_cache(max(length, 1))[:m]


def rudin_shapiro_poly(m: int) -> CoeffPoly:
    """Return a +-1 polynomial of length ``m`` with at least ``ceil(m/2)`` ones.

    The first ``m`` Golay-Rudin-Shapiro signs are used, globally negated if
    they contain fewer than ``ceil(m/2)`` entries equal to +1.

    Raises
    ------
    ValueError
        If ``m < 1``.
    """
    if m < 1:
        raise ValueError(f"m must be a positive count, got {m}")
    signs = _grs_prefix(m)
    if int((signs == 1).sum()) < (m + 1) // 2:
        signs = -signs
    return _with_array(CoeffPoly(tuple(signs.tolist()), 0), signs.astype(complex))


def fejer_kernel(k: int) -> CoeffPoly:
    """Fejer kernel ``F_k``: Laurent coefficients ``1 - |j|/k`` for ``|j| <= k-1``."""
    if k < 1:
        raise ValueError(f"k must be a positive count, got {k}")
    return CoeffPoly(tuple(Fraction(k - abs(j), k) for j in range(-k + 1, k)), -k + 1)


def vallee_poussin_poly(m: int) -> CoeffPoly:
    """Shifted de la Vallee-Poussin polynomial ``p*_m`` on degrees ``0..m-1``.

    For ``m >= 4`` this is ``e^{2ik theta}(2F_{2k} - F_k)`` with ``k = m // 4``;
    its coefficients lie in ``[0, 1]`` and equal 1 on degrees ``k..3k``.
    For ``m < 4`` the constant polynomial 1 is returned.
    """
    if m < 1:
        raise ValueError(f"m must be a positive count, got {m}")
    if m < 4:
        return CoeffPoly((1,), 0)
    k = m // 4
    coeffs, arr = _vp_coeffs(k)
    pad = m - 4 * k
    return _with_array(CoeffPoly(coeffs + (0,) * pad, 0), np.concatenate([arr, np.zeros(pad, complex)]))


@lru_cache(maxsize=None)
def _vp_coeffs(k: int) -> tuple:
    # degrees 0 .. 4k-1 of e^{2ik.}(2F_{2k} - F_k): with j = degree - 2k the
    # coefficient is 1 for |j| <= k and (2k - |j|)/k for k < |j| <= 2k
    out = tuple(1 if abs(d - 2 * k) <= k else Fraction(2 * k - abs(d - 2 * k), k) for d in range(4 * k))
    j = np.abs(np.arange(4 * k) - 2 * k)
    arr = np.where(j <= k, 1.0, (2 * k - j) / k).astype(complex)
    arr.flags.writeable = False
    return out, arr


def _with_array(q: CoeffPoly, arr: np.ndarray) -> CoeffPoly:
    arr.flags.writeable = False
    object.__setattr__(q, "_array", arr)
    return q


def trig_samples(coeffs: np.ndarray, n_samples: int) -> np.ndarray:
    """Values of ``sum_k coeffs[k] e^{ik theta_t}`` at ``theta_t = 2 pi t / N``.

    Coefficients beyond ``n_samples`` are folded (aliased) as usual.
    """
    coeffs = np.asarray(coeffs, dtype=complex)
    if len(coeffs) > n_samples:
        pad = (-len(coeffs)) % n_samples
        coeffs = np.concatenate([coeffs, np.zeros(pad, complex)]).reshape(-1, n_samples).sum(0)
    return sfft.ifft(coeffs, n=n_samples) * n_samples


def _sup_grid(span: int) -> int:
    return SUP_OVERSAMPLE * (span + 1)


def sup_bounds_from_coeffs(coeffs: np.ndarray) -> tuple[float, float]:
    """Lower and certified upper bound for ``max_theta |sum_k c_k e^{ik theta}|``.

    The grid maximum is a lower bound. Bernstein's inequality, applied after
    centring the frequencies, gives ``| |P|' | <= (span/2) ||P||_inf``, so with
    grid spacing ``h`` the true maximum is at most ``grid_max / (1 - h*span/4)``.
    """
    coeffs = np.asarray(coeffs, dtype=complex)
    span = len(coeffs) - 1
    if span <= 0:
        v = float(abs(coeffs[0])) if len(coeffs) else 0.0
        return v, v
    n = _sup_grid(span)
    grid_max = float(np.abs(trig_samples(coeffs, n)).max())
    h = 2 * math.pi / n
    return grid_max, grid_max / (1.0 - h * span / 4.0)


def sup_norm_bounds(q: CoeffPoly) -> tuple[float, float]:
    """(grid lower bound, certified upper bound) for the sup norm of ``q``."""
    if len(q) == 0:
        raise ValueError("empty polynomial")
    return sup_bounds_from_coeffs(q.as_array())


def _is_even_int(p: float) -> bool:
    return float(p).is_integer() and int(p) % 2 == 0


def pnorm_from_coeffs(coeffs: np.ndarray, p: float, rtol: float = PNORM_RTOL) -> tuple[float, float]:
    """``(value, error)`` of the normalized L^p norm of a coefficient vector.

    For ``p = inf`` the value is the certified upper bound and the error is the
    gap to the grid lower bound. For even integer ``p`` the uniform rule with
    more than ``p * span`` nodes is exact; otherwise the node count is raised
    until the half-density subgrid agrees to ``rtol`` and the error is
    that difference.
    """
    coeffs = np.asarray(coeffs, dtype=complex)
    if math.isinf(p):
        lo, hi = sup_bounds_from_coeffs(coeffs)
        return hi, hi - lo
    if p < 1:
        raise ValueError("p must lie in [1, inf]")
    scale = float(np.abs(coeffs).max()) if len(coeffs) else 0.0
    if scale == 0.0:
        return 0.0, 0.0
    v, e = _pnorm_unit(coeffs / scale, p, rtol)
    return v * scale, e * scale


def _pnorm_unit(coeffs: np.ndarray, p: float, rtol: float) -> tuple[float, float]:
    span = max(len(coeffs) - 1, 0)
    if _is_even_int(p):
        n = sfft.next_fast_len(int(p) * span + 1)
        vals = np.abs(trig_samples(coeffs, n))
        return float(np.mean(vals ** p) ** (1.0 / p)), 0.0
    # zeros of the polynomial make |.|^p non-smooth, so refine until the
    # half-grid estimate settles (or the node budget runs out)
    base = 2 * span + 1
    n = 2 * sfft.next_fast_len(max(2 * base, 1024))
    while True:
        vals = np.abs(trig_samples(coeffs, n)) ** p
        fine = float(np.mean(vals) ** (1.0 / p))
        coarse = float(np.mean(vals[::2]) ** (1.0 / p))
        err = abs(fine - coarse)
        if err <= rtol * fine or n >= max(64 * base, 1 << 20):
            return fine, err
        n *= 4


def pnorm_with_error(q: CoeffPoly, p: float, rtol: float = PNORM_RTOL) -> tuple[float, float]:
    if len(q) == 0:
        raise ValueError("empty polynomial")
    return pnorm_from_coeffs(q.as_array(), p, rtol)


def poly_pnorm(q: CoeffPoly | Sequence, p: float) -> float:
    """L^p norm of ``theta -> sum_j b_j e^{ij theta}`` for the normalized measure.

    ``p = inf`` returns a certified upper bound for the sup norm.

    Examples
    --------
    >>> round(poly_pnorm(CoeffPoly((1, 1)), 2) ** 2, 12)
    2.0
    """
    if not isinstance(q, CoeffPoly):
        q = CoeffPoly(tuple(q))
    return pnorm_with_error(q, p)[0]
