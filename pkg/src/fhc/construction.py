"""
Exact Taylor coefficients of the constructed function, block by block.

Writing ``f(z) = sum_j a_j z^j / j!``, the coefficients with
``n^2 <= j < (n+1)^2`` form block ``n``. Block ``n`` is nonzero only when ``n``
is even, ``n`` lies in ``A_k`` and ``n >= 10 alpha_k``; it then holds the
coefficients of ``z^{n^2} P_m(z^{alpha_k}) q~_k(z)`` with ``m = n // alpha_k``
and ``P_m`` the Rudin-Shapiro (``p >= 2``) or de la Vallee-Poussin
(``p < 2`` and p1 mode) polynomial of length ``m``.

Besides the constructed stream this module has two small fixtures, the
exponential (``a_j = 1``) and finitely supported coefficient maps, which share
the stream interface used by the analysis routines.
"""

from __future__ import annotations

import csv
import io
import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping, Optional

import numpy as np

from .enumeration import ConstructionParams, GaussQ, abs2, alpha as _alpha, block_class, class_members
from .errors import ResourceExhausted
from .kernel_polys import rudin_shapiro_poly, vallee_poussin_poly

__all__ = [
    "BlockSpec",
    "CoeffStream",
    "SparseCoeffStream",
    "ExpStream",
    "DictStream",
    "stream_for",
    "block_poly",
    "coeff",
    "b_set",
    "p1_schedule",
    "p1_check_radii",
    "dump_coeffs_csv",
]


class CoeffStream:
    """Interface shared by coefficient sources ``j -> a_j`` (exact values).

    Every stream must satisfy ``|a_j| <= max(1, j)``; the analysis tail
    certificates rely on it.
    """

    def coeff(self, j: int):
        raise NotImplementedError

    def nonzero(self, lo: int, hi: int) -> Iterator[tuple]:
        """Pairs ``(j, a_j)`` with ``a_j != 0`` and ``lo <= j <= hi``."""
        for j in range(max(lo, 0), hi + 1):
            a = self.coeff(j)
            if a != 0:
                yield j, a

    def window(self, lo: int, hi: int) -> np.ndarray:
        """Complex array of ``a_j`` for ``j = lo .. hi``."""
        out = np.zeros(hi - lo + 1, dtype=complex)
        for j, a in self.nonzero(lo, hi):
            out[j - lo] = complex(a)
        return out


class ExpStream(CoeffStream):
    """``e^z``: every coefficient equals 1."""

    def coeff(self, j):
        return Fraction(1)

    def window(self, lo, hi):
        return np.ones(hi - lo + 1, dtype=complex)


class DictStream(CoeffStream):
    """Finitely supported coefficients given as ``{j: a_j}``."""

    def __init__(self, coeffs: Mapping[int, object]):
        self._c = {int(j): a for j, a in coeffs.items() if a != 0}
        self._keys = np.array(sorted(self._c), dtype=np.int64)

    def coeff(self, j):
        return self._c.get(j, Fraction(0))

    def nonzero(self, lo, hi):
        i0, i1 = np.searchsorted(self._keys, [lo, hi + 1])
        for j in self._keys[i0:i1]:
            yield int(j), self._c[int(j)]


@dataclass(frozen=True)
class BlockSpec:
    n: int
    k: Optional[int]
    m: int
    active: bool
    alpha: Optional[int] = None

    @property
    def start(self) -> int:
        return self.n * self.n

    @property
    def stop(self) -> int:
        """Last index of the block, ``(n+1)^2 - 1``."""
        return (self.n + 1) ** 2 - 1


class SparseCoeffStream(CoeffStream):
    """Lazily materialized exact coefficients of the constructed function.

    Parameters
    ----------
    params : ConstructionParams
    restrict_to : iterable of int, optional
        Keep only the blocks of these classes (gives ``f_k = sum_{n in A_k} P_n f``).
    alpha_fixed : mapping, optional
        Class index to spacing, bypassing the usual ``alpha_k`` rule.
    p1_extra : mapping, optional
        Precomputed p1-mode schedule values ``extra_k``.
    """

    def __init__(self, params: ConstructionParams, restrict_to: Optional[Iterable[int]] = None,
                 alpha_fixed: Optional[Mapping[int, int]] = None,
                 p1_extra: Optional[Mapping[int, int]] = None, p1_radii=None):
        self.params = params
        self.restrict_to = None if restrict_to is None else frozenset(restrict_to)
        self._alpha = dict(alpha_fixed or {})
        self._p1_extra = dict(p1_extra or {})
        self._p1_radii = p1_radii
        self._blocks: dict = {}
        self._lock = threading.Lock()

    # -- class data
    def alpha(self, k: int) -> int:
        a = self._alpha.get(k)
        if a is None:
            extra = None
            if self.params.mode == "p1":
                extra = self._p1_extra.get(k)
                if extra is None:
                    extra = p1_schedule(k, self.params.phi, self.params, radii=self._p1_radii)
                    self._p1_extra[k] = extra
            a = _alpha(k, self.params, extra=extra)
            with self._lock:
                self._alpha.setdefault(k, a)
        return a

    def pair(self, k: int):
        return self.params.pair(k)

    def block_spec(self, n: int) -> BlockSpec:
        if n < 2 or n % 2:
            return BlockSpec(n, None, 0, False)
        k = block_class(n)
        if self.restrict_to is not None and k not in self.restrict_to:
            return BlockSpec(n, k, 0, False)
        al = self.alpha(k)
        if n < 10 * al:
            return BlockSpec(n, k, n // al, False, al)
        return BlockSpec(n, k, n // al, True, al)

    def kernel(self, m: int):
        if self.params.uses_rudin_shapiro:
            return rudin_shapiro_poly(m)
        return vallee_poussin_poly(m)

    # -- blocks
    def block(self, n: int) -> dict:
        """Exact nonzero coefficients ``{j: a_j}`` of block ``n``."""
        got = self._blocks.get(n)
        if got is not None:
            return got
        spec = self.block_spec(n)
        out = {}
        if spec.active:
            q = self.pair(spec.k).poly.taylor_coeffs
            ker = self.kernel(spec.m)
            top = spec.start + spec.alpha * (spec.m - 1) + len(q) - 1
            if top > spec.stop:
                raise AssertionError(f"block {n} overflows its window: top degree {top} > {spec.stop}")
            for i, b in enumerate(ker.coeffs):
                if b == 0:
                    continue
                base = spec.start + spec.alpha * i
                for t, qt in enumerate(q):
                    v = b * qt
                    if v != 0:
                        out[base + t] = v
        with self._lock:
            return self._blocks.setdefault(n, out)

    def coeff(self, j: int):
        if j < 0:
            raise ValueError("negative index")
        return self.block(math.isqrt(j)).get(j, Fraction(0))

    def nonzero(self, lo: int, hi: int):
        lo = max(lo, 0)
        if hi < lo:
            return
        for n in range(math.isqrt(lo), math.isqrt(hi) + 1):
            blk = self.block(n)
            for j in sorted(blk):
                if lo <= j <= hi:
                    yield j, blk[j]

    def b_set(self, n: int) -> list:
        """Visit set ``B_n``: indices ``s`` where ``z^{n^2} P_m(z^alpha)`` has coefficient 1."""
        spec = self.block_spec(n)
        if not spec.active:
            return []
        ker = self.kernel(spec.m)
        return [spec.start + spec.alpha * i for i, b in enumerate(ker.coeffs) if b == 1]

    def active_blocks(self, n_max: int, k: Optional[int] = None) -> Iterator[BlockSpec]:
        """Active block specs with ``n <= n_max`` (optionally of one class)."""
        for n in range(2, n_max + 1, 2):
            if k is not None and block_class(n) != k:
                continue
            spec = self.block_spec(n)
            if spec.active:
                yield spec


_stream_cache: dict = {}


def stream_for(params: ConstructionParams) -> SparseCoeffStream:
    """Shared stream instance for ``params`` (keeps materialized blocks)."""
    key = (params, id(params.phi))
    s = _stream_cache.get(key)
    if s is None:
        s = _stream_cache.setdefault(key, SparseCoeffStream(params))
    return s


def block_poly(n: int, params: ConstructionParams) -> dict:
    """Sparse coefficients ``{j: a_j}`` of block ``n``."""
    if n < 0:
        raise ValueError("negative block index")
    return dict(stream_for(params).block(n))


def coeff(j: int, params: ConstructionParams):
    return stream_for(params).coeff(j)


def b_set(n: int, params: ConstructionParams) -> list:
    return stream_for(params).b_set(n)


# -- p1 mode -------------------------------------------------------------------

_p1_cache: dict = {}
# quadrature tolerance for the p = 1 bound checks; the error estimate is part of the upper value
P1_RTOL = 1e-6


def p1_schedule(k: int, phi: Callable[[float], float], params: ConstructionParams,
                radii=None, max_doublings: int = 24) -> int:
    """Smallest power of two ``E`` making the class-``k`` piece small enough.

    With ``alpha_k = 1 + max(2 d_k + 8 ell_k, E)`` the piece
    ``f_k = sum_{n in A_k} P_n f`` must satisfy
    ``M_{f_k,1}(r) <= 2^{-k} phi(r) e^r r^{-1/2}`` on every radius of the test
    grid (default: ``default_radius_grid(2e4)``) and on a grid around the
    first two active blocks of the candidate, so that a large ``E`` cannot
    pass just by moving every block past the grid.

    Raises
    ------
    ResourceExhausted
        If no ``E <= 2**max_doublings`` passes.
    """
    from .analysis import default_radius_grid, pmean

    if phi is None:
        raise ValueError("p1 mode needs a schedule function phi")
    pair = params.pair(k)
    if pair.poly.is_zero():
        return 1
    radii = tuple(default_radius_grid(2e4) if radii is None else radii)
    key = (k, phi, params, radii)
    if key in _p1_cache:
        return _p1_cache[key]
    floor_term = 2 * pair.degree + 8 * pair.ell
    worst = None
    for step in range(max_doublings + 1):
        extra = 1 << step
        al = 1 + max(floor_term, extra)
        piece = SparseCoeffStream(params, restrict_to={k}, alpha_fixed={k: al})
        ok = True
        for r in p1_check_radii(piece, k, radii):
            target = 2.0 ** -k * phi(r) / math.sqrt(r)
            got = pmean(piece, 1, r, rtol=P1_RTOL).upper
            if got > target:
                ok, worst = False, (r, got, target)
                break
        if ok:
            _p1_cache[key] = extra
            return extra
    raise ResourceExhausted(
        f"p1 schedule for class {k} failed up to E=2^{max_doublings}; last violation "
        f"at r={worst[0]:.6g}: {worst[1]:.3e} > {worst[2]:.3e}")


def p1_check_radii(piece: "SparseCoeffStream", k: int, radii) -> list:
    """``radii`` together with a grid over the first two active blocks of class ``k``."""
    from .analysis import block_radius_grid
    it = class_members(k, 10 * piece.alpha(k))
    ns = [next(it), next(it)]
    return sorted(set(radii) | set(block_radius_grid(ns)))


# -- export --------------------------------------------------------------------

def _parts(a):
    if isinstance(a, GaussQ):
        return a.re, a.im
    return Fraction(a), Fraction(0)


def dump_coeffs_csv(stream: CoeffStream, lo: int, hi: int, out=None, include_zeros=False) -> str:
    """Write ``j, numerator, denominator`` rows for ``lo <= j <= hi``.

    Two extra columns ``imag_numerator, imag_denominator`` are added only when
    some coefficient in the window is not real.
    """
    rows = list(stream.nonzero(lo, hi)) if not include_zeros else \
        [(j, stream.coeff(j)) for j in range(lo, hi + 1)]
    cplx = any(isinstance(a, GaussQ) for _, a in rows)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    header = ["j", "numerator", "denominator"]
    if cplx:
        header += ["imag_numerator", "imag_denominator"]
    w.writerow(header)
    for j, a in rows:
        re, im = _parts(a)
        row = [j, re.numerator, re.denominator]
        if cplx:
            row += [im.numerator, im.denominator]
        w.writerow(row)
    text = buf.getvalue()
    if out is not None:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    return text


def coeff_bound_ok(j: int, a) -> bool:
    """Exact test of ``|a_j| <= j`` (``j >= 1``)."""
    return abs2(a) <= j * j
