"""
Target polynomials, their enumeration, block classes and block spacing.

A target polynomial is stored in Taylor form ``q(z) = sum_j q_j z^j / j!`` with
exact coefficients (``Fraction``, or ``GaussQ`` when the imaginary part is
nonzero). ``enumerate_pair(k)`` lists every pair ``(q, ell)`` with
``ell >= sum_j |q_j|`` exactly once, ordered by height.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import count
from pathlib import Path
from typing import Callable, Iterator, Optional, Sequence

import mpmath

__all__ = [
    "GaussQ",
    "qq",
    "RationalPoly",
    "EnumeratedPair",
    "ConstructionParams",
    "DEFAULT_GAMMA",
    "enumerate_pair",
    "iter_pairs",
    "height_count",
    "block_class",
    "class_members",
    "alpha",
    "a_exponent",
    "conjugate_exponent",
    "parse_override",
    "load_override_file",
]

DEFAULT_GAMMA = 10 ** 10


@dataclass(frozen=True)
class GaussQ:
    """Gaussian rational ``re + i*im`` with ``Fraction`` parts."""

    re: Fraction
    im: Fraction

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __abs__(self):
        return math.sqrt(self.abs2())

    def __neg__(self):
        return GaussQ(-self.re, -self.im)

    def __add__(self, other):
        o = _as_gauss(other)
        if o is None:
            return NotImplemented
        return qq(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = _as_gauss(other)
        if o is None:
            return NotImplemented
        return qq(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        o = _as_gauss(other)
        if o is None:
            return NotImplemented
        return qq(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __eq__(self, other):
        o = _as_gauss(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __str__(self):
        return f"{self.re}:{self.im}"


def _as_gauss(x) -> Optional[GaussQ]:
    if isinstance(x, GaussQ):
        return x
    if isinstance(x, (int, Fraction)):
        return GaussQ(Fraction(x), Fraction(0))
    return None


def qq(re, im=0):
    """Exact scalar: a ``Fraction`` when ``im == 0``, else a ``GaussQ``."""
    re, im = Fraction(re), Fraction(im)
    return re if im == 0 else GaussQ(re, im)


def abs2(x) -> Fraction:
    """Exact squared modulus of an exact scalar."""
    if isinstance(x, GaussQ):
        return x.abs2()
    x = Fraction(x)
    return x * x


def _rational_sqrt(x: Fraction) -> Optional[Fraction]:
    a, b = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if a * a == x.numerator and b * b == x.denominator:
        return Fraction(a, b)
    return None


def l1_at_most(coeffs: Sequence, bound) -> bool:
    """Exact test of ``sum |c_j| <= bound`` for Gaussian rational ``c_j``.

    Moduli that are rational are summed exactly. A sum of square roots of
    rationals that is not itself a sum of rationals is irrational, so it can
    never equal a rational bound; such cases are decided at 60 digits.
    """
    bound = Fraction(bound)
    exact = Fraction(0)
    irr = []
    for c in coeffs:
        m2 = abs2(c)
        r = _rational_sqrt(m2)
        if r is None:
            irr.append(m2)
        else:
            exact += r
    if not irr:
        return exact <= bound
    with mpmath.workdps(60):
        total = mpmath.mpf(exact.numerator) / exact.denominator
        for m2 in irr:
            total += mpmath.sqrt(mpmath.mpf(m2.numerator) / m2.denominator)
        return total < mpmath.mpf(bound.numerator) / bound.denominator


@dataclass(frozen=True)
class RationalPoly:
    """Target polynomial ``q(z) = sum_j q_j z^j / j!`` with exact coefficients.

    Trailing zero coefficients are stripped; the zero polynomial has degree 0.
    """

    taylor_coeffs: tuple = (Fraction(0),)

    def __post_init__(self):
        cs = [c if isinstance(c, GaussQ) else Fraction(c) for c in self.taylor_coeffs]
        while len(cs) > 1 and cs[-1] == 0:
            cs.pop()
        if not cs:
            cs = [Fraction(0)]
        object.__setattr__(self, "taylor_coeffs", tuple(cs))

    @property
    def degree(self) -> int:
        return len(self.taylor_coeffs) - 1

    def is_zero(self) -> bool:
        return self.degree == 0 and self.taylor_coeffs[0] == 0

    def tilde_l1(self) -> float:
        """``||q~||_{l1} = sum_j |q_j|`` (exact when every modulus is rational)."""
        parts = [_rational_sqrt(abs2(c)) for c in self.taylor_coeffs]
        if all(p is not None for p in parts):
            return sum(parts, Fraction(0))
        return math.fsum(abs(complex(c)) for c in self.taylor_coeffs)

    def l1_at_most(self, bound) -> bool:
        return l1_at_most(self.taylor_coeffs, bound)

    def __call__(self, z):
        """Evaluate ``q(z)`` in floating point (scalar or array)."""
        out = 0
        term = 1
        for j, c in enumerate(self.taylor_coeffs):
            if j:
                term = term * z / j
            out = out + complex(c) * term
        return out

    def __str__(self):
        return " ".join(str(c) for c in self.taylor_coeffs)


@dataclass(frozen=True)
class EnumeratedPair:
    k: int
    poly: RationalPoly
    ell: int

    def __post_init__(self):
        if self.ell < 1 or not self.poly.l1_at_most(self.ell):
            raise ValueError(f"ell={self.ell} is below ||q~||_l1 for q = {self.poly}")

    @property
    def degree(self) -> int:
        return self.poly.degree


# -- height enumeration ------------------------------------------------------

def _value_height(x: Fraction) -> int:
    return 0 if x == 0 else max(abs(x.numerator), x.denominator)


def _real_key(x: Fraction):
    return (abs(x), x < 0)


@lru_cache(maxsize=None)
def _values(h: int) -> tuple:
    reals = {Fraction(a, b) for b in range(1, h + 1) for a in range(-h, h + 1)}
    reals = sorted(reals, key=_real_key)
    vals = [(re, im) for re in reals for im in reals]
    vals.sort(key=lambda v: (_real_key(v[0]), _real_key(v[1])))
    return tuple(vals)


def _height_items(h: int) -> Iterator[tuple]:
    """Pairs ``(coeffs, ell)`` of exact height ``h`` in lexicographic order."""
    vals = _values(h)
    vh = {v: max(_value_height(v[0]), _value_height(v[1])) for v in vals}
    for ell in range(1, h + 1):
        for d in range(0, h):
            need = h if max(ell, d + 1) < h else 0

            def rec(prefix, hmax, l1sq_upper):
                pos = len(prefix)
                if pos == d + 1:
                    if hmax < need:
                        return
                    cs = tuple(qq(*v) for v in prefix)
                    if l1_at_most(cs, ell):
                        yield cs
                    return
                for v in vals:
                    if pos == d and d > 0 and v == (0, 0):
                        continue
                    m = abs(complex(float(v[0]), float(v[1])))
                    # cheap prune; exact test happens at the leaf
                    if l1sq_upper + m > ell + 1e-9:
                        continue
                    yield from rec(prefix + (v,), max(hmax, vh[v]), l1sq_upper + m)

            for cs in rec((), 0, 0.0):
                yield cs, ell


def _iter_default() -> Iterator[tuple]:
    for h in count(1):
        yield from _height_items(h)


_default_cache: list = []
_default_iter = _iter_default()


def _default_item(i: int) -> tuple:
    while len(_default_cache) <= i:
        _default_cache.append(next(_default_iter))
    return _default_cache[i]


def height_count(h: int) -> int:
    """Number of pairs of exact height ``h``; ``sum_{g<=h}`` gives T(h)."""
    return sum(1 for _ in _height_items(h))


def enumerate_pair(k: int, override: Sequence = ()) -> EnumeratedPair:
    """The ``k``-th pair ``(q_k, ell_k)``, ``k >= 1``.

    ``override`` is an optional list of ``(RationalPoly, ell)`` placed first;
    index ``k > len(override)`` continues with the default enumeration at
    position ``k - len(override)``.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if k <= len(override):
        poly, ell = override[k - 1]
        return EnumeratedPair(k, poly, int(ell))
    cs, ell = _default_item(k - len(override) - 1)
    return EnumeratedPair(k, RationalPoly(cs), ell)


def iter_pairs(override: Sequence = ()) -> Iterator[EnumeratedPair]:
    for k in count(1):
        yield enumerate_pair(k, override)


# -- block classes -------------------------------------------------------------

def block_class(n: int) -> int:
    """The ``k`` with ``n`` in ``A_k = {2^k (2j - 1)}``."""
    if n < 2 or n % 2:
        raise ValueError(f"n must be even and >= 2, got {n}")
    return (n & -n).bit_length() - 1


def class_members(k: int, start: int = 0) -> Iterator[int]:
    """Elements of ``A_k`` that are ``>= start``, increasing."""
    step = 1 << (k + 1)
    first = 1 << k
    if start > first:
        first += -(-(start - first) // step) * step
    yield from count(first, step)


# -- parameters ------------------------------------------------------------

def _as_exponent(p):
    if isinstance(p, str):
        p = p.strip().lower()
        if p in ("inf", "infinity", "oo"):
            return math.inf
        return Fraction(p)
    if isinstance(p, float):
        if math.isinf(p):
            return math.inf
        return Fraction(p).limit_denominator(10 ** 6)
    return Fraction(p)


def conjugate_exponent(p):
    """``p' = p / (p - 1)``; ``inf`` maps to 1 and 1 maps to ``inf``."""
    p = _as_exponent(p)
    if p == math.inf:
        return Fraction(1)
    if p == 1:
        return math.inf
    return p / (p - 1)


def a_exponent(p) -> Fraction:
    """Growth exponent: 1/4 for ``p >= 2`` and ``1/(2p)`` for ``1 < p <= 2``."""
    p = _as_exponent(p)
    if p <= 1:
        raise ValueError("a(p) is defined for p in (1, inf]; use p1 mode for p = 1")
    if p == math.inf or p >= 2:
        return Fraction(1, 4)
    return 1 / (2 * p)


@dataclass(frozen=True)
class ConstructionParams:
    """Parameters fixing the construction.

    ``p`` is the exponent in ``(1, inf]`` for standard mode (1 in p1 mode),
    ``c`` the target constant, ``gamma`` the growth constant (default
    ``10**10``). ``phi`` is the p1-mode schedule function and ``override`` an
    optional list of leading ``(RationalPoly, ell)`` pairs.
    """

    p: object = math.inf
    c: object = Fraction(1, 2)
    gamma: object = DEFAULT_GAMMA
    mode: str = "standard"
    phi: Optional[Callable[[float], float]] = field(default=None, compare=False)
    override: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "p", _as_exponent(self.p))
        object.__setattr__(self, "c", Fraction(self.c) if not isinstance(self.c, float)
                           else Fraction(self.c).limit_denominator(10 ** 12))
        object.__setattr__(self, "gamma", Fraction(self.gamma) if not isinstance(self.gamma, float)
                           else Fraction(self.gamma).limit_denominator(10 ** 12))
        object.__setattr__(self, "override", tuple(
            (q if isinstance(q, RationalPoly) else RationalPoly(q), int(ell)) for q, ell in self.override))
        if self.mode not in ("standard", "p1"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.c <= 0 or self.gamma < 1:
            raise ValueError("need c > 0 and gamma >= 1")
        if self.mode == "standard" and not self.p > 1:
            raise ValueError("standard mode needs p in (1, inf]")
        if self.mode == "p1":
            object.__setattr__(self, "p", Fraction(1))

    @property
    def uses_rudin_shapiro(self) -> bool:
        return self.mode == "standard" and self.p >= 2

    @property
    def spacing_exponent(self):
        """``max(2, p')``."""
        return max(Fraction(2), conjugate_exponent(self.p))

    @property
    def a(self) -> Fraction:
        return Fraction(1, 2) if self.mode == "p1" else a_exponent(self.p)

    def pair(self, k: int) -> EnumeratedPair:
        return enumerate_pair(k, self.override)

    def guaranteed_constant(self, k: int) -> float:
        """Block-to-growth chain constant for class ``k``.

        ``1e3 * 100 * ell_k * alpha_k^{-1/2}`` for ``p >= 2`` and
        ``1e3 * 60 * ell_k * alpha_k^{-1/p'}`` for ``1 < p < 2``.
        """
        ell, al = self.pair(k).ell, alpha(k, self)
        if self.uses_rudin_shapiro:
            return 1e5 * ell * al ** -0.5
        return 6e4 * ell * al ** (-1.0 / float(conjugate_exponent(self.p)))


def _floor_power(base: Fraction, e) -> int:
    if isinstance(e, Fraction) and e.denominator == 1:
        return math.floor(base ** int(e))
    with mpmath.workdps(80):
        val = mpmath.power(mpmath.mpf(base.numerator) / base.denominator,
                           mpmath.mpf(e.numerator) / e.denominator)
        return int(mpmath.floor(val))


def alpha(k: int, params: ConstructionParams, extra: Optional[int] = None) -> int:
    """Block spacing ``alpha_k`` (always ``> 2 d_k + 8 ell_k``).

    Standard mode: ``1 + floor(max((gamma ell/c)^{max(2,p')}, 2d + 8 ell))``.
    p1 mode: ``1 + max(2d + 8 ell, extra)`` with ``extra`` from the p1 schedule.
    """
    pair = params.pair(k)
    floor_term = 2 * pair.degree + 8 * pair.ell
    if params.mode == "p1":
        if extra is None:
            from .construction import p1_schedule
            extra = p1_schedule(k, params.phi, params)
        return 1 + max(floor_term, int(extra))
    growth = _floor_power(params.gamma * pair.ell / params.c, params.spacing_exponent)
    return 1 + max(growth, floor_term)


# -- override file ---------------------------------------------------------

def _parse_scalar(tok: str):
    if ":" in tok:
        re, im = tok.split(":", 1)
        return qq(Fraction(re), Fraction(im))
    return Fraction(tok)


def parse_override(text: str) -> list:
    """Parse override lines ``degree; c_0 c_1 ... c_d; ell``.

    Each ``c_j`` is ``num/den`` (or an integer); a Gaussian coefficient is
    written ``re:im``. Blank lines and ``#`` comments are skipped.
    """
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            deg_s, coeff_s, ell_s = (part.strip() for part in line.split(";"))
            coeffs = [_parse_scalar(t) for t in coeff_s.split()]
            deg, ell = int(deg_s), int(ell_s)
        except ValueError as exc:
            raise ValueError(f"override line {lineno}: {raw!r}") from exc
        if len(coeffs) != deg + 1:
            raise ValueError(f"override line {lineno}: degree {deg} needs {deg + 1} coefficients")
        poly = RationalPoly(tuple(coeffs))
        EnumeratedPair(len(out) + 1, poly, ell)  # validates ell >= ||q~||
        out.append((poly, ell))
    return out


def load_override_file(path) -> list:
    return parse_override(Path(path).read_text(encoding="utf-8"))
