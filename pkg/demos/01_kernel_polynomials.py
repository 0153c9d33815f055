"""Kernel polynomials: how flat are they, and how many +1 coefficients do they keep?

Every active block of the construction is built from a kernel polynomial
whose coefficients are mostly equal to 1. Those +1 positions are where the
function later reproduces its target under repeated differentiation, so we
want many of them. At the same time the kernel has to stay small on the unit
circle, otherwise the block would blow up the growth of f.

Run with ``python3 demos/01_kernel_polynomials.py``.
"""

import math

from fhc.kernel_polys import pnorm_with_error, rudin_shapiro_poly, sup_norm_bounds, vallee_poussin_poly

print("Rudin-Shapiro signs (used when p >= 2)")
print(f"{'m':>6} {'sup upper':>10} {'sqrt(m)':>9} {'ratio':>7} {'+1 count':>9}")
for m in (10, 64, 257, 1024, 4096):
    rs = rudin_shapiro_poly(m)
    _, upper = sup_norm_bounds(rs)
    print(f"{m:>6} {upper:>10.2f} {math.sqrt(m):>9.2f} {upper / math.sqrt(m):>7.3f} {rs.count(1):>9}")
print("The sup norm tracks sqrt(m) and at least half the signs are +1.\n")

print("First ten signs:", rudin_shapiro_poly(10).coeffs)
print()

print("de la Vallee-Poussin polynomials (used when p < 2)")
print(f"{'m':>6} {'p':>4} {'L^p mean':>10} {'m^(1-1/p)':>10} {'+1 count':>9}")
for m in (8, 128, 2048):
    vp = vallee_poussin_poly(m)
    for p in (1.0, 1.5):
        val, _ = pnorm_with_error(vp, p, rtol=1e-6)
        print(f"{m:>6} {p:>4} {val:>10.3f} {m ** (1 - 1 / p):>10.3f} {vp.count(1):>9}")
print("The L^1 mean stays bounded while at least a quarter of the coefficients are exactly 1.")
print("m = 8 coefficients:", [str(c) for c in vallee_poussin_poly(8).coeffs])
