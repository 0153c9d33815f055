"""Frequent visits: derivatives of f reproduce the targets.

At each +1 position s of an active block, D^s f is within 1/ell of the
target polynomial on the disc of radius ell. We check this for the constant
target 1 (ell = 1) and for 1/2 - z/2 (ell = 2), then look at how densely
these visits occur.

Run with ``python3 demos/03_visits.py``.
"""

import math
from fractions import Fraction

from fhc.construction import SparseCoeffStream
from fhc.enumeration import ConstructionParams, RationalPoly
from fhc.hypercyclicity import verify_visit, visit_density


def stream(poly, ell):
    return SparseCoeffStream(ConstructionParams(p=math.inf, c=1, gamma=10, override=[(poly, ell)]))


one = stream(RationalPoly((Fraction(1),)), 1)
half = stream(RationalPoly((Fraction(1, 2), Fraction(-1, 2))), 2)

for name, f in (("q = 1", one), ("q = 1/2 - z/2", half)):
    rep = verify_visit(f, 1)
    print(f"{name}: block n = {rep.n}, s = {rep.s}, ell = {rep.ell}")
    print(f"   sup |D^s f - q| on |z| <= ell: {rep.sup_error:.3e} (tolerance {rep.tolerance})")
    print(f"   visit set of that block: {len(f.b_set(rep.n))} positions")
print()

# The visit count up to N grows like a fixed fraction of N, which is what
# positive lower density means in practice.
for N in (1100 ** 2, 1500 ** 2, 2000 ** 2):
    d = visit_density(one, 1, N)
    print(f"N = {N:>9}: {d.count:>5} visits, density {d.density:.3e}")
