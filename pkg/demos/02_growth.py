"""Growth of the constructed function on circles.

We build f at a desk-sized scale (Gamma = 10, c = 1, p = inf) and put the
constant target 1 first so that the first nonzero block appears at n = 1010,
i.e. around |z| = 1010^2. The sup of |f| on the circle of radius r is then
compared with the optimal rate e^r / r^(1/4).

Run with ``python3 demos/02_growth.py`` (about ten seconds).
"""

import math
from fractions import Fraction

from fhc.analysis import block_radius_grid, default_radius_grid, growth_report
from fhc.construction import SparseCoeffStream
from fhc.enumeration import ConstructionParams, RationalPoly

params = ConstructionParams(p=math.inf, c=1, gamma=10, override=[(RationalPoly((Fraction(1),)), 1)])
f = SparseCoeffStream(params)

print("class 1 spacing alpha =", f.alpha(1))
blocks = [s for s in f.active_blocks(1100) if f.block(s.n)]
print("first nonzero blocks:", [s.n for s in blocks[:4]])
print(f"block 1010 holds {len(f.block(1010))} coefficients, all +-1\n")

# Far below the first block f is tiny; the interesting radii sit on the blocks.
radii = sorted(set(default_radius_grid(1e3, subdivisions=2)) | set(block_radius_grid([1010, 1014], subdivisions=2)))
rep = growth_report(f, math.inf, radii, 0.25)
print(f"{'r':>12} {'M(r) r^1/4 e^-r':>16}")
for row in rep.rows[:: max(1, len(rep.rows) // 12)]:
    print(f"{row.r:>12.1f} {row.ratio:>16.4g}")
print()
print(f"max measured ratio {rep.max_ratio:.4g}, certified {rep.max_ratio_upper:.4g}")
print(f"guaranteed constant for this scale: {params.guaranteed_constant(1):.6g}")
