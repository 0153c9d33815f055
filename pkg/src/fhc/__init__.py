"""Construction and numerical verification of a slowly growing frequently
hypercyclic entire function for the differentiation operator."""

from .kernel_polys import (CoeffPoly, fejer_kernel, poly_pnorm, rudin_shapiro_poly,
                           vallee_poussin_poly)
from .enumeration import (ConstructionParams, EnumeratedPair, RationalPoly, a_exponent, alpha,
                          block_class, enumerate_pair)
from .construction import (DictStream, ExpStream, SparseCoeffStream, b_set, block_poly, coeff,
                           p1_schedule)
from .analysis import (default_radius_grid, eval_circle, growth_report, heat_kernel_mass,
                       lambda_table, lemma_sum_check, loglinear_check, pmean, stirling_checks)

__version__ = "0.1.0"
