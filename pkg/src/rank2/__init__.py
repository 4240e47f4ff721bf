"""Exact computations for rank-2 quantum cluster algebras.

Core surface: Laurent-polynomial and quantum-torus arithmetic, cluster
variables and the triangular basis, support-region geometry, dominance
combinatorics of the associated quiver varieties, decomposition
multiplicities and the stalk polynomials, plus batch verification
sweeps and a CLI (``rank2``).
"""

from .errors import (CapExceeded, ConvergenceFailure, EmptyVariety,
                     InexactDivision, MalformedSupport, NegativeEntry,
                     NonDivisibleExponent, NonTerminating, NotFound,
                     OutOfRange, PreconditionViolated, Rank2Error)
from .laurent import LaurentPoly, gauss_binomial
from .params import ExchangeParams
from .qtorus import TorusElement
from .support_region import (DenomVector, RegionDescription, d_value,
                             denominator_vector, is_imaginary_root,
                             real_decompose, region, region_contains)
from .cluster_basis import (cluster_monomial, cluster_variable,
                            e_coefficients, expand_in_standard_basis, mstar,
                            standard_monomial, triangular_basis,
                            verify_sigma_relation)
from .quiver_geometry import (DimV, Dims, FiberDims, WeightW, cq, dims,
                              dom_enumerate, fg_values, fiber_dims,
                              is_l_dominant, vbar, wperp)
from .bbdg_kl import (a_poly, bbdg_support, chi_L, chi_M, closed_form,
                      deg_ap_bound_check, p_kl, p_minus, sum_ap_check)
from .sweeps import SweepConfig, SweepReport, verify_sweep

__version__ = "0.1.0"
