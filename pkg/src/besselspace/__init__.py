"""Weighted smoothness norms, dyadic decompositions and multiplier
conditions on periodic FFT grids.

The package is organized around one carrier type, :class:`~besselspace.grid.SampledFunction`
(values of a scalar- or sequence-valued function on a periodic grid), with

- :mod:`besselspace.grid`: grids, transforms, symbol application, weighted norms;
- :mod:`besselspace.weights`: weight algebra, A_p characteristics, dyadic-cube conditions;
- :mod:`besselspace.rademacher`: seeded random-sign norm estimation and square functions;
- :mod:`besselspace.symbols`: Fourier symbols and multiplier condition evaluators;
- :mod:`besselspace.lp_decomp`: dyadic band systems and smoothness norms;
- :mod:`besselspace.differences`: difference operators, kernel means, difference norms;
- :mod:`besselspace.halfspace`: half-space multiplier experiments;
- :mod:`besselspace.cli`: the ``besselspace`` command-line front end.
"""

from .grid import (GridSpec, SCALAR, SampledFunction, SpectralFunction,
                   TargetSpace, apply_symbol, forward, inverse, lp_norm,
                   make_grid, sample, sequence_space)
from .weights import (Weight, ap_characteristic_estimate, bar_weight,
                      constant_weight, cube_mass, DyadicCube,
                      embedding_condition, inclusion_condition,
                      modified_multiplier_weight, piecewise_power_weight,
                      power_weight)
from .rademacher import (RademacherEstimate, rademacher_norm, sign_draw,
                         square_function_norm, sup_partial)
from .symbols import (Symbol, dilation_conditions, hoelder_conditions,
                      l2_bound_estimate, mihlin_norm, parse_symbol,
                      tauberian_constant)
from .lp_decomp import (PhiSequence, bessel_norm, bessel_potential, lp_block,
                        make_phi, randomized_lp_norm, triebel_norm)
from .kernels import (Kernel, gaussian_kernel, indicator_cube_kernel,
                      parse_kernel)
from .differences import (SeminormRequest, averaging, difference,
                          difference_seminorm, full_difference_norm,
                          kdelta_symbol, kdelta_transform_symbol, kernel_mean,
                          square_difference_norm, strichartz_norm, translate)
from .halfspace import (HalfspaceExperiment, boundary_mass, boundary_profile,
                        halfspace_kernel_mean, halfspace_restrict,
                        multiplier_sweep)
from .reports import NormReport
from .errors import BudgetError

__version__ = "0.1.0"
