"""Exact lattice point counts near dilated convex surfaces and quasi-homogeneous level sets."""

__version__ = "0.1.0"

from .analysis import ScanReport, bound_ratio_scan, drop_nonpositive, fit_exponent
from .counting import (CountResult, PairQuery, ShellQuery, ball_count, discrepancy,
                       pair_count_brute, pair_count_diff_weight, sharpness_count,
                       shell_count_brute, shell_count_fiber, theorem_bound)
from .curvature import (FDScheme, LevelSetScan, certify_level_set, grad_x, grad_y,
                        mixed_hessian, monge_ampere_det)
from .energy import EnergyParams, discrete_energy, dyadic_inner_sum, energy_scan
from .errors import (InvalidArgument, LatshellError, LevelSetEmptyError, NumericalDomainError,
                     TooLargeError, UnsupportedPhaseError)
from .geometry import (Convention, ConvexBody, ball, ellipsoid, gauge, pball,
                       shell_predicate_exact, volume)
from .phase import (AnisotropicDilation, PhaseFunction, check_quasi_homogeneity, difference_gauge,
                    dilate, evaluate, parabolic)
