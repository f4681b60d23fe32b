"""Rigorous upper and lower bounds on the theta-intermediate dimensions of
grid-aligned self-affine carpets, plus an exact finite-depth symbolic oracle.
"""

from .carpet import (Carpet, CarpetSpec, ProbVector, carpet_from_dict,
                     entropy, has_uniform_fibres, load_carpet,
                     log_geometric_mean, mcmullen_vectors, parse_carpet,
                     uniform_vectors)
from .dimensions import DimPair, box_dim, dim_pair, hausdorff_dim
from .lower import (MixedVectors, PsiEval, lower_envelope, lower_ffk,
                    lower_linear_box, lower_thm, mixed_vectors, psi)
from .oracle import (MeasureSpec, OracleReport, SquareId, cover_cost_log,
                     empirical_rate, expected_log_nu, fibre_count,
                     good_bad_counts, level_L, nu_cylinder, nu_square,
                     squares_within)
from .rate import RateEval, RateFunction, cumulant, rate
from .upper import (Delta0Solution, GridSpec, ThreeScaleParams, improved_upper,
                    solve_delta0, upper_bound, upper_slope_at_one)

__version__ = "0.1.0"
