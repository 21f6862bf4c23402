"""Numerical laboratory for Dirichlet polynomials on the half-plane.

Vertical and torus means, Green-identity checks (Hardy-Stein and
Littlewood-Paley in strip, boundary and torus forms), argument-principle
zero counting and the mean counting function, and Kronecker-flow experiments
on the 2-torus exhibiting the failure of limit interchange."""

from .corpus import corpus_build, corpus_names, corpus_table
from .errors import (BoundaryZeroSuspected, DegenerateDenominator,
                     DepthExceeded, DirichletLabError, HypothesisFailed,
                     InputError, InsufficientCover, MissingPrimeAngle,
                     PoleHit, QuadratureNonconvergence, SingularPoint,
                     TooManyPrimes, TruncationOverflow, ZeroOnLine)
from .green import (AreaIntegralSpec, area_integrand, boundary_lp_check,
                    hardy_stein_check, hardy_stein_rhs, littlewood_paley,
                    torus_lp)
from .means import (DEFAULT_SCHEDULE, MeanSchedule, ergodic_crosscheck,
                    hp_norm, jessen_function, parseval_square_mean,
                    torus_mean, window_mean)
from .reports import CheckReport
from .series import (BlaschkeData, Character, DirichletPolynomial,
                     GeneralizedSeries, blaschke_eval, character_from_json,
                     character_to_json, frostman_map, frostman_shift_eval,
                     generalized_from_json, generalized_to_json,
                     load_any_series, series_from_json, series_to_json,
                     tail_bound, twist, vertical_translate)
from .torus import (FlowSegment, FlowSegmentList, OuterBuild, TorusSet,
                    gap_experiment, kronecker_point, line_segments,
                    oscillation_experiment, parallelogram_cover,
                    random_torus_set, ss_outer_construct, visit_fraction)
from .zeros import (Rectangle, ZeroHit, ZeroList, blaschke_condition_check,
                    counting_Nf, isolate_zeros, jensen_check,
                    limsup_bound_check, littlewood_bound, littlewood_sum,
                    logxi_bounds, mean_counting, min_modulus_diagnostic,
                    winding_number)

__version__ = "0.1.0"
