"""Discrete and uniform norms of complex polynomials on the unit circle.

The central quantity is the ratio of max |P| over the unit circle to max |P|
over the N-th roots of unity, bounded above by 1 / cos(pi n / 2N) for N >= 2n.
"""

from .bounds import (
    BoundsComparison,
    SheilSmallForm,
    TheoremCheck,
    compare_bounds,
    cosine_bound,
    rakhmanov_bound,
    sheil_small_bound,
    sup_ratio,
    verify_theorem,
    verify_theorem_many,
)
from .circle_norms import (
    CircleNormReport,
    GridNormReport,
    NormMethod,
    discrete_norm,
    grid_oracle_extrema,
    norm_ratio,
    uniform_extrema,
)
from .errors import CircleNormError
from .poly_core import Polynomial, TrigProfile, critical_angles, evaluate, find_roots, trig_profile
from .proof_checks import arcsin_chain_check, check_ineq6, nearest_node_bound
from .schwarz import build_context, check_eq4, check_eq5, leading_coeff_check
from .search import SearchConfig, make_witness, search_extremal, sweep_table, verify_sharpness

__version__ = "0.1.0"

__all__ = [
    "BoundsComparison",
    "CircleNormError",
    "CircleNormReport",
    "GridNormReport",
    "NormMethod",
    "Polynomial",
    "SearchConfig",
    "SheilSmallForm",
    "TheoremCheck",
    "TrigProfile",
    "arcsin_chain_check",
    "build_context",
    "check_eq4",
    "check_eq5",
    "check_ineq6",
    "compare_bounds",
    "cosine_bound",
    "critical_angles",
    "discrete_norm",
    "evaluate",
    "find_roots",
    "grid_oracle_extrema",
    "leading_coeff_check",
    "make_witness",
    "nearest_node_bound",
    "norm_ratio",
    "rakhmanov_bound",
    "search_extremal",
    "sheil_small_bound",
    "sup_ratio",
    "sweep_table",
    "trig_profile",
    "uniform_extrema",
    "verify_sharpness",
    "verify_theorem",
    "verify_theorem_many",
]
