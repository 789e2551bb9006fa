"""Survival and ruin probabilities for consumption under multiplicative shocks.

A wealth process consumes a fixed amount each period and multiplies the
remaining surplus by an i.i.d. positive shock.  This package classifies
the survival regime of a shock distribution, computes moments of the
associated discounted shock series by exact recursion, turns them into
piecewise Chebyshev lower bounds on survival probability, and validates
everything against seeded Monte Carlo simulation.  A command-line front
end reproduces the reference numerical tables end to end.
"""

from .bounds import (
    BoundResult,
    BoundSchedule,
    BoundaryTable,
    boundary_table,
    evaluate_bound,
    ruin_upper_bound,
    schedule,
    survival_lower_bound,
)
from .errors import ConfigError, DomainError, FeasibilityError
from .moments import FiniteMomentGrid, MomentTable, finite_moments, infinite_moments
from .montecarlo import (
    CrosscheckReport,
    EcdfEstimate,
    SimConfig,
    crosscheck_equivalence,
    ecdf_survival,
    replicate_stream,
    sample_Z,
    simulate_path,
)
from .regimes import (
    Regime,
    Trichotomy,
    classify,
    deterministic_horizon,
    deterministic_min_stock,
    trichotomy,
)
from .shocks import (
    Constant,
    Gamma,
    Lognormal,
    Pareto,
    ShockSpec,
    SupportBounds,
    match_inverse_moments,
    spec_from_record,
)

__version__ = "0.1.0"

__all__ = [
    "BoundResult",
    "BoundSchedule",
    "BoundaryTable",
    "ConfigError",
    "Constant",
    "CrosscheckReport",
    "DomainError",
    "EcdfEstimate",
    "FeasibilityError",
    "FiniteMomentGrid",
    "Gamma",
    "Lognormal",
    "MomentTable",
    "Pareto",
    "Regime",
    "ShockSpec",
    "SimConfig",
    "SupportBounds",
    "Trichotomy",
    "boundary_table",
    "classify",
    "crosscheck_equivalence",
    "deterministic_horizon",
    "deterministic_min_stock",
    "ecdf_survival",
    "evaluate_bound",
    "finite_moments",
    "infinite_moments",
    "match_inverse_moments",
    "replicate_stream",
    "ruin_upper_bound",
    "sample_Z",
    "schedule",
    "simulate_path",
    "spec_from_record",
    "survival_lower_bound",
    "trichotomy",
]
