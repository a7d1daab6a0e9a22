"""Sharp Bohr-type radii for close-to-convex harmonic maps of order alpha.

The package evaluates the majorant-series functionals in closed form,
checks them against certified truncated series, solves for the smallest
radius at which each functional meets the boundary distance, and
recomputes the published tables of radii.
"""

from .errors import (
    BohrLabError,
    BudgetExceededError,
    DomainError,
    NoSignChangeError,
    NonNegativeStartError,
    ProfileError,
    SolverError,
    UnknownTableError,
    UnsupportedCombinationError,
)
from .formatting import format_number
from .functionals import (
    FunctionalKind,
    Kind,
    RadiusEquation,
    Variant,
    area_bound,
    lhs_closed,
    lhs_series,
    radius_equation,
)
from .kernel import SeriesResult, TruncationBudget, alt_log_tail, dilog, log_tail, truncated_sum
from .model import (
    AlphaParam,
    CoefficientProfile,
    coeff_bound,
    distance_bound,
    extremal_profile,
    jacobian_sqrt_bound,
    load_profile,
    majorant,
    minorant,
    parse_profile,
)
from .solver import RootResult, smallest_root
from .tables import PaperTable, TableReport, audit_variants, get_table, registry, reproduce

__version__ = "0.1.0"


def sharp_radius(kind: FunctionalKind, alpha, **solver_opts) -> float:
    """Smallest root of the radius equation for ``kind`` at ``alpha``."""
    return smallest_root(radius_equation(kind, alpha).as_function(), **solver_opts).root


__all__ = [name for name in dir() if not name.startswith("_")]
