"""Fuzzy-number calculus, fuzzy preferences, fuzzy games and competitive
equilibria for pure exchange economies with fuzzy quadratic utilities."""

from .fuzzy import (
    DEFAULT_TOL,
    FuzzyNumber,
    InvalidFuzzyNumberError,
    OrderOutcome,
    Trapezoid,
    add,
    compare,
    crisp,
    from_trapezoid,
    fuzzy_max,
    scalar_mul,
    subtract,
)
from .preference import (
    ConsistencyError,
    FuzzyRelation,
    PreferenceOutcome,
    Quotient,
    build_utility,
    is_consistent,
    prefers,
    quotient,
)
from .game import (
    FuzzyGame,
    MixedProfile,
    NashReport,
    UnsupportedGameError,
    expected_game,
    find_mixed_nash_2p,
    find_pure_nash,
    verify_nash,
)
from .economy import (
    ConvergenceError,
    Economy,
    EquilibriumReport,
    FuzzyQuadraticUtility,
    SolverConfig,
    UnsupportedShapeError,
    demand,
    demand_projected_gradient,
    excess_demand,
    expected_utility,
    expected_utility_gradient,
    fuzzy_utility,
    is_quasi_concave_on_segment,
    solve_equilibrium,
    utility_gain_closed_form,
    validate_price_vector,
    verify_equilibrium,
)
from .oracle import GridSizeError, GridSpec, grid_demand, grid_equilibrium
from .config import (
    ConfigError,
    load_economy,
    load_fuzzy_number,
    load_game,
    load_relation,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_TOL",
    "ConfigError",
    "ConsistencyError",
    "ConvergenceError",
    "Economy",
    "EquilibriumReport",
    "FuzzyGame",
    "FuzzyNumber",
    "FuzzyQuadraticUtility",
    "FuzzyRelation",
    "GridSizeError",
    "GridSpec",
    "InvalidFuzzyNumberError",
    "MixedProfile",
    "NashReport",
    "OrderOutcome",
    "PreferenceOutcome",
    "Quotient",
    "SolverConfig",
    "Trapezoid",
    "UnsupportedGameError",
    "UnsupportedShapeError",
    "add",
    "build_utility",
    "compare",
    "crisp",
    "demand",
    "demand_projected_gradient",
    "excess_demand",
    "expected_game",
    "expected_utility",
    "expected_utility_gradient",
    "find_mixed_nash_2p",
    "find_pure_nash",
    "from_trapezoid",
    "fuzzy_max",
    "fuzzy_utility",
    "grid_demand",
    "grid_equilibrium",
    "is_consistent",
    "is_quasi_concave_on_segment",
    "load_economy",
    "load_fuzzy_number",
    "load_game",
    "load_relation",
    "prefers",
    "quotient",
    "scalar_mul",
    "solve_equilibrium",
    "subtract",
    "utility_gain_closed_form",
    "validate_price_vector",
    "verify_equilibrium",
    "verify_nash",
]
