"""Shared builders and independent oracles for the test suite."""

from pathlib import Path

import numpy as np
import pytest

from fuzzyecon import (
    Economy,
    FuzzyNumber,
    FuzzyQuadraticUtility,
    Trapezoid,
    from_trapezoid,
)

DATA = Path(__file__).parent / "data"


def trap(a, b, c, d) -> FuzzyNumber:
    return from_trapezoid(Trapezoid(a, b, c, d))


def quadrature_expected(f: FuzzyNumber, samples: int = 2001) -> float:
    """Independent expected-value oracle: evaluate alpha-cuts pointwise on a
    dense grid that includes the ladder's own alphas (the integrand is
    piecewise linear, so the trapezoid rule over that grid is exact up to
    float rounding) and integrate numerically."""
    alphas = np.union1d(np.linspace(0.0, 1.0, samples),
                        np.array([float(a) for a, _, _ in f.levels]))
    cuts = np.array([f.alpha_cut(a) for a in alphas])
    return 0.5 * float(np.trapezoid(cuts[:, 0] + cuts[:, 1], alphas))


def random_fuzzy(rng: np.random.Generator, scale: float = 10.0) -> FuzzyNumber:
    """Random valid ladder: start from the core interval and widen downward."""
    n_mid = int(rng.integers(0, 4))
    alphas = sorted({0.0, 1.0, *rng.uniform(0.01, 0.99, size=n_mid).tolist()})
    lo = rng.uniform(-scale, scale)
    hi = lo + rng.uniform(0.0, scale)
    levels = [(1.0, lo, hi)]
    for alpha in sorted(alphas[:-1], reverse=True):
        lo -= rng.uniform(0.0, scale)
        hi += rng.uniform(0.0, scale)
        levels.append((alpha, lo, hi))
    return FuzzyNumber(tuple(reversed(levels)))


def quadratic_utility(b1: float, b2: float, c: float = -1.0, sign: int = 1) -> FuzzyQuadraticUtility:
    """Two-good utility in the reference family: expected quadratic
    coefficients are exactly 1/2 and expected linear coefficients are b1, b2."""
    quad = (trap(0, "1/2", "1/2", 1), trap(0, "1/3", "2/3", 1))
    lin = (trap(2 * b1, b1, b1, 0), trap(2 * b2, 1.5 * b2, 0.5 * b2, 0))
    return FuzzyQuadraticUtility(quad, lin, trap(2 * c, c, c, 0), sign)


def reference_economy() -> Economy:
    """w=((1,2),(3,1)), b=((-5,-4),(-6,-3)): equilibrium price (7/11, 4/11)."""
    return Economy(
        np.array([[1.0, 2.0], [3.0, 1.0]]),
        (quadratic_utility(-5, -4, c=-1, sign=1), quadratic_utility(-6, -3, c=-2, sign=-1)),
    )


def random_valid_instance(rng: np.random.Generator):
    """Random two-agent economy with -b > w everywhere (binding budgets)."""
    w = rng.uniform(0.2, 3.0, size=(2, 2))
    b = -(w + rng.uniform(0.5, 3.0, size=(2, 2)))
    utilities = tuple(quadratic_utility(b[i, 0], b[i, 1], c=0.0) for i in range(2))
    return Economy(w, utilities)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240811)
