"""Brute-force grid oracles for demand and equilibrium prices.

These deliberately avoid the analytic solvers: demand is checked by direct
maximization of the expected utility over a grid of the budget set, and
two-good equilibrium prices by scanning the price segment for the smallest
clearing violation.  Desk scale only; a hard cap guards grid sizes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .economy import (
    DEMAND_TOL,
    Economy,
    FuzzyQuadraticUtility,
    UnsupportedShapeError,
    demand,
    validate_price_vector,
)

__all__ = ["GridSizeError", "GridSpec", "grid_demand", "grid_equilibrium"]

MAX_GRID_POINTS = 10_000_000


class GridSizeError(ValueError):
    """The requested grid would exceed the point cap."""


@dataclass(frozen=True)
class GridSpec:
    """Step size plus optional per-dimension upper bounds.

    Bounds default to the budget-implied caps ``wealth / p_h``; they are
    required for goods with zero price, whose budget cap is unbounded.
    """

    resolution: float
    bounds: tuple[float, ...] | None = None

    def __post_init__(self):
        if not self.resolution > 0:
            raise ValueError(f"resolution must be positive, got {self.resolution}")
        if self.bounds is not None:
            bounds = tuple(float(b) for b in self.bounds)
            if any(b < 0 for b in bounds):
                raise ValueError("bounds must be non-negative")
            object.__setattr__(self, "bounds", bounds)


def _axis(bound: float, res: float) -> np.ndarray:
    n = int(math.floor(bound / res + 1e-9))
    return np.linspace(0.0, n * res, n + 1)


def _guard(sizes) -> None:
    points = math.prod(int(s) for s in sizes)
    if points > MAX_GRID_POINTS:
        raise GridSizeError(f"grid of {points} points exceeds cap {MAX_GRID_POINTS}")


def _value_on_mesh(u: FuzzyQuadraticUtility, coords) -> np.ndarray:
    qhat = u.quad_expected
    bhat = u.lin_expected
    val = u.const_sign * u.const.expected_value()
    for h, xh in enumerate(coords):
        val = val - qhat[h] * xh * xh - bhat[h] * xh
    return val


def grid_demand(
    u: FuzzyQuadraticUtility, w_i, p, grid: GridSpec
) -> tuple[np.ndarray, float]:
    """Argmax of the expected utility over grid points of the budget set.

    When every price is positive and the satiation point is unaffordable,
    the budget binds at the optimum, so the first ``l-1`` goods are gridded
    and the last exhausts the budget; otherwise a full box is gridded with
    feasibility filtering.  Concavity puts the true maximizer within one
    grid cell of the returned point.  Ties resolve to the lexicographically
    smallest point.
    """
    p = validate_price_vector(p, u.goods)
    w_i = np.asarray(w_i, dtype=float)
    wealth = float(p @ w_i)
    res = grid.resolution
    peak = u.peak()
    binding = bool(np.all(p > 0)) and float(p @ peak) > wealth

    if binding:
        bounds = [wealth / p[h] for h in range(u.goods - 1)]
        axes = [_axis(b, res) for b in bounds]
        _guard([a.size for a in axes])
        mesh = np.meshgrid(*axes, indexing="ij", sparse=True) if axes else []
        spent = sum(p[h] * mesh[h] for h in range(u.goods - 1))
        last = (wealth - spent) / p[-1]
        feasible = last >= -1e-12
        coords = list(mesh) + [np.maximum(last, 0.0)]
        value = np.where(feasible, _value_on_mesh(u, coords), -np.inf)
        value = np.broadcast_to(value, tuple(a.size for a in axes)).ravel()
        flat = int(np.argmax(value))
        idx = np.unravel_index(flat, tuple(a.size for a in axes))
        point = np.array([axes[h][idx[h]] for h in range(u.goods - 1)])
        x = np.append(point, max((wealth - float(p[:-1] @ point)) / p[-1], 0.0))
        return x, float(value[flat])

    bounds = []
    for h in range(u.goods):
        if grid.bounds is not None:
            bounds.append(grid.bounds[h])
        elif p[h] > 0:
            bounds.append(wealth / p[h])
        else:
            raise ValueError(
                f"good {h} has zero price and no explicit bound; supply GridSpec.bounds"
            )
    axes = [_axis(b, res) for b in bounds]
    _guard([a.size for a in axes])
    mesh = np.meshgrid(*axes, indexing="ij", sparse=True)
    spent = sum(p[h] * mesh[h] for h in range(u.goods))
    feasible = spent <= wealth + 1e-12
    value = np.where(feasible, _value_on_mesh(u, mesh), -np.inf)
    value = np.broadcast_to(value, tuple(a.size for a in axes)).ravel()
    flat = int(np.argmax(value))
    idx = np.unravel_index(flat, tuple(a.size for a in axes))
    x = np.array([axes[h][idx[h]] for h in range(u.goods)])
    return x, float(value[flat])


def grid_equilibrium(econ: Economy, price_resolution: float) -> tuple[np.ndarray, float]:
    """Scan the two-good price segment for the smallest clearing violation.

    The violation at ``p`` is ``|<p, z>| + sum(max(z_h, 0))``; it vanishes
    exactly at an equilibrium.  Returns the first price attaining the
    minimum.
    """
    if econ.goods != 2:
        raise UnsupportedShapeError("price scan needs exactly 2 goods")
    if not price_resolution > 0:
        raise ValueError(f"resolution must be positive, got {price_resolution}")
    n = max(1, int(round(1.0 / price_resolution)))
    best_p = None
    best_score = math.inf
    w_total = econ.w.sum(axis=0)
    for p2 in np.linspace(0.0, 1.0, n + 1):
        p = np.array([1.0 - p2, p2])
        x = np.zeros(2)
        for i in range(econ.agents):
            x += demand(econ.utilities[i], econ.w[i], p, tol=DEMAND_TOL)
        z = x - w_total
        score = abs(float(p @ z)) + float(np.maximum(z, 0.0).sum())
        if score < best_score:
            best_p, best_score = p, score
    return best_p, best_score
