"""Euclidean projections onto the price simplex and budget sets."""

from __future__ import annotations

import numpy as np

__all__ = ["project_budget", "project_simplex"]


def project_simplex(y: np.ndarray) -> np.ndarray:
    """Project onto ``{x >= 0, sum(x) = 1}`` by sort-and-threshold."""
    y = np.asarray(y, dtype=float)
    s = np.sort(y)[::-1]
    css = np.cumsum(s) - 1.0
    idx = np.arange(1, y.size + 1)
    cond = s - css / idx > 0
    rho = idx[cond][-1]
    theta = css[cond][-1] / rho
    return np.maximum(y - theta, 0.0)


def project_budget(y: np.ndarray, p: np.ndarray, wealth: float) -> np.ndarray:
    """Project onto ``{x >= 0, <p, x> <= wealth}`` for ``p >= 0, wealth >= 0``.

    The projection is ``max(y - lam * p, 0)`` with multiplier ``lam >= 0``
    chosen so spending meets the budget; spending is piecewise linear and
    decreasing in ``lam``, so the crossing segment is found exactly from the
    sorted breakpoints ``y_h / p_h``.
    """
    y = np.asarray(y, dtype=float)
    p = np.asarray(p, dtype=float)
    x = np.maximum(y, 0.0)
    if float(p @ x) <= wealth:
        return x
    priced = p > 0.0
    lams = y[priced] / p[priced]
    order = np.argsort(lams)
    lam_sorted = lams[order]
    py = (p[priced] * y[priced])[order]
    pp = (p[priced] ** 2)[order]
    # suffix sums over components still active (y_h - lam * p_h > 0)
    s1 = np.cumsum(py[::-1])[::-1]
    s2 = np.cumsum(pp[::-1])[::-1]
    prev = 0.0
    for j in range(lam_sorted.size):
        if lam_sorted[j] <= 0.0:
            prev = lam_sorted[j]
            continue
        lam = (s1[j] - wealth) / s2[j]
        if prev <= lam <= lam_sorted[j]:
            return np.maximum(y - lam * p, 0.0)
        prev = lam_sorted[j]
    # spending at the largest breakpoint is 0 <= wealth, so we only get here
    # through rounding; clamp to the last breakpoint
    return np.maximum(y - lam_sorted[-1] * p, 0.0)
