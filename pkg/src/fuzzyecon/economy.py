"""Pure exchange economies whose agents have fuzzy quadratic utilities.

An economy is ``m`` agents trading ``l`` goods from endowments ``w``.
Agent utility is the fuzzy polynomial

    u(x) = - sum_h quad_h * x_h^2  -  sum_h lin_h * x_h  (+/-) const

with fuzzy-number coefficients; taking expected values entrywise gives the
crisp expected utility that drives all optimization (the expected values of
the linear coefficients are written ``b_h`` below and are <= 0 in the
boundary regime).  A competitive equilibrium is a simplex price ``p`` and an
allocation ``x`` such that

  (1) each ``x_i`` maximizes agent i's utility over the budget set
      ``{x >= 0 : <p, x> <= <p, w_i>}``,
  (2) ``p`` lies on the unit simplex, and
  (3) aggregate excess demand ``z`` satisfies ``z <= 0`` and ``<p, z> = 0``.

Equivalently, ``x_i`` solves the strongly monotone inner variational
inequality ``<-grad u_i(x_i), y - x_i> >= 0`` over the budget set, and ``p``
solves the price variational inequality ``<-z, q - p> >= 0`` over the
simplex; solvers here follow this decomposition.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .fuzzy import FuzzyNumber, add, crisp, scalar_mul
from .projections import project_budget, project_simplex

__all__ = [
    "ConvergenceError",
    "Economy",
    "EquilibriumReport",
    "FuzzyQuadraticUtility",
    "SolverConfig",
    "UnsupportedShapeError",
    "demand",
    "demand_projected_gradient",
    "excess_demand",
    "expected_utility",
    "expected_utility_gradient",
    "fuzzy_utility",
    "is_quasi_concave_on_segment",
    "solve_equilibrium",
    "utility_gain_closed_form",
    "validate_price_vector",
    "verify_equilibrium",
]

#: Default tolerances (see README): inner-solver KKT residual, and the
#: clearing / complementarity residual declaring an equilibrium.
DEMAND_TOL = 1e-10
EQUILIBRIUM_TOL = 1e-8
PRICE_SUM_TOL = 1e-9


class UnsupportedShapeError(ValueError):
    """The economy does not match the shape a closed form requires."""


class ConvergenceError(RuntimeError):
    """An iterative inner solver ran out of iterations."""

    def __init__(self, message: str, residual: float):
        super().__init__(f"{message} (last residual {residual:.3e})")
        self.residual = residual


@dataclass(frozen=True)
class FuzzyQuadraticUtility:
    """Per-good fuzzy coefficients of a concave quadratic utility.

    ``quad`` and ``lin`` hold one fuzzy number per good; ``const`` enters
    with sign ``const_sign`` (+1 or -1).  The expected value of every
    ``quad`` entry must be positive so the expected utility is strictly
    concave.
    """

    quad: tuple[FuzzyNumber, ...]
    lin: tuple[FuzzyNumber, ...]
    const: FuzzyNumber = field(default_factory=lambda: crisp(0))
    const_sign: int = 1

    def __post_init__(self):
        quad = tuple(self.quad)
        lin = tuple(self.lin)
        if len(quad) < 1 or len(quad) != len(lin):
            raise ValueError(
                f"quad and lin need one coefficient per good, got {len(quad)} and {len(lin)}"
            )
        for name, coeffs in (("quad", quad), ("lin", lin)):
            for f in coeffs:
                if not isinstance(f, FuzzyNumber):
                    raise ValueError(f"{name} coefficients must be FuzzyNumber")
        if not isinstance(self.const, FuzzyNumber):
            raise ValueError("const must be a FuzzyNumber")
        if self.const_sign not in (1, -1):
            raise ValueError(f"const_sign must be +1 or -1, got {self.const_sign}")
        qhat = np.array([f.expected_value() for f in quad])
        if np.any(qhat <= 0):
            raise ValueError(
                "expected quadratic coefficients must be positive for strict concavity"
            )
        bhat = np.array([f.expected_value() for f in lin])
        object.__setattr__(self, "quad", quad)
        object.__setattr__(self, "lin", lin)
        object.__setattr__(self, "_qhat", qhat)
        object.__setattr__(self, "_bhat", bhat)
        object.__setattr__(self, "_chat", self.const.expected_value())
        for arr in (qhat, bhat):
            arr.flags.writeable = False

    @property
    def goods(self) -> int:
        return len(self.quad)

    @property
    def quad_expected(self) -> np.ndarray:
        return self._qhat

    @property
    def lin_expected(self) -> np.ndarray:
        return self._bhat

    def peak(self) -> np.ndarray:
        """Unconstrained maximizer of the expected utility over the orthant."""
        return np.maximum(0.0, -self._bhat / (2.0 * self._qhat))


def _check_consumption(u: FuzzyQuadraticUtility, x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.shape != (u.goods,):
        raise ValueError(f"consumption vector needs {u.goods} goods, got shape {x.shape}")
    if np.any(x < 0):
        raise ValueError(f"negative consumption: {x.tolist()}")
    return x


def expected_utility(u: FuzzyQuadraticUtility, x) -> float:
    """Crisp expected utility ``-sum q x^2 - sum b x +/- c``."""
    x = _check_consumption(u, x)
    return float(-(u._qhat @ (x * x)) - (u._bhat @ x) + u.const_sign * u._chat)


def expected_utility_gradient(u: FuzzyQuadraticUtility, x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    return -2.0 * u._qhat * x - u._bhat


def fuzzy_utility(u: FuzzyQuadraticUtility, x) -> FuzzyNumber:
    """Assemble the fuzzy utility value at ``x``; its expected value matches
    :func:`expected_utility` up to float rounding."""
    x = _check_consumption(u, x)
    total = scalar_mul(u.const_sign, u.const)
    for h in range(u.goods):
        xh = float(x[h])
        total = add(total, scalar_mul(-(xh * xh), u.quad[h]))
        total = add(total, scalar_mul(-xh, u.lin[h]))
    return total


def is_quasi_concave_on_segment(
    u: FuzzyQuadraticUtility, x, y, samples: int = 33, tol: float = 1e-9
) -> bool:
    """Sampled quasi-concavity check of the expected utility on ``[x, y]``.

    Always true for a valid concave instance; exposed so hand-built
    non-concave coefficient sets can be detected.
    """
    if samples < 3:
        raise ValueError(f"need at least 3 samples, got {samples}")
    x = _check_consumption(u, x)
    y = _check_consumption(u, y)
    floor = min(expected_utility(u, x), expected_utility(u, y)) - tol
    for lam in np.linspace(0.0, 1.0, samples):
        if expected_utility(u, lam * x + (1.0 - lam) * y) < floor:
            return False
    return True


@dataclass(frozen=True)
class Economy:
    """Endowment matrix (agents x goods) plus one utility per agent."""

    w: np.ndarray
    utilities: tuple[FuzzyQuadraticUtility, ...]

    def __post_init__(self):
        w = np.array(self.w, dtype=float)
        if w.ndim != 2:
            raise ValueError("endowments must be an agents-by-goods matrix")
        m, l = w.shape
        if l < 2:
            raise ValueError(f"need at least 2 goods, got {l}")
        if m < 1:
            raise ValueError("need at least one agent")
        if np.any(w < 0):
            raise ValueError("endowments must be non-negative")
        if np.any(w.sum(axis=1) <= 0):
            raise ValueError("every agent needs a positive quantity of at least one good")
        utilities = tuple(self.utilities)
        if len(utilities) != m:
            raise ValueError(f"need one utility per agent: got {len(utilities)} for {m} agents")
        for i, u in enumerate(utilities):
            if u.goods != l:
                raise ValueError(f"agent {i} utility covers {u.goods} goods, economy has {l}")
        w.flags.writeable = False
        object.__setattr__(self, "w", w)
        object.__setattr__(self, "utilities", utilities)

    @property
    def agents(self) -> int:
        return self.w.shape[0]

    @property
    def goods(self) -> int:
        return self.w.shape[1]

    def boundary_margins(self) -> np.ndarray:
        """``-b_{ih} - w_{ih}`` per agent and good; all positive in the
        regime where budget constraints bind and the closed forms apply."""
        b = np.stack([u.lin_expected for u in self.utilities])
        return -b - self.w

    def satisfies_boundary_condition(self) -> bool:
        return bool(np.all(self.boundary_margins() > 0))


def validate_price_vector(p, goods: int | None = None, tol: float = PRICE_SUM_TOL) -> np.ndarray:
    """Check non-negativity and unit sum; returns the vector as an array."""
    p = np.asarray(p, dtype=float)
    if p.ndim != 1 or (goods is not None and p.size != goods):
        raise ValueError(f"price vector has shape {p.shape}, expected ({goods},)")
    if np.any(p < 0):
        raise ValueError(f"prices must be non-negative: {p.tolist()}")
    if abs(p.sum() - 1.0) > tol:
        raise ValueError(f"prices must sum to 1, got {p.sum()!r}")
    return p


# -- individual demand -----------------------------------------------------


def demand(
    u: FuzzyQuadraticUtility,
    w_i,
    p,
    tol: float = DEMAND_TOL,
    max_iter: int = 200_000,
) -> np.ndarray:
    """Unique maximizer of the expected utility over the budget set.

    Two goods are solved in closed form by case analysis of the inner
    variational inequality on the budget line; more goods run projected
    gradient ascent (:func:`demand_projected_gradient`).
    """
    p = validate_price_vector(p, u.goods)
    w_i = np.asarray(w_i, dtype=float)
    if u.goods == 2:
        return _demand_two_goods(u, w_i, p)
    return demand_projected_gradient(u, w_i, p, tol=tol, max_iter=max_iter)


def _demand_two_goods(u: FuzzyQuadraticUtility, w_i: np.ndarray, p: np.ndarray) -> np.ndarray:
    q = u._qhat
    b = u._bhat
    peak = u.peak()
    wealth = float(p @ w_i)
    if p[0] == 0.0 or p[1] == 0.0:
        # one free good: take its parabola peak; cap the priced good by the
        # budget, which reduces to the endowment of that good
        g = 0 if p[0] > 0.0 else 1
        f = 1 - g
        x = np.zeros(2)
        x[f] = peak[f]
        x[g] = min(peak[g], wealth / p[g])
        return x
    if float(p @ peak) <= wealth:
        return peak  # satiation point affordable: budget slack
    # budget binds; optimize along x2 = (wealth - p1*x1)/p2 and clamp
    t = p[0] / p[1]
    denom = 2.0 * (q[0] + q[1] * t * t)
    x1 = (2.0 * q[1] * w_i[0] * t * t + (2.0 * q[1] * w_i[1] + b[1]) * t - b[0]) / denom
    cap = wealth / p[0]
    if x1 <= 0.0:
        return np.array([0.0, wealth / p[1]])
    if x1 >= cap:
        return np.array([cap, 0.0])
    return np.array([x1, (wealth - p[0] * x1) / p[1]])


def demand_projected_gradient(
    u: FuzzyQuadraticUtility,
    w_i,
    p,
    tol: float = DEMAND_TOL,
    start=None,
    max_iter: int = 200_000,
) -> np.ndarray:
    """Projected gradient ascent on the expected utility over the budget set.

    Strong concavity gives a unique fixed point; the iteration stops when
    the fixed-point (KKT) residual ``|x - P(x + s*grad)| / s`` drops to
    ``tol``.  Works for any number of goods, so it doubles as an
    independent route for the two-good closed form.
    """
    p = validate_price_vector(p, u.goods)
    w_i = np.asarray(w_i, dtype=float)
    wealth = float(p @ w_i)
    step = 1.0 / (2.0 * float(u._qhat.max()))
    x = np.maximum(w_i, 0.0) if start is None else np.asarray(start, dtype=float)
    x = project_budget(x, p, wealth)
    residual = math.inf
    for _ in range(max_iter):
        y = project_budget(x + step * expected_utility_gradient(u, x), p, wealth)
        residual = float(np.abs(y - x).max()) / step
        x = y
        if residual <= tol:
            return x
    raise ConvergenceError("projected gradient demand did not converge", residual)


def excess_demand(econ: Economy, p, tol: float = DEMAND_TOL) -> np.ndarray:
    """Aggregate demand minus aggregate endowment, per good."""
    p = validate_price_vector(p, econ.goods)
    total = np.zeros(econ.goods)
    for i in range(econ.agents):
        total += demand(econ.utilities[i], econ.w[i], p, tol=tol)
    return total - econ.w.sum(axis=0)


# -- equilibrium -------------------------------------------------------------


@dataclass(frozen=True)
class SolverConfig:
    """Equilibrium solver settings;  ``tol`` bounds the clearing and
    complementarity residuals, ``demand_tol`` the inner KKT residual."""

    method: str = "ascent"
    tol: float = EQUILIBRIUM_TOL
    demand_tol: float = DEMAND_TOL
    max_iter: int = 100_000
    initial_step: float | None = None
    seed: int = 0

    def __post_init__(self):
        if self.method not in ("ascent", "bisect", "closed-form"):
            raise ValueError(f"unknown method {self.method!r}")
        if self.tol <= 0 or self.demand_tol <= 0:
            raise ValueError("tolerances must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be at least 1")


@dataclass(frozen=True)
class EquilibriumReport:
    """Price, allocation, excess demand and the residuals of the three
    equilibrium conditions; ``converged`` means every residual is within
    ``tol``."""

    p: tuple[float, ...]
    x: tuple[tuple[float, ...], ...]
    z: tuple[float, ...]
    optimality_gaps: tuple[float, ...]
    budget_residuals: tuple[float, ...]
    simplex_residual: float
    max_excess: float
    complementarity: float
    iterations: int
    converged: bool
    method: str
    tol: float
    corner_checks: tuple[tuple[tuple[float, ...], float], ...] = ()

    def to_dict(self) -> dict:
        return {
            "p": list(self.p),
            "x": [list(row) for row in self.x],
            "z": list(self.z),
            "optimality_gaps": list(self.optimality_gaps),
            "budget_residuals": list(self.budget_residuals),
            "simplex_residual": self.simplex_residual,
            "max_excess": self.max_excess,
            "complementarity": self.complementarity,
            "iterations": self.iterations,
            "converged": self.converged,
            "method": self.method,
            "tol": self.tol,
            "corner_checks": [[list(price), gap] for price, gap in self.corner_checks],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "EquilibriumReport":
        return cls(
            p=tuple(d["p"]),
            x=tuple(tuple(row) for row in d["x"]),
            z=tuple(d["z"]),
            optimality_gaps=tuple(d["optimality_gaps"]),
            budget_residuals=tuple(d["budget_residuals"]),
            simplex_residual=d["simplex_residual"],
            max_excess=d["max_excess"],
            complementarity=d["complementarity"],
            iterations=d["iterations"],
            converged=d["converged"],
            method=d["method"],
            tol=d["tol"],
            corner_checks=tuple(
                (tuple(price), gap) for price, gap in d.get("corner_checks", [])
            ),
        )


def _corner_checks(econ: Economy, tol: float):
    """Excess-demand gap z1 - z2 at the two corner prices (two goods only).

    A positive gap at p=(0,1) and a negative gap at p=(1,0) contradict the
    corner being a price-inequality solution, ruling both corners out.
    """
    if econ.goods != 2:
        return ()
    checks = []
    for corner in (np.array([0.0, 1.0]), np.array([1.0, 0.0])):
        z = excess_demand(econ, corner, tol)
        checks.append(((float(corner[0]), float(corner[1])), float(z[0] - z[1])))
    return tuple(checks)


def _assemble_report(
    econ: Economy,
    p: np.ndarray,
    x: np.ndarray,
    iterations: int,
    method: str,
    tol: float,
    demand_tol: float,
    corner_checks=(),
) -> EquilibriumReport:
    z = x.sum(axis=0) - econ.w.sum(axis=0)
    gaps = []
    budgets = []
    for i in range(econ.agents):
        best = demand(econ.utilities[i], econ.w[i], p, tol=demand_tol)
        gaps.append(expected_utility(econ.utilities[i], best) - expected_utility(econ.utilities[i], x[i]))
        budgets.append(float(p @ (x[i] - econ.w[i])))
    simplex_residual = abs(float(p.sum()) - 1.0) + float(np.maximum(-p, 0.0).sum())
    complementarity = float(p @ z)
    max_excess = float(z.max())
    converged = (
        max(gaps) <= tol
        and max(budgets) <= tol
        and simplex_residual <= tol
        and max_excess <= tol
        and abs(complementarity) <= tol
    )
    return EquilibriumReport(
        p=tuple(float(v) for v in p),
        x=tuple(tuple(float(v) for v in row) for row in x),
        z=tuple(float(v) for v in z),
        optimality_gaps=tuple(float(g) for g in gaps),
        budget_residuals=tuple(float(b) for b in budgets),
        simplex_residual=simplex_residual,
        max_excess=max_excess,
        complementarity=complementarity,
        iterations=iterations,
        converged=converged,
        method=method,
        tol=tol,
        corner_checks=corner_checks,
    )


def verify_equilibrium(
    econ: Economy, p, x, tol: float = EQUILIBRIUM_TOL, demand_tol: float = DEMAND_TOL
) -> EquilibriumReport:
    """Residuals of conditions (1)-(3) for a candidate ``(p, x)``.

    Condition (1) is measured as the per-agent gap to the budget-set
    optimum plus budget feasibility, (2) as the simplex residual, (3) as
    the largest excess demand and the complementarity ``<p, z>``.
    """
    p = validate_price_vector(p, econ.goods)
    x = np.asarray(x, dtype=float)
    if x.shape != econ.w.shape:
        raise ValueError(f"allocation has shape {x.shape}, expected {econ.w.shape}")
    return _assemble_report(
        econ, p, x, 0, "verify", tol, demand_tol, _corner_checks(econ, demand_tol)
    )


def solve_equilibrium(econ: Economy, cfg: SolverConfig | None = None) -> EquilibriumReport:
    """Find a competitive equilibrium via the price/demand decomposition.

    ``ascent``      projected excess-demand ascent on the simplex with an
                    adaptive step (any number of goods);
    ``bisect``      two goods: bisection on the excess-demand gap
                    ``z1 - z2 = 0`` along the price segment;
    ``closed-form`` the two-agent, two-good quadratic instance solved
                    analytically.

    Never raises on non-convergence; the report carries the best iterate
    with ``converged=False``.
    """
    cfg = cfg or SolverConfig()
    if not econ.satisfies_boundary_condition() and cfg.method != "closed-form":
        warnings.warn(
            "boundary gradient condition -b > w fails for some agent/good; "
            "iterative solve may sit at a corner",
            RuntimeWarning,
            stacklevel=2,
        )
    if cfg.method == "closed-form":
        p, x, iterations = _solve_closed_form(econ)
    elif cfg.method == "bisect":
        p, x, iterations = _solve_bisect(econ, cfg)
    else:
        p, x, iterations = _solve_ascent(econ, cfg)
    return _assemble_report(
        econ,
        p,
        x,
        iterations,
        cfg.method,
        cfg.tol,
        cfg.demand_tol,
        _corner_checks(econ, cfg.demand_tol),
    )


def _all_demands(econ: Economy, p: np.ndarray, tol: float) -> np.ndarray:
    return np.stack([demand(econ.utilities[i], econ.w[i], p, tol=tol) for i in range(econ.agents)])


def _merit(p: np.ndarray, z: np.ndarray) -> float:
    """Zero exactly at an equilibrium: penalizes positive excess demand and
    non-zero value of priced negative excess."""
    over = np.maximum(z, 0.0)
    slack = p * np.minimum(z, 0.0)
    return float(over @ over + slack @ slack)


def _solve_ascent(econ: Economy, cfg: SolverConfig):
    p = np.full(econ.goods, 1.0 / econ.goods)
    x = _all_demands(econ, p, cfg.demand_tol)
    z = x.sum(axis=0) - econ.w.sum(axis=0)
    merit = _merit(p, z)
    tau = cfg.initial_step if cfg.initial_step else 0.25 / max(1.0, float(np.abs(z).max()))
    iterations = 0
    for iterations in range(1, cfg.max_iter + 1):
        if z.max() <= cfg.tol and abs(float(p @ z)) <= cfg.tol:
            break
        candidate = project_simplex(p + tau * z)
        xc = _all_demands(econ, candidate, cfg.demand_tol)
        zc = xc.sum(axis=0) - econ.w.sum(axis=0)
        mc = _merit(candidate, zc)
        if mc < merit:
            p, x, z, merit = candidate, xc, zc, mc
            tau *= 1.25
        else:
            tau *= 0.5
            if tau < 1e-18:
                break
    return p, x, iterations


def _solve_bisect(econ: Economy, cfg: SolverConfig):
    if econ.goods != 2:
        raise UnsupportedShapeError("bisection mode needs exactly 2 goods")

    evaluations = 0

    def gap(p2: float) -> float:
        nonlocal evaluations
        evaluations += 1
        z = excess_demand(econ, np.array([1.0 - p2, p2]), cfg.demand_tol)
        return float(z[0] - z[1])

    lo, hi = 0.0, 1.0
    glo, ghi = gap(lo), gap(hi)
    if glo > 0.0 or ghi < 0.0:
        lo, hi, found = _scan_for_bracket(gap, lo, hi)
        if not found:
            p = np.array([1.0 - lo, lo])
            return p, _all_demands(econ, p, cfg.demand_tol), evaluations
    while hi - lo > 1e-15:
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        g = gap(mid)
        if g == 0.0:
            lo = hi = mid
            break
        if g < 0.0:
            lo = mid
        else:
            hi = mid
    p2 = 0.5 * (lo + hi)
    p = np.array([1.0 - p2, p2])
    return p, _all_demands(econ, p, cfg.demand_tol), evaluations


def _scan_for_bracket(gap, lo, hi, points: int = 1025):
    """Coarse scan for a sign change; returns (lo, hi, found)."""
    grid = np.linspace(lo, hi, points)
    prev_t, prev_g = grid[0], gap(grid[0])
    for t in grid[1:]:
        g = gap(t)
        if prev_g <= 0.0 <= g:
            return prev_t, t, True
        prev_t, prev_g = t, g
    return lo, hi, False


def _require_reference_shape(econ: Economy, what: str):
    if econ.goods != 2 or econ.agents != 2:
        raise UnsupportedShapeError(f"{what} needs a 2-agent, 2-good economy")
    for i, u in enumerate(econ.utilities):
        if np.any(np.abs(u.quad_expected - 0.5) > 1e-12):
            raise UnsupportedShapeError(
                f"{what} needs expected quadratic coefficients of 1/2 (agent {i} differs)"
            )
    if not econ.satisfies_boundary_condition():
        raise UnsupportedShapeError(f"{what} needs -b > w for every agent and good")


def _closed_form_price(econ: Economy):
    """Aggregate sums A, B and the interior equilibrium price they induce."""
    b = np.stack([u.lin_expected for u in econ.utilities])
    A = float((econ.w[:, 0] + b[:, 0]).sum())
    B = float((econ.w[:, 1] + b[:, 1]).sum())
    p = np.array([A / (A + B), B / (A + B)])
    return A, B, b, p


def _solve_closed_form(econ: Economy):
    _require_reference_shape(econ, "closed-form solve")
    A, B, b, p = _closed_form_price(econ)
    t = p[0] / p[1]
    x = np.empty((2, 2))
    for i in range(2):
        # interior regime of the inner inequality must hold at the
        # equilibrium price for the analytic allocation to be valid
        bracket1 = econ.w[i, 0] * t * t + (econ.w[i, 1] + b[i, 1]) * t - b[i, 0]
        bracket2 = econ.w[i, 1] / (t * t) + (econ.w[i, 0] + b[i, 0]) / t - b[i, 1]
        if bracket1 < 0 or bracket2 < 0:
            raise UnsupportedShapeError(
                f"agent {i} demand leaves the interior regime at the closed-form price"
            )
        d = A * A + B * B
        x[i, 0] = (econ.w[i, 0] * A * A + (econ.w[i, 1] + b[i, 1]) * A * B - b[i, 0] * B * B) / d
        x[i, 1] = (econ.w[i, 1] * B * B + (econ.w[i, 0] + b[i, 0]) * A * B - b[i, 1] * A * A) / d
    return p, x, 0


def utility_gain_closed_form(econ: Economy, agent: int) -> float:
    """Analytic expected-utility gain of trading from the endowment to the
    equilibrium bundle: ``((w1+b1)B - (w2+b2)A)^2 / (2(A^2+B^2))``.

    Non-negative by construction; zero exactly when the endowment already
    is the agent's equilibrium demand.
    """
    _require_reference_shape(econ, "closed-form utility gain")
    if not 0 <= agent < econ.agents:
        raise IndexError(f"agent index {agent} out of range")
    A, B, b, _ = _closed_form_price(econ)
    num = (econ.w[agent, 0] + b[agent, 0]) * B - (econ.w[agent, 1] + b[agent, 1]) * A
    return float(num * num / (2.0 * (A * A + B * B)))
