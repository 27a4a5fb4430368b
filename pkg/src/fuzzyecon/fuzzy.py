"""Piecewise-linear fuzzy numbers with exact ladder arithmetic.

A fuzzy number is represented by a ladder of alpha-level intervals
``(alpha, lower, upper)``; between listed alphas the endpoint functions
are interpolated linearly.  Trapezoidal numbers are the two-level special
case.  Endpoints and alphas are stored as :class:`fractions.Fraction`
(floats convert exactly), so interval arithmetic, grid merging and
expected values carry no rounding error at the representation; floats
appear only at the API boundary.

The expected value ``E(f)`` is half the integral over alpha of the sum of
the cut endpoints; it is exact here because the integrand is piecewise
linear.  ``E`` induces the total order used throughout the package:
``f`` is superior to ``g`` iff ``E(f) > E(g)``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "DEFAULT_TOL",
    "FuzzyNumber",
    "InvalidFuzzyNumberError",
    "OrderOutcome",
    "Trapezoid",
    "add",
    "compare",
    "crisp",
    "from_trapezoid",
    "fuzzy_max",
    "scalar_mul",
    "subtract",
    "to_fraction",
]

#: Default tolerance for expected-value comparisons at call sites.
DEFAULT_TOL = 1e-9


class InvalidFuzzyNumberError(ValueError):
    """A level ladder or trapezoid violates its structural invariants."""


def to_fraction(x) -> Fraction:
    """Convert an int, finite float, Fraction or string like ``"1/3"`` exactly."""
    if isinstance(x, bool):
        raise InvalidFuzzyNumberError(f"not a number: {x!r}")
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, float):
        if not math.isfinite(x):
            raise InvalidFuzzyNumberError(f"non-finite value: {x!r}")
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x)
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidFuzzyNumberError(f"cannot parse number: {x!r}") from exc
    raise InvalidFuzzyNumberError(f"cannot convert {type(x).__name__} to a number")


class OrderOutcome(enum.Enum):
    """Outcome of an expected-value comparison of two fuzzy numbers."""

    SUPERIOR = "superior"
    INDIFFERENT = "indifferent"
    INFERIOR = "inferior"


@dataclass(frozen=True)
class Trapezoid:
    """Trapezoidal shape parameters ``a <= b <= c <= d``.

    Membership rises linearly on ``[a, b]``, is 1 on ``[b, c]`` and falls
    linearly on ``[c, d]``.
    """

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    def __post_init__(self):
        a, b, c, d = (to_fraction(v) for v in (self.a, self.b, self.c, self.d))
        if not (a <= b <= c <= d):
            raise InvalidFuzzyNumberError(
                f"invalid trapezoid: need a <= b <= c <= d, got "
                f"({float(a)}, {float(b)}, {float(c)}, {float(d)})"
            )
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "d", d)


@dataclass(frozen=True, repr=False)
class FuzzyNumber:
    """Fuzzy number stored as a ladder of nested alpha-level intervals.

    ``levels`` is a tuple of ``(alpha, lower, upper)`` with alphas strictly
    increasing from 0 to 1, ``lower <= upper`` at every level, and cuts
    nested (lower non-decreasing and upper non-increasing in alpha).
    Instances are immutable and hashable; all operations are pure.
    """

    levels: tuple[tuple[Fraction, Fraction, Fraction], ...]

    def __post_init__(self):
        raw = tuple(self.levels)
        if len(raw) < 2:
            raise InvalidFuzzyNumberError(
                "level ladder needs entries at alpha=0 and alpha=1"
            )
        levels = []
        for entry in raw:
            if len(entry) != 3:
                raise InvalidFuzzyNumberError(f"level entry must be (alpha, lower, upper): {entry!r}")
            alpha, lo, hi = (to_fraction(v) for v in entry)
            if not (0 <= alpha <= 1):
                raise InvalidFuzzyNumberError(f"alpha outside [0, 1]: {float(alpha)}")
            if lo > hi:
                raise InvalidFuzzyNumberError(
                    f"lower endpoint exceeds upper at alpha={float(alpha)}: "
                    f"[{float(lo)}, {float(hi)}]"
                )
            levels.append((alpha, lo, hi))
        for (a0, lo0, hi0), (a1, lo1, hi1) in zip(levels, levels[1:]):
            if a1 <= a0:
                raise InvalidFuzzyNumberError("alpha values must be strictly increasing")
            if lo1 < lo0 or hi1 > hi0:
                raise InvalidFuzzyNumberError(
                    f"alpha-cuts must be nested: cut at alpha={float(a1)} is not "
                    f"contained in cut at alpha={float(a0)}"
                )
        if levels[0][0] != 0 or levels[-1][0] != 1:
            raise InvalidFuzzyNumberError("ladder must start at alpha=0 and end at alpha=1")
        object.__setattr__(self, "levels", tuple(levels))

    # -- cuts ----------------------------------------------------------

    def _cut(self, alpha: Fraction) -> tuple[Fraction, Fraction]:
        """Exact alpha-cut; alpha must already lie in [0, 1]. Linear scan is
        fine, ladders are short."""
        for (a0, lo0, hi0), (a1, lo1, hi1) in zip(self.levels, self.levels[1:]):
            if alpha == a0:
                return lo0, hi0
            if a0 < alpha <= a1:
                if alpha == a1:
                    return lo1, hi1
                t = (alpha - a0) / (a1 - a0)
                return lo0 + t * (lo1 - lo0), hi0 + t * (hi1 - hi0)
        raise AssertionError("unreachable: alpha inside [0, 1] always brackets")

    def alpha_cut(self, alpha) -> tuple[float, float]:
        """Interval ``[A_*(alpha), A^*(alpha)]`` as floats.

        Exact at stored alphas; linear interpolation between them.
        """
        a = to_fraction(alpha)
        if not (0 <= a <= 1):
            raise ValueError(f"alpha outside [0, 1]: {alpha}")
        lo, hi = self._cut(a)
        return float(lo), float(hi)

    def support(self) -> tuple[float, float]:
        """The alpha=0 cut (closure of the support)."""
        _, lo, hi = self.levels[0]
        return float(lo), float(hi)

    def core(self) -> tuple[float, float]:
        """The alpha=1 cut."""
        _, lo, hi = self.levels[-1]
        return float(lo), float(hi)

    # -- expectation ----------------------------------------------------

    def expected_value_exact(self) -> Fraction:
        """Exact expected value: half the alpha-integral of lower+upper.

        Trapezoidal quadrature over the ladder segments; exact because the
        endpoint functions are piecewise linear.
        """
        total = Fraction(0)
        for (a0, lo0, hi0), (a1, lo1, hi1) in zip(self.levels, self.levels[1:]):
            total += (a1 - a0) * ((lo0 + hi0) + (lo1 + hi1))
        return total / 4

    def expected_value(self) -> float:
        return float(self.expected_value_exact())

    # -- arithmetic sugar -------------------------------------------------

    def __add__(self, other):
        if isinstance(other, FuzzyNumber):
            return add(self, other)
        return NotImplemented

    def __sub__(self, other):
        if isinstance(other, FuzzyNumber):
            return subtract(self, other)
        return NotImplemented

    def __mul__(self, lam):
        if isinstance(lam, FuzzyNumber):
            return NotImplemented  # fuzzy-by-fuzzy product is out of scope
        return scalar_mul(lam, self)

    def __rmul__(self, lam):
        return scalar_mul(lam, self)

    def __neg__(self):
        return scalar_mul(-1, self)

    def __repr__(self):
        lv = ", ".join(
            f"({float(a):g}, [{float(lo):g}, {float(hi):g}])" for a, lo, hi in self.levels
        )
        return f"FuzzyNumber({lv})"


# -- constructors --------------------------------------------------------


def crisp(v) -> FuzzyNumber:
    """Degenerate fuzzy number concentrated at ``v``."""
    f = to_fraction(v)
    return FuzzyNumber(((Fraction(0), f, f), (Fraction(1), f, f)))


def from_trapezoid(t: Trapezoid) -> FuzzyNumber:
    """Two-level ladder for a trapezoid: alpha=0 -> [a, d], alpha=1 -> [b, c]."""
    return FuzzyNumber(((Fraction(0), t.a, t.d), (Fraction(1), t.b, t.c)))


# -- operations ------------------------------------------------------------


def add(f: FuzzyNumber, g: FuzzyNumber) -> FuzzyNumber:
    """Level-wise interval addition on the union of the alpha grids."""
    alphas = sorted({a for a, _, _ in f.levels} | {a for a, _, _ in g.levels})
    levels = []
    for a in alphas:
        flo, fhi = f._cut(a)
        glo, ghi = g._cut(a)
        levels.append((a, flo + glo, fhi + ghi))
    return FuzzyNumber(tuple(levels))


def scalar_mul(lam, f: FuzzyNumber) -> FuzzyNumber:
    """Scale a fuzzy number; negative factors swap endpoints, zero yields crisp(0)."""
    k = to_fraction(lam)
    if k == 0:
        # the membership-level definition degenerates at 0; crisp(0) keeps
        # the operation closed and matches the expected-value limit
        return crisp(0)
    if k > 0:
        return FuzzyNumber(tuple((a, k * lo, k * hi) for a, lo, hi in f.levels))
    return FuzzyNumber(tuple((a, k * hi, k * lo) for a, lo, hi in f.levels))


def subtract(f: FuzzyNumber, g: FuzzyNumber) -> FuzzyNumber:
    """``f + (-1) * g``.  Note ``subtract(f, f)`` has expected value 0 but is
    not crisp zero in general."""
    return add(f, scalar_mul(-1, g))


def compare(f: FuzzyNumber, g: FuzzyNumber, tol: float = DEFAULT_TOL) -> OrderOutcome:
    """Expected-value total order with an indifference band of width ``tol``."""
    if tol < 0:
        raise ValueError(f"tol must be non-negative, got {tol}")
    diff = f.expected_value_exact() - g.expected_value_exact()
    band = to_fraction(tol)
    if diff > band:
        return OrderOutcome.SUPERIOR
    if diff < -band:
        return OrderOutcome.INFERIOR
    return OrderOutcome.INDIFFERENT


def fuzzy_max(items) -> tuple[int, FuzzyNumber]:
    """Index and element of maximal expected value; lowest index wins ties."""
    items = list(items)
    if not items:
        raise ValueError("fuzzy_max of an empty collection")
    best_idx = 0
    best_e = items[0].expected_value_exact()
    for idx, f in enumerate(items[1:], start=1):
        e = f.expected_value_exact()
        if e > best_e:
            best_idx, best_e = idx, e
    return best_idx, items[best_idx]
