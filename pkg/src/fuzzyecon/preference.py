"""Fuzzy preference relations over finite reference sets.

A relation assigns a fuzzy number ``mu[x][y]`` to every ordered pair of
elements; ``x`` is weakly preferred to ``y`` when ``mu[x][y]`` is not
inferior to ``mu[y][x]`` under the expected-value order.  Consistency
(transitivity of weak preference) is checked, never assumed; consistent
relations quotient into indifference classes, which yield an
order-preserving utility by rank.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key

from .fuzzy import DEFAULT_TOL, FuzzyNumber, crisp, to_fraction

__all__ = [
    "ConsistencyError",
    "FuzzyRelation",
    "PreferenceOutcome",
    "Quotient",
    "build_utility",
    "is_consistent",
    "prefers",
    "quotient",
]


class PreferenceOutcome(enum.Enum):
    FUZZILY_PREFERRED = "fuzzily_preferred"
    FUZZILY_INDIFFERENT = "fuzzily_indifferent"
    FUZZILY_DISPREFERRED = "fuzzily_dispreferred"


class ConsistencyError(ValueError):
    """A relation fails weak-preference transitivity.

    ``witness`` is the lexicographically first triple ``(x, y, z)`` with
    ``x >= y`` and ``y >= z`` but not ``x >= z``.
    """

    def __init__(self, witness: tuple[int, int, int], elements: tuple[str, ...]):
        x, y, z = witness
        self.witness = witness
        super().__init__(
            f"inconsistent relation: {elements[x]} >= {elements[y]} and "
            f"{elements[y]} >= {elements[z]} but not {elements[x]} >= {elements[z]}"
        )


@dataclass(frozen=True)
class FuzzyRelation:
    """Finite labelled reference set with a square matrix of fuzzy grades."""

    elements: tuple[str, ...]
    mu: tuple[tuple[FuzzyNumber, ...], ...]

    def __post_init__(self):
        elements = tuple(str(e) for e in self.elements)
        n = len(elements)
        if n < 1:
            raise ValueError("relation needs at least one element")
        mu = tuple(tuple(row) for row in self.mu)
        if len(mu) != n or any(len(row) != n for row in mu):
            raise ValueError(f"mu must be a {n}x{n} matrix of fuzzy numbers")
        for row in mu:
            for entry in row:
                if not isinstance(entry, FuzzyNumber):
                    raise ValueError(f"mu entries must be FuzzyNumber, got {type(entry).__name__}")
        object.__setattr__(self, "elements", elements)
        object.__setattr__(self, "mu", mu)

    def __len__(self):
        return len(self.elements)


@dataclass(frozen=True)
class Quotient:
    """Indifference classes as index sets, ascending in the induced order."""

    classes: tuple[tuple[int, ...], ...]

    def rank_of(self, index: int) -> int:
        for rank, cls in enumerate(self.classes):
            if index in cls:
                return rank
        raise IndexError(f"element index {index} not in quotient")


def _check_index(rel: FuzzyRelation, idx: int):
    if not 0 <= idx < len(rel):
        raise IndexError(f"element index {idx} out of range for {len(rel)} elements")


def prefers(rel: FuzzyRelation, x: int, y: int, tol: float = DEFAULT_TOL) -> PreferenceOutcome:
    """Compare ``mu[x][y]`` against ``mu[y][x]`` under the expected-value order."""
    _check_index(rel, x)
    _check_index(rel, y)
    band = to_fraction(tol)
    diff = rel.mu[x][y].expected_value_exact() - rel.mu[y][x].expected_value_exact()
    if diff > band:
        return PreferenceOutcome.FUZZILY_PREFERRED
    if diff < -band:
        return PreferenceOutcome.FUZZILY_DISPREFERRED
    return PreferenceOutcome.FUZZILY_INDIFFERENT


def _weak_matrix(rel: FuzzyRelation, tol: float) -> list[list[bool]]:
    """weak[x][y] is True when x is weakly preferred to y."""
    n = len(rel)
    e: list[list[Fraction]] = [
        [rel.mu[x][y].expected_value_exact() for y in range(n)] for x in range(n)
    ]
    band = to_fraction(tol)
    return [[e[x][y] >= e[y][x] - band for y in range(n)] for x in range(n)]


def is_consistent(rel: FuzzyRelation, tol: float = DEFAULT_TOL):
    """Check transitivity of weak preference over all triples.

    Returns ``(True, None)`` or ``(False, witness)`` with the first violating
    triple in lexicographic order.
    """
    n = len(rel)
    weak = _weak_matrix(rel, tol)
    for x in range(n):
        for y in range(n):
            if not weak[x][y]:
                continue
            for z in range(n):
                if weak[y][z] and not weak[x][z]:
                    return False, (x, y, z)
    return True, None


def quotient(rel: FuzzyRelation, tol: float = DEFAULT_TOL) -> Quotient:
    """Partition into indifference classes, ascending by preference.

    Raises :class:`ConsistencyError` (carrying the witness triple) when the
    relation is not consistent; consistency makes indifference transitive,
    so grouping adjacent elements after sorting is sound.
    """
    ok, witness = is_consistent(rel, tol)
    if not ok:
        raise ConsistencyError(witness, rel.elements)

    def cmp(a: int, b: int) -> int:
        out = prefers(rel, a, b, tol)
        if out is PreferenceOutcome.FUZZILY_PREFERRED:
            return 1
        if out is PreferenceOutcome.FUZZILY_DISPREFERRED:
            return -1
        return 0

    order = sorted(range(len(rel)), key=cmp_to_key(cmp))
    classes: list[list[int]] = [[order[0]]]
    for idx in order[1:]:
        if prefers(rel, idx, classes[-1][0], tol) is PreferenceOutcome.FUZZILY_PREFERRED:
            classes.append([idx])
        else:
            classes[-1].append(idx)
    return Quotient(tuple(tuple(sorted(cls)) for cls in classes))


def build_utility(rel: FuzzyRelation, tol: float = DEFAULT_TOL) -> tuple[FuzzyNumber, ...]:
    """Order-preserving utility: crisp class rank (0, 1, 2, ...) per element.

    Elements of the same indifference class share a value, and comparing
    utilities reproduces the pairwise preference outcomes exactly.
    """
    q = quotient(rel, tol)
    ranks = [0] * len(rel)
    for rank, cls in enumerate(q.classes):
        for idx in cls:
            ranks[idx] = rank
    return tuple(crisp(r) for r in ranks)
