"""Fuzzy-number arithmetic, expected values and the total order."""

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import quadrature_expected, random_fuzzy, trap
from fuzzyecon import (
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

# -- constructors ------------------------------------------------------------


def test_from_trapezoid_triangular():
    f = trap(0, 1, 1, 2)
    assert f.levels == ((Fraction(0), Fraction(0), Fraction(2)),
                        (Fraction(1), Fraction(1), Fraction(1)))


def test_from_trapezoid_halves():
    f = trap(0, "1/2", "1/2", 1)
    assert f.support() == (0.0, 1.0)
    assert f.core() == (0.5, 0.5)
    assert f.expected_value_exact() == Fraction(1, 2)


def test_trapezoid_ordering_violation():
    with pytest.raises(InvalidFuzzyNumberError):
        Trapezoid(1, 0, 2, 3)


def test_crisp_basics():
    assert crisp(0).expected_value() == 0.0
    assert crisp(3.5).alpha_cut(0.3) == (3.5, 3.5)
    assert compare(crisp(1), trap(0, 1, 1, 2), 1e-12) is OrderOutcome.INDIFFERENT


def test_ladder_invariant_violations():
    with pytest.raises(InvalidFuzzyNumberError):
        FuzzyNumber(((0, 0, 2),))  # missing alpha=1
    with pytest.raises(InvalidFuzzyNumberError):
        FuzzyNumber(((0, 0, 2), (0.5, 1, 1)))  # last alpha not 1
    with pytest.raises(InvalidFuzzyNumberError):
        FuzzyNumber(((0, 2, 0), (1, 1, 1)))  # lower > upper
    with pytest.raises(InvalidFuzzyNumberError):
        FuzzyNumber(((0, 0, 2), (1, -1, 1)))  # nesting broken
    with pytest.raises(InvalidFuzzyNumberError):
        FuzzyNumber(((0, 0, 2), (1, 1, 1), (1, 1, 1)))  # alphas not increasing


# -- alpha cuts ----------------------------------------------------------------


def test_alpha_cut_midpoint():
    assert trap(0, 1, 1, 2).alpha_cut(0.5) == (0.5, 1.5)


def test_alpha_cut_collapsed_core():
    assert trap(0, "1/2", "1/2", 1).alpha_cut(1) == (0.5, 0.5)


def test_alpha_cut_degenerate():
    assert crisp(2).alpha_cut(0.3) == (2.0, 2.0)


def test_alpha_cut_domain_error():
    with pytest.raises(ValueError):
        trap(0, 1, 1, 2).alpha_cut(1.5)
    with pytest.raises(ValueError):
        trap(0, 1, 1, 2).alpha_cut(-0.1)


# -- arithmetic ---------------------------------------------------------------


def test_add_trapezoids():
    assert add(trap(0, 1, 1, 2), trap(1, 2, 2, 3)) == trap(1, 3, 3, 5)


def test_add_crisp_shifts_every_level():
    f = FuzzyNumber(((0, 0, 4), (0.5, 1, 3), (1, 2, 2)))
    shifted = f + crisp(2.5)
    for (a, lo, hi), (b, slo, shi) in zip(f.levels, shifted.levels):
        assert a == b and slo == lo + Fraction(2.5) and shi == hi + Fraction(2.5)


def test_add_zero_identity():
    f = trap(-1, 0, 2, 5)
    assert f + crisp(0) == f


def test_scalar_mul_negative_swaps_endpoints():
    assert scalar_mul(-1, trap(0, 1, 1, 2)) == trap(-2, -1, -1, 0)


def test_scalar_mul_crisp_and_zero():
    assert scalar_mul(2, crisp(3)) == crisp(6)
    assert scalar_mul(0, trap(0, 1, 1, 2)) == crisp(0)


def test_subtract_self_has_zero_expectation_but_not_crisp():
    f = trap(0, 1, 1, 2)
    diff = f - f
    assert diff.expected_value_exact() == 0
    assert diff != crisp(0)
    assert diff.support() == (-2.0, 2.0)


def test_subtract_expectations():
    assert subtract(trap(1, 3, 3, 5), trap(0, 1, 1, 2)).expected_value() == 2.0
    assert subtract(crisp(5), crisp(2)) == crisp(3)


def test_operator_sugar():
    f = trap(0, 1, 1, 2)
    assert (2 * f).expected_value() == 2.0
    assert (f * 2) == (2 * f)
    assert (-f) == scalar_mul(-1, f)


# -- expected value -------------------------------------------------------------


def test_expected_value_trapezoid_formula():
    f = trap(-1, 0.25, 2, 3.5)
    assert f.expected_value() == pytest.approx((-1 + 0.25 + 2 + 3.5) / 4, abs=0)
    assert trap(0, "1/2", "1/2", 1).expected_value() == 0.5


def test_expected_value_linear_coefficient_family():
    for b in (-5.0, -4.0, -0.25, 0.0):
        assert trap(2 * b, b, b, 0).expected_value() == b
        assert trap(2 * b, 1.5 * b, 0.5 * b, 0).expected_value() == b


def test_expected_value_against_quadrature(rng):
    for _ in range(50):
        f = random_fuzzy(rng)
        assert f.expected_value() == pytest.approx(quadrature_expected(f), abs=1e-12)


def test_expected_value_crisp():
    assert crisp(-7.25).expected_value() == -7.25


# -- comparison and max -----------------------------------------------------------


def test_compare_examples():
    assert compare(trap(0, 1, 1, 2), crisp(1), 1e-12) is OrderOutcome.INDIFFERENT
    assert compare(crisp(2), crisp(1), 0) is OrderOutcome.SUPERIOR
    f = trap(0, 2, 3, 4)
    assert compare(f, f, 0) is OrderOutcome.INDIFFERENT
    with pytest.raises(ValueError):
        compare(f, f, -1)


def test_fuzzy_max():
    assert fuzzy_max([crisp(1), crisp(3), crisp(2)])[0] == 1
    assert fuzzy_max([trap(0, 1, 1, 2), crisp(1)])[0] == 0  # tie: lowest index
    assert fuzzy_max([crisp(-1)])[0] == 0
    with pytest.raises(ValueError):
        fuzzy_max([])


# -- property tests -----------------------------------------------------------------


def _fuzzy_strategy():
    finite = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False, allow_infinity=False)
    widths = st.floats(min_value=0, max_value=1e6, allow_nan=False)

    @st.composite
    def build(draw):
        lo = draw(finite)
        hi = lo + draw(widths)
        mids = draw(st.lists(st.floats(min_value=0.01, max_value=0.99), max_size=3))
        alphas = sorted({0.0, 1.0, *mids})
        levels = [(1.0, lo, hi)]
        for alpha in sorted(alphas[:-1], reverse=True):
            lo -= draw(widths)
            hi += draw(widths)
            levels.append((alpha, lo, hi))
        return FuzzyNumber(tuple(reversed(levels)))

    return build()


@settings(max_examples=200, deadline=None)
@given(_fuzzy_strategy(), _fuzzy_strategy())
def test_linearity_exact_at_representation(f, g):
    assert add(f, g).expected_value_exact() == f.expected_value_exact() + g.expected_value_exact()
    assert subtract(f, g).expected_value_exact() == f.expected_value_exact() - g.expected_value_exact()


@settings(max_examples=200, deadline=None)
@given(_fuzzy_strategy(), st.floats(min_value=-100, max_value=100, allow_nan=False))
def test_scalar_expectation_exact(f, lam):
    got = scalar_mul(lam, f).expected_value_exact()
    want = Fraction(lam) * f.expected_value_exact() if lam != 0 else Fraction(0)
    assert got == want


@settings(max_examples=200, deadline=None)
@given(_fuzzy_strategy(), _fuzzy_strategy())
def test_operations_preserve_nesting(f, g):
    for result in (add(f, g), subtract(f, g), scalar_mul(-2.5, f), scalar_mul(3, g)):
        levels = result.levels
        for (a0, lo0, hi0), (a1, lo1, hi1) in zip(levels, levels[1:]):
            assert a0 < a1 and lo0 <= lo1 and hi1 <= hi0 and lo1 <= hi1


@settings(max_examples=200, deadline=None)
@given(_fuzzy_strategy(), st.floats(min_value=0.0, max_value=1.0),
       st.floats(min_value=0.0, max_value=1.0))
def test_alpha_cut_nesting(f, a1, a2):
    lo_outer, hi_outer = f.alpha_cut(min(a1, a2))
    lo_inner, hi_inner = f.alpha_cut(max(a1, a2))
    assert lo_outer <= lo_inner <= hi_inner <= hi_outer


@settings(max_examples=200, deadline=None)
@given(_fuzzy_strategy(), _fuzzy_strategy(), _fuzzy_strategy())
def test_total_preorder(f, g, h):
    # completeness: every pair compares
    for a, b in ((f, g), (g, h), (f, h)):
        assert compare(a, b, 0) in (OrderOutcome.SUPERIOR, OrderOutcome.INDIFFERENT,
                                    OrderOutcome.INFERIOR)
    # transitivity of the weak order induced at tol=0
    def weak(a, b):
        return compare(a, b, 0) is not OrderOutcome.INFERIOR

    if weak(f, g) and weak(g, h):
        assert weak(f, h)
