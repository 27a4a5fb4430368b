"""Fuzzy games: expected reduction, pure and mixed equilibria."""

import itertools

import numpy as np
import pytest

from conftest import trap
from fuzzyecon import (
    FuzzyGame,
    MixedProfile,
    UnsupportedGameError,
    crisp,
    expected_game,
    find_mixed_nash_2p,
    find_pure_nash,
    verify_nash,
)


def game_from_values(*tensors_and_counts):
    """Build a FuzzyGame whose payoffs are crisp numbers with given values."""
    counts, tensors = tensors_and_counts[0], tensors_and_counts[1:]
    payoffs = tuple(tuple(crisp(v) for v in np.asarray(t, dtype=float).ravel())
                    for t in tensors)
    return FuzzyGame(tuple(counts), payoffs)


def prisoners_dilemma() -> FuzzyGame:
    # fuzzy payoffs with expected values (3,0 / 5,1); defect is index 1
    a = (trap(2, 3, 3, 4), trap(-1, 0, 0, 1), trap(4, 5, 5, 6), trap(0, 1, 1, 2))
    b = (trap(2, 3, 3, 4), trap(4, 5, 5, 6), trap(-1, 0, 0, 1), trap(0, 1, 1, 2))
    return FuzzyGame((2, 2), (a, b))


def matching_pennies() -> FuzzyGame:
    pos, neg = trap(0, 1, 1, 2), trap(-2, -1, -1, 0)
    return FuzzyGame((2, 2), ((pos, neg, neg, pos), (neg, pos, pos, neg)))


def battle_of_sexes() -> FuzzyGame:
    a = (trap(1, 2, 2, 3), crisp(0), crisp(0), trap(0, 1, 1, 2))
    b = (trap(0, 1, 1, 2), crisp(0), crisp(0), trap(1, 2, 2, 3))
    return FuzzyGame((2, 2), (a, b))


# -- construction and reduction ----------------------------------------------


def test_game_shape_validation():
    with pytest.raises(ValueError):
        FuzzyGame((2, 0), ((crisp(0),), (crisp(0),)))
    with pytest.raises(ValueError):
        FuzzyGame((2,), ((crisp(0),),))  # wrong tensor size


def test_expected_game_identity_on_crisp():
    g = game_from_values((2, 2), [[1, 2], [3, 4]], [[0, 0], [0, 0]])
    tensors = expected_game(g)
    assert np.array_equal(tensors[0], [[1, 2], [3, 4]])


def test_expected_game_fuzzy_entry():
    g = FuzzyGame((1, 1), ((trap(0, 1, 1, 2),), (crisp(0),)))
    assert expected_game(g)[0][0, 0] == 1.0


def test_expected_game_single_player():
    g = FuzzyGame((2,), ((crisp(0), trap(2, 3, 3, 4)),))
    assert expected_game(g)[0].tolist() == [0.0, 3.0]


# -- pure equilibria -----------------------------------------------------------


def test_pure_nash_prisoners_dilemma():
    assert find_pure_nash(prisoners_dilemma()) == [(1, 1)]


def test_pure_nash_matching_pennies_empty():
    assert find_pure_nash(matching_pennies()) == []


def test_pure_nash_trivial_game():
    g = FuzzyGame((1, 1), ((crisp(1),), (crisp(2),)))
    assert find_pure_nash(g) == [(0, 0)]


def test_pure_nash_matches_bruteforce_on_random_games(rng):
    for _ in range(25):
        n_players = int(rng.integers(1, 4))
        counts = tuple(int(c) for c in rng.integers(1, 4, size=n_players))
        tensors = [rng.integers(0, 4, size=counts).astype(float) for _ in range(n_players)]
        g = game_from_values(counts, *tensors)
        got = set(find_pure_nash(g, 1e-12))
        want = set()
        for profile in itertools.product(*(range(c) for c in counts)):
            def beats(i):
                base = tensors[i][profile]
                for s in range(counts[i]):
                    dev = list(profile)
                    dev[i] = s
                    if tensors[i][tuple(dev)] > base + 1e-12:
                        return False
                return True
            if all(beats(i) for i in range(n_players)):
                want.add(profile)
        assert got == want


def test_pure_nash_shift_invariance(rng):
    for _ in range(10):
        counts = (3, 2)
        t0 = rng.uniform(-5, 5, size=counts)
        t1 = rng.uniform(-5, 5, size=counts)
        g = game_from_values(counts, t0, t1)
        base = find_pure_nash(g)
        shifted_payoffs = (
            tuple(crisp(v + 2.5) for v in t0.ravel()),
            tuple(crisp(v) for v in t1.ravel()),
        )
        assert find_pure_nash(FuzzyGame(counts, shifted_payoffs)) == base


# -- mixed equilibria -----------------------------------------------------------


def test_mixed_profile_validation():
    with pytest.raises(ValueError):
        MixedProfile(((0.5, 0.6),))
    with pytest.raises(ValueError):
        MixedProfile(((1.5, -0.5),))
    MixedProfile(((0.25, 0.75), (1.0,)))


def test_mixed_pennies():
    sols = find_mixed_nash_2p(matching_pennies())
    assert len(sols) == 1
    p, q = sols[0].strategies
    assert p == pytest.approx((0.5, 0.5), abs=1e-12)
    assert q == pytest.approx((0.5, 0.5), abs=1e-12)


def test_mixed_contains_dominant_pure():
    sols = find_mixed_nash_2p(prisoners_dilemma())
    assert any(prof.strategies == ((0.0, 1.0), (0.0, 1.0)) for prof in sols)


def test_mixed_battle_of_sexes_three_equilibria():
    sols = find_mixed_nash_2p(battle_of_sexes())
    assert len(sols) == 3
    strategies = [prof.strategies for prof in sols]
    assert ((1.0, 0.0), (1.0, 0.0)) in strategies
    assert ((0.0, 1.0), (0.0, 1.0)) in strategies
    mixed = [s for s in strategies if 0 < s[0][0] < 1][0]
    assert mixed[0] == pytest.approx((2 / 3, 1 / 3), abs=1e-12)
    assert mixed[1] == pytest.approx((1 / 3, 2 / 3), abs=1e-12)


def test_mixed_solutions_verify(rng):
    for _ in range(20):
        counts = (int(rng.integers(2, 4)), int(rng.integers(2, 4)))
        g = game_from_values(counts, rng.normal(size=counts), rng.normal(size=counts))
        for prof in find_mixed_nash_2p(g):
            assert verify_nash(g, prof).is_equilibrium


def test_odd_number_of_equilibria_generic(rng):
    checked = 0
    for _ in range(40):
        counts = (int(rng.integers(2, 4)), int(rng.integers(2, 4)))
        g = game_from_values(counts, rng.normal(size=counts), rng.normal(size=counts))
        sols = find_mixed_nash_2p(g, 1e-9)
        # skip instances that look non-generic: near-zero support probabilities
        # or near-tied deviation payoffs
        generic = all(
            min(p for vec in prof.strategies for p in vec if p > 0) > 1e-6
            for prof in sols
        )
        if not generic:
            continue
        checked += 1
        assert len(sols) % 2 == 1, sols
    assert checked >= 20


def test_mixed_errors():
    g3 = game_from_values((2, 2, 2), *(np.zeros((2, 2, 2)) for _ in range(3)))
    with pytest.raises(UnsupportedGameError):
        find_mixed_nash_2p(g3)
    big = game_from_values((13, 2), np.zeros((13, 2)), np.zeros((13, 2)))
    with pytest.raises(UnsupportedGameError):
        find_mixed_nash_2p(big)


# -- verification ------------------------------------------------------------------


def test_verify_uniform_profile_on_dilemma_has_gains():
    report = verify_nash(prisoners_dilemma(), MixedProfile(((0.5, 0.5), (0.5, 0.5))))
    assert not report.is_equilibrium
    assert all(g > 0 for g in report.best_deviation_gains)


def test_verify_single_player_argmax():
    g = FuzzyGame((3,), ((crisp(0), crisp(5), crisp(2)),))
    report = verify_nash(g, MixedProfile(((0.0, 1.0, 0.0),)))
    assert report.is_equilibrium and report.best_deviation_gains == (0.0,)


def test_verify_dimension_mismatch():
    with pytest.raises(ValueError):
        verify_nash(matching_pennies(), MixedProfile(((1.0,), (0.5, 0.5))))
    with pytest.raises(ValueError):
        verify_nash(matching_pennies(), MixedProfile(((0.5, 0.5),)))
