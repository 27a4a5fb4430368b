"""Non-cooperative games with fuzzy payoffs.

Payoff entries are fuzzy numbers; under the expected-value total order, a
profile is a fuzzy Nash equilibrium exactly when it is a Nash equilibrium
of the crisp game obtained by taking expected values entrywise.  Pure
equilibria are found by exhaustive deviation checks for any player count;
mixed equilibria are solved for two-player games by support enumeration
at desk scale (vertex solutions of the indifference systems).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .fuzzy import DEFAULT_TOL, FuzzyNumber

__all__ = [
    "FuzzyGame",
    "MixedProfile",
    "NashReport",
    "UnsupportedGameError",
    "expected_game",
    "find_mixed_nash_2p",
    "find_pure_nash",
    "verify_nash",
]

#: Support enumeration is exponential; cap per-player strategy counts.
MAX_MIXED_STRATEGIES = 12


class UnsupportedGameError(ValueError):
    """The requested solver does not apply to this game shape."""


@dataclass(frozen=True)
class FuzzyGame:
    """``n`` players, finite strategy sets, fuzzy payoff tensor per player.

    ``payoffs[i]`` is flattened in row-major (C) order over strategy
    profiles ``(s_0, ..., s_{n-1})``.
    """

    strategy_counts: tuple[int, ...]
    payoffs: tuple[tuple[FuzzyNumber, ...], ...]

    def __post_init__(self):
        counts = tuple(int(c) for c in self.strategy_counts)
        if not counts or any(c < 1 for c in counts):
            raise ValueError("every player needs at least one strategy")
        size = math.prod(counts)
        payoffs = tuple(tuple(t) for t in self.payoffs)
        if len(payoffs) != len(counts):
            raise ValueError(
                f"need one payoff tensor per player: got {len(payoffs)} for {len(counts)} players"
            )
        for i, tensor in enumerate(payoffs):
            if len(tensor) != size:
                raise ValueError(
                    f"player {i} payoff tensor has {len(tensor)} entries, expected {size}"
                )
            for entry in tensor:
                if not isinstance(entry, FuzzyNumber):
                    raise ValueError(f"payoffs must be FuzzyNumber, got {type(entry).__name__}")
        object.__setattr__(self, "strategy_counts", counts)
        object.__setattr__(self, "payoffs", payoffs)

    @property
    def n_players(self) -> int:
        return len(self.strategy_counts)

    def profiles(self):
        return itertools.product(*(range(c) for c in self.strategy_counts))

    def payoff(self, player: int, profile: tuple[int, ...]) -> FuzzyNumber:
        flat = int(np.ravel_multi_index(profile, self.strategy_counts))
        return self.payoffs[player][flat]


@dataclass(frozen=True)
class MixedProfile:
    """One probability vector per player."""

    strategies: tuple[tuple[float, ...], ...]

    def __post_init__(self):
        strategies = tuple(tuple(float(p) for p in vec) for vec in self.strategies)
        for i, vec in enumerate(strategies):
            if not vec:
                raise ValueError(f"player {i} has an empty strategy vector")
            if min(vec) < -1e-12:
                raise ValueError(f"player {i} has a negative probability: {min(vec)}")
            if abs(sum(vec) - 1.0) > 1e-9:
                raise ValueError(f"player {i} probabilities sum to {sum(vec)}, not 1")
        object.__setattr__(self, "strategies", strategies)


@dataclass(frozen=True)
class NashReport:
    """Per-player deviation analysis of a mixed profile."""

    payoffs: tuple[float, ...]
    best_deviation_gains: tuple[float, ...]
    is_equilibrium: bool
    tol: float


def expected_game(game: FuzzyGame) -> list[np.ndarray]:
    """Entrywise expected values, one crisp tensor per player."""
    shape = game.strategy_counts
    return [
        np.array([f.expected_value() for f in tensor], dtype=float).reshape(shape)
        for tensor in game.payoffs
    ]


def find_pure_nash(game: FuzzyGame, tol: float = DEFAULT_TOL) -> list[tuple[int, ...]]:
    """All pure profiles surviving every unilateral deviation check.

    Returned in lexicographic profile order.
    """
    tensors = expected_game(game)
    result = []
    for profile in game.profiles():
        if all(_no_profitable_pure_deviation(tensors[i], profile, i, tol) for i in range(game.n_players)):
            result.append(profile)
    return result


def _no_profitable_pure_deviation(tensor: np.ndarray, profile, player: int, tol: float) -> bool:
    idx = list(profile)
    current = tensor[tuple(idx)]
    idx[player] = slice(None)
    return bool(np.all(tensor[tuple(idx)] <= current + tol))


def _mixed_value(tensor: np.ndarray, mixes) -> float:
    v = tensor
    for vec in mixes:
        v = np.tensordot(v, vec, axes=([0], [0]))
    return float(v)


def _deviation_values(tensor: np.ndarray, mixes, player: int) -> np.ndarray:
    """Expected payoff of each pure strategy of ``player`` against the others'
    mixes.  Contract axes from the back so indices stay valid."""
    v = tensor
    for j in reversed(range(len(mixes))):
        if j == player:
            continue
        v = np.tensordot(v, np.asarray(mixes[j], dtype=float), axes=([j], [0]))
    return v


def verify_nash(game: FuzzyGame, profile: MixedProfile, tol: float = DEFAULT_TOL) -> NashReport:
    """Best pure-deviation gain per player (pure deviations suffice, mixed
    expected payoff is linear in each player's own probabilities)."""
    if len(profile.strategies) != game.n_players:
        raise ValueError(
            f"profile has {len(profile.strategies)} players, game has {game.n_players}"
        )
    for i, vec in enumerate(profile.strategies):
        if len(vec) != game.strategy_counts[i]:
            raise ValueError(
                f"player {i} profile has {len(vec)} strategies, game has {game.strategy_counts[i]}"
            )
    tensors = expected_game(game)
    mixes = [np.asarray(vec, dtype=float) for vec in profile.strategies]
    payoffs = []
    gains = []
    for i in range(game.n_players):
        value = _mixed_value(tensors[i], mixes)
        best = float(_deviation_values(tensors[i], mixes, i).max())
        payoffs.append(value)
        gains.append(best - value)
    ok = all(g <= tol for g in gains)
    return NashReport(tuple(payoffs), tuple(gains), ok, tol)


def find_mixed_nash_2p(game: FuzzyGame, tol: float = DEFAULT_TOL) -> list[MixedProfile]:
    """Support enumeration over the expected bimatrix.

    For every equal-size support pair, solve the indifference systems and
    keep solutions that are probability vectors and deviation-proof within
    ``tol``.  Singular systems (degenerate supports) are skipped, so the
    output is the set of vertex equilibria, deterministic in lexicographic
    support order.
    """
    if game.n_players != 2:
        raise UnsupportedGameError(
            f"mixed solver supports exactly 2 players, game has {game.n_players}"
        )
    m, n = game.strategy_counts
    if max(m, n) > MAX_MIXED_STRATEGIES:
        raise UnsupportedGameError(
            f"strategy counts up to {MAX_MIXED_STRATEGIES} supported, got {m}x{n}"
        )
    A, B = expected_game(game)
    found: list[MixedProfile] = []
    for k in range(1, min(m, n) + 1):
        for rows in itertools.combinations(range(m), k):
            for cols in itertools.combinations(range(n), k):
                sol = _solve_support(A, B, rows, cols, tol)
                if sol is None:
                    continue
                p, q = sol
                candidate = MixedProfile((tuple(p), tuple(q)))
                if any(_profiles_close(candidate, other) for other in found):
                    continue
                found.append(candidate)
    return found


def _solve_support(A, B, rows, cols, tol):
    k = len(rows)
    # column player's mix q makes the row player indifferent across `rows`
    q, v = _indifference_solve(A[np.ix_(rows, cols)], k)
    if q is None:
        return None
    # row player's mix p makes the column player indifferent across `cols`
    p, w = _indifference_solve(B[np.ix_(rows, cols)].T, k)
    if p is None:
        return None
    if min(q.min(), p.min()) < -tol:
        return None
    q = np.maximum(q, 0.0)
    p = np.maximum(p, 0.0)
    q /= q.sum()
    p /= p.sum()
    full_p = np.zeros(A.shape[0])
    full_q = np.zeros(A.shape[1])
    full_p[list(rows)] = p
    full_q[list(cols)] = q
    # no profitable deviation outside the supports
    if np.any(A @ full_q > v + tol):
        return None
    if np.any(full_p @ B > w + tol):
        return None
    return full_p, full_q


def _indifference_solve(block: np.ndarray, k: int):
    """Solve ``block @ x = v * 1`` with ``sum(x) = 1``; returns (x, v) or
    (None, None) when the system is singular."""
    lhs = np.zeros((k + 1, k + 1))
    lhs[:k, :k] = block
    lhs[:k, k] = -1.0
    lhs[k, :k] = 1.0
    rhs = np.zeros(k + 1)
    rhs[k] = 1.0
    try:
        sol = np.linalg.solve(lhs, rhs)
    except np.linalg.LinAlgError:
        return None, None
    if not np.all(np.isfinite(sol)):
        return None, None
    return sol[:k], float(sol[k])


def _profiles_close(a: MixedProfile, b: MixedProfile, atol: float = 1e-9) -> bool:
    return all(
        len(x) == len(y) and max(abs(u - w) for u, w in zip(x, y)) <= atol
        for x, y in zip(a.strategies, b.strategies)
    )
