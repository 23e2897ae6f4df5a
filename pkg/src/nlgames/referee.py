"""Seeded Monte Carlo referee for quantum strategies.

Rounds are simulated faithfully: question pairs are drawn from the game
distribution, outcome pairs from the exact joint measurement distribution,
and the verifier judges each round.  The full report is a deterministic
function of (strategy, verifier, pi, rounds, seed).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ParameterError
from .quantum import QuantumStrategy, pair_distribution

WILSON_Z = 1.959963984540054  # two-sided 95%


def wilson_interval(wins: int, rounds: int, z: float = WILSON_Z) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion."""
    if rounds <= 0:
        raise ParameterError("rounds must be positive")
    phat = wins / rounds
    denom = 1.0 + z * z / rounds
    center = (phat + z * z / (2 * rounds)) / denom
    half = (
        z
        * np.sqrt(phat * (1.0 - phat) / rounds + z * z / (4.0 * rounds * rounds))
        / denom
    )
    return max(0.0, center - half), min(1.0, center + half)


@dataclass(frozen=True)
class PairStats:
    x: str
    y: str
    rounds: int
    wins: int


@dataclass(frozen=True)
class RefereeReport:
    rounds: int
    wins: int
    rate: float
    wilson_low: float
    wilson_high: float
    seed: int
    per_pair: tuple


def run_referee(
    strategy: QuantumStrategy,
    verifier,
    pi: dict,
    rounds: int,
    seed: int,
) -> RefereeReport:
    """Play ``rounds`` refereed rounds and tally empirical wins."""
    if rounds < 1:
        raise ParameterError("rounds must be at least 1")
    strategy.validate()
    rng = np.random.default_rng(seed)

    pairs = list(pi.keys())
    weights = np.array([float(p) for p in pi.values()], dtype=float)
    weights = weights / weights.sum()
    counts = rng.multinomial(rounds, weights)

    per_pair = []
    total_wins = 0
    for (x, y), count in zip(pairs, counts):
        if count == 0:
            per_pair.append(PairStats(x=x, y=y, rounds=0, wins=0))
            continue
        labels_a, labels_b, dist = pair_distribution(strategy, x, y)
        flat = dist.probs.reshape(-1)
        flat = flat / flat.sum()
        win_flat = np.zeros(flat.shape, dtype=bool)
        n_b = len(labels_b)
        for i, a in enumerate(labels_a):
            for j, b in enumerate(labels_b):
                win_flat[i * n_b + j] = verifier(a, b, x, y)
        draws = rng.choice(flat.size, size=int(count), p=flat)
        wins = int(win_flat[draws].sum())
        total_wins += wins
        per_pair.append(PairStats(x=x, y=y, rounds=int(count), wins=wins))

    low, high = wilson_interval(total_wins, rounds)
    return RefereeReport(
        rounds=rounds,
        wins=total_wins,
        rate=total_wins / rounds,
        wilson_low=low,
        wilson_high=high,
        seed=seed,
        per_pair=tuple(per_pair),
    )
