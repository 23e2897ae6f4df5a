import math

import pytest

from nlgames.errors import ParameterError
from nlgames.games import hardy_game, verify_hardy
from nlgames.quantum import HardyParams, n_copy_strategy, optimal_angle, strategy_value
from nlgames.referee import run_referee, wilson_interval


@pytest.fixture(scope="module")
def two_copy():
    theta, _ = optimal_angle()
    return n_copy_strategy(HardyParams(theta=theta), 2)


def test_same_seed_same_report(two_copy):
    pi = hardy_game().pi
    first = run_referee(two_copy, verify_hardy, pi, 2000, seed=42)
    second = run_referee(two_copy, verify_hardy, pi, 2000, seed=42)
    assert first == second


def test_different_seed_different_counts(two_copy):
    pi = hardy_game().pi
    first = run_referee(two_copy, verify_hardy, pi, 2000, seed=1)
    second = run_referee(two_copy, verify_hardy, pi, 2000, seed=2)
    assert first.wins != second.wins


def test_single_round_rate_is_zero_or_one(two_copy):
    pi = hardy_game().pi
    report = run_referee(two_copy, verify_hardy, pi, 1, seed=5)
    assert report.rate in (0.0, 1.0)
    assert report.rounds == 1


def test_round_counts_add_up(two_copy):
    pi = hardy_game().pi
    report = run_referee(two_copy, verify_hardy, pi, 5000, seed=9)
    assert sum(p.rounds for p in report.per_pair) == 5000
    assert sum(p.wins for p in report.per_pair) == report.wins
    assert all(0 <= p.wins <= p.rounds for p in report.per_pair)


def test_rate_close_to_exact_value(two_copy):
    pi = hardy_game().pi
    exact = strategy_value(verify_hardy, two_copy, pi)
    rounds = 100_000
    report = run_referee(two_copy, verify_hardy, pi, rounds, seed=42)
    sigma = math.sqrt(exact * (1.0 - exact) / rounds)
    assert abs(report.rate - exact) <= 3.0 * sigma
    assert report.wilson_low <= exact <= report.wilson_high


def test_rounds_must_be_positive(two_copy):
    with pytest.raises(ParameterError):
        run_referee(two_copy, verify_hardy, hardy_game().pi, 0, seed=0)


def test_wilson_interval_basics():
    low, high = wilson_interval(50, 100)
    assert 0.0 <= low < 0.5 < high <= 1.0
    low0, high0 = wilson_interval(0, 100)
    assert low0 < 1e-12 and high0 < 0.1
    low1, high1 = wilson_interval(100, 100)
    assert high1 > 1.0 - 1e-12 and low1 > 0.9
    narrow = wilson_interval(5000, 10000)
    wide = wilson_interval(50, 100)
    assert narrow[1] - narrow[0] < wide[1] - wide[0]
