import itertools
import math

import pytest

from nlgames.errors import AlphabetError, CapError, ParameterError
from nlgames.games import chsh_game, hardy_game, lifted_string_game, verify_lifted
from nlgames.lifting import (
    CHSH_QUANTUM_VALUE,
    binomial_tail,
    check_dichotomy,
    dimension_lower_bound,
    lifted_success_exact,
    make_lifted,
    rejection_sets,
)
from nlgames.quantum import plan_for_error


def enum_tail(n, k, p):
    """Oracle: enumerate every win/lose sequence of length n."""
    total = 0.0
    for seq in itertools.product((0, 1), repeat=n):
        wins = sum(seq)
        if wins >= k:
            total += p**wins * (1.0 - p) ** (n - wins)
    return total


# ---------------------------------------------------------------------------
# Configuration
# ---------------------------------------------------------------------------

def test_make_lifted_uniform():
    cfg = make_lifted(chsh_game(), 0.05, CHSH_QUANTUM_VALUE)
    assert cfg.uniform
    assert cfg.warning is None
    for x in ("0", "1"):
        for y in ("0", "1"):
            assert cfg.thresholds[(x, y)] == pytest.approx(0.8535533906, abs=1e-9)
            assert cfg.cutoff(x, y) == pytest.approx(0.8285533906, abs=1e-9)


def test_make_lifted_warns_above_chsh_gap():
    cfg = make_lifted(chsh_game(), 0.2, CHSH_QUANTUM_VALUE)
    assert cfg.warning is not None


def test_make_lifted_per_pair_map():
    table = {("0", "0"): 0.9, ("0", "1"): 0.8, ("1", "0"): 0.85, ("1", "1"): 0.7}
    cfg = make_lifted(chsh_game(), 0.1, table)
    assert not cfg.uniform
    assert cfg.thresholds == table


def test_make_lifted_rejects_bad_delta():
    with pytest.raises(ParameterError):
        make_lifted(chsh_game(), 0.0, 0.8)
    with pytest.raises(ParameterError):
        make_lifted(chsh_game(), -0.1, 0.8)


def test_make_lifted_rejects_wrong_question_count():
    from fractions import Fraction

    import numpy as np

    from nlgames.errors import ShapeError
    from nlgames.games import GameSpec

    three_q = GameSpec(
        questions_a=("0", "1", "2"),
        questions_b=("0", "1"),
        answers_a=("0", "1"),
        answers_b=("0", "1"),
        pi={(x, y): Fraction(1, 6) for x in ("0", "1", "2") for y in ("0", "1")},
        wins={
            (x, y): np.ones((2, 2), dtype=bool)
            for x in ("0", "1", "2")
            for y in ("0", "1")
        },
    )
    with pytest.raises(ShapeError):
        make_lifted(three_q, 0.05, 0.8)


# ---------------------------------------------------------------------------
# Exact success probabilities
# ---------------------------------------------------------------------------

def test_binomial_tail_matches_enumeration():
    for n in (1, 3, 4, 7):
        for p in (0.0, 0.3, 0.85, 1.0):
            for k in range(0, n + 2):
                assert binomial_tail(n, k, p) == pytest.approx(
                    enum_tail(n, k, p), abs=1e-12
                )


def test_lifted_success_single_round():
    cfg = make_lifted(chsh_game(), 0.05, 0.8284)  # cutoff 0.8034
    assert lifted_success_exact(1, 0.8284, cfg) == pytest.approx(0.8284, abs=1e-12)


def test_lifted_success_needs_all_four():
    # cutoff 0.8 over n=4 positions means at least ceil(3.2) = 4 wins
    cfg = make_lifted(chsh_game(), 0.05, 0.825)
    assert lifted_success_exact(4, 0.85, cfg) == pytest.approx(0.52200625, abs=1e-12)


def test_lifted_success_certain_win():
    cfg = make_lifted(chsh_game(), 0.05, CHSH_QUANTUM_VALUE)
    for n in (1, 5, 40):
        assert lifted_success_exact(n, 1.0, cfg) == pytest.approx(1.0, abs=1e-12)


def test_lifted_success_matches_enumeration_oracle():
    cfg = make_lifted(chsh_game(), 0.05, CHSH_QUANTUM_VALUE)
    cutoff = cfg.cutoff("0", "0")
    for n in (2, 5, 9, 12):
        p = 0.87
        expected = enum_tail(n, math.ceil(n * cutoff), p)
        assert lifted_success_exact(n, p, cfg) == pytest.approx(expected, abs=1e-12)


def test_lifted_success_grows_with_copies_above_cutoff():
    cfg = make_lifted(chsh_game(), 0.05, CHSH_QUANTUM_VALUE)
    cutoff = cfg.cutoff("0", "0")
    for bump in (0.05, 0.10):
        p = cutoff + bump
        assert lifted_success_exact(64, p, cfg) > lifted_success_exact(8, p, cfg)


def test_lifted_success_per_pair_map():
    cfg = make_lifted(chsh_game(), 0.05, CHSH_QUANTUM_VALUE)
    per_pair = {
        ("0", "0"): 1.0,
        ("0", "1"): 1.0,
        ("1", "0"): 1.0,
        ("1", "1"): 0.0,
    }
    assert lifted_success_exact(3, per_pair, cfg) == pytest.approx(0.75, abs=1e-12)


# ---------------------------------------------------------------------------
# Rejection sets
# ---------------------------------------------------------------------------

def test_rejection_sets_hardy_01():
    sets = rejection_sets(hardy_game(), "0", "1")
    assert sets.base == frozenset({"1"})
    assert sets.alice_primed == frozenset()
    assert sets.bob_primed == frozenset({"0"})
    assert sets.both_primed == frozenset({"1"})


def test_rejection_sets_hardy_00():
    sets = rejection_sets(hardy_game(), "0", "0")
    assert sets.base == frozenset({"1"})
    assert sets.alice_primed == frozenset({"0"})
    assert sets.bob_primed == frozenset({"0"})
    assert sets.both_primed == frozenset()


def test_rejection_sets_hardy_s_without_zero():
    # a common zero is impossible, so every answer is rejected on the base pair
    for t in ("0", "1"):
        sets = rejection_sets(hardy_game(), "1", t)
        assert sets.base == frozenset({"0", "1"})


def test_rejection_sets_consistency_with_verifier():
    game = hardy_game()
    xu, xp = game.questions_a
    yu, yp = game.questions_b
    for s, t in itertools.product(["00", "01", "10", "11"], repeat=2):
        sets = rejection_sets(game, s, t)
        for word in itertools.product("01", repeat=2):
            u = "".join(word)
            assert (u in sets.base) == (not game.verify(s, u, xu, yu))
            assert (u in sets.alice_primed) == (not game.verify(t, u, xp, yu))
            assert (u in sets.bob_primed) == (not game.verify(s, u, xu, yp))
            assert (u in sets.both_primed) == (not game.verify(t, u, xp, yp))


def test_rejection_sets_input_checks():
    game = hardy_game()
    with pytest.raises(ParameterError):
        rejection_sets(game, "0", "00")
    with pytest.raises(ParameterError):
        rejection_sets(game, "", "")
    with pytest.raises(AlphabetError):
        rejection_sets(game, "2", "0")
    with pytest.raises(CapError):
        rejection_sets(game, "0" * 25, "1" * 25)


# ---------------------------------------------------------------------------
# Dichotomy
# ---------------------------------------------------------------------------

def test_dichotomy_hardy_branch_examples():
    report = check_dichotomy(hardy_game(), 1)
    branches = {(e.s, e.t): e.branch for e in report.entries}
    assert branches[("0", "1")] == "primed"
    assert branches[("0", "0")] == "unprimed"
    assert report.overall


def test_dichotomy_hardy_up_to_3():
    report = check_dichotomy(hardy_game(), 3)
    assert report.overall
    assert report.pairs_checked == 4 + 16 + 64
    assert report.branch_counts()["neither"] == 0


def test_dichotomy_chsh_lift_up_to_3():
    cfg = make_lifted(chsh_game(), 0.05, CHSH_QUANTUM_VALUE)
    report = check_dichotomy(lifted_string_game(cfg, "chsh-lift"), 3)
    assert report.overall
    assert report.branch_counts()["neither"] == 0


def test_dichotomy_can_fail_when_everything_accepted():
    # thresholds so low that nothing is ever rejected: no union can be full
    cfg = make_lifted(chsh_game(), 0.2, 0.05)
    report = check_dichotomy(lifted_string_game(cfg, "loose"), 1)
    assert not report.overall
    assert report.branch_counts()["neither"] == report.pairs_checked


# ---------------------------------------------------------------------------
# Witness bounds
# ---------------------------------------------------------------------------

@pytest.mark.parametrize(
    "epsilon,expected",
    [(1e-4, 7), (1.0 / 256.0, 1), (1e-6, 63), (1e-2, 1), (1e-3, 2)],
)
def test_dimension_lower_bound(epsilon, expected):
    report = dimension_lower_bound(epsilon)
    assert report.dim_lower_bound == expected
    assert "1/sqrt" in report.answer_count_note.replace("(", "").replace(")", "") or (
        "sqrt" in report.answer_count_note
    )


def test_dimension_lower_bound_range():
    with pytest.raises(ParameterError):
        dimension_lower_bound(0.0)
    with pytest.raises(ParameterError):
        dimension_lower_bound(1.5)


def test_plan_dominates_lower_bound():
    for epsilon in (1e-2, 1e-3, 1e-4):
        plan = plan_for_error(epsilon)
        witness = dimension_lower_bound(epsilon)
        assert witness.dim_lower_bound <= plan.local_dim


def test_lifted_verifier_agrees_with_position_count():
    # independent recount of winning positions against the verifier decision
    import numpy as np

    cfg = make_lifted(chsh_game(), 0.05, CHSH_QUANTUM_VALUE)
    rng = np.random.default_rng(23)
    for _ in range(200):
        n = int(rng.integers(1, 9))
        a = "".join(rng.choice(["0", "1"], size=n))
        b = "".join(rng.choice(["0", "1"], size=n))
        x = str(rng.integers(0, 2))
        y = str(rng.integers(0, 2))
        wins = sum(
            1
            for ca, cb in zip(a, b)
            if (int(ca) ^ int(cb)) == (int(x) & int(y))
        )
        expected = wins / n >= cfg.thresholds[(x, y)] - cfg.delta / 2.0
        assert verify_lifted(cfg, a, b, x, y) == expected
