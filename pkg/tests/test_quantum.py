import math

import numpy as np
import pytest

from nlgames.errors import CapError, ParameterError, SchemaError
from nlgames.games import chsh_game, hardy_game, spec_verifier, verify_hardy
from nlgames.linalg import joint_distribution, validate_povm
from nlgames.quantum import (
    HardyParams,
    QuantumStrategy,
    chsh_canonical_strategy,
    error_decay_constant,
    golden_section_argmax,
    hardy_state,
    n_copy_strategy,
    n_copy_value_closed_form,
    optimal_angle,
    paradox_probability,
    plan_for_error,
    rotated_basis,
    strategy_value,
)

P_STAR = (5.0 * math.sqrt(5.0) - 11.0) / 2.0
C_STAR = (13.0 - 5.0 * math.sqrt(5.0)) / 2.0
THETA_GRID = [(k + 1) / 26.0 * math.pi / 2.0 for k in range(25)]


def projectors(basis):
    return [np.outer(basis[:, i], basis[:, i].conj()) for i in range(2)]


# ---------------------------------------------------------------------------
# State and bases
# ---------------------------------------------------------------------------

def test_state_normalized_on_grid():
    for theta in THETA_GRID:
        psi = hardy_state(HardyParams(theta=theta))
        assert abs(np.sum(np.abs(psi.amplitudes) ** 2) - 1.0) < 1e-12


def test_state_orthogonality_relations():
    for theta in (0.3, 0.666239, 1.2):
        params = HardyParams(theta=theta)
        psi = hardy_state(params)
        rot = rotated_basis(params)
        ref = params.base_basis
        v0, v0p, v1p = rot[:, 0], ref[:, 0], ref[:, 1]
        overlap = lambda u, w: np.vdot(np.kron(u, w), psi.amplitudes)
        assert abs(overlap(v0, v0p)) < 1e-12
        assert abs(overlap(v0p, v0)) < 1e-12
        assert abs(overlap(v1p, v1p)) < 1e-12


def test_state_amplitude_at_pi_over_4():
    psi = hardy_state(HardyParams(theta=math.pi / 4))
    assert psi.amplitudes[0].real == pytest.approx(1.0 / math.sqrt(3.0), abs=1e-12)


def test_rotated_basis_orthonormal_on_grid():
    for theta in THETA_GRID:
        basis = rotated_basis(HardyParams(theta=theta))
        assert np.max(np.abs(basis.T @ basis - np.eye(2))) < 1e-12


def test_custom_base_basis_keeps_relations():
    angle = 0.37
    base = np.array(
        [[math.cos(angle), -math.sin(angle)], [math.sin(angle), math.cos(angle)]]
    )
    params = HardyParams(theta=0.8, base_basis=base)
    psi = hardy_state(params)
    rot = projectors(rotated_basis(params))
    ref = projectors(params.base_basis)
    assert joint_distribution(psi, rot, ref).probs[0, 0] < 1e-12
    assert joint_distribution(psi, ref, ref).probs[1, 1] < 1e-12


def test_theta_range_enforced():
    with pytest.raises(ParameterError):
        HardyParams(theta=0.0)
    with pytest.raises(ParameterError):
        HardyParams(theta=math.pi / 2)
    with pytest.raises(ParameterError):
        paradox_probability(-1.0)


# ---------------------------------------------------------------------------
# Double-zero probability and the optimal angle
# ---------------------------------------------------------------------------

def test_paradox_probability_closed_values():
    assert paradox_probability(math.pi / 4) == pytest.approx(1.0 / 12.0, abs=1e-15)
    assert paradox_probability(1e-9) == pytest.approx(0.0, abs=1e-12)


def test_paradox_probability_matches_state_overlap():
    for theta in THETA_GRID:
        params = HardyParams(theta=theta)
        psi = hardy_state(params)
        v0 = rotated_basis(params)[:, 0]
        amp = np.vdot(np.kron(v0, v0), psi.amplitudes)
        assert abs(paradox_probability(theta) - abs(amp) ** 2) < 1e-12


def test_optimal_angle_closed_form():
    theta, p = optimal_angle()
    assert theta == pytest.approx(0.666239, abs=1e-5)
    assert p == pytest.approx(P_STAR, abs=1e-12)
    assert error_decay_constant() == pytest.approx(C_STAR, abs=1e-15)
    assert 1.0 - p == pytest.approx(C_STAR, abs=1e-12)


def test_golden_section_finds_optimal_angle():
    theta_star, _ = optimal_angle()
    found = golden_section_argmax(paradox_probability, 1e-9, math.pi / 2 - 1e-9)
    assert abs(found - theta_star) < 1e-6


# ---------------------------------------------------------------------------
# n-copy strategies
# ---------------------------------------------------------------------------

def test_single_copy_structure():
    strategy = n_copy_strategy(HardyParams(theta=0.7), 1)
    assert strategy.psi.d_a == strategy.psi.d_b == 2
    assert sorted(strategy.povms_a) == ["A", "A'"]
    assert sorted(strategy.povms_b) == ["B", "B'"]
    for povms in (strategy.povms_a, strategy.povms_b):
        total_elements = sum(len(v) for v in povms.values())
        assert total_elements == 4  # two rank-1 projectors per question
    strategy.validate()


def test_three_copy_labels_and_povms():
    strategy = n_copy_strategy(HardyParams(theta=0.5), 3)
    labels = [label for label, _ in strategy.povms_a["A"]]
    assert labels == [format(i, "03b") for i in range(8)]
    for povms in (strategy.povms_a, strategy.povms_b):
        for elements in povms.values():
            assert validate_povm([m for _, m in elements]).ok


def test_fixed_copy_forbidden_marginal():
    # on the mixed question pair the outcome (0, 0) never occurs at any copy
    for theta in (0.4, 0.666239, 1.1):
        strategy = n_copy_strategy(HardyParams(theta=theta), 3)
        mats_a = [m for _, m in strategy.povms_a["A"]]
        mats_b = [m for _, m in strategy.povms_b["B'"]]
        labels = [label for label, _ in strategy.povms_a["A"]]
        dist = joint_distribution(strategy.psi, mats_a, mats_b, validate=False)
        for copy in range(3):
            mass = sum(
                dist.probs[i, j]
                for i, la in enumerate(labels)
                for j, lb in enumerate(labels)
                if la[copy] == "0" and lb[copy] == "0"
            )
            assert mass < 1e-12


def test_dimension_cap():
    with pytest.raises(CapError):
        n_copy_strategy(HardyParams(theta=0.7), 9)


def test_value_matches_closed_form_on_grid():
    pi = hardy_game().pi
    for theta in THETA_GRID[::3]:
        for n in (1, 2, 3):
            strategy = n_copy_strategy(HardyParams(theta=theta), n)
            value = strategy_value(verify_hardy, strategy, pi)
            assert value == pytest.approx(
                n_copy_value_closed_form(theta, n), abs=1e-10
            )


def test_value_examples_at_optimal_angle():
    theta, _ = optimal_angle()
    pi = hardy_game().pi
    s1 = n_copy_strategy(HardyParams(theta=theta), 1)
    assert strategy_value(verify_hardy, s1, pi) == pytest.approx(
        1.0 - C_STAR / 4.0, abs=1e-10
    )
    assert 1.0 - C_STAR / 4.0 == pytest.approx(0.7725424859, abs=1e-10)
    s2 = n_copy_strategy(HardyParams(theta=math.pi / 4), 2)
    assert strategy_value(verify_hardy, s2, pi) == pytest.approx(
        1.0 - 0.25 * (11.0 / 12.0) ** 2, abs=1e-10
    )
    s6 = n_copy_strategy(HardyParams(theta=theta), 6)
    value6 = strategy_value(verify_hardy, s6, pi)
    assert value6 == pytest.approx(1.0 - 0.25 * C_STAR**6, abs=1e-10)
    assert value6 == pytest.approx(0.8581916883, abs=1e-9)


def test_value_invariant_under_copy_relabeling():
    # permuting the copy positions in every outcome label (same permutation
    # on both sides) must not change the value
    theta = 0.83
    pi = hardy_game().pi
    strategy = n_copy_strategy(HardyParams(theta=theta), 3)
    sigma = (2, 0, 1)

    def permute(povms):
        out = {}
        for question, elements in povms.items():
            out[question] = [
                ("".join(label[k] for k in sigma), mat) for label, mat in elements
            ]
        return out

    relabeled = QuantumStrategy(
        psi=strategy.psi,
        povms_a=permute(strategy.povms_a),
        povms_b=permute(strategy.povms_b),
    )
    v1 = strategy_value(verify_hardy, strategy, pi)
    v2 = strategy_value(verify_hardy, relabeled, pi)
    assert abs(v1 - v2) < 1e-12


def test_strategy_question_mismatch():
    strategy = n_copy_strategy(HardyParams(theta=0.7), 1)
    with pytest.raises(SchemaError):
        strategy_value(spec_verifier(chsh_game()), strategy, chsh_game().pi)


def test_chsh_canonical_value():
    game = chsh_game()
    value = strategy_value(spec_verifier(game), chsh_canonical_strategy(), game.pi)
    assert value == pytest.approx(math.cos(math.pi / 8) ** 2, abs=1e-10)


# ---------------------------------------------------------------------------
# Plans
# ---------------------------------------------------------------------------

def test_closed_form_error_decreases():
    theta, _ = optimal_angle()
    values = [n_copy_value_closed_form(theta, n) for n in range(1, 30)]
    assert all(b > a for a, b in zip(values, values[1:]))
    assert 1.0 - values[-1] < 0.25 * C_STAR**29 + 1e-15


@pytest.mark.parametrize(
    "epsilon,copies",
    [(0.25, 15), (0.01, 49), (0.9, 2), (0.95, 1), (1e-3, 74), (1e-4, 98)],
)
def test_plan_sizes(epsilon, copies):
    plan = plan_for_error(epsilon)
    assert plan.copies == copies
    assert plan.local_dim == 2**copies
    assert plan.answer_length == copies
    assert plan.closed_form_error <= epsilon


def test_plan_range():
    with pytest.raises(ParameterError):
        plan_for_error(0.0)
    with pytest.raises(ParameterError):
        plan_for_error(1.0)
