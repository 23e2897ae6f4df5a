"""Toolkit for two-player nonlocal games built on Hardy's paradox.

Exact classical values by exhaustive search, exact evaluation of quantum
strategies, lifted games with threshold verifiers, rejection-set dichotomy
checks, and both sides of the entanglement-dimension tradeoff.
"""

__version__ = "0.1.0"

from .classical import DeterministicStrategy, ValueReport, classical_value, evaluate_deterministic
from .games import (
    GameSpec,
    LiftedGameConfig,
    StringGame,
    chsh_game,
    game_from_document,
    game_to_document,
    hardy_game,
    lifted_string_game,
    load_game,
    save_game,
    trivial_win_game,
    truncate,
    verify_hardy,
    verify_lifted,
)
from .lifting import (
    DichotomyReport,
    RejectionSets,
    WitnessReport,
    binomial_tail,
    check_dichotomy,
    dimension_lower_bound,
    lifted_success_exact,
    make_lifted,
    rejection_sets,
)
from .linalg import (
    JointDistribution,
    PovmReport,
    StateVector,
    joint_distribution,
    tensor_product,
    validate_povm,
)
from .quantum import (
    HardyParams,
    QuantumStrategy,
    StrategyPlan,
    chsh_canonical_strategy,
    error_decay_constant,
    hardy_state,
    n_copy_strategy,
    n_copy_value_closed_form,
    optimal_angle,
    paradox_probability,
    plan_for_error,
    rotated_basis,
    strategy_value,
)
from .referee import RefereeReport, run_referee, wilson_interval

__all__ = [
    "DeterministicStrategy",
    "DichotomyReport",
    "GameSpec",
    "HardyParams",
    "JointDistribution",
    "LiftedGameConfig",
    "PovmReport",
    "QuantumStrategy",
    "RefereeReport",
    "RejectionSets",
    "StateVector",
    "StrategyPlan",
    "StringGame",
    "ValueReport",
    "WitnessReport",
    "binomial_tail",
    "check_dichotomy",
    "chsh_canonical_strategy",
    "chsh_game",
    "classical_value",
    "dimension_lower_bound",
    "error_decay_constant",
    "evaluate_deterministic",
    "game_from_document",
    "game_to_document",
    "hardy_game",
    "hardy_state",
    "joint_distribution",
    "lifted_string_game",
    "lifted_success_exact",
    "load_game",
    "make_lifted",
    "n_copy_strategy",
    "n_copy_value_closed_form",
    "optimal_angle",
    "paradox_probability",
    "plan_for_error",
    "rejection_sets",
    "rotated_basis",
    "run_referee",
    "save_game",
    "strategy_value",
    "tensor_product",
    "trivial_win_game",
    "truncate",
    "validate_povm",
    "verify_hardy",
    "verify_lifted",
    "wilson_interval",
]
