"""Named games and strategy specs, resolved for the service and the CLI.

Builtin game names: ``hardy``, ``chsh``, ``chsh-lift``, ``trivial-always-win``.
Strategy specs: ``sn:<n>`` (the n-copy strategy, needs an angle), and
``chsh-canonical``.  Explicit games arrive as interchange documents, custom
strategies as serialized state + POVMs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import ParameterError, SchemaError
from .games import (
    GameSpec,
    LiftedGameConfig,
    StringGame,
    chsh_game,
    game_from_document,
    hardy_game,
    lifted_string_game,
    spec_verifier,
    trivial_win_game,
    truncate,
)
from .lifting import CHSH_QUANTUM_VALUE, make_lifted
from .linalg import StateVector
from .quantum import (
    HardyParams,
    QuantumStrategy,
    chsh_canonical_strategy,
    n_copy_strategy,
    n_copy_value_closed_form,
    optimal_angle,
)

BUILTIN_GAMES = ("hardy", "chsh", "chsh-lift", "trivial-always-win")


@dataclass(frozen=True, eq=False)
class ResolvedGame:
    """A game in whichever forms the requested command needs."""

    name: str
    spec: GameSpec | None          # explicit table (present when truncated/finite)
    string_game: StringGame | None # string form (hardy / lifted)
    lifted: LiftedGameConfig | None
    verifier: Callable
    pi: dict
    warning: str | None = None


def resolve_game(
    builtin: str | None = None,
    document: dict | None = None,
    max_len: int | None = None,
    delta: float | None = None,
    threshold: float | None = None,
) -> ResolvedGame:
    """Resolve a game selector into concrete game objects.

    ``max_len`` truncates string games into explicit specs; ``delta`` and
    ``threshold`` configure the lifted builtin (defaults 0.05 and the CHSH
    quantum value).
    """
    if (builtin is None) == (document is None):
        raise SchemaError("select exactly one of a builtin name or a game document")

    if document is not None:
        spec = game_from_document(document)
        return ResolvedGame(
            name="custom",
            spec=spec,
            string_game=None,
            lifted=None,
            verifier=spec_verifier(spec),
            pi=spec.pi,
        )

    if builtin == "hardy":
        game = hardy_game()
        spec = truncate(game, max_len) if max_len is not None else None
        return ResolvedGame(
            name="hardy",
            spec=spec,
            string_game=game,
            lifted=None,
            verifier=game.verify,
            pi=game.pi,
        )
    if builtin == "chsh":
        spec = chsh_game()
        return ResolvedGame(
            name="chsh",
            spec=spec,
            string_game=None,
            lifted=None,
            verifier=spec_verifier(spec),
            pi=spec.pi,
        )
    if builtin == "chsh-lift":
        cfg = make_lifted(
            chsh_game(),
            delta if delta is not None else 0.05,
            threshold if threshold is not None else CHSH_QUANTUM_VALUE,
        )
        game = lifted_string_game(cfg, name="chsh-lift")
        spec = truncate(game, max_len) if max_len is not None else None
        return ResolvedGame(
            name="chsh-lift",
            spec=spec,
            string_game=game,
            lifted=cfg,
            verifier=game.verify,
            pi=game.pi,
            warning=cfg.warning,
        )
    if builtin == "trivial-always-win":
        spec = trivial_win_game()
        return ResolvedGame(
            name="trivial-always-win",
            spec=spec,
            string_game=None,
            lifted=None,
            verifier=spec_verifier(spec),
            pi=spec.pi,
        )
    raise SchemaError(
        f"unknown builtin game {builtin!r}; known: {', '.join(BUILTIN_GAMES)}"
    )


@dataclass(frozen=True, eq=False)
class ResolvedStrategy:
    label: str
    strategy: QuantumStrategy
    closed_form: float | None  # closed-form success on Hardy's game, if known
    theta: float | None
    copies: int | None


def parse_theta(theta) -> float:
    if theta is None or theta == "opt":
        return optimal_angle()[0]
    try:
        value = float(theta)
    except (TypeError, ValueError) as exc:
        raise ParameterError(f"theta must be a number or 'opt', got {theta!r}") from exc
    return value


def resolve_strategy(
    name: str | None = None,
    theta=None,
    custom: dict | None = None,
) -> ResolvedStrategy:
    """Resolve a strategy spec (``sn:<n>``, ``chsh-canonical``, or a custom
    document) into a QuantumStrategy."""
    if (name is None) == (custom is None):
        raise SchemaError("select exactly one of a strategy name or a custom document")

    if custom is not None:
        strategy = strategy_from_document(custom)
        return ResolvedStrategy(
            label="custom", strategy=strategy, closed_form=None, theta=None, copies=None
        )

    if name == "chsh-canonical":
        return ResolvedStrategy(
            label="chsh-canonical",
            strategy=chsh_canonical_strategy(),
            closed_form=None,
            theta=None,
            copies=None,
        )
    if name.startswith("sn:"):
        try:
            copies = int(name.split(":", 1)[1])
        except ValueError as exc:
            raise SchemaError(f"bad copy count in strategy spec {name!r}") from exc
        angle = parse_theta(theta)
        strategy = n_copy_strategy(HardyParams(theta=angle), copies)
        return ResolvedStrategy(
            label=f"sn:{copies}",
            strategy=strategy,
            closed_form=n_copy_value_closed_form(angle, copies),
            theta=angle,
            copies=copies,
        )
    raise SchemaError(
        f"unknown strategy {name!r}; expected 'sn:<n>', 'chsh-canonical', "
        "or a custom strategy document"
    )


# ---------------------------------------------------------------------------
# Custom strategy documents
# ---------------------------------------------------------------------------
#
# {
#   "d_a": 2, "d_b": 2,
#   "psi": [[re, im], ...],                      # length d_a * d_b
#   "povms_a": {"<question>": [{"answer": "...", "matrix": [[[re, im], ...], ...]}]},
#   "povms_b": {...}
# }

def _complex_entry(pair) -> complex:
    if not (isinstance(pair, (list, tuple)) and len(pair) == 2):
        raise SchemaError(f"complex entries must be [re, im] pairs, got {pair!r}")
    return complex(float(pair[0]), float(pair[1]))


def _matrix_from_rows(rows) -> np.ndarray:
    return np.array([[_complex_entry(e) for e in row] for row in rows], dtype=np.complex128)


def strategy_from_document(doc: dict) -> QuantumStrategy:
    try:
        d_a = int(doc["d_a"])
        d_b = int(doc["d_b"])
        amps = np.array([_complex_entry(e) for e in doc["psi"]], dtype=np.complex128)
        povms_a_doc = doc["povms_a"]
        povms_b_doc = doc["povms_b"]
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"malformed strategy document: {exc}") from exc
    psi = StateVector(amplitudes=amps, d_a=d_a, d_b=d_b)

    def parse_side(side_doc) -> dict:
        povms = {}
        for question, elements in side_doc.items():
            povms[question] = [
                (el["answer"], _matrix_from_rows(el["matrix"])) for el in elements
            ]
        return povms

    strategy = QuantumStrategy(
        psi=psi, povms_a=parse_side(povms_a_doc), povms_b=parse_side(povms_b_doc)
    )
    strategy.validate()
    return strategy


def strategy_to_document(strategy: QuantumStrategy) -> dict:
    def dump_side(povms: dict) -> dict:
        return {
            question: [
                {
                    "answer": label,
                    "matrix": [
                        [[float(z.real), float(z.imag)] for z in row] for row in mat
                    ],
                }
                for label, mat in elements
            ]
            for question, elements in povms.items()
        }

    return {
        "d_a": strategy.psi.d_a,
        "d_b": strategy.psi.d_b,
        "psi": [
            [float(z.real), float(z.imag)] for z in strategy.psi.amplitudes
        ],
        "povms_a": dump_side(strategy.povms_a),
        "povms_b": dump_side(strategy.povms_b),
    }
