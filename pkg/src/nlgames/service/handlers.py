"""Command handlers shared by the HTTP endpoints and the CLI.

Each handler maps a request model to a response model; domain errors from
the core package propagate as NlgamesError and are translated by the caller
(HTTP status + payload, or CLI exit code).
"""

from __future__ import annotations

import math

from .. import catalog
from ..classical import classical_value
from ..errors import SchemaError
from ..lifting import check_dichotomy, dimension_lower_bound
from ..games import game_to_document
from ..quantum import plan_for_error, strategy_value
from ..referee import run_referee
from . import schemas


def _resolve_game(selector: schemas.GameSelector) -> catalog.ResolvedGame:
    return catalog.resolve_game(
        builtin=selector.builtin,
        document=selector.game.model_dump() if selector.game is not None else None,
        max_len=selector.max_len,
        delta=selector.delta,
        threshold=selector.threshold,
    )


def _resolve_strategy(selector: schemas.StrategySelector) -> catalog.ResolvedStrategy:
    return catalog.resolve_strategy(
        name=selector.name,
        theta=selector.theta,
        custom=selector.custom.model_dump() if selector.custom is not None else None,
    )


def handle_classical_value(
    req: schemas.ClassicalValueRequest,
) -> schemas.ClassicalValueResponse:
    resolved = _resolve_game(req.game)
    if resolved.spec is None:
        raise SchemaError(
            f"game {resolved.name!r} has unbounded answers; pass max_len to truncate"
        )
    report = classical_value(resolved.spec, workers=req.workers)
    return schemas.ClassicalValueResponse(
        game=resolved.name,
        value=f"{report.value.numerator}/{report.value.denominator}",
        value_float=float(report.value),
        witness=schemas.WitnessModel(
            alpha=report.witness.alpha, beta=report.witness.beta
        ),
        strategies_examined=report.strategies_examined,
        pruned=report.pruned,
        search_space=report.search_space,
        warning=resolved.warning,
    )


def handle_quantum_value(
    req: schemas.QuantumValueRequest,
) -> schemas.QuantumValueResponse:
    resolved_game = _resolve_game(req.game)
    resolved_strategy = _resolve_strategy(req.strategy)
    value = strategy_value(
        resolved_game.verifier, resolved_strategy.strategy, resolved_game.pi
    )
    closed = resolved_strategy.closed_form if resolved_game.name == "hardy" else None
    return schemas.QuantumValueResponse(
        game=resolved_game.name,
        strategy=resolved_strategy.label,
        value=value,
        closed_form=closed,
        closed_form_delta=None if closed is None else abs(value - closed),
        local_dim_a=resolved_strategy.strategy.psi.d_a,
        local_dim_b=resolved_strategy.strategy.psi.d_b,
        warning=resolved_game.warning,
    )


def handle_sample(req: schemas.SampleRequest) -> schemas.SampleResponse:
    resolved_game = _resolve_game(req.game)
    resolved_strategy = _resolve_strategy(req.strategy)
    exact = strategy_value(
        resolved_game.verifier, resolved_strategy.strategy, resolved_game.pi
    )
    report = run_referee(
        resolved_strategy.strategy,
        resolved_game.verifier,
        resolved_game.pi,
        rounds=req.rounds,
        seed=req.seed,
    )
    sigma = math.sqrt(max(exact * (1.0 - exact), 1e-300) / req.rounds)
    return schemas.SampleResponse(
        game=resolved_game.name,
        strategy=resolved_strategy.label,
        rounds=report.rounds,
        wins=report.wins,
        rate=report.rate,
        wilson_low=report.wilson_low,
        wilson_high=report.wilson_high,
        exact_value=exact,
        within_three_sigma=abs(report.rate - exact) <= 3.0 * sigma,
        seed=report.seed,
        per_pair=[
            schemas.PairStatsModel(x=p.x, y=p.y, rounds=p.rounds, wins=p.wins)
            for p in report.per_pair
        ],
    )


def handle_tradeoff(req: schemas.TradeoffRequest) -> schemas.TradeoffResponse:
    rows = []
    for eps in req.epsilons:
        plan = plan_for_error(eps)
        witness = dimension_lower_bound(eps)
        rows.append(
            schemas.TradeoffRow(
                epsilon=eps,
                n=plan.copies,
                local_dim=plan.local_dim,
                closed_form_error=plan.closed_form_error,
                dim_lower_bound=witness.dim_lower_bound,
            )
        )
    return schemas.TradeoffResponse(rows=rows)


def handle_dichotomy(req: schemas.DichotomyRequest) -> schemas.DichotomyResponse:
    resolved = _resolve_game(req.game)
    if resolved.string_game is None:
        raise SchemaError(
            f"dichotomy checks need a string game (hardy or a lifted game), "
            f"got {resolved.name!r}"
        )
    report = check_dichotomy(resolved.string_game, req.max_len)
    return schemas.DichotomyResponse(
        game=report.game,
        max_len=report.max_len,
        overall=report.overall,
        pairs_checked=report.pairs_checked,
        branch_counts=report.branch_counts(),
        entries=[
            schemas.DichotomyEntryModel(s=e.s, t=e.t, branch=e.branch)
            for e in report.entries
        ],
        note=report.note,
        warning=resolved.warning,
    )


def handle_export_game(req: schemas.ExportGameRequest) -> schemas.GameDocument:
    resolved = _resolve_game(req.game)
    if resolved.spec is None:
        raise SchemaError(
            f"game {resolved.name!r} has unbounded answers; pass max_len to truncate"
        )
    return schemas.GameDocument.model_validate(game_to_document(resolved.spec))
