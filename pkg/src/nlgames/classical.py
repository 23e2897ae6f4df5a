"""Exact classical values by exhaustive search over deterministic strategies.

Shared randomness never helps, so the search ranges over pairs of answer
assignments (alpha for Alice, beta for Bob).  The solver walks Alice's
assignments depth-first with an optimistic completion bound and, at each
leaf, picks Bob's exact best response per question; this covers the full
(alpha, beta) product space while staying exact.  Arithmetic runs on
integer numerators over the common denominator of the question
distribution, so the returned value is an exact rational.

Ties are broken toward the lexicographically first witness in (alpha, beta)
enumeration order, regardless of pruning or worker count.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .errors import BudgetError, StrategyError
from .games import GameSpec

# Upper limit on the size of the (alpha, beta) product space.
STRATEGY_BUDGET = 10**9


@dataclass(frozen=True)
class DeterministicStrategy:
    """One answer per question for each player."""

    alpha: dict
    beta: dict


@dataclass(frozen=True)
class ValueReport:
    value: Fraction
    witness: DeterministicStrategy
    strategies_examined: int
    pruned: int
    search_space: int


def evaluate_deterministic(game: GameSpec, strategy: DeterministicStrategy) -> Fraction:
    """Exact success probability of a fixed deterministic strategy."""
    total = Fraction(0)
    for x in game.questions_a:
        a = strategy.alpha.get(x)
        if a not in game.answers_a:
            raise StrategyError(f"alpha({x!r}) = {a!r} is not a legal answer")
        ia = game.answers_a.index(a)
        for y in game.questions_b:
            b = strategy.beta.get(y)
            if b not in game.answers_b:
                raise StrategyError(f"beta({y!r}) = {b!r} is not a legal answer")
            ib = game.answers_b.index(b)
            if game.wins[(x, y)][ia, ib]:
                total += game.pi[(x, y)]
    return total


def _prepared(game: GameSpec):
    """Common denominator form of pi plus win-table summaries.

    Returns integer numerators num[(x,y)] with a shared denominator, the
    per-(x, y) flags "some (a, b) wins" and per-row flags "answer a can win
    against some b".
    """
    den = 1
    for p in game.pi.values():
        den = den * p.denominator // math.gcd(den, p.denominator)
    num = {key: int(p * den) for key, p in game.pi.items()}
    any_win = {key: bool(table.any()) for key, table in game.wins.items()}
    row_any = {key: table.any(axis=1) for key, table in game.wins.items()}
    return den, num, any_win, row_any


def _best_response(game, num, alpha_idx):
    """Best beta for a fixed alpha: per Bob question, the first answer index
    maximizing the (integer-numerator) conditional payoff."""
    value = 0
    beta_idx = []
    for y in game.questions_b:
        best = -1
        best_b = 0
        for ib in range(len(game.answers_b)):
            score = 0
            for k, x in enumerate(game.questions_a):
                if game.wins[(x, y)][alpha_idx[k], ib]:
                    score += num[(x, y)]
            if score > best:
                best = score
                best_b = ib
        value += best
        beta_idx.append(best_b)
    return value, tuple(beta_idx)


def _solve_subtree(game, root_answer: int):
    """Exhaust all alpha with alpha(first question) = root_answer.

    Returns (best numerator, alpha indices, beta indices, examined, pruned)
    where examined/pruned count (alpha, beta) pairs.
    """
    den, num, any_win, row_any = _prepared(game)
    qa = game.questions_a
    n_a = len(game.answers_a)
    b_space = len(game.answers_b) ** len(game.questions_b)

    # Optimistic value of the questions from depth k on: every pair that can
    # be won at all counts fully.
    suffix = [0] * (len(qa) + 1)
    for k in range(len(qa) - 1, -1, -1):
        gain = sum(
            num[(qa[k], y)] for y in game.questions_b if any_win[(qa[k], y)]
        )
        suffix[k] = suffix[k + 1] + gain

    best_value = -1
    best_alpha = None
    best_beta = None
    examined = 0
    pruned = 0

    def assigned_gain(k: int, ia: int) -> int:
        return sum(
            num[(qa[k], y)]
            for y in game.questions_b
            if row_any[(qa[k], y)][ia]
        )

    def walk(k: int, alpha_idx, bound_so_far: int):
        nonlocal best_value, best_alpha, best_beta, examined, pruned
        if k == len(qa):
            examined += b_space
            value, beta_idx = _best_response(game, num, alpha_idx)
            if value > best_value:
                best_value = value
                best_alpha = tuple(alpha_idx)
                best_beta = beta_idx
            return
        choices = (root_answer,) if k == 0 else range(n_a)
        for ia in choices:
            gain = assigned_gain(k, ia)
            if bound_so_far + gain + suffix[k + 1] <= best_value:
                pruned += n_a ** (len(qa) - k - 1) * b_space
                continue
            alpha_idx.append(ia)
            walk(k + 1, alpha_idx, bound_so_far + gain)
            alpha_idx.pop()

    walk(0, [], 0)
    return best_value, best_alpha, best_beta, examined, pruned


def classical_value(
    game: GameSpec,
    workers: int = 1,
    budget: int = STRATEGY_BUDGET,
) -> ValueReport:
    """Exact classical value with witness, via exhaustive search.

    The search space is partitioned over Alice's answer to her first
    question; partitions are independent and the merge is deterministic, so
    the report does not depend on ``workers``.
    """
    search_space = len(game.answers_a) ** len(game.questions_a) * len(
        game.answers_b
    ) ** len(game.questions_b)
    if search_space > budget:
        raise BudgetError(
            f"{search_space} deterministic strategies exceed the budget "
            f"{budget}; truncate the game to shorter answers"
        )

    roots = range(len(game.answers_a))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_solve_subtree, [game] * len(game.answers_a), roots))
    else:
        results = [_solve_subtree(game, r) for r in roots]

    den = _prepared(game)[0]
    best = None
    examined = 0
    pruned = 0
    for value, alpha_idx, beta_idx, part_examined, part_pruned in results:
        examined += part_examined
        pruned += part_pruned
        if alpha_idx is None:
            continue
        key = (-value, alpha_idx, beta_idx)
        if best is None or key < best:
            best = key
    value = Fraction(-best[0], den)
    witness = DeterministicStrategy(
        alpha={x: game.answers_a[i] for x, i in zip(game.questions_a, best[1])},
        beta={y: game.answers_b[i] for y, i in zip(game.questions_b, best[2])},
    )
    return ValueReport(
        value=value,
        witness=witness,
        strategies_examined=examined,
        pruned=pruned,
        search_space=search_space,
    )
