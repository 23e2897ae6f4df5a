"""Lifted games, exact binomial success, rejection sets, and witness bounds.

Lifting takes a two-question base game to a game over answer strings where
players must win a threshold fraction of positions.  For i.i.d. strategies
the exact success probability is a weighted binomial tail, computed by
direct summation (no normal or Chernoff approximation).

Rejection sets slice by answer length: for Alice answers (s, t) of length n
only the length-n Bob answers are enumerated, since any other length is
rejected outright by the equal-length rule.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .errors import AlphabetError, CapError, ParameterError
from .games import GameSpec, LiftedGameConfig, StringGame, chsh_game

ENUMERATION_CAP = 1 << 20

CHSH_QUANTUM_VALUE = math.cos(math.pi / 8) ** 2


def _is_chsh(base: GameSpec) -> bool:
    reference = chsh_game()
    if (
        base.questions_a != reference.questions_a
        or base.questions_b != reference.questions_b
        or base.answers_a != reference.answers_a
        or base.answers_b != reference.answers_b
    ):
        return False
    if base.pi != reference.pi:
        return False
    return all(
        (base.wins[key] == reference.wins[key]).all() for key in reference.wins
    )


def make_lifted(base: GameSpec, delta: float, thresholds) -> LiftedGameConfig:
    """Build a lifted-game configuration.

    ``thresholds`` is either a single value applied to every question pair
    (uniform mode) or a map from question pairs to values.  The caller is
    responsible for delta staying below the quantum-classical gap of the
    base game; for CHSH the known gap is checked and a warning recorded.
    """
    if not delta > 0:
        raise ParameterError(f"delta must be positive, got {delta}")
    pairs = [
        (x, y) for x in base.questions_a for y in base.questions_b
    ]
    if isinstance(thresholds, dict):
        table = dict(thresholds)
        uniform = len(set(table.values())) == 1
    else:
        table = {pair: float(thresholds) for pair in pairs}
        uniform = True
    warning = None
    if _is_chsh(base) and delta >= CHSH_QUANTUM_VALUE - 0.75:
        warning = (
            f"delta={delta} is not below the CHSH quantum-classical gap "
            f"{CHSH_QUANTUM_VALUE - 0.75:.6f}; the lifted game loses its "
            "dimension-witness guarantees"
        )
    return LiftedGameConfig(
        base=base, delta=delta, thresholds=table, uniform=uniform, warning=warning
    )


def binomial_tail(n: int, k: int, p: float) -> float:
    """P[Bin(n, p) >= k] by direct summation of exact binomial terms."""
    if n < 0:
        raise ParameterError("n must be nonnegative")
    if not 0.0 <= p <= 1.0:
        raise ParameterError(f"p must lie in [0, 1], got {p}")
    if k > n:
        return 0.0
    k = max(k, 0)
    total = 0.0
    for j in range(k, n + 1):
        total += math.comb(n, j) * p**j * (1.0 - p) ** (n - j)
    return min(1.0, total)


def lifted_success_exact(
    n: int,
    per_pair_win,
    cfg: LiftedGameConfig,
    pi: dict | None = None,
) -> float:
    """Success probability of an i.i.d. n-copy strategy on a lifted game.

    Each position wins independently with probability ``per_pair_win[x, y]``
    (a single float applies to all pairs); the players pass a question pair
    when at least ceil(n * cutoff) positions win.
    """
    if n < 1:
        raise ParameterError("n must be at least 1")
    if pi is None:
        pi = cfg.base.pi
    if not isinstance(per_pair_win, dict):
        per_pair_win = {pair: float(per_pair_win) for pair in pi}
    total = 0.0
    for (x, y), weight in pi.items():
        p = per_pair_win[(x, y)]
        if not 0.0 <= p <= 1.0:
            raise ParameterError(f"win probability for {(x, y)} outside [0, 1]: {p}")
        needed = math.ceil(n * cfg.cutoff(x, y))
        total += float(weight) * binomial_tail(n, needed, p)
    return total


@dataclass(frozen=True)
class RejectionSets:
    """Bob answers rejected against a fixed Alice answer pair (s, t).

    ``s`` answers the unprimed question, ``t`` the primed one.  Only strings
    of the same length as s and t are stored; every other length is rejected
    by the equal-length rule on all four question pairs.
    """

    s: str
    t: str
    length: int
    base: frozenset          # rejected with s on (unprimed, unprimed)
    alice_primed: frozenset  # rejected with t on (primed, unprimed)
    bob_primed: frozenset    # rejected with s on (unprimed, primed)
    both_primed: frozenset   # rejected with t on (primed, primed)


def rejection_sets(
    game: StringGame, s: str, t: str, cap: int = ENUMERATION_CAP
) -> RejectionSets:
    """Enumerate the four rejection sets for Alice answers (s, t)."""
    if len(s) != len(t) or len(s) == 0:
        raise ParameterError("s and t must have equal positive length")
    n = len(s)
    for sym in itertools.chain(s, t):
        if sym not in game.alphabet_a:
            raise AlphabetError(f"symbol {sym!r} not in Alice's answer alphabet")
    count = len(game.alphabet_b) ** n
    if count > cap:
        raise CapError(f"enumerating {count} Bob answers exceeds the cap {cap}")
    xu, xp = game.questions_a
    yu, yp = game.questions_b
    base, alice_primed, bob_primed, both_primed = set(), set(), set(), set()
    for word in itertools.product(game.alphabet_b, repeat=n):
        u = "".join(word)
        if not game.verify(s, u, xu, yu):
            base.add(u)
        if not game.verify(t, u, xp, yu):
            alice_primed.add(u)
        if not game.verify(s, u, xu, yp):
            bob_primed.add(u)
        if not game.verify(t, u, xp, yp):
            both_primed.add(u)
    return RejectionSets(
        s=s,
        t=t,
        length=n,
        base=frozenset(base),
        alice_primed=frozenset(alice_primed),
        bob_primed=frozenset(bob_primed),
        both_primed=frozenset(both_primed),
    )


@dataclass(frozen=True)
class DichotomyEntry:
    s: str
    t: str
    branch: str  # "primed", "unprimed", or "both"


@dataclass(frozen=True)
class DichotomyReport:
    game: str
    max_len: int
    overall: bool
    entries: tuple
    pairs_checked: int
    note: str

    def branch_counts(self) -> dict:
        counts = {"primed": 0, "unprimed": 0, "both": 0, "neither": 0}
        for entry in self.entries:
            counts[entry.branch] += 1
        return counts


def check_dichotomy(
    game: StringGame, max_len: int, cap: int = ENUMERATION_CAP
) -> DichotomyReport:
    """For every equal-length Alice answer pair (s, t) up to ``max_len``,
    check that the rejection sets of the primed Bob question or those of the
    unprimed one cover all of Bob's same-length answers.

    Pairs of unequal length satisfy both branches automatically (any Bob
    answer mismatches at least one of the two lengths), so only equal
    lengths are enumerated.
    """
    if max_len < 1:
        raise ParameterError("max_len must be at least 1")
    total_pairs = sum(
        (len(game.alphabet_a) ** n) ** 2 for n in range(1, max_len + 1)
    )
    if total_pairs > cap:
        raise CapError(f"enumerating {total_pairs} (s, t) pairs exceeds the cap {cap}")
    entries = []
    overall = True
    for n in range(1, max_len + 1):
        full_count = len(game.alphabet_b) ** n
        words = ["".join(w) for w in itertools.product(game.alphabet_a, repeat=n)]
        for s in words:
            for t in words:
                sets = rejection_sets(game, s, t, cap=cap)
                primed_full = len(sets.bob_primed | sets.both_primed) == full_count
                unprimed_full = len(sets.base | sets.alice_primed) == full_count
                if primed_full and unprimed_full:
                    branch = "both"
                elif primed_full:
                    branch = "primed"
                elif unprimed_full:
                    branch = "unprimed"
                else:
                    branch = "neither"
                    overall = False
                entries.append(DichotomyEntry(s=s, t=t, branch=branch))
    return DichotomyReport(
        game=game.name,
        max_len=max_len,
        overall=overall,
        entries=tuple(entries),
        pairs_checked=len(entries),
        note=(
            "equal-length (s, t) pairs only; unequal lengths and Bob answers "
            "of any other length are rejected by the equal-length rule on "
            "every question pair"
        ),
    )


@dataclass(frozen=True)
class WitnessReport:
    """Dimension certified by near-optimal success at error epsilon."""

    epsilon: float
    dim_lower_bound: int
    answer_count_note: str


def dimension_lower_bound(epsilon: float) -> WitnessReport:
    """Minimum local dimension forced by success 1 - epsilon at Hardy's
    game: ceil(1 / (16 sqrt(eps))), floored at 1.

    The distinct-answer count obeys the same square-root scaling but with no
    explicit constant, so it is reported as a note only.
    """
    if not 0.0 < epsilon <= 1.0:
        raise ParameterError(f"epsilon must lie in (0, 1], got {epsilon}")
    bound = max(1, math.ceil(1.0 / (16.0 * math.sqrt(epsilon))))
    return WitnessReport(
        epsilon=epsilon,
        dim_lower_bound=bound,
        answer_count_note=(
            "distinct answers per player: Omega(1/sqrt(epsilon)), "
            "no explicit constant"
        ),
    )
