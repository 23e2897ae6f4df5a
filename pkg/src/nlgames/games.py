"""Two-player game models: explicit finite games, Hardy's game, lifted games.

Three layers of representation:

- ``GameSpec``: a fully explicit finite game (question sets, exact rational
  question distribution, dense win tables).  Classical solving works on this.
- ``StringGame``: a two-question game whose answers are finite strings over
  a fixed alphabet and whose verifier is a predicate.  Hardy's game and the
  lifted games live here; truncation turns them into explicit ``GameSpec``s.
- ``LiftedGameConfig``: a base game plus per-question-pair success
  thresholds; answers are strings of base answers judged by the fraction of
  winning positions.

The question distribution is kept as exact ``Fraction``s throughout because
classical game values are exact rationals.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from .errors import AlphabetError, CapError, FormatError, ParameterError, ShapeError

# Default limit on the answers per player produced by truncation.
ANSWER_CAP = 1 << 14

HARDY_QUESTIONS_A = ("A", "A'")
HARDY_QUESTIONS_B = ("B", "B'")


@dataclass(frozen=True, eq=False)
class GameSpec:
    """An explicit finite two-player game.

    ``wins[(x, y)]`` is a boolean matrix indexed by (answer_a, answer_b)
    positions in the declared answer order.
    """

    questions_a: tuple
    questions_b: tuple
    answers_a: tuple
    answers_b: tuple
    pi: dict
    wins: dict

    def __post_init__(self):
        for name in ("questions_a", "questions_b", "answers_a", "answers_b"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        if not self.questions_a or not self.questions_b:
            raise ShapeError("question sets must be non-empty")
        if not self.answers_a or not self.answers_b:
            raise ShapeError("answer sets must be non-empty")
        pairs = set(itertools.product(self.questions_a, self.questions_b))
        if set(self.pi) != pairs:
            raise FormatError("pi must assign a probability to every question pair")
        total = Fraction(0)
        for key, p in self.pi.items():
            if not isinstance(p, Fraction):
                raise FormatError(f"pi[{key}] must be an exact Fraction")
            if p < 0:
                raise FormatError(f"pi[{key}] is negative")
            total += p
        if total != 1:
            raise FormatError(f"pi sums to {total}, expected exactly 1")
        if set(self.wins) != pairs:
            raise FormatError("verifier table must cover every question pair")
        shape = (len(self.answers_a), len(self.answers_b))
        tables = {}
        for key, table in self.wins.items():
            arr = np.asarray(table, dtype=bool)
            if arr.shape != shape:
                raise ShapeError(
                    f"verifier table for {key} has shape {arr.shape}, expected {shape}"
                )
            tables[key] = arr
        object.__setattr__(self, "pi", dict(self.pi))
        object.__setattr__(self, "wins", tables)

    def verdict(self, a, b, x, y) -> bool:
        ia = self.answers_a.index(a)
        ib = self.answers_b.index(b)
        return bool(self.wins[(x, y)][ia, ib])


@dataclass(frozen=True, eq=False)
class StringGame:
    """Two-question game over finite-alphabet answer strings.

    ``verify(a, b, x, y)`` must be a total predicate on pairs of answer
    strings; the unprimed question of each player is listed first.
    """

    name: str
    questions_a: tuple
    questions_b: tuple
    alphabet_a: tuple
    alphabet_b: tuple
    pi: dict
    verify: Callable

    def __post_init__(self):
        if len(self.questions_a) != 2 or len(self.questions_b) != 2:
            raise ShapeError("string games have exactly two questions per player")


@dataclass(frozen=True, eq=False)
class LiftedGameConfig:
    """A base game lifted to answer strings with per-pair success thresholds.

    Players answer equal-length strings over the base answer alphabets and
    must win at least ``thresholds[x, y] - delta/2`` of the positions.
    """

    base: GameSpec
    delta: float
    thresholds: dict
    uniform: bool
    warning: str | None = None

    def __post_init__(self):
        if len(self.base.questions_a) != 2 or len(self.base.questions_b) != 2:
            raise ShapeError("lifted games need a base with two questions per player")
        if not self.delta > 0:
            raise ParameterError(f"delta must be positive, got {self.delta}")
        pairs = set(itertools.product(self.base.questions_a, self.base.questions_b))
        if set(self.thresholds) != pairs:
            raise FormatError("thresholds must cover every question pair")
        for key, t in self.thresholds.items():
            if not 0.0 <= t <= 1.0:
                raise ParameterError(f"threshold for {key} outside [0, 1]: {t}")

    def cutoff(self, x, y) -> float:
        return self.thresholds[(x, y)] - self.delta / 2.0


def verify_hardy(a: str, b: str, x: str, y: str) -> bool:
    """Hardy-game verifier over bit strings.

    Wins iff the strings have equal length, on the doubly-unprimed question
    pair some position has both bits zero, on the mixed pairs every position
    has a one, and on the doubly-primed pair every position has a zero.
    """
    if x not in HARDY_QUESTIONS_A or y not in HARDY_QUESTIONS_B:
        raise ParameterError(f"unknown Hardy questions ({x!r}, {y!r})")
    if len(a) != len(b):
        return False
    if x == "A" and y == "B":
        if not any(ca == "0" and cb == "0" for ca, cb in zip(a, b)):
            return False
    if (x, y) in (("A", "B'"), ("A'", "B")):
        if any(ca != "1" and cb != "1" for ca, cb in zip(a, b)):
            return False
    if x == "A'" and y == "B'":
        if any(ca != "0" and cb != "0" for ca, cb in zip(a, b)):
            return False
    return True


def hardy_game() -> StringGame:
    """Hardy's game: two questions per player, bit-string answers, uniform
    question distribution."""
    quarter = Fraction(1, 4)
    pi = {
        (x, y): quarter
        for x in HARDY_QUESTIONS_A
        for y in HARDY_QUESTIONS_B
    }
    return StringGame(
        name="hardy",
        questions_a=HARDY_QUESTIONS_A,
        questions_b=HARDY_QUESTIONS_B,
        alphabet_a=("0", "1"),
        alphabet_b=("0", "1"),
        pi=pi,
        verify=verify_hardy,
    )


def verify_lifted(cfg: LiftedGameConfig, a: str, b: str, x, y) -> bool:
    """Lifted-game verifier: equal non-empty lengths and a winning fraction
    of positions at least ``thresholds[x, y] - delta/2``."""
    if len(a) != len(b):
        return False
    n = len(a)
    if n == 0:
        return False
    base = cfg.base
    idx_a = {sym: i for i, sym in enumerate(base.answers_a)}
    idx_b = {sym: i for i, sym in enumerate(base.answers_b)}
    table = base.wins[(x, y)]
    won = 0
    for ca, cb in zip(a, b):
        if ca not in idx_a:
            raise AlphabetError(f"symbol {ca!r} not in the base answer alphabet")
        if cb not in idx_b:
            raise AlphabetError(f"symbol {cb!r} not in the base answer alphabet")
        if table[idx_a[ca], idx_b[cb]]:
            won += 1
    return won / n >= cfg.cutoff(x, y)


def lifted_string_game(cfg: LiftedGameConfig, name: str = "lifted") -> StringGame:
    """View a lifted game as a StringGame over the base answer alphabets."""
    for labels in (cfg.base.answers_a, cfg.base.answers_b):
        if any(len(str(sym)) != 1 for sym in labels):
            raise AlphabetError(
                "string-game view needs single-character base answer labels"
            )
    return StringGame(
        name=name,
        questions_a=tuple(cfg.base.questions_a),
        questions_b=tuple(cfg.base.questions_b),
        alphabet_a=tuple(str(s) for s in cfg.base.answers_a),
        alphabet_b=tuple(str(s) for s in cfg.base.answers_b),
        pi=dict(cfg.base.pi),
        verify=lambda a, b, x, y: verify_lifted(cfg, a, b, x, y),
    )


def strings_up_to(alphabet, max_len: int):
    """All strings over ``alphabet`` of length 0..max_len, shortest first,
    then in alphabet order."""
    out = [""]
    for n in range(1, max_len + 1):
        out.extend("".join(w) for w in itertools.product(alphabet, repeat=n))
    return tuple(out)


def truncate(game: StringGame, max_len: int, answer_cap: int = ANSWER_CAP) -> GameSpec:
    """Restrict a string game to answers of length at most ``max_len`` and
    tabulate it as an explicit GameSpec."""
    if max_len < 1:
        raise ParameterError("max_len must be at least 1")
    for alphabet in (game.alphabet_a, game.alphabet_b):
        count = sum(len(alphabet) ** n for n in range(max_len + 1))
        if count > answer_cap:
            raise CapError(
                f"truncation to length {max_len} needs {count} answers per "
                f"player, above the cap {answer_cap}"
            )
    answers_a = strings_up_to(game.alphabet_a, max_len)
    answers_b = strings_up_to(game.alphabet_b, max_len)
    wins = {}
    for x in game.questions_a:
        for y in game.questions_b:
            table = np.zeros((len(answers_a), len(answers_b)), dtype=bool)
            for i, a in enumerate(answers_a):
                for j, b in enumerate(answers_b):
                    table[i, j] = game.verify(a, b, x, y)
            wins[(x, y)] = table
    return GameSpec(
        questions_a=tuple(game.questions_a),
        questions_b=tuple(game.questions_b),
        answers_a=answers_a,
        answers_b=answers_b,
        pi=dict(game.pi),
        wins=wins,
    )


def chsh_game() -> GameSpec:
    """CHSH with questions and answers as bits: win iff a XOR b = x AND y."""
    questions = ("0", "1")
    answers = ("0", "1")
    quarter = Fraction(1, 4)
    pi = {(x, y): quarter for x in questions for y in questions}
    wins = {}
    for x in questions:
        for y in questions:
            table = np.zeros((2, 2), dtype=bool)
            for ia in range(2):
                for ib in range(2):
                    table[ia, ib] = (ia ^ ib) == (int(x) & int(y))
            wins[(x, y)] = table
    return GameSpec(
        questions_a=questions,
        questions_b=questions,
        answers_a=answers,
        answers_b=answers,
        pi=pi,
        wins=wins,
    )


def trivial_win_game() -> GameSpec:
    """A 2x2-question game whose verifier always accepts."""
    questions = ("0", "1")
    answers = ("0", "1")
    quarter = Fraction(1, 4)
    pi = {(x, y): quarter for x in questions for y in questions}
    wins = {
        (x, y): np.ones((2, 2), dtype=bool) for x in questions for y in questions
    }
    return GameSpec(
        questions_a=questions,
        questions_b=questions,
        answers_a=answers,
        answers_b=answers,
        pi=pi,
        wins=wins,
    )


def spec_verifier(game: GameSpec) -> Callable:
    """Wrap an explicit game's win tables as a verifier predicate."""

    idx_a = {a: i for i, a in enumerate(game.answers_a)}
    idx_b = {b: i for i, b in enumerate(game.answers_b)}

    def verify(a, b, x, y) -> bool:
        if a not in idx_a or b not in idx_b:
            return False
        return bool(game.wins[(x, y)][idx_a[a], idx_b[b]])

    return verify


# ---------------------------------------------------------------------------
# JSON game documents
# ---------------------------------------------------------------------------

def game_to_document(game: GameSpec) -> dict:
    """Serialize to the interchange document: pi entries as "num/den"
    strings, verifier as explicit {a, b, x, y, v} rows."""
    pi_rows = [
        {"x": x, "y": y, "p": f"{p.numerator}/{p.denominator}"}
        for (x, y), p in sorted(game.pi.items())
    ]
    verifier_rows = []
    for x in game.questions_a:
        for y in game.questions_b:
            table = game.wins[(x, y)]
            for i, a in enumerate(game.answers_a):
                for j, b in enumerate(game.answers_b):
                    verifier_rows.append(
                        {"a": a, "b": b, "x": x, "y": y, "v": int(table[i, j])}
                    )
    return {
        "questions_a": list(game.questions_a),
        "questions_b": list(game.questions_b),
        "answers_a": list(game.answers_a),
        "answers_b": list(game.answers_b),
        "pi": pi_rows,
        "verifier": verifier_rows,
    }


def game_from_document(doc: dict) -> GameSpec:
    """Parse and validate an interchange document.

    Rejects distributions that do not sum to exactly 1 and verifier tables
    that do not cover every (a, b, x, y) tuple.
    """
    try:
        questions_a = tuple(doc["questions_a"])
        questions_b = tuple(doc["questions_b"])
        answers_a = tuple(doc["answers_a"])
        answers_b = tuple(doc["answers_b"])
        pi_rows = doc["pi"]
        verifier_rows = doc["verifier"]
    except (KeyError, TypeError) as exc:
        raise FormatError(f"malformed game document: missing {exc}") from exc

    pi = {}
    for row in pi_rows:
        key = (row["x"], row["y"])
        if key in pi:
            raise FormatError(f"duplicate pi entry for {key}")
        try:
            pi[key] = Fraction(row["p"])
        except (ValueError, ZeroDivisionError) as exc:
            raise FormatError(f"bad rational {row['p']!r} in pi") from exc

    idx_a = {a: i for i, a in enumerate(answers_a)}
    idx_b = {b: i for i, b in enumerate(answers_b)}
    wins = {}
    seen = {}
    for x in questions_a:
        for y in questions_b:
            wins[(x, y)] = np.zeros((len(answers_a), len(answers_b)), dtype=bool)
            seen[(x, y)] = np.zeros((len(answers_a), len(answers_b)), dtype=bool)
    for row in verifier_rows:
        key = (row["x"], row["y"])
        if key not in wins:
            raise FormatError(f"verifier row for unknown question pair {key}")
        if row["a"] not in idx_a or row["b"] not in idx_b:
            raise FormatError(
                f"verifier row for unknown answers ({row['a']!r}, {row['b']!r})"
            )
        if row["v"] not in (0, 1):
            raise FormatError(f"verifier value must be 0 or 1, got {row['v']!r}")
        i, j = idx_a[row["a"]], idx_b[row["b"]]
        wins[key][i, j] = bool(row["v"])
        seen[key][i, j] = True
    for key, mask in seen.items():
        if not mask.all():
            raise FormatError(f"verifier table incomplete for question pair {key}")
    return GameSpec(
        questions_a=questions_a,
        questions_b=questions_b,
        answers_a=answers_a,
        answers_b=answers_b,
        pi=pi,
        wins=wins,
    )


def load_game(path) -> GameSpec:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FormatError(f"not valid JSON: {exc}") from exc
    return game_from_document(doc)


def save_game(game: GameSpec, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(game_to_document(game), fh, indent=2)
        fh.write("\n")
