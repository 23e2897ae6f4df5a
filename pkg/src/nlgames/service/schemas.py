"""Request and response models of the HTTP service.

Game documents follow the JSON interchange format (pi entries as "num/den"
strings, verifier as explicit rows); probabilities in responses are floats,
exact rationals are "num/den" strings.
"""

from __future__ import annotations

from pydantic import BaseModel, Field


class PiEntry(BaseModel):
    x: str
    y: str
    p: str  # exact rational, e.g. "1/4"


class VerifierEntry(BaseModel):
    a: str
    b: str
    x: str
    y: str
    v: int


class GameDocument(BaseModel):
    questions_a: list[str]
    questions_b: list[str]
    answers_a: list[str]
    answers_b: list[str]
    pi: list[PiEntry]
    verifier: list[VerifierEntry]


class GameSelector(BaseModel):
    """Either a builtin name or an explicit game document.

    ``max_len`` truncates string games (hardy, chsh-lift); ``delta`` and
    ``threshold`` configure chsh-lift.
    """

    builtin: str | None = None
    game: GameDocument | None = None
    max_len: int | None = Field(default=None, ge=1)
    delta: float | None = None
    threshold: float | None = None


class PovmElementModel(BaseModel):
    answer: str
    matrix: list[list[list[float]]]  # rows of [re, im] entries


class StrategyDocument(BaseModel):
    d_a: int
    d_b: int
    psi: list[list[float]]  # [re, im] pairs
    povms_a: dict[str, list[PovmElementModel]]
    povms_b: dict[str, list[PovmElementModel]]


class StrategySelector(BaseModel):
    name: str | None = None        # "sn:<n>" or "chsh-canonical"
    theta: float | str | None = None  # radians or "opt" (sn only)
    custom: StrategyDocument | None = None


class WitnessModel(BaseModel):
    alpha: dict[str, str]
    beta: dict[str, str]


class ClassicalValueRequest(BaseModel):
    game: GameSelector
    workers: int = Field(default=1, ge=1, le=64)


class ClassicalValueResponse(BaseModel):
    game: str
    value: str          # exact rational "num/den"
    value_float: float
    witness: WitnessModel
    strategies_examined: int
    pruned: int
    search_space: int
    warning: str | None = None


class QuantumValueRequest(BaseModel):
    game: GameSelector
    strategy: StrategySelector


class QuantumValueResponse(BaseModel):
    game: str
    strategy: str
    value: float
    closed_form: float | None = None
    closed_form_delta: float | None = None
    local_dim_a: int
    local_dim_b: int
    warning: str | None = None


class SampleRequest(BaseModel):
    game: GameSelector
    strategy: StrategySelector
    rounds: int = Field(ge=1)
    seed: int = 0


class PairStatsModel(BaseModel):
    x: str
    y: str
    rounds: int
    wins: int


class SampleResponse(BaseModel):
    game: str
    strategy: str
    rounds: int
    wins: int
    rate: float
    wilson_low: float
    wilson_high: float
    exact_value: float
    within_three_sigma: bool
    seed: int
    per_pair: list[PairStatsModel]


class TradeoffRequest(BaseModel):
    epsilons: list[float]


class TradeoffRow(BaseModel):
    epsilon: float
    n: int
    local_dim: int
    closed_form_error: float
    dim_lower_bound: int


class TradeoffResponse(BaseModel):
    rows: list[TradeoffRow]


class DichotomyRequest(BaseModel):
    game: GameSelector
    max_len: int = Field(ge=1)


class DichotomyEntryModel(BaseModel):
    s: str
    t: str
    branch: str


class DichotomyResponse(BaseModel):
    game: str
    max_len: int
    overall: bool
    pairs_checked: int
    branch_counts: dict[str, int]
    entries: list[DichotomyEntryModel]
    note: str
    warning: str | None = None


class ExportGameRequest(BaseModel):
    game: GameSelector


class ErrorPayload(BaseModel):
    type: str
    message: str


class ErrorResponse(BaseModel):
    error: ErrorPayload
