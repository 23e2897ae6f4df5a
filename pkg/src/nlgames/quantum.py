"""Quantum strategies and their exact evaluation.

The central construction is the family of n-copy strategies for Hardy's
game: both players share n copies of a fixed two-qubit state and measure
every copy in a rotated basis on the unprimed question and in the reference
basis on the primed question, answering with the n-bit outcome string.

Qubit ordering convention: all of Alice's qubits come first (in copy
order), then all of Bob's, so the shared state has a clean (2^n, 2^n)
bipartition.  Outcome labels are the bit strings of basis indices, copy 1
first.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import CapError, ParameterError, PovmError, SchemaError
from .linalg import DIM_CAP, JointDistribution, StateVector, joint_distribution, validate_povm


def _identity_basis() -> np.ndarray:
    return np.eye(2)


@dataclass(frozen=True, eq=False)
class HardyParams:
    """Angle and reference basis defining the two-qubit state and bases.

    ``base_basis`` holds the reference basis vectors as columns; the rotated
    basis is obtained from it by a rotation of the given angle.
    """

    theta: float
    base_basis: np.ndarray = field(default_factory=_identity_basis)

    def __post_init__(self):
        if not 0.0 < self.theta < math.pi / 2:
            raise ParameterError(
                f"theta must lie strictly between 0 and pi/2, got {self.theta}"
            )
        basis = np.asarray(self.base_basis, dtype=float)
        if basis.shape != (2, 2):
            raise ParameterError("base_basis must be a real 2x2 matrix")
        if np.max(np.abs(basis.T @ basis - np.eye(2))) > 1e-12:
            raise ParameterError("base_basis columns must be orthonormal")
        object.__setattr__(self, "base_basis", basis)


def rotated_basis(params: HardyParams) -> np.ndarray:
    """Rotate the reference basis by the parameter angle (columns v0, v1)."""
    c, s = math.cos(params.theta), math.sin(params.theta)
    v0p, v1p = params.base_basis[:, 0], params.base_basis[:, 1]
    return np.column_stack((c * v0p + s * v1p, -s * v0p + c * v1p))


def hardy_state(params: HardyParams) -> StateVector:
    """The two-qubit state whose mixed-basis (0,0) and primed-basis (1,1)
    outcomes are exactly forbidden.

    Amplitudes: (sin(t)|v0',v0'> - cos(t)(|v0',v1'> + |v1',v0'>)) normalized
    by sqrt(1 + cos^2(t)).
    """
    c, s = math.cos(params.theta), math.sin(params.theta)
    v0p, v1p = params.base_basis[:, 0], params.base_basis[:, 1]
    amps = (
        s * np.kron(v0p, v0p) - c * (np.kron(v0p, v1p) + np.kron(v1p, v0p))
    ) / math.sqrt(1.0 + c * c)
    return StateVector(amplitudes=amps.astype(np.complex128), d_a=2, d_b=2)


def paradox_probability(theta: float) -> float:
    """Probability of the double-zero outcome when both sides measure in the
    rotated basis: cos^4(t) sin^2(t) / (1 + cos^2(t))."""
    if not 0.0 < theta < math.pi / 2:
        raise ParameterError(
            f"theta must lie strictly between 0 and pi/2, got {theta}"
        )
    c, s = math.cos(theta), math.sin(theta)
    return c**4 * s**2 / (1.0 + c * c)


def optimal_angle() -> tuple[float, float]:
    """Angle maximizing the double-zero probability, with the maximum.

    Closed form: arccos(((sqrt(5)-1)/2)^(1/2)); the maximum equals
    (5*sqrt(5)-11)/2.
    """
    theta = math.acos(math.sqrt((math.sqrt(5.0) - 1.0) / 2.0))
    return theta, paradox_probability(theta)


def error_decay_constant() -> float:
    """Per-copy error decay at the optimal angle: (13-5*sqrt(5))/2."""
    return (13.0 - 5.0 * math.sqrt(5.0)) / 2.0


def golden_section_argmax(f, lo: float, hi: float, tol: float = 1e-9) -> float:
    """Maximize a unimodal function on [lo, hi] to within ``tol`` in x."""
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    x1 = b - inv_phi * (b - a)
    x2 = a + inv_phi * (b - a)
    f1, f2 = f(x1), f(x2)
    while b - a > tol:
        if f1 < f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + inv_phi * (b - a)
            f2 = f(x2)
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - inv_phi * (b - a)
            f1 = f(x1)
    return (a + b) / 2.0


@dataclass(frozen=True, eq=False)
class QuantumStrategy:
    """Shared state plus one labeled POVM per question per player.

    ``povms_a[x]`` is a list of (answer label, matrix) pairs acting on
    Alice's d_a-dimensional side; similarly for Bob.
    """

    psi: StateVector
    povms_a: dict
    povms_b: dict

    def validate(self, tol: float = 1e-10) -> None:
        for side, povms, dim in (
            ("Alice", self.povms_a, self.psi.d_a),
            ("Bob", self.povms_b, self.psi.d_b),
        ):
            for question, elements in povms.items():
                labels = [label for label, _ in elements]
                if len(set(labels)) != len(labels):
                    raise SchemaError(
                        f"duplicate outcome labels in {side} POVM for {question!r}"
                    )
                mats = [m for _, m in elements]
                if any(np.asarray(m).shape != (dim, dim) for m in mats):
                    raise SchemaError(
                        f"{side} POVM for {question!r} does not act on dimension {dim}"
                    )
                report = validate_povm(mats, tol=tol)
                if not report.ok:
                    raise PovmError(
                        f"{side} POVM for question {question!r} failed validation",
                        report,
                    )


@dataclass(frozen=True)
class StrategyPlan:
    """How many copies (and what local dimension) reach a target error."""

    epsilon: float
    copies: int
    local_dim: int
    decay: float
    theta: float

    @property
    def answer_length(self) -> int:
        return self.copies

    @property
    def closed_form_error(self) -> float:
        return 0.25 * self.decay**self.copies


def _basis_projectors(basis: np.ndarray) -> list:
    return [np.outer(basis[:, i], basis[:, i].conj()) for i in range(basis.shape[1])]


def n_copy_strategy(params: HardyParams, n: int, cap: int = DIM_CAP) -> QuantumStrategy:
    """The n-copy strategy for Hardy's game.

    Shared state: n copies of the two-qubit state, reordered so Alice holds
    the first qubit of every copy.  Unprimed questions measure every copy in
    the rotated basis, primed questions in the reference basis; answers are
    the n-bit outcome strings.
    """
    if n < 1:
        raise ParameterError("n must be at least 1")
    if 4**n > cap:
        raise CapError(f"total dimension 4^{n} exceeds the cap {cap}")

    single = hardy_state(params).matrix
    coeff = single
    for _ in range(n - 1):
        coeff = np.kron(coeff, single)
    psi = StateVector(amplitudes=coeff.reshape(-1), d_a=2**n, d_b=2**n)

    rotated = rotated_basis(params)
    reference = params.base_basis

    def povm_for(basis: np.ndarray) -> list:
        single_projs = _basis_projectors(basis.astype(np.complex128))
        elements = []
        for idx in range(2**n):
            label = format(idx, f"0{n}b")
            proj = single_projs[int(label[0])]
            for bit in label[1:]:
                proj = np.kron(proj, single_projs[int(bit)])
            elements.append((label, proj))
        return elements

    rotated_povm = povm_for(rotated)
    reference_povm = povm_for(reference)
    return QuantumStrategy(
        psi=psi,
        povms_a={"A": rotated_povm, "A'": reference_povm},
        povms_b={"B": rotated_povm, "B'": reference_povm},
    )


def chsh_canonical_strategy() -> QuantumStrategy:
    """The optimal two-qubit CHSH strategy (value cos^2(pi/8)).

    Maximally entangled state; Alice measures at angles 0 and pi/4, Bob at
    pi/8 and -pi/8, answering the outcome bit.
    """
    phi_plus = np.array([1.0, 0.0, 0.0, 1.0], dtype=np.complex128) / math.sqrt(2.0)
    psi = StateVector(amplitudes=phi_plus, d_a=2, d_b=2)

    def angle_povm(gamma: float) -> list:
        c, s = math.cos(gamma), math.sin(gamma)
        basis = np.array([[c, -s], [s, c]], dtype=np.complex128)
        projs = _basis_projectors(basis)
        return [("0", projs[0]), ("1", projs[1])]

    return QuantumStrategy(
        psi=psi,
        povms_a={"0": angle_povm(0.0), "1": angle_povm(math.pi / 4)},
        povms_b={"0": angle_povm(math.pi / 8), "1": angle_povm(-math.pi / 8)},
    )


def strategy_value(verifier, strategy: QuantumStrategy, pi: dict) -> float:
    """Exact success probability of a quantum strategy.

    Sums pi(x, y) * p(a, b | x, y) over the outcome pairs the verifier
    accepts, with p computed by exact tensor evaluation.  The strategy's
    POVMs must cover every question appearing in ``pi``.
    """
    strategy.validate()
    for (x, y) in pi:
        if x not in strategy.povms_a:
            raise SchemaError(f"strategy has no Alice POVM for question {x!r}")
        if y not in strategy.povms_b:
            raise SchemaError(f"strategy has no Bob POVM for question {y!r}")
    total = 0.0
    for (x, y), weight in pi.items():
        labels_a = [label for label, _ in strategy.povms_a[x]]
        labels_b = [label for label, _ in strategy.povms_b[y]]
        mats_a = [m for _, m in strategy.povms_a[x]]
        mats_b = [m for _, m in strategy.povms_b[y]]
        dist = joint_distribution(strategy.psi, mats_a, mats_b, validate=False)
        win = np.zeros(dist.probs.shape, dtype=bool)
        for i, a in enumerate(labels_a):
            for j, b in enumerate(labels_b):
                win[i, j] = verifier(a, b, x, y)
        total += float(weight) * float(dist.probs[win].sum())
    return min(1.0, max(0.0, total))


def pair_distribution(
    strategy: QuantumStrategy, x, y
) -> tuple[list, list, JointDistribution]:
    """Outcome labels and joint distribution for one question pair."""
    labels_a = [label for label, _ in strategy.povms_a[x]]
    labels_b = [label for label, _ in strategy.povms_b[y]]
    mats_a = [m for _, m in strategy.povms_a[x]]
    mats_b = [m for _, m in strategy.povms_b[y]]
    return labels_a, labels_b, joint_distribution(strategy.psi, mats_a, mats_b, validate=False)


def n_copy_value_closed_form(theta: float, n: int) -> float:
    """Success probability of the n-copy strategy: 1 - (1-p)^n / 4 where p
    is the per-copy double-zero probability."""
    if n < 1:
        raise ParameterError("n must be at least 1")
    return 1.0 - 0.25 * (1.0 - paradox_probability(theta)) ** n


def plan_for_error(epsilon: float) -> StrategyPlan:
    """Copies and local dimension sufficient for error at most epsilon,
    using the optimal angle: n = max(1, ceil(ln eps / ln c))."""
    if not 0.0 < epsilon < 1.0:
        raise ParameterError(f"epsilon must lie in (0, 1), got {epsilon}")
    theta, p = optimal_angle()
    decay = 1.0 - p
    copies = max(1, math.ceil(math.log(epsilon) / math.log(decay)))
    plan = StrategyPlan(
        epsilon=epsilon,
        copies=copies,
        local_dim=2**copies,
        decay=decay,
        theta=theta,
    )
    if plan.closed_form_error > epsilon:
        raise ParameterError(
            f"internal inconsistency: plan error {plan.closed_form_error} > {epsilon}"
        )
    return plan
