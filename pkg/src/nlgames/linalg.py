"""Dense complex linear algebra for small bipartite quantum systems.

Conventions
-----------
- Matrices and vectors are plain numpy arrays (complex128).
- Tensor indexing is row-major everywhere: the basis vector |i>|j> of a
  bipartite system with local dimensions (d_a, d_b) sits at index
  i * d_b + j.  ``numpy.kron`` follows the same convention.
- Probabilities are clamped to [0, 1] after evaluation; clamping beyond
  1e-9 is logged because it signals a logic bug rather than float noise.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .errors import CapError, ParameterError, PovmError, ShapeError

logger = logging.getLogger(__name__)

# Hard limit on any tensor-product result dimension.  Keeps exact strategy
# evaluation tractable and turns runaway requests into explicit errors.
DIM_CAP = 1 << 16

NOISE_TOL = 1e-9


@dataclass(frozen=True)
class StateVector:
    """Normalized pure state on C^{d_a} (x) C^{d_b}, row-major amplitudes."""

    amplitudes: np.ndarray
    d_a: int
    d_b: int

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=np.complex128).ravel()
        object.__setattr__(self, "amplitudes", amps)
        if self.d_a < 1 or self.d_b < 1:
            raise ParameterError("local dimensions must be positive")
        if amps.size != self.d_a * self.d_b:
            raise ShapeError(
                f"amplitude count {amps.size} != d_a*d_b = {self.d_a * self.d_b}"
            )
        norm2 = float(np.sum(np.abs(amps) ** 2))
        if abs(norm2 - 1.0) > 1e-10:
            raise ParameterError(f"state not normalized: |psi|^2 = {norm2!r}")

    @property
    def dim(self) -> int:
        return self.d_a * self.d_b

    @property
    def matrix(self) -> np.ndarray:
        """Amplitudes reshaped to a (d_a, d_b) coefficient matrix."""
        return self.amplitudes.reshape(self.d_a, self.d_b)


def tensor_product(a: np.ndarray, b: np.ndarray, cap: int = DIM_CAP) -> np.ndarray:
    """Kronecker product with a cap on the resulting dimensions.

    Entry ((i*rb + k), (j*cb + l)) of the result is a[i, j] * b[k, l].
    """
    a = np.asarray(a)
    b = np.asarray(b)
    if not 1 <= a.ndim <= 2 or not 1 <= b.ndim <= 2:
        raise ShapeError("tensor_product expects vectors or matrices")
    # kron pads the lower-rank operand with leading singleton axes
    shape_a = (1,) * (2 - a.ndim) + a.shape
    shape_b = (1,) * (2 - b.ndim) + b.shape
    out_shape = (shape_a[0] * shape_b[0], shape_a[1] * shape_b[1])
    if any(n > cap for n in out_shape):
        raise CapError(f"tensor result dimensions {out_shape} exceed the cap {cap}")
    return np.kron(a, b)


def hermitian_deviation(m: np.ndarray) -> float:
    """Entrywise max of |M - M^dagger|."""
    m = np.asarray(m)
    return float(np.max(np.abs(m - m.conj().T))) if m.size else 0.0


@dataclass(frozen=True)
class PovmReport:
    """Outcome of validating one POVM."""

    dim: int
    n_elements: int
    hermitian_deviations: tuple
    min_eigenvalues: tuple
    sum_deviation: float
    tol: float

    @property
    def hermitian_ok(self) -> bool:
        return all(d <= self.tol for d in self.hermitian_deviations)

    @property
    def psd_ok(self) -> bool:
        return all(ev >= -self.tol for ev in self.min_eigenvalues)

    @property
    def complete_ok(self) -> bool:
        return self.sum_deviation <= self.tol

    @property
    def ok(self) -> bool:
        return self.hermitian_ok and self.psd_ok and self.complete_ok


def validate_povm(elements, tol: float = 1e-10) -> PovmReport:
    """Check each element is Hermitian and PSD and that they sum to identity.

    PSD is tested on the smallest eigenvalue of the Hermitian part, which is
    robust against double-precision noise in constructed projectors.
    """
    mats = [np.asarray(e, dtype=np.complex128) for e in elements]
    if not mats:
        raise ShapeError("a POVM needs at least one element")
    dim = mats[0].shape[0]
    for m in mats:
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] != dim:
            raise ShapeError(
                f"POVM elements must all be {dim}x{dim}; got shape {m.shape}"
            )
    herm_dev = tuple(hermitian_deviation(m) for m in mats)
    min_eigs = tuple(
        float(np.linalg.eigvalsh((m + m.conj().T) / 2.0)[0]) for m in mats
    )
    total = np.sum(mats, axis=0)
    sum_dev = float(np.max(np.abs(total - np.eye(dim))))
    return PovmReport(
        dim=dim,
        n_elements=len(mats),
        hermitian_deviations=herm_dev,
        min_eigenvalues=min_eigs,
        sum_deviation=sum_dev,
        tol=tol,
    )


@dataclass(frozen=True)
class JointDistribution:
    """Joint outcome probabilities of a bipartite measurement.

    ``probs[i, j]`` is the clamped probability of Alice's i-th and Bob's
    j-th outcome; ``raw_min`` and ``raw_sum`` keep the pre-clamp values so
    callers can distinguish float noise from genuine bugs.
    """

    probs: np.ndarray
    raw_min: float
    raw_sum: float


def joint_distribution(
    state: StateVector,
    povm_a,
    povm_b,
    tol: float = 1e-10,
    validate: bool = True,
) -> JointDistribution:
    """p(a, b) = <psi| A_a (x) B_b |psi> for every outcome pair.

    Uses the identity <psi|(A (x) B)|psi> = tr(Psi^dag A Psi B^T) with Psi
    the (d_a, d_b) coefficient matrix, so no d_a*d_b-dimensional operator
    is ever materialized.
    """
    a_stack = np.stack([np.asarray(m, dtype=np.complex128) for m in povm_a])
    b_stack = np.stack([np.asarray(m, dtype=np.complex128) for m in povm_b])
    if a_stack.shape[1:] != (state.d_a, state.d_a):
        raise ShapeError(
            f"Alice POVM dimension {a_stack.shape[1:]} does not match d_a={state.d_a}"
        )
    if b_stack.shape[1:] != (state.d_b, state.d_b):
        raise ShapeError(
            f"Bob POVM dimension {b_stack.shape[1:]} does not match d_b={state.d_b}"
        )
    if validate:
        for side, stack in (("Alice", a_stack), ("Bob", b_stack)):
            report = validate_povm(stack, tol=tol)
            if not report.ok:
                raise PovmError(f"{side} POVM failed validation", report)

    psi = state.matrix
    # M_a = Psi^dag A_a Psi, then p(a,b) = sum_ij (M_a)_ij (B_b)_ij
    m_stack = np.einsum("ji,ajk,kl->ail", psi.conj(), a_stack, psi, optimize=True)
    raw = np.einsum("aij,bij->ab", m_stack, b_stack, optimize=True)
    probs = raw.real
    raw_min = float(probs.min())
    raw_sum = float(probs.sum())
    if raw_min < -NOISE_TOL or abs(raw_sum - 1.0) > NOISE_TOL:
        logger.warning(
            "joint distribution clamped beyond noise tolerance: "
            "min=%.3e sum=%.17g",
            raw_min,
            raw_sum,
        )
    return JointDistribution(
        probs=np.clip(probs, 0.0, 1.0), raw_min=raw_min, raw_sum=raw_sum
    )
