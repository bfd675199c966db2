# src/fock.py

"""
Truncated Fock-space representations and brute-force oracles.

All operators are dense complex matrices over the number states
|0>...|dim-1>. Spinor states of the SUSY oscillator are stored block-major:
the upper component first, then the lower one, where lower index j carries the
coefficient of |Psi_{j+1}^->, i.e. of the Fock state |j>.

Nothing in this module uses a closed form; it is the independent side of every
closed-form/oracle comparison.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
from numpy.typing import NDArray
from scipy import linalg

from src import config
from src.errors import DomainError, NoEigenvectorError

OperatorMatrix = NDArray[np.complex128]


class DeformationKind(str, Enum):
    """The function f(N) in the deformed lowering operator f(N)a."""

    LINEAR = "linear"
    SHIFTED_NUMBER = "nl"
    NUMBER = "NL"

    def f(self, n: Union[int, NDArray]) -> Union[float, NDArray]:
        n = np.asarray(n, dtype=float)
        if self is DeformationKind.LINEAR:
            return np.ones_like(n)
        if self is DeformationKind.SHIFTED_NUMBER:
            return n + 1.0
        return n

    def ladder_weight(self, n: Union[int, NDArray]) -> Union[float, NDArray]:
        """Matrix element w(n) in f(N)a|n> = w(n)|n-1>, i.e. sqrt(n) f(n-1)."""
        n = np.asarray(n, dtype=float)
        return np.sqrt(n) * self.f(n - 1)

    @property
    def ground_index(self) -> int:
        """Lowest occupied Fock level of the family's coherent states."""
        return 1 if self is DeformationKind.NUMBER else 0


def check_dim(dim: int, minimum: int = config.MIN_DIM) -> None:
    if int(dim) != dim or dim < minimum:
        raise DomainError(f"truncation dim must be an integer >= {minimum}, got {dim}")


@dataclass(frozen=True, eq=False)
class FockVector:
    """Finite complex coefficient vector over |0>...|dim-1>."""

    coefficients: NDArray[np.complex128]

    def __post_init__(self) -> None:
        coefficients = np.asarray(self.coefficients, dtype=np.complex128).reshape(-1)
        check_dim(coefficients.size)
        if not np.all(np.isfinite(coefficients)):
            raise DomainError("Fock coefficients must be finite")
        object.__setattr__(self, "coefficients", coefficients)

    @classmethod
    def basis(cls, n: int, dim: int) -> "FockVector":
        vector = np.zeros(dim, dtype=np.complex128)
        vector[n] = 1.0
        return cls(vector)

    @property
    def dim(self) -> int:
        return self.coefficients.size

    @property
    def norm_squared(self) -> float:
        return float(np.vdot(self.coefficients, self.coefficients).real)

    @property
    def norm(self) -> float:
        return float(np.sqrt(self.norm_squared))

    def is_normalized(self, tolerance: float = 1e-12) -> bool:
        return abs(self.norm_squared - 1.0) < tolerance

    def normalized(self) -> "FockVector":
        if self.norm_squared == 0:
            raise DomainError("cannot normalize the zero vector")
        return FockVector(self.coefficients / self.norm)

    def scaled(self, factor: complex) -> "FockVector":
        return FockVector(factor * self.coefficients)

    def padded(self, dim: int) -> "FockVector":
        """Zero-pads (or refuses to cut) the vector to `dim` levels."""
        if dim < self.dim:
            raise DomainError(f"cannot pad a {self.dim}-level vector down to {dim}")
        vector = np.zeros(dim, dtype=np.complex128)
        vector[: self.dim] = self.coefficients
        return FockVector(vector)

    def inner(self, other: "FockVector") -> complex:
        """<self|other>."""
        return complex(np.vdot(self.coefficients, other.coefficients))

    def __add__(self, other: "FockVector") -> "FockVector":
        if other.dim != self.dim:
            raise DomainError(f"dimension mismatch: {self.dim} vs {other.dim}")
        return FockVector(self.coefficients + other.coefficients)


@dataclass(frozen=True, eq=False)
class SpinorState:
    """Pair of Fock vectors (upper, lower) of the same truncation."""

    upper: FockVector
    lower: FockVector

    def __post_init__(self) -> None:
        if self.upper.dim != self.lower.dim:
            raise DomainError(f"spinor components differ in dim: {self.upper.dim} vs {self.lower.dim}")

    @classmethod
    def from_vector(cls, vector: NDArray) -> "SpinorState":
        vector = np.asarray(vector, dtype=np.complex128).reshape(-1)
        if vector.size % 2:
            raise DomainError("a spinor vector needs an even number of entries")
        dim = vector.size // 2
        return cls(FockVector(vector[:dim]), FockVector(vector[dim:]))

    @classmethod
    def zero(cls, dim: int) -> "SpinorState":
        empty = np.zeros(dim, dtype=np.complex128)
        return cls(FockVector(empty), FockVector(empty))

    @property
    def dim(self) -> int:
        return self.upper.dim

    @property
    def vector(self) -> NDArray[np.complex128]:
        return np.concatenate([self.upper.coefficients, self.lower.coefficients])

    @property
    def norm_squared(self) -> float:
        return self.upper.norm_squared + self.lower.norm_squared

    @property
    def norm(self) -> float:
        return float(np.sqrt(self.norm_squared))

    def is_normalized(self, tolerance: float = 1e-12) -> bool:
        return abs(self.norm_squared - 1.0) < tolerance

    def normalized(self) -> "SpinorState":
        if self.norm_squared == 0:
            raise DomainError("cannot normalize the zero spinor")
        return self.scaled(1.0 / self.norm)

    def scaled(self, factor: complex) -> "SpinorState":
        return SpinorState(self.upper.scaled(factor), self.lower.scaled(factor))

    def inner(self, other: "SpinorState") -> complex:
        return self.upper.inner(other.upper) + self.lower.inner(other.lower)

    def __add__(self, other: "SpinorState") -> "SpinorState":
        if other.dim != self.dim:
            raise DomainError(f"dimension mismatch: {self.dim} vs {other.dim}")
        return SpinorState(self.upper + other.upper, self.lower + other.lower)


State = Union[FockVector, SpinorState]


def ladder_matrices(dim: int) -> Tuple[OperatorMatrix, OperatorMatrix, OperatorMatrix]:
    """
    Lowering, raising and number matrices truncated to `dim` levels.

    The raising matrix is the adjoint of the lowering one, so the image of
    |dim-1> is lost; [a, a^dagger] equals the identity everywhere except in the
    last basis direction.
    """
    check_dim(dim)
    lowering = np.diag(np.sqrt(np.arange(1, dim, dtype=float)), k=1).astype(np.complex128)
    raising = lowering.conj().T.copy()
    number = np.diag(np.arange(dim, dtype=float)).astype(np.complex128)
    return lowering, raising, number


def deformed_lowering(kind: DeformationKind, dim: int) -> OperatorMatrix:
    """Matrix of f(N)a, with f(N)a|n> = sqrt(n) f(n-1)|n-1>."""
    check_dim(dim)
    weights = kind.ladder_weight(np.arange(1, dim))
    return np.diag(weights, k=1).astype(np.complex128)


def quadrature_matrices(dim: int) -> Tuple[OperatorMatrix, OperatorMatrix]:
    """Position (a + a^dagger)/sqrt(2) and momentum (a - a^dagger)/(i sqrt(2))."""
    lowering, raising, _ = ladder_matrices(dim)
    position = (lowering + raising) / np.sqrt(2.0)
    momentum = (lowering - raising) / (1j * np.sqrt(2.0))
    return position, momentum


def block_diagonal(op: OperatorMatrix) -> OperatorMatrix:
    """The same scalar operator acting on both spinor components."""
    dim = op.shape[0]
    block = np.zeros((2 * dim, 2 * dim), dtype=np.complex128)
    block[:dim, :dim] = op
    block[dim:, dim:] = op
    return block


def edge_rows(dim: int, blocks: int = 1, margin: int = 1) -> List[int]:
    """Row indices within `margin` levels of the truncation edge, per block."""
    return [b * dim + n for b in range(blocks) for n in range(dim - margin, dim)]


@dataclass(frozen=True, eq=False)
class OracleSolution:
    state: State
    residual: float


def oracle_eigenstate(
    op: OperatorMatrix,
    eigenvalue: complex,
    freeslots: Sequence[int] = (0,),
    values: Optional[Sequence[complex]] = None,
    blocks: int = 1,
    dropped_rows: Optional[Sequence[int]] = None,
    tolerance: float = config.RESIDUAL_TOLERANCE,
) -> OracleSolution:
    """
    Least-squares eigenvector of a truncated operator.

    The coefficients at `freeslots` are pinned to `values` (all ones by
    default) and parameterize the null space; every other coefficient is
    solved for in the least-squares sense from (op - eigenvalue)v = 0 with the
    truncation-edge rows removed. Rank-deficient directions get the minimum
    norm solution.

    Args:
        op (OperatorMatrix): Square operator, dim x dim or 2dim x 2dim.
        eigenvalue (complex): Target eigenvalue.
        freeslots (Sequence[int]): Flat indices of the pinned coefficients.
        values (Sequence[complex] | None): Values of the pinned coefficients.
        blocks (int): 1 for a scalar operator, 2 for a spinor block operator.
        dropped_rows (Sequence[int] | None): Rows to drop; defaults to the last
            row of every block for scalar operators and to the rows touching
            the lower block's two top levels for block operators.
        tolerance (float): Largest accepted relative residual.

    Returns:
        OracleSolution: The eigenvector and its relative residual.
    """
    op = np.asarray(op, dtype=np.complex128)
    if op.ndim != 2 or op.shape[0] != op.shape[1]:
        raise DomainError(f"operator must be square, got shape {op.shape}")
    if not np.isfinite(complex(eigenvalue)):
        raise DomainError(f"eigenvalue {eigenvalue} is not finite")

    size = op.shape[0]
    dim = size // blocks
    if dropped_rows is None:
        # the upper block reaches one level up, the lower block (a^2 term) two
        dropped_rows = [dim - 1]
        if blocks == 2:
            dropped_rows += [2 * dim - 2, 2 * dim - 1]
    kept = np.setdiff1d(np.arange(size), np.asarray(dropped_rows, dtype=int))
    free = np.asarray(freeslots, dtype=int)
    unknown = np.setdiff1d(np.arange(size), free)
    pinned = np.ones(free.size, dtype=np.complex128) if values is None else np.asarray(values, dtype=np.complex128)

    shifted = (op - eigenvalue * np.eye(size))[kept]
    rhs = -shifted[:, free] @ pinned
    solution, *_ = linalg.lstsq(shifted[:, unknown], rhs)

    vector = np.zeros(size, dtype=np.complex128)
    vector[free] = pinned
    vector[unknown] = solution
    norm = np.linalg.norm(vector)
    if norm == 0:
        raise NoEigenvectorError("pinned coefficients are all zero")
    residual = float(np.linalg.norm(shifted @ vector) / norm)
    logging.debug(f"oracle eigenvector for eigenvalue {eigenvalue}: residual {residual:.3e}")
    if residual > tolerance:
        raise NoEigenvectorError(
            f"no eigenvector with eigenvalue {eigenvalue}: residual {residual:.3e} exceeds {tolerance:.1e}"
        )

    state: State = SpinorState.from_vector(vector) if blocks == 2 else FockVector(vector)
    return OracleSolution(state=state, residual=residual)


def _as_vector(state: State) -> NDArray[np.complex128]:
    return state.vector if isinstance(state, SpinorState) else state.coefficients


def _lift(op: OperatorMatrix, state: State) -> OperatorMatrix:
    op = np.asarray(op, dtype=np.complex128)
    if isinstance(state, SpinorState) and op.shape[0] == state.dim:
        return block_diagonal(op)
    size = _as_vector(state).size
    if op.shape != (size, size):
        raise DomainError(f"operator shape {op.shape} does not act on a state of size {size}")
    return op


def expectation(op: OperatorMatrix, state: State) -> complex:
    """<psi|op|psi>/<psi|psi>; a dim x dim op acts on both spinor components."""
    vector = _as_vector(state)
    norm_squared = float(np.vdot(vector, vector).real)
    if norm_squared == 0:
        raise DomainError("expectation value of a zero-norm state")
    return complex(np.vdot(vector, _lift(op, state) @ vector) / norm_squared)


def eigen_residual(op: OperatorMatrix, state: State, eigenvalue: complex, margin: int = config.EDGE_MARGIN) -> float:
    """
    ||op v - eigenvalue v|| / ||v|| over the rows at least `margin` levels
    below the truncation edge of every block.
    """
    vector = _as_vector(state)
    blocks = 2 if isinstance(state, SpinorState) else 1
    dim = vector.size // blocks
    kept = np.setdiff1d(np.arange(vector.size), edge_rows(dim, blocks, margin))
    difference = (_lift(op, state) @ vector - eigenvalue * vector)[kept]
    norm = np.linalg.norm(vector)
    if norm == 0:
        raise DomainError("eigen-residual of a zero state")
    return float(np.linalg.norm(difference) / norm)


def state_distance(a: State, b: State) -> float:
    """Joint-norm distance between normalized states, minimized over a global phase."""
    va = _as_vector(a)
    vb = _as_vector(b)
    if va.size != vb.size:
        raise DomainError(f"dimension mismatch: {va.size} vs {vb.size}")
    va = va / np.linalg.norm(va)
    vb = vb / np.linalg.norm(vb)
    overlap = abs(np.vdot(va, vb))
    return float(np.sqrt(max(0.0, 2.0 - 2.0 * overlap)))
