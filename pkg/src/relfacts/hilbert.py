"""Dense complex linear algebra over labelled tensor-factor layouts.

Flat indices are big-endian over factors: the first factor in a layout is the
most significant digit.  All objects are immutable once built.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import prod
from typing import Sequence, Union

import numpy as np

EPS = 1e-10
MAX_DIM = 2**20


class LayoutError(ValueError):
    """Raised for mismatched, duplicated, or unknown factor labels."""


class DimensionError(ValueError):
    """Raised when a dimension is inconsistent or exceeds ``MAX_DIM``."""


class NumericToleranceError(ArithmeticError):
    """A numerical check failed at the configured tolerance."""


def _check_dim(dim: int) -> int:
    if dim > MAX_DIM:
        raise DimensionError(f"total dimension {dim} exceeds cap {MAX_DIM}")
    return dim


@dataclass(frozen=True)
class FactorLayout:
    labels: tuple[str, ...]
    dims: tuple[int, ...]

    def __post_init__(self):
        if len(self.labels) != len(self.dims):
            raise LayoutError("labels and dims differ in length")
        if len(set(self.labels)) != len(self.labels):
            raise LayoutError(f"duplicate factor labels in {self.labels}")
        if any(int(d) < 1 for d in self.dims):
            raise DimensionError(f"factor dimensions must be positive: {self.dims}")
        _check_dim(prod(self.dims))

    @classmethod
    def qubits(cls, labels: Sequence[str]) -> "FactorLayout":
        return cls(tuple(labels), (2,) * len(labels))

    @property
    def dim(self) -> int:
        return prod(self.dims)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise LayoutError(f"unknown factor label {label!r}") from None

    def __add__(self, other: "FactorLayout") -> "FactorLayout":
        return FactorLayout(self.labels + other.labels, self.dims + other.dims)


@dataclass(frozen=True, eq=False)
class StateVector:
    """A pure state as a flat complex amplitude array over ``layout``."""

    layout: FactorLayout
    amps: np.ndarray = field(repr=False)

    def __post_init__(self):
        amps = np.array(self.amps, dtype=complex).reshape(-1)
        if amps.size != self.layout.dim:
            raise DimensionError(
                f"{amps.size} amplitudes for layout of dimension {self.layout.dim}"
            )
        if not np.all(np.isfinite(amps)):
            raise ValueError("amplitudes must be finite")
        amps.flags.writeable = False
        object.__setattr__(self, "amps", amps)

    @classmethod
    def from_qubits(cls, labels: Sequence[str], amps) -> "StateVector":
        return cls(FactorLayout.qubits(labels), amps)

    @property
    def dim(self) -> int:
        return self.layout.dim

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def relabel(self, labels: Sequence[str]) -> "StateVector":
        return StateVector(FactorLayout(tuple(labels), self.layout.dims), self.amps)

    def tensor_view(self) -> np.ndarray:
        return self.amps.reshape(self.layout.dims)

    def allclose(self, other: "StateVector", atol: float = EPS) -> bool:
        return self.layout == other.layout and bool(
            np.max(np.abs(self.amps - other.amps), initial=0.0) < atol
        )


@dataclass(frozen=True, eq=False)
class Operator:
    """A dense square matrix."""

    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DimensionError(f"operator matrix must be square, got {m.shape}")
        _check_dim(m.shape[0])
        if not np.all(np.isfinite(m)):
            raise ValueError("operator entries must be finite")
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)

    @classmethod
    def identity(cls, dim: int) -> "Operator":
        return cls(np.eye(dim))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def H(self) -> "Operator":
        return Operator(self.matrix.conj().T)

    def __matmul__(self, other):
        if isinstance(other, Operator):
            return Operator(self.matrix @ other.matrix)
        if isinstance(other, StateVector):
            if other.dim != self.dim:
                raise DimensionError(f"operator dim {self.dim} vs state dim {other.dim}")
            return StateVector(other.layout, self.matrix @ other.amps)
        return NotImplemented

    def unitarity_defect(self) -> float:
        """Largest entry of ``|U^dagger U - I|``."""
        return float(np.max(np.abs(self.matrix.conj().T @ self.matrix - np.eye(self.dim))))

    def is_unitary(self, atol: float = EPS) -> bool:
        return self.unitarity_defect() < atol


Tensorable = Union[StateVector, Operator]


def tensor(a: Tensorable, b: Tensorable) -> Tensorable:
    """Kronecker product of two states or two operators."""
    if isinstance(a, StateVector) and isinstance(b, StateVector):
        layout = a.layout + b.layout
        return StateVector(layout, np.kron(a.amps, b.amps))
    if isinstance(a, Operator) and isinstance(b, Operator):
        _check_dim(a.dim * b.dim)
        return Operator(np.kron(a.matrix, b.matrix))
    raise TypeError("tensor() needs two StateVectors or two Operators")


def tensor_all(items: Sequence[Tensorable]) -> Tensorable:
    out = items[0]
    for item in items[1:]:
        out = tensor(out, item)
    return out


def _target_axes(layout: FactorLayout, targets: Sequence[str]) -> list[int]:
    axes = [layout.index(t) for t in targets]
    if len(set(axes)) != len(axes):
        raise LayoutError(f"repeated target in {list(targets)}")
    return axes


def apply_on_targets(op: Operator, state: StateVector, targets: Sequence[str]) -> StateVector:
    """Return ``(op (x) identity) state`` with ``op`` acting on ``targets`` in order."""
    layout = state.layout
    axes = _target_axes(layout, targets)
    tdims = [layout.dims[a] for a in axes]
    if op.dim != prod(tdims):
        raise DimensionError(
            f"operator dim {op.dim} does not match targets {list(targets)} (dim {prod(tdims)})"
        )
    psi = state.tensor_view()
    k = len(axes)
    op_t = op.matrix.reshape(tdims + tdims)
    out = np.tensordot(op_t, psi, axes=(list(range(k, 2 * k)), axes))
    # tensordot puts the target axes first; move them back into place
    out = np.moveaxis(out, list(range(k)), axes)
    return StateVector(layout, out.reshape(-1))


def embed_operator(op: Operator, layout: FactorLayout, targets: Sequence[str]) -> Operator:
    """Full-space matrix of ``op`` on ``targets``, identity on the remaining factors."""
    dim = layout.dim
    _check_dim(dim * dim)
    axes = _target_axes(layout, targets)
    tdims = [layout.dims[a] for a in axes]
    if op.dim != prod(tdims):
        raise DimensionError(f"operator dim {op.dim} does not match targets {list(targets)}")
    k = len(axes)
    # columns of the identity, viewed as a batch of tensors
    ident = np.eye(dim, dtype=complex).reshape(tuple(layout.dims) + (dim,))
    out = np.tensordot(op.matrix.reshape(tdims + tdims), ident, axes=(list(range(k, 2 * k)), axes))
    out = np.moveaxis(out, list(range(k)), axes)
    return Operator(out.reshape(dim, dim))


def inner(a: StateVector, b: StateVector) -> complex:
    """``<a|b>``, conjugate-linear in ``a``."""
    if a.layout != b.layout:
        raise LayoutError(f"layout mismatch: {a.layout} vs {b.layout}")
    return complex(np.vdot(a.amps, b.amps))


def permute(state: StateVector, labels: Sequence[str]) -> StateVector:
    """Reorder the factors of ``state`` to ``labels``."""
    layout = state.layout
    if sorted(labels) != sorted(layout.labels):
        raise LayoutError(f"{list(labels)} is not a permutation of {layout.labels}")
    axes = [layout.index(l) for l in labels]
    amps = np.transpose(state.tensor_view(), axes).reshape(-1)
    return StateVector(FactorLayout(tuple(labels), tuple(layout.dims[a] for a in axes)), amps)


def random_state(layout: FactorLayout, rng: np.random.Generator) -> StateVector:
    v = rng.normal(size=layout.dim) + 1j * rng.normal(size=layout.dim)
    return StateVector(layout, v / np.linalg.norm(v))


def equal_up_to_phase(a: StateVector, b: StateVector, atol: float = EPS) -> bool:
    """Global-phase equality of normalized states: ``|<a|b>| = 1``."""
    return abs(abs(inner(a, b)) - 1.0) < atol
