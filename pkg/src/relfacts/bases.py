"""The three mutually unbiased single-qubit bases.

Basis 1 is the computational basis, 2 is the X eigenbasis and 3 is the Y
eigenbasis.  Each state is labelled by an eigenvalue ``l = +1`` or ``-1``; the
``+1`` state is index 0 of a basis and ``-1`` is index 1.
"""

from __future__ import annotations

from enum import IntEnum

import numpy as np

from .hilbert import Operator, StateVector

_R = 1 / np.sqrt(2)

LABELS = (+1, -1)


class Basis(IntEnum):
    Z = 1
    X = 2
    Y = 3


_VECTORS = {
    (Basis.Z, +1): np.array([1, 0], dtype=complex),
    (Basis.Z, -1): np.array([0, 1], dtype=complex),
    (Basis.X, +1): _R * np.array([1, 1], dtype=complex),
    (Basis.X, -1): _R * np.array([1, -1], dtype=complex),
    (Basis.Y, +1): _R * np.array([1, 1j], dtype=complex),
    (Basis.Y, -1): _R * np.array([1, -1j], dtype=complex),
}


def as_basis(n) -> Basis:
    if isinstance(n, bool):
        raise ValueError(f"invalid basis id {n!r}")
    try:
        return Basis(n)
    except ValueError:
        raise ValueError(f"invalid basis id {n!r}; expected 1, 2 or 3") from None


def check_label(l) -> int:
    if isinstance(l, bool) or l not in (1, -1):
        raise ValueError(f"invalid eigenvalue label {l!r}; expected +1 or -1")
    return int(l)


def label_index(l: int) -> int:
    return 0 if check_label(l) == 1 else 1


def mub_vector(n, l) -> np.ndarray:
    """Coordinates of ``|l^(n)>`` in the computational basis."""
    return _VECTORS[as_basis(n), check_label(l)].copy()


def mub_state(n, l, label: str = "q") -> StateVector:
    return StateVector.from_qubits([label], mub_vector(n, l))


def basis_matrix(n) -> np.ndarray:
    """Columns are ``|+1^(n)>`` and ``|-1^(n)>``."""
    return np.column_stack([mub_vector(n, l) for l in LABELS])


def basis_change(src, dst) -> Operator:
    """Entries ``<l^(dst)|l'^(src)>``: maps basis-``src`` coordinates to basis-``dst`` ones."""
    return Operator(basis_matrix(dst).conj().T @ basis_matrix(src))


def projector(n, l) -> np.ndarray:
    v = mub_vector(n, l)
    return np.outer(v, v.conj())


def pauli(n) -> np.ndarray:
    """Observable whose eigenbasis is basis ``n``, eigenvalues ``+1/-1``."""
    return projector(n, +1) - projector(n, -1)


class Site:
    """An effective qubit living inside one or more tensor factors.

    ``isometry`` is a ``(dim, 2)`` matrix with orthonormal columns sending the
    computational basis of a bare qubit into the site's factor space; basis
    states of the site are the images of the bare-qubit basis states.
    """

    def __init__(self, factors, isometry):
        self.factors = tuple(factors)
        iso = np.array(isometry, dtype=complex)
        if iso.ndim != 2 or iso.shape[1] != 2:
            raise ValueError(f"site isometry must have shape (dim, 2), got {iso.shape}")
        if not np.allclose(iso.conj().T @ iso, np.eye(2), atol=1e-12):
            raise ValueError("site map is not an isometry")
        iso.flags.writeable = False
        self.isometry = iso

    @classmethod
    def qubit(cls, label: str) -> "Site":
        return cls((label,), np.eye(2))

    @property
    def dim(self) -> int:
        return self.isometry.shape[0]

    def basis_vector(self, n, l) -> np.ndarray:
        return self.isometry @ mub_vector(n, l)

    def basis_matrix(self, n) -> np.ndarray:
        return self.isometry @ basis_matrix(n)

    def __repr__(self):
        return f"Site({'.'.join(self.factors)})"
