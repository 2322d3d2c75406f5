import numpy as np
import pytest

# Independent oracle: Pauli matrices written out by hand, not taken from the package.
I2 = np.eye(2, dtype=complex)
PAULI = {
    1: np.array([[1, 0], [0, -1]], dtype=complex),
    2: np.array([[0, 1], [1, 0]], dtype=complex),
    3: np.array([[0, -1j], [1j, 0]], dtype=complex),
}
GHZ3 = np.array([1, 0, 0, 0, 0, 0, 0, 1], dtype=complex) / np.sqrt(2)


def kron_all(mats):
    out = np.array([[1.0 + 0j]])
    for m in mats:
        out = np.kron(out, m)
    return out


def projector_probability(psi, bases, labels):
    """<psi| prod_k (1 + l_k sigma_{n_k}) / 2 |psi>."""
    P = kron_all([(I2 + l * PAULI[n]) / 2 for n, l in zip(bases, labels)])
    return float(np.real(np.vdot(psi, P @ psi)))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
