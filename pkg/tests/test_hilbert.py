import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from relfacts.bases import mub_state
from relfacts.hilbert import (
    DimensionError,
    FactorLayout,
    LayoutError,
    Operator,
    StateVector,
    apply_on_targets,
    embed_operator,
    inner,
    permute,
    random_state,
    tensor,
)

X = np.array([[0, 1], [1, 0]])


def ket(label, amps):
    return StateVector.from_qubits([label], amps)


def test_tensor_basis_states():
    out = tensor(ket("a", [1, 0]), ket("b", [1, 0]))
    np.testing.assert_array_equal(out.amps, [1, 0, 0, 0])
    assert out.layout.labels == ("a", "b")


def test_tensor_identities():
    out = tensor(Operator.identity(2), Operator.identity(2))
    np.testing.assert_array_equal(out.matrix, np.eye(4))


def test_tensor_plus_zero_by_hand():
    r = 1 / np.sqrt(2)
    out = tensor(ket("a", [r, r]), ket("b", [1, 0]))
    np.testing.assert_allclose(out.amps, [r, 0, r, 0], atol=1e-15)


def test_tensor_rejects_duplicate_labels_and_mixed_kinds():
    with pytest.raises(LayoutError):
        tensor(ket("a", [1, 0]), ket("a", [1, 0]))
    with pytest.raises(TypeError):
        tensor(ket("a", [1, 0]), Operator.identity(2))


def test_dimension_cap():
    with pytest.raises(DimensionError):
        FactorLayout.qubits([f"q{i}" for i in range(21)])


def test_state_rejects_nonfinite():
    with pytest.raises(ValueError):
        ket("a", [np.nan, 1])


def test_apply_identity_and_bit_flip():
    psi = StateVector.from_qubits(["a", "b"], [1, 0, 0, 0])
    same = apply_on_targets(Operator.identity(2), psi, ["a"])
    assert same.allclose(psi)
    flipped = apply_on_targets(Operator(X), psi, ["b"])
    np.testing.assert_array_equal(flipped.amps, [0, 1, 0, 0])


def test_apply_respects_target_order():
    cnot = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]])
    psi = StateVector.from_qubits(["a", "b", "c"], np.eye(8)[0b001])  # |001>
    # control c, target a: |001> -> |101>
    out = apply_on_targets(Operator(cnot), psi, ["c", "a"])
    np.testing.assert_array_equal(out.amps, np.eye(8)[0b101])


def test_apply_errors():
    psi = StateVector.from_qubits(["a", "b"], [1, 0, 0, 0])
    with pytest.raises(DimensionError):
        apply_on_targets(Operator.identity(4), psi, ["a"])
    with pytest.raises(LayoutError):
        apply_on_targets(Operator.identity(2), psi, ["z"])


def test_embed_matches_apply(rng):
    layout = FactorLayout.qubits(["a", "b", "c"])
    U = Operator(np.linalg.qr(rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4)))[0])
    full = embed_operator(U, layout, ["c", "a"])
    psi = random_state(layout, rng)
    assert (full @ psi).allclose(apply_on_targets(U, psi, ["c", "a"]))
    assert full.is_unitary()


def test_inner_examples():
    zero, one = ket("q", [1, 0]), ket("q", [0, 1])
    assert inner(zero, one) == 0
    assert inner(zero, zero) == pytest.approx(1)
    assert inner(mub_state(3, +1), mub_state(1, +1)) == pytest.approx(1 / np.sqrt(2))


def test_inner_conjugate_linear_first_argument(rng):
    layout = FactorLayout.qubits(["a", "b"])
    a, b = random_state(layout, rng), random_state(layout, rng)
    scaled = StateVector(layout, 1j * a.amps)
    assert inner(scaled, b) == pytest.approx(-1j * inner(a, b))
    with pytest.raises(LayoutError):
        inner(a, a.relabel(["x", "y"]))


def test_permute_roundtrip(rng):
    psi = random_state(FactorLayout((("a", "b", "c")), (2, 3, 2)), rng)
    back = permute(permute(psi, ["c", "a", "b"]), ["a", "b", "c"])
    assert back.allclose(psi)


amps = st.lists(st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False),
                min_size=2, max_size=2)


@given(amps, amps, amps)
def test_tensor_associative(a, b, c):
    x, y, z = ket("a", a), ket("b", b), ket("c", c)
    assert tensor(tensor(x, y), z).allclose(tensor(x, tensor(y, z)))


@settings(max_examples=50)
@given(st.integers(0, 2**32 - 1), st.permutations(["a", "b", "c"]))
def test_unitary_application_preserves_norm(seed, targets):
    rng = np.random.default_rng(seed)
    layout = FactorLayout.qubits(["a", "b", "c"])
    psi = random_state(layout, rng)
    U = Operator(np.linalg.qr(rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4)))[0])
    out = apply_on_targets(U, psi, targets[:2])
    assert abs(out.norm() - psi.norm()) < 1e-10
