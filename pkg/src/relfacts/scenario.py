"""The three-stage gedanken experiment: GHZ preparation, observer A copying
each system qubit, and observer B copying each (system, A) pair.

Factor labels are ``S1..Sk``, ``A1..Ak`` and ``B1..Bk``, laid out in that
order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from itertools import permutations, product
from typing import Iterable, Sequence

import numpy as np

from .bases import LABELS, Basis, Site, as_basis, basis_matrix, mub_vector
from .hilbert import (
    EPS,
    FactorLayout,
    Operator,
    StateVector,
    apply_on_targets,
    embed_operator,
    tensor,
    tensor_all,
)

COMPLETIONS = ("standard", "alternate")
# phase put on the unreached ancilla column by the alternate completion
_ALT_PHASE = np.exp(0.7j)
MAX_SYSTEM_QUBITS = 6
INPUT_STATES = ("ghz", "product")


def s_label(m: int) -> str:
    return f"S{m}"


def a_label(m: int) -> str:
    return f"A{m}"


def b_label(m: int) -> str:
    return f"B{m}"


@dataclass(frozen=True)
class SubsystemModel:
    """One A ancilla per system qubit and one B ancilla per (S, A) pair."""

    system_qubits: int = 3
    initial: tuple = (1 + 0j, 0j)
    completion: str = "standard"

    def __post_init__(self):
        if self.system_qubits < 2:
            raise ValueError("need at least two system qubits")
        if self.system_qubits > MAX_SYSTEM_QUBITS:
            raise ValueError(f"at most {MAX_SYSTEM_QUBITS} system qubits are supported")
        v = np.asarray(self.initial, dtype=complex)
        if v.shape != (2,) or abs(np.linalg.norm(v) - 1) > EPS:
            raise ValueError("ancilla reference state must be a normalized qubit vector")
        object.__setattr__(self, "initial", tuple(complex(x) for x in v))
        if self.completion not in COMPLETIONS:
            raise ValueError(f"completion must be one of {COMPLETIONS}")

    @property
    def sites(self) -> range:
        return range(1, self.system_qubits + 1)

    @property
    def initial_vector(self) -> np.ndarray:
        return np.array(self.initial, dtype=complex)

    def layout(self, with_b: bool = True) -> FactorLayout:
        labels = [s_label(m) for m in self.sites] + [a_label(m) for m in self.sites]
        if with_b:
            labels += [b_label(m) for m in self.sites]
        return FactorLayout.qubits(labels)


@dataclass(frozen=True)
class ScenarioPlan:
    a_basis: Basis = Basis.Y
    b_basis: Basis = Basis.X
    b_apply: frozenset = frozenset({1, 2, 3})
    epsilon: float = EPS
    input_state: str = "ghz"

    def __post_init__(self):
        object.__setattr__(self, "a_basis", as_basis(self.a_basis))
        object.__setattr__(self, "b_basis", as_basis(self.b_basis))
        object.__setattr__(self, "b_apply", frozenset(self.b_apply))
        if self.a_basis == self.b_basis:
            raise ValueError("observers A and B must measure in different bases")
        if self.input_state not in INPUT_STATES:
            raise ValueError(f"input_state must be one of {INPUT_STATES}")
        if not self.epsilon > 0:
            raise ValueError("epsilon must be positive")


# -- states and unitaries --------------------------------------------------


def prepare_ghz(k: int = 3, labels: Sequence[str] | None = None) -> StateVector:
    """``(|0...0> + |1...1>) / sqrt(2)`` on ``k`` qubits."""
    if k < 2:
        raise ValueError(f"a GHZ state needs at least 2 qubits, got {k}")
    labels = list(labels) if labels is not None else [s_label(m) for m in range(1, k + 1)]
    amps = np.zeros(2**k, dtype=complex)
    amps[0] = amps[-1] = 1 / np.sqrt(2)
    return StateVector.from_qubits(labels, amps)


def prepare_input(model: SubsystemModel, plan: ScenarioPlan) -> StateVector:
    k = model.system_qubits
    if plan.input_state == "ghz":
        return prepare_ghz(k)
    amps = np.zeros(2**k, dtype=complex)
    amps[0] = 1
    return StateVector.from_qubits([s_label(m) for m in model.sites], amps)


def _complement(v: np.ndarray) -> np.ndarray:
    return np.array([-v[1].conjugate(), v[0].conjugate()])


def ancilla_map(n, l, initial: np.ndarray | None = None, completion: str = "standard") -> np.ndarray:
    """2x2 unitary taking ``initial`` to ``|l^(n)>`` and its complement to ``|-l^(n)>``."""
    initial = mub_vector(1, +1) if initial is None else np.asarray(initial, dtype=complex)
    phase = 1 if completion == "standard" else _ALT_PHASE
    target = mub_vector(n, l)
    other = phase * mub_vector(n, -l)
    return np.outer(target, initial.conj()) + np.outer(other, _complement(initial).conj())


def controlled_copy(source_basis: np.ndarray, n, initial=None, completion="standard",
                    rest: np.ndarray | None = None) -> np.ndarray:
    """``sum_l |e_l><e_l| (x) V_{n,l}`` plus ``(1 - P) (x) rest`` on the unreached part.

    ``source_basis`` holds the orthonormal source states ``e_{+1}, e_{-1}`` as
    columns; the ancilla is the last (qubit) factor.
    """
    d = source_basis.shape[0]
    U = np.zeros((2 * d, 2 * d), dtype=complex)
    P = np.zeros((d, d), dtype=complex)
    for j, l in enumerate(LABELS):
        proj = np.outer(source_basis[:, j], source_basis[:, j].conj())
        P += proj
        U += np.kron(proj, ancilla_map(n, l, initial, completion))
    if d > 2:
        rest = np.eye(2) if rest is None else rest
        U += np.kron(np.eye(d) - P, rest)
    return U


def premeasurement_unitary(n, initial=None, completion: str = "standard") -> Operator:
    """4x4 copy of a qubit's basis-``n`` label into an ancilla prepared in ``initial``."""
    return Operator(controlled_copy(basis_matrix(n), n, initial, completion))


def a_isometry(a_basis) -> np.ndarray:
    """(S, A) pair states ``|l^(a)>|l^(a)>`` as the image of a bare qubit."""
    iso = np.zeros((4, 2), dtype=complex)
    for l in LABELS:
        v = mub_vector(a_basis, l)
        iso += np.outer(np.kron(v, v), v.conj())
    return iso


def b_isometry(a_basis, b_basis) -> np.ndarray:
    """(S, A, B) states ``E_A|l^(b)> (x) |l^(b)>`` as the image of a bare qubit."""
    ea = a_isometry(a_basis)
    iso = np.zeros((8, 2), dtype=complex)
    for l in LABELS:
        v = mub_vector(b_basis, l)
        iso += np.outer(np.kron(ea @ v, v), v.conj())
    return iso


def b_pair_unitary(a_basis, b_basis, initial=None, completion: str = "standard") -> Operator:
    """8x8 B premeasurement on (S_m, A_m, B_m).

    B copies the basis-``b`` label of the effective pair qubit reached by A's
    copy; the two unreached pair dimensions are left alone (standard) or get
    an arbitrary ancilla unitary (alternate).
    """
    src = a_isometry(a_basis) @ np.column_stack([mub_vector(b_basis, l) for l in LABELS])
    rest = None
    if completion == "alternate":
        rest = np.array([[0, 1], [1, 0]], dtype=complex) * _ALT_PHASE
    return Operator(controlled_copy(src, b_basis, initial, completion, rest))


def _ancillas(labels: Iterable[str], initial: np.ndarray) -> StateVector:
    labels = list(labels)
    return tensor_all([StateVector.from_qubits([lab], initial) for lab in labels])


def run_A_stage(model: SubsystemModel, state: StateVector, a_basis=Basis.Y) -> StateVector:
    """Attach A ancillas and apply A's copy unitary to every (S_m, A_m)."""
    expected = tuple(s_label(m) for m in model.sites)
    if state.layout.labels != expected:
        raise ValueError(f"expected a state on {expected}, got {state.layout.labels}")
    U = premeasurement_unitary(a_basis, model.initial_vector, model.completion)
    out = tensor(state, _ancillas((a_label(m) for m in model.sites), model.initial_vector))
    for m in model.sites:
        out = apply_on_targets(U, out, [s_label(m), a_label(m)])
    return out


def attach_b_ancillas(model: SubsystemModel, state: StateVector) -> StateVector:
    return tensor(state, _ancillas((b_label(m) for m in model.sites), model.initial_vector))


def b_targets(m: int) -> list[str]:
    return [s_label(m), a_label(m), b_label(m)]


def embed_B_unitary(m: int, model: SubsystemModel | None = None,
                    plan: ScenarioPlan | None = None) -> Operator:
    """B's copy on pair ``m`` as a full-space operator, identity elsewhere."""
    model = model or SubsystemModel()
    plan = plan or ScenarioPlan()
    if m not in model.sites:
        raise ValueError(f"site {m} is outside 1..{model.system_qubits}")
    U = b_pair_unitary(plan.a_basis, plan.b_basis, model.initial_vector, model.completion)
    return embed_operator(U, model.layout(), b_targets(m))


def apply_B(model: SubsystemModel, plan: ScenarioPlan, state: StateVector, m: int) -> StateVector:
    if m not in model.sites:
        raise ValueError(f"site {m} is outside 1..{model.system_qubits}")
    U = b_pair_unitary(plan.a_basis, plan.b_basis, model.initial_vector, model.completion)
    return apply_on_targets(U, state, b_targets(m))


def run_plan(plan: ScenarioPlan | None = None, model: SubsystemModel | None = None,
             order: Sequence[int] | None = None) -> StateVector:
    """Full pipeline; B's copies run in ascending site order unless ``order`` is given."""
    plan = plan or ScenarioPlan()
    model = model or SubsystemModel()
    bad = set(plan.b_apply) - set(model.sites)
    if bad:
        raise ValueError(f"b_apply sites {sorted(bad)} outside 1..{model.system_qubits}")
    if order is None:
        order = sorted(plan.b_apply)
    elif sorted(order) != sorted(plan.b_apply):
        raise ValueError("order must be a permutation of the plan's application set")
    state = run_A_stage(model, prepare_input(model, plan), plan.a_basis)
    state = attach_b_ancillas(model, state)
    for m in order:
        state = apply_B(model, plan, state, m)
    return state


def check_commutativity(model: SubsystemModel | None = None, plan: ScenarioPlan | None = None,
                        states: Sequence[StateVector] = ()) -> float:
    """Largest ``||(U_m U_m' - U_m' U_m) psi||`` over all site pairs and ``states``."""
    model = model or SubsystemModel()
    plan = plan or ScenarioPlan()
    worst = 0.0
    for m, mp in permutations(model.sites, 2):
        if m > mp:
            continue
        for psi in states:
            ab = apply_B(model, plan, apply_B(model, plan, psi, mp), m)
            ba = apply_B(model, plan, apply_B(model, plan, psi, m), mp)
            worst = max(worst, float(np.linalg.norm(ab.amps - ba.amps)))
    return worst


def sites_for(model: SubsystemModel, plan: ScenarioPlan, with_b: bool = True) -> list[Site]:
    """Effective qubit of each site after the plan has run."""
    init = model.initial_vector
    out = []
    for m in model.sites:
        if with_b and m in plan.b_apply:
            out.append(Site(b_targets(m), b_isometry(plan.a_basis, plan.b_basis)))
        elif with_b:
            iso = np.kron(a_isometry(plan.a_basis), init[:, None])
            out.append(Site(b_targets(m), iso))
        else:
            out.append(Site([s_label(m), a_label(m)], a_isometry(plan.a_basis)))
    return out


def admissible_patterns(model: SubsystemModel, plan: ScenarioPlan) -> list[tuple[Basis, ...]]:
    """Basis patterns backed by facts: A's basis anywhere, B's only where B acted.

    Patterns are ordered lexicographically by basis id.
    """
    choices = []
    for m in model.sites:
        opts = {plan.a_basis}
        if m in plan.b_apply:
            opts.add(plan.b_basis)
        choices.append(sorted(opts))
    return [tuple(p) for p in product(*choices)]


# -- scenario files ---------------------------------------------------------


class ScenarioError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + where)


_KEYS = {"a_basis", "b_basis", "b_apply", "num_system_qubits", "epsilon", "input_state"}


def _int(value, key: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ScenarioError(f"{key} must be an integer, got {value!r}")
    return value


def parse_scenario(text: str) -> tuple[SubsystemModel, ScenarioPlan]:
    """Parse a JSON scenario description; omitted keys take the default scenario."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from None
    if not isinstance(data, dict):
        raise ScenarioError("scenario must be a JSON object")
    unknown = sorted(set(data) - _KEYS)
    if unknown:
        raise ScenarioError(f"unknown keys: {', '.join(unknown)}")

    k = _int(data.get("num_system_qubits", 3), "num_system_qubits")
    if not 2 <= k <= MAX_SYSTEM_QUBITS:
        raise ScenarioError(f"num_system_qubits must be in 2..{MAX_SYSTEM_QUBITS}, got {k}")
    bases = {}
    for key, default in (("a_basis", 3), ("b_basis", 2)):
        n = _int(data.get(key, default), key)
        if n not in (1, 2, 3):
            raise ScenarioError(f"unknown basis id {n} for {key}; expected 1, 2 or 3")
        bases[key] = n
    if bases["a_basis"] == bases["b_basis"]:
        raise ScenarioError("a_basis and b_basis must differ")

    raw = data.get("b_apply", list(range(1, k + 1)))
    if not isinstance(raw, list):
        raise ScenarioError("b_apply must be an array of site indices")
    apply = [_int(x, "b_apply entry") for x in raw]
    if len(set(apply)) != len(apply):
        raise ScenarioError(f"b_apply has duplicate sites: {apply}")
    if any(not 1 <= x <= k for x in apply):
        raise ScenarioError(f"b_apply sites must lie in 1..{k}: {apply}")

    eps = data.get("epsilon", EPS)
    if isinstance(eps, bool) or not isinstance(eps, (int, float)) or not 0 < eps < 1:
        raise ScenarioError(f"epsilon must be a number in (0, 1), got {eps!r}")
    input_state = data.get("input_state", "ghz")
    if input_state not in INPUT_STATES:
        raise ScenarioError(f"input_state must be one of {INPUT_STATES}, got {input_state!r}")

    model = SubsystemModel(system_qubits=k)
    plan = ScenarioPlan(bases["a_basis"], bases["b_basis"], frozenset(apply), float(eps), input_state)
    return model, plan


def with_completion(model: SubsystemModel, completion: str) -> SubsystemModel:
    return replace(model, completion=completion)
