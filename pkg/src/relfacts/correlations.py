"""Expansion coefficients in per-site bases, deterministic parity detection
from amplitude supports, Born probabilities, and amplitude composition.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Sequence

import numpy as np

from . import nogo
from .bases import LABELS, Basis, Site, as_basis, check_label, label_index, mub_vector
from .hilbert import EPS, LayoutError, NumericToleranceError, StateVector, permute
from .scenario import ScenarioPlan, SubsystemModel, admissible_patterns, prepare_ghz, run_plan, sites_for

ZERO_TOLERANCE = 1e-8


class AmbiguousSupportError(NumericToleranceError):
    """Support classification changes when the zero tolerance is rescaled."""


@dataclass(frozen=True, eq=False)
class CoefficientTensor:
    """Amplitudes ``c_{pqr...}`` indexed by one +/-1 label per site."""

    site_bases: tuple[Basis, ...]
    array: np.ndarray
    residual: float = 0.0

    def __getitem__(self, labels) -> complex:
        return complex(self.array[tuple(label_index(l) for l in labels)])

    def labels(self) -> list[tuple[int, ...]]:
        return list(product(LABELS, repeat=len(self.site_bases)))

    @property
    def entries(self) -> dict[tuple[int, ...], complex]:
        return {t: self[t] for t in self.labels()}

    def total_weight(self) -> float:
        return float(np.sum(np.abs(self.array) ** 2))


def _check_partition(state: StateVector, sites: Sequence[Site]) -> list[str]:
    order = [f for s in sites for f in s.factors]
    if len(set(order)) != len(order) or set(order) != set(state.layout.labels):
        raise LayoutError(f"sites {sites} do not partition the factors {state.layout.labels}")
    for s in sites:
        d = int(np.prod([state.layout.dims[state.layout.index(f)] for f in s.factors]))
        if d != s.dim:
            raise LayoutError(f"{s} has isometry dimension {s.dim}, factors give {d}")
    return order


def expansion_coefficients(state: StateVector, sites: Sequence[Site], site_bases: Sequence,
                           epsilon: float = EPS) -> CoefficientTensor:
    """Overlaps of ``state`` with every product of per-site basis states.

    Raises ``NumericToleranceError`` if more than ``epsilon`` of the state's
    weight lies outside the product of the sites' effective qubits.
    """
    if len(sites) != len(site_bases):
        raise ValueError("need one basis per site")
    bases = tuple(as_basis(n) for n in site_bases)
    order = _check_partition(state, sites)
    psi = permute(state, order).amps.reshape([s.dim for s in sites])
    c = psi
    for site, n in zip(sites, bases):
        # contract the leading site axis; the new label axis goes to the back
        c = np.tensordot(site.basis_matrix(n).conj(), c, axes=([0], [0]))
        c = np.moveaxis(c, 0, -1)
    residual = float(np.vdot(psi, psi).real - np.sum(np.abs(c) ** 2))
    if residual > epsilon:
        raise NumericToleranceError(
            f"weight {residual:.3e} outside the effective site subspace exceeds {epsilon:g}"
        )
    return CoefficientTensor(bases, c, residual)


def support(t: CoefficientTensor, zero_tolerance: float = ZERO_TOLERANCE) -> frozenset:
    return frozenset(lab for lab in t.labels() if abs(t[lab]) > zero_tolerance)


@dataclass(frozen=True)
class SiteParity:
    """Product of the outcome labels in ``site_bases`` always equals ``sign``."""

    site_bases: tuple[Basis, ...]
    sign: int


def support_constraint(t: CoefficientTensor, zero_tolerance: float = ZERO_TOLERANCE) -> SiteParity | None:
    """The deterministic label-product of ``t``'s support, or None if both occur."""
    supports = {support(t, zero_tolerance * f) for f in (0.1, 1.0, 10.0)}
    if len(supports) != 1:
        raise AmbiguousSupportError(
            f"support of the {tuple(int(b) for b in t.site_bases)} tensor depends on the zero tolerance"
        )
    supp = supports.pop()
    if not supp:
        raise ValueError("coefficient tensor has empty support")
    signs = {int(np.prod(lab)) for lab in supp}
    if len(signs) == 2:
        return None
    return SiteParity(t.site_bases, signs.pop())


def born_probability(t: CoefficientTensor, labels) -> float:
    return abs(t[labels]) ** 2


def probability_table(t: CoefficientTensor) -> dict[tuple[int, ...], float]:
    return {lab: born_probability(t, lab) for lab in t.labels()}


def direct_amplitude(labels: Sequence[int], site_bases: Sequence, state: StateVector | None = None) -> complex:
    """``<l_1^(n_1) l_2^(n_2) ...|state>`` on bare qubits (default: the GHZ state)."""
    state = state if state is not None else prepare_ghz(len(labels))
    bra = np.array([1 + 0j])
    for l, n in zip(labels, site_bases):
        bra = np.kron(bra, mub_vector(n, l))
    return complex(np.vdot(bra, state.amps))


def compose_amplitudes(final_labels: Sequence[int], final_bases: Sequence = (2, 3, 3),
                       via_basis=3, state: StateVector | None = None) -> complex:
    """Sum over the intermediate first-site label of ``w(final, via) w(via, state)``.

    ``w(x, y) = <x|y>`` on the bare qubits; the first site passes through
    ``via_basis``, the others keep their final bases throughout.
    """
    labels = [check_label(l) for l in final_labels]
    state = state if state is not None else prepare_ghz(len(labels))
    p, rest = labels[0], labels[1:]
    total = 0j
    for mid in LABELS:
        w_out = complex(np.vdot(mub_vector(final_bases[0], p), mub_vector(via_basis, mid)))
        w_in = direct_amplitude([mid, *rest], [via_basis, *final_bases[1:]], state)
        total += w_out * w_in
    return total


@dataclass(frozen=True)
class DerivedConstraint:
    pattern: tuple[Basis, ...]
    sign: int
    facts: nogo.ParityConstraint


def fact_constraint(parity: SiteParity, a_basis, b_basis) -> nogo.ParityConstraint:
    """Read a site-basis parity as a constraint on the observers' facts."""
    a_basis, b_basis = as_basis(a_basis), as_basis(b_basis)
    labels = []
    for m, n in enumerate(parity.site_bases, start=1):
        if n == b_basis:
            labels.append(nogo.B(m))
        elif n == a_basis:
            labels.append(nogo.A(m))
        else:
            raise ValueError(f"basis {int(n)} at site {m} belongs to neither observer")
    return nogo.ParityConstraint(frozenset(labels), parity.sign)


@dataclass
class PatternScan:
    pattern: tuple[Basis, ...]
    tensor: CoefficientTensor
    parity: SiteParity | None


def scan_patterns(state: StateVector, sites: Sequence[Site], patterns, epsilon: float = EPS,
                  zero_tolerance: float | None = None) -> list[PatternScan]:
    zero_tolerance = ZERO_TOLERANCE if zero_tolerance is None else zero_tolerance
    out = []
    for pattern in patterns:
        t = expansion_coefficients(state, sites, pattern, epsilon)
        out.append(PatternScan(tuple(as_basis(n) for n in pattern), t, support_constraint(t, zero_tolerance)))
    return out


def derive_constraints(model: SubsystemModel | None = None, plan: ScenarioPlan | None = None,
                       state: StateVector | None = None) -> tuple[list[PatternScan], list[DerivedConstraint]]:
    """Run ``plan`` and scan every admissible basis pattern for deterministic parities.

    The zero tolerance is ``100 * plan.epsilon``.
    """
    model = model or SubsystemModel()
    plan = plan or ScenarioPlan()
    state = state if state is not None else run_plan(plan, model)
    scans = scan_patterns(state, sites_for(model, plan), admissible_patterns(model, plan),
                          plan.epsilon, 100 * plan.epsilon)
    derived = [
        DerivedConstraint(s.pattern, s.parity.sign, fact_constraint(s.parity, plan.a_basis, plan.b_basis))
        for s in scans
        if s.parity is not None
    ]
    return scans, derived


def correlation_plans() -> list[ScenarioPlan]:
    """B on every pair, then B on pair 1, 2 and 3 alone."""
    return [ScenarioPlan(b_apply=frozenset(s)) for s in ({1, 2, 3}, {1}, {2}, {3})]


def correlation_patterns() -> list[tuple[Basis, ...]]:
    X, Y = Basis.X, Basis.Y
    return [(X, X, X), (X, Y, Y), (Y, X, Y), (Y, Y, X)]


def simulated_constraint_system(model: SubsystemModel | None = None) -> list[DerivedConstraint]:
    """One constraint per plan of ``correlation_plans``, read off in the matching pattern."""
    model = model or SubsystemModel()
    out = []
    for plan, pattern in zip(correlation_plans(), correlation_patterns()):
        state = run_plan(plan, model)
        (scan,) = scan_patterns(state, sites_for(model, plan), [pattern], plan.epsilon, 100 * plan.epsilon)
        if scan.parity is None:
            raise NumericToleranceError(f"no deterministic parity for pattern {pattern}")
        out.append(DerivedConstraint(scan.pattern, scan.parity.sign,
                                     fact_constraint(scan.parity, plan.a_basis, plan.b_basis)))
    return out
