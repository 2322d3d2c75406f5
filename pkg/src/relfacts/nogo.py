"""Parity constraint systems over +/-1 valued facts, and two independent
decision procedures for their satisfiability.

A value ``v`` in {+1, -1} is encoded as a bit ``x`` with ``v = (-1)**x``; a
constraint ``prod(vars) = s`` becomes ``sum(x) = (1 - s) / 2 (mod 2)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations
from typing import Hashable, Iterable, Mapping, Sequence

import numpy as np

MAX_ENUM_VARS = 24


class TooManyVariablesError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class FactLabel:
    observer: str
    site: int

    def __post_init__(self):
        if self.observer not in ("A", "B"):
            raise ValueError(f"observer must be 'A' or 'B', got {self.observer!r}")
        if isinstance(self.site, bool) or not isinstance(self.site, int) or self.site < 1:
            raise ValueError(f"site must be a positive integer, got {self.site!r}")

    def __str__(self):
        return f"{self.observer}{self.site}"


def A(m: int) -> FactLabel:
    return FactLabel("A", m)


def B(m: int) -> FactLabel:
    return FactLabel("B", m)


FACT_LABELS = (A(1), A(2), A(3), B(1), B(2), B(3))


def _sort_key(v):
    return (type(v).__name__, str(v))


@dataclass(frozen=True)
class ParityConstraint:
    """``prod(values[v] for v in vars) == sign``."""

    vars: frozenset
    sign: int

    def __post_init__(self):
        object.__setattr__(self, "vars", frozenset(self.vars))
        if not self.vars:
            raise ValueError("a parity constraint needs at least one variable")
        if self.sign not in (1, -1) or isinstance(self.sign, bool):
            raise ValueError(f"sign must be +1 or -1, got {self.sign!r}")

    @property
    def bit(self) -> int:
        return (1 - self.sign) // 2

    def ordered_vars(self) -> list:
        return sorted(self.vars, key=_sort_key)

    def __str__(self):
        lhs = "*".join(str(v) for v in self.ordered_vars())
        return f"{lhs} = {self.sign:+d}"


def constraint(sign: int, *vars: Hashable) -> ParityConstraint:
    return ParityConstraint(frozenset(vars), sign)


def paper_constraint_system() -> list[ParityConstraint]:
    """The four relative-fact constraints of the three-site scenario."""
    return [
        constraint(+1, B(1), B(2), B(3)),
        constraint(-1, B(1), A(2), A(3)),
        constraint(-1, A(1), B(2), A(3)),
        constraint(-1, A(1), A(2), B(3)),
    ]


def flip_sign(system: Sequence[ParityConstraint], index: int) -> list[ParityConstraint]:
    """Copy of ``system`` with the sign of ``system[index]`` negated."""
    out = list(system)
    c = out[index]
    out[index] = ParityConstraint(c.vars, -c.sign)
    return out


def variables_of(system: Iterable[ParityConstraint], universe: Iterable | None = None) -> list:
    """Sorted variable universe for ``system``.

    Without an explicit ``universe``, systems over fact labels use all six
    labels, so unconstrained facts are still counted.
    """
    used = set().union(*(c.vars for c in system)) if system else set()
    if universe is not None:
        universe = set(universe)
        if not used <= universe:
            raise ValueError(f"variables {used - universe} are outside the universe")
        return sorted(universe, key=_sort_key)
    if all(isinstance(v, FactLabel) for v in used):
        return sorted(used | set(FACT_LABELS), key=_sort_key)
    return sorted(used, key=_sort_key)


def check(assignment: Mapping, system: Sequence[ParityConstraint]) -> list[bool]:
    """Per-constraint pass/fail of a total +/-1 assignment."""
    out = []
    for c in system:
        prod = 1
        for v in c.vars:
            if v not in assignment:
                raise KeyError(f"assignment has no value for {v}")
            val = assignment[v]
            if val not in (1, -1):
                raise ValueError(f"value of {v} must be +1 or -1, got {val!r}")
            prod *= val
        out.append(prod == c.sign)
    return out


def _encode(system: Sequence[ParityConstraint], variables: Sequence) -> tuple[np.ndarray, np.ndarray]:
    col = {v: j for j, v in enumerate(variables)}
    M = np.zeros((len(system), len(variables)), dtype=np.uint8)
    for i, c in enumerate(system):
        for v in c.vars:
            M[i, col[v]] = 1
    b = np.array([c.bit for c in system], dtype=np.uint8)
    return M, b


@dataclass
class EnumerationResult:
    satisfiable: bool
    witnesses: list[dict]
    count_checked: int
    variables: list = field(default_factory=list)


def _all_bit_rows(n: int) -> np.ndarray:
    # row i holds the bits of i, first variable most significant
    idx = np.arange(2**n, dtype=np.int64)
    shifts = np.arange(n - 1, -1, -1, dtype=np.int64)
    return ((idx[:, None] >> shifts) & 1).astype(np.uint8)


def satisfied_counts(system: Sequence[ParityConstraint], universe=None) -> tuple[list, np.ndarray]:
    """Number of satisfied constraints for every assignment, in enumeration order."""
    variables = variables_of(system, universe)
    n = len(variables)
    if n > MAX_ENUM_VARS:
        raise TooManyVariablesError(f"{n} variables exceed the enumeration bound {MAX_ENUM_VARS}")
    X = _all_bit_rows(n)
    if not system:
        return variables, np.zeros(len(X), dtype=np.int64)
    M, b = _encode(system, variables)
    parity = (X.astype(np.int64) @ M.T.astype(np.int64)) % 2
    return variables, (parity == b[None, :]).sum(axis=1)


def exhaustive_satisfiability(system: Sequence[ParityConstraint], universe=None) -> EnumerationResult:
    """Check every one of the ``2**v`` assignments."""
    variables, counts = satisfied_counts(system, universe)
    n = len(variables)
    hits = np.flatnonzero(counts == len(system))
    X = _all_bit_rows(n)
    witnesses = [
        {v: (-1 if X[i, j] else 1) for j, v in enumerate(variables)} for i in hits
    ]
    return EnumerationResult(bool(len(hits)), witnesses, 2**n, variables)


@dataclass
class GF2Result:
    satisfiable: bool
    certificate: tuple[int, ...]
    solution: dict | None
    rank: int


def gf2_satisfiability(system: Sequence[ParityConstraint], universe=None) -> GF2Result:
    """Gauss-Jordan elimination over GF(2).

    On inconsistency ``certificate`` lists the indices of the constraints
    whose mod-2 sum is ``0 = 1``.  Otherwise ``solution`` is one satisfying
    assignment with free variables set to +1.
    """
    variables = variables_of(system, universe)
    M, b = _encode(system, variables)
    m, n = M.shape
    # [coefficients | rhs | row provenance]
    R = np.concatenate([M, b[:, None], np.eye(m, dtype=np.uint8)], axis=1)
    pivots: list[tuple[int, int]] = []
    row = 0
    for col in range(n):
        hits = np.flatnonzero(R[row:, col]) + row
        if hits.size == 0:
            continue
        p = hits[0]
        if p != row:
            R[[row, p]] = R[[p, row]]
        for r in np.flatnonzero(R[:, col]):
            if r != row:
                R[r] ^= R[row]
        pivots.append((row, col))
        row += 1
        if row == m:
            break
    for r in range(row, m):
        if R[r, n] == 1:
            cert = tuple(int(i) for i in np.flatnonzero(R[r, n + 1:]))
            return GF2Result(False, cert, None, len(pivots))
    x = np.zeros(n, dtype=np.uint8)
    for r, c in pivots:
        x[c] = R[r, n]
    solution = {v: (-1 if x[j] else 1) for j, v in enumerate(variables)}
    return GF2Result(True, (), solution, len(pivots))


def certificate_sign(system: Sequence[ParityConstraint], certificate: Iterable[int]) -> tuple[bool, int]:
    """Multiply the certificate rows as +/-1 equations.

    Returns whether every variable appears an even number of times (so the
    left side is a product of squares) and the product of the signs.
    """
    counts: dict = {}
    sign = 1
    for i in certificate:
        c = system[i]
        sign *= c.sign
        for v in c.vars:
            counts[v] = counts.get(v, 0) + 1
    return all(k % 2 == 0 for k in counts.values()), sign


# Mermin's single-spin observables m^k_x, m^k_y stand in for the B and A facts.
MERMIN_RENAMING = {**{B(m): f"m{m}x" for m in (1, 2, 3)}, **{A(m): f"m{m}y" for m in (1, 2, 3)}}


def mermin_reference_set() -> list[ParityConstraint]:
    """Products of x/y spin values on the state (|000> + |111>)/sqrt(2)."""
    return [
        constraint(+1, "m1x", "m2x", "m3x"),
        constraint(-1, "m1x", "m2y", "m3y"),
        constraint(-1, "m1y", "m2x", "m3y"),
        constraint(-1, "m1y", "m2y", "m3x"),
    ]


def rename(system: Iterable[ParityConstraint], mapping: Mapping) -> list[ParityConstraint]:
    return [ParityConstraint(frozenset(mapping[v] for v in c.vars), c.sign) for c in system]


def find_renaming(a: Sequence[ParityConstraint], b: Sequence[ParityConstraint]) -> dict | None:
    """A bijection of variables taking the constraint set ``a`` onto ``b``, if any."""
    va = variables_of(a, set().union(*(c.vars for c in a)) if a else set())
    vb = variables_of(b, set().union(*(c.vars for c in b)) if b else set())
    target = set(b)
    if len(va) != len(vb) or len(set(a)) != len(target):
        return None
    if len(va) > 9:
        raise TooManyVariablesError("renaming search is limited to 9 variables")
    for perm in permutations(vb):
        mapping = dict(zip(va, perm))
        if set(rename(a, mapping)) == target:
            return mapping
    return None
