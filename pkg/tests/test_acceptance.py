"""Exit criteria for the package, one check per criterion.

Run ``pytest tests/test_acceptance.py -s`` (or execute this file) to see one
PASS/FAIL line per criterion.
"""

from itertools import combinations, product

import numpy as np
import pytest

from relfacts import nogo
from relfacts.bases import Site
from relfacts.correlations import (
    compose_amplitudes,
    derive_constraints,
    direct_amplitude,
    expansion_coefficients,
    correlation_plans,
    simulated_constraint_system,
)
from relfacts.hilbert import random_state
from relfacts.report import build_report, to_json
from relfacts.scenario import (
    ScenarioPlan,
    SubsystemModel,
    apply_B,
    prepare_ghz,
    run_A_stage,
    run_plan,
    sites_for,
    with_completion,
)

TOL = 1e-10
MODEL = SubsystemModel()
BARE = [Site.qubit(f"S{m}") for m in (1, 2, 3)]
TRIPLES = list(product((1, -1), repeat=3))


def c1_ghz_uniformity():
    t = expansion_coefficients(prepare_ghz(3), BARE, (3, 3, 3))
    worst = max(abs(abs(t[lab]) ** 2 - 1 / 8) for lab in TRIPLES)
    return worst < TOL, f"max | |c333|^2 - 1/8 | = {worst:.2e}"


def c2_isomorphism():
    bare = expansion_coefficients(prepare_ghz(3), BARE, (3, 3, 3))
    sa = run_A_stage(MODEL, prepare_ghz(3))
    comp = expansion_coefficients(sa, sites_for(MODEL, ScenarioPlan(), with_b=False), (3, 3, 3))
    worst = max(abs(bare[lab] - comp[lab]) for lab in TRIPLES)
    return worst < TOL, f"max |c333(S) - c333(SA)| = {worst:.2e}"


def c3_commutativity():
    rng = np.random.default_rng(3)
    plan = ScenarioPlan()
    worst = 0.0
    for _ in range(100):
        psi = random_state(MODEL.layout(), rng)
        for m, mp in combinations(MODEL.sites, 2):
            ab = apply_B(MODEL, plan, apply_B(MODEL, plan, psi, mp), m)
            ba = apply_B(MODEL, plan, apply_B(MODEL, plan, psi, m), mp)
            worst = max(worst, float(np.linalg.norm(ab.amps - ba.amps)))
    return worst < TOL, f"max commutator norm over 3 pairs x 100 states = {worst:.2e}"


def c4_constraint_extraction():
    derived = simulated_constraint_system(MODEL)
    signs = [d.sign for d in derived]
    patterns = [tuple(int(n) for n in d.pattern) for d in derived]
    scans, _ = derive_constraints(MODEL, ScenarioPlan())
    others = [s for s in scans if tuple(int(n) for n in s.pattern) not in patterns]
    extra = [s.pattern for s in others if s.parity is not None]
    ok = signs == [1, -1, -1, -1] and patterns == [(2, 2, 2), (2, 3, 3), (3, 2, 3), (3, 3, 2)] \
        and len(others) == 4 and not extra
    return ok, f"signs {signs} on {patterns}; {len(others)} other patterns, {len(extra)} constrained"


def c5_nogo():
    system = [d.facts for d in simulated_constraint_system(MODEL)]
    enum = nogo.exhaustive_satisfiability(system)
    gf2 = nogo.gf2_satisfiability(system)
    even, sign = nogo.certificate_sign(system, gf2.certificate)
    ok = (not enum.satisfiable and enum.count_checked == 64 and not enum.witnesses
          and not gf2.satisfiable and gf2.certificate == (0, 1, 2, 3) and even and sign == -1)
    return ok, (f"enumeration: {len(enum.witnesses)}/{enum.count_checked} satisfying; "
                f"GF(2) certificate rows {[i + 1 for i in gf2.certificate]}, sign {sign:+d}")


def c6_near_miss():
    _, counts = nogo.satisfied_counts(nogo.paper_constraint_system())
    return len(counts) == 64 and counts.max() <= 3, f"max satisfied over 64 assignments = {counts.max()}"


def c7_composition():
    worst, total = 0.0, 0.0
    for lab in TRIPLES:
        c = compose_amplitudes(lab)
        worst = max(worst, abs(c - direct_amplitude(lab, (2, 3, 3))))
        total += abs(c) ** 2
    ok = worst < TOL and abs(total - 1) < TOL
    return ok, f"max |composed - direct| = {worst:.2e}; sum |c|^2 = {total:.12f}"


def c8_mermin():
    derived = [d.facts for d in simulated_constraint_system(MODEL)]
    mapping = nogo.find_renaming(derived, nogo.mermin_reference_set())
    return mapping is not None, f"renaming {dict((str(k), v) for k, v in (mapping or {}).items())}"


def c9_oracle_equivalence():
    rng = np.random.default_rng(9)
    disagreements = 0
    for _ in range(1000):
        n = int(rng.integers(1, 11))
        k = int(rng.integers(0, 13))
        system = []
        for _ in range(k):
            mask = rng.integers(0, 2, size=n).astype(bool)
            if not mask.any():
                mask[rng.integers(0, n)] = True
            system.append(nogo.ParityConstraint(frozenset(np.flatnonzero(mask).tolist()),
                                                int(rng.choice([1, -1]))))
        universe = list(range(n))
        a = nogo.exhaustive_satisfiability(system, universe).satisfiable
        b = nogo.gf2_satisfiability(system, universe).satisfiable
        disagreements += a != b
    return disagreements == 0, f"{disagreements} disagreements in 1000 random systems"


def c10_completion_independence():
    alt = with_completion(MODEL, "alternate")
    plans = [ScenarioPlan(), ScenarioPlan(b_apply=frozenset())] + correlation_plans()
    same_reports = all(to_json(build_report(MODEL, p)) == to_json(build_report(alt, p)) for p in plans)
    worst = max(float(np.max(np.abs(run_plan(p, MODEL).amps - run_plan(p, alt).amps))) for p in plans)
    return same_reports and worst < TOL, f"reports identical: {same_reports}; max state difference {worst:.2e}"


CRITERIA = [
    ("1 GHZ coefficient uniformity", c1_ghz_uniformity),
    ("2 isomorphism S vs SA", c2_isomorphism),
    ("3 commutativity of B unitaries", c3_commutativity),
    ("4 constraint extraction", c4_constraint_extraction),
    ("5 no-go by enumeration and GF(2)", c5_nogo),
    ("6 near-miss property", c6_near_miss),
    ("7 amplitude composition", c7_composition),
    ("8 Mermin identity", c8_mermin),
    ("9 oracle equivalence", c9_oracle_equivalence),
    ("10 completion independence", c10_completion_independence),
]


@pytest.mark.parametrize("name,check", CRITERIA, ids=[c[0].split()[0] for c in CRITERIA])
def test_criterion(name, check):
    ok, detail = check()
    print(f"[{'PASS' if ok else 'FAIL'}] criterion {name}: {detail}")
    assert ok, detail


if __name__ == "__main__":
    for name, check in CRITERIA:
        ok, detail = check()
        print(f"[{'PASS' if ok else 'FAIL'}] criterion {name}: {detail}")
