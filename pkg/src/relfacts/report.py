"""Deterministic reports of a scenario run.

JSON output uses sorted keys and numbers rounded to 12 significant digits;
magnitudes below the run's epsilon are written as 0.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from . import __version__, nogo
from .correlations import derive_constraints
from .scenario import ScenarioPlan, SubsystemModel


def _num(x: float, eps: float) -> float:
    if abs(x) < eps:
        return 0.0
    return float(f"{x:.12g}")


def _label_key(labels) -> str:
    return ",".join(f"{l:+d}" for l in labels)


def _facts_json(assignment: dict) -> dict:
    return {str(k): int(v) for k, v in assignment.items()}


class ProcedureDisagreement(RuntimeError):
    """Enumeration and GF(2) elimination returned different verdicts."""


@dataclass
class NogoOutcome:
    system: list[nogo.ParityConstraint]
    enumeration: nogo.EnumerationResult
    gf2: nogo.GF2Result

    @property
    def agree(self) -> bool:
        return self.enumeration.satisfiable == self.gf2.satisfiable

    @property
    def satisfiable(self) -> bool:
        if not self.agree:
            raise ProcedureDisagreement(
                f"enumeration says {self.enumeration.satisfiable}, GF(2) says {self.gf2.satisfiable}"
            )
        return self.enumeration.satisfiable


def decide(system: list[nogo.ParityConstraint], universe=None) -> NogoOutcome:
    return NogoOutcome(system, nogo.exhaustive_satisfiability(system, universe),
                       nogo.gf2_satisfiability(system, universe))


def _nogo_json(out: NogoOutcome) -> dict:
    ok, sign = nogo.certificate_sign(out.system, out.gf2.certificate) if not out.gf2.satisfiable else (True, 1)
    return {
        "system": [str(c) for c in out.system],
        "satisfiable": out.enumeration.satisfiable if out.agree else None,
        "procedures_agree": out.agree,
        "enumeration": {
            "satisfiable": out.enumeration.satisfiable,
            "count_checked": out.enumeration.count_checked,
            "witnesses": [_facts_json(w) for w in out.enumeration.witnesses],
        },
        "gf2": {
            "satisfiable": out.gf2.satisfiable,
            "rank": out.gf2.rank,
            # 1-based rows, matching the listing order
            "certificate": [i + 1 for i in out.gf2.certificate],
            "certificate_sign": sign if not out.gf2.satisfiable else None,
            "certificate_even": ok if not out.gf2.satisfiable else None,
            "solution": _facts_json(out.gf2.solution) if out.gf2.solution else None,
        },
    }


def build_report(model: SubsystemModel, plan: ScenarioPlan, flip_sign: int | None = None,
                 command: str = "run") -> dict:
    """Everything a command prints, as plain JSON-ready data.

    ``flip_sign`` is a 1-based index into the derived constraint list.
    Raises ``NumericToleranceError`` from the scan and ``IndexError`` for a
    bad ``flip_sign``.
    """
    eps = plan.epsilon
    scans, derived = derive_constraints(model, plan)
    system = [d.facts for d in derived]
    if flip_sign is not None:
        if not 1 <= flip_sign <= len(system):
            raise IndexError(f"--flip-sign {flip_sign} outside 1..{len(system)}")
        system = nogo.flip_sign(system, flip_sign - 1)
    universe = [nogo.FactLabel(o, m) for o in "AB" for m in model.sites]
    outcome = decide(system, universe)
    return {
        "version": __version__,
        "command": command,
        "scenario_echo": {
            "a_basis": int(plan.a_basis),
            "b_basis": int(plan.b_basis),
            "b_apply": sorted(plan.b_apply),
            "num_system_qubits": model.system_qubits,
            "epsilon": plan.epsilon,
            "input_state": plan.input_state,
        },
        "tolerances_used": {
            "epsilon": plan.epsilon,
            "zero_tolerance": _num(100 * plan.epsilon, 0.0),
            "support_rescale_factors": [0.1, 1.0, 10.0],
        },
        "patterns_scanned": [[int(n) for n in s.pattern] for s in scans],
        "derived_constraints": [
            {
                "pattern": [int(n) for n in d.pattern],
                "sign": d.sign,
                "facts": [str(v) for v in d.facts.ordered_vars()],
                "constraint": str(d.facts),
            }
            for d in derived
        ],
        "probability_tables": [
            {
                "pattern": [int(n) for n in s.pattern],
                "probabilities": {
                    _label_key(lab): _num(abs(s.tensor[lab]) ** 2, eps) for lab in s.tensor.labels()
                },
            }
            for s in scans
        ],
        "nogo_result": {"flipped_row": flip_sign, **_nogo_json(outcome)},
    }


def to_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def _pattern_str(p) -> str:
    return "(" + ",".join(str(n) for n in p) + ")"


def render_constraints(report: dict) -> str:
    lines = [f"patterns scanned: {len(report['patterns_scanned'])}"]
    for p in report["patterns_scanned"]:
        hit = [d for d in report["derived_constraints"] if d["pattern"] == p]
        lines.append(f"  {_pattern_str(p)}  " + (hit[0]["constraint"] if hit else "no definite parity"))
    lines.append(f"deterministic constraints: {len(report['derived_constraints'])}")
    return "\n".join(lines) + "\n"


def render_nogo(report: dict) -> str:
    res = report["nogo_result"]
    lines = []
    if res["flipped_row"] is not None:
        lines.append(f"sign of row {res['flipped_row']} flipped")
    lines.append("constraint system:")
    lines += [f"  {i}. {c}" for i, c in enumerate(res["system"], start=1)]
    enum, gf2 = res["enumeration"], res["gf2"]
    verdict = lambda sat: "SAT" if sat else "UNSAT"
    lines.append(f"enumeration: {verdict(enum['satisfiable'])} "
                 f"({enum['count_checked']} assignments, {len(enum['witnesses'])} satisfying)")
    lines.append(f"GF(2) elimination: {verdict(gf2['satisfiable'])} (rank {gf2['rank']})")
    if not gf2["satisfiable"]:
        rows = " + ".join(str(i) for i in gf2["certificate"])
        lines.append(f"certificate: rows {rows}; every fact appears squared, "
                     f"product of signs = {gf2['certificate_sign']:+d}")
    elif enum["witnesses"]:
        w = enum["witnesses"][0]
        lines.append("witness: " + " ".join(f"{k}={v:+d}" for k, v in w.items()))
    lines.append("procedures agree" if res["procedures_agree"] else "PROCEDURES DISAGREE")
    return "\n".join(lines) + "\n"


def render_run(report: dict) -> str:
    s = report["scenario_echo"]
    head = (f"scenario: {s['num_system_qubits']} qubits ({s['input_state']}), A basis {s['a_basis']}, "
            f"B basis {s['b_basis']}, B applied to {s['b_apply'] or 'none'}, epsilon {s['epsilon']:g}\n")
    tables = []
    for t in report["probability_tables"]:
        probs = "  ".join(f"{k}:{v:.6g}" for k, v in t["probabilities"].items())
        tables.append(f"  {_pattern_str(t['pattern'])}  {probs}")
    return (head + render_constraints(report) + "probabilities:\n" + "\n".join(tables) + "\n"
            + render_nogo(report))

