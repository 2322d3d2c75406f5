"""
Observer A, then observer B
===========================

A copies each system qubit's basis-3 label into its own qubit.  B then copies
the basis-2 label of each (system, A) pair.  The copies never collapse
anything; they only entangle.
"""

# %%
import numpy as np

from relfacts.correlations import direct_amplitude, expansion_coefficients
from relfacts.hilbert import random_state
from relfacts.scenario import (
    ScenarioPlan,
    SubsystemModel,
    check_commutativity,
    prepare_ghz,
    run_A_stage,
    run_plan,
    sites_for,
)

model = SubsystemModel()
sa = run_A_stage(model, prepare_ghz(3))
print("state after A lives on", sa.layout.labels, "norm", round(sa.norm(), 12))

# %%
# The (S, A) state has the same coefficients as the bare GHZ state
# ----------------------------------------------------------------

t = expansion_coefficients(sa, sites_for(model, ScenarioPlan(), with_b=False), (3, 3, 3))
gap = max(abs(t[lab] - direct_amplitude(lab, (3, 3, 3))) for lab in t.labels())
print(f"largest coefficient difference: {gap:.1e}")

# %%
# B's three copies commute
# ------------------------

rng = np.random.default_rng(0)
states = [random_state(model.layout(), rng) for _ in range(10)]
print(f"largest commutator norm: {check_commutativity(model, ScenarioPlan(), states):.1e}")

full = run_plan(ScenarioPlan())
print("full state dimension", full.dim)
