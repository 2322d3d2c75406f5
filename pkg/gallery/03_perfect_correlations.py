"""
Reading off the perfect correlations
====================================

Scan every basis pattern that is backed by the observers' records and keep
those whose amplitude support has a single label product.
"""

# %%
from relfacts.correlations import derive_constraints, simulated_constraint_system
from relfacts.scenario import ScenarioPlan, SubsystemModel

model = SubsystemModel()
scans, derived = derive_constraints(model, ScenarioPlan())
for s in scans:
    print(tuple(int(n) for n in s.pattern), "->", s.parity.sign if s.parity else "no definite product")

# %%
# Applying B to one pair at a time gives the same three mixed constraints
# -----------------------------------------------------------------------

for d in simulated_constraint_system(model):
    print(tuple(int(n) for n in d.pattern), d.facts)
