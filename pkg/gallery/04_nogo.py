"""
No assignment of facts fits
===========================

The four constraints on the six facts are checked by brute force and by
elimination over GF(2).
"""

# %%
from relfacts import nogo
from relfacts.correlations import simulated_constraint_system

system = [d.facts for d in simulated_constraint_system()]
for c in system:
    print(c)

enum = nogo.exhaustive_satisfiability(system)
print(f"enumeration: {len(enum.witnesses)} of {enum.count_checked} assignments satisfy everything")

_, counts = nogo.satisfied_counts(system)
print("most constraints any assignment satisfies:", counts.max())

# %%
# The GF(2) certificate multiplies all four rows together
# -------------------------------------------------------

gf2 = nogo.gf2_satisfiability(system)
even, sign = nogo.certificate_sign(system, gf2.certificate)
print("certificate rows:", [i + 1 for i in gf2.certificate], "| each fact squared:", even, "| signs multiply to", sign)

# %%
# Same set as Mermin's, after renaming
# ------------------------------------

mapping = nogo.find_renaming(system, nogo.mermin_reference_set())
print({str(k): v for k, v in mapping.items()})

# %%
# Flip one sign and solutions appear
# ----------------------------------

flipped = nogo.flip_sign(system, 0)
print("flipped system satisfiable:", nogo.gf2_satisfiability(flipped).satisfiable,
      "| witnesses:", len(nogo.exhaustive_satisfiability(flipped).witnesses))
