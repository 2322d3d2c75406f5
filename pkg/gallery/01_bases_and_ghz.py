"""
Mutually unbiased bases and the GHZ state
=========================================

The three single-qubit bases, and how the three-qubit GHZ state looks when
expanded in them.
"""

# %%
# Three bases, every cross overlap has squared modulus 1/2
# ---------------------------------------------------------

from itertools import product

import numpy as np

from relfacts.bases import Site, mub_state
from relfacts.correlations import expansion_coefficients, support_constraint
from relfacts.hilbert import inner
from relfacts.scenario import prepare_ghz

for n, m in product((1, 2, 3), repeat=2):
    overlaps = [abs(inner(mub_state(n, l), mub_state(m, k))) ** 2 for l, k in product((1, -1), repeat=2)]
    print(f"bases {n},{m}: |<l|k>|^2 = {np.round(overlaps, 3)}")

# %%
# GHZ coefficients in a few basis patterns
# ----------------------------------------
#
# In the (3,3,3) pattern every outcome triple is equally likely; in (2,2,2)
# only triples whose labels multiply to +1 survive.

ghz = prepare_ghz(3)
qubits = [Site.qubit(f"S{m}") for m in (1, 2, 3)]
for pattern in [(1, 1, 1), (3, 3, 3), (2, 2, 2), (2, 3, 3)]:
    t = expansion_coefficients(ghz, qubits, pattern)
    probs = {lab: round(abs(c) ** 2, 4) for lab, c in t.entries.items()}
    print(pattern, probs, "->", support_constraint(t))
