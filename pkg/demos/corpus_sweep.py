"""
Sweeping every small monoid
===========================

Build all commutative monoids of order at most 5, attach actions from
the cyclic subgroups of their automorphism groups, and run the property
sweeps.  One instance, n5-m019-a0, breaks the chain-length checks.
"""

import numpy as np

from gammamon import verify
from gammamon.corpus import corpus_instances
from gammamon.series import all_composition_series

corpus = corpus_instances(5)
sizes = np.array([inst.gs.size for inst in corpus])
print("instances per order:", np.bincount(sizes)[1:])
print("refinement instances:", sum(inst.flags["refinement"] for inst in corpus))

for suite in (verify.jordan_holder_suite, verify.isomorphism_suite, verify.chain_suite, verify.split_suite):
    print(suite(corpus).summary())

# the odd one out: its ideal lattice has maximal chains of two lengths
odd = next(inst for inst in corpus if inst.label == "n5-m019-a0")
print(np.array(odd.gs.table))
for s in all_composition_series(odd.gs):
    print(s.length, [I.elements for I in s.chain])
