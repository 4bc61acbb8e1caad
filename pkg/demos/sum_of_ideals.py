"""
When the sum of two ideals is not an ideal
==========================================

A seven-element monoid with two order-ideals whose sum falls short.
"""

from gammamon.corpus import paper_t7
from gammamon.fileformat import format_instance
from gammamon.ideals import all_order_ideals, describe_violation, ideal_sum
from gammamon.monoid import is_refinement

gs = paper_t7()
print(format_instance(gs))

# the ideal lattice is a diamond: two atoms between {0} and everything
lattice = all_order_ideals(gs)
for I in lattice.ideals:
    print(I.names(gs))

# add the two atoms elementwise
A, B = lattice.ideals[1], lattice.ideals[2]
total, verdict = ideal_sum(gs, A, B)
print("A + B =", [gs.names[a] for a in sorted(total)])

# b is missing, yet b + b = s sits inside the sum
print("ideal?", bool(verdict), "-", describe_violation(gs, verdict.witness))

# the culprit: 1 + 1 = x + x has no refinement
print("refinement witness:", [gs.names[a] for a in is_refinement(gs.monoid).witness])
