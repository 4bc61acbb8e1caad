"""
Two composition series of a pair of switches
============================================

B2 = {00, 01, 10, 11} under componentwise "or".  Its two composition
series have the same factors in swapped order.
"""

from gammamon.corpus import b2, b2_swap
from gammamon.series import all_composition_series, factor_descriptors, schreier_refinement

gs = b2()
s1, s2 = all_composition_series(gs)
for s in (s1, s2):
    print(" < ".join("{" + ",".join(I.names(gs)) + "}" for I in s.chain))

# Schreier refinement pairs every factor with an isomorphic partner
cert = schreier_refinement(gs, s1, s2)
for i, j, iso in cert.pairing:
    print(f"factor {i} of the first ~ factor {j} of the second via {list(iso)}")

# let Z/2 swap the switches and only one series is left
swapped = b2_swap()
(only,) = all_composition_series(swapped)
print("with the swap:", only.length, "step,", [d.tag for d in factor_descriptors(swapped, only)])
