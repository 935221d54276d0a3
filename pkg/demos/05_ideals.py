"""
Ideals of a block algebra
=========================

Two-sided ideals of ``M_2 + M_2 + C`` are sums of whole blocks.  For every
pair of ideals we compare the derivations ``D(J, I) = {x : [x, J] in I}``
with ``I:J + Z``, and for every ideal we compare the preimage of the center
of the quotient with ``Z + I``.
"""

# %%
import itertools

from wstar import BlockIdealSpec
from wstar.derivations import calkin_check, colon_plus_center, derivation_space, hoffman_check

shape = (2, 2, 1)
subsets = [frozenset(s) for r in range(4) for s in itertools.combinations(range(3), r)]

# %%
i, j = BlockIdealSpec(shape, {0}), BlockIdealSpec(shape, {0, 1})
print("D(J, I) per block:", derivation_space(i, j))
print("I:J + Z per block:", colon_plus_center(i, j))

# %%
results = [hoffman_check(BlockIdealSpec(shape, s), BlockIdealSpec(shape, t))[0]
           for s, t in itertools.product(subsets, subsets)]
print(f"Hoffman identity: {sum(results)}/{len(results)} pairs")
calkin = [calkin_check(BlockIdealSpec(shape, s)) for s in subsets]
print(f"Calkin identity: {sum(calkin)}/{len(calkin)} ideals")
