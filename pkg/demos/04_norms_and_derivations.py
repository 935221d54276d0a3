"""
Distance to the center and the norm of a derivation
===================================================

For self-adjoint ``a`` the inner derivation ``delta_a(x) = [a, x]`` has
norm between ``dist(a, Z)`` and ``2 dist(a, Z)``.  The unitary from
:func:`wstar.build_u0` shows ``||a - c0|| <= ||[a, u0]||`` in every symmetric
norm, which we check for a few of them.
"""

# %%
import numpy as np

from wstar import SymmetricNorm, dist_to_center, make_element
from wstar.derivations import c11_bound_check, sakai_check

rng = np.random.default_rng(7)
blocks = []
for n in (3, 2):
    x = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    blocks.append((x + x.conj().T) / 2)
a = make_element([3, 2], blocks)

# %%
norms = [SymmetricNorm.operator(), SymmetricNorm.schatten(1), SymmetricNorm.schatten(2),
         SymmetricNorm.kyfan(2)]
for norm in norms:
    dist, center = dist_to_center(a, norm)
    check = c11_bound_check(a, norm)
    print(f"{str(norm):12s} dist={dist:.4f}  ||a - c0||={check.d_norm:.4f}  "
          f"||[a, u0]||={check.delta_u0_norm:.4f}  ok={check.passed}")

# %%
# Random unitaries approach the upper end: the sampled maximum of
# ||[a, u]|| lands between dist and 2 dist.
res = sakai_check(a, samples=500, seed=1)
print(f"dist = {res.dist:.4f}, max over samples = {res.delta_norm_lower:.4f}, "
      f"ratio = {res.delta_norm_lower / res.dist:.3f}")
