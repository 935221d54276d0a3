"""
The smallest interesting case
=============================

Take ``a = diag(1, 2, 3)`` in ``M_3``.  The center of ``M_3`` is the scalars,
and the best scalar to subtract is the median eigenvalue ``2``.  Swapping
the top and bottom eigenvectors gives a self-adjoint unitary ``u`` whose
commutator with ``a`` has modulus exactly ``u*|a - 2|u + |a - 2|``.
"""

# %%
import numpy as np

from wstar import build_u0, c0_compute, diagonal, median_interval

a = diagonal([1, 2, 3])
c0 = c0_compute(a)
print("c0 =", c0.real)
print("median interval =", median_interval(a))

# %%
# The unitary exchanges e1 and e3 and leaves e2 alone.
report = build_u0(a)
print(np.round(report.unitary.blocks[0].real, 12))

# %%
# Both sides of the identity are diag(2, 0, 2).
print("|[a, u]| =")
print(np.round(report.lhs.blocks[0].real, 12))
print("u*|a - c0|u + |a - c0| =")
print(np.round(report.rhs.blocks[0].real, 12))
print("equality residual:", report.equality_residual)
print("u^2 - 1 residual:", report.involution_residual)

# %%
# Any center in the median interval would do, but outside it the identity
# breaks.  For n = 3 the interval is a single point, so even c = 2.5 fails.
from wstar import CNotInMedianInterval, make_central

try:
    build_u0(a, make_central(a.shape, [2.5]))
except CNotInMedianInterval as exc:
    print("rejected:", exc)
