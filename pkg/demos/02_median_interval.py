"""
Choosing the center
===================

With an even number of eigenvalues the admissible centers form a whole
interval ``[lambda_{n/2}, lambda_{n/2+1}]``.  We sweep ``c`` across and
past that interval on a random 4x4 block and compare the construction with
a brute-force search over all 24 permutation unitaries.
"""

# %%
import numpy as np

from wstar import build_u0, make_central, make_element, median_interval, oracle_best_permutation

rng = np.random.default_rng(0)
lam = np.array([-1.0, 0.5, 2.0, 4.0])
q, _ = np.linalg.qr(rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4)))
a = make_element([4], [q @ np.diag(lam) @ q.conj().T])
(lo, hi), = median_interval(a)
print(f"median interval: [{lo}, {hi}]")

# %%
for c in np.linspace(lo - 1, hi + 1, 9):
    center = make_central(a.shape, [c])
    oracle = oracle_best_permutation(a, center)
    inside = lo <= c <= hi
    note = ""
    if inside:
        note = f"  construction residual {build_u0(a, center).equality_residual:.1e}"
    print(f"c = {c:5.2f}  inside={inside!s:5}  some permutation works: {oracle.exists[0]!s:5}{note}")

# %%
# Several blocks are handled independently; c0 is the lower median of each.
from wstar import c0_compute, diagonal

b = diagonal([0, 1, 5, 6], [3, 3, 3], [10])
print("c0 per block:", c0_compute(b).real)
print("intervals:", median_interval(b))
