"""
Pairing a decreasing sequence
=============================

For a positive decreasing sequence ``lambda_1 >= lambda_2 >= ...`` one can
often swap coordinates in pairs ``(n, m)`` with ``lambda_m < eps lambda_n``.
The swap unitary then satisfies ``|[a, u]| >= (1 - eps)|a|`` on the paired
coordinates.  A geometric sequence with ratio 1/2 pairs neighbours as soon as
``eps > 1/2``.
"""

# %%
import numpy as np

from wstar import PairingInfeasible, build_pairing_unitary

lambdas = 0.5 ** np.arange(1, 9)
res = build_pairing_unitary(lambdas, 0.6)
print("pairs (0-based):", res.pairs)
print("diag |[a, u]|:", np.round(np.diag(res.report.lhs.blocks[0]).real, 5))
print("(1 - eps) lambda:", np.round(0.4 * lambdas, 5))
print("margin:", res.report.epsilon_bound_margin)

# %%
# Below 1/2 the neighbours are too close.  The partial result is still
# available on the exception.
try:
    build_pairing_unitary(lambdas, 0.4)
except PairingInfeasible as exc:
    print("infeasible, unpaired:", exc.failed)
    print("partial pairs:", exc.result.pairs)

# %%
# A slowly decaying sequence is harder.  For 1/k the tail terms are nearly
# equal, so the greedy rule needs a larger eps as the sequence grows and
# eventually fails for every eps on the grid.
for n in (4, 8, 16, 32):
    seq = 1.0 / np.arange(1, n + 1)
    feasible = [eps for eps in np.linspace(0.05, 0.95, 19)
                if build_pairing_unitary(seq, eps, strict=False).complete]
    best = f"{min(feasible):.2f}" if feasible else "none"
    print(f"n = {n:2d}: smallest feasible eps on the grid = {best}")
