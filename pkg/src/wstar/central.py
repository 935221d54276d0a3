"""
Optimal central elements.

``lambda_minus_member`` / ``lambda_plus_member`` decide whether a central
``c`` has strictly fewer / strictly more eigenvalues below it than above
it on every block.  The supremum of the first set is the blockwise lower
median (:func:`c0_compute`), and every scalar in the median interval is an
admissible center for the exact commutator identity.
"""

from dataclasses import dataclass

import numpy as np
from scipy.optimize import linprog

from .algebra import DEFAULT_TOL, BlockElement, CentralElement, make_central
from .errors import CertificateImpossible, InvalidNorm
from .norms import SymmetricNorm, norm_eval
from .spectral import eigh, region_counts

__all__ = [
    "P0Certificate",
    "lambda_minus_member",
    "lambda_plus_member",
    "c0_compute",
    "median_interval",
    "p0_certificate",
    "dist_to_center",
    "golden_section",
]

GOLDEN_MAX_ITER = 200
GOLDEN_TOL = 1e-10


@dataclass(frozen=True)
class P0Certificate:
    """Rank data showing ``below(c0) + q ~ above(c0) + r`` on every block.

    ``q_rank[k]`` eigenvectors of the ``at`` region join the lower side and
    ``r_rank[k]`` join the upper side.
    """

    c0: CentralElement
    q_rank: tuple
    r_rank: tuple
    counts: tuple

    def holds(self) -> bool:
        for (nb, na, nu), q, r in zip(self.counts, self.q_rank, self.r_rank):
            if q < 0 or r < 0 or q + r > na or nb + q != nu + r:
                return False
        return True


def lambda_minus_member(a: BlockElement, c: CentralElement, tol: float = DEFAULT_TOL) -> bool:
    """True iff every block has strictly fewer eigenvalues below ``c`` than above it."""
    return all(nb < nu for nb, _, nu in region_counts(a, c, tol))


def lambda_plus_member(a: BlockElement, c: CentralElement, tol: float = DEFAULT_TOL) -> bool:
    """True iff every block has strictly more eigenvalues below ``c`` than above it."""
    return all(nb > nu for nb, _, nu in region_counts(a, c, tol))


def c0_compute(a: BlockElement, tol: float = DEFAULT_TOL) -> CentralElement:
    """Blockwise lower median ``lambda_{ceil(n/2)}`` of the spectrum.

    >>> from wstar.algebra import diagonal
    >>> c0_compute(diagonal([1, 2, 3])).real.tolist()
    [2.0]
    """
    spectrum = eigh(a, tol)
    meds = [lam[(len(lam) + 1) // 2 - 1] for lam in spectrum.eigenvalues]
    return make_central(a.shape, meds)


def median_interval(a: BlockElement, tol: float = DEFAULT_TOL) -> list:
    """Per-block closed interval of centers for which the exact identity holds.

    Odd ``n`` gives the degenerate interval at the middle eigenvalue; even
    ``n`` gives ``[lambda_{n/2}, lambda_{n/2+1}]``.
    """
    out = []
    for lam in eigh(a, tol).eigenvalues:
        n = len(lam)
        if n % 2:
            m = float(lam[(n + 1) // 2 - 1])
            out.append((m, m))
        else:
            out.append((float(lam[n // 2 - 1]), float(lam[n // 2])))
    return out


def p0_certificate(a: BlockElement, tol: float = DEFAULT_TOL) -> P0Certificate:
    """Certificate that the whole unit lies in the equality region at ``c0``.

    Raises
    ------
    CertificateImpossible
        If the rank balance fails on some block.  This indicates a bug: in
        finite dimensions the certificate always exists.
    """
    c0 = c0_compute(a, tol)
    counts = tuple(region_counts(a, c0, tol))
    # Ties at c0 can leave more eigenvalues below than above; the surplus then
    # moves to the upper side through r.
    q_rank = tuple(max(nu - nb, 0) for nb, _, nu in counts)
    r_rank = tuple(max(nb - nu, 0) for nb, _, nu in counts)
    cert = P0Certificate(c0, q_rank, r_rank, counts)
    if not cert.holds():
        raise CertificateImpossible(
            f"no certificate at c0={c0.real.tolist()}: counts={counts}")
    return cert


def golden_section(f, lo: float, hi: float, tol: float = GOLDEN_TOL,
                   max_iter: int = GOLDEN_MAX_ITER) -> float:
    """Minimizer of a unimodal ``f`` on ``[lo, hi]``."""
    invphi = (np.sqrt(5.0) - 1) / 2
    a, b = lo, hi
    x1 = b - invphi * (b - a)
    x2 = a + invphi * (b - a)
    f1, f2 = f(x1), f(x2)
    for _ in range(max_iter):
        if b - a <= tol:
            break
        if f1 <= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - invphi * (b - a)
            f1 = f(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + invphi * (b - a)
            f2 = f(x2)
    return (a + b) / 2


def _kyfan_center(eigs, k):
    # min over c of the sum of the k largest |lambda_i - c_block(i)|, written as
    # min k*t + sum s_i  s.t.  s_i >= +-(lambda_i - c_b) - t,  s_i >= 0.
    nb = len(eigs)
    lam = np.concatenate(eigs)
    owner = np.concatenate([np.full(len(e), j) for j, e in enumerate(eigs)])
    m = lam.size
    k = min(k, m)
    nvar = nb + 1 + m
    cost = np.zeros(nvar)
    cost[nb] = k
    cost[nb + 1:] = 1.0
    rows, rhs = [], []
    for i in range(m):
        for sign in (1.0, -1.0):
            row = np.zeros(nvar)
            row[owner[i]] = sign
            row[nb] = -1.0
            row[nb + 1 + i] = -1.0
            rows.append(row)
            rhs.append(sign * lam[i])
    bounds = [(None, None)] * (nb + 1) + [(0, None)] * m
    res = linprog(cost, A_ub=np.array(rows), b_ub=np.array(rhs), bounds=bounds,
                  method="highs")
    if not res.success:
        raise RuntimeError(f"Ky Fan center LP failed: {res.message}")
    return res.x[:nb]


def dist_to_center(a: BlockElement, norm=SymmetricNorm.operator(),
                   tol: float = DEFAULT_TOL):
    """Distance from ``a`` to the center in ``norm`` and a minimizing central element.

    Returns
    -------
    value : float
    minimizer : CentralElement
    """
    if isinstance(norm, str):
        norm = SymmetricNorm.parse(norm)
    if not isinstance(norm, SymmetricNorm):
        raise InvalidNorm(f"not a norm: {norm!r}")
    eigs = eigh(a, tol).eigenvalues
    if norm.kind == "operator":
        centers = [(lam[0] + lam[-1]) / 2 for lam in eigs]
    elif norm.kind == "schatten" and norm.param == 1:
        centers = [lam[(len(lam) + 1) // 2 - 1] for lam in eigs]
    elif norm.kind == "schatten":
        # p-th powers are separable across blocks.
        p = norm.param
        centers = [golden_section(lambda t, lam=lam: float(np.sum(np.abs(lam - t) ** p)),
                                  float(lam[0]), float(lam[-1])) for lam in eigs]
    elif len(eigs) == 1:
        centers = [golden_section(lambda t: norm.of_values(eigs[0] - t),
                                  float(eigs[0][0]), float(eigs[0][-1]))]
    else:
        centers = list(_kyfan_center(eigs, norm.param))
    c = make_central(a.shape, centers)
    return norm_eval(a - c, norm), c
