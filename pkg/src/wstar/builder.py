"""
Unitaries realizing the commutator estimates.

:func:`build_u0` gives a self-adjoint unitary ``u`` with
``|[a, u]| = u*|a - c|u + |a - c|`` for any ``c`` in the median interval.
:func:`build_pairing_unitary` swaps coordinates of a decreasing sequence in
pairs ``(n, m)`` with ``lambda_m < eps * lambda_n``, which yields
``|[a, u]| >= (1 - eps)|a|`` on the paired coordinates.
:func:`oracle_best_permutation` checks the first construction by brute force.
"""

import itertools
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .algebra import (
    DEFAULT_TOL,
    BlockElement,
    CentralElement,
    _block_abs,
    _check_same,
    _require_hermitian,
    abs_element,
    commutator,
    identity,
    make_central,
    make_element,
    min_eigenvalue,
)
from .central import c0_compute
from .errors import (
    BlockTooLarge,
    CNotInMedianInterval,
    PairingInfeasible,
    PreconditionViolated,
)
from .spectral import _region_masks, eig_tolerance, eigh

__all__ = [
    "CommutatorReport",
    "PairingResult",
    "OracleResult",
    "build_u0",
    "build_pairing_unitary",
    "oracle_best_permutation",
    "commutator_report",
    "ORACLE_MAX_DIM",
]

ORACLE_MAX_DIM = 8


@dataclass(frozen=True, eq=False)
class CommutatorReport:
    """Both sides of the commutator identity for a unitary ``u`` and center ``c0``.

    ``lhs`` is ``|[a, u]|`` and ``rhs`` is ``u*|a - c0|u + |a - c0|``.
    ``epsilon_bound_margin`` is the smallest eigenvalue of
    ``lhs - (1 - eps)|a - c0|`` over the coordinates the bound is claimed on
    (``None`` if there are none).
    """

    c0: CentralElement
    unitary: BlockElement
    lhs: BlockElement
    rhs: BlockElement
    equality_residual: float
    epsilon_bound_margin: Optional[float]
    involution_residual: float
    unitarity_residual: float
    epsilon: float = 0.0


def commutator_report(a: BlockElement, u: BlockElement, c: CentralElement,
                      epsilon: float = 0.0, coords=None) -> CommutatorReport:
    """Evaluate both sides of the identity for given ``a``, ``u`` and ``c``.

    ``coords`` optionally restricts the epsilon margin to a list of index
    arrays, one per block, in the coordinates of ``a``'s matrix blocks.
    """
    _check_same(a, u, c)
    lhs = abs_element(commutator(a, u))
    d = abs_element(a - c)
    rhs = u.adjoint() @ d @ u + d
    rhs = make_element(a.shape, [(b + b.conj().T) / 2 for b in rhs.blocks])
    gap = lhs - (1.0 - epsilon) * d
    if coords is None:
        margin = min_eigenvalue(gap)
    else:
        mins = [np.linalg.eigvalsh(g[np.ix_(idx, idx)])[0]
                for g, idx in zip(gap.blocks, coords) if len(idx)]
        margin = float(min(mins)) if mins else None
    eye = identity(a.shape)
    return CommutatorReport(
        c0=c,
        unitary=u,
        lhs=lhs,
        rhs=rhs,
        equality_residual=(lhs - rhs).max_abs(),
        epsilon_bound_margin=margin,
        involution_residual=(u @ u - eye).max_abs(),
        unitarity_residual=max((u.adjoint() @ u - eye).max_abs(),
                               (u @ u.adjoint() - eye).max_abs()),
        epsilon=float(epsilon),
    )


def _pairing_matrix(n, lower, upper):
    # Involutive permutation matrix exchanging lower[i] with upper[-1 - i].
    j = np.eye(n)
    for lo, hi in zip(lower, upper[::-1]):
        j[[lo, hi]] = j[[hi, lo]]
    return j


def build_u0(a: BlockElement, c: CentralElement = None, tol: float = DEFAULT_TOL,
             epsilon: float = 0.0) -> CommutatorReport:
    """Self-adjoint unitary achieving ``|[a, u]| = u*|a - c|u + |a - c|``.

    In the eigenbasis of each block the eigenvalues below ``c`` (plus the
    lowest ``q`` eigenvalues equal to ``c``) are exchanged in reversed order
    with those above ``c`` (plus ``r`` further eigenvalues equal to ``c``);
    the remaining eigenvectors at ``c`` are fixed.

    Parameters
    ----------
    a : BlockElement
        Self-adjoint element.
    c : CentralElement, optional
        Center; defaults to :func:`~wstar.central.c0_compute`.  Must lie in the
        median interval of every block.
    epsilon : float
        Only used for the reported margin against ``(1 - epsilon)|a - c|``.

    Raises
    ------
    CNotInMedianInterval
        If some block has more eigenvalues strictly on one side of ``c``
        than can be balanced by the eigenvalues equal to ``c``.
    """
    _require_hermitian(a, tol, "a")
    spectrum = eigh(a, tol)
    if c is None:
        c = c0_compute(a, tol)
    _check_same(a, c)
    etol = eig_tolerance(a, tol)
    blocks = []
    for k, (lam, v, ck) in enumerate(zip(spectrum.eigenvalues, spectrum.eigenvectors,
                                         c.scalars.real)):
        below, at, above = (np.flatnonzero(m) for m in _region_masks(lam, ck, etol))
        surplus = len(above) - len(below)
        if abs(surplus) > len(at):
            raise CNotInMedianInterval(
                f"block {k}: c={ck} leaves {len(below)} eigenvalues below and "
                f"{len(above)} above with only {len(at)} at c")
        q, r = max(surplus, 0), max(-surplus, 0)
        lower = np.concatenate([below, at[:q]])
        upper = np.concatenate([at[q:q + r], above])
        j = _pairing_matrix(len(lam), lower, upper)
        blocks.append(v @ j @ v.conj().T)
    u = make_element(a.shape, blocks)
    return commutator_report(a, u, c, epsilon)


@dataclass(frozen=True, eq=False)
class PairingResult:
    """Greedy pairing of a decreasing sequence and its swap unitary.

    ``pairs`` hold 0-based indices ``(n, m)`` with ``lambdas[m] < eps * lambdas[n]``;
    ``unpaired`` lists indices the unitary leaves fixed.
    """

    lambdas: tuple
    epsilon: float
    pairs: tuple
    unpaired: tuple
    unitary: BlockElement
    report: CommutatorReport

    @property
    def complete(self) -> bool:
        return not self.unpaired


def _greedy_pairs(lam, eps):
    n = len(lam)
    paired = np.zeros(n, dtype=bool)
    pairs, failed = [], []
    for i in range(n):
        if paired[i]:
            continue
        partner = None
        for m in range(i + 1, n):
            # Strict inequality; lambdas are nonincreasing so the first hit is the largest.
            if not paired[m] and lam[m] < eps * lam[i]:
                partner = m
                break
        if partner is None:
            failed.append(i)
            continue
        paired[i] = paired[partner] = True
        pairs.append((i, partner))
    return pairs, failed


def build_pairing_unitary(lambdas, epsilon: float, tol: float = DEFAULT_TOL,
                          strict: bool = True) -> PairingResult:
    """Pair coordinates of ``diag(lambdas)`` and swap each pair.

    Indices are processed from the largest value down; each unpaired index
    takes the largest unpaired partner ``m`` with ``lambdas[m] < epsilon *
    lambdas[n]``.  The epsilon margin in the report is taken over the paired
    coordinates only.

    Raises
    ------
    PairingInfeasible
        If ``strict`` and some index is left without a partner.  The exception
        carries the partial :class:`PairingResult`.
    """
    lam = np.asarray(lambdas, dtype=float)
    if lam.ndim != 1 or lam.size == 0:
        raise PreconditionViolated("lambdas must be a non-empty flat sequence")
    if not np.all(np.isfinite(lam)) or np.any(lam <= 0):
        raise PreconditionViolated("lambdas must be finite and positive")
    if np.any(np.diff(lam) > 0):
        raise PreconditionViolated("lambdas must be nonincreasing")
    if not 0 < epsilon < 1:
        raise PreconditionViolated(f"epsilon must lie in (0, 1), got {epsilon}")

    pairs, failed = _greedy_pairs(lam, epsilon)
    n = lam.size
    perm = np.eye(n)
    for i, m in pairs:
        perm[[i, m]] = perm[[m, i]]
    a = make_element([n], [np.diag(lam)], tol)
    u = make_element([n], [perm], tol)
    coords = [np.array(sorted(x for p in pairs for x in p), dtype=int)]
    report = commutator_report(a, u, make_central(a.shape, 0.0), epsilon, coords)
    result = PairingResult(tuple(float(x) for x in lam), float(epsilon),
                           tuple(pairs), tuple(failed), u, report)
    if strict and failed:
        raise PairingInfeasible(
            f"no admissible partner for indices {failed} at epsilon={epsilon}",
            failed, result)
    return result


@dataclass(frozen=True)
class OracleResult:
    """Exhaustive permutation search, block by block.

    ``best_perms[k]`` is the permutation of block ``k``'s eigenbasis with the
    smallest equality residual (the reversal if it is among the achievers),
    ``exists[k]`` whether any permutation reaches equality, and ``achieved``
    whether the reversal reaches it on every block.
    """

    best_perms: tuple
    residuals: tuple
    exists: tuple
    achieved: bool

    @property
    def all_exist(self) -> bool:
        return all(self.exists)


def oracle_best_permutation(a: BlockElement, c: CentralElement,
                            tol: float = DEFAULT_TOL) -> OracleResult:
    """Search all permutation unitaries ``V P V*`` for the exact identity.

    Every candidate is evaluated with dense matrix arithmetic, independently
    of the construction in :func:`build_u0`.
    """
    _require_hermitian(a, tol, "a")
    _check_same(a, c)
    too_big = [n for n in a.shape.block_dims if n > ORACLE_MAX_DIM]
    if too_big:
        raise BlockTooLarge(f"oracle blocks are limited to {ORACLE_MAX_DIM}, got {too_big}")
    spectrum = eigh(a, tol)
    eq_tol = 10 * eig_tolerance(a, tol)
    best, residuals, exists, achieved = [], [], [], True
    for blk, v, ck in zip(a.blocks, spectrum.eigenvectors, c.scalars):
        n = blk.shape[0]
        d = _block_abs(blk - ck * np.eye(n))
        reversal = tuple(range(n - 1, -1, -1))
        rev_res = None
        best_res, best_perm = np.inf, None
        for perm in itertools.permutations(range(n)):
            p = np.zeros((n, n))
            p[list(perm), range(n)] = 1.0
            u = v @ p @ v.conj().T
            lhs = _block_abs(blk @ u - u @ blk)
            rhs = u.conj().T @ d @ u + d
            res = float(np.max(np.abs(lhs - rhs)))
            if perm == reversal:
                rev_res = res
            if res < best_res:
                best_res, best_perm = res, perm
        if rev_res <= eq_tol:
            best_res, best_perm = rev_res, reversal
        else:
            achieved = False
        best.append(best_perm)
        residuals.append(best_res)
        exists.append(bool(best_res <= eq_tol))
    return OracleResult(tuple(best), tuple(residuals), tuple(exists), achieved)
