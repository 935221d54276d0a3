"""
Spectral calculus relative to the center.

For a self-adjoint ``a`` and a central ``c`` the three spectral projections
``below``, ``at`` and ``above`` are taken blockwise: block ``k`` keeps the
eigenvectors whose eigenvalues are ``< c_k``, ``== c_k`` (up to a
scale-aware tolerance) and ``> c_k``.
"""

from dataclasses import dataclass

import numpy as np

from .algebra import (
    DEFAULT_TOL,
    BlockElement,
    BlockProjection,
    CentralElement,
    _check_same,
    _frozen,
    _require_hermitian,
    make_element,
    psd_geq,
)
from .errors import NumericalFailure, PreconditionViolated

__all__ = [
    "REGIONS",
    "SpectralData",
    "SingularValueFunction",
    "eigh",
    "eig_tolerance",
    "region_counts",
    "spectral_projection",
    "L11Report",
    "check_l11",
    "mu_function",
]

REGIONS = ("below", "at", "above")


@dataclass(frozen=True, eq=False)
class SpectralData:
    """Per-block ascending eigenvalues and matching unitary eigenbases."""

    shape: object
    eigenvalues: tuple
    eigenvectors: tuple

    def reconstruct(self) -> BlockElement:
        return make_element(self.shape, [(v * lam) @ v.conj().T for lam, v in
                                         zip(self.eigenvalues, self.eigenvectors)])


def _fix_phases(v, tol=1e-12):
    # Make the first non-negligible entry of each column real positive.
    v = v.copy()
    for j in range(v.shape[1]):
        col = v[:, j]
        idx = np.flatnonzero(np.abs(col) > tol)
        if idx.size:
            z = col[idx[0]]
            v[:, j] = col * (abs(z) / z)
    return v


def eigh(a: BlockElement, tol: float = DEFAULT_TOL) -> SpectralData:
    """Spectral decomposition of a self-adjoint element, block by block.

    Eigenvalues come back in ascending order (stable for ties) and each
    eigenvector is phase-normalized, so identical inputs give identical
    outputs bit for bit.
    """
    _require_hermitian(a, tol, "a")
    values, vectors = [], []
    for b in a.blocks:
        try:
            lam, v = np.linalg.eigh((b + b.conj().T) / 2)
        except np.linalg.LinAlgError as exc:
            raise NumericalFailure(str(exc)) from exc
        order = np.argsort(lam, kind="stable")
        lam = np.array(lam[order], dtype=float)
        lam.setflags(write=False)
        values.append(lam)
        vectors.append(_frozen(_fix_phases(v[:, order])))
    return SpectralData(a.shape, tuple(values), tuple(vectors))


def eig_tolerance(a: BlockElement, tol: float = DEFAULT_TOL) -> float:
    """Tie threshold ``tol * max(1, ||a||_max)`` for eigenvalue equality."""
    return tol * max(1.0, a.max_abs())


def _region_masks(lam, c, etol):
    at = np.abs(lam - c) <= etol
    below = (lam < c) & ~at
    above = (lam > c) & ~at
    return below, at, above


def region_counts(a, c: CentralElement, tol: float = DEFAULT_TOL, spectrum=None):
    """Per-block ``(n_below, n_at, n_above)`` eigenvalue counts relative to ``c``."""
    spectrum = eigh(a, tol) if spectrum is None else spectrum
    etol = eig_tolerance(a, tol)
    out = []
    for lam, ck in zip(spectrum.eigenvalues, c.scalars.real):
        masks = _region_masks(lam, ck, etol)
        out.append(tuple(int(np.count_nonzero(m)) for m in masks))
    return out


def spectral_projection(a: BlockElement, c: CentralElement, region: str,
                        tol: float = DEFAULT_TOL, spectrum=None) -> BlockProjection:
    """Spectral projection of ``a`` onto ``region`` in {"below", "at", "above"} of ``c``.

    Examples
    --------
    >>> from wstar.algebra import diagonal, make_central
    >>> a = diagonal([1, 2, 3])
    >>> [spectral_projection(a, make_central(a.shape, 2), r).ranks for r in REGIONS]
    [(1,), (1,), (1,)]
    """
    if region not in REGIONS:
        raise ValueError(f"region must be one of {REGIONS}, got {region!r}")
    _check_same(a, c)
    spectrum = eigh(a, tol) if spectrum is None else spectrum
    etol = eig_tolerance(a, tol)
    blocks, ranks = [], []
    for lam, v, ck in zip(spectrum.eigenvalues, spectrum.eigenvectors, c.scalars.real):
        mask = _region_masks(lam, ck, etol)[REGIONS.index(region)]
        w = v[:, mask]
        blocks.append(_frozen(w @ w.conj().T))
        ranks.append(int(np.count_nonzero(mask)))
    return BlockProjection(a.shape, tuple(blocks), tuple(ranks))


@dataclass(frozen=True)
class L11Report:
    checks: dict

    @property
    def passed(self) -> bool:
        return all(self.checks.values())


def check_l11(a: BlockElement, c1: CentralElement, c2: CentralElement,
              tol: float = DEFAULT_TOL) -> L11Report:
    """Check monotonicity and the order relations of the spectral projections.

    The checks are, for ``c1 <= c2``:

    * ``below(c1) <= below(c2)`` and ``above(c1) >= above(c2)`` (as projections,
      and in rank per block);
    * ``a e <= c e`` for ``e`` the projection onto ``(-inf, c]``;
    * ``a e >= c e`` for ``e`` the projection onto ``[c, +inf)``;
    * ``a e = c e`` for ``e`` the projection onto ``{c}``;

    the last three at both ``c1`` and ``c2``.
    """
    _check_same(a, c1, c2)
    if np.any(c1.scalars.real > c2.scalars.real):
        raise PreconditionViolated("check_l11 needs c1 <= c2 on every block")
    spectrum = eigh(a, tol)
    proj = {(name, r): spectral_projection(a, c, r, tol, spectrum)
            for name, c in (("c1", c1), ("c2", c2)) for r in REGIONS}
    # Products accumulate rounding on top of the tie threshold.
    etol = 2 * eig_tolerance(a, tol)

    def el(p):
        return p.to_element()

    checks = {
        "i_below_monotone":
            all(x <= y for x, y in zip(proj["c1", "below"].ranks, proj["c2", "below"].ranks))
            and psd_geq(el(proj["c2", "below"]), el(proj["c1", "below"]), etol),
        "i_above_monotone":
            all(x >= y for x, y in zip(proj["c1", "above"].ranks, proj["c2", "above"].ranks))
            and psd_geq(el(proj["c1", "above"]), el(proj["c2", "above"]), etol),
    }
    iii = iv = v = True
    for name, c in (("c1", c1), ("c2", c2)):
        ce = c.to_element()
        closed_below = el(proj[name, "below"]) + el(proj[name, "at"])
        closed_above = el(proj[name, "above"]) + el(proj[name, "at"])
        at = el(proj[name, "at"])
        # a and c commute with the spectral projections, so these products are hermitian.
        iii &= psd_geq(_herm(ce @ closed_below), _herm(a @ closed_below), etol)
        iv &= psd_geq(_herm(a @ closed_above), _herm(ce @ closed_above), etol)
        v &= (a @ at - ce @ at).max_abs() <= etol
    checks["iii_closed_below"] = bool(iii)
    checks["iv_closed_above"] = bool(iv)
    checks["v_at"] = bool(v)
    return L11Report({k: bool(x) for k, x in checks.items()})


def _herm(x: BlockElement) -> BlockElement:
    return make_element(x.shape, [(b + b.conj().T) / 2 for b in x.blocks])


@dataclass(frozen=True)
class SingularValueFunction:
    """Step function ``t -> mu_t(x)`` stored as ``(weight, value)`` pairs.

    Values are nonincreasing; the weights sum to the trace of the identity.
    """

    breakpoints: tuple

    @property
    def values(self) -> np.ndarray:
        """Values repeated by integer weight, i.e. the sorted singular values."""
        return np.array([v for w, v in self.breakpoints for _ in range(int(round(w)))])

    @property
    def total_weight(self) -> float:
        return float(sum(w for w, _ in self.breakpoints))

    def __call__(self, t: float) -> float:
        """``mu_t``: the value on the step containing ``t`` (0 beyond the total weight)."""
        acc = 0.0
        for w, v in self.breakpoints:
            acc += w
            if t < acc:
                return v
        return 0.0


def mu_function(x: BlockElement) -> SingularValueFunction:
    """Decreasing rearrangement of the singular values of all blocks.

    >>> from wstar.algebra import diagonal
    >>> mu_function(diagonal([5], [1, 4])).values.tolist()
    [5.0, 4.0, 1.0]
    """
    try:
        s = np.concatenate([np.linalg.svd(b, compute_uv=False) for b in x.blocks])
    except np.linalg.LinAlgError as exc:
        raise NumericalFailure(str(exc)) from exc
    s = np.sort(s, kind="stable")[::-1]
    return SingularValueFunction(tuple((1.0, float(v)) for v in s))
