"""
Inner derivations, symmetric norms and two-sided ideals of a block algebra.

The checks here confirm, on finite block algebras, the consequences of
the commutator identity for derivations: the distance of ``a`` from the
center bounds ``||delta_a||`` from below, the identity element ``u0``
certifies ``||a - c0|| <= ||delta_a(u0)||`` in every symmetric norm, and the
ideal identities ``D(J, I) = I:J + Z`` and ``pi^{-1}(Z(M/I)) = Z + I`` hold.
"""

import functools
from dataclasses import dataclass

import numpy as np
import sympy

from .algebra import (
    DEFAULT_TOL,
    AlgebraShape,
    BlockElement,
    _as_shape,
    _require_hermitian,
    abs_element,
    commutator,
    make_element,
    psd_geq,
)
from .builder import build_u0
from .central import dist_to_center
from .errors import PreconditionViolated, ShapeMismatch
from .norms import SymmetricNorm, norm_eval

__all__ = [
    "BlockIdealSpec",
    "SakaiResult",
    "EpsilonBoundResult",
    "C11Result",
    "delta_apply",
    "haar_unitary",
    "sakai_check",
    "epsilon_bound_check",
    "ideal_colon",
    "derivation_space",
    "colon_plus_center",
    "hoffman_check",
    "calkin_check",
    "c11_bound_check",
    "commutant_dimension",
]

FREE, SCALAR = "free", "scalar"


def delta_apply(a: BlockElement, x: BlockElement) -> BlockElement:
    """The inner derivation ``delta_a(x) = [a, x]``."""
    return commutator(a, x)


def haar_unitary(shape, rng: np.random.Generator) -> BlockElement:
    """Haar-distributed unitary, drawn independently per block.

    QR of a standard complex Gaussian matrix with the phases of ``R``'s
    diagonal pushed into ``Q``.
    """
    shape = _as_shape(shape)
    blocks = []
    for n in shape.block_dims:
        z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
        q, r = np.linalg.qr(z)
        d = np.diagonal(r)
        blocks.append(q * (d / np.abs(d)))
    return make_element(shape, blocks, tol=0.0)


@dataclass(frozen=True)
class SakaiResult:
    delta_norm_lower: float
    dist: float
    passed: bool
    upper_ok: bool
    samples: int


def sakai_check(a: BlockElement, samples: int = 1000, seed: int = 42,
                tol: float = DEFAULT_TOL) -> SakaiResult:
    """Sample ``max ||[a, u]||`` over Haar unitaries and compare with ``dist(a, Z)``.

    ``passed`` requires ``dist - tol <= max ||[a, u]|| <= 2 dist + tol``.
    """
    _require_hermitian(a, tol, "a")
    if samples < 1:
        raise PreconditionViolated("samples must be >= 1")
    dist, _ = dist_to_center(a, SymmetricNorm.operator(), tol)
    rng = np.random.default_rng(seed)
    best = 0.0
    for _ in range(samples):
        u = haar_unitary(a.shape, rng)
        for blk, ub in zip(a.blocks, u.blocks):
            best = max(best, float(np.linalg.norm(blk @ ub - ub @ blk, 2)))
    lower_ok = best >= dist - tol
    upper_ok = best <= 2 * dist + tol
    return SakaiResult(best, float(dist), bool(lower_ok and upper_ok), bool(upper_ok), samples)


@dataclass(frozen=True, eq=False)
class EpsilonBoundResult:
    passed: bool
    epsilon: float
    margin: float
    report: object


def epsilon_bound_check(a: BlockElement, epsilon: float = 0.0,
                        tol: float = DEFAULT_TOL) -> EpsilonBoundResult:
    """Check ``|[a, u0]| >= (1 - epsilon)|a - c0|`` for the unitary of :func:`build_u0`."""
    _require_hermitian(a, tol, "a")
    if not 0 <= epsilon < 1:
        raise PreconditionViolated(f"epsilon must lie in [0, 1), got {epsilon}")
    report = build_u0(a, tol=tol, epsilon=epsilon)
    d = abs_element(a - report.c0)
    passed = psd_geq(report.lhs, (1.0 - epsilon) * d, tol * max(1.0, a.max_abs()))
    return EpsilonBoundResult(bool(passed), float(epsilon), report.epsilon_bound_margin, report)


@dataclass(frozen=True)
class BlockIdealSpec:
    """The two-sided ideal that is the full algebra on ``members`` and 0 elsewhere."""

    shape: AlgebraShape
    members: frozenset

    def __post_init__(self):
        shape = _as_shape(self.shape)
        members = frozenset(int(k) for k in self.members)
        bad = [k for k in members if not 0 <= k < shape.n_blocks]
        if bad:
            raise PreconditionViolated(
                f"block indices {sorted(bad)} out of range for {shape.n_blocks} blocks")
        object.__setattr__(self, "shape", shape)
        object.__setattr__(self, "members", members)

    @classmethod
    def all(cls, shape):
        shape = _as_shape(shape)
        return cls(shape, frozenset(range(shape.n_blocks)))

    def contains(self, x: BlockElement, tol: float = DEFAULT_TOL) -> bool:
        if x.shape != self.shape:
            raise ShapeMismatch("element and ideal shapes differ")
        return all(np.max(np.abs(b)) <= tol for k, b in enumerate(x.blocks)
                   if k not in self.members)

    def dimension(self) -> int:
        return sum(self.shape.block_dims[k] ** 2 for k in self.members)


def _same_shape(*ideals):
    shape = ideals[0].shape
    if any(i.shape != shape for i in ideals[1:]):
        raise ShapeMismatch("ideals live in different algebras")
    return shape


def ideal_colon(i: BlockIdealSpec, j: BlockIdealSpec) -> BlockIdealSpec:
    """``I:J = {x : xJ in I}``.

    >>> ideal_colon(BlockIdealSpec((1, 1, 1), {0}), BlockIdealSpec((1, 1, 1), {0, 1})).members
    frozenset({0, 2})
    """
    shape = _same_shape(i, j)
    outside_j = frozenset(range(shape.n_blocks)) - j.members
    return BlockIdealSpec(shape, i.members | outside_j)


@functools.lru_cache(maxsize=None)
def commutant_dimension(n: int) -> int:
    """Dimension of ``{x in M_n : [x, y] = 0 for all y}``, by exact linear algebra.

    Solves ``x E_ij - E_ij x = 0`` over all matrix units with rational
    arithmetic.
    """
    rows = []
    for i in range(n):
        for j in range(n):
            # Entry (p, q) of x E_ij - E_ij x is x_pi [q == j] - [p == i] x_jq.
            for p in range(n):
                for q in range(n):
                    row = [0] * (n * n)
                    if q == j:
                        row[p * n + i] += 1
                    if p == i:
                        row[j * n + q] -= 1
                    if any(row):
                        rows.append(row)
    if not rows:
        return n * n
    return n * n - sympy.Matrix(rows).rank()


def _space_dims(shape, kinds):
    return tuple(n * n if kind == FREE else commutant_dimension(n)
                 for n, kind in zip(shape.block_dims, kinds))


def derivation_space(i: BlockIdealSpec, j: BlockIdealSpec) -> tuple:
    """Per-block description of ``D(J, I) = {x : [x, y] in I for all y in J}``.

    A block outside ``J`` or inside ``I`` is unconstrained; a block of
    ``J \\ I`` must commute with its whole matrix factor.
    """
    shape = _same_shape(i, j)
    return tuple(SCALAR if (k in j.members and k not in i.members) else FREE
                 for k in range(shape.n_blocks))


def colon_plus_center(i: BlockIdealSpec, j: BlockIdealSpec) -> tuple:
    """Per-block description of ``I:J + Z``."""
    colon = ideal_colon(i, j)
    return tuple(FREE if k in colon.members else SCALAR
                 for k in range(colon.shape.n_blocks))


def _separating_witness(shape, k):
    mats = [np.zeros((n, n)) for n in shape.block_dims]
    mats[k][0, -1] = 1.0
    return make_element(shape, mats)


def hoffman_check(i: BlockIdealSpec, j: BlockIdealSpec):
    """Compare ``D(J, I)`` with ``I:J + Z`` block by block.

    Returns
    -------
    passed : bool
    witness : BlockElement or None
        On failure, a matrix unit lying in exactly one of the two spaces.
    """
    shape = _same_shape(i, j)
    lhs = derivation_space(i, j)
    rhs = colon_plus_center(i, j)
    dl, dr = _space_dims(shape, lhs), _space_dims(shape, rhs)
    for k in range(shape.n_blocks):
        if dl[k] != dr[k]:
            return False, _separating_witness(shape, k)
    return True, None


def calkin_check(i: BlockIdealSpec) -> bool:
    """Check that the preimage of the center of ``M/I`` equals ``Z + I``.

    The preimage is free on the blocks of ``I`` and commutes with each
    factor off ``I``.  ``Z + I`` is measured by ``dim Z + dim I - dim(Z cap I)``
    and its spanning set (block identities and matrix units of ``I``) must
    lie in the preimage.
    """
    shape = i.shape
    dims = shape.block_dims
    off = [k for k in range(shape.n_blocks) if k not in i.members]
    preimage_dim = i.dimension() + sum(commutant_dimension(dims[k]) for k in off)
    sum_dim = shape.n_blocks + i.dimension() - len(i.members)

    def spanning_set():
        for k, n in enumerate(dims):
            yield k, np.eye(n, dtype=int)
            if k in i.members:
                for p in range(n):
                    for q in range(n):
                        unit = np.zeros((n, n), dtype=int)
                        unit[p, q] = 1
                        yield k, unit

    for k, m in spanning_set():
        # Each spanning element is supported on block k alone.
        if k in off and np.any(m != m[0, 0] * np.eye(dims[k], dtype=int)):
            return False
    return preimage_dim == sum_dim


@dataclass(frozen=True, eq=False)
class C11Result:
    d: BlockElement
    d_norm: float
    delta_u0_norm: float
    passed: bool
    psd_dominated: bool
    norm: SymmetricNorm


def c11_bound_check(a: BlockElement, norm=SymmetricNorm.operator(),
                    tol: float = DEFAULT_TOL) -> C11Result:
    """Check ``||a - c0|| <= ||[a, u0]||`` in ``norm``.

    The inequality follows from ``|[a, u0]| >= |a - c0|`` and solidity of
    symmetric norms; both links are reported.
    """
    if isinstance(norm, str):
        norm = SymmetricNorm.parse(norm)
    _require_hermitian(a, tol, "a")
    report = build_u0(a, tol=tol)
    d = a - report.c0
    d_norm = norm_eval(d, norm)
    delta_norm = norm_eval(commutator(a, report.unitary), norm)
    scale = max(1.0, a.max_abs())
    dominated = psd_geq(report.lhs, abs_element(d), tol * scale)
    passed = d_norm <= delta_norm + tol * scale
    return C11Result(d, float(d_norm), float(delta_norm), bool(passed), bool(dominated), norm)
