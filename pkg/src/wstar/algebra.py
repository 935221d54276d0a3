"""
Finite W*-algebras modeled as direct sums of full matrix blocks.

An algebra ``M = M_{n_1} + ... + M_{n_K}`` is described by an
:class:`AlgebraShape`.  Elements keep one complex matrix per block; the
center is one scalar per block and central projections are subsets of
blocks.  All value types are immutable (their arrays are read-only), so
every operation here is a pure function and safe to call from threads.
"""

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (
    DimensionMismatch,
    NonFiniteEntry,
    NotHermitian,
    NumericalFailure,
    ShapeMismatch,
)

DEFAULT_TOL = 1e-9

__all__ = [
    "DEFAULT_TOL",
    "AlgebraShape",
    "BlockElement",
    "CentralElement",
    "BlockProjection",
    "CentralProjection",
    "ComparisonVerdict",
    "make_element",
    "make_central",
    "make_projection",
    "identity",
    "zeros",
    "diagonal",
    "commutator",
    "abs_element",
    "psd_geq",
    "min_eigenvalue",
    "compare_projections",
    "strictly_subordinate",
    "projection_rank",
]


def _frozen(arr):
    arr = np.array(arr, dtype=complex)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class AlgebraShape:
    """Block dimensions ``(n_1, ..., n_K)`` of ``M_{n_1} + ... + M_{n_K}``."""

    block_dims: tuple

    def __post_init__(self):
        dims = tuple(int(n) for n in self.block_dims)
        if len(dims) == 0:
            raise DimensionMismatch("an algebra needs at least one block")
        if any(n < 1 for n in dims):
            raise DimensionMismatch(f"block dimensions must be >= 1, got {dims}")
        object.__setattr__(self, "block_dims", dims)

    @property
    def n_blocks(self) -> int:
        return len(self.block_dims)

    @property
    def dimension(self) -> int:
        """Vector-space dimension ``sum n_k**2``."""
        return sum(n * n for n in self.block_dims)

    @property
    def trace_of_identity(self) -> int:
        return sum(self.block_dims)

    def __iter__(self):
        return iter(self.block_dims)

    def __len__(self):
        return len(self.block_dims)


def _as_shape(shape) -> AlgebraShape:
    return shape if isinstance(shape, AlgebraShape) else AlgebraShape(tuple(shape))


def _check_same(*objs):
    shape = objs[0].shape
    for o in objs[1:]:
        if o.shape != shape:
            raise ShapeMismatch(f"shapes differ: {shape.block_dims} vs {o.shape.block_dims}")
    return shape


@dataclass(frozen=True, eq=False)
class BlockElement:
    """One complex ``n_k x n_k`` matrix per block.

    Build instances with :func:`make_element`, which validates the blocks and
    sets ``hermitian_hint``.
    """

    shape: AlgebraShape
    blocks: tuple
    hermitian_hint: bool = False

    def adjoint(self) -> "BlockElement":
        return BlockElement(self.shape, tuple(_frozen(b.conj().T) for b in self.blocks),
                            self.hermitian_hint)

    def _combine(self, other, op, hermitian):
        if isinstance(other, CentralElement):
            other = other.to_element()
        _check_same(self, other)
        return BlockElement(self.shape,
                            tuple(_frozen(op(x, y)) for x, y in zip(self.blocks, other.blocks)),
                            hermitian)

    def __add__(self, other):
        hint = self.hermitian_hint and _is_hermitian_like(other)
        return self._combine(other, np.add, hint)

    def __sub__(self, other):
        hint = self.hermitian_hint and _is_hermitian_like(other)
        return self._combine(other, np.subtract, hint)

    def __matmul__(self, other):
        return self._combine(other, np.matmul, False)

    def __mul__(self, t):
        t = complex(t)
        return BlockElement(self.shape, tuple(_frozen(t * b) for b in self.blocks),
                            self.hermitian_hint and t.imag == 0.0)

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1.0

    def max_abs(self) -> float:
        """Largest entry modulus over all blocks (the max-norm)."""
        return max(float(np.max(np.abs(b))) for b in self.blocks)

    def hermitian_defect(self) -> float:
        return max(float(np.max(np.abs(b - b.conj().T))) for b in self.blocks)

    def allclose(self, other, tol=DEFAULT_TOL) -> bool:
        return (self - other).max_abs() <= tol

    def to_dense(self) -> np.ndarray:
        """Block-diagonal dense matrix of size ``sum n_k``."""
        n = self.shape.trace_of_identity
        out = np.zeros((n, n), dtype=complex)
        i = 0
        for b in self.blocks:
            k = b.shape[0]
            out[i:i + k, i:i + k] = b
            i += k
        return out

    def __repr__(self):
        return f"BlockElement(shape={self.shape.block_dims}, hermitian={self.hermitian_hint})"


def _is_hermitian_like(other):
    return isinstance(other, CentralElement) and np.all(np.imag(other.scalars) == 0) or \
        isinstance(other, BlockElement) and other.hermitian_hint


def make_element(shape, matrices: Sequence, tol: float = DEFAULT_TOL) -> BlockElement:
    """Validate per-block matrices and wrap them as a :class:`BlockElement`.

    Hermitian inputs (within ``tol`` entrywise) are flagged and symmetrized
    as ``(x + x*) / 2``.

    Raises
    ------
    DimensionMismatch
        If the number of blocks or any block size disagrees with ``shape``.
    NonFiniteEntry
        If any entry is NaN or infinite.
    """
    shape = _as_shape(shape)
    if len(matrices) != shape.n_blocks:
        raise DimensionMismatch(
            f"expected {shape.n_blocks} blocks, got {len(matrices)}")
    blocks = []
    for k, (n, m) in enumerate(zip(shape.block_dims, matrices)):
        m = np.array(m, dtype=complex)
        if m.ndim == 0 and n == 1:
            m = m.reshape(1, 1)
        if m.shape != (n, n):
            raise DimensionMismatch(f"block {k}: expected {(n, n)}, got {m.shape}")
        if not np.all(np.isfinite(m)):
            raise NonFiniteEntry(f"block {k} has non-finite entries")
        blocks.append(m)
    hermitian = all(np.max(np.abs(b - b.conj().T)) <= tol for b in blocks)
    if hermitian:
        blocks = [(b + b.conj().T) / 2 for b in blocks]
    return BlockElement(shape, tuple(_frozen(b) for b in blocks), bool(hermitian))


def identity(shape) -> BlockElement:
    shape = _as_shape(shape)
    return make_element(shape, [np.eye(n) for n in shape.block_dims])


def zeros(shape) -> BlockElement:
    shape = _as_shape(shape)
    return make_element(shape, [np.zeros((n, n)) for n in shape.block_dims])


def diagonal(*diagonals) -> BlockElement:
    """Element whose k-th block is ``diag(diagonals[k])``.

    >>> diagonal([1, 2, 3]).shape.block_dims
    (3,)
    """
    shape = AlgebraShape(tuple(len(d) for d in diagonals))
    return make_element(shape, [np.diag(np.asarray(d, dtype=complex)) for d in diagonals])


@dataclass(frozen=True, eq=False)
class CentralElement:
    """One scalar per block; embeds as ``scalars[k] * I_{n_k}``."""

    shape: AlgebraShape
    scalars: np.ndarray

    def __post_init__(self):
        s = _frozen(np.atleast_1d(self.scalars))
        if s.shape != (self.shape.n_blocks,):
            raise DimensionMismatch(
                f"expected {self.shape.n_blocks} scalars, got {s.shape}")
        object.__setattr__(self, "scalars", s)

    @property
    def real(self) -> np.ndarray:
        return self.scalars.real.copy()

    def to_element(self) -> BlockElement:
        return make_element(self.shape, [s * np.eye(n) for s, n in
                                         zip(self.scalars, self.shape.block_dims)])

    def __add__(self, t):
        if isinstance(t, CentralElement):
            return CentralElement(self.shape, self.scalars + t.scalars)
        return CentralElement(self.shape, self.scalars + t)

    def __sub__(self, t):
        if isinstance(t, CentralElement):
            return CentralElement(self.shape, self.scalars - t.scalars)
        return CentralElement(self.shape, self.scalars - t)

    def __mul__(self, t):
        return CentralElement(self.shape, self.scalars * t)

    __rmul__ = __mul__

    def __repr__(self):
        return f"CentralElement({self.scalars.tolist()})"


def make_central(shape, scalars) -> CentralElement:
    shape = _as_shape(shape)
    scalars = np.broadcast_to(np.asarray(scalars, dtype=complex), (shape.n_blocks,))
    if not np.all(np.isfinite(scalars)):
        raise NonFiniteEntry("central scalars must be finite")
    return CentralElement(shape, scalars)


def projection_rank(p: np.ndarray) -> int:
    """Rank of a projection matrix: the number of eigenvalues above 1/2."""
    if p.shape[0] == 0:
        return 0
    h = (p + p.conj().T) / 2
    return int(np.count_nonzero(np.linalg.eigvalsh(h) > 0.5))


@dataclass(frozen=True, eq=False)
class BlockProjection:
    shape: AlgebraShape
    blocks: tuple
    ranks: tuple

    def to_element(self) -> BlockElement:
        return make_element(self.shape, list(self.blocks))

    def __repr__(self):
        return f"BlockProjection(ranks={self.ranks})"


def make_projection(shape, matrices, tol: float = DEFAULT_TOL) -> BlockProjection:
    """Validate ``p = p* = p**2`` per block and record the ranks."""
    el = make_element(shape, matrices, tol)
    for k, b in enumerate(el.blocks):
        if not el.hermitian_hint or np.max(np.abs(b @ b - b)) > tol:
            raise NumericalFailure(f"block {k} is not a projection within tol={tol}")
    return BlockProjection(el.shape, el.blocks, tuple(projection_rank(b) for b in el.blocks))


@dataclass(frozen=True)
class CentralProjection:
    shape: AlgebraShape
    mask: tuple

    def __post_init__(self):
        mask = tuple(bool(m) for m in self.mask)
        if len(mask) != self.shape.n_blocks:
            raise DimensionMismatch("mask length must equal the number of blocks")
        object.__setattr__(self, "mask", mask)

    @property
    def members(self) -> frozenset:
        return frozenset(k for k, m in enumerate(self.mask) if m)

    def to_projection(self) -> BlockProjection:
        blocks = tuple(_frozen(np.eye(n) if m else np.zeros((n, n)))
                       for n, m in zip(self.shape.block_dims, self.mask))
        ranks = tuple(n if m else 0 for n, m in zip(self.shape.block_dims, self.mask))
        return BlockProjection(self.shape, blocks, ranks)


@dataclass(frozen=True)
class ComparisonVerdict:
    """Central decomposition ``z_minus + z_zero + z_plus = 1`` for a pair p, q."""

    z_minus: CentralProjection
    z_zero: CentralProjection
    z_plus: CentralProjection


def commutator(a: BlockElement, x: BlockElement) -> BlockElement:
    """Blockwise ``ax - xa``."""
    _check_same(a, x)
    return BlockElement(a.shape, tuple(_frozen(p @ q - q @ p)
                                       for p, q in zip(a.blocks, x.blocks)))


def _block_abs(x):
    # |x| from the SVD x = W diag(s) Z*, giving Z diag(s) Z*.  Unlike
    # sqrt(eigh(x*x)) this does not square the condition of small values.
    try:
        _, s, vh = np.linalg.svd(x)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailure(str(exc)) from exc
    out = (vh.conj().T * s) @ vh
    return (out + out.conj().T) / 2


def abs_element(x: BlockElement) -> BlockElement:
    """Modulus ``|x| = (x* x)^{1/2}`` computed per block.

    Examples
    --------
    >>> abs_element(diagonal([-3, 2])).blocks[0].real.round(12).tolist()
    [[3.0, 0.0], [0.0, 2.0]]
    """
    return BlockElement(x.shape, tuple(_frozen(_block_abs(b)) for b in x.blocks), True)


def _require_hermitian(x: BlockElement, tol: float, name="element"):
    if not x.hermitian_hint and x.hermitian_defect() > tol:
        raise NotHermitian(f"{name} is not hermitian within tol={tol}")


def min_eigenvalue(x: BlockElement, tol: float = DEFAULT_TOL) -> float:
    """Smallest eigenvalue over all blocks of a hermitian element."""
    _require_hermitian(x, tol)
    return min(float(np.linalg.eigvalsh((b + b.conj().T) / 2)[0]) for b in x.blocks)


def psd_geq(a: BlockElement, b: BlockElement, tol: float = DEFAULT_TOL) -> bool:
    """Whether ``a >= b`` in the PSD (Loewner) order, up to ``tol``."""
    _check_same(a, b)
    _require_hermitian(a, tol, "a")
    _require_hermitian(b, tol, "b")
    return min_eigenvalue(a - b, tol) >= -tol


def compare_projections(p: BlockProjection, q: BlockProjection) -> ComparisonVerdict:
    """Split the unit into central pieces where ``p`` is smaller, equivalent or larger.

    In a matrix factor ``p`` is equivalent to a subprojection of ``q`` iff
    ``rank p <= rank q``, so the decomposition is read off the ranks.
    """
    shape = _check_same(p, q)
    minus = tuple(rp < rq for rp, rq in zip(p.ranks, q.ranks))
    zero = tuple(rp == rq for rp, rq in zip(p.ranks, q.ranks))
    plus = tuple(rp > rq for rp, rq in zip(p.ranks, q.ranks))
    return ComparisonVerdict(CentralProjection(shape, minus),
                             CentralProjection(shape, zero),
                             CentralProjection(shape, plus))


def strictly_subordinate(p: BlockProjection, q: BlockProjection) -> bool:
    """``p`` strictly below ``q`` on every block where either is nonzero."""
    _check_same(p, q)
    return all(rp < rq for rp, rq in zip(p.ranks, q.ranks) if rp > 0 or rq > 0)
