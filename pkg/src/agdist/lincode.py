"""Linear codes over F_q and F_{q^m}: duals, subfield subcodes, trace codes,
Frobenius images and Schur products."""

from __future__ import annotations

from typing import Iterator

import numpy as np

from . import linalg
from .errors import FieldMismatch, LengthMismatch
from .ff import GF, FieldCtx

SCHUR_CHUNK = 2048


class LinearCode:
    """A subspace of ``field^n`` given by a spanning set of rows.

    The canonical generator matrix ``gen`` (RREF, pivots increasing) is
    computed on first access.  Codes built by :meth:`dual` remember the code
    they came from, so ``C.dual().dual() is C``.
    """

    def __init__(self, field: GF, rows, n: int | None = None, *, dim: int | None = None):
        rows = np.asarray(rows, dtype=np.int64)
        if rows.ndim == 1:
            rows = rows.reshape(1, -1) if rows.size else rows.reshape(0, n or 0)
        if n is None:
            n = rows.shape[1]
        if rows.shape[1] != n:
            raise LengthMismatch(f"rows have length {rows.shape[1]}, expected {n}")
        self.field = field
        self.n = n
        self.rows = rows
        self._dim = dim
        self._gen: np.ndarray | None = None
        self._pivots: list[int] | None = None
        self._dual: LinearCode | None = None

    @classmethod
    def from_rref(cls, field: GF, R: np.ndarray, pivots: list[int], n: int) -> LinearCode:
        code = cls(field, R, n, dim=len(pivots))
        code._gen, code._pivots = R, list(pivots)
        return code

    def _reduce(self) -> None:
        if self._gen is None:
            self._gen, self._pivots = linalg.rref(self.field, self.rows)
            if self._dim is not None and self._dim != len(self._pivots):
                raise AssertionError("declared dimension disagrees with rank")
            self._dim = len(self._pivots)

    @property
    def gen(self) -> np.ndarray:
        self._reduce()
        return self._gen

    @property
    def pivots(self) -> list[int]:
        self._reduce()
        return self._pivots

    @property
    def dim(self) -> int:
        if self._dim is None:
            self._reduce()
        return self._dim

    @property
    def basis(self) -> np.ndarray:
        """Independent rows spanning the code (RREF unless known otherwise)."""
        if self._gen is None and self._dim == self.rows.shape[0]:
            return self.rows
        return self.gen

    def __repr__(self) -> str:
        return f"LinearCode({self.field!r}, n={self.n}, k={self.dim})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinearCode):
            return NotImplemented
        if self.field is not other.field or self.n != other.n or self.dim != other.dim:
            return False
        return np.array_equal(self.gen, other.gen)

    __hash__ = None

    def dual(self) -> LinearCode:
        if self._dual is None:
            N = linalg.nullspace_from_rref(self.field, self.gen, self.pivots, self.n)
            d = LinearCode(self.field, N, self.n, dim=self.n - self.dim)
            d._dual = self
            self._dual = d
        return self._dual

    def contains(self, other: LinearCode) -> bool:
        _check_compatible(self, other)
        red = linalg.RowReducer(self.field, self.n)
        red.basis, red.pivots = self.gen, list(self.pivots)
        return red.contains(other.basis)

    def __add__(self, other: LinearCode) -> LinearCode:
        _check_compatible(self, other)
        return LinearCode(self.field, np.vstack([self.basis, other.basis]), self.n)

    def intersection_dim(self, other: LinearCode) -> int:
        return self.dim + other.dim - (self + other).dim

    def to_json(self, ctx: FieldCtx | None = None) -> dict:
        rows = self.gen
        if ctx is not None and self.field is ctx.ext and ctx.m > 1:
            rows = ctx.coords(rows)
        return {"n": self.n, "k": self.dim, "gen": rows.tolist()}


def _check_compatible(C: LinearCode, D: LinearCode) -> None:
    if C.field is not D.field:
        raise FieldMismatch(f"{C.field!r} vs {D.field!r}")
    if C.n != D.n:
        raise LengthMismatch(f"lengths {C.n} and {D.n} differ")


def zero_code(field: GF, n: int) -> LinearCode:
    return LinearCode(field, np.zeros((0, n), dtype=np.int64), n, dim=0)


def full_code(field: GF, n: int) -> LinearCode:
    return LinearCode.from_rref(field, np.eye(n, dtype=np.int64), list(range(n)), n)


def dual(C: LinearCode) -> LinearCode:
    return C.dual()


def expand_rows(ctx: FieldCtx, rows: np.ndarray) -> np.ndarray:
    """Replace each F_{q^m} row by its m rows of F_q-coordinates."""
    c = ctx.coords(rows)  # (r, n, m)
    return np.transpose(c, (0, 2, 1)).reshape(-1, rows.shape[1])


def subfield_subcode(C: LinearCode, ctx: FieldCtx) -> LinearCode:
    """C ∩ F_q^n, as the F_q-kernel of the coordinate-expanded parity rows."""
    if C.field is not ctx.ext:
        raise FieldMismatch("subfield_subcode expects a code over the extension field")
    H = C.dual().basis
    E = expand_rows(ctx, H)
    R, piv = linalg.rref(ctx.base, E)
    parity = LinearCode.from_rref(ctx.base, R, piv, C.n)
    sub = LinearCode(ctx.base, linalg.nullspace_from_rref(ctx.base, R, piv, C.n), C.n,
                     dim=C.n - len(piv))
    sub._dual = parity
    parity._dual = sub
    return sub


def trace_code(C: LinearCode, ctx: FieldCtx) -> LinearCode:
    """F_q-span of Tr(beta_j * c) over basis elements beta_j and rows c."""
    if C.field is not ctx.ext:
        raise FieldMismatch("trace_code expects a code over the extension field")
    G = C.rows if C.rows.shape[0] else C.basis
    if G.shape[0] == 0:
        return zero_code(ctx.base, C.n)
    beta = np.array(ctx.basis, dtype=np.int64)
    scaled = ctx.ext.mul(beta[:, None, None], G[None, :, :]).reshape(-1, C.n)
    T = ctx.trace(scaled)
    R, piv = linalg.rref(ctx.base, T)
    return LinearCode.from_rref(ctx.base, R, piv, C.n)


def power_code(C: LinearCode, ctx: FieldCtx, i: int) -> LinearCode:
    """Entrywise x -> x^(q^i) applied to the code."""
    if i < 0:
        raise ValueError("i must be non-negative")
    rows = ctx.frobenius(C.basis, i)
    return LinearCode(C.field, rows, C.n, dim=C.dim)


def _pairs(k1: int, k2: int | None) -> Iterator[tuple[np.ndarray, np.ndarray]]:
    """Index pairs in chunks.  For squares the diagonal comes first, then the
    strict upper triangle in lexicographic order."""
    if k2 is None:
        diag = np.arange(k1)
        for s in range(0, k1, SCHUR_CHUNK):
            yield diag[s : s + SCHUR_CHUNK], diag[s : s + SCHUR_CHUNK]
        I, J = np.triu_indices(k1, 1)
    else:
        I, J = np.divmod(np.arange(k1 * k2), k2)
    for s in range(0, I.size, SCHUR_CHUNK):
        yield I[s : s + SCHUR_CHUNK], J[s : s + SCHUR_CHUNK]


def _schur(F: GF, A: np.ndarray, B: np.ndarray | None, n: int) -> LinearCode:
    red = linalg.RowReducer(F, n)
    k2 = None if B is None else B.shape[0]
    B = A if B is None else B
    for I, J in _pairs(A.shape[0], k2):
        red.add(F.mul(A[I], B[J]))
        if red.full:
            break
    return LinearCode.from_rref(F, red.basis, red.pivots, n)


def schur_product(C: LinearCode, D: LinearCode) -> LinearCode:
    _check_compatible(C, D)
    return _schur(C.field, C.basis, D.basis, C.n)


def schur_square(C: LinearCode) -> LinearCode:
    return _schur(C.field, C.basis, None, C.n)
