"""Exact row reduction over a finite field.

Matrices are int64 arrays of encoded field elements.  The workhorse is
:class:`RowReducer`, which keeps a basis in reduced row echelon form and
absorbs new rows in chunks: a chunk is first cleared against the existing
pivots with a single field matrix product, then reduced on its own, and the
old basis is finally cleared on the new pivot columns.  Over prime fields the
products go through BLAS in float64, which is exact while the inner dimension
times ``(p-1)**2`` stays below 2**52.
"""

from __future__ import annotations

import numpy as np

from .ff import GF


def _rref_small(F: GF, M: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Plain Gauss-Jordan; returns the non-zero RREF rows and pivot columns."""
    M = np.array(M, dtype=np.int64, copy=True)
    rows, cols = M.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(M[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            M[[r, piv]] = M[[piv, r]]
        if M[r, c] != 1:
            M[r] = F.mul(M[r], F.inv(M[r, c]))
        factors = M[:, c].copy()
        factors[r] = 0
        hit = np.flatnonzero(factors)
        if hit.size:
            M[hit] = F.sub(M[hit], F.mul(factors[hit, None], M[r][None, :]))
        pivots.append(c)
        r += 1
    return M[:r], pivots


class RowReducer:
    """Incrementally maintained RREF basis of a row space in ``F^n``."""

    def __init__(self, F: GF, n: int):
        self.F = F
        self.n = n
        self.basis = np.zeros((0, n), dtype=np.int64)
        self.pivots: list[int] = []

    @property
    def rank(self) -> int:
        return len(self.pivots)

    @property
    def full(self) -> bool:
        return self.rank == self.n

    def reduce(self, rows: np.ndarray) -> np.ndarray:
        """Residues of ``rows`` after clearing the current pivot columns."""
        rows = np.asarray(rows, dtype=np.int64).reshape(-1, self.n)
        if not self.pivots or rows.shape[0] == 0:
            return rows
        return self.F.sub(rows, self.F.matmul(rows[:, self.pivots], self.basis))

    def add(self, rows: np.ndarray, block: int = 128) -> int:
        """Absorb ``rows``; returns the number of new pivots.

        Large inputs are split into blocks so that Gauss-Jordan only ever runs
        on a few rows while the bulk of the work stays in matrix products.
        """
        rows = np.asarray(rows, dtype=np.int64).reshape(-1, self.n)
        added = 0
        for start in range(0, rows.shape[0], block):
            added += self._add_block(rows[start : start + block])
            if self.full:
                break
        return added

    def _add_block(self, rows: np.ndarray) -> int:
        res = self.reduce(rows)
        res = res[res.any(axis=1)]
        if res.shape[0] == 0:
            return 0
        new, newpiv = _rref_small(self.F, res)
        if not newpiv:
            return 0
        if self.pivots:
            self.basis = self.F.sub(self.basis, self.F.matmul(self.basis[:, newpiv], new))
        basis = np.vstack([self.basis, new])
        pivots = self.pivots + newpiv
        order = np.argsort(pivots, kind="stable")
        self.basis = basis[order]
        self.pivots = [pivots[i] for i in order]
        return len(newpiv)

    def contains(self, rows: np.ndarray) -> bool:
        return not self.reduce(rows).any()


def rref(F: GF, M: np.ndarray, chunk: int = 256) -> tuple[np.ndarray, list[int]]:
    M = np.asarray(M, dtype=np.int64)
    if M.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    red = RowReducer(F, M.shape[1])
    for start in range(0, M.shape[0], chunk):
        red.add(M[start : start + chunk])
        if red.full:
            break
    return red.basis, red.pivots


def rank(F: GF, M: np.ndarray) -> int:
    return len(rref(F, M)[1])


def nullspace_from_rref(F: GF, R: np.ndarray, pivots: list[int], n: int) -> np.ndarray:
    """Basis of ``{x : R x^T = 0}``, one row per free column."""
    free = [c for c in range(n) if c not in set(pivots)]
    N = np.zeros((len(free), n), dtype=np.int64)
    for i, f in enumerate(free):
        N[i, f] = 1
    if pivots and free:
        N[:, pivots] = F.neg(R[:, free].T)
    return N


def nullspace(F: GF, M: np.ndarray) -> np.ndarray:
    M = np.asarray(M, dtype=np.int64)
    R, piv = rref(F, M)
    return nullspace_from_rref(F, R, piv, M.shape[1])
