"""Dense scalar linear algebra over a FieldCtx (Gaussian elimination).

Matrices are int64 code arrays of shape (n, m).  Used for base solves of
transposed systems, determinant evaluation at a point, and the oracles.
"""

from __future__ import annotations

import numpy as np

from .field import FieldCtx


class SingularMatrixError(ValueError):
    pass


def gauss_rank(ctx: FieldCtx, M: np.ndarray) -> int:
    A = np.array(M, dtype=np.int64)
    n, m = A.shape
    rank = 0
    for col in range(m):
        piv = None
        for r in range(rank, n):
            if A[r, col] != 0:
                piv = r
                break
        if piv is None:
            continue
        A[[rank, piv]] = A[[piv, rank]]
        inv = ctx.inv(int(A[rank, col]))
        A[rank] = ctx.vmul(A[rank], np.int64(inv))
        for r in range(n):
            if r != rank and A[r, col] != 0:
                A[r] = ctx.vsub(A[r], ctx.vmul(A[rank], A[r, col]))
        rank += 1
        if rank == n:
            break
    return rank


def gauss_det(ctx: FieldCtx, M: np.ndarray) -> int:
    A = np.array(M, dtype=np.int64)
    n = A.shape[0]
    det = 1
    for col in range(n):
        piv = None
        for r in range(col, n):
            if A[r, col] != 0:
                piv = r
                break
        if piv is None:
            return 0
        if piv != col:
            A[[col, piv]] = A[[piv, col]]
            det = ctx.neg(det)
        pivval = int(A[col, col])
        det = ctx.mul(det, pivval)
        inv = ctx.inv(pivval)
        for r in range(col + 1, n):
            if A[r, col] != 0:
                f = ctx.mul(int(A[r, col]), inv)
                A[r] = ctx.vsub(A[r], ctx.vmul(A[col], np.int64(f)))
    return det


def gauss_inverse(ctx: FieldCtx, M: np.ndarray) -> np.ndarray:
    A = np.array(M, dtype=np.int64)
    n = A.shape[0]
    I = np.zeros((n, n), dtype=np.int64)
    np.fill_diagonal(I, 1)
    for col in range(n):
        piv = None
        for r in range(col, n):
            if A[r, col] != 0:
                piv = r
                break
        if piv is None:
            raise SingularMatrixError("matrix is singular")
        if piv != col:
            A[[col, piv]] = A[[piv, col]]
            I[[col, piv]] = I[[piv, col]]
        inv = ctx.inv(int(A[col, col]))
        A[col] = ctx.vmul(A[col], np.int64(inv))
        I[col] = ctx.vmul(I[col], np.int64(inv))
        for r in range(n):
            if r != col and A[r, col] != 0:
                f = np.int64(A[r, col])
                A[r] = ctx.vsub(A[r], ctx.vmul(A[col], f))
                I[r] = ctx.vsub(I[r], ctx.vmul(I[col], f))
    return I
