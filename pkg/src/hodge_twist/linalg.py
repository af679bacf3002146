"""Dense Gaussian elimination over F_q on matrices of field codes."""

from __future__ import annotations

import numpy as np

from .fields import FieldDescriptor


def _as_matrix(M, n_cols: int | None = None) -> np.ndarray:
    A = np.array(M, dtype=np.int64, copy=True)
    if A.ndim == 1:
        A = A.reshape(1, -1) if A.size else np.zeros((0, n_cols or 0), dtype=np.int64)
    return A


def rref(F: FieldDescriptor, M, *, full: bool = True) -> tuple[np.ndarray, list[int]]:
    """Row-reduce ``M``; with ``full=False`` only clear below the pivots."""
    A = _as_matrix(M)
    m, n = A.shape
    pivots: list[int] = []
    row = 0
    for col in range(n):
        if row == m:
            break
        nz = np.nonzero(A[row:, col])[0]
        if nz.size == 0:
            continue
        piv = row + int(nz[0])
        if piv != row:
            A[[row, piv]] = A[[piv, row]]
        lead = int(A[row, col])
        if lead != 1:
            A[row] = F.mul(A[row], F.inv(lead))
        if full:
            targets = np.nonzero(A[:, col])[0]
            targets = targets[targets != row]
        else:
            targets = row + 1 + np.nonzero(A[row + 1:, col])[0]
        if targets.size:
            factors = A[targets, col]
            A[targets] = F.sub(A[targets], F.mul(factors[:, None], A[row][None, :]))
        pivots.append(col)
        row += 1
    return A, pivots


def rank(F: FieldDescriptor, M) -> int:
    A = _as_matrix(M)
    if A.size == 0:
        return 0
    # eliminate along the shorter side
    if A.shape[0] > A.shape[1]:
        A = A.T
    return len(rref(F, A, full=False)[1])


def nullspace(F: FieldDescriptor, M, n_cols: int | None = None) -> np.ndarray:
    """Basis of {v : M v = 0} as the columns of an (n x k) matrix."""
    A = _as_matrix(M, n_cols)
    n = A.shape[1]
    if A.shape[0] == 0:
        return np.eye(n, dtype=np.int64)
    R, piv = rref(F, A)
    free = [c for c in range(n) if c not in set(piv)]
    out = np.zeros((n, len(free)), dtype=np.int64)
    for k, fcol in enumerate(free):
        out[fcol, k] = 1
        for i, pc in enumerate(piv):
            out[pc, k] = F.neg(int(R[i, fcol]))
    return out


def solve(F: FieldDescriptor, M, b) -> np.ndarray | None:
    """One solution of M x = b (free variables zero) or None."""
    A = _as_matrix(M)
    b = np.asarray(b, dtype=np.int64).reshape(-1, 1) if np.ndim(b) == 1 else np.asarray(b, dtype=np.int64)
    m, n = A.shape
    aug = np.concatenate([A, b], axis=1)
    R, piv = rref(F, aug)
    if piv and piv[-1] >= n:
        return None
    x = np.zeros((n, b.shape[1]), dtype=np.int64)
    for i, pc in enumerate(piv):
        x[pc] = R[i, n:]
    return x[:, 0] if x.shape[1] == 1 else x


def column_basis(F: FieldDescriptor, M) -> np.ndarray:
    """Independent columns of M spanning its column space (echelon form)."""
    A = _as_matrix(M)
    if A.shape[1] == 0:
        return A
    R, piv = rref(F, A.T)
    return R[: len(piv)].T.copy()


def complement_basis(F: FieldDescriptor, sub: np.ndarray, whole: np.ndarray) -> np.ndarray:
    """Columns of ``whole`` (first-come order) extending span(sub) to span(sub + whole)."""
    n = whole.shape[0]
    sub = np.asarray(sub, dtype=np.int64).reshape(n, -1)
    k = sub.shape[1]
    _, piv = rref(F, np.concatenate([sub, whole], axis=1))
    return whole[:, [c - k for c in piv if c >= k]]


def matmul(F: FieldDescriptor, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    if F.r == 1:
        return (A @ B) % F.p
    out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    for k in range(A.shape[1]):
        col = A[:, k]
        if col.any():
            out = F.add(out, F.mul(col[:, None], B[k][None, :]))
    return out
