"""Boolean matrix kernels over 64-bit packed rows.

Products are the schoolbook algorithm: for each inner index ``j`` the
packed row ``B[j]`` is OR-ed into every output row ``i`` with
``A[i, j]`` set, i.e. ``n * p * ceil(k / 64)`` word operations.
"""
from __future__ import annotations

import numpy as np


def pack(B) -> np.ndarray:
    """Pack the rows of a boolean ``p x k`` matrix into ``p x ceil(k/64)`` uint64."""
    B = np.asarray(B, dtype=bool)
    p, k = B.shape
    words = max(1, -(-k // 64))
    raw = np.packbits(B, axis=1, bitorder="little")
    buf = np.zeros((p, words * 8), dtype=np.uint8)
    buf[:, : raw.shape[1]] = raw
    return buf.view(np.uint64)


def unpack(P, k: int) -> np.ndarray:
    P = np.ascontiguousarray(P, dtype=np.uint64)
    raw = P.view(np.uint8)
    return np.unpackbits(raw, axis=1, count=k, bitorder="little").astype(bool)


def packed_matmul(A, Bp) -> np.ndarray:
    """``A`` (n x p, bool) times packed ``Bp`` (p x W) -> packed n x W."""
    A = np.asarray(A, dtype=bool)
    n, p = A.shape
    if Bp.shape[0] != p:
        raise ValueError(f"inner dimensions differ: {A.shape} x {Bp.shape}")
    C = np.zeros((n, Bp.shape[1]), dtype=np.uint64)
    for j in range(p):
        rows = A[:, j]
        if rows.any():
            C[rows] |= Bp[j]
    return C


def bool_matmul(A, B) -> np.ndarray:
    B = np.asarray(B, dtype=bool)
    return unpack(packed_matmul(A, pack(B)), B.shape[1])


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=bool)


def bool_power(A, e: int) -> np.ndarray:
    """``A**e`` over the boolean semiring by repeated squaring."""
    A = np.asarray(A, dtype=bool)
    result = identity(A.shape[0])
    base = A
    while e:
        if e & 1:
            result = bool_matmul(result, base)
        e >>= 1
        if e:
            base = bool_matmul(base, base)
    return result


def bool_matvec(M, v) -> np.ndarray:
    M = np.asarray(M, dtype=bool)
    v = np.asarray(v, dtype=bool)
    return (M & v[None, :]).any(axis=1)
