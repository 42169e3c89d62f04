"""Modular elimination kernels in numpy; the reference twin of ``_kernels.pyx``.

All arrays are C-contiguous ``int64`` with entries in ``[0, p)`` and
``p < 2**31`` so every product fits in 64 bits.  Functions work in place and
return pivot columns; the dual variant also returns a status flag
(0 = ok, 1 = a row survived with zero constant part but nonzero ``u`` part).
"""

from __future__ import annotations

import numpy as np


def rref_modp(A: np.ndarray, p: int) -> list[int]:
    m, n = A.shape
    pivots: list[int] = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            A[[r, k]] = A[[k, r]]
        inv = pow(int(A[r, c]), -1, p)
        A[r] = (A[r] * inv) % p
        col = A[:, c].copy()
        col[r] = 0
        rows = np.flatnonzero(col)
        if rows.size:
            A[rows] = (A[rows] - np.outer(col[rows], A[r])) % p
        pivots.append(c)
        r += 1
    return pivots


def dual_rref_modp(A0: np.ndarray, A1: np.ndarray, p: int) -> tuple[list[int], int]:
    """Reduced row echelon form of ``A0 + u*A1`` over ``F_p[u]/(u^2)``.

    Pivots must have a nonzero constant part.  The constant part evolves
    exactly as ``rref_modp(A0)``.
    """
    m, n = A0.shape
    pivots: list[int] = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.flatnonzero(A0[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            A0[[r, k]] = A0[[k, r]]
            A1[[r, k]] = A1[[k, r]]
        v0, v1 = int(A0[r, c]), int(A1[r, c])
        w0 = pow(v0, -1, p)
        w1 = (-v1 * w0 % p) * w0 % p
        r0 = A0[r].copy()
        A0[r] = (r0 * w0) % p
        A1[r] = (r0 * w1 + A1[r] * w0) % p
        f0 = A0[:, c].copy()
        f1 = A1[:, c].copy()
        f0[r] = 0
        f1[r] = 0
        rows = np.flatnonzero(f0 | f1)
        if rows.size:
            p0, p1 = A0[r], A1[r]
            A0[rows] = (A0[rows] - np.outer(f0[rows], p0)) % p
            A1[rows] = (A1[rows] - np.outer(f0[rows], p1) % p - np.outer(f1[rows], p0) % p) % p
        pivots.append(c)
        r += 1
    status = 1 if (A1[r:].any() or A0[r:].any()) else 0
    return pivots, status


def det_modp(A: np.ndarray, p: int) -> int:
    n = A.shape[0]
    det = 1
    for c in range(n):
        nz = np.flatnonzero(A[c:, c])
        if nz.size == 0:
            return 0
        k = c + int(nz[0])
        if k != c:
            A[[c, k]] = A[[k, c]]
            det = -det
        piv = int(A[c, c])
        det = det * piv % p
        inv = pow(piv, -1, p)
        if c + 1 < n:
            f = (A[c + 1:, c] * inv) % p
            A[c + 1:] = (A[c + 1:] - np.outer(f, A[c])) % p
    return det % p
