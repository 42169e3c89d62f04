# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled modular elimination kernels; same contract as ``_kernels_py``."""

ctypedef long long i64


cdef inline i64 _inv(i64 a, i64 p) noexcept nogil:
    cdef i64 t = 0, nt = 1, r = p, nr = a % p, q, tmp
    while nr != 0:
        q = r // nr
        tmp = t - q * nt
        t = nt
        nt = tmp
        tmp = r - q * nr
        r = nr
        nr = tmp
    if t < 0:
        t += p
    return t


cdef inline i64 _mod(i64 a, i64 p) noexcept nogil:
    a = a % p
    return a + p if a < 0 else a


cdef void _swap(i64[:, ::1] A, Py_ssize_t i, Py_ssize_t k) noexcept nogil:
    cdef Py_ssize_t j
    cdef i64 t
    for j in range(A.shape[1]):
        t = A[i, j]
        A[i, j] = A[k, j]
        A[k, j] = t


def rref_modp(i64[:, ::1] A, i64 p):
    cdef Py_ssize_t m = A.shape[0], n = A.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, k
    cdef i64 inv, f
    pivots = []
    for c in range(n):
        if r == m:
            break
        k = -1
        for i in range(r, m):
            if A[i, c] != 0:
                k = i
                break
        if k < 0:
            continue
        if k != r:
            _swap(A, r, k)
        inv = _inv(A[r, c], p)
        with nogil:
            for j in range(c, n):
                A[r, j] = A[r, j] * inv % p
            for i in range(m):
                if i == r:
                    continue
                f = A[i, c]
                if f == 0:
                    continue
                for j in range(c, n):
                    A[i, j] = _mod(A[i, j] - f * A[r, j], p)
        pivots.append(c)
        r += 1
    return pivots


def dual_rref_modp(i64[:, ::1] A0, i64[:, ::1] A1, i64 p):
    cdef Py_ssize_t m = A0.shape[0], n = A0.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, k
    cdef i64 w0, w1, f0, f1, a0, a1
    cdef int status = 0
    pivots = []
    for c in range(n):
        if r == m:
            break
        k = -1
        for i in range(r, m):
            if A0[i, c] != 0:
                k = i
                break
        if k < 0:
            continue
        if k != r:
            _swap(A0, r, k)
            _swap(A1, r, k)
        w0 = _inv(A0[r, c], p)
        w1 = _mod(-A1[r, c] * w0 % p * w0, p)
        with nogil:
            for j in range(n):
                a0 = A0[r, j]
                a1 = A1[r, j]
                A0[r, j] = a0 * w0 % p
                A1[r, j] = (a0 * w1 + a1 * w0) % p
            for i in range(m):
                if i == r:
                    continue
                f0 = A0[i, c]
                f1 = A1[i, c]
                if f0 == 0 and f1 == 0:
                    continue
                for j in range(n):
                    A1[i, j] = _mod(A1[i, j] - (f0 * A1[r, j] % p + f1 * A0[r, j] % p), p)
                    A0[i, j] = _mod(A0[i, j] - f0 * A0[r, j], p)
        pivots.append(c)
        r += 1
    for i in range(r, m):
        for j in range(n):
            if A0[i, j] != 0 or A1[i, j] != 0:
                status = 1
    return pivots, status


def det_modp(i64[:, ::1] A, i64 p):
    cdef Py_ssize_t n = A.shape[0], c, i, j, k
    cdef i64 det = 1, inv, f
    for c in range(n):
        k = -1
        for i in range(c, n):
            if A[i, c] != 0:
                k = i
                break
        if k < 0:
            return 0
        if k != c:
            _swap(A, c, k)
            det = p - det if det else 0
        det = det * A[c, c] % p
        inv = _inv(A[c, c], p)
        for i in range(c + 1, n):
            f = A[i, c] * inv % p
            if f == 0:
                continue
            for j in range(c, n):
                A[i, j] = _mod(A[i, j] - f * A[c, j], p)
    return det % p
