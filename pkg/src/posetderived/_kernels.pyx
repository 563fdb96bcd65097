# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled modular elimination kernels.

Same functions and results as ``_kernels_py``.  Entries live in a C buffer
of ``long long``; the modulus must stay below 2**31 so that products fit.
"""

from libc.stdlib cimport malloc, free


cdef long long _inv_mod(long long a, long long p):
    cdef long long t = 0, new_t = 1, r = p, new_r = a, q, tmp
    while new_r != 0:
        q = r // new_r
        tmp = t - q * new_t
        t = new_t
        new_t = tmp
        tmp = r - q * new_r
        r = new_r
        new_r = tmp
    if t < 0:
        t += p
    return t


cdef long long* _load(rows, Py_ssize_t m, Py_ssize_t n, long long p) except NULL:
    cdef long long* buf = <long long*> malloc((m * n if m * n > 0 else 1) * sizeof(long long))
    cdef Py_ssize_t i, j
    cdef long long v
    if buf == NULL:
        raise MemoryError()
    for i in range(m):
        row = rows[i]
        if len(row) != n:
            free(buf)
            raise ValueError(f"row {i} has {len(row)} entries, expected {n}")
        for j in range(n):
            v = row[j] % p
            buf[i * n + j] = v
    return buf


cdef Py_ssize_t _eliminate(long long* A, Py_ssize_t m, Py_ssize_t n, long long p,
                           bint full, list pivots):
    cdef Py_ssize_t r = 0, c, i, j, piv, start
    cdef long long inv, f, x
    for c in range(n):
        if r == m:
            break
        piv = -1
        for i in range(r, m):
            if A[i * n + c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(c, n):
                x = A[r * n + j]
                A[r * n + j] = A[piv * n + j]
                A[piv * n + j] = x
        inv = _inv_mod(A[r * n + c], p)
        if inv != 1:
            for j in range(c, n):
                A[r * n + j] = (A[r * n + j] * inv) % p
        start = 0 if full else r + 1
        for i in range(start, m):
            if i == r:
                continue
            f = A[i * n + c]
            if f != 0:
                for j in range(c, n):
                    x = A[r * n + j]
                    if x != 0:
                        A[i * n + j] = (A[i * n + j] - f * x) % p
                        if A[i * n + j] < 0:
                            A[i * n + j] += p
        if pivots is not None:
            pivots.append(c)
        r += 1
    return r


def rref_mod_p(rows, Py_ssize_t ncols, long long p):
    cdef Py_ssize_t m = len(rows), i, j, r
    cdef long long* A = _load(rows, m, ncols, p)
    pivots = []
    try:
        r = _eliminate(A, m, ncols, p, True, pivots)
        out = [[A[i * ncols + j] for j in range(ncols)] for i in range(r)]
    finally:
        free(A)
    return out, pivots


def rank_mod_p(rows, Py_ssize_t ncols, long long p):
    cdef Py_ssize_t m = len(rows), r
    cdef long long* A = _load(rows, m, ncols, p)
    try:
        r = _eliminate(A, m, ncols, p, False, None)
    finally:
        free(A)
    return r


def matmul_mod_p(A, B, long long p):
    cdef Py_ssize_t m = len(A), inner = len(B), n, i, j, k
    if m == 0:
        return []
    n = len(B[0]) if inner else 0
    cdef long long* a = _load(A, m, inner, p)
    cdef long long* b = _load(B, inner, n, p)
    cdef long long* c = <long long*> malloc((m * n if m * n > 0 else 1) * sizeof(long long))
    cdef long long aik
    try:
        for i in range(m * n):
            c[i] = 0
        for i in range(m):
            for k in range(inner):
                aik = a[i * inner + k]
                if aik != 0:
                    for j in range(n):
                        c[i * n + j] = (c[i * n + j] + aik * b[k * n + j]) % p
        out = [[c[i * n + j] for j in range(n)] for i in range(m)]
    finally:
        free(a)
        free(b)
        free(c)
    return out
