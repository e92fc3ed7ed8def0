# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled modular elimination kernel."""


cdef inline long long _inv_mod(long long a, long long p):
    cdef long long t = 0, new_t = 1, r = p, new_r = a % p, q, tmp
    if new_r < 0:
        new_r += p
    while new_r != 0:
        q = r // new_r
        tmp = t - q * new_t
        t = new_t
        new_t = tmp
        tmp = r - q * new_r
        r = new_r
        new_r = tmp
    if r != 1:
        raise ZeroDivisionError("element not invertible")
    if t < 0:
        t += p
    return t


def rref_modp(long long[:, ::1] A, long long p):
    """Reduce ``A`` (entries in ``[0, p)``) to reduced row echelon form in place.

    Returns ``(rank, pivot_columns)``.
    """
    cdef Py_ssize_t m = A.shape[0], n = A.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, piv
    cdef long long inv, f, t
    pivots = []
    for c in range(n):
        if r == m:
            break
        piv = -1
        for i in range(r, m):
            if A[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(c, n):
                t = A[r, j]
                A[r, j] = A[piv, j]
                A[piv, j] = t
        inv = _inv_mod(A[r, c], p)
        if inv != 1:
            for j in range(c, n):
                A[r, j] = A[r, j] * inv % p
        for i in range(m):
            if i == r:
                continue
            f = A[i, c]
            if f == 0:
                continue
            for j in range(c, n):
                if A[r, j] != 0:
                    t = (A[i, j] - f * A[r, j]) % p
                    if t < 0:
                        t += p
                    A[i, j] = t
        pivots.append(c)
        r += 1
    return r, pivots
