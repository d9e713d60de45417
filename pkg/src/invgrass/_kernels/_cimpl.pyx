# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled mod-p kernels; same interface as the pure-Python module."""

from libc.stdlib cimport malloc, free


cdef long long _inv(long long a, long long p):
    cdef long long result = 1, e = p - 2
    a %= p
    while e > 0:
        if e & 1:
            result = result * a % p
        a = a * a % p
        e >>= 1
    return result


cdef long long* _pack(rows, Py_ssize_t nrows, Py_ssize_t ncols, long long p) except NULL:
    cdef long long* buf = <long long*>malloc(max(nrows * ncols, 1) * sizeof(long long))
    cdef Py_ssize_t i, j
    for i in range(nrows):
        r = rows[i]
        for j in range(ncols):
            buf[i * ncols + j] = (<long long>r[j]) % p
    return buf


cdef Py_ssize_t _rref_buf(long long* a, Py_ssize_t nrows, Py_ssize_t ncols, long long p, Py_ssize_t* piv):
    cdef Py_ssize_t r = 0, c, i, j, found
    cdef long long f, inv, t
    for c in range(ncols):
        if r == nrows:
            break
        found = -1
        for i in range(r, nrows):
            if a[i * ncols + c]:
                found = i
                break
        if found < 0:
            continue
        if found != r:
            for j in range(ncols):
                t = a[r * ncols + j]
                a[r * ncols + j] = a[found * ncols + j]
                a[found * ncols + j] = t
        inv = _inv(a[r * ncols + c], p)
        for j in range(ncols):
            a[r * ncols + j] = a[r * ncols + j] * inv % p
        for i in range(nrows):
            if i != r:
                f = a[i * ncols + c]
                if f:
                    for j in range(ncols):
                        a[i * ncols + j] = (a[i * ncols + j] - f * a[r * ncols + j]) % p
        piv[r] = c
        r += 1
    return r


def rref_mod(rows, Py_ssize_t ncols, long long p):
    cdef Py_ssize_t nrows = len(rows), rk, i, j
    cdef long long* a = _pack(rows, nrows, ncols, p)
    cdef Py_ssize_t* piv = <Py_ssize_t*>malloc(max(nrows, 1) * sizeof(Py_ssize_t))
    try:
        rk = _rref_buf(a, nrows, ncols, p, piv)
        out = [[a[i * ncols + j] for j in range(ncols)] for i in range(rk)]
        return out, [piv[i] for i in range(rk)]
    finally:
        free(a)
        free(piv)


def reduce_mod(basis, pivots, v, long long p):
    cdef Py_ssize_t n = len(v), k = len(basis), i, j, c
    cdef long long f
    out = [x % p for x in v]
    for i in range(k):
        c = pivots[i]
        f = out[c]
        if f:
            row = basis[i]
            for j in range(n):
                out[j] = (out[j] - f * row[j]) % p
    return out


def is_invariant_mod(basis, pivots, gens, long long p):
    cdef Py_ssize_t k = len(basis), i, j, t, s, gi, c
    cdef Py_ssize_t n
    cdef long long f, acc
    if k == 0:
        return True
    n = len(basis[0])
    cdef long long* b = _pack(basis, k, n, p)
    cdef long long* img = <long long*>malloc(n * sizeof(long long))
    cdef long long* g = NULL
    cdef Py_ssize_t* pv = <Py_ssize_t*>malloc(k * sizeof(Py_ssize_t))
    try:
        for i in range(k):
            pv[i] = pivots[i]
        for gi in range(len(gens)):
            g = _pack(gens[gi], n, n, p)
            try:
                for i in range(k):
                    for j in range(n):
                        acc = 0
                        for t in range(n):
                            acc = (acc + b[i * n + t] * g[t * n + j]) % p
                        img[j] = acc
                    for s in range(k):
                        c = pv[s]
                        f = img[c]
                        if f:
                            for j in range(n):
                                img[j] = (img[j] - f * b[s * n + j]) % p
                    for j in range(n):
                        if img[j]:
                            return False
            finally:
                free(g)
        return True
    finally:
        free(b)
        free(img)
        free(pv)


cdef long long _det_buf(long long* a, Py_ssize_t m, long long p):
    cdef Py_ssize_t c, i, j, found
    cdef long long det = 1, inv, f, t
    for c in range(m):
        found = -1
        for i in range(c, m):
            if a[i * m + c]:
                found = i
                break
        if found < 0:
            return 0
        if found != c:
            for j in range(m):
                t = a[c * m + j]
                a[c * m + j] = a[found * m + j]
                a[found * m + j] = t
            det = p - det
        det = det * a[c * m + c] % p
        inv = _inv(a[c * m + c], p)
        for i in range(c + 1, m):
            f = a[i * m + c] * inv % p
            if f:
                for j in range(m):
                    a[i * m + j] = (a[i * m + j] - f * a[c * m + j]) % p
    return det % p


def plucker_mod(rows, subsets, long long p):
    cdef Py_ssize_t m = len(rows), i, j
    cdef long long* a = <long long*>malloc(max(m * m, 1) * sizeof(long long))
    out = []
    try:
        for s in subsets:
            for i in range(m):
                r = rows[i]
                for j in range(m):
                    a[i * m + j] = (<long long>r[s[j]]) % p
            out.append(_det_buf(a, m, p) if m else 1)
        return out
    finally:
        free(a)
