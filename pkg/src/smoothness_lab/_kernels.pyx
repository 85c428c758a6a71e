# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels; see ``_kernels_py`` for the reference semantics."""

import numpy as np
cimport numpy as cnp
from libc.math cimport fabs, pow, sqrt, INFINITY, M_PI
from libc.stdlib cimport malloc, free

cnp.import_array()


cdef inline double _powp(double a, double p, int ip) noexcept nogil:
    # ip > 0 marks a small integer exponent, done by repeated multiplication
    cdef double out
    cdef int k
    if ip == 1:
        return a
    if ip == 2:
        return a * a
    if ip > 0:
        out = a
        for k in range(ip - 1):
            out *= a
        return out
    return pow(a, p)


cdef inline int _int_exponent(double p) noexcept nogil:
    if p >= 1.0 and p <= 8.0 and p == <int> p:
        return <int> p
    return 0


def row_lp_norms(rows, double p):
    """Quadrature L_p norms of every row of a real or complex 2-D array."""
    cdef cnp.ndarray arr = np.asarray(rows)
    if arr.ndim != 2:
        raise ValueError("rows must be two-dimensional")
    cdef double[:, ::1] mag
    if np.iscomplexobj(arr):
        mag = np.ascontiguousarray(np.abs(arr), dtype=np.float64)
    else:
        mag = np.ascontiguousarray(arr, dtype=np.float64)
    cdef Py_ssize_t m = mag.shape[0], n = mag.shape[1], i, j
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.zeros(m)
    cdef double s, a
    cdef bint is_inf = p == INFINITY
    cdef int ip = 0 if is_inf else _int_exponent(p)
    with nogil:
        for i in range(m):
            s = 0.0
            if is_inf:
                for j in range(n):
                    a = fabs(mag[i, j])
                    s = a if a > s else s
                out[i] = s
            else:
                for j in range(n):
                    s += _powp(fabs(mag[i, j]), p, ip)
                if n > 0:
                    out[i] = pow(2.0 * M_PI / n * s, 1.0 / p)
    return out


def residual_terms(r, double p, double eps):
    """Objective ``sum |r|^p`` with gradient and capped Hessian weights."""
    cdef double[::1] rv = np.ascontiguousarray(r, dtype=np.float64)
    cdef Py_ssize_t n = rv.shape[0], j
    cdef cnp.ndarray[cnp.float64_t, ndim=1] grad = np.empty(n)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] hess = np.empty(n)
    cdef double obj = 0.0, a, ap, x, c1 = p, c2 = p * (p - 1.0), heps = pow(eps, p - 2.0)
    cdef int ip = _int_exponent(p - 1.0)
    with nogil:
        for j in range(n):
            x = rv[j]
            a = fabs(x)
            ap = _powp(a, p - 1.0, ip)
            obj += ap * a
            if x > 0:
                grad[j] = c1 * ap
            elif x < 0:
                grad[j] = -c1 * ap
            else:
                grad[j] = 0.0
            # |a|^(p-2) = |a|^(p-1) / |a| above the cap
            hess[j] = c2 * (ap / a if a >= eps and a > 0 else heps)
    return obj, grad, hess


def shifted_difference_norms(values, shifts, int r, double p, double dx):
    """Trapezoid-rule restricted-domain norms of r-th differences on [0, 1]."""
    cdef double[::1] v = np.ascontiguousarray(values, dtype=np.float64)
    cdef long long[::1] sh = np.ascontiguousarray(shifts, dtype=np.int64)
    cdef Py_ssize_t g = v.shape[0] - 1, ns = sh.shape[0], idx, i, k, m, s
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(ns)
    cdef double[::1] d = np.empty(g + 1)
    cdef double *coef = <double *> malloc((r + 1) * sizeof(double))
    cdef double a, ck, total, c = 1.0
    cdef bint is_inf = p == INFINITY
    cdef int ip = 0 if is_inf else _int_exponent(p)
    if coef == NULL:
        raise MemoryError()
    try:
        # signed binomial weights (-1)^(r-k) C(r, k)
        for k in range(r + 1):
            coef[k] = c if (r - k) % 2 == 0 else -c
            c = c * (r - k) / (k + 1)
        for idx in range(ns):
            s = sh[idx]
            m = g - r * s
            if m < 0:
                raise ValueError("shift too large for the grid")
            with nogil:
                # one contiguous pass per binomial term
                ck = coef[0]
                for i in range(m + 1):
                    d[i] = ck * v[i]
                for k in range(1, r + 1):
                    ck = coef[k]
                    for i in range(m + 1):
                        d[i] += ck * v[i + k * s]
                total = 0.0
                if is_inf:
                    for i in range(m + 1):
                        a = fabs(d[i])
                        total = a if a > total else total
                    out[idx] = total
                elif m == 0:
                    out[idx] = 0.0
                else:
                    for i in range(m + 1):
                        total += _powp(fabs(d[i]), p, ip)
                    total -= 0.5 * (_powp(fabs(d[0]), p, ip) + _powp(fabs(d[m]), p, ip))
                    out[idx] = pow(dx * total, 1.0 / p)
    finally:
        free(coef)
    return out
