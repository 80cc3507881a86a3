# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled cyclic Jacobi sweeps for small dense Hermitian matrices."""

import numpy as np

from libc.math cimport sqrt


def jacobi_eigh(double complex[:, ::1] a, double tol, int max_sweeps):
    """Diagonalise the Hermitian matrix ``a`` in place.

    Returns ``(diag, vectors, sweeps)``; columns of ``vectors`` are the
    (unsorted) eigenvectors matching ``diag``.
    """
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t p, q, k
    cdef int sweep = 0
    cdef double off, r, theta, t, c, s
    cdef double complex e, ec, akp, akq, apk, aqk
    v_arr = np.eye(n, dtype=np.complex128)
    cdef double complex[:, ::1] v = v_arr

    while sweep < max_sweeps:
        off = 0.0
        for p in range(n):
            for q in range(n):
                if p != q and abs(a[p, q]) > off:
                    off = abs(a[p, q])
        if off < tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                r = abs(a[p, q])
                if r < 1e-300:
                    continue
                e = a[p, q] / r
                ec = e.conjugate()
                theta = (a[q, q].real - a[p, p].real) / (2.0 * r)
                if theta >= 0.0:
                    t = 1.0 / (theta + sqrt(theta * theta + 1.0))
                else:
                    t = -1.0 / (-theta + sqrt(theta * theta + 1.0))
                c = 1.0 / sqrt(1.0 + t * t)
                s = t * c
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = c * akp - s * ec * akq
                    a[k, q] = s * akp + c * ec * akq
                for k in range(n):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = c * apk - s * e * aqk
                    a[q, k] = s * apk + c * e * aqk
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                for k in range(n):
                    akp = v[k, p]
                    akq = v[k, q]
                    v[k, p] = c * akp - s * ec * akq
                    v[k, q] = s * akp + c * ec * akq
        sweep += 1

    diag_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] diag = diag_arr
    for k in range(n):
        diag[k] = a[k, k].real
    return diag_arr, v_arr, sweep
