"""Pure-Python cyclic Jacobi sweeps; same contract as the compiled kernel."""

import numpy as np


def jacobi_eigh(a, tol, max_sweeps):
    """Diagonalise the Hermitian matrix ``a`` in place.

    Returns ``(diag, vectors, sweeps)``; columns of ``vectors`` are the
    (unsorted) eigenvectors matching ``diag``.
    """
    n = a.shape[0]
    v = np.eye(n, dtype=np.complex128)
    offmask = ~np.eye(n, dtype=bool)
    sweep = 0
    while sweep < max_sweeps:
        if n < 2 or np.abs(a[offmask]).max() < tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                r = abs(a[p, q])
                if r < 1e-300:
                    continue
                e = a[p, q] / r
                theta = (a[q, q].real - a[p, p].real) / (2.0 * r)
                if theta >= 0.0:
                    t = 1.0 / (theta + np.sqrt(theta * theta + 1.0))
                else:
                    t = -1.0 / (-theta + np.sqrt(theta * theta + 1.0))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                ec = e.conjugate()

                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - s * ec * col_q
                a[:, q] = s * col_p + c * ec * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = c * row_p - s * e * row_q
                a[q, :] = s * row_p + c * e * row_q
                a[p, q] = a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real

                col_p = v[:, p].copy()
                col_q = v[:, q].copy()
                v[:, p] = c * col_p - s * ec * col_q
                v[:, q] = s * col_p + c * ec * col_q
        sweep += 1
    return a.diagonal().real.copy(), v, sweep
