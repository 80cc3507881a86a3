"""Dense complex linear algebra on small matrices.

Matrices and vectors are plain ``numpy`` complex128 arrays. Tensor
products use the left-factor-most-significant convention, so the basis
index of ``|i>|j>`` is ``i * dim(b) + j``.

The Hermitian eigensolver is a cyclic Jacobi iteration. A compiled kernel
(``chibench._jacobi``) is used when it was built; otherwise the
pure-Python kernel in ``chibench._jacobi_py`` runs. ``KERNEL`` names the
one selected at import.
"""

from __future__ import annotations

import numpy as np

from chibench import _jacobi_py

try:
    from chibench import _jacobi as _compiled
except ImportError:  # extension not built
    _compiled = None

KERNEL = "cython" if _compiled is not None else "python"

_KERNELS = {"python": _jacobi_py.jacobi_eigh}
if _compiled is not None:
    _KERNELS["cython"] = _compiled.jacobi_eigh

JACOBI_TOL = 1e-14
JACOBI_MAX_SWEEPS = 100
HERMITIAN_TOL = 1e-10
PSD_CLAMP = -1e-10


class LinAlgError(ValueError):
    """Raised when a matrix violates an operation's precondition."""


def available_kernels() -> list[str]:
    return sorted(_KERNELS)


def as_matrix(m) -> np.ndarray:
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise LinAlgError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise LinAlgError("matrix has non-finite entries")
    return a


def dagger(m: np.ndarray) -> np.ndarray:
    return np.conj(m).T


def max_abs(m) -> float:
    m = np.asarray(m)
    return float(np.abs(m).max()) if m.size else 0.0


def tensor(*factors) -> np.ndarray:
    """Kronecker product of one or more matrices (or vectors), left factor most significant."""
    if not factors:
        raise ValueError("tensor() needs at least one factor")
    out = np.asarray(factors[0], dtype=np.complex128)
    for f in factors[1:]:
        out = np.kron(out, np.asarray(f, dtype=np.complex128))
    return out


def is_unitary(m, tol: float = 1e-12) -> bool:
    if tol <= 0:
        raise ValueError("tol must be positive")
    m = as_matrix(m)
    return max_abs(dagger(m) @ m - np.eye(m.shape[0])) <= tol


def is_hermitian(m, tol: float = HERMITIAN_TOL) -> bool:
    m = as_matrix(m)
    return max_abs(m - dagger(m)) <= tol


def phase_between(u, v) -> complex:
    """Unit phase ``e^{i phi}`` taking ``v`` closest to ``u``, read off ``v``'s largest entry."""
    u = np.asarray(u, dtype=np.complex128)
    v = np.asarray(v, dtype=np.complex128)
    if u.shape != v.shape:
        raise LinAlgError(f"shape mismatch {u.shape} vs {v.shape}")
    k = np.unravel_index(np.argmax(np.abs(v)), v.shape)
    if abs(v[k]) == 0.0:
        raise LinAlgError("reference matrix is zero; phase undefined")
    ratio = u[k] / v[k]
    if ratio == 0:
        return 1.0 + 0.0j
    return ratio / abs(ratio)


def global_phase_equal(u, v, tol: float = 1e-12) -> bool:
    """True iff ``u == e^{i phi} v`` entrywise within ``tol`` for some phase."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    phase = phase_between(u, v)
    return max_abs(np.asarray(u) - phase * np.asarray(v)) <= tol


def hermitian_eigen(m, kernel: str | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Parameters
    ----------
    m : array_like
        Hermitian matrix (checked to ``HERMITIAN_TOL``).
    kernel : {"cython", "python"}, optional
        Force a particular sweep kernel; defaults to ``KERNEL``.

    Returns
    -------
    eigenvalues : ndarray
        Real, ascending.
    eigenvectors : ndarray
        Unitary matrix whose columns match ``eigenvalues``.
    """
    m = as_matrix(m)
    if not is_hermitian(m):
        raise LinAlgError(
            f"matrix is not Hermitian (deviation {max_abs(m - dagger(m)):.3e})"
        )
    try:
        sweep = _KERNELS[kernel or KERNEL]
    except KeyError:
        raise ValueError(f"unknown kernel {kernel!r}; have {available_kernels()}") from None
    # symmetrise so the kernel sees an exactly Hermitian matrix
    a = np.ascontiguousarray(0.5 * (m + dagger(m)))
    scale = max(1.0, max_abs(a))
    w, v, _ = sweep(a, JACOBI_TOL * scale, JACOBI_MAX_SWEEPS)
    order = np.argsort(w, kind="stable")
    return w[order], np.ascontiguousarray(v[:, order])


def _check_dims(dims, total: int) -> list[int]:
    dims = [int(d) for d in dims]
    if any(d <= 0 for d in dims) or int(np.prod(dims)) != total:
        raise LinAlgError(f"subsystem dims {dims} do not multiply to {total}")
    return dims


def partial_trace(rho, dims, keep) -> np.ndarray:
    """Reduced density matrix on the subsystems listed in ``keep``.

    Kept subsystems appear in ascending index order regardless of the
    order given in ``keep``.
    """
    rho = as_matrix(rho)
    dims = _check_dims(dims, rho.shape[0])
    n = len(dims)
    keep = sorted(set(int(k) for k in keep))
    if not keep or keep[0] < 0 or keep[-1] >= n:
        raise LinAlgError(f"keep set {keep} invalid for {n} subsystems")
    traced = [k for k in range(n) if k not in keep]
    t = rho.reshape(dims + dims)
    # contract matched row/column axes, highest index first so positions stay valid
    for k in reversed(traced):
        t = np.trace(t, axis1=k, axis2=k + t.ndim // 2)
    d = int(np.prod([dims[k] for k in keep]))
    return t.reshape(d, d)


def reduced_from_vector(psi, dims, keep) -> np.ndarray:
    """Reduced density matrix of the pure state ``psi`` without forming ``|psi><psi|``."""
    psi = np.asarray(psi, dtype=np.complex128)
    dims = _check_dims(dims, psi.size)
    n = len(dims)
    keep = sorted(set(int(k) for k in keep))
    if not keep or keep[0] < 0 or keep[-1] >= n:
        raise LinAlgError(f"keep set {keep} invalid for {n} subsystems")
    traced = [k for k in range(n) if k not in keep]
    t = psi.reshape(dims).transpose(keep + traced)
    d = int(np.prod([dims[k] for k in keep]))
    m = t.reshape(d, -1)
    return m @ dagger(m)


def matrix_sqrt_psd(m) -> np.ndarray:
    """Principal square root of a Hermitian positive semidefinite matrix.

    Eigenvalues in ``[PSD_CLAMP, 0)`` are treated as zero; anything more
    negative is rejected.
    """
    w, v = hermitian_eigen(m)
    if w[0] < PSD_CLAMP:
        raise LinAlgError(f"matrix is not PSD (eigenvalue {w[0]:.3e})")
    root = np.sqrt(np.clip(w, 0.0, None))
    return (v * root) @ dagger(v)


def vn_entropy(rho) -> float:
    """Von Neumann entropy in bits, ``-sum(l * log2 l)`` with ``0 log 0 = 0``."""
    rho = as_matrix(rho)
    tr = np.trace(rho)
    if abs(tr - 1.0) > 1e-9:
        raise LinAlgError(f"density matrix trace is {tr.real:.12g}, expected 1")
    w, _ = hermitian_eigen(rho)
    if w[0] < PSD_CLAMP:
        raise LinAlgError(f"density matrix is not PSD (eigenvalue {w[0]:.3e})")
    w = w[w > 0.0]
    s = float(-np.sum(w * np.log2(w)))
    return min(max(s, 0.0), float(np.log2(rho.shape[0])))
