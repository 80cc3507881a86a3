"""Entanglement structure of four-qubit pure states: cut entropies, pair concurrences, chi-basis expansion.

Qubits are named ``a, b, c, d`` after tensor slots 0..3. A cut label such
as ``"ad|bc"`` is evaluated on its first block.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product

import numpy as np

from chibench.qmath import (
    LinAlgError,
    as_matrix,
    hermitian_eigen,
    is_hermitian,
    matrix_sqrt_psd,
    max_abs,
    reduced_from_vector,
    vn_entropy,
)
from chibench.states import CHI_ROLES, SY, PairState, StateError, chi_family

QUBITS = "abcd"
CUTS = ("ab|cd", "ac|bd", "ad|bc", "a|bcd", "b|acd", "c|abd", "d|abc")
PAIRS = tuple("".join(p) for p in combinations(QUBITS, 2))
_YY = np.kron(SY, SY)


def _slots(letters: str) -> list[int]:
    try:
        return [QUBITS.index(ch) for ch in letters]
    except ValueError:
        raise ValueError(f"unknown qubit in {letters!r}; use a-d") from None


def reduced_state(s: PairState, letters: str) -> np.ndarray:
    return reduced_from_vector(s.amps, [2, 2, 2, 2], _slots(letters))


def bipartition_entropy(s: PairState, cut: str) -> float:
    """Entropy in bits of the reduced state on the first block of ``cut``."""
    first, bar, second = cut.partition("|")
    if not bar or sorted(first + second) != list(QUBITS):
        raise ValueError(f"{cut!r} is not a bipartition of abcd")
    return vn_entropy(reduced_state(s, first))


def concurrence(rho) -> float:
    """Wootters concurrence of a two-qubit density matrix.

    Uses the eigenvalues of the Hermitian matrix ``sqrt(rho) rho~ sqrt(rho)``,
    whose square roots are the usual lambda_i.
    """
    rho = as_matrix(rho)
    if rho.shape != (4, 4):
        raise LinAlgError(f"concurrence needs a 4x4 density matrix, got {rho.shape}")
    if not is_hermitian(rho) or abs(np.trace(rho) - 1) > 1e-9:
        raise LinAlgError("not a valid density matrix (Hermitian, unit trace)")
    root = matrix_sqrt_psd(rho)
    flipped = _YY @ rho.conj() @ _YY
    m = root @ flipped @ root
    w, _ = hermitian_eigen(0.5 * (m + m.conj().T))
    lam = np.sqrt(np.clip(w, 0.0, None))[::-1]
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


def pair_concurrence(s: PairState, pair: str) -> float:
    return concurrence(reduced_state(s, pair))


def gram_matrix() -> np.ndarray:
    vecs = np.array([s.amps for s in chi_family().values()])
    return vecs.conj() @ vecs.T


def basis_orthonormality(tol: float = 1e-12) -> float:
    """Max deviation of the chi-family Gram matrix from the identity."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    return max_abs(gram_matrix() - np.eye(16))


def chi_expand(s: PairState) -> dict[tuple[int, int], complex]:
    """Coefficients ``<chi^{ij}|s>`` keyed by ``(i, j)``."""
    if s.roles != CHI_ROLES:
        raise StateError(f"chi expansion needs roles {CHI_ROLES}, got {s.roles}")
    return {key: complex(np.vdot(chi.amps, s.amps)) for key, chi in chi_family().items()}


@dataclass
class AnalysisReport:
    bipartition_entropies: dict = field(default_factory=dict)
    pair_concurrences: dict = field(default_factory=dict)
    target_fidelities: dict = field(default_factory=dict)

    def rows(self):
        for cut in CUTS:
            yield "entropy", cut, self.bipartition_entropies[cut]
        for pair in PAIRS:
            yield "concurrence", pair, self.pair_concurrences[pair]
        for (i, j) in product(range(4), repeat=2):
            yield "fidelity", f"chi{i}{j}", self.target_fidelities[(i, j)]


def report(s: PairState) -> AnalysisReport:
    coeffs = chi_expand(s)
    return AnalysisReport(
        bipartition_entropies={cut: bipartition_entropy(s, cut) for cut in CUTS},
        pair_concurrences={pair: pair_concurrence(s, pair) for pair in PAIRS},
        target_fidelities={k: abs(c) ** 2 for k, c in coeffs.items()},
    )
