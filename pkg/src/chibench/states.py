"""Named states: Bell pairs, GHZ/W, the source state |X>, and the chi family.

Basis strings read left to right with the leftmost symbol most
significant, so ``|q1 q2 q3 q4>`` sits at index ``8 q1 + 4 q2 + 2 q3 + q4``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from chibench.qmath import max_abs, tensor

ROLES = ("polA", "oamA", "polB", "oamB")
SOURCE_ROLES = ("polA", "oamA", "polB", "oamB")
CHI_ROLES = ("polA", "oamA", "oamB", "polB")

SQRT2 = np.sqrt(2.0)

I2 = np.eye(2, dtype=np.complex128)
SX = np.array([[0, 1], [1, 0]], dtype=np.complex128)
SY = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
SZ = np.array([[1, 0], [0, -1]], dtype=np.complex128)
PAULIS = (I2, SX, SY, SZ)
PAULI_NAMES = ("I", "X", "Y", "Z")


class StateError(ValueError):
    pass


def pauli(i: int) -> np.ndarray:
    if i not in (0, 1, 2, 3):
        raise StateError(f"Pauli index must be 0..3, got {i!r}")
    return PAULIS[i]


def basis_ket(bits: str) -> np.ndarray:
    """Computational basis vector for a bit string such as ``"0110"``."""
    v = np.zeros(2 ** len(bits), dtype=np.complex128)
    v[int(bits, 2)] = 1.0
    return v


def _superpose(terms: dict[str, complex], scale: float) -> np.ndarray:
    n = len(next(iter(terms)))
    v = np.zeros(2**n, dtype=np.complex128)
    for bits, c in terms.items():
        v[int(bits, 2)] += c
    return scale * v


@dataclass(frozen=True, eq=False)
class PairState:
    """Four-qubit state of a photon pair.

    ``roles[k]`` names the physical qubit carried by tensor slot ``k``.
    """

    amps: np.ndarray
    roles: tuple[str, str, str, str] = SOURCE_ROLES

    def __post_init__(self):
        amps = np.array(self.amps, dtype=np.complex128).reshape(-1)
        if amps.size != 16:
            raise StateError(f"pair state needs 16 amplitudes, got {amps.size}")
        if not np.all(np.isfinite(amps)):
            raise StateError("pair state has non-finite amplitudes")
        roles = tuple(self.roles)
        if sorted(roles) != sorted(ROLES):
            raise StateError(f"roles {roles} are not a permutation of {ROLES}")
        amps.setflags(write=False)
        object.__setattr__(self, "amps", amps)
        object.__setattr__(self, "roles", roles)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def amplitude(self, bits: str) -> complex:
        return complex(self.amps[int(bits, 2)])

    def tensor4(self) -> np.ndarray:
        return self.amps.reshape(2, 2, 2, 2)

    def reorder(self, roles) -> PairState:
        """Same physical state with tensor slots permuted to ``roles``."""
        roles = tuple(roles)
        perm = [self.roles.index(r) for r in roles]
        return PairState(self.tensor4().transpose(perm).reshape(16), roles)

    def __eq__(self, other):
        if not isinstance(other, PairState):
            return NotImplemented
        return self.roles == other.roles and np.array_equal(self.amps, other.amps)

    __hash__ = None

    def __repr__(self):
        terms = [
            f"{a:.4g}|{i:04b}>" for i, a in enumerate(self.amps) if abs(a) > 1e-12
        ]
        return f"PairState({' + '.join(terms) or '0'}; roles={self.roles})"


def bell_phi_plus() -> np.ndarray:
    return _superpose({"00": 1, "11": 1}, 1 / SQRT2)


def bell_psi_plus() -> np.ndarray:
    return _superpose({"01": 1, "10": 1}, 1 / SQRT2)


def ghz(n: int) -> np.ndarray:
    if n not in (3, 4):
        raise StateError(f"ghz supports n in {{3, 4}}, got {n}")
    return _superpose({"0" * n: 1, "1" * n: 1}, 1 / SQRT2)


def w_state(n: int) -> np.ndarray:
    if n not in (3, 4):
        raise StateError(f"w_state supports n in {{3, 4}}, got {n}")
    terms = {"0" * k + "1" + "0" * (n - k - 1): 1 for k in range(n)}
    return _superpose(terms, 1 / np.sqrt(n))


def x_state() -> PairState:
    """The filtered, encoded source state |X>, roles (polA, oamA, polB, oamB)."""
    v = _superpose({"0001": 1, "0100": 1, "1011": 1, "1110": 1}, 0.5)
    return PairState(v, SOURCE_ROLES)


def zeta(k: int) -> np.ndarray:
    if k == 0:
        return _superpose({"0000": 1, "0011": -1, "0101": -1, "0110": 1}, 0.5)
    if k == 1:
        return _superpose({"1001": 1, "1010": 1, "1100": 1, "1111": 1}, 0.5)
    raise StateError(f"zeta index must be 0 or 1, got {k!r}")


def lambda_component(k: int) -> np.ndarray:
    if k == 0:
        return _superpose({"0000": 1, "0011": -1, "0110": -1, "0101": 1}, 0.5)
    if k == 1:
        return zeta(1)
    raise StateError(f"lambda index must be 0 or 1, got {k!r}")


def local_pauli_operator(i: int, j: int) -> np.ndarray:
    """``sigma^i (x) sigma^j (x) I (x) I`` as a 16x16 matrix."""
    return tensor(pauli(i), pauli(j), I2, I2)


def chi_state(i: int, j: int) -> PairState:
    chi00 = (zeta(0) + zeta(1)) / SQRT2
    return PairState(local_pauli_operator(i, j) @ chi00, CHI_ROLES)


def chi_lee() -> PairState:
    return PairState((lambda_component(0) + lambda_component(1)) / SQRT2, SOURCE_ROLES)


def chi_family() -> dict[tuple[int, int], PairState]:
    return {(i, j): chi_state(i, j) for i, j in product(range(4), repeat=2)}


def apply_local_pauli(s: PairState, i: int, j: int) -> PairState:
    """Apply ``sigma^i`` to tensor slot 0 and ``sigma^j`` to slot 1."""
    return PairState(local_pauli_operator(i, j) @ s.amps, s.roles)


def inner(a: PairState, b: PairState) -> complex:
    if a.roles != b.roles:
        raise StateError(
            f"qubit role orders differ: {a.roles} vs {b.roles}; reorder explicitly"
        )
    return complex(np.vdot(a.amps, b.amps))


def fidelity(a: PairState, b: PairState) -> float:
    """``|<a|b>|^2`` for two pure states with the same role order."""
    return float(abs(inner(a, b)) ** 2)


def states_close(a: PairState, b: PairState, tol: float = 1e-12) -> bool:
    return a.roles == b.roles and max_abs(a.amps - b.amps) <= tol
