"""Gate-level model of the photon-B transformation that turns |X> into chi^00.

Wires are ``"p"`` (polarization, most significant) and ``"o"`` (OAM).
Gate lists are in application order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from chibench.elements import HADAMARD, I4
from chibench.qmath import tensor
from chibench.states import (
    CHI_ROLES,
    I2,
    SX,
    SY,
    SZ,
    PairState,
    StateError,
    apply_local_pauli,
    x_state,
)

WIRES = ("p", "o")
_SQRT_HALF = 1 / np.sqrt(2.0)


@dataclass(frozen=True)
class ControlledNot:
    ctrl: str
    target: str
    ctrl_value: int = 1

    def __post_init__(self):
        if self.ctrl not in WIRES or self.target not in WIRES or self.ctrl == self.target:
            raise ValueError(f"bad CNOT wires ctrl={self.ctrl!r} target={self.target!r}")
        if self.ctrl_value not in (0, 1):
            raise ValueError(f"ctrl_value must be 0 or 1, got {self.ctrl_value!r}")


@dataclass(frozen=True)
class Hadamard:
    wire: str


@dataclass(frozen=True)
class PauliX:
    wire: str


@dataclass(frozen=True)
class PauliY:
    wire: str


@dataclass(frozen=True)
class PauliZ:
    wire: str


@dataclass(frozen=True)
class Swap:
    pass


Gate = Union[ControlledNot, Hadamard, PauliX, PauliY, PauliZ, Swap]


@dataclass(frozen=True)
class Circuit:
    gates: tuple

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))

    def __len__(self):
        return len(self.gates)


SWAP = np.array(
    [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=np.complex128
)


def _on_wire(m: np.ndarray, wire: str) -> np.ndarray:
    if wire == "p":
        return tensor(m, I2)
    if wire == "o":
        return tensor(I2, m)
    raise ValueError(f"unknown wire {wire!r}")


def gate_unitary(g) -> np.ndarray:
    if isinstance(g, Hadamard):
        return _on_wire(HADAMARD, g.wire)
    if isinstance(g, PauliX):
        return _on_wire(SX, g.wire)
    if isinstance(g, PauliY):
        return _on_wire(SY, g.wire)
    if isinstance(g, PauliZ):
        return _on_wire(SZ, g.wire)
    if isinstance(g, Swap):
        return SWAP.copy()
    if isinstance(g, ControlledNot):
        on = np.zeros((2, 2), dtype=np.complex128)
        on[g.ctrl_value, g.ctrl_value] = 1.0
        off = np.eye(2, dtype=np.complex128) - on
        if g.ctrl == "p":
            return tensor(on, SX) + tensor(off, I2)
        return tensor(SX, on) + tensor(I2, off)
    raise TypeError(f"not a gate: {g!r}")


def circuit_unitary(c: Circuit) -> np.ndarray:
    u = I4
    for g in c.gates:
        u = gate_unitary(g) @ u
    return u


def fig2_circuit(include_swap: bool = True) -> Circuit:
    gates = [
        ControlledNot("p", "o", ctrl_value=0),
        Hadamard("p"),
        PauliZ("p"),
        ControlledNot("p", "o", ctrl_value=1),
    ]
    if include_swap:
        gates.append(Swap())
    return Circuit(gates)


# target superpositions of the four photon-B basis states, |00>, |01>, |10>, |11>
_EQ7 = (
    {"10": 1, "01": -1},
    {"00": 1, "11": -1},
    {"00": 1, "11": 1},
    {"10": 1, "01": 1},
)


def eq7_map(basis: int) -> np.ndarray:
    """Image of photon-B basis state ``basis`` under the required transformation."""
    if basis not in range(4):
        raise ValueError(f"basis index must be 0..3, got {basis!r}")
    v = np.zeros(4, dtype=np.complex128)
    for bits, c in _EQ7[basis].items():
        v[int(bits, 2)] = c * _SQRT_HALF
    return v


def apply_to_photon_b(s: PairState, u: np.ndarray) -> PairState:
    """Apply the 4x4 unitary ``u`` to slots 2, 3, which must hold (polB, oamB)."""
    if s.roles[2:] != ("polB", "oamB"):
        raise StateError(
            f"photon B must occupy slots 2, 3 as (polB, oamB); roles are {s.roles}"
        )
    return PairState(tensor(I4, u) @ s.amps, s.roles)


def swap_photon_b(s: PairState) -> PairState:
    """Exchange photon B's two qubits and record that slot 2 now carries oamB."""
    if s.roles[2:] != ("polB", "oamB"):
        raise StateError(f"expected (polB, oamB) in slots 2, 3; roles are {s.roles}")
    amps = tensor(I4, SWAP) @ s.amps
    return PairState(amps, s.roles[:2] + ("oamB", "polB"))


def run_circuit(s: PairState, c: Circuit) -> PairState:
    """Apply ``c`` to photon B; a trailing Swap relabels the roles as well."""
    gates = list(c.gates)
    swapped = False
    if gates and isinstance(gates[-1], Swap):
        gates.pop()
        swapped = True
    if any(isinstance(g, Swap) for g in gates):
        raise ValueError("Swap is only supported as the final gate")
    out = apply_to_photon_b(s, circuit_unitary(Circuit(gates)))
    return swap_photon_b(out) if swapped else out


def prepare_chi(i: int, j: int) -> PairState:
    out = run_circuit(x_state(), fig2_circuit(include_swap=True))
    assert out.roles == CHI_ROLES
    return apply_local_pauli(out, i, j)
