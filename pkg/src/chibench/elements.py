"""Optical elements as unitaries on the composite (polarization, OAM) qubit pair of one photon.

Single-photon basis index is ``2 p + o`` with ``p = 0/1`` for H/V and
``o = 0/1`` for OAM ``l = +1/-1``. Angles are radians. Lists of elements
are in beam order: the first element listed acts first, so the composite
unitary is ``U_last @ ... @ U_first``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from chibench.qmath import max_abs, tensor
from chibench.states import I2, pauli

I4 = np.eye(4, dtype=np.complex128)
HADAMARD = np.array([[1, 1], [1, -1]], dtype=np.complex128) / np.sqrt(2.0)


class ElementError(ValueError):
    pass


@dataclass(frozen=True)
class HalfWave:
    theta: float


@dataclass(frozen=True)
class QuarterWave:
    theta: float


@dataclass(frozen=True)
class Dove:
    """M-shaped Dove prism rotated by ``theta``."""

    theta: float


@dataclass(frozen=True)
class PhasePlate:
    phi: float


@dataclass(frozen=True)
class Interferometer:
    """PBS Mach-Zehnder: the polarization component equal to ``ctrl_value`` runs through ``arm``.

    ``arm_phase`` and ``ref_phase`` are the extra propagation phases of the
    routed and bypass paths.
    """

    ctrl_value: int
    arm: tuple = ()
    arm_phase: float = 0.0
    ref_phase: float = 0.0

    def __post_init__(self):
        if self.ctrl_value not in (0, 1):
            raise ElementError(f"ctrl_value must be 0 or 1, got {self.ctrl_value!r}")
        object.__setattr__(self, "arm", tuple(self.arm))


@dataclass(frozen=True)
class SwapLabels:
    """Relabel photon B's two qubits; handled by the bench, not a matrix."""


OpticalElement = Union[HalfWave, QuarterWave, Dove, PhasePlate, Interferometer, SwapLabels]


def jones_quarter(theta: float) -> np.ndarray:
    c, s = np.cos(theta), np.sin(theta)
    return np.array(
        [
            [c * c + 1j * s * s, (1 - 1j) * s * c],
            [(1 - 1j) * s * c, s * s + 1j * c * c],
        ],
        dtype=np.complex128,
    )


def jones_half(theta: float) -> np.ndarray:
    c, s = np.cos(2 * theta), np.sin(2 * theta)
    return np.array([[c, s], [s, -c]], dtype=np.complex128)


def waveplate_unitary(kind: str, theta: float) -> np.ndarray:
    if kind == "quarter":
        return tensor(jones_quarter(theta), I2)
    if kind == "half":
        return tensor(jones_half(theta), I2)
    raise ElementError(f"unknown wave plate kind {kind!r}")


def dove_oam_factor(theta: float) -> np.ndarray:
    """OAM action of a Dove prism rotated by ``theta`` on the ``l = +-1`` qubit."""
    return np.array(
        [[0, np.exp(2j * theta)], [np.exp(-2j * theta), 0]], dtype=np.complex128
    )


def dove_unitary(theta: float) -> np.ndarray:
    return tensor(jones_quarter(theta), dove_oam_factor(theta))


def compensated_dove(theta: float) -> list:
    """Dove prism preceded by a quarter-wave plate perpendicular to it.

    ``J_q(theta) J_q(theta + pi/2) = i I`` so only the OAM flip survives,
    up to a global factor ``i``.
    """
    return [QuarterWave(theta + np.pi / 2), Dove(theta)]


def oam_pauli_bench(axis: str) -> list:
    if axis == "X":
        return compensated_dove(0.0)
    if axis == "Y":
        return compensated_dove(np.pi / 4)
    if axis == "Z":
        # sigma_y sigma_x = -i sigma_z
        return compensated_dove(0.0) + compensated_dove(np.pi / 4)
    raise ElementError(f"axis must be X, Y or Z, got {axis!r}")


def pol_pauli_bench(axis: str) -> list:
    if axis == "Z":
        return [HalfWave(0.0)]
    if axis == "X":
        return [HalfWave(np.pi / 4)]
    if axis == "Y":
        # sigma_z sigma_x = i sigma_y
        return [HalfWave(np.pi / 4), HalfWave(0.0)]
    raise ElementError(f"axis must be X, Y or Z, got {axis!r}")


def _pol_projector(value: int) -> np.ndarray:
    p = np.zeros((2, 2), dtype=np.complex128)
    p[value, value] = 1.0
    return tensor(p, I2)


def off_block_magnitude(u: np.ndarray) -> float:
    """Largest entry coupling H and V; zero for polarization-diagonal unitaries."""
    return max(max_abs(u[0:2, 2:4]), max_abs(u[2:4, 0:2]))


def interferometer_unitary(
    ctrl_value: int,
    arm=(),
    arm_phase: float = 0.0,
    ref_phase: float = 0.0,
) -> np.ndarray:
    """Unitary of a PBS interferometer routing polarization ``ctrl_value`` through ``arm``.

    Every arm element must leave H and V uncoupled, otherwise the second
    PBS would split the beam again and the device is not lossless.
    """
    if ctrl_value not in (0, 1):
        raise ElementError(f"ctrl_value must be 0 or 1, got {ctrl_value!r}")
    w = I4
    for k, el in enumerate(arm):
        u = element_unitary(el)
        leak = off_block_magnitude(u)
        if leak > 1e-12:
            raise ElementError(
                f"arm element {k} ({el!r}) mixes polarizations "
                f"(off-block magnitude {leak:.3e}); PBS recombination would be lossy"
            )
        w = u @ w
    routed = _pol_projector(ctrl_value)
    bypass = _pol_projector(1 - ctrl_value)
    return np.exp(1j * arm_phase) * (routed @ w @ routed) + np.exp(1j * ref_phase) * bypass


def element_unitary(e) -> np.ndarray:
    if isinstance(e, HalfWave):
        return waveplate_unitary("half", e.theta)
    if isinstance(e, QuarterWave):
        return waveplate_unitary("quarter", e.theta)
    if isinstance(e, Dove):
        return dove_unitary(e.theta)
    if isinstance(e, PhasePlate):
        return np.exp(1j * e.phi) * I4
    if isinstance(e, Interferometer):
        return interferometer_unitary(e.ctrl_value, e.arm, e.arm_phase, e.ref_phase)
    if isinstance(e, SwapLabels):
        raise ElementError("SwapLabels has no unitary; it is applied by the bench")
    raise ElementError(f"not an optical element: {e!r}")


def sequence_unitary(elements) -> np.ndarray:
    """Composite unitary of elements in beam order."""
    u = I4
    for e in elements:
        u = element_unitary(e) @ u
    return u


def pauli_pair(i: int, j: int) -> np.ndarray:
    """``sigma^i (x) sigma^j`` on (polarization, OAM)."""
    return tensor(pauli(i), pauli(j))
