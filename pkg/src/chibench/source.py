"""SPDC hyper-entangled source, odd-OAM filter and qubit encoding.

The raw two-photon state lives on (polA, oamA, polB, oamB) with three OAM
modes per photon, R (l=+1), G (l=0), L (l=-1), at index
``18 pA + 6 oA + 3 pB + oB``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from chibench.states import SOURCE_ROLES, PairState

POL_LABELS = ("H", "V")
OAM_LABELS = ("R", "G", "L")
ODD_OAM = (0, 2)  # R, L
ENCODING = {"H": 0, "V": 1, "R": 0, "L": 1}


class SourceError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class RawPairState:
    amps: np.ndarray
    alpha: complex
    raw_norm_sq: float

    def tensor4(self) -> np.ndarray:
        return self.amps.reshape(2, 3, 2, 3)

    def amplitude(self, pa: str, oa: str, pb: str, ob: str) -> complex:
        t = self.tensor4()
        return complex(
            t[POL_LABELS.index(pa), OAM_LABELS.index(oa), POL_LABELS.index(pb), OAM_LABELS.index(ob)]
        )


@dataclass(frozen=True, eq=False)
class FilteredPairState:
    """Odd-OAM pair state still labelled by H/V and R/L."""

    amps: np.ndarray  # shape (2, 2, 2, 2) over (polA, oamA, polB, oamB)
    pol_labels: tuple = POL_LABELS
    oam_labels: tuple = ("R", "L")

    def amplitude(self, pa: str, oa: str, pb: str, ob: str) -> complex:
        p, o = self.pol_labels, self.oam_labels
        return complex(self.amps[p.index(pa), o.index(oa), p.index(pb), o.index(ob)])


def spdc_state(alpha: complex = 1.0) -> RawPairState:
    """Normalised ``(|HH> + |VV>) (x) (|RL> + alpha |GG> + |LR>)``."""
    alpha = complex(alpha)
    pol = np.zeros((2, 2), dtype=np.complex128)
    pol[0, 0] = pol[1, 1] = 1.0
    oam = np.zeros((3, 3), dtype=np.complex128)
    oam[0, 2] = oam[2, 0] = 1.0
    oam[1, 1] = alpha
    t = np.einsum("ac,bd->abcd", pol, oam)  # (pA, oA, pB, oB)
    raw_norm_sq = float(np.vdot(t, t).real)
    amps = t.reshape(36) / np.sqrt(raw_norm_sq)
    amps.setflags(write=False)
    return RawPairState(amps, alpha, raw_norm_sq)


def oam_filter(raw: RawPairState, photon: str = "A") -> tuple[FilteredPairState, float]:
    """Project out the l=0 mode of one photon and renormalise.

    Returns the surviving state and the probability that the pair passes.
    """
    axis = {"A": 1, "B": 3}.get(photon)
    if axis is None:
        raise SourceError(f"photon must be 'A' or 'B', got {photon!r}")
    t = raw.tensor4().copy()
    idx = [slice(None)] * 4
    idx[axis] = 1
    t[tuple(idx)] = 0.0
    prob = float(np.vdot(t, t).real)
    if prob < 1e-24:
        raise SourceError("nothing survives the OAM filter (state is pure l=0)")
    other = 4 - axis
    idx = [slice(None)] * 4
    idx[other] = 1
    leftover = float(np.abs(t[tuple(idx)]).max())
    if leftover > 1e-12:
        raise SourceError(
            f"photon {'B' if photon == 'A' else 'A'} keeps an l=0 component "
            f"({leftover:.3e}) after filtering; cannot encode as qubits"
        )
    odd = t[:, ODD_OAM][:, :, :, ODD_OAM] / np.sqrt(prob)
    return FilteredPairState(odd), prob


def heralding_probability(alpha: complex) -> float:
    return 2.0 / (2.0 + abs(complex(alpha)) ** 2)


def encode(filtered: FilteredPairState) -> PairState:
    """Map H/V and R/L labels onto computational qubits, roles (polA, oamA, polB, oamB)."""
    v = np.zeros((2, 2, 2, 2), dtype=np.complex128)
    for pa in filtered.pol_labels:
        for oa in filtered.oam_labels:
            for pb in filtered.pol_labels:
                for ob in filtered.oam_labels:
                    bits = (ENCODING[pa], ENCODING[oa], ENCODING[pb], ENCODING[ob])
                    v[bits] = filtered.amplitude(pa, oa, pb, ob)
    return PairState(v.reshape(16), SOURCE_ROLES)


def prepare_source(alpha: complex = 1.0) -> tuple[PairState, float]:
    filtered, prob = oam_filter(spdc_state(alpha))
    return encode(filtered), prob
