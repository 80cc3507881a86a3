"""Optical benches: a line-oriented description language, compilers and a simulator.

Bench file grammar (UTF-8, ``#`` comments, blank lines ignored)::

    hwp theta=<deg>deg          half-wave plate
    qwp theta=<deg>deg          quarter-wave plate
    dove theta=<deg>deg         M-shaped Dove prism
    phase phi=<deg>deg          global phase plate
    interf ctrl=<0|1> [arm_phase=<deg>deg] [ref_phase=<deg>deg] {
        ...arm elements...
    }
    swap_labels                 relabel photon B's qubits (last line only)
    photon A|B                  which photon the bench acts on (default B)

Angles are written in degrees with a mandatory ``deg`` suffix and held
in radians. Rendering picks the shortest decimal that parses back to the
identical float.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation, localcontext

import numpy as np

from chibench.circuit import apply_to_photon_b, swap_photon_b
from chibench.elements import (
    I4,
    Dove,
    HalfWave,
    Interferometer,
    PhasePlate,
    QuarterWave,
    SwapLabels,
    element_unitary,
    oam_pauli_bench,
    pol_pauli_bench,
)
from chibench.qmath import tensor
from chibench.states import PAULI_NAMES, PairState, StateError, chi_state, fidelity, x_state

_PI = Decimal("3.14159265358979323846264338327950288419716939937510582097494459")
_PREC = 60


class BenchError(ValueError):
    pass


class BenchParseError(BenchError):
    def __init__(self, lineno: int, msg: str):
        super().__init__(f"line {lineno}: {msg}")
        self.lineno = lineno


@dataclass(frozen=True)
class Bench:
    elements: tuple = ()
    photon: str = "B"

    def __post_init__(self):
        els = tuple(self.elements)
        object.__setattr__(self, "elements", els)
        if self.photon not in ("A", "B"):
            raise BenchError(f"photon must be 'A' or 'B', got {self.photon!r}")
        swaps = [k for k, e in enumerate(els) if isinstance(e, SwapLabels)]
        if swaps and (len(swaps) > 1 or swaps[0] != len(els) - 1):
            raise BenchError("swap_labels may appear once, as the final element")
        if swaps and self.photon != "B":
            raise BenchError("swap_labels only applies to photon B")

    @property
    def swap_labels_at_end(self) -> bool:
        return bool(self.elements) and isinstance(self.elements[-1], SwapLabels)

    @property
    def optical_elements(self) -> tuple:
        return self.elements[:-1] if self.swap_labels_at_end else self.elements


# -- angles -----------------------------------------------------------------

def degrees_to_radians(text: str) -> float:
    """Correctly rounded radians for a decimal degree string."""
    with localcontext() as ctx:
        ctx.prec = _PREC
        return float(Decimal(text) * _PI / 180)


def format_degrees(rad: float) -> str:
    """Shortest decimal degree string that parses back to exactly ``rad``."""
    rad = float(rad)
    if rad == 0.0:
        return "0"
    with localcontext() as ctx:
        ctx.prec = _PREC
        exact = Decimal(rad) * 180 / _PI
    for digits in range(1, 40):
        with localcontext() as ctx:
            ctx.prec = digits
            text = format(+exact, "f")
        if degrees_to_radians(text) == rad:
            return text
    raise AssertionError(f"no round-tripping degree string for {rad!r}")


_NUM = r"[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?"
_ANGLE = re.compile(rf"^({_NUM})deg$")


def _angle(value: str, lineno: int, key: str) -> float:
    m = _ANGLE.match(value)
    if not m:
        raise BenchParseError(lineno, f"malformed angle {key}={value!r} (expected e.g. 22.5deg)")
    try:
        return degrees_to_radians(m.group(1))
    except InvalidOperation:
        raise BenchParseError(lineno, f"malformed angle {key}={value!r}") from None


# -- parsing ----------------------------------------------------------------

def _params(tokens: list[str], lineno: int, allowed: set[str], required: set[str]) -> dict:
    out = {}
    for tok in tokens:
        key, eq, value = tok.partition("=")
        if not eq or not value:
            raise BenchParseError(lineno, f"expected key=value, got {tok!r}")
        if key not in allowed:
            raise BenchParseError(lineno, f"unknown parameter {key!r}")
        if key in out:
            raise BenchParseError(lineno, f"duplicate parameter {key!r}")
        out[key] = value
    missing = required - set(out)
    if missing:
        raise BenchParseError(lineno, f"missing parameter {', '.join(sorted(missing))}")
    return out


_PLATES = {"hwp": HalfWave, "qwp": QuarterWave, "dove": Dove}


def parse_bench(text: str) -> Bench:
    top: list = []
    block = None  # (opening lineno, Interferometer kwargs, arm list)
    photon = None
    swap_line = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if swap_line is not None:
            raise BenchParseError(lineno, f"element after swap_labels (line {swap_line}); swap_labels must be last")
        tokens = line.split()
        head, rest = tokens[0], tokens[1:]
        target = block[2] if block is not None else top

        if head in _PLATES:
            p = _params(rest, lineno, {"theta"}, {"theta"})
            target.append(_PLATES[head](_angle(p["theta"], lineno, "theta")))
        elif head == "phase":
            p = _params(rest, lineno, {"phi"}, {"phi"})
            target.append(PhasePlate(_angle(p["phi"], lineno, "phi")))
        elif head == "interf":
            if block is not None:
                raise BenchParseError(lineno, f"nested interf (block opened at line {block[0]})")
            if not rest or rest[-1] != "{":
                raise BenchParseError(lineno, "interf line must end with '{'")
            p = _params(rest[:-1], lineno, {"ctrl", "arm_phase", "ref_phase"}, {"ctrl"})
            if p["ctrl"] not in ("0", "1"):
                raise BenchParseError(lineno, f"ctrl must be 0 or 1, got {p['ctrl']!r}")
            phases = {k: _angle(p[k], lineno, k) for k in ("arm_phase", "ref_phase") if k in p}
            block = (lineno, dict(ctrl_value=int(p["ctrl"]), **phases), [])
        elif head == "}":
            if rest:
                raise BenchParseError(lineno, "unexpected text after '}'")
            if block is None:
                raise BenchParseError(lineno, "'}' without an open interf block")
            _, kwargs, arm = block
            top.append(Interferometer(arm=tuple(arm), **kwargs))
            block = None
        elif head == "swap_labels":
            if rest:
                raise BenchParseError(lineno, "swap_labels takes no parameters")
            if block is not None:
                raise BenchParseError(lineno, "swap_labels inside an interf block")
            top.append(SwapLabels())
            swap_line = lineno
        elif head == "photon":
            if len(rest) != 1 or rest[0] not in ("A", "B"):
                raise BenchParseError(lineno, "expected 'photon A' or 'photon B'")
            if photon is not None:
                raise BenchParseError(lineno, "photon given twice")
            if top or block is not None:
                raise BenchParseError(lineno, "photon must precede all elements")
            photon = rest[0]
        else:
            raise BenchParseError(lineno, f"unknown element {head!r}")
    if block is not None:
        raise BenchParseError(block[0], "unterminated interf block")
    try:
        return Bench(tuple(top), photon or "B")
    except BenchError as exc:
        raise BenchParseError(swap_line or 1, str(exc)) from None


# -- rendering --------------------------------------------------------------

def _render_element(e) -> str:
    if isinstance(e, HalfWave):
        return f"hwp theta={format_degrees(e.theta)}deg"
    if isinstance(e, QuarterWave):
        return f"qwp theta={format_degrees(e.theta)}deg"
    if isinstance(e, Dove):
        return f"dove theta={format_degrees(e.theta)}deg"
    if isinstance(e, PhasePlate):
        return f"phase phi={format_degrees(e.phi)}deg"
    if isinstance(e, SwapLabels):
        return "swap_labels"
    raise BenchError(f"cannot render {e!r}")


def render_bench(b: Bench) -> str:
    lines = []
    if b.photon != "B":
        lines.append(f"photon {b.photon}")
    for e in b.elements:
        if isinstance(e, Interferometer):
            head = f"interf ctrl={e.ctrl_value}"
            if e.arm_phase != 0.0:
                head += f" arm_phase={format_degrees(e.arm_phase)}deg"
            if e.ref_phase != 0.0:
                head += f" ref_phase={format_degrees(e.ref_phase)}deg"
            lines.append(head + " {")
            for a in e.arm:
                if isinstance(a, (Interferometer, SwapLabels)):
                    raise BenchError(f"{type(a).__name__} cannot appear inside an interferometer arm")
                lines.append("    " + _render_element(a))
            lines.append("}")
        else:
            lines.append(_render_element(e))
    return "".join(line + "\n" for line in lines)


# -- compilers --------------------------------------------------------------

def compile_fig5(arm_phase: float = -np.pi / 2) -> Bench:
    """Optical bench realising the photon-B circuit, swap included.

    ``arm_phase`` is the extra phase on the V path of the second
    interferometer; the default cancels the factor ``i`` that the Dove
    prism and quarter-wave plate leave on that path.
    """
    return Bench(
        (
            Interferometer(ctrl_value=0, arm=(Dove(0.0),)),
            HalfWave(np.pi / 8),
            HalfWave(0.0),
            Interferometer(
                ctrl_value=1,
                arm=(QuarterWave(np.pi / 2), Dove(0.0)),
                arm_phase=arm_phase,
            ),
            SwapLabels(),
        )
    )


def compile_pauli(i: int, j: int) -> Bench:
    """Bench applying ``sigma^i`` to polarization and ``sigma^j`` to OAM of photon A."""
    if i not in range(4) or j not in range(4):
        raise BenchError(f"Pauli indices must be 0..3, got ({i}, {j})")
    elements = []
    if i:
        elements += pol_pauli_bench(PAULI_NAMES[i])
    if j:
        elements += oam_pauli_bench(PAULI_NAMES[j])
    return Bench(tuple(elements), photon="A")


# -- simulation -------------------------------------------------------------

def bench_unitary(b: Bench) -> tuple[np.ndarray, bool]:
    u = I4
    for e in b.optical_elements:
        u = element_unitary(e) @ u
    return u, b.swap_labels_at_end


def simulate(b: Bench, state: PairState) -> PairState:
    if not b.elements:
        return state
    u, swap = bench_unitary(b)
    if b.photon == "A":
        if state.roles[:2] != ("polA", "oamA"):
            raise StateError(f"photon A must occupy slots 0, 1 as (polA, oamA); roles are {state.roles}")
        return PairState(tensor(u, I4) @ state.amps, state.roles)
    out = apply_to_photon_b(state, u)
    return swap_photon_b(out) if swap else out


def simulate_chain(benches, state: PairState | None = None) -> PairState:
    s = x_state() if state is None else state
    for b in benches:
        s = simulate(b, s)
    return s


@dataclass(frozen=True)
class CompensationReport:
    compensated_fidelity: float
    literal_fidelity: float
    residual_phase: complex
    flagged: bool

    def message(self) -> str:
        if not self.flagged:
            return "second interferometer realises an exact CNOT"
        return (
            f"literal QWP(90deg)+Dove arm leaves a relative phase "
            f"{complex(round(self.residual_phase.real, 12) + 0.0, round(self.residual_phase.imag, 12) + 0.0):.6g} "
            f"on the V path; chi00 fidelity {self.literal_fidelity:.12g} without path-phase "
            f"compensation vs {self.compensated_fidelity:.12g} with arm_phase=-90deg"
        )


def compensation_report() -> CompensationReport:
    """Compare the chi00 output with and without the V-path phase correction."""
    target = chi_state(0, 0)
    good = fidelity(simulate(compile_fig5(), x_state()), target)
    literal_bench = compile_fig5(arm_phase=0.0)
    bad = fidelity(simulate(literal_bench, x_state()), target)
    routed = element_unitary(literal_bench.elements[3])
    residual = complex(routed[2, 3])  # <V,l=+1| U |V,l=-1>, ideally 1
    return CompensationReport(good, bad, residual, flagged=abs(residual - 1) > 1e-12)


def bench_from_targets(target: str) -> Bench:
    """``chi00`` or ``pauli:I,J``."""
    if target == "chi00":
        return compile_fig5()
    if target.startswith("pauli:"):
        i, j = parse_index_pair(target[len("pauli:"):])
        return compile_pauli(i, j)
    raise BenchError(f"unknown target {target!r} (expected chi00 or pauli:I,J)")


def parse_index_pair(text: str) -> tuple[int, int]:
    parts = text.split(",")
    if len(parts) != 2 or not all(p.strip() in ("0", "1", "2", "3") for p in parts):
        raise BenchError(f"expected two Pauli indices 0..3 as I,J; got {text!r}")
    return int(parts[0]), int(parts[1])

