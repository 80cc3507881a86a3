from itertools import product

import numpy as np
import pytest

from chibench.circuit import (
    Circuit,
    ControlledNot,
    Hadamard,
    PauliX,
    PauliY,
    PauliZ,
    Swap,
    apply_to_photon_b,
    circuit_unitary,
    eq7_map,
    fig2_circuit,
    gate_unitary,
    prepare_chi,
    run_circuit,
    swap_photon_b,
)
from chibench.elements import I4
from chibench.qmath import is_unitary, max_abs
from chibench.states import (
    CHI_ROLES,
    StateError,
    basis_ket,
    chi_lee,
    chi_state,
    fidelity,
    x_state,
)

from oracles import apply_gates_by_hand

S = 1 / np.sqrt(2)


def test_photon_b_circuit_structure():
    c = fig2_circuit(True)
    assert len(c) == 5 and isinstance(c.gates[-1], Swap)
    assert len(fig2_circuit(False)) == 4
    assert c.gates[0] == ControlledNot("p", "o", 0)
    assert c.gates[3] == ControlledNot("p", "o", 1)


def test_gate_matrices():
    assert np.array_equal(gate_unitary(Swap()) @ basis_ket("01"), basis_ket("10"))
    assert np.array_equal(gate_unitary(PauliX("o")) @ basis_ket("00"), basis_ket("01"))
    assert np.array_equal(gate_unitary(PauliZ("p")) @ basis_ket("10"), -basis_ket("10"))
    assert np.array_equal(gate_unitary(PauliY("p")) @ basis_ket("00"), 1j * basis_ket("10"))
    assert np.allclose(gate_unitary(Hadamard("o")) @ basis_ket("00"), [S, S, 0, 0])
    # OAM-controlled CNOT flips polarization when OAM is 1
    assert np.array_equal(gate_unitary(ControlledNot("o", "p", 1)) @ basis_ket("01"), basis_ket("11"))
    with pytest.raises(ValueError):
        ControlledNot("p", "p")


def test_circuit_unitary_is_unitary():
    for swap in (True, False):
        assert is_unitary(circuit_unitary(fig2_circuit(swap)), 1e-12)


def test_target_table_literal_values():
    assert np.allclose(eq7_map(1), [S, 0, 0, -S])
    assert np.allclose(eq7_map(2), [S, 0, 0, S])
    assert np.allclose(eq7_map(3), [0, S, S, 0])
    with pytest.raises(ValueError):
        eq7_map(4)


def test_circuit_columns_match_target_table():
    u = circuit_unitary(fig2_circuit(True))
    for b in range(4):
        assert max_abs(u[:, b] - eq7_map(b)) < 1e-12
    assert np.allclose(u @ basis_ket("00"), [0, -S, S, 0])


def test_no_swap_against_hand_application():
    u = circuit_unitary(fig2_circuit(False))
    for b in range(4):
        ref = np.zeros(4, dtype=complex)
        for (p, o), a in apply_gates_by_hand(b).items():
            ref[2 * p + o] = a
        assert max_abs(u[:, b] - ref) < 1e-15
    assert np.allclose(u @ basis_ket("00"), [0, S, -S, 0])


def test_apply_to_photon_b():
    x = x_state()
    assert apply_to_photon_b(x, I4) == x
    out = apply_to_photon_b(x, circuit_unitary(fig2_circuit(False)))
    # amplitude by amplitude, not only up to phase
    assert max_abs(out.amps - chi_lee().amps) < 1e-12
    with pytest.raises(StateError):
        apply_to_photon_b(chi_state(0, 0), I4)


def test_swap_gate_equals_relabelling():
    lee = apply_to_photon_b(x_state(), circuit_unitary(fig2_circuit(False)))
    by_gate = swap_photon_b(lee)
    by_label = lee.reorder(CHI_ROLES)
    assert by_gate == by_label
    full = apply_to_photon_b(x_state(), circuit_unitary(fig2_circuit(True)))
    assert np.array_equal(full.amps, by_gate.amps)


def test_run_circuit_with_swap_gives_chi00():
    out = run_circuit(x_state(), fig2_circuit(True))
    assert out.roles == CHI_ROLES
    assert fidelity(out, chi_state(0, 0)) == pytest.approx(1, abs=1e-12)
    with pytest.raises(ValueError):
        run_circuit(x_state(), Circuit([Swap(), Hadamard("p")]))


def test_prepare_chi_all():
    outs = {}
    for i, j in product(range(4), repeat=2):
        s = prepare_chi(i, j)
        assert fidelity(s, chi_state(i, j)) == pytest.approx(1, abs=1e-12)
        outs[(i, j)] = s.amps
    vecs = np.array(list(outs.values()))
    assert np.max(np.abs(vecs.conj() @ vecs.T - np.eye(16))) < 1e-12
