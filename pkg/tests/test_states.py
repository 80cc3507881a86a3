from itertools import product

import numpy as np
import pytest

from chibench.states import (
    CHI_ROLES,
    SOURCE_ROLES,
    PairState,
    StateError,
    apply_local_pauli,
    bell_phi_plus,
    bell_psi_plus,
    chi_family,
    chi_lee,
    chi_state,
    fidelity,
    ghz,
    lambda_component,
    w_state,
    x_state,
    zeta,
)

H = 0.5
Q = 1 / (2 * np.sqrt(2))


def test_bell_states():
    assert bell_phi_plus()[0] == pytest.approx(1 / np.sqrt(2))
    assert bell_psi_plus()[0] == 0
    assert np.vdot(bell_phi_plus(), bell_psi_plus()) == 0


def test_ghz_w():
    g = ghz(3)
    assert np.allclose(g[[0, 7]], 1 / np.sqrt(2)) and np.count_nonzero(g) == 2
    w = w_state(3)
    assert np.allclose(w[[1, 2, 4]], 1 / np.sqrt(3)) and np.count_nonzero(w) == 3
    assert np.linalg.norm(ghz(4)) == pytest.approx(1, abs=1e-12)
    assert np.allclose(w_state(4)[[1, 2, 4, 8]], 0.5)
    for bad in (2, 5):
        with pytest.raises(StateError):
            ghz(bad)
        with pytest.raises(StateError):
            w_state(bad)


def test_x_state_amplitudes():
    x = x_state()
    assert x.roles == SOURCE_ROLES
    for bits in ("0001", "0100", "1011", "1110"):
        assert x.amplitude(bits) == H
    assert x.amplitude("0000") == 0
    assert np.count_nonzero(x.amps) == 4


def test_x_state_photon_exchange_symmetry():
    t = x_state().tensor4()
    swapped = t.transpose(2, 3, 0, 1)
    assert np.max(np.abs(swapped - t)) == 0


def test_zeta_lambda():
    z0, z1 = zeta(0), zeta(1)
    for bits, c in {"0000": H, "0110": H, "0011": -H, "0101": -H}.items():
        assert z0[int(bits, 2)] == c
    for bits in ("1001", "1010", "1100", "1111"):
        assert z1[int(bits, 2)] == H
    assert np.array_equal(lambda_component(1), z1)
    l0 = lambda_component(0)
    assert l0[0b0101] == H and l0[0b0110] == -H
    for v in (z0, z1, l0):
        assert np.linalg.norm(v) == pytest.approx(1, abs=1e-15)
    with pytest.raises(StateError):
        zeta(2)


def test_chi00_amplitudes():
    chi = chi_state(0, 0)
    assert chi.roles == CHI_ROLES
    assert chi.amplitude("0000") == pytest.approx(Q, abs=1e-16)
    assert chi.amplitude("0111") == 0
    assert np.array_equal(chi.amps, (zeta(0) + zeta(1)) / np.sqrt(2))


def test_chi30_sign_flip():
    a, b = chi_state(0, 0).amps, chi_state(3, 0).amps
    for k in range(16):
        expected = -a[k] if k >> 3 else a[k]
        assert b[k] == expected


def test_chi_lee():
    s = chi_lee()
    assert s.roles == SOURCE_ROLES
    assert s.amplitude("0101") == pytest.approx(Q, abs=1e-16)
    assert s.amplitude("0110") == pytest.approx(-Q, abs=1e-16)
    assert s.norm == pytest.approx(1, abs=1e-12)


def test_local_pauli():
    chi = chi_state(0, 0)
    assert apply_local_pauli(chi, 0, 0) == chi
    for i, j in product(range(4), repeat=2):
        got = apply_local_pauli(chi, i, j)
        assert np.max(np.abs(got.amps - chi_state(i, j).amps)) < 1e-12
        twice = apply_local_pauli(got, i, j)
        assert fidelity(twice, chi) == pytest.approx(1, abs=1e-12)


def test_fidelity():
    assert fidelity(chi_state(0, 0), chi_state(0, 0)) == pytest.approx(1, abs=1e-12)
    assert fidelity(chi_state(0, 0), chi_state(0, 1)) == pytest.approx(0, abs=1e-12)


def test_fidelity_role_mismatch_is_error():
    with pytest.raises(StateError):
        fidelity(x_state(), chi_state(0, 0))


def test_fidelity_after_explicit_reorder():
    x = x_state().reorder(CHI_ROLES)
    chi = chi_state(0, 0)
    # brute-force inner product over basis strings with slots 2 and 3 exchanged
    ref = 0
    for k in range(16):
        b = f"{k:04b}"
        ref += np.conj(x_state().amplitude(b)) * chi.amplitude(b[:2] + b[3] + b[2])
    assert fidelity(x, chi) == pytest.approx(abs(ref) ** 2, abs=1e-15)


def test_gram_and_norms():
    fam = chi_family()
    vecs = np.array([s.amps for s in fam.values()])
    gram = vecs.conj() @ vecs.T
    assert np.max(np.abs(gram - np.eye(16))) < 1e-12
    for s in list(fam.values()) + [x_state(), chi_lee()]:
        assert s.norm == pytest.approx(1, abs=1e-12)


def test_pair_state_validation():
    with pytest.raises(StateError):
        PairState(np.zeros(8))
    with pytest.raises(StateError):
        PairState(np.zeros(16), ("polA", "polA", "oamB", "polB"))
    s = x_state()
    with pytest.raises(ValueError):
        s.amps[0] = 1
