import numpy as np
import pytest

from chibench.qmath import partial_trace
from chibench.source import (
    SourceError,
    encode,
    heralding_probability,
    oam_filter,
    prepare_source,
    spdc_state,
)
from chibench.states import bell_phi_plus, bell_psi_plus, x_state

ALPHAS = [0, 0.5, 1, 2, 0.3 + 0.4j, -1.5j]


def test_spdc_amplitudes():
    s = spdc_state(0)
    assert s.amplitude("H", "R", "H", "L") == pytest.approx(0.5)
    assert spdc_state(1).raw_norm_sq == pytest.approx(6)
    for a in ALPHAS:
        assert spdc_state(a).amplitude("H", "R", "V", "L") == 0
        assert np.linalg.norm(spdc_state(a).amps) == pytest.approx(1, abs=1e-12)
        assert spdc_state(a).raw_norm_sq == pytest.approx(2 * (2 + abs(a) ** 2))


def test_index_layout():
    s = spdc_state(1)
    # row-major over (pA, oA, pB, oB) with sizes (2, 3, 2, 3): 18 pA + 6 oA + 3 pB + oB
    assert s.amps[18 * 1 + 6 * 1 + 3 * 1 + 1] == pytest.approx(1 / np.sqrt(6))
    assert s.amps[18 * 0 + 6 * 0 + 3 * 0 + 2] == pytest.approx(1 / np.sqrt(6))
    assert s.amps[18 * 1 + 6 * 2 + 3 * 1 + 0] == pytest.approx(1 / np.sqrt(6))
    assert np.count_nonzero(s.amps) == 6


@pytest.mark.parametrize("alpha", ALPHAS)
def test_filter_probability_matches_direct_norm(alpha):
    raw = spdc_state(alpha)
    # direct: zero every amplitude with oA = G on the 36-vector
    v = raw.amps.copy()
    for k in range(36):
        if (k // 6) % 3 == 1:
            v[k] = 0
    direct = float(np.vdot(v, v).real)
    for photon in ("A", "B"):
        _, prob = oam_filter(raw, photon)
        assert prob == pytest.approx(direct, abs=1e-12)
        assert prob == pytest.approx(heralding_probability(alpha), abs=1e-12)


def test_filter_alpha_zero_gives_product_of_bells():
    filtered, prob = oam_filter(spdc_state(0))
    assert prob == pytest.approx(1)
    ref = np.kron(bell_phi_plus(), bell_psi_plus()).reshape(2, 2, 2, 2).transpose(0, 2, 1, 3)
    assert np.max(np.abs(filtered.amps - ref)) < 1e-15


@pytest.mark.parametrize("alpha", ALPHAS)
def test_encode_gives_x_for_any_alpha(alpha):
    filtered, _ = oam_filter(spdc_state(alpha), "B")
    x = encode(filtered)
    assert np.max(np.abs(x.amps - x_state().amps)) < 1e-15
    assert x.roles == x_state().roles
    assert x.amplitude("0001") == pytest.approx(0.5)
    assert x.amplitude("1111") == 0


def test_filter_preserves_polarization_state():
    for alpha in ALPHAS:
        raw = spdc_state(alpha)
        rho_raw = np.outer(raw.amps, raw.amps.conj())
        pol_raw = partial_trace(rho_raw, [2, 3, 2, 3], {0, 2})
        f = oam_filter(raw)[0].amps.reshape(16)
        pol_f = partial_trace(np.outer(f, f.conj()), [2, 2, 2, 2], {0, 2})
        assert np.max(np.abs(pol_raw - pol_f)) < 1e-12


def test_filter_errors():
    with pytest.raises(SourceError):
        oam_filter(spdc_state(1), "C")
    degenerate = spdc_state(1e200)
    with pytest.raises(SourceError):
        oam_filter(degenerate)


def test_prepare_source():
    x, prob = prepare_source(1)
    assert x == encode(oam_filter(spdc_state(1))[0])
    assert prob == pytest.approx(2 / 3, abs=1e-12)
