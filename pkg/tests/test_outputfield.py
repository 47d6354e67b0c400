import math

import numpy as np
import pytest

from polaromech import (FilterSpec, IntegrationConfig, SteadyState,
                        derive_constants, dump_integrand, filter_fourier,
                        intracavity_cm, intracavity_cm_spectral,
                        log_negativity, mech_noise_psd, operating_point,
                        output_cm, output_cm_at, paper_params,
                        reduce_bipartite, solve_steady_state, transfer_matrix,
                        validate_cm)

TWO_PI = 2.0 * math.pi


def _baseline():
    p = paper_params()
    dp, ss = operating_point(p)
    return p, dp, ss


# --- filter ---

def test_filter_spec_validation():
    with pytest.raises(ValueError):
        FilterSpec(central_freq=0.0, filter_time=-1.0, epsilon=1.0)
    with pytest.raises(ValueError):
        FilterSpec(central_freq=0.0, filter_time=1.0, epsilon=0.0)
    with pytest.raises(ValueError):
        FilterSpec(central_freq=float("inf"), filter_time=1.0, epsilon=1.0)


def test_filter_spec_constructors():
    w = TWO_PI * 10e6
    s = FilterSpec.from_epsilon(10.0, -w, w)
    assert s.filter_time == pytest.approx(10.0 / w, rel=1e-15)
    assert s.central_freq == -w
    assert FilterSpec.stokes(10.0, w) == s


def test_filter_peak_value_and_phase():
    s = FilterSpec(central_freq=3.0, filter_time=2.0, epsilon=2.0)
    # at the central frequency: sinc(0) = 1, zero phase
    assert filter_fourier(s, 3.0) == pytest.approx(math.sqrt(2.0 / TWO_PI))
    # first sinc zero at (w - Omega) tau / 2 = pi
    assert abs(filter_fourier(s, 3.0 + TWO_PI / 2.0)) < 1e-15


def test_filter_normalization():
    # integral of |g|^2 over frequency is 1 for any (Omega, tau)
    s = FilterSpec(central_freq=-1.0, filter_time=7.0, epsilon=7.0)
    w = np.linspace(-400.0, 400.0, 800001)
    g = filter_fourier(s, w)
    total = np.trapezoid(np.abs(g) ** 2, w)
    assert total == pytest.approx(1.0, abs=1e-3)


def test_filter_vectorized_matches_scalar():
    s = FilterSpec(central_freq=0.5, filter_time=3.0, epsilon=3.0)
    grid = np.array([-1.0, 0.0, 0.5, 2.0])
    vec = filter_fourier(s, grid)
    for i, wv in enumerate(grid):
        assert vec[i] == filter_fourier(s, float(wv))


# --- mechanical noise spectrum ---

def test_mech_noise_markovian_at_resonance():
    p, dp, _ = _baseline()
    n = dp.thermal_occupancy
    expect = dp.mech_damping * (2.0 * n + 1.0)
    assert mech_noise_psd(dp.mech_freq, dp, p.temperature) == pytest.approx(
        expect, rel=1e-12)
    assert mech_noise_psd(-dp.mech_freq, dp, p.temperature) == pytest.approx(
        expect, rel=1e-12)


def test_mech_noise_zero_frequency_limit():
    from polaromech import HBAR, K_BOLTZMANN
    p, dp, _ = _baseline()
    expect = 2.0 * dp.mech_damping * K_BOLTZMANN * p.temperature \
        / (HBAR * dp.mech_freq)
    assert mech_noise_psd(0.0, dp, p.temperature) == pytest.approx(expect, rel=1e-12)
    # continuous approach to the limit
    near = mech_noise_psd(1e-3 * dp.mech_freq, dp, p.temperature)
    assert near == pytest.approx(expect, rel=1e-5)


def test_mech_noise_zero_temperature():
    _, dp, _ = _baseline()
    w = 0.7 * dp.mech_freq
    expect = dp.mech_damping * w / dp.mech_freq
    assert mech_noise_psd(w, dp, 0.0) == pytest.approx(expect, rel=1e-14)
    assert mech_noise_psd(-w, dp, 0.0) == pytest.approx(expect, rel=1e-14)
    assert mech_noise_psd(0.0, dp, 0.0) == 0.0


def test_mech_noise_even_and_increasing():
    p, dp, _ = _baseline()
    w = dp.mech_freq * np.array([0.3, 1.0, 2.5])
    plus = mech_noise_psd(w, dp, p.temperature)
    minus = mech_noise_psd(-w, dp, p.temperature)
    assert np.allclose(plus, minus, rtol=1e-13)
    assert plus[0] < plus[1] < plus[2]


# --- transfer matrix ---

def test_transfer_matrix_inverts():
    rng = np.random.default_rng(5)
    a = rng.normal(size=(6, 6)) - 2.0 * np.eye(6)
    w = 1.3
    m = transfer_matrix(w, a)
    assert np.allclose(m @ (1j * w * np.eye(6) + a), np.eye(6), atol=1e-12)


def test_transfer_matrix_singular_at_undamped_resonance():
    a = np.array([[0.0, 1.0], [-1.0, 0.0]])  # poles at +-i
    with pytest.raises(np.linalg.LinAlgError):
        transfer_matrix(1.0, a)


# --- output covariance ---

def test_output_decoupled_optical_blocks_exact_vacuum():
    # zero effective coupling: filtered output is exactly vacuum
    p, dp, _ = _baseline()
    ss0 = SteadyState(alpha_te=0j, alpha_tm=0j, q_s=0.0, p_s=0.0,
                      detuning=p.cavity_detuning, coupling_te=0j,
                      coupling_tm=0j)
    spec = FilterSpec.stokes(10.0, dp.mech_freq)
    v = np.asarray(output_cm(ss0, dp, spec, spec))
    assert np.array_equal(v[:4, :4], 0.5 * np.eye(4))
    assert np.all(v[:4, 4:] == 0.0)
    # mechanics stays thermal
    assert v[4, 4] == pytest.approx(dp.thermal_occupancy + 0.5, rel=1e-6)
    assert v[5, 5] == pytest.approx(dp.thermal_occupancy + 0.5, rel=1e-6)


def test_output_undriven_tm_block_exact_vacuum():
    # theta = 0 leaves TM undriven; its filtered output block is pure vacuum
    p, dp, ss = _baseline()
    spec = FilterSpec.stokes(10.0, dp.mech_freq)
    v = np.asarray(output_cm(ss, dp, spec, spec))
    assert np.array_equal(v[2:4, 2:4], 0.5 * np.eye(2))
    assert np.all(v[2:4, :2] == 0.0) and np.all(v[2:4, 4:] == 0.0)


def test_output_entanglement_epsilon_scan():
    """Frozen values of E_N for the Stokes-filtered TE output vs bandwidth."""
    p = paper_params()
    expected = {1: 0.11016, 2: 0.21495, 5: 0.39656, 10: 0.48598, 20: 0.38728}
    for eps, ref in expected.items():
        v, _, _ = output_cm_at(p, eps, -1.0)
        en = log_negativity(reduce_bipartite(v, ("te", "mech")))
        assert en == pytest.approx(ref, abs=1e-3)


def test_output_beats_intracavity():
    p = paper_params()
    v_in, _, _ = intracavity_cm(p)
    en_in = log_negativity(reduce_bipartite(v_in, ("te", "mech")))
    v_out, _, _ = output_cm_at(p, 10.0, -1.0)
    en_out = log_negativity(reduce_bipartite(v_out, ("te", "mech")))
    assert en_out > en_in


def test_stokes_carries_the_entanglement():
    p = paper_params()
    v_red, _, _ = output_cm_at(p, 10.0, -1.0)
    v_blue, _, _ = output_cm_at(p, 10.0, +1.0)
    en_red = log_negativity(reduce_bipartite(v_red, ("te", "mech")))
    en_blue = log_negativity(reduce_bipartite(v_blue, ("te", "mech")))
    assert en_red > 0.3
    assert en_blue == 0.0


def test_output_cm_is_physical():
    p = paper_params(polarization_angle=0.5)
    v, _, _ = output_cm_at(p, 5.0, -1.0)
    rep = validate_cm(v)
    assert rep.physical
    assert np.asarray(v).shape == (6, 6)


def test_per_polarization_filters():
    # TE on the Stokes sideband, TM elsewhere: TE-mech entanglement persists
    p, dp, ss = _baseline()
    w = dp.mech_freq
    spec_te = FilterSpec.stokes(10.0, w)
    spec_tm = FilterSpec.from_epsilon(4.0, 0.3 * w, w)
    v = output_cm(ss, dp, spec_te, spec_tm)
    en = log_negativity(reduce_bipartite(v, ("te", "mech")))
    assert en > 0.3


def test_inconsistent_epsilon_rejected():
    p, dp, ss = _baseline()
    bad = FilterSpec(central_freq=-dp.mech_freq,
                     filter_time=10.0 / dp.mech_freq, epsilon=11.0)
    good = FilterSpec.stokes(10.0, dp.mech_freq)
    with pytest.raises(ValueError):
        output_cm(ss, dp, bad, good)


def test_unstable_point_rejected():
    p = paper_params()
    dp = derive_constants(p)
    # blue-detuned strong-coupling steady state built by hand
    ss = SteadyState(alpha_te=4.6e4 + 0j, alpha_tm=0j, q_s=1.2e4, p_s=0.0,
                     detuning=-p.mech_freq,
                     coupling_te=0.45 * p.mech_freq + 0j, coupling_tm=0j)
    spec = FilterSpec.stokes(10.0, dp.mech_freq)
    with pytest.raises(ValueError):
        output_cm(ss, dp, spec, spec)


def test_integration_config_validation():
    with pytest.raises(ValueError):
        IntegrationConfig(freq_cutoff=3.0)
    with pytest.raises(ValueError):
        IntegrationConfig(tolerance=0.0)
    with pytest.raises(ValueError):
        IntegrationConfig(gauss_order=1)


def test_nonconvergence_raises_with_achieved_change():
    p, dp, ss = _baseline()
    spec = FilterSpec.stokes(10.0, dp.mech_freq)
    cfg = IntegrationConfig(tolerance=1e-30, max_doublings=1)
    with pytest.raises(ArithmeticError) as err:
        output_cm(ss, dp, spec, spec, cfg=cfg)
    assert "did not converge" in str(err.value)
    assert "moved entries by" in str(err.value)


# --- wide-band Markovian consistency ---

def test_spectral_route_reproduces_lyapunov():
    for over in ({}, {"polarization_angle": 0.9},
                 {"cavity_detuning": 0.7 * paper_params().mech_freq}):
        p = paper_params(**over)
        dp, ss = operating_point(p)
        v_spec = np.asarray(intracavity_cm_spectral(ss, dp))
        v_lyap = np.asarray(intracavity_cm(p)[0])
        rel = np.abs(v_spec - v_lyap).max() / np.abs(v_lyap).max()
        assert rel < 1e-4


# --- diagnostics ---

def test_dump_integrand(tmp_path):
    p, dp, ss = _baseline()
    spec = FilterSpec.stokes(2.0, dp.mech_freq)
    path = tmp_path / "integrand.csv"
    dump_integrand(path, ss, dp, spec, spec)
    lines = path.read_text().splitlines()
    header = lines[0].split(",")
    assert header[0] == "omega_over_omega_m"
    assert len(header) == 37
    data = np.array([[float(x) for x in l.split(",")] for l in lines[1:]])
    assert data.shape[1] == 37
    w = data[:, 0]
    assert np.all(np.diff(w) > 0) and w.min() > 0.0
