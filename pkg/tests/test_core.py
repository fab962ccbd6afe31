import numpy as np
import pytest

from rbmstates import (
    CapacityError,
    RBMParameters,
    StateVector,
    amplitude,
    average_norm_squared_analytic,
    build_state,
    log_amplitude,
    log_norm_squared,
    norm_squared,
    sample_weights,
)
from rbmstates.core import flip_index, index_from_spins, spins_from_indices
from rbmstates.ensemble import sample_seed
from rbmstates.numerics import LOG2


def test_parameters_validation():
    with pytest.raises(ValueError):
        RBMParameters(0, 4, 0.0, 1.0)
    with pytest.raises(ValueError):
        RBMParameters(4, 0, 0.0, 1.0)
    with pytest.raises(ValueError):
        RBMParameters(4, 4, -0.5, 1.0)
    with pytest.raises(ValueError):
        RBMParameters(4, 4, 0.0, np.inf)
    p = RBMParameters(8, 6, 0.0, 4.0)
    assert p.hidden_ratio == 0.75


def test_zero_variance_gives_zero_matrix():
    p = RBMParameters(5, 7, 0.0, 0.0)
    w = sample_weights(p, 981)
    assert np.all(w.entries == 0.0)


def test_sampling_is_deterministic():
    p = RBMParameters(6, 9, 0.7, 1.3)
    w1 = sample_weights(p, 42)
    w2 = sample_weights(p, 42)
    assert np.array_equal(w1.entries, w2.entries)
    w3 = sample_weights(p, 43)
    assert not np.array_equal(w1.entries, w3.entries)


def test_sample_variances_match_parameters():
    # Real-part variance u^2/N = 0.1; chi-square standard error on the
    # pooled sample variance is 0.1 * sqrt(2/count).
    p = RBMParameters(10, 10, 1.0, 1.0)
    total = 0.0
    total_sq = 0.0
    count = 0
    for k in range(100_000):
        w = sample_weights(p, sample_seed(0, 0, k)).entries
        total += w.real.sum()
        total_sq += (w.real ** 2).sum()
        count += w.size
    var = total_sq / count - (total / count) ** 2
    se = 0.1 * np.sqrt(2.0 / count)
    assert abs(var - 0.1) < 3 * se


def test_amplitude_zero_weights_is_one():
    p = RBMParameters(4, 3, 0.0, 0.0)
    w = sample_weights(p, 0)
    config = spins_from_indices([5], 4)[0]
    assert amplitude(w, config) == 1.0 + 0.0j


def test_amplitude_spin_flip_symmetry_bitwise():
    for u, v in [(0.0, 4.0), (1.2, 0.0), (0.8, 0.9)]:
        p = RBMParameters(7, 5, u, v)
        w = sample_weights(p, 11)
        rng = np.random.default_rng(1)
        for _ in range(10):
            config = rng.choice([-1.0, 1.0], size=7)
            a1 = amplitude(w, config)
            a2 = amplitude(w, -config)
            assert a1 == a2  # exact equality, not approximate


def test_amplitude_pure_imaginary_bounded():
    p = RBMParameters(8, 10, 0.0, 3.0)
    w = sample_weights(p, 5)
    rng = np.random.default_rng(2)
    for _ in range(20):
        config = rng.choice([-1.0, 1.0], size=8)
        assert abs(amplitude(w, config)) <= 1.0 + 1e-15


def test_log_amplitude_consistent_with_amplitude():
    p = RBMParameters(6, 6, 1.1, 0.7)
    w = sample_weights(p, 17)
    config = spins_from_indices([23], 6)[0]
    la = log_amplitude(w, config)
    direct = amplitude(w, config)
    assert np.exp(la) == pytest.approx(direct, rel=1e-12)
    assert -np.pi < la.imag <= np.pi


def test_amplitude_validates_config():
    p = RBMParameters(4, 2, 0.0, 1.0)
    w = sample_weights(p, 1)
    with pytest.raises(ValueError):
        amplitude(w, np.ones(5))
    with pytest.raises(ValueError):
        amplitude(w, np.array([1.0, 0.0, 1.0, 1.0]))


def test_build_state_zero_weights():
    p = RBMParameters(2, 3, 0.0, 0.0)
    state = build_state(sample_weights(p, 7))
    assert np.array_equal(state.amplitudes, np.ones(4, dtype=complex))


def test_build_state_flip_pairing():
    p = RBMParameters(3, 4, 0.6, 1.1)
    state = build_state(sample_weights(p, 3))
    for i in range(8):
        assert state.amplitudes[i] == state.amplitudes[flip_index(i, 3)]


def test_build_state_matches_single_amplitudes():
    p = RBMParameters(5, 4, 0.9, 0.4)
    w = sample_weights(p, 13)
    state = build_state(w)
    for i in range(32):
        config = spins_from_indices([i], 5)[0]
        physical = state.amplitudes[i] * np.exp(state.log_scale)
        assert physical == pytest.approx(amplitude(w, config), rel=1e-12)


def test_capacity_cap_and_override():
    p = RBMParameters(6, 2, 0.0, 1.0)
    w = sample_weights(p, 1)
    with pytest.raises(CapacityError):
        build_state(w, max_visible=5)
    state = build_state(w, max_visible=6)
    assert state.amplitudes.shape == (64,)


def test_norm_squared_zero_weights_and_normalized():
    p = RBMParameters(6, 3, 0.0, 0.0)
    state = build_state(sample_weights(p, 2))
    assert norm_squared(state) == pytest.approx(2**6)
    p = RBMParameters(6, 5, 0.0, 2.0)
    state = build_state(sample_weights(p, 9)).normalized()
    assert norm_squared(state) == pytest.approx(1.0, abs=1e-12)


def test_log_norm_squared_handles_large_scale():
    p = RBMParameters(8, 8, 3.0, 0.5)
    state = build_state(sample_weights(p, 4))
    log_n = log_norm_squared(state)
    assert np.isfinite(log_n)
    assert log_n == pytest.approx(np.log(norm_squared(state)), rel=1e-12)


def test_index_spin_roundtrip():
    spins = spins_from_indices(np.arange(16), 4)
    for i in range(16):
        assert index_from_spins(spins[i]) == i
    # bit 0 -> site 0, bit value 1 -> spin -1
    assert spins[1][0] == -1.0 and spins[1][1] == 1.0


def test_average_norm_squared_analytic_values():
    assert average_norm_squared_analytic(
        RBMParameters(4, 4, 0.0, 0.0)
    ) == pytest.approx(LOG2)
    # Direct evaluation of the closed-form average at N = M = 16, (0, 4):
    # (1/N) [ (N - M) log 2 + M log(e^{2u^2} + e^{-2v^2}) ]
    p = RBMParameters(16, 16, 0.0, 4.0)
    direct = np.log1p(np.exp(-32.0))
    assert average_norm_squared_analytic(p) == pytest.approx(direct, abs=1e-14)


def test_average_norm_monte_carlo_small_v():
    p = RBMParameters(12, 12, 0.0, 1.0)
    vals = np.empty(800)
    for k in range(800):
        vals[k] = norm_squared(build_state(sample_weights(p, sample_seed(3, 0, k))))
    expected = np.exp(12 * average_norm_squared_analytic(p))
    se = np.std(vals, ddof=1) / np.sqrt(len(vals))
    assert abs(np.mean(vals) - expected) < 3 * se


def test_build_state_mean_norm_matches_closed_form():
    p = RBMParameters(8, 8, 0.0, 4.0)
    vals = np.empty(1000)
    for k in range(1000):
        vals[k] = norm_squared(build_state(sample_weights(p, sample_seed(8, 0, k))))
    # Closed form: 2^(N-M) (e^{2u^2} + e^{-2v^2})^M with u = 0, v = 4.
    expected = 2.0 ** (8 - 8) * (np.exp(0.0) + np.exp(-32.0)) ** 8
    se = np.std(vals, ddof=1) / np.sqrt(len(vals))
    assert abs(np.mean(vals) - expected) < 3 * se


def test_gaussian_correlators():
    # mean[W(s1) W(s2)*] = (s1.s2)(u^2+v^2)/N and the unconjugated pair
    # carries (u^2-v^2); Monte Carlo over single hidden rows.
    u, v, n = 0.8, 1.1, 8
    p = RBMParameters(n, 1, u, v)
    rng = np.random.default_rng(0)
    s1 = rng.choice([-1.0, 1.0], size=n)
    s2 = rng.choice([-1.0, 1.0], size=n)
    dot = float(s1 @ s2)
    n_mc = 40_000
    w1 = np.empty(n_mc, dtype=complex)
    w2 = np.empty(n_mc, dtype=complex)
    for k in range(n_mc):
        row = sample_weights(p, sample_seed(4, 0, k)).entries[0]
        w1[k] = row @ s1
        w2[k] = row @ s2
    conj_vals = w1 * np.conj(w2)
    plain_vals = w1 * w2
    for vals, coeff in [(conj_vals, u**2 + v**2), (plain_vals, u**2 - v**2)]:
        expected = dot * coeff / n
        se = np.std(vals.real, ddof=1) / np.sqrt(n_mc)
        assert abs(np.mean(vals.real) - expected) < 3 * se
        se_im = np.std(vals.imag, ddof=1) / np.sqrt(n_mc)
        assert abs(np.mean(vals.imag)) < 3 * se_im + 1e-12


def test_two_cosh_correlator():
    # mean[cosh(W1)* cosh(W2)] = e^{u^2-v^2} cosh((s1.s2)(u^2+v^2)/N)
    u, v, n = 0.6, 0.9, 8
    p = RBMParameters(n, 1, u, v)
    rng = np.random.default_rng(5)
    s1 = rng.choice([-1.0, 1.0], size=n)
    s2 = rng.choice([-1.0, 1.0], size=n)
    dot = float(s1 @ s2)
    n_mc = 40_000
    vals = np.empty(n_mc, dtype=complex)
    for k in range(n_mc):
        row = sample_weights(p, sample_seed(6, 0, k)).entries[0]
        vals[k] = np.conj(np.cosh(row @ s1)) * np.cosh(row @ s2)
    expected = np.exp(u**2 - v**2) * np.cosh(dot * (u**2 + v**2) / n)
    se = np.std(vals.real, ddof=1) / np.sqrt(n_mc)
    assert abs(np.mean(vals.real) - expected) < 3 * se


def test_state_vector_validation():
    with pytest.raises(ValueError):
        StateVector(3, np.ones(7, dtype=complex))
    with pytest.raises(ValueError):
        StateVector(2, np.zeros(4, dtype=complex)).normalized()
