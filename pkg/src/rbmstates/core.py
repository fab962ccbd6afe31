"""Gaussian random RBM ensemble: weight sampling and exact state vectors.

Conventions fixed here and relied on everywhere else:

* Ising configurations are indexed little-endian: bit ``j`` of a basis index
  holds the spin at site ``j``, with bit value 0 meaning spin +1 and bit
  value 1 meaning spin -1.
* The wavefunction is the zero-bias product form
  ``Psi(s) = prod_m cosh(sum_j w_mj s_j)`` with no hidden-layer prefactor.
* A configuration and its global spin flip always evaluate to bit-identical
  amplitudes: evaluation canonicalizes to the representative whose last
  spin is +1 (basis index below 2^(N-1)).
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.special import ndtri

from .errors import CapacityError
from .numerics import LOG2, log_cosh, log_cosh_complex

# Rows of the state vector processed per block when materializing amplitudes.
_CHUNK = 1 << 16

DEFAULT_MAX_VISIBLE = 24


@dataclass(frozen=True)
class RBMParameters:
    """Ensemble point: N visible spins, M hidden spins, weight scales u, v.

    Real parts of the weights have variance u^2/N and imaginary parts
    v^2/N.  The hidden-unit density M/N is always derived, never stored.
    """

    n_visible: int
    n_hidden: int
    u: float
    v: float

    def __post_init__(self):
        if self.n_visible < 1 or self.n_hidden < 1:
            raise ValueError("n_visible and n_hidden must be positive")
        if not (np.isfinite(self.u) and self.u >= 0.0):
            raise ValueError("u must be finite and nonnegative")
        if not (np.isfinite(self.v) and self.v >= 0.0):
            raise ValueError("v must be finite and nonnegative")

    @property
    def hidden_ratio(self):
        return self.n_hidden / self.n_visible


@dataclass(frozen=True)
class WeightMatrix:
    """One sampled network: M x N complex weights plus its RNG seed."""

    params: RBMParameters
    entries: np.ndarray = field(repr=False)
    seed: int

    def __post_init__(self):
        m, n = self.entries.shape
        if (m, n) != (self.params.n_hidden, self.params.n_visible):
            raise ValueError("weight matrix shape does not match parameters")

    @property
    def is_pure_imaginary(self):
        return self.params.u == 0.0


@dataclass(frozen=True)
class StateVector:
    """All 2^N amplitudes of one RBM state.

    Physical amplitudes are ``exp(log_scale) * amplitudes``; the common
    factor keeps huge-norm states (u > 0) representable.  Every quantity in
    this package is either scale-free or consumes ``log_scale`` explicitly.
    """

    n_visible: int
    amplitudes: np.ndarray = field(repr=False)
    log_scale: float = 0.0

    def __post_init__(self):
        if self.amplitudes.shape != (1 << self.n_visible,):
            raise ValueError("amplitude array must have length 2^N")

    def norm_squared(self):
        return norm_squared(self)

    def log_norm_squared(self):
        return log_norm_squared(self)

    def normalized(self):
        """Unit-norm copy (log_scale reset to 0)."""
        scale = np.sqrt(_raw_norm_squared(self.amplitudes))
        if scale == 0.0:
            raise ValueError("cannot normalize a zero state")
        return StateVector(self.n_visible, self.amplitudes / scale, 0.0)


def sample_weights(params, seed):
    """Draw one weight matrix; bit-reproducible from (params, seed).

    Normals come from the inverse normal CDF applied to PCG64 uniforms
    offset to the center of their 2^-53 cells, so the stream is a fixed,
    documented function of the seed.  The first M*N uniforms feed the real
    parts (row-major), the next M*N the imaginary parts.
    """
    if not (0 <= int(seed) < 2**64):
        raise ValueError("seed must fit in an unsigned 64-bit integer")
    m, n = params.n_hidden, params.n_visible
    gen = np.random.Generator(np.random.PCG64(int(seed)))
    uniforms = gen.random(2 * m * n) + 2.0**-54
    normals = ndtri(uniforms)
    sig_r = params.u / np.sqrt(n)
    sig_i = params.v / np.sqrt(n)
    entries = (sig_r * normals[: m * n] + 1j * sig_i * normals[m * n :]).reshape(m, n)
    return WeightMatrix(params=params, entries=entries, seed=int(seed))


def spins_from_indices(indices, n_visible):
    """(len, N) array of +-1 spins for basis indices (bit 0 -> site 0)."""
    indices = np.asarray(indices, dtype=np.int64).reshape(-1, 1)
    bits = (indices >> np.arange(n_visible)) & 1
    return 1.0 - 2.0 * bits


def index_from_spins(config):
    """Basis index of a +-1 configuration (spin -1 sets the bit)."""
    config = np.asarray(config)
    bits = (1 - np.sign(config).astype(np.int64)) // 2
    return int(bits @ (1 << np.arange(len(config), dtype=np.int64)))


def flip_index(index, n_visible):
    """Index of the globally spin-flipped configuration."""
    return index ^ ((1 << n_visible) - 1)


def _canonical_spins(config, n_visible):
    config = np.asarray(config, dtype=float)
    if config.shape != (n_visible,):
        raise ValueError("configuration length must equal n_visible")
    if np.any(np.abs(config) != 1.0):
        raise ValueError("configuration entries must be +-1")
    # Same evaluation order for s and its global flip.
    return config if config[-1] > 0 else -config


def _cos_product(weights, spin_block):
    """Amplitudes of pure-imaginary-weight states: prod_m cos(X_m), exact."""
    x = spin_block @ weights.entries.imag.T
    return np.prod(np.cos(x), axis=1)


def _log_cosh_total(weights, spin_block):
    """Sum over hidden units of complex log cosh(W_m) for each row."""
    w = spin_block @ weights.entries.T
    return np.sum(log_cosh_complex(w), axis=1)


def amplitude(weights, config):
    """Psi(s) = prod_m cosh(W_m(s)) as a complex number.

    For u > 0 the product is accumulated in log space, so individual
    factors of magnitude up to ~e^700 cannot overflow before the final
    exponentiation; the fully formed product may still be requested in log
    form via :func:`log_amplitude`.
    """
    spins = _canonical_spins(config, weights.params.n_visible)[None, :]
    if weights.is_pure_imaginary:
        return complex(_cos_product(weights, spins)[0])
    return complex(np.exp(_log_cosh_total(weights, spins)[0]))


def log_amplitude(weights, config):
    """log Psi(s) as log-magnitude plus i * phase (phase in (-pi, pi])."""
    spins = _canonical_spins(config, weights.params.n_visible)[None, :]
    total = _log_cosh_total(weights, spins)[0]
    return complex(total.real, float(np.angle(np.exp(1j * total.imag))))


def build_state(weights, max_visible=DEFAULT_MAX_VISIBLE):
    """Materialize all 2^N amplitudes of the sampled state.

    Only the half-space with last spin +1 is evaluated; the other half is
    mirrored, which makes the global spin-flip symmetry of the amplitudes
    exact by construction.
    """
    n = weights.params.n_visible
    if n > max_visible:
        raise CapacityError(
            f"N={n} exceeds the state-vector cap of {max_visible}; "
            "raise max_visible explicitly to override"
        )
    half = 1 << (n - 1) if n > 1 else 1
    amps = np.empty(1 << n, dtype=np.complex128)
    if weights.is_pure_imaginary:
        for start in range(0, half, _CHUNK):
            idx = np.arange(start, min(start + _CHUNK, half))
            amps[idx] = _cos_product(weights, spins_from_indices(idx, n))
        log_scale = 0.0
    else:
        totals = np.empty(half, dtype=np.complex128)
        for start in range(0, half, _CHUNK):
            idx = np.arange(start, min(start + _CHUNK, half))
            totals[start : start + len(idx)] = _log_cosh_total(
                weights, spins_from_indices(idx, n)
            )
        log_scale = float(np.max(totals.real))
        if not np.isfinite(log_scale):  # all-zero row impossible; keep scale sane
            log_scale = 0.0
        amps[:half] = np.exp(totals - log_scale)
    full_mask = (1 << n) - 1
    amps[np.arange(half) ^ full_mask] = amps[:half]
    return StateVector(n_visible=n, amplitudes=amps, log_scale=log_scale)


def _raw_norm_squared(amplitudes):
    mags = amplitudes.real.astype(np.longdouble) ** 2
    mags += amplitudes.imag.astype(np.longdouble) ** 2
    return float(np.sum(mags))


def norm_squared(state):
    """<Psi|Psi> = sum_s |Psi(s)|^2, summed in an extended-precision accumulator."""
    raw = _raw_norm_squared(state.amplitudes)
    if state.log_scale == 0.0:
        return raw
    return float(np.exp(2.0 * state.log_scale) * raw)


def log_norm_squared(state):
    """log <Psi|Psi>, safe for states whose norm overflows a double."""
    raw = _raw_norm_squared(state.amplitudes)
    if raw == 0.0:
        raise ValueError("zero state has no log norm")
    return 2.0 * state.log_scale + float(np.log(raw))


def average_norm_squared_analytic(params):
    """(1/N) log of the ensemble-averaged squared norm.

    Closed form lambda (u^2 - v^2) + lambda log cosh(u^2 + v^2) + log 2,
    evaluated with the stable log-cosh.
    """
    lam = params.hidden_ratio
    u2, v2 = params.u**2, params.v**2
    return float(lam * (u2 - v2) + lam * log_cosh(u2 + v2) + LOG2)
