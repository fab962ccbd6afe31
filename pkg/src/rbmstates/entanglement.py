"""Exact finite-N entanglement diagnostics on materialized state vectors.

Reduced density matrices, entanglement spectra, Renyi/von Neumann entropies,
the swap-operator route to S2 (kept algorithmically independent of the
eigenvalue route so the two can cross-check each other), spin-flip symmetry
sectors, level-spacing statistics with sampled Poisson/GOE references, the
Marchenko-Pastur reference density, and inverse-participation-ratio fractal
dimensions with the entropy bound they imply.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import CapacityError
from .numerics import xlogx

# Eigenvalues below this are treated as exact zeros from the rank bound.
EIGENVALUE_CUTOFF = 1e-12
RANK_THRESHOLD = 1e-10

_SWAP_MAX_VISIBLE = 14
_SWAP_CHUNK = 256


@dataclass(frozen=True)
class SubregionMask:
    """Subset of sites selected by an N-bit mask (bit j = site j)."""

    bits: int
    n_sites: int

    def __post_init__(self):
        if self.n_sites < 1:
            raise ValueError("n_sites must be positive")
        if not 0 <= self.bits < (1 << self.n_sites):
            raise ValueError("mask bits out of range for n_sites")

    @classmethod
    def from_sites(cls, n_sites, sites):
        bits = 0
        for s in sites:
            if not 0 <= s < n_sites:
                raise ValueError("site index out of range")
            bits |= 1 << s
        return cls(bits=bits, n_sites=n_sites)

    @classmethod
    def first(cls, n_sites, size):
        return cls(bits=(1 << size) - 1, n_sites=n_sites)

    @property
    def size(self):
        return self.bits.bit_count()

    @property
    def sites(self):
        return tuple(j for j in range(self.n_sites) if self.bits >> j & 1)

    def complement(self):
        return SubregionMask(
            bits=((1 << self.n_sites) - 1) ^ self.bits, n_sites=self.n_sites
        )


@dataclass(frozen=True)
class EntanglementSpectrum:
    """Descending reduced-density-matrix eigenvalues with optional sector tags."""

    xi: np.ndarray = field(repr=False)
    sector: np.ndarray | None = field(default=None, repr=False)

    def rank(self, threshold=RANK_THRESHOLD):
        return int(np.count_nonzero(self.xi > threshold))

    def epsilon(self, sector=None):
        """Entanglement energies -log xi for eigenvalues above the cutoff."""
        xi = self._select(sector)
        return -np.log(xi[xi > EIGENVALUE_CUTOFF])

    def _select(self, sector):
        if sector is None:
            return self.xi
        if self.sector is None:
            raise ValueError("spectrum carries no sector labels")
        return self.xi[self.sector == sector]


def reduced_density_matrix(state, mask, normalize=True):
    """rho_A = Tr_B |Psi><Psi| by reshape-and-contract; unit trace when normalized.

    Row index convention: bit p of the reduced index is the spin at the
    p-th smallest site of the subregion.
    """
    n = state.n_visible
    if mask.n_sites != n:
        raise ValueError("mask size does not match state")
    if mask.size == 0 or mask.size == n:
        raise ValueError("subregion must be a nonempty proper subset")
    a_sites = sorted(mask.sites, reverse=True)
    b_sites = sorted(mask.complement().sites, reverse=True)
    axes = [n - 1 - j for j in a_sites] + [n - 1 - j for j in b_sites]
    psi = state.amplitudes.reshape((2,) * n).transpose(axes)
    psi = np.ascontiguousarray(psi).reshape(1 << mask.size, -1)
    rho = psi @ psi.conj().T
    if normalize:
        trace = np.trace(rho).real
        if trace <= 0.0:
            raise ValueError("cannot normalize a zero state")
        rho = rho / trace
    return rho


def _check_density_matrix(rho, atol=1e-10):
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError("density matrix must be square")
    dev = np.max(np.abs(rho - rho.conj().T))
    if dev > atol:
        raise ValueError(f"matrix is non-Hermitian beyond tolerance ({dev:.2e})")
    trace = np.trace(rho).real
    if abs(trace - 1.0) > 1e-8:
        raise ValueError(f"density matrix trace is {trace}, expected 1")


def entanglement_spectrum(rho):
    """Full descending eigenvalue spectrum of a unit-trace Hermitian matrix."""
    _check_density_matrix(rho)
    xi = np.linalg.eigvalsh(rho)[::-1].copy()
    if np.min(xi) < -1e-10:
        raise ValueError("density matrix has a significantly negative eigenvalue")
    np.clip(xi, 0.0, None, out=xi)
    return EntanglementSpectrum(xi=xi)


def sector_project(rho, atol=1e-10):
    """Diagonal blocks of rho in the subregion spin-flip eigenbasis.

    Basis vectors are (|s> +- |sbar>)/sqrt(2) with the lexicographically
    smaller member of each flip pair as representative.  Raises if the
    off-block coupling exceeds tolerance (the state was not flip-symmetric).
    """
    _check_density_matrix(rho, atol=atol)
    dim = rho.shape[0]
    if dim < 2 or dim & (dim - 1):
        raise ValueError("density matrix dimension must be a power of two >= 2")
    half = dim // 2
    idx = np.arange(half)
    fidx = (dim - 1) - idx  # full bit flip within the subregion
    q11 = rho[np.ix_(idx, idx)]
    q12 = rho[np.ix_(idx, fidx)]
    q21 = rho[np.ix_(fidx, idx)]
    q22 = rho[np.ix_(fidx, fidx)]
    off = (q11 - q12 + q21 - q22) / 2.0
    off_norm = np.max(np.abs(off))
    if off_norm > atol:
        raise ValueError(
            f"flip-sector coupling {off_norm:.2e} exceeds tolerance; "
            "state is not spin-flip symmetric"
        )
    block_plus = (q11 + q12 + q21 + q22) / 2.0
    block_minus = (q11 - q12 - q21 + q22) / 2.0
    return block_plus, block_minus


def sector_resolved_spectrum(rho, atol=1e-10):
    """Eigen-decompose the two flip-sector blocks and merge with labels."""
    block_plus, block_minus = sector_project(rho, atol=atol)
    xi_p = np.linalg.eigvalsh(block_plus)
    xi_m = np.linalg.eigvalsh(block_minus)
    xi = np.concatenate([xi_p, xi_m])
    labels = np.concatenate([np.ones(len(xi_p), int), -np.ones(len(xi_m), int)])
    order = np.argsort(xi)[::-1]
    xi = np.clip(xi[order], 0.0, None)
    return EntanglementSpectrum(xi=xi, sector=labels[order])


def renyi_entropy(spectrum, q):
    """Order-q Renyi entropy log(sum xi^q) / (1 - q) of a spectrum."""
    if q <= 1:
        raise ValueError("renyi_entropy requires q > 1")
    return float(np.log(np.sum(spectrum.xi**q)) / (1.0 - q))


def renyi2_entropy(spectrum_or_state, mask=None):
    """-log sum_k xi_k^2, from a spectrum or directly from (state, mask)."""
    spectrum = spectrum_or_state
    if mask is not None:
        spectrum = entanglement_spectrum(reduced_density_matrix(spectrum_or_state, mask))
    return float(-np.log(np.sum(spectrum.xi**2)))


def von_neumann_entropy(spectrum):
    """-sum xi log xi with 0 log 0 = 0 below the eigenvalue cutoff."""
    xi = spectrum.xi[spectrum.xi > EIGENVALUE_CUTOFF]
    return float(np.sum(xlogx(xi)))


def swap_moments(state, mask, max_visible=_SWAP_MAX_VISIBLE):
    """(Z1, Z0) from the doubled-copy swap contraction on flat indices.

    Z1 sums conj(Psi(s1)) conj(Psi(s2)) Psi(s3) Psi(s4) over all pairs with
    s3 carrying the subregion spins of s2 and the complement spins of s1,
    and s4 the reverse; Z0 is the squared norm squared.  Works directly on
    the common-scale amplitudes (both moments share the factor
    exp(4 log_scale), which cancels in the ratio).
    """
    n = state.n_visible
    if n > max_visible:
        raise CapacityError(f"swap contraction limited to N <= {max_visible}")
    if mask.n_sites != n:
        raise ValueError("mask size does not match state")
    if mask.size == 0 or mask.size == n:
        raise ValueError("subregion must be a nonempty proper subset")
    amps = state.amplitudes
    mask_a = mask.bits
    mask_b = mask.complement().bits
    all_idx = np.arange(1 << n)
    z1 = 0.0 + 0.0j
    for start in range(0, 1 << n, _SWAP_CHUNK):
        i1 = all_idx[start : start + _SWAP_CHUNK, None]
        i2 = all_idx[None, :]
        i3 = (i2 & mask_a) | (i1 & mask_b)
        i4 = (i1 & mask_a) | (i2 & mask_b)
        z1 += np.sum(
            np.conj(amps[i1]) * np.conj(amps[i2]) * amps[i3] * amps[i4]
        )
    norm_sq = float(np.sum(np.abs(amps) ** 2))
    return float(z1.real), norm_sq**2


def swap_renyi2(state, mask, max_visible=_SWAP_MAX_VISIBLE):
    """S2 = -log(Z1/Z0) via the swap operator; oracle for renyi2_entropy."""
    z1, z0 = swap_moments(state, mask, max_visible=max_visible)
    return float(-np.log(z1 / z0))


# ---------------------------------------------------------------------------
# Level statistics
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LevelStatistics:
    """Spacing ratios r, reduced ratios min(r, 1/r), and a unit-area histogram."""

    ratios: np.ndarray = field(repr=False)
    reduced: np.ndarray = field(repr=False)
    bin_edges: np.ndarray = field(repr=False)
    density: np.ndarray = field(repr=False)

    @property
    def mean_reduced(self):
        return float(np.mean(self.reduced))


def _sector_levels(spectrum, sector):
    eps = spectrum.epsilon(sector=sector)
    return np.sort(eps)


def spacing_ratios(levels):
    """r_n = delta_n / delta_{n-1} for an ascending level sequence."""
    levels = np.asarray(levels, dtype=float)
    if len(levels) < 3:
        raise ValueError("need at least three levels for spacing ratios")
    deltas = np.diff(levels)
    with np.errstate(divide="ignore", invalid="ignore"):
        r = deltas[1:] / deltas[:-1]
    return r


def reduced_ratios(r):
    with np.errstate(divide="ignore", invalid="ignore"):
        rt = np.minimum(r, 1.0 / r)
    rt = np.where(r == 0.0, 0.0, rt)
    return rt[np.isfinite(rt)]


def ratio_histogram(reduced, bin_width=0.02):
    """Unit-area histogram of reduced ratios on [0, 1]."""
    edges = np.arange(0.0, 1.0 + bin_width / 2, bin_width)
    density, edges = np.histogram(reduced, bins=edges, density=True)
    return edges, density


def level_spacing_ratios(spectrum, sector=1, bin_width=0.02):
    """Spacing-ratio statistics of the nonzero levels in one flip sector.

    Histogram bins cover the reduced ratio on [0, 1] (bin width 0.02 by
    default) so its area is exactly one; spectra with fewer nonzero
    eigenvalues than the rank bound allows simply contribute fewer levels.
    """
    levels = _sector_levels(spectrum, sector)
    r = spacing_ratios(levels)
    rt = reduced_ratios(r)
    edges, density = ratio_histogram(rt, bin_width=bin_width)
    return LevelStatistics(ratios=r, reduced=rt, bin_edges=edges, density=density)


def ratio_points(spectrum, sector=1):
    """(epsilon_n, reduced ratio at epsilon_n) pairs for window averaging."""
    levels = _sector_levels(spectrum, sector)
    r = spacing_ratios(levels)
    with np.errstate(divide="ignore", invalid="ignore"):
        rt = np.minimum(r, 1.0 / r)
    rt = np.where(np.isfinite(rt), rt, 0.0)
    return levels[1:-1], rt


def windowed_mean_reduced_ratio(spectrum, epsilon_center, half_width=0.5, sector=1):
    """Mean reduced ratio over levels with |epsilon - center| <= half_width."""
    levels = _sector_levels(spectrum, sector)
    in_window = np.abs(levels - epsilon_center) <= half_width
    if np.count_nonzero(in_window) < 3:
        raise ValueError("window must contain at least three levels")
    eps, rt = ratio_points(spectrum, sector)
    sel = np.abs(eps - epsilon_center) <= half_width
    if not np.any(sel):
        raise ValueError("window contains no interior levels")
    return float(np.mean(rt[sel]))


def pooled_window_profile(points, centers, half_width=0.5, min_count=1):
    """Window-averaged reduced ratio over pooled (epsilon, ratio) samples.

    ``points`` is a pair of concatenated arrays from :func:`ratio_points`
    across samples; windows with fewer than ``min_count`` entries yield NaN.
    """
    eps, rt = points
    means = np.full(len(centers), np.nan)
    counts = np.zeros(len(centers), int)
    for i, c in enumerate(centers):
        sel = np.abs(eps - c) <= half_width
        counts[i] = int(np.count_nonzero(sel))
        if counts[i] >= min_count:
            means[i] = float(np.mean(rt[sel]))
    return means, counts


def poisson_surrogate_ratios(n_samples, seed=0):
    """Spacing ratios of iid exponential spacings (Poisson level statistics)."""
    rng = np.random.default_rng(seed)
    d = rng.exponential(size=(n_samples, 2))
    return d[:, 1] / d[:, 0]


def goe_surrogate_ratios(n_samples, seed=0):
    """Spacing ratios of 3x3 Gaussian-orthogonal-ensemble triples."""
    rng = np.random.default_rng(seed)
    g = rng.normal(size=(n_samples, 3, 3))
    h = (g + np.transpose(g, (0, 2, 1))) / 2.0
    e = np.linalg.eigvalsh(h)
    return (e[:, 2] - e[:, 1]) / (e[:, 1] - e[:, 0])


def reference_ratio_curve(kind, bin_width=0.02, n_samples=200000, seed=0):
    """Sampled Poisson or GOE reference density of the reduced ratio."""
    if kind == "poisson":
        r = poisson_surrogate_ratios(n_samples, seed=seed)
    elif kind == "goe":
        r = goe_surrogate_ratios(n_samples, seed=seed)
    else:
        raise ValueError("kind must be 'poisson' or 'goe'")
    rt = reduced_ratios(r)
    edges, density = ratio_histogram(rt, bin_width=bin_width)
    return edges, density, float(np.mean(rt))


# ---------------------------------------------------------------------------
# Marchenko-Pastur reference
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MarchenkoPasturReference:
    """Entanglement-energy density implied by the Wishart eigenvalue law."""

    dim_a: int
    dim_b: int
    epsilon: np.ndarray = field(repr=False)
    density: np.ndarray = field(repr=False)
    xi_support: tuple = (0.0, 0.0)

    def integral(self):
        return float(np.trapezoid(self.density, self.epsilon))


def marchenko_pastur_reference(dim_a, dim_b, n_points=4000):
    """MP density for aspect ratio dim_a/dim_b mapped to epsilon = -log xi.

    Reduced-density eigenvalues of a Haar-like state are xi = m / dim_a with
    m Marchenko-Pastur distributed on [(1-sqrt(c))^2, (1+sqrt(c))^2],
    c = dim_a/dim_b <= 1.  Cosine-clustered nodes resolve the square-root
    edges; for c = 1 a geometric tail covers the unbounded epsilon side.
    """
    if dim_a < 1 or dim_b < 1 or dim_a > dim_b:
        raise ValueError("require 1 <= dim_a <= dim_b")
    c = dim_a / dim_b
    m_lo = (1.0 - np.sqrt(c)) ** 2
    m_hi = (1.0 + np.sqrt(c)) ** 2
    theta = np.linspace(0.0, np.pi, n_points)
    m = 0.5 * (m_hi + m_lo) - 0.5 * (m_hi - m_lo) * np.cos(theta)
    if m_lo < 1e-9:
        # Unbounded epsilon tail: mass below m is ~ 2 sqrt(m)/pi for c = 1.
        tail = np.geomspace(1e-13, max(m[1], 1e-12), 400, endpoint=False)
        m = np.unique(np.concatenate([tail, m]))
    m = m[(m > 0.0) & (m < m_hi)]
    density_m = np.sqrt(np.maximum((m_hi - m) * (m - m_lo), 0.0)) / (2.0 * np.pi * c * m)
    eps = np.log(dim_a) - np.log(m)
    density_eps = density_m * m
    order = np.argsort(eps)
    return MarchenkoPasturReference(
        dim_a=dim_a,
        dim_b=dim_b,
        epsilon=eps[order],
        density=density_eps[order],
        xi_support=(m_lo / dim_a, m_hi / dim_a),
    )


def sample_wishart_epsilon(dim_a, dim_b, n_samples, seed=0):
    """Pooled entanglement energies of Haar-like Gaussian states (MP oracle)."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(n_samples):
        psi = rng.normal(size=(dim_a, dim_b)) + 1j * rng.normal(size=(dim_a, dim_b))
        rho = psi @ psi.conj().T
        rho /= np.trace(rho).real
        xi = np.linalg.eigvalsh(rho)
        out.append(-np.log(xi[xi > EIGENVALUE_CUTOFF]))
    return np.concatenate(out)


# ---------------------------------------------------------------------------
# Fractal dimensions and the entropy bound
# ---------------------------------------------------------------------------


def ipr_fractal_dimension(state, q):
    """(IPR_q, D_q) of the state in the Ising basis.

    IPR_q = sum |Psi|^{2q} / (sum |Psi|^2)^q and
    D_q = log(IPR_q) / ((1-q) N log 2); both are scale-free so the state's
    common log factor drops out.
    """
    if isinstance(q, bool) or not isinstance(q, (int, np.integer)) or q < 2:
        raise ValueError("q must be an integer >= 2")
    mags = np.abs(state.amplitudes)
    peak = float(np.max(mags))
    if peak == 0.0:
        raise ValueError("zero state has no participation ratio")
    scaled = mags / peak
    log_num = 2.0 * q * np.log(peak) + np.log(np.sum(scaled ** (2 * q)))
    log_den = q * (2.0 * np.log(peak) + np.log(np.sum(scaled**2)))
    log_ipr = log_num - log_den
    dq = log_ipr / ((1.0 - q) * state.n_visible * np.log(2.0))
    return float(np.exp(log_ipr)), float(dq) + 0.0


@dataclass(frozen=True)
class DqBoundCheck:
    amplitude_slack: float
    entropy_slack: float
    holds: bool


def dq_bound_check(state, mask, q, max_visible=_SWAP_MAX_VISIBLE, tol=1e-10):
    """Check sum |Psi~|^{2q} <= sum lambda_n^q and S_q(A)/N <= D_q log 2.

    Returns both slacks (nonnegative when the bounds hold); the boolean is
    true when neither slack dips below -tol.
    """
    if state.n_visible > max_visible:
        raise CapacityError(f"bound check limited to N <= {max_visible}")
    normalized = state.normalized()
    spectrum = entanglement_spectrum(reduced_density_matrix(normalized, mask))
    probs = np.abs(normalized.amplitudes) ** 2
    amp_sum = float(np.sum(probs**q))
    lam_sum = float(np.sum(spectrum.xi**q))
    amplitude_slack = lam_sum - amp_sum
    _, dq = ipr_fractal_dimension(normalized, q)
    s_q = renyi_entropy(spectrum, q)
    entropy_slack = dq * np.log(2.0) - s_q / state.n_visible
    holds = amplitude_slack >= -tol and entropy_slack >= -tol
    return DqBoundCheck(
        amplitude_slack=amplitude_slack,
        entropy_slack=float(entropy_slack),
        holds=bool(holds),
    )
