"""Thermodynamic-limit free-energy models for the squared norm and the
swap-operator Renyi entropy of the Gaussian RBM ensemble.

Two classical models live here.  The squared-norm model has a single
order parameter phi in [-1, 1] (replica overlap).  The swap model couples
two overlaps (phi_A, phi_B) restricted to a subregion of fractional size a
and its complement.  Global minima of the free-energy densities give
(1/N) log of the corresponding ensemble averages, phase diagrams, analytic
Page curves, and the fractal-dimension predictions.

The infinite-v limit (purely imaginary weights of diverging scale) is a
separate code path selected by passing ``v=math.inf``; the large-N limit is
taken before the large-v limit, so dominant-exponential counting replaces
log-sum-exp there.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln, logsumexp

from .numerics import LOG2, binary_entropy, log_cosh

# First-order transition of the squared-norm model at (u, v) = (0, inf).
LAMBDA_C = LOG2 / (math.log(3.0) - math.log(2.0))


@dataclass(frozen=True)
class ModelParams:
    """Continuum ensemble coordinates (u, v, lambda) for the limit models."""

    u: float
    v: float
    lam: float

    def __post_init__(self):
        if not (np.isfinite(self.u) and self.u >= 0.0):
            raise ValueError("u must be finite and nonnegative")
        if self.v < 0.0:
            raise ValueError("v must be nonnegative")
        if math.isinf(self.v) and self.u != 0.0:
            raise ValueError("the infinite-v limit is defined only for u = 0")
        if not (np.isfinite(self.lam) and self.lam > 0.0):
            raise ValueError("lambda must be finite and positive")

    @property
    def infinite_v(self):
        return math.isinf(self.v)

    @classmethod
    def from_rbm(cls, params):
        return cls(u=params.u, v=params.v, lam=params.hidden_ratio)


@dataclass(frozen=True)
class OrderParameterPoint:
    """Coupled-overlap coordinates (phi_a, phi_b) for subregion fraction a."""

    phi_a: float
    phi_b: float
    a: float

    def __post_init__(self):
        if not 0.0 <= self.a <= 1.0:
            raise ValueError("subregion fraction a must lie in [0, 1]")
        if abs(self.phi_a) > self.a + 1e-12:
            raise ValueError("|phi_a| must not exceed a")
        if abs(self.phi_b) > self.b + 1e-12:
            raise ValueError("|phi_b| must not exceed 1 - a")

    @property
    def b(self):
        return 1.0 - self.a


# ---------------------------------------------------------------------------
# Squared-norm model (single overlap phi)
# ---------------------------------------------------------------------------


def z0_energy_density(phi, params):
    """Coupling term of the squared-norm model free energy.

    Finite v: -lambda [log Omega(phi) + 2(u^2 - v^2) - log 2] with
    Omega = 1 + e^{2(u^2+v^2)} cosh(4 phi u^2)/2 + e^{-2(u^2+v^2)} cosh(4 phi v^2)/2,
    evaluated by log-sum-exp.  Infinite v: the step form, lambda log 4 on
    |phi| < 1 dropping to lambda log(8/3) at |phi| = 1.
    """
    phi = np.asarray(phi, dtype=float)
    if np.any(np.abs(phi) > 1.0 + 1e-12):
        raise ValueError("|phi| must not exceed 1")
    phi = np.clip(phi, -1.0, 1.0)
    lam = params.lam
    if params.infinite_v:
        out = np.where(np.abs(phi) >= 1.0, lam * math.log(8.0 / 3.0), lam * math.log(4.0))
        return out if out.ndim else float(out)
    u2, v2 = params.u**2, params.v**2
    s2 = 2.0 * (u2 + v2)
    exponents = np.stack(
        [
            np.zeros_like(phi),
            s2 + 4.0 * phi * u2 - 2.0 * LOG2,
            s2 - 4.0 * phi * u2 - 2.0 * LOG2,
            -s2 + 4.0 * phi * v2 - 2.0 * LOG2,
            -s2 - 4.0 * phi * v2 - 2.0 * LOG2,
        ]
    )
    log_omega = logsumexp(exponents, axis=0)
    out = -lam * (log_omega + 2.0 * (u2 - v2) - LOG2)
    return out if out.ndim else float(out)


def z0_entropy_density(phi):
    """Overlap degeneracy entropy H_b((1 - phi)/2) + log 2; exactly log 2 at phi = +-1."""
    phi = np.asarray(phi, dtype=float)
    if np.any(np.abs(phi) > 1.0 + 1e-12):
        raise ValueError("|phi| must not exceed 1")
    phi = np.clip(phi, -1.0, 1.0)
    out = binary_entropy((1.0 - phi) / 2.0) + LOG2
    return out if out.ndim else float(out)


def z0_free_energy(phi, params):
    return z0_energy_density(phi, params) - z0_entropy_density(phi)


def _golden_min(f, lo, hi, tol=1e-9):
    """Golden-section minimum of a scalar function on [lo, hi]."""
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    x = c if fc <= fd else d
    return x, min(fc, fd)


@dataclass(frozen=True)
class Z0Minimum:
    phi_star: float
    free_energy: float
    phase: str  # "symmetric" or "broken"


def minimize_z0(params, grid_points=2001, refine_tol=1e-9):
    """Global minimum of the squared-norm free energy over phi in [-1, 1].

    Dense grid (default step 1e-3) plus golden-section refinement around
    every grid-local minimum; the endpoints are always evaluated explicitly.
    Ties between +-phi* report the nonnegative representative.
    """
    grid = np.linspace(-1.0, 1.0, grid_points)
    values = z0_free_energy(grid, params)
    interior = np.flatnonzero(
        (values[1:-1] <= values[:-2]) & (values[1:-1] <= values[2:])
    ) + 1
    candidates = [(float(grid[0]), float(values[0])), (float(grid[-1]), float(values[-1]))]
    scalar_f = lambda x: float(z0_free_energy(x, params))
    for i in interior:
        lo = max(grid[i - 1], -1.0)
        hi = min(grid[i + 1], 1.0)
        x, fx = _golden_min(scalar_f, lo, hi, tol=refine_tol)
        candidates.append((x, fx))
    best_f = min(fx for _, fx in candidates)
    tied = [x for x, fx in candidates if fx <= best_f + 1e-12]
    # The model is exactly Z2-symmetric; always report the phi* >= 0 member.
    phi_star = abs(max(tied, key=abs))
    if phi_star < 1e-7:
        phi_star = 0.0
    phase = "symmetric" if phi_star == 0.0 else "broken"
    return Z0Minimum(phi_star=float(phi_star), free_energy=float(best_f), phase=phase)


def z0_log_average(params):
    """(1/N) log of the averaged squared norm, -F at the global minimum.

    In the symmetric phase this equals
    2 lambda [log cosh(u^2 + v^2) + (u^2 - v^2)] + 2 log 2, i.e. twice the
    per-site log of the averaged norm: fluctuations vanish to leading order.
    """
    return -minimize_z0(params).free_energy


def z0_transition_lambda(u, v, lam_lo, lam_hi, tol=1e-7):
    """Bisect the symmetric/broken phase flip of the squared-norm model."""
    lo_phase = minimize_z0(ModelParams(u, v, lam_lo)).phase
    hi_phase = minimize_z0(ModelParams(u, v, lam_hi)).phase
    if lo_phase == hi_phase:
        raise ValueError("bracket does not straddle the transition")
    lo, hi = lam_lo, lam_hi
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if minimize_z0(ModelParams(u, v, mid)).phase == lo_phase:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


# ---------------------------------------------------------------------------
# Swap model (coupled overlaps phi_A, phi_B)
# ---------------------------------------------------------------------------


def _z1_energy_grid(phi_a, phi_b, a, params):
    phi_a = np.asarray(phi_a, dtype=float)
    phi_b = np.asarray(phi_b, dtype=float)
    b = 1.0 - a
    lam = params.lam
    if params.infinite_v:
        # Count dominant exponentials: the constant one, the phi_A = a edge,
        # the phi_B = b edge, and the (-a, -b) corner direction.
        k = (
            1.0
            + np.isclose(phi_a, a, rtol=0.0, atol=1e-12)
            + np.isclose(phi_b, b, rtol=0.0, atol=1e-12)
            + np.isclose(phi_a + phi_b, -1.0, rtol=0.0, atol=1e-12)
        )
        out = lam * (3.0 * LOG2 - np.log(k))
        return out if out.ndim else float(out)
    u2, v2 = params.u**2, params.v**2
    alpha = (b + phi_a) * (u2 + v2)
    beta = (a + phi_b) * (u2 + v2)
    gamma = (phi_a + phi_b) * (u2 - v2)
    zeros = np.zeros(np.broadcast(phi_a, phi_b).shape)
    exponents = np.stack(
        [
            zeros,
            2.0 * (alpha + beta + gamma) + zeros - 2.0 * LOG2,
            2.0 * (alpha - beta - gamma) + zeros - 2.0 * LOG2,
            2.0 * (-alpha + beta - gamma) + zeros - 2.0 * LOG2,
            2.0 * (-alpha - beta + gamma) + zeros - 2.0 * LOG2,
        ]
    )
    log_bracket = logsumexp(exponents, axis=0)
    out = -2.0 * lam * (u2 - v2) + lam * LOG2 - lam * log_bracket
    return out if out.ndim else float(out)


def _z1_entropy_grid(phi_a, phi_b, a):
    phi_a = np.asarray(phi_a, dtype=float)
    phi_b = np.asarray(phi_b, dtype=float)
    b = 1.0 - a
    out = np.full(np.broadcast(phi_a, phi_b).shape, LOG2)
    if a > 0.0:
        out = out + a * binary_entropy((a - phi_a) / (2.0 * a))
    if b > 0.0:
        out = out + b * binary_entropy((b - phi_b) / (2.0 * b))
    return out if out.ndim else float(out)


def z1_free_energy(point, params):
    """(energy, entropy, free energy) densities of the swap model at one point.

    A vanishing subregion (a = 0 or a = 1) drops its entropy term entirely,
    and the model then reduces pointwise to the squared-norm model.
    """
    e = _z1_energy_grid(point.phi_a, point.phi_b, point.a, params)
    s = _z1_entropy_grid(point.phi_a, point.phi_b, point.a)
    return float(e), float(s), float(e - s)


@dataclass(frozen=True)
class Z1Minimum:
    phi_a: float
    phi_b: float
    a: float
    energy: float
    entropy: float
    free_energy: float
    exchange_symmetry: str | None  # at a = 1/2: "symmetric" or "broken"


def _z1_f(phi_a, phi_b, a, params):
    return _z1_energy_grid(phi_a, phi_b, a, params) - _z1_entropy_grid(phi_a, phi_b, a)


def _coordinate_refine(f, x0, y0, box_x, box_y, tol=1e-9, sweeps=12):
    """Alternate golden-section line minimizations inside a rectangle.

    Moves are accepted only when they do not increase f, so a seed sitting
    in a dip narrower than the line search can resolve is never lost.
    """
    x, y = x0, y0
    f_cur = f(x, y)
    for _ in range(sweeps):
        moved = 0.0
        if box_x[1] > box_x[0]:
            x_new, f_new = _golden_min(lambda t: f(t, y), box_x[0], box_x[1], tol=tol)
            if f_new <= f_cur:
                moved += abs(x_new - x)
                x, f_cur = x_new, f_new
        if box_y[1] > box_y[0]:
            y_new, f_new = _golden_min(lambda t: f(x, t), box_y[0], box_y[1], tol=tol)
            if f_new <= f_cur:
                moved += abs(y_new - y)
                y, f_cur = y_new, f_new
        if moved < tol:
            break
    return x, y, f_cur


def minimize_z1(a, params, grid_points=161, refine_tol=1e-9):
    """Global minimum of the swap free energy over [-a, a] x [-(1-a), 1-a].

    A dense grid seeds candidates; the four box edges, all corners, and the
    special points (0,0), (+-a,0), (0,+-b) are always evaluated, with local
    refinement of every candidate.  Near-ties are resolved canonically by
    preferring phi_A >= phi_B and then a nonnegative sum.
    """
    if not 0.0 <= a <= 1.0:
        raise ValueError("subregion fraction a must lie in [0, 1]")
    b = 1.0 - a
    f = lambda x, y: float(_z1_f(x, y, a, params))

    candidates = {(0.0, 0.0), (a, 0.0), (-a, 0.0), (0.0, b), (0.0, -b),
                  (a, b), (-a, -b), (a, -b), (-a, b)}
    if params.infinite_v:
        # Piecewise-constant energy strata: minima sit exactly on the
        # candidate set (entropy is strictly concave on each stratum).
        results = [(x, y, f(x, y)) for x, y in candidates]
    else:
        ga = max(3, int(grid_points * max(a, 1e-3)) | 1)
        gb = max(3, int(grid_points * max(b, 1e-3)) | 1)
        pa = np.linspace(-a, a, ga) if a > 0 else np.array([0.0])
        pb = np.linspace(-b, b, gb) if b > 0 else np.array([0.0])
        mesh_a, mesh_b = np.meshgrid(pa, pb, indexing="ij")
        values = _z1_f(mesh_a, mesh_b, a, params)
        padded = np.pad(values, 1, constant_values=np.inf)
        local = (
            (values <= padded[:-2, 1:-1]) & (values <= padded[2:, 1:-1])
            & (values <= padded[1:-1, :-2]) & (values <= padded[1:-1, 2:])
        )
        order = np.argsort(values[local])[:12]
        for i, j in zip(*[axis[order] for axis in np.nonzero(local)]):
            candidates.add((float(pa[i]), float(pb[j])))
        # Edge line searches guard against minima hugging the boundary.
        if a > 0 and b > 0:
            for edge_a in (-a, a):
                y, _ = _golden_min(lambda t: f(edge_a, t), -b, b, tol=refine_tol)
                candidates.add((edge_a, y))
            for edge_b in (-b, b):
                x, _ = _golden_min(lambda t: f(t, edge_b), -a, a, tol=refine_tol)
                candidates.add((x, edge_b))
        results = []
        step_a = pa[1] - pa[0] if len(pa) > 1 else 0.0
        step_b = pb[1] - pb[0] if len(pb) > 1 else 0.0
        for x0, y0 in candidates:
            box_x = (max(-a, x0 - step_a), min(a, x0 + step_a))
            box_y = (max(-b, y0 - step_b), min(b, y0 + step_b))
            results.append(_coordinate_refine(f, x0, y0, box_x, box_y, tol=refine_tol))

    best = min(r[2] for r in results)
    tied = [r for r in results if r[2] <= best + 1e-10]
    tied.sort(key=lambda r: (r[0] < r[1], -(r[0] + r[1]), -r[0], -r[1]))
    x, y, _ = tied[0]
    x = 0.0 if abs(x) < 1e-7 else x
    y = 0.0 if abs(y) < 1e-7 else y
    fx = f(x, y)
    sym = None
    if abs(a - 0.5) < 1e-12:
        sym = "broken" if abs(x - y) > 1e-4 else "symmetric"
    return Z1Minimum(
        phi_a=float(x),
        phi_b=float(y),
        a=a,
        energy=float(_z1_energy_grid(x, y, a, params)),
        entropy=float(_z1_entropy_grid(x, y, a)),
        free_energy=float(fx),
        exchange_symmetry=sym,
    )


@dataclass(frozen=True)
class FreeEnergyLandscape:
    """Tabulated free-energy surface with its located minima.

    For the single-overlap model ``a`` is None and the grids are 1D (phi_b
    carries phi); for the swap model the arrays are 2D over (phi_a, phi_b).
    ``minima`` holds refined (phi_a, phi_b, F) local minima; the global one
    follows the same canonical tie-breaking as the minimizers.
    """

    a: float | None
    phi_a: np.ndarray
    phi_b: np.ndarray
    energy: np.ndarray
    entropy: np.ndarray
    free_energy: np.ndarray
    minima: tuple
    global_minimum: tuple

    def rows(self):
        """Flat (phi_a, phi_b, energy, entropy, free_energy) table."""
        out = []
        if self.a is None:
            for j, phi in enumerate(self.phi_b):
                out.append((0.0, float(phi), float(self.energy[j]),
                            float(self.entropy[j]), float(self.free_energy[j])))
        else:
            for i, pa in enumerate(self.phi_a):
                for j, pb in enumerate(self.phi_b):
                    out.append((float(pa), float(pb), float(self.energy[i, j]),
                                float(self.entropy[i, j]),
                                float(self.free_energy[i, j])))
        return out

    def summary(self):
        return {
            "a": self.a,
            "minima": [list(m) for m in self.minima],
            "global_minimum": list(self.global_minimum),
        }


def z0_landscape(params, grid_points=2001):
    """Single-overlap free-energy profile with refined minima."""
    grid = np.linspace(-1.0, 1.0, grid_points)
    energy = z0_energy_density(grid, params)
    entropy = z0_entropy_density(grid)
    free = energy - entropy
    minimum = minimize_z0(params, grid_points=grid_points)
    interior = np.flatnonzero(
        (free[1:-1] <= free[:-2]) & (free[1:-1] <= free[2:])
    ) + 1
    minima = sorted(
        {(0.0, float(grid[i]), float(free[i])) for i in interior}
        | {(0.0, 1.0, float(free[-1])), (0.0, -1.0, float(free[0]))},
        key=lambda m: m[2],
    )
    return FreeEnergyLandscape(
        a=None, phi_a=np.zeros(1), phi_b=grid, energy=energy, entropy=entropy,
        free_energy=free, minima=tuple(minima),
        global_minimum=(0.0, minimum.phi_star, minimum.free_energy),
    )


def z1_landscape(a, params, grid_points=161):
    """Swap-model free-energy surface over the overlap rectangle."""
    b = 1.0 - a
    ga = max(3, int(grid_points * max(a, 1e-3)) | 1)
    gb = max(3, int(grid_points * max(b, 1e-3)) | 1)
    pa = np.linspace(-a, a, ga) if a > 0 else np.array([0.0])
    pb = np.linspace(-b, b, gb) if b > 0 else np.array([0.0])
    mesh_a, mesh_b = np.meshgrid(pa, pb, indexing="ij")
    energy = _z1_energy_grid(mesh_a, mesh_b, a, params)
    entropy = _z1_entropy_grid(mesh_a, mesh_b, a)
    free = energy - entropy
    padded = np.pad(free, 1, constant_values=np.inf)
    local = (
        (free <= padded[:-2, 1:-1]) & (free <= padded[2:, 1:-1])
        & (free <= padded[1:-1, :-2]) & (free <= padded[1:-1, 2:])
    )
    minima = tuple(sorted(
        (float(mesh_a[i, j]), float(mesh_b[i, j]), float(free[i, j]))
        for i, j in zip(*np.nonzero(local))
    , key=lambda m: m[2]))
    minimum = minimize_z1(a, params, grid_points=grid_points)
    return FreeEnergyLandscape(
        a=a, phi_a=pa, phi_b=pb, energy=energy, entropy=entropy,
        free_energy=free, minima=minima,
        global_minimum=(minimum.phi_a, minimum.phi_b, minimum.free_energy),
    )


def s2_estimate(a, params, minimum=None):
    """Per-site averaged second Renyi entropy from the two model minima.

    Returns (value, large_fluctuation_warning); the warning is set when the
    squared-norm model is in its broken phase, where the small-fluctuation
    expansion behind this estimate is invalid.
    """
    if minimum is None:
        minimum = minimize_z1(a, params)
    z0 = minimize_z0(params)
    value = minimum.free_energy + (-z0.free_energy)
    return float(value), z0.phase == "broken"


# ---------------------------------------------------------------------------
# Page curves and fractal dimensions at (u, v) = (0, inf)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PageCurve:
    lam: float
    a: np.ndarray
    s2_density: np.ndarray
    regimes: tuple


def page_plateau_level(lam):
    """Plateau height (units of log 2) of the limit Page curve."""
    if lam < 0.5:
        return lam
    if lam <= LAMBDA_C / 2.0:
        return 0.5
    return 1.0 - lam / LAMBDA_C


def limit_page_curve(lam, n_points=201):
    """Closed-form Page curve min(a, 1-a, p(lambda)) log 2 for (u,v)=(0,inf).

    Valid for 0 < lambda < lambda_c; each point carries a regime label
    (ramp / plateau / symmetry-broken).
    """
    if not 0.0 < lam < LAMBDA_C:
        raise ValueError("limit Page curve requires 0 < lambda < lambda_c")
    a = np.linspace(0.0, 1.0, n_points)
    p = page_plateau_level(lam)
    m = np.minimum(a, 1.0 - a)
    s2 = np.minimum(m, p) * LOG2
    regimes = []
    for ai, mi in zip(a, m):
        if p < mi - 1e-12:
            regimes.append("plateau")
        elif mi < p - 1e-12:
            regimes.append("ramp")
        elif abs(ai - 0.5) < 1e-12 and lam >= 0.5:
            regimes.append("symmetry-broken")
        else:
            regimes.append("plateau")
    return PageCurve(lam=lam, a=a, s2_density=s2, regimes=tuple(regimes))


def dq_validity_threshold(q):
    """Largest lambda at which the uniform replica minimum still dominates."""
    denom = gammaln(4 * q + 1) - 4.0 * gammaln(2 * q + 1) + 4.0 * gammaln(q + 1)
    return float(LOG2 / denom)


def fractal_dimension_dq(q, lam):
    """Ensemble-averaged fractal dimension in the Ising basis at (0, inf).

    D_q = 1 - q lambda/(1-q) + lambda log C(2q, q) / ((1-q) log 2), with the
    central binomial through log-gamma.  The validity flag is true while
    lambda is below the fluctuation threshold for this q.
    """
    if isinstance(q, bool) or not isinstance(q, (int, np.integer)):
        raise ValueError("q must be an integer")
    if q < 2:
        raise ValueError("q must be at least 2")
    if lam < 0.0:
        raise ValueError("lambda must be nonnegative")
    log_binom = gammaln(2 * q + 1) - 2.0 * gammaln(q + 1)
    dq = 1.0 - q * lam / (1.0 - q) + lam * log_binom / ((1.0 - q) * LOG2)
    return float(dq), bool(lam < dq_validity_threshold(q))


@dataclass(frozen=True)
class PhaseDiagramPoint:
    u: float
    v: float
    lam: float
    phi_a: float
    phi_b: float
    free_energy: float
    s2_density: float
    symmetry: str
    reliable: bool


def half_system_phase_diagram(u, v_grid, lam_grid, grid_points=161):
    """Half-system swap-model sweep over (v, lambda) at fixed u.

    Each point reports the minimizing overlaps, the entropy estimate, the
    exchange-symmetry label, and a reliability flag that is false above the
    squared-norm transition where the estimate breaks down.
    """
    rows = []
    for v in v_grid:
        for lam in lam_grid:
            params = ModelParams(u=u, v=v, lam=lam)
            minimum = minimize_z1(0.5, params, grid_points=grid_points)
            s2, warn = s2_estimate(0.5, params, minimum=minimum)
            rows.append(
                PhaseDiagramPoint(
                    u=u,
                    v=v,
                    lam=lam,
                    phi_a=minimum.phi_a,
                    phi_b=minimum.phi_b,
                    free_energy=minimum.free_energy,
                    s2_density=s2,
                    symmetry=minimum.exchange_symmetry or "",
                    reliable=not warn,
                )
            )
    return rows
