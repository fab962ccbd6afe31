"""Reproducible Monte Carlo sweeps over the RBM ensemble.

A sweep is a grid of parameter points; every sample at every point gets a
seed derived by hashing (master seed, point index, sample index), so reruns
of the same configuration are bit-identical regardless of worker count.
Also hosts the error-weighted finite-size fit and the quantum-state-design
obstruction checks.
"""

import hashlib
import json
import math
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.stats import t as student_t

from .core import (
    RBMParameters,
    StateVector,
    build_state,
    log_norm_squared,
    sample_weights,
)
from .entanglement import (
    SubregionMask,
    entanglement_spectrum,
    ipr_fractal_dimension,
    reduced_density_matrix,
    renyi2_entropy,
    von_neumann_entropy,
)
from .errors import CapacityError, ConfigError
from .numerics import logmeanexp

DEFAULT_BUDGET = 2e9

_QUANTITY_RE = re.compile(r"^(log_norm_sq|renyi2|von_neumann|d[2-9])$")

_CONFIG_KEYS = {
    "n",
    "m",
    "lam",
    "u",
    "v",
    "samples",
    "master_seed",
    "subregions",
    "quantities",
    "keep_raw",
    "workers",
    "budget",
    "max_visible",
}


def hidden_count(lam, n):
    """Hidden-unit count for a target ratio: round half up, at least 1."""
    return max(1, int(math.floor(lam * n + 0.5)))


def _as_list(value, kind):
    values = value if isinstance(value, (list, tuple)) else [value]
    return [kind(v) for v in values]


@dataclass(frozen=True)
class SweepPoint:
    n: int
    m: int
    u: float
    v: float

    @property
    def hidden_ratio(self):
        return self.m / self.n

    def rbm_parameters(self):
        return RBMParameters(n_visible=self.n, n_hidden=self.m, u=self.u, v=self.v)


@dataclass(frozen=True)
class SweepConfig:
    """Grid definition plus sampling and bookkeeping knobs.

    Hidden-layer sizes come either from ``m`` directly or from ``lam``
    (rounded to the nearest integer per ``n``).  ``subregions`` is a list of
    |A| values, "half", or "page" for the full 1..N-1 sweep.
    """

    n: tuple
    m: tuple | None
    lam: tuple | None
    u: tuple
    v: tuple
    samples: int
    master_seed: int
    subregions: object
    quantities: tuple
    keep_raw: bool = False
    workers: int = 1
    budget: float = DEFAULT_BUDGET
    max_visible: int = 24

    @classmethod
    def from_json(cls, path):
        from pathlib import Path

        try:
            data = json.loads(Path(path).read_text())
        except json.JSONDecodeError as exc:
            raise ConfigError(f"sweep config is not valid JSON: {exc}")
        if not isinstance(data, dict):
            raise ConfigError("sweep config must be a JSON object")
        return cls.from_dict(data)

    @classmethod
    def from_dict(cls, data):
        unknown = set(data) - _CONFIG_KEYS
        if unknown:
            raise ConfigError(f"unknown sweep config keys: {sorted(unknown)}")
        if ("m" in data) == ("lam" in data):
            raise ConfigError("specify exactly one of 'm' and 'lam'")
        for key in ("n", "samples", "master_seed", "quantities"):
            if key not in data:
                raise ConfigError(f"sweep config missing required key '{key}'")
        quantities = tuple(data["quantities"])
        for q in quantities:
            if not _QUANTITY_RE.match(q):
                raise ConfigError(f"unknown quantity '{q}'")
        subregions = data.get("subregions")
        if subregions is not None and not isinstance(subregions, str):
            subregions = tuple(int(k) for k in subregions)
        elif isinstance(subregions, str) and subregions not in ("page", "half"):
            raise ConfigError("subregions must be a list, 'page', or 'half'")
        return cls(
            n=tuple(_as_list(data["n"], int)),
            m=tuple(_as_list(data["m"], int)) if "m" in data else None,
            lam=tuple(_as_list(data["lam"], float)) if "lam" in data else None,
            u=tuple(_as_list(data.get("u", 0.0), float)),
            v=tuple(_as_list(data.get("v", 0.0), float)),
            samples=int(data["samples"]),
            master_seed=int(data["master_seed"]),
            subregions=subregions,
            quantities=quantities,
            keep_raw=bool(data.get("keep_raw", False)),
            workers=int(data.get("workers", 1)),
            budget=float(data.get("budget", DEFAULT_BUDGET)),
            max_visible=int(data.get("max_visible", 24)),
        )

    def to_dict(self):
        out = {
            "n": list(self.n),
            "u": list(self.u),
            "v": list(self.v),
            "samples": self.samples,
            "master_seed": self.master_seed,
            "quantities": list(self.quantities),
            "keep_raw": self.keep_raw,
            "workers": self.workers,
            "budget": self.budget,
            "max_visible": self.max_visible,
        }
        if self.m is not None:
            out["m"] = list(self.m)
        else:
            out["lam"] = list(self.lam)
        if self.subregions is not None:
            out["subregions"] = (
                self.subregions
                if isinstance(self.subregions, str)
                else list(self.subregions)
            )
        return out

    def config_hash(self):
        canon = json.dumps(self.to_dict(), sort_keys=True)
        return hashlib.sha256(canon.encode()).hexdigest()[:16]

    def points(self):
        points = []
        for n in self.n:
            ms = self.m if self.m is not None else [hidden_count(l, n) for l in self.lam]
            for m in ms:
                for u in self.u:
                    for v in self.v:
                        points.append(SweepPoint(n=n, m=m, u=u, v=v))
        return points

    def subregion_sizes(self, n):
        if self.subregions is None:
            return []
        if self.subregions == "page":
            return list(range(1, n))
        if self.subregions == "half":
            return [n // 2]
        sizes = [int(k) for k in self.subregions]
        if any(not 1 <= k <= n - 1 for k in sizes):
            raise ConfigError("subregion sizes must lie in 1..N-1")
        return sizes


def sample_seed(master_seed, point_index, sample_index):
    """64-bit per-sample seed from a stable cryptographic hash."""
    tag = f"{master_seed}:{point_index}:{sample_index}".encode()
    return int.from_bytes(hashlib.sha256(tag).digest()[:8], "little")


@dataclass(frozen=True)
class QuantityStats:
    mean: float
    stderr: float
    count: int


@dataclass(frozen=True)
class SweepRecord:
    point: SweepPoint
    quantities: dict
    derived: dict
    raw: dict | None = field(default=None, repr=False)


def _spectrum_mask(n, size):
    """Mask whose reduced density matrix lives on the smaller factor.

    For |A| > N/2 the exact complement (sites |A|..N-1) is used instead;
    its nonzero spectrum is identical, which keeps eigenproblems small.
    """
    if size <= n - size:
        return SubregionMask.first(n, size)
    return SubregionMask.from_sites(n, range(size, n))


def _sample_values(point, seed, quantities, sizes, max_visible):
    params = point.rbm_parameters()
    state = build_state(sample_weights(params, seed), max_visible=max_visible)
    values = {}
    if "log_norm_sq" in quantities:
        values["log_norm_sq"] = log_norm_squared(state)
    spectral = [q for q in ("renyi2", "von_neumann") if q in quantities]
    if spectral:
        normalized = state.normalized()
        for k in sizes:
            spectrum = entanglement_spectrum(
                reduced_density_matrix(normalized, _spectrum_mask(point.n, k))
            )
            if "renyi2" in quantities:
                values[f"renyi2[{k}]"] = renyi2_entropy(spectrum)
            if "von_neumann" in quantities:
                values[f"von_neumann[{k}]"] = von_neumann_entropy(spectrum)
    for q in quantities:
        if q.startswith("d") and q[1:].isdigit():
            values[q] = ipr_fractal_dimension(state, int(q[1:]))[1]
    return values


def _run_point(args):
    point_index, point, config = args
    sizes = config.subregion_sizes(point.n)
    rows = []
    for k in range(config.samples):
        seed = sample_seed(config.master_seed, point_index, k)
        rows.append(
            _sample_values(point, seed, config.quantities, sizes, config.max_visible)
        )
    return rows


def _aggregate(point, rows, config):
    keys = rows[0].keys()
    quantities = {}
    raw = {} if config.keep_raw else None
    for key in keys:
        arr = np.array([r[key] for r in rows], dtype=float)
        stderr = float(np.std(arr, ddof=1) / np.sqrt(len(arr))) if len(arr) > 1 else 0.0
        quantities[key] = QuantityStats(float(np.mean(arr)), stderr, len(arr))
        if raw is not None:
            raw[key] = arr
    derived = {}
    if "log_norm_sq" in keys and len(rows) > 1:
        logs = np.array([r["log_norm_sq"] for r in rows], dtype=float)
        derived["norm_fluctuation"] = norm_fluctuation_from_logs(point.n, logs)
    return SweepRecord(point=point, quantities=quantities, derived=derived, raw=raw)


def run_sweep(config, results_dir=None):
    """Execute every (point, sample) of the sweep and aggregate statistics.

    Deterministic for a fixed config: per-sample seeds are hashed from the
    master seed and checked for collisions, and aggregation order is fixed
    regardless of worker scheduling.
    """
    points = config.points()
    cost = sum(config.samples * (1 << p.n) for p in points)
    if cost > config.budget:
        raise CapacityError(
            f"sweep cost {cost:.3g} exceeds budget {config.budget:.3g}"
        )
    seeds = [
        sample_seed(config.master_seed, i, k)
        for i in range(len(points))
        for k in range(config.samples)
    ]
    if len(set(seeds)) != len(seeds):
        raise RuntimeError("per-sample seed collision detected")
    tasks = [(i, p, config) for i, p in enumerate(points)]
    if config.workers > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            all_rows = list(pool.map(_run_point, tasks))
    else:
        all_rows = [_run_point(t) for t in tasks]
    records = [
        _aggregate(point, rows, config) for point, rows in zip(points, all_rows)
    ]
    if results_dir is not None:
        _persist_raw(config, points, all_rows, results_dir)
    return records


def _persist_raw(config, points, all_rows, results_dir):
    from pathlib import Path

    base = Path(results_dir) / config.config_hash()
    base.mkdir(parents=True, exist_ok=True)
    manifest = base / "config.json"
    if not manifest.exists():
        manifest.write_text(json.dumps(config.to_dict(), sort_keys=True, indent=1))
    for i, (point, rows) in enumerate(zip(points, all_rows)):
        path = base / f"point_{i:04d}.csv"
        if path.exists():  # append-only store: identical reruns are no-ops
            continue
        keys = sorted(rows[0].keys())
        lines = [f"# point: n={point.n} m={point.m} u={point.u} v={point.v}"]
        lines.append(",".join(["sample"] + keys))
        for k, row in enumerate(rows):
            lines.append(",".join([str(k)] + [repr(row[key]) for key in keys]))
        path.write_text("\n".join(lines) + "\n")


def records_as_rows(records):
    """Long-format table of sweep statistics: one row per quantity.

    Columns: n, m, u, v, lambda, quantity, subregion, mean, stderr, count.
    Subregion-resolved quantities like ``renyi2[4]`` are split into the base
    name and the |A| column; scalar quantities leave subregion empty.
    """
    columns = ["n", "m", "u", "v", "lambda", "quantity", "subregion",
               "mean", "stderr", "count"]
    rows = []
    for rec in records:
        p = rec.point
        for key in sorted(rec.quantities):
            stats = rec.quantities[key]
            name, _, size = key.partition("[")
            rows.append([
                p.n, p.m, p.u, p.v, p.hidden_ratio, name,
                size.rstrip("]") if size else "",
                stats.mean, stats.stderr, stats.count,
            ])
        base = rec.quantities.get("log_norm_sq")
        for key in sorted(rec.derived):
            rows.append([p.n, p.m, p.u, p.v, p.hidden_ratio, key, "",
                         rec.derived[key], "", base.count if base else ""])
    return columns, rows


def records_as_dict(records):
    """JSON-serializable summary of sweep records."""
    out = []
    for rec in records:
        p = rec.point
        out.append({
            "point": {"n": p.n, "m": p.m, "u": p.u, "v": p.v,
                      "lambda": p.hidden_ratio},
            "quantities": {
                key: {"mean": s.mean, "stderr": s.stderr, "count": s.count}
                for key, s in sorted(rec.quantities.items())
            },
            "derived": dict(sorted(rec.derived.items())),
        })
    return out


# ---------------------------------------------------------------------------
# Norm fluctuations
# ---------------------------------------------------------------------------


def norm_fluctuation_from_logs(n_visible, log_norms):
    """(1/N) log( mean(<Psi|Psi>^2) / mean(<Psi|Psi>)^2 ) from per-sample logs.

    Exactly zero for a deterministic ensemble (all logs equal).
    """
    log_norms = np.asarray(log_norms, dtype=float)
    if log_norms.size < 2:
        raise ValueError("need at least two samples")
    return float(
        (logmeanexp(2.0 * log_norms) - 2.0 * logmeanexp(log_norms)) / n_visible
    )


def norm_fluctuation_statistic(params, n_samples, master_seed=0):
    """Sample the ensemble at one point and return the fluctuation statistic."""
    if n_samples < 2:
        raise ValueError("need at least two samples")
    logs = np.empty(n_samples)
    for k in range(n_samples):
        state = build_state(sample_weights(params, sample_seed(master_seed, 0, k)))
        norm_sq = state.norm_squared()
        if norm_sq == 0.0:
            raise ValueError("encountered a zero-norm state")
        logs[k] = log_norm_squared(state)
    return norm_fluctuation_from_logs(params.n_visible, logs)


# ---------------------------------------------------------------------------
# Finite-size extrapolation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FiniteSizeFit:
    """Error-weighted quadratic fit of a quantity against 1/N."""

    coefficients: np.ndarray  # (intercept, slope, curvature) in powers of 1/N
    covariance: np.ndarray = field(repr=False)
    dof: int

    @property
    def intercept(self):
        return float(self.coefficients[0])

    @property
    def intercept_stderr(self):
        return float(np.sqrt(self.covariance[0, 0]))

    def confidence_halfwidth(self, level=0.90):
        """Half-width of the two-sided confidence band at 1/N = 0."""
        quantile = student_t.ppf(0.5 + level / 2.0, self.dof)
        return float(quantile * self.intercept_stderr)

    def predict(self, inv_n):
        inv_n = np.asarray(inv_n, dtype=float)
        c = self.coefficients
        return c[0] + c[1] * inv_n + c[2] * inv_n**2


def finite_size_fit(points):
    """Weighted least squares of value on (1/N, 1/N^2); intercept extrapolates.

    ``points`` is a sequence of (1/N, value, stderr) with positive stderr;
    weights are 1/stderr^2 and the covariance is scaled by the reduced
    chi-square with (n - 3) degrees of freedom.
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 3:
        raise ValueError("points must be (1/N, value, stderr) triples")
    if len(pts) < 4:
        raise ValueError("need at least four points for the quadratic fit")
    x, y, sigma = pts[:, 0], pts[:, 1], pts[:, 2]
    if np.any(sigma <= 0.0):
        raise ValueError("stderr values must be positive")
    design = np.column_stack([np.ones_like(x), x, x**2])
    w = 1.0 / sigma
    xtx = (design * w[:, None]).T @ (design * w[:, None])
    if np.linalg.cond(xtx) > 1e12:
        raise ValueError("singular design matrix")
    coef, *_ = np.linalg.lstsq(design * w[:, None], y * w, rcond=None)
    dof = len(pts) - 3
    residual = (y - design @ coef) * w
    scale = float(residual @ residual) / dof if dof > 0 else 0.0
    covariance = scale * np.linalg.inv(xtx)
    return FiniteSizeFit(coefficients=coef, covariance=covariance, dof=dof)


# ---------------------------------------------------------------------------
# Quantum-state-design obstruction checks
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DesignCheckReport:
    ensemble: str
    n_visible: int
    n_samples: int
    symmetry_exact: bool
    max_symmetry_violation: float
    max_null_component: float
    pair_expectations: np.ndarray = field(repr=False)  # rescaled by 2^(N-1)
    pair_stderr: np.ndarray = field(repr=False)

    @property
    def mean_expectation(self):
        return float(np.mean(self.pair_expectations))

    @property
    def min_expectation(self):
        return float(np.min(self.pair_expectations))


def _haar_state(n, seed):
    rng = np.random.default_rng(seed)
    amps = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
    return StateVector(n_visible=n, amplitudes=amps)


def design_obstruction_check(
    params, n_samples, master_seed=0, n_pairs=32, ensemble="rbm", max_visible=14
):
    """Three obstructions to the ensemble forming a quantum state 1-design.

    (i) per-sample matrix-element symmetry rho(s1, s2) = rho(s1, flip(s2)),
    checked for exact equality of the underlying amplitudes; (ii) every
    antisymmetric combination |s> - |flip(s)> annihilated by the averaged
    state; (iii) expectation of (rho_avg - 1/2^(N-1)) in superpositions of
    two symmetric basis vectors whose configurations differ by one spin,
    reported rescaled by 2^(N-1).  ``ensemble="haar"`` runs the same checks
    on Haar-like Gaussian control states.
    """
    n = params.n_visible
    if n > max_visible:
        raise CapacityError(f"design check limited to N <= {max_visible}")
    rng = np.random.default_rng(master_seed)
    half = 1 << (n - 1)
    full = (1 << n) - 1
    base = rng.integers(0, half, size=n_pairs)
    partner = base ^ (1 << rng.integers(0, n, size=n_pairs))
    pair_sums = np.zeros(n_pairs)
    pair_sq = np.zeros(n_pairs)
    max_violation = 0.0
    max_null = 0.0
    for k in range(n_samples):
        seed = sample_seed(master_seed, 0, k)
        if ensemble == "rbm":
            state = build_state(sample_weights(params, seed), max_visible=max_visible)
        elif ensemble == "haar":
            state = _haar_state(n, seed)
        else:
            raise ValueError("ensemble must be 'rbm' or 'haar'")
        amps = state.amplitudes
        flipped = amps[::-1]  # index reversal is the global spin flip
        asym = float(np.max(np.abs(amps - flipped)))
        max_violation = max(max_violation, asym)
        norm_sq = float(np.sum(np.abs(amps) ** 2))
        max_null = max(max_null, float(asym / np.sqrt(2.0 * norm_sq)))
        a_s, a_p = amps[base], amps[partner]
        vals = (
            np.abs(a_s) ** 2
            + np.abs(a_p) ** 2
            + 2.0 * (a_s * np.conj(a_p)).real
        ) / norm_sq - 2.0 ** (1 - n)
        pair_sums += vals
        pair_sq += vals**2
    mean = pair_sums / n_samples
    var = np.maximum(pair_sq / n_samples - mean**2, 0.0)
    stderr = np.sqrt(var / n_samples)
    scale = 2.0 ** (n - 1)
    return DesignCheckReport(
        ensemble=ensemble,
        n_visible=n,
        n_samples=n_samples,
        symmetry_exact=max_violation == 0.0,
        max_symmetry_violation=max_violation,
        max_null_component=max_null,
        pair_expectations=mean * scale,
        pair_stderr=stderr * scale,
    )
