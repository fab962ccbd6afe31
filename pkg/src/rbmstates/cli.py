"""Command-line front end emitting figure-ready CSV/JSON datasets.

Subcommands: phase-diagram, page-curve, spectrum, level-stats, fractal,
design-check, norm-fluct.  Every subcommand reads a strict JSON config
(unknown keys abort before any computation), writes into --out, and refuses
to overwrite existing outputs unless --force is given.  Exit codes:
0 success, 2 config error, 3 capacity/budget error.
"""

import argparse
import hashlib
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .core import RBMParameters, average_norm_squared_analytic, build_state, sample_weights
from .ensemble import (
    SweepConfig,
    design_obstruction_check,
    hidden_count,
    norm_fluctuation_statistic,
    run_sweep,
    sample_seed,
)
from .entanglement import (
    SubregionMask,
    entanglement_spectrum,
    marchenko_pastur_reference,
    ratio_histogram,
    ratio_points,
    pooled_window_profile,
    reduced_density_matrix,
    reference_ratio_curve,
    sector_resolved_spectrum,
    spacing_ratios,
    EIGENVALUE_CUTOFF,
)
from .errors import CapacityError, ConfigError
from .numerics import LOG2
from .statmech import (
    LAMBDA_C,
    ModelParams,
    fractal_dimension_dq,
    dq_validity_threshold,
    minimize_z0,
    minimize_z1,
    page_plateau_level,
    s2_estimate,
    z0_landscape,
    z1_landscape,
)

_REQUIRED = object()


def _float_or_inf(value):
    if value == "inf":
        return math.inf
    return float(value)


def _float_list(value):
    values = value if isinstance(value, list) else [value]
    return [_float_or_inf(v) for v in values]


def _int_list(value):
    values = value if isinstance(value, list) else [value]
    return [int(v) for v in values]


def _optional(cast):
    return lambda v: None if v is None else cast(v)


_SCHEMAS = {
    "phase-diagram": {
        "model": (str, "z1"),
        "u": (float, 0.0),
        "v": (_float_list, _REQUIRED),
        "lam": (_float_list, _REQUIRED),
        "a": (float, 0.5),
        "grid_points": (int, 161),
        "landscape_v": (_optional(_float_or_inf), None),
        "landscape_lam": (_optional(float), None),
    },
    "page-curve": {
        "mode": (str, "both"),
        "lam": (_float_list, _REQUIRED),
        "n": (_optional(int), None),
        "u": (float, 0.0),
        "v": (_float_or_inf, 4.0),
        "samples": (int, 100),
        "master_seed": (int, 0),
        "curve_points": (int, 201),
        "grid_points": (int, 161),
        "workers": (int, 1),
        "budget": (float, 2e9),
        "max_visible": (int, 24),
    },
    "spectrum": {
        "n": (int, _REQUIRED),
        "m": (_optional(int), None),
        "lam": (_optional(float), None),
        "u": (float, 0.0),
        "v": (float, 4.0),
        "samples": (int, 100),
        "master_seed": (int, 0),
        "subregion_size": (_optional(int), None),
        "epsilon_bin_width": (float, 0.2),
        "dump_samples": (bool, False),
        "max_visible": (int, 24),
    },
    "level-stats": {
        "source": (str, "rbm"),
        "n": (_optional(int), None),
        "m": (_optional(int), None),
        "lam": (_optional(float), None),
        "u": (float, 0.0),
        "v": (float, 4.0),
        "samples": (int, 200),
        "master_seed": (int, 0),
        "subregion_size": (_optional(int), None),
        "bin_width": (float, 0.02),
        "window_half_width": (float, 0.5),
        "window_min_count": (int, 10),
        "n_levels": (int, 64),
        "max_visible": (int, 24),
    },
    "fractal": {
        "q": (_int_list, [2]),
        "lam": (_float_list, _REQUIRED),
        "numeric_n": (_optional(int), None),
        "numeric_q": (int, 2),
        "u": (float, 0.0),
        "v": (float, 4.0),
        "samples": (int, 100),
        "master_seed": (int, 0),
        "max_visible": (int, 24),
    },
    "design-check": {
        "n": (int, _REQUIRED),
        "m": (_optional(int), None),
        "lam": (_optional(float), None),
        "u": (float, 0.0),
        "v": (float, 1.0),
        "samples": (int, 1000),
        "master_seed": (int, 0),
        "n_pairs": (int, 32),
        "ensemble": (str, "rbm"),
    },
    "norm-fluct": {
        "n": (_int_list, _REQUIRED),
        "m": (_optional(_int_list), None),
        "lam": (_optional(_float_list), None),
        "u": (float, 0.0),
        "v": (float, 4.0),
        "samples": (int, 1000),
        "master_seed": (int, 0),
    },
}


def load_config(path, command):
    schema = _SCHEMAS[command]
    try:
        raw = json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}")
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}")
    if not isinstance(raw, dict):
        raise ConfigError("config must be a JSON object")
    unknown = set(raw) - set(schema)
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    cfg = {}
    for key, (cast, default) in schema.items():
        if key in raw:
            try:
                cfg[key] = cast(raw[key])
            except (TypeError, ValueError) as exc:
                raise ConfigError(f"invalid value for '{key}': {exc}")
        elif default is _REQUIRED:
            raise ConfigError(f"missing required config key '{key}'")
        else:
            cfg[key] = default
    return cfg


def config_hash(cfg):
    canon = json.dumps(cfg, sort_keys=True, default=str)
    return hashlib.sha256(canon.encode()).hexdigest()[:16]


def _fmt(value):
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    if isinstance(value, np.integer):
        return str(int(value))
    return str(value)


def write_csv(path, columns, rows, digest, force):
    path = Path(path)
    if path.exists() and not force:
        raise ConfigError(f"output exists: {path} (use --force to overwrite)")
    lines = [f"# version: {__version__}", f"# config_hash: {digest}"]
    lines.append(",".join(columns))
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    path.write_text("\n".join(lines) + "\n")
    return path


def _json_default(value):
    if isinstance(value, (np.bool_,)):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    raise TypeError(f"not JSON serializable: {type(value)}")


def write_json(path, payload, digest, force):
    path = Path(path)
    if path.exists() and not force:
        raise ConfigError(f"output exists: {path} (use --force to overwrite)")
    payload = {"version": __version__, "config_hash": digest, **payload}
    path.write_text(
        json.dumps(payload, indent=1, sort_keys=True, default=_json_default) + "\n"
    )
    return path


def _resolve_m(cfg, n):
    m, lam = cfg.get("m"), cfg.get("lam")
    if (m is None) == (lam is None):
        raise ConfigError("specify exactly one of 'm' and 'lam'")
    return m if m is not None else hidden_count(lam, n)


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def cmd_phase_diagram(cfg, out, digest, force, workers):
    if cfg["model"] not in ("z0", "z1"):
        raise ConfigError("model must be 'z0' or 'z1'")
    rows = []
    if cfg["model"] == "z0":
        columns = ["u", "v", "lambda", "phi_star", "free_energy", "phase_label"]
        for v in cfg["v"]:
            for lam in cfg["lam"]:
                m = minimize_z0(ModelParams(cfg["u"], v, lam))
                rows.append([cfg["u"], v, lam, m.phi_star, m.free_energy, m.phase])
    else:
        columns = [
            "u", "v", "lambda", "phi_a_star", "phi_b_star",
            "free_energy", "s2_density", "phase_label", "reliable_flag",
        ]
        for v in cfg["v"]:
            for lam in cfg["lam"]:
                params = ModelParams(cfg["u"], v, lam)
                minimum = minimize_z1(cfg["a"], params, grid_points=cfg["grid_points"])
                s2, warn = s2_estimate(cfg["a"], params, minimum=minimum)
                rows.append([
                    cfg["u"], v, lam, minimum.phi_a, minimum.phi_b,
                    minimum.free_energy, s2, minimum.exchange_symmetry or "",
                    not warn,
                ])
    paths = [write_csv(out / "phase_diagram.csv", columns, rows, digest, force)]
    if (cfg["landscape_v"] is None) != (cfg["landscape_lam"] is None):
        raise ConfigError("landscape_v and landscape_lam must be given together")
    if cfg["landscape_lam"] is not None:
        params = ModelParams(cfg["u"], cfg["landscape_v"], cfg["landscape_lam"])
        if cfg["model"] == "z0":
            scape = z0_landscape(params)
        else:
            scape = z1_landscape(cfg["a"], params, grid_points=cfg["grid_points"])
        paths.append(write_csv(
            out / "free_energy_landscape.csv",
            ["phi_a", "phi_b", "energy", "entropy", "free_energy"],
            scape.rows(), digest, force,
        ))
        paths.append(write_json(
            out / "free_energy_landscape.json", scape.summary(), digest, force,
        ))
    return paths


def _analytic_page_density(lam, a):
    return min(a, 1.0 - a, page_plateau_level(lam)) * LOG2


def _model_page_rows(cfg, lam):
    """Analytic Page curve from the swap model at generic (u, v)."""
    params = ModelParams(cfg["u"], cfg["v"], lam)
    warn_all = minimize_z0(params).phase == "broken"
    warning = "large-fluctuation-regime" if warn_all else ""
    rows = []
    for a in np.linspace(0.0, 1.0, cfg["curve_points"]):
        minimum = minimize_z1(float(a), params, grid_points=cfg["grid_points"])
        s2, _ = s2_estimate(float(a), params, minimum=minimum)
        rows.append([float(a), s2, minimum.exchange_symmetry or "", warning])
    return rows


def cmd_page_curve(cfg, out, digest, force, workers):
    if cfg["mode"] not in ("analytic", "numeric", "both"):
        raise ConfigError("mode must be 'analytic', 'numeric', or 'both'")
    paths = []
    for lam in cfg["lam"]:
        analytic_ok = 0.0 < lam < LAMBDA_C
        warning = "" if analytic_ok else "large-fluctuation-regime"
        rows = []
        if cfg["mode"] == "analytic":
            columns = ["a", "s2_analytic_density", "regime", "warning"]
            if cfg["u"] == 0.0 and math.isinf(cfg["v"]):
                if not analytic_ok:
                    raise ConfigError(
                        f"limit Page curve requires 0 < lambda < {LAMBDA_C:.4f}"
                    )
                grid = np.linspace(0.0, 1.0, cfg["curve_points"])
                p = page_plateau_level(lam)
                for a in grid:
                    regime = (
                        "plateau" if p < min(a, 1 - a) - 1e-12
                        else "ramp" if min(a, 1 - a) < p - 1e-12
                        else "symmetry-broken" if abs(a - 0.5) < 1e-12 and lam >= 0.5
                        else "plateau"
                    )
                    rows.append([a, _analytic_page_density(lam, a), regime, warning])
            else:
                rows = _model_page_rows(cfg, lam)
        else:
            if cfg["n"] is None:
                raise ConfigError("numeric Page curves require 'n'")
            if math.isinf(cfg["v"]):
                raise ConfigError("numeric Page curves require finite v")
            n = cfg["n"]
            m = hidden_count(lam, n)
            sweep = SweepConfig.from_dict({
                "n": n, "m": [m], "u": cfg["u"], "v": cfg["v"],
                "samples": cfg["samples"], "master_seed": cfg["master_seed"],
                "subregions": "page", "quantities": ["renyi2", "von_neumann"],
                "workers": workers or cfg["workers"], "budget": cfg["budget"],
                "max_visible": cfg["max_visible"],
            })
            record = run_sweep(sweep)[0]
            columns = [
                "a", "s2_analytic_density", "s2_density", "s2_stderr",
                "svn_density", "svn_stderr", "warning",
            ]
            for k in range(1, n):
                s2 = record.quantities[f"renyi2[{k}]"]
                svn = record.quantities[f"von_neumann[{k}]"]
                analytic = (
                    _analytic_page_density(m / n, k / n) if analytic_ok else ""
                )
                rows.append([
                    k / n, analytic, s2.mean / n, s2.stderr / n,
                    svn.mean / n, svn.stderr / n, warning,
                ])
        name = f"page_curve_lam{lam:g}.csv"
        paths.append(write_csv(out / name, columns, rows, digest, force))
    return paths


def cmd_spectrum(cfg, out, digest, force, workers):
    n = cfg["n"]
    m = _resolve_m(cfg, n)
    size = cfg["subregion_size"] if cfg["subregion_size"] is not None else n // 2
    if not 1 <= size <= n - 1:
        raise ConfigError("subregion_size must lie in 1..N-1")
    params = RBMParameters(n, m, cfg["u"], cfg["v"])
    mask = SubregionMask.first(n, size)
    rank_deficient = m < size
    xi_sum = np.zeros(1 << size)
    pooled = []
    sample_rows = []
    for k in range(cfg["samples"]):
        seed = sample_seed(cfg["master_seed"], 0, k)
        state = build_state(sample_weights(params, seed), max_visible=cfg["max_visible"])
        rho = reduced_density_matrix(state, mask)
        spectrum = sector_resolved_spectrum(rho)
        xi_sum += spectrum.xi
        pooled.append(spectrum.epsilon())
        if cfg["dump_samples"]:
            for rank, (xi, sec) in enumerate(zip(spectrum.xi, spectrum.sector)):
                eps = -np.log(xi) if xi > EIGENVALUE_CUTOFF else ""
                sample_rows.append([k, rank, xi, eps, int(sec)])
    xi_mean = xi_sum / cfg["samples"]
    pooled = np.concatenate(pooled)
    bw = cfg["epsilon_bin_width"]
    hi = max(pooled.max(), pooled.min() + bw)  # at least one bin
    edges = np.arange(pooled.min(), hi + bw, bw)
    density, edges = np.histogram(pooled, bins=edges, density=True)
    centers = 0.5 * (edges[:-1] + edges[1:])
    mp = marchenko_pastur_reference(1 << size, 1 << (n - size))
    paths = [
        write_csv(
            out / "spectrum_mean.csv",
            ["k", "xi_mean", "rank_deficient"],
            [[k, x, rank_deficient] for k, x in enumerate(xi_mean)],
            digest, force,
        ),
        write_csv(
            out / "spectrum_density.csv",
            ["epsilon", "density"],
            [[c, d] for c, d in zip(centers, density)],
            digest, force,
        ),
        write_csv(
            out / "spectrum_mp_reference.csv",
            ["epsilon", "density"],
            [[e, d] for e, d in zip(mp.epsilon, mp.density)],
            digest, force,
        ),
        write_json(
            out / "spectrum_summary.json",
            {
                "n": n, "m": m, "u": cfg["u"], "v": cfg["v"],
                "subregion_size": size, "samples": cfg["samples"],
                "rank_deficient": rank_deficient,
                "mean_top_eigenvalue": float(xi_mean[0]),
                "mean_nonzero_count": float(np.count_nonzero(xi_mean > 1e-10)),
            },
            digest, force,
        ),
    ]
    if cfg["dump_samples"]:
        paths.append(write_csv(
            out / "spectrum_samples.csv",
            ["sample", "k", "xi", "epsilon", "sector"],
            sample_rows, digest, force,
        ))
    return paths


def _synthetic_ratio_points(cfg):
    rng = np.random.default_rng(cfg["master_seed"])
    eps_all, rt_all = [], []
    for _ in range(cfg["samples"]):
        if cfg["source"] == "poisson":
            levels = np.cumsum(rng.exponential(size=cfg["n_levels"]))
        else:
            g = rng.normal(size=(cfg["n_levels"], cfg["n_levels"]))
            levels = np.sort(np.linalg.eigvalsh((g + g.T) / 2.0))
        r = spacing_ratios(levels)
        with np.errstate(divide="ignore", invalid="ignore"):
            rt = np.minimum(r, 1.0 / r)
        rt = np.where(np.isfinite(rt), rt, 0.0)
        eps_all.append(levels[1:-1])
        rt_all.append(rt)
    return np.concatenate(eps_all), np.concatenate(rt_all)


def cmd_level_stats(cfg, out, digest, force, workers):
    if cfg["source"] not in ("rbm", "poisson", "goe"):
        raise ConfigError("source must be 'rbm', 'poisson', or 'goe'")
    if cfg["source"] == "rbm":
        if cfg["n"] is None:
            raise ConfigError("rbm source requires 'n'")
        n = cfg["n"]
        m = _resolve_m(cfg, n)
        size = cfg["subregion_size"] if cfg["subregion_size"] is not None else n // 2
        params = RBMParameters(n, m, cfg["u"], cfg["v"])
        mask = SubregionMask.first(n, size)
        eps_all, rt_all = [], []
        for k in range(cfg["samples"]):
            seed = sample_seed(cfg["master_seed"], 0, k)
            state = build_state(
                sample_weights(params, seed), max_visible=cfg["max_visible"]
            )
            rho = reduced_density_matrix(state, mask)
            spectrum = sector_resolved_spectrum(rho)
            try:
                eps, rt = ratio_points(spectrum, sector=1)
            except ValueError as exc:
                raise ConfigError(
                    f"sample {k} has too few nonzero levels in the "
                    f"symmetric sector ({exc}); increase m or subregion_size"
                )
            eps_all.append(eps)
            rt_all.append(rt)
        eps_pool = np.concatenate(eps_all)
        rt_pool = np.concatenate(rt_all)
    else:
        eps_pool, rt_pool = _synthetic_ratio_points(cfg)

    bw = cfg["bin_width"]
    edges, density = ratio_histogram(rt_pool, bin_width=bw)
    _, poisson_ref, poisson_mean = reference_ratio_curve("poisson", bin_width=bw)
    _, goe_ref, goe_mean = reference_ratio_curve("goe", bin_width=bw)
    centers = 0.5 * (edges[:-1] + edges[1:])
    hist_rows = [
        [c, d, p, g]
        for c, d, p, g in zip(centers, density, poisson_ref, goe_ref)
    ]
    hw = cfg["window_half_width"]
    lo, hi = eps_pool.min() + hw, eps_pool.max() - hw
    window_centers = np.arange(lo, hi + hw / 2, hw) if hi > lo else np.array([eps_pool.mean()])
    means, counts = pooled_window_profile(
        (eps_pool, rt_pool), window_centers, half_width=hw,
        min_count=cfg["window_min_count"],
    )
    window_rows = [
        [c, mval, int(cnt), poisson_mean, goe_mean]
        for c, mval, cnt in zip(window_centers, means, counts)
        if np.isfinite(mval)
    ]
    return [
        write_csv(
            out / "level_stats_histogram.csv",
            ["r", "density", "poisson_reference", "goe_reference"],
            hist_rows, digest, force,
        ),
        write_csv(
            out / "level_stats_windowed.csv",
            ["epsilon_center", "mean_reduced_ratio", "count",
             "poisson_mean", "goe_mean"],
            window_rows, digest, force,
        ),
    ]


def cmd_fractal(cfg, out, digest, force, workers):
    rows = []
    for q in cfg["q"]:
        if q < 2:
            raise ConfigError("analytic fractal dimensions require q >= 2")
        threshold = dq_validity_threshold(q)
        for lam in cfg["lam"]:
            dq, valid = fractal_dimension_dq(q, lam)
            bound = dq * LOG2 if q == 2 else ""
            rows.append([q, lam, dq, valid, threshold, bound])
    paths = [
        write_csv(
            out / "fractal_analytic.csv",
            ["q", "lambda", "dq", "valid", "validity_threshold", "bound_s2_density"],
            rows, digest, force,
        )
    ]
    if cfg["numeric_n"] is not None:
        n = cfg["numeric_n"]
        q = cfg["numeric_q"]
        sweep = SweepConfig.from_dict({
            "n": n, "lam": list(cfg["lam"]), "u": cfg["u"], "v": cfg["v"],
            "samples": cfg["samples"], "master_seed": cfg["master_seed"],
            "quantities": [f"d{q}"], "workers": workers or 1,
            "max_visible": cfg["max_visible"],
        })
        records = run_sweep(sweep)
        num_rows = []
        for rec in records:
            stats = rec.quantities[f"d{q}"]
            num_rows.append([
                rec.point.hidden_ratio, rec.point.m, q, stats.mean, stats.stderr,
                stats.count,
            ])
        paths.append(
            write_csv(
                out / "fractal_numeric.csv",
                ["lambda", "m", "q", "mean_dq", "stderr", "samples"],
                num_rows, digest, force,
            )
        )
    return paths


def cmd_design_check(cfg, out, digest, force, workers):
    n = cfg["n"]
    m = _resolve_m(cfg, n)
    params = RBMParameters(n, m, cfg["u"], cfg["v"])
    report = design_obstruction_check(
        params, cfg["samples"], master_seed=cfg["master_seed"],
        n_pairs=cfg["n_pairs"], ensemble=cfg["ensemble"],
    )
    checks = {
        "matrix_element_symmetry": report.symmetry_exact,
        "antisymmetric_null_space": report.max_null_component < 1e-10,
        "symmetric_offdiagonal_positive": report.mean_expectation > 0.1,
    }
    payload = {
        "ensemble": report.ensemble,
        "n": n,
        "m": m,
        "u": cfg["u"],
        "v": cfg["v"],
        "samples": report.n_samples,
        "max_symmetry_violation": report.max_symmetry_violation,
        "max_null_component": report.max_null_component,
        "mean_expectation": report.mean_expectation,
        "min_expectation": report.min_expectation,
        "checks": checks,
    }
    pair_rows = [
        [i, e, s]
        for i, (e, s) in enumerate(zip(report.pair_expectations, report.pair_stderr))
    ]
    return [
        write_json(out / "design_check.json", payload, digest, force),
        write_csv(
            out / "design_check_pairs.csv",
            ["pair", "rescaled_expectation", "stderr"],
            pair_rows, digest, force,
        ),
    ]


def cmd_norm_fluct(cfg, out, digest, force, workers):
    if (cfg["m"] is None) == (cfg["lam"] is None):
        raise ConfigError("specify exactly one of 'm' and 'lam'")
    rows = []
    for n in cfg["n"]:
        ms = cfg["m"] if cfg["m"] is not None else [hidden_count(l, n) for l in cfg["lam"]]
        for m in ms:
            params = RBMParameters(n, m, cfg["u"], cfg["v"])
            stat = norm_fluctuation_statistic(
                params, cfg["samples"], master_seed=cfg["master_seed"]
            )
            model = ModelParams(cfg["u"], cfg["v"], m / n)
            analytic = -minimize_z0(model).free_energy - 2.0 * (
                average_norm_squared_analytic(params)
            )
            rows.append([n, m, m / n, stat, analytic, cfg["samples"]])
    return [
        write_csv(
            out / "norm_fluct.csv",
            ["n", "m", "lambda", "statistic", "analytic_limit", "samples"],
            rows, digest, force,
        )
    ]


_COMMANDS = {
    "phase-diagram": cmd_phase_diagram,
    "page-curve": cmd_page_curve,
    "spectrum": cmd_spectrum,
    "level-stats": cmd_level_stats,
    "fractal": cmd_fractal,
    "design-check": cmd_design_check,
    "norm-fluct": cmd_norm_fluct,
}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="rbmstates",
        description="Random RBM spin-state ensembles: figure-ready datasets",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", required=True, help="JSON config path")
        p.add_argument("--out", default=".", help="output directory")
        p.add_argument("--seed", type=int, default=None, help="master seed override")
        p.add_argument("--threads", type=int, default=None, help="worker processes")
        p.add_argument("--force", action="store_true", help="overwrite outputs")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config, args.command)
        if args.seed is not None:
            if "master_seed" not in cfg:
                raise ConfigError(f"'{args.command}' does not take a seed")
            cfg["master_seed"] = args.seed
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        digest = config_hash(cfg)
        paths = _COMMANDS[args.command](cfg, out, digest, args.force, args.threads)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    for path in paths:
        print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
