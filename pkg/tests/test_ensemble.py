import json

import numpy as np
import pytest

from rbmstates import CapacityError, ConfigError, RBMParameters
from rbmstates.core import build_state, sample_weights
from rbmstates.ensemble import (
    SweepConfig,
    SweepPoint,
    design_obstruction_check,
    finite_size_fit,
    hidden_count,
    norm_fluctuation_from_logs,
    norm_fluctuation_statistic,
    records_as_dict,
    records_as_rows,
    run_sweep,
    sample_seed,
)
from rbmstates.entanglement import SubregionMask, renyi2_entropy
from rbmstates.numerics import LOG2


def make_config(**overrides):
    base = {
        "n": 8,
        "m": [6],
        "u": 0.0,
        "v": 4.0,
        "samples": 10,
        "master_seed": 7,
        "subregions": "half",
        "quantities": ["log_norm_sq", "renyi2"],
    }
    base.update(overrides)
    return SweepConfig.from_dict(base)


# ---------------------------------------------------------------------------
# Config handling
# ---------------------------------------------------------------------------


def test_config_rejects_unknown_keys():
    with pytest.raises(ConfigError):
        make_config(bogus=1)


def test_config_requires_m_xor_lam():
    with pytest.raises(ConfigError):
        SweepConfig.from_dict({
            "n": 8, "m": [4], "lam": [0.5], "samples": 1, "master_seed": 0,
            "quantities": ["log_norm_sq"],
        })
    with pytest.raises(ConfigError):
        SweepConfig.from_dict({
            "n": 8, "samples": 1, "master_seed": 0, "quantities": ["log_norm_sq"],
        })


def test_config_validates_quantities():
    with pytest.raises(ConfigError):
        make_config(quantities=["renyi3"])
    cfg = make_config(quantities=["d2", "d4", "von_neumann"])
    assert cfg.quantities == ("d2", "d4", "von_neumann")


def test_hidden_count_rounding():
    assert hidden_count(0.75, 12) == 9
    assert hidden_count(0.75, 10) == 8  # half rounds up
    assert hidden_count(1.8, 12) == 22
    assert hidden_count(0.0, 10) == 1


def test_lambda_grid_resolution():
    cfg = SweepConfig.from_dict({
        "n": [8, 12], "lam": [0.5, 1.5], "samples": 1, "master_seed": 0,
        "quantities": ["log_norm_sq"],
    })
    points = cfg.points()
    assert [(p.n, p.m) for p in points] == [(8, 4), (8, 12), (12, 6), (12, 18)]


def test_subregion_schedules():
    cfg = make_config(subregions="page")
    assert cfg.subregion_sizes(8) == list(range(1, 8))
    cfg = make_config(subregions=[2, 5])
    assert cfg.subregion_sizes(8) == [2, 5]
    cfg = make_config(subregions=[9])
    with pytest.raises(ConfigError):
        cfg.subregion_sizes(8)


def test_config_hash_stable_and_sensitive():
    assert make_config().config_hash() == make_config().config_hash()
    assert make_config().config_hash() != make_config(master_seed=8).config_hash()


# ---------------------------------------------------------------------------
# Seeds and sweeps
# ---------------------------------------------------------------------------


def test_sample_seeds_distinct_and_deterministic():
    seeds = {sample_seed(3, i, k) for i in range(20) for k in range(200)}
    assert len(seeds) == 4000
    assert sample_seed(3, 1, 2) == sample_seed(3, 1, 2)


def test_run_sweep_reproducible():
    cfg = make_config()
    rec1 = run_sweep(cfg)[0]
    rec2 = run_sweep(cfg)[0]
    assert rec1.quantities == rec2.quantities
    assert rec1.derived == rec2.derived


def test_single_sample_record_equals_direct_call():
    cfg = make_config(samples=1)
    rec = run_sweep(cfg)[0]
    params = RBMParameters(8, 6, 0.0, 4.0)
    state = build_state(sample_weights(params, sample_seed(7, 0, 0)))
    direct = renyi2_entropy(state.normalized(), SubregionMask.first(8, 4))
    assert rec.quantities["renyi2[4]"].mean == pytest.approx(direct, abs=1e-12)
    assert rec.quantities["renyi2[4]"].count == 1
    assert rec.quantities["renyi2[4]"].stderr == 0.0


def test_budget_guard():
    with pytest.raises(CapacityError):
        run_sweep(make_config(budget=100.0))


def test_worker_pool_matches_serial():
    serial = run_sweep(make_config(n=[6, 7], samples=5, workers=1))
    parallel = run_sweep(make_config(n=[6, 7], samples=5, workers=2))
    for r1, r2 in zip(serial, parallel):
        assert r1.point == r2.point
        assert r1.quantities == r2.quantities


def test_stderr_definition_and_shrink():
    cfg = make_config(samples=200, quantities=["log_norm_sq"], keep_raw=True)
    rec = run_sweep(cfg)[0]
    raw = rec.raw["log_norm_sq"]
    stats = rec.quantities["log_norm_sq"]
    assert stats.stderr == pytest.approx(np.std(raw, ddof=1) / np.sqrt(len(raw)))
    rec2 = run_sweep(make_config(samples=800, quantities=["log_norm_sq"]))[0]
    ratio = rec2.quantities["log_norm_sq"].stderr / stats.stderr
    assert 0.35 < ratio < 0.72  # ~1/2 with statistical slack


def test_config_from_json(tmp_path):
    path = tmp_path / "sweep.json"
    path.write_text(json.dumps({
        "n": 6, "m": [4], "v": 2.0, "samples": 2, "master_seed": 0,
        "quantities": ["log_norm_sq"],
    }))
    cfg = SweepConfig.from_json(path)
    assert cfg.points() == [SweepPoint(6, 4, 0.0, 2.0)]
    path.write_text("not json")
    with pytest.raises(ConfigError):
        SweepConfig.from_json(path)


def test_records_serialization():
    records = run_sweep(make_config(samples=4))
    columns, rows = records_as_rows(records)
    assert columns[:5] == ["n", "m", "u", "v", "lambda"]
    names = {r[5] for r in rows}
    assert names == {"log_norm_sq", "renyi2", "norm_fluctuation"}
    renyi_row = next(r for r in rows if r[5] == "renyi2")
    assert renyi_row[6] == "4"  # subregion column
    payload = records_as_dict(records)
    json.dumps(payload)  # must be serializable as-is
    assert payload[0]["point"]["m"] == 6
    assert payload[0]["quantities"]["renyi2[4]"]["count"] == 4


def test_raw_persistence_append_only(tmp_path):
    cfg = make_config(samples=3)
    run_sweep(cfg, results_dir=tmp_path)
    base = tmp_path / cfg.config_hash()
    point_file = base / "point_0000.csv"
    assert point_file.exists() and (base / "config.json").exists()
    content = point_file.read_text()
    run_sweep(cfg, results_dir=tmp_path)  # identical rerun must not rewrite
    assert point_file.read_text() == content


# ---------------------------------------------------------------------------
# Norm fluctuations
# ---------------------------------------------------------------------------


def test_norm_fluctuation_zero_for_deterministic_ensemble():
    params = RBMParameters(6, 4, 0.0, 0.0)
    assert norm_fluctuation_statistic(params, 10) == 0.0


def test_norm_fluctuation_from_logs_validation():
    with pytest.raises(ValueError):
        norm_fluctuation_from_logs(4, [1.0])
    assert norm_fluctuation_from_logs(4, [2.0, 2.0, 2.0]) == 0.0


def test_norm_fluctuation_decreases_with_n_in_symmetric_phase():
    # Fixed hidden-unit density above 1, still below the transition.
    stat_small = norm_fluctuation_statistic(
        RBMParameters(8, 12, 0.0, 4.0), 1200, master_seed=12
    )
    stat_large = norm_fluctuation_statistic(
        RBMParameters(12, 18, 0.0, 4.0), 1200, master_seed=12
    )
    assert stat_large < stat_small


# ---------------------------------------------------------------------------
# Finite-size fit
# ---------------------------------------------------------------------------


def test_fit_exact_quadratic():
    pts = [(1.0 / n, 2.0 - 3.0 / n + 5.0 / n**2, 0.2) for n in (8, 10, 12, 14, 16)]
    fit = finite_size_fit(pts)
    assert np.allclose(fit.coefficients, [2.0, -3.0, 5.0], atol=1e-10)
    assert fit.intercept == pytest.approx(2.0, abs=1e-10)
    assert fit.confidence_halfwidth() == pytest.approx(0.0, abs=1e-9)
    assert np.allclose(fit.predict([0.1]), 2.0 - 0.3 + 0.05)


def test_fit_validation():
    with pytest.raises(ValueError):
        finite_size_fit([(0.1, 1.0, 0.1)] * 3)
    with pytest.raises(ValueError):
        finite_size_fit([(0.1, 1.0, 0.0), (0.2, 1.0, 0.1),
                         (0.3, 1.0, 0.1), (0.4, 1.0, 0.1)])
    with pytest.raises(ValueError):
        finite_size_fit([(0.1, 1.0, 0.1)] * 5)  # identical abscissae: singular


def test_fit_calibration_coverage():
    # With exact noise levels the intercept estimator has the known sampling
    # deviation sqrt[(X^T W X)^{-1}]_00; the truth lands within 2 of those in
    # ~95% of synthetic trials.
    rng = np.random.default_rng(0)
    inv_n = 1.0 / np.array([8.0, 10.0, 12.0, 14.0, 16.0, 20.0])
    sigma = 0.05
    design = np.column_stack([np.ones_like(inv_n), inv_n, inv_n**2]) / sigma
    true_sd = np.sqrt(np.linalg.inv(design.T @ design)[0, 0])
    truth = 1.3
    hits = 0
    trials = 200
    for _ in range(trials):
        y = truth + 2.0 * inv_n - 4.0 * inv_n**2 + rng.normal(0, sigma, len(inv_n))
        fit = finite_size_fit(list(zip(inv_n, y, np.full(len(inv_n), sigma))))
        if abs(fit.intercept - truth) <= 2.0 * true_sd:
            hits += 1
    assert hits >= 0.90 * trials


# ---------------------------------------------------------------------------
# Design obstruction checks
# ---------------------------------------------------------------------------


def test_design_check_rbm_symmetry_and_null():
    params = RBMParameters(8, 6, 0.0, 1.0)
    report = design_obstruction_check(params, 300, master_seed=3, n_pairs=16)
    assert report.symmetry_exact
    assert report.max_symmetry_violation == 0.0
    assert report.max_null_component < 1e-10


def test_design_check_rbm_positive_offdiagonal():
    # Order-one coupling scale keeps the coherence between single-flip
    # configurations comparable to the diagonal.
    params = RBMParameters(10, 8, 0.0, 1.0)
    report = design_obstruction_check(params, 2000, master_seed=5, n_pairs=24)
    assert report.mean_expectation > 0.1
    assert report.min_expectation > 0.0


def test_design_check_haar_control():
    params = RBMParameters(8, 6, 0.0, 1.0)
    report = design_obstruction_check(
        params, 2000, master_seed=4, n_pairs=16, ensemble="haar"
    )
    assert not report.symmetry_exact
    pooled_se = float(np.mean(report.pair_stderr)) / np.sqrt(len(report.pair_stderr))
    assert abs(report.mean_expectation) < 5 * pooled_se + 0.02


def test_design_check_validation():
    params = RBMParameters(8, 6, 0.0, 1.0)
    with pytest.raises(ValueError):
        design_obstruction_check(params, 10, ensemble="bogus")
    with pytest.raises(CapacityError):
        design_obstruction_check(RBMParameters(16, 4, 0.0, 1.0), 1)
