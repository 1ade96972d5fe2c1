import json
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from halfiso.config_io import parse_config
from halfiso.geometry import WeightPair, isoperimetric_ratio, weighted_area
from halfiso.harness import (
    ORACLE_GRID,
    SweepReport,
    _convex_hull,
    ball_sequence,
    full_report,
    lemma_a_g,
    lemma_a_sweep,
    oracle_sweep,
    random_polygon,
    random_polygon_stress,
    rectangle_sequence,
    run_suite,
    spectral_suite,
)
from halfiso.optimal_set import mu_closed_form


def test_sweep_report_summary_consistency():
    cases = [
        {"x": 1, "margin": 0.5, "ok": True},
        {"x": 2, "margin": -0.25, "ok": False},
        {"x": 3, "margin": math.inf, "ok": True},
    ]
    rep = SweepReport.from_cases("demo", "grid", cases, ["note"], 0.0)
    assert rep.failures == 1
    assert not rep.passed
    assert rep.min_margin == -0.25
    assert rep.max_violation == 0.25
    s = rep.summary()
    assert set(s) == {"suite", "cases", "failures", "min_margin", "runtime_ms"}
    assert s["cases"] == 3 and s["failures"] == 1


def test_rectangle_boundary_case_value():
    rep = rectangle_sequence(WeightPair(1, 0), [10.0])
    assert rep.cases[0]["ratio_polygon"] == pytest.approx(1.1, abs=1e-12)
    assert rep.cases[0]["ratio_polygon"] > 1.0
    assert rep.passed


def test_rectangle_vanishing_case_decreases():
    rep = rectangle_sequence(WeightPair(3, 1), [1.0, 10.0, 100.0, 1000.0])
    rs = [c["ratio_polygon"] for c in rep.cases]
    assert all(b < a for a, b in zip(rs, rs[1:]))
    assert rep.passed


def test_rectangle_sharp_case_floor():
    rep = rectangle_sequence(WeightPair(0, 0), [0.5, 1.0, 2.0, 4.0, 8.0])
    mu = mu_closed_form(WeightPair(0, 0))
    rs = [c["ratio_polygon"] for c in rep.cases]
    assert min(rs) >= mu
    # (t+2)/sqrt(t) is minimized at t=2 with value 4/sqrt(2)
    assert rs[2] == pytest.approx(4.0 / math.sqrt(2.0), rel=1e-14)
    assert min(rs) == rs[2]
    assert rep.passed


def test_rectangle_input_validation():
    with pytest.raises(ValueError):
        rectangle_sequence(WeightPair(1, 1), [])
    with pytest.raises(ValueError):
        rectangle_sequence(WeightPair(1, 1), [2.0, 1.0])


def test_ball_decay_matches_exponent():
    rep = ball_sequence(WeightPair(0, 1), [2.0, 4.0, 8.0, 16.0, 32.0, 64.0])
    slope = [c for c in rep.cases if c["kind"] == "slope"][0]
    assert slope["value"] == pytest.approx(-1.0 / 3.0, rel=1e-6)
    pts = [c["value"] for c in rep.cases if c["kind"] == "point"]
    assert all(b < a for a, b in zip(pts, pts[1:]))
    assert rep.passed


def test_ball_unweighted_is_constant():
    rep = ball_sequence(WeightPair(0, 0), [2.0, 8.0, 32.0], n_poly=256)
    pts = [c["value"] for c in rep.cases if c["kind"] == "point"]
    assert max(pts) - min(pts) <= 1e-12 * pts[0]
    assert rep.passed


def test_ball_second_decay_pair():
    rep = ball_sequence(WeightPair(1, 3), [2.0, 4.0, 8.0, 16.0, 32.0, 64.0, 128.0, 256.0])
    slope = [c for c in rep.cases if c["kind"] == "slope"][0]
    assert slope["reference"] == pytest.approx(-0.2, abs=1e-15)
    assert rep.passed


def test_ball_input_validation():
    with pytest.raises(ValueError):
        ball_sequence(WeightPair(0, 1), [1.0, 4.0])
    with pytest.raises(ValueError):
        ball_sequence(WeightPair(0, 1), [4.0, 2.0])
    with pytest.raises(ValueError):
        ball_sequence(WeightPair(0, 1), [2.0], n_poly=4)


def test_lemma_a_closed_form_point():
    assert float(lemma_a_g(1.0, 0.5, 1.0)) == pytest.approx(1.125, abs=1e-15)
    assert float(lemma_a_g(2.0, 0.0, 3.0)) == 2.0
    assert float(lemma_a_g(2.0, 1.0, 3.0)) == 0.0


def test_lemma_a_sweep_positive():
    rep = lemma_a_sweep(1.0, 200, 100)
    assert rep.passed
    mins = [c["value"] for c in rep.cases if c["kind"] == "positivity"]
    assert min(mins) > 0.0
    ident = [c for c in rep.cases if c["kind"] == "boundary_identity"][0]
    assert ident["value"] <= 1e-12


def test_lemma_a_validation():
    with pytest.raises(ValueError):
        lemma_a_sweep(0.0, 200, 100)
    with pytest.raises(ValueError):
        lemma_a_sweep(1.0, 50, 100)


def test_random_polygon_deterministic():
    p1, kind1, _ = random_polygon(99, 7)
    p2, kind2, _ = random_polygon(99, 7)
    assert kind1 == kind2
    assert np.array_equal(p1.vertices, p2.vertices)
    p3, _, _ = random_polygon(100, 7)
    assert not np.array_equal(p1.vertices, p3.vertices)


def test_random_polygon_mixes_kinds_and_stays_admissible():
    kinds = set()
    for i in range(12):
        poly, kind, retries = random_polygon(5, i)
        kinds.add(kind)
        assert retries == 0
        assert poly.vertices[:, 1].min() >= 0.0
    assert kinds == {"hull", "star", "boxes"}


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.integers(4, 60))
def test_convex_hull_contains_points(seed, m):
    rng = np.random.Generator(np.random.Philox(key=[seed, 0]))
    pts = rng.uniform(-1.0, 1.0, (m, 2))
    hull = _convex_hull(pts)
    a = hull
    b = np.roll(hull, -1, axis=0)
    edge = b - a
    nxt = np.roll(edge, -1, axis=0)
    # counterclockwise and convex
    cross = edge[:, 0] * nxt[:, 1] - edge[:, 1] * nxt[:, 0]
    assert np.all(cross > 0.0)
    # every input point on the inner side of every edge
    rel = pts[None, :, :] - a[:, None, :]
    side = edge[:, None, 0] * rel[:, :, 1] - edge[:, None, 1] * rel[:, :, 0]
    assert side.min() >= -1e-9


def test_convex_hull_rejects_collinear():
    pts = np.column_stack([np.linspace(0, 1, 8), np.linspace(0, 2, 8)])
    with pytest.raises(ValueError):
        _convex_hull(pts)


def test_stress_small_run_passes():
    rep = random_polygon_stress(WeightPair(0.5, 0.75), 120, seed=3, workers=1)
    assert rep.passed
    assert len(rep.cases) == 120
    assert min(c["ratio_margin"] for c in rep.cases) > 0.0
    assert max(c["steiner_dp_rel"] for c in rep.cases) <= 1e-12
    assert max(c["steiner_da_rel"] for c in rep.cases) <= 1e-12


def test_stress_rejects_weights_without_minimizer():
    with pytest.raises(ValueError) as exc:
        random_polygon_stress(WeightPair(3, 1), 10, seed=0)
    assert "alpha < beta + 1" in str(exc.value)
    with pytest.raises(ValueError):
        random_polygon_stress(WeightPair(1, 1), 0, seed=0)


def test_oracle_sweep_grid_agrees():
    rep = oracle_sweep([(1.0, 1.0), (0.5, 1.0)])
    assert rep.passed
    assert max(c["rel_spread"] for c in rep.cases) <= 1e-6
    assert len(ORACLE_GRID) == 12


def test_spectral_suite_margins():
    rep = spectral_suite(2.0, 90, 2.0, seed=1, workers=1)
    assert rep.passed
    assert all(c["area"] <= 2.0 + 1e-12 for c in rep.cases)
    assert min(c["margin"] for c in rep.cases) >= 0.0


def test_run_suite_dispatch_uses_config():
    cfg = parse_config(
        '{"seed": 4, "suites": {"stress": {"count": 30}, "lemma_a": {"z_grid": 150, "beta_grid": 110}}}'
    )
    rep = run_suite("stress", cfg, workers=1)
    assert rep.suite == "stress"
    assert len(rep.cases) == 30 * 3
    rep = run_suite("lemma_a", cfg)
    assert len([c for c in rep.cases if c["kind"] == "positivity"]) == 110


def test_full_report_single_suite(tmp_path):
    cfg = {
        "output_dir": str(tmp_path / "out"),
        "suites": {
            name: {"enabled": name == "lemma_a"}
            for name in ("rectangle", "ball", "lemma_a", "stress", "oracles", "spectral")
        },
    }
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(cfg))
    code, reports = full_report(path)
    assert code == 0
    assert [r.suite for r in reports] == ["lemma_a"]
    out = tmp_path / "out"
    assert (out / "lemma_a.csv").exists()
    assert (out / "lemma_a.png").exists()
    summary = json.loads((out / "summary.json").read_text())
    assert summary[0]["suite"] == "lemma_a"
    assert summary[0]["failures"] == 0


def test_full_report_failure_sets_exit_code(tmp_path):
    cfg = {
        "format": "json",
        "suites": {
            name: {"enabled": name == "spectral"}
            for name in ("rectangle", "ball", "lemma_a", "stress", "oracles", "spectral")
        },
    }
    cfg["suites"]["spectral"].update({"count": 25, "tolerances": {"ratio_slack": -100.0}})
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(cfg))
    code, reports = full_report(path, out_dir=tmp_path / "out", workers=1)
    assert code == 1
    assert reports[0].failures == 25
    assert (tmp_path / "out" / "spectral.json").exists()


def test_full_report_deterministic_csv(tmp_path):
    cfg = {"suites": {n: {"enabled": n in ("stress",)} for n in
                      ("rectangle", "ball", "lemma_a", "stress", "oracles", "spectral")}}
    cfg["suites"]["stress"].update({"count": 40})
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(cfg))
    full_report(path, out_dir=tmp_path / "a", render_figures=False)
    full_report(path, out_dir=tmp_path / "b", render_figures=False)
    assert (tmp_path / "a" / "stress.csv").read_bytes() == (tmp_path / "b" / "stress.csv").read_bytes()


def test_stress_thread_pool_matches_serial():
    serial = random_polygon_stress(WeightPair(0, 0), 24, seed=8, workers=1)
    pooled = random_polygon_stress(WeightPair(0, 0), 24, seed=8, workers=4)
    assert [c["ratio"] for c in serial.cases] == [c["ratio"] for c in pooled.cases]
