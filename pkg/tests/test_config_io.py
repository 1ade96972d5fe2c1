import json

import numpy as np
import pytest

from halfiso.config_io import (
    ConfigError,
    SUITE_NAMES,
    default_config,
    parse_config,
    parse_grid,
    parse_polygon,
    render_cases_csv,
    serialize_grid,
    serialize_polygon,
)
from halfiso.geometry import HalfPlanePolygon
from halfiso.spectral import GridFunction


def test_default_config_covers_every_suite():
    cfg = default_config()
    assert set(cfg.suites) == set(SUITE_NAMES)
    assert all(s.enabled for s in cfg.suites.values())
    assert cfg.format == "csv"
    assert cfg.suites["lemma_a"].grid["z_grid"] >= 100


def test_minimal_config_fills_defaults():
    cfg = parse_config('{"suites": {"lemma_a": {"alpha": 2.5}}}')
    assert cfg.suites["lemma_a"].grid["alpha"] == 2.5
    assert cfg.suites["lemma_a"].grid["beta_grid"] == default_config().suites["lemma_a"].grid["beta_grid"]
    assert cfg.suites["rectangle"].enabled


def test_unknown_top_level_key_rejected():
    with pytest.raises(ConfigError) as exc:
        parse_config('{"outdir": "x"}')
    assert exc.value.code == "unknown-key"
    assert "outdir" in str(exc.value)


def test_unknown_suite_key_cites_path():
    with pytest.raises(ConfigError) as exc:
        parse_config('{"suites": {"rectangle": {"gird": {}}}}')
    assert exc.value.code == "unknown-key"
    assert "config.suites.rectangle" in str(exc.value)
    assert "gird" in str(exc.value)


def test_unknown_suite_name_rejected():
    with pytest.raises(ConfigError) as exc:
        parse_config('{"suites": {"rectangles": {}}}')
    assert exc.value.code == "unknown-key"


def test_duplicate_key_rejected():
    text = '{"seed": 1, "seed": 2}'
    with pytest.raises(ConfigError) as exc:
        parse_config(text)
    assert exc.value.code == "duplicate-key"
    assert "seed" in str(exc.value)


def test_syntax_error_reports_position():
    with pytest.raises(ConfigError) as exc:
        parse_config('{"seed": }')
    assert exc.value.code == "syntax"
    assert "line 1" in str(exc.value)


def test_stress_pair_outside_attained_regime_names_inequality():
    with pytest.raises(ConfigError) as exc:
        parse_config('{"suites": {"stress": {"pairs": [[3, 1]]}}}')
    assert exc.value.code == "region"
    assert "alpha < beta + 1" in str(exc.value)

    with pytest.raises(ConfigError) as exc:
        parse_config('{"suites": {"stress": {"pairs": [[0.5, 1.5]]}}}')
    assert exc.value.code == "region"
    assert "beta <= 2 alpha" in str(exc.value)


def test_invalid_weight_pair_rejected():
    with pytest.raises(ConfigError) as exc:
        parse_config('{"suites": {"rectangle": {"pairs": [[-1, 0]]}}}')
    assert exc.value.code == "region"


def test_format_restricted_to_csv_or_json():
    assert parse_config('{"format": "json"}').format == "json"
    with pytest.raises(ConfigError) as exc:
        parse_config('{"format": "xml"}')
    assert exc.value.code == "value"


def test_tolerance_override_and_unknown_tolerance():
    cfg = parse_config('{"suites": {"stress": {"tolerances": {"ratio_slack": 1e-8}}}}')
    assert cfg.suites["stress"].tolerances["ratio_slack"] == 1e-8
    with pytest.raises(ConfigError) as exc:
        parse_config('{"suites": {"stress": {"tolerances": {"slack": 1e-8}}}}')
    assert exc.value.code == "unknown-key"


def test_inline_and_grid_block_conflict():
    text = '{"suites": {"lemma_a": {"alpha": 1.0, "grid": {"alpha": 2.0}}}}'
    with pytest.raises(ConfigError) as exc:
        parse_config(text)
    assert exc.value.code == "duplicate-key"


def test_quadrature_block():
    cfg = parse_config('{"quadrature": {"level": 8, "abs_tol": 1e-10}}')
    assert cfg.quadrature.level == 8
    assert cfg.quadrature.abs_tol == 1e-10
    with pytest.raises(ConfigError):
        parse_config('{"quadrature": {"levels": 8}}')


def test_enabled_flag_and_seed():
    cfg = parse_config('{"suites": {"ball": {"enabled": false, "seed": 7}}}')
    assert not cfg.suites["ball"].enabled
    assert cfg.suites["ball"].seed == 7
    with pytest.raises(ConfigError) as exc:
        parse_config('{"suites": {"ball": {"enabled": "yes"}}}')
    assert exc.value.code == "type"


def test_value_constraints():
    with pytest.raises(ConfigError):
        parse_config('{"suites": {"rectangle": {"t_values": [2, 1]}}}')
    with pytest.raises(ConfigError):
        parse_config('{"suites": {"ball": {"t_values": [1.5, 3]}}}')
    with pytest.raises(ConfigError):
        parse_config('{"suites": {"lemma_a": {"z_grid": 50}}}')
    with pytest.raises(ConfigError):
        parse_config('{"seed": 1.5}')
    with pytest.raises(ConfigError):
        parse_config('{"suites": {"spectral": {"p": 1.0}}}')


def _square(side=1.0):
    return HalfPlanePolygon([(0, 0), (side, 0), (side, side), (0, side)])


def test_polygon_roundtrip_byte_identity():
    poly = HalfPlanePolygon([(0, 0), (1 / 3, 0), (1 / 3, 0.7), (0, 0.7)])
    text = serialize_polygon(poly)
    again = parse_polygon(text)
    assert serialize_polygon(again) == text
    assert np.array_equal(again.vertices, poly.vertices)


def test_polygon_minimal_triangle():
    poly = parse_polygon("0 0\n1 0\n0 1")
    assert poly.vertices.shape == (3, 2)


def test_polygon_large_roundtrip_byte_identity():
    from halfiso.optimal_set import sample_optimal_polygon
    from halfiso.geometry import WeightPair

    poly = sample_optimal_polygon(WeightPair(1, 1), 5000)
    assert len(poly.vertices) == 10001
    text = serialize_polygon(poly)
    assert serialize_polygon(parse_polygon(text)) == text


def test_polygon_two_loops_roundtrip():
    poly = HalfPlanePolygon.from_loops(
        [
            [(0, 0), (1, 0), (1, 1), (0, 1)],
            [(2.5, 0.25), (3.5, 0.25), (3.5, 1.25), (2.5, 1.25)],
        ]
    )
    text = serialize_polygon(poly)
    assert "\n\n" in text
    again = parse_polygon(text)
    assert again.component_breaks == poly.component_breaks
    assert np.array_equal(again.vertices, poly.vertices)


def test_polygon_parse_errors_name_lines():
    with pytest.raises(ConfigError) as exc:
        parse_polygon("0 0\n1 0\n1 1 1\n")
    assert exc.value.code == "polygon"
    assert "line 3" in str(exc.value)

    with pytest.raises(ConfigError) as exc:
        parse_polygon("0 0\n1 -0.5\n1 1\n")
    assert "line 2" in str(exc.value)
    assert "y >= 0" in str(exc.value)

    with pytest.raises(ConfigError) as exc:
        parse_polygon("0 0\n1 0\n")
    assert "fewer than 3" in str(exc.value)

    with pytest.raises(ConfigError):
        parse_polygon("")

    with pytest.raises(ConfigError):
        parse_polygon("0 0\n3 0\n0 2\n2 1\n")


def test_grid_roundtrip():
    g = GridFunction(np.arange(12.0).reshape(3, 4) + 0.25, 0.125, -1.5, 0.5)
    text = serialize_grid(g)
    head = text.splitlines()[0].split()
    assert head[:2] == ["4", "3"]
    again = parse_grid(text)
    assert np.array_equal(again.values, g.values)
    assert (again.spacing, again.x0, again.y0) == (g.spacing, g.x0, g.y0)
    assert serialize_grid(again) == text


def test_grid_parse_errors():
    with pytest.raises(ConfigError):
        parse_grid("")
    with pytest.raises(ConfigError):
        parse_grid("4 3 0.1 0\n")
    with pytest.raises(ConfigError) as exc:
        parse_grid("2 2 0.1 0 0.5\n1 2\n3\n")
    assert "line 3" in str(exc.value)
    with pytest.raises(ConfigError):
        parse_grid("2 2 0.1 0 0.5\n1 2\n")


def test_render_cases_csv_deterministic():
    rows = [
        {"case": 1, "alpha": 0.1, "ok": True},
        {"case": 2, "alpha": 1.0 / 3.0, "ok": False},
    ]
    text = render_cases_csv(["case", "alpha", "ok"], rows)
    assert text == (
        "case,alpha,ok\n"
        "1,0.10000000000000001,true\n"
        "2,0.33333333333333331,false\n"
    )
    assert float(text.splitlines()[2].split(",")[1]) == 1.0 / 3.0
    assert render_cases_csv(["case", "alpha", "ok"], rows) == text


def test_config_roundtrips_through_json():
    cfg = default_config()
    blob = {
        "seed": cfg.seed,
        "format": cfg.format,
        "suites": {name: {"enabled": s.enabled} for name, s in cfg.suites.items()},
    }
    again = parse_config(json.dumps(blob))
    assert again.seed == cfg.seed
    assert set(again.suites) == set(cfg.suites)
