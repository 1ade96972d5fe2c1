"""Parsing, validation, and serialization shared by the CLI and the suites.

Configs are strict JSON: unknown keys are rejected with their path, duplicate
keys are rejected, and weight pairs destined for suites that assume the
attained regime are checked at parse time so a bad run never starts.  Every
error raised here is a ConfigError carrying a machine-readable ``code``.

Numbers in text formats use 17 significant digits, which round-trips binary64
exactly.
"""

from __future__ import annotations

import copy
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .geometry import HalfPlanePolygon, WeightPair, sharp_violation
from .special import QuadratureConfig
from .spectral import GridFunction

__all__ = [
    "ConfigError",
    "RunConfig",
    "SUITE_NAMES",
    "SuiteSettings",
    "default_config",
    "fmt",
    "load_config",
    "parse_config",
    "parse_grid",
    "parse_polygon",
    "render_cases_csv",
    "serialize_grid",
    "serialize_polygon",
]

SUITE_NAMES = ("rectangle", "ball", "lemma_a", "stress", "oracles", "spectral")


class ConfigError(Exception):
    """Input rejection with a stable machine-readable code."""

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


def fmt(value: float) -> str:
    """17-significant-digit decimal form; round-trips every binary64 value."""
    return format(float(value), ".17g")


# ---------------------------------------------------------------------------
# run configuration


@dataclass(frozen=True)
class SuiteSettings:
    enabled: bool
    grid: dict
    tolerances: dict
    seed: int | None = None


@dataclass(frozen=True)
class RunConfig:
    seed: int
    output_dir: str
    format: str
    quadrature: QuadratureConfig
    suites: dict[str, SuiteSettings] = field(default_factory=dict)


_ORACLE_PAIRS = [
    [a, round(f * a, 12)] for a in (0.0, 0.5, 1.0, 2.0) for f in (1.0, 1.5, 2.0)
]

_SUITE_DEFAULTS: dict[str, dict] = {
    "rectangle": {
        "grid": {
            "pairs": [[3.0, 1.0], [2.0, 1.0], [1.0, 1.0]],
            "t_values": [1.0, 10.0, 100.0, 1000.0, 10000.0],
        },
        "tolerances": {"formula_rel": 1e-12},
    },
    "ball": {
        "grid": {
            "alpha": 0.0,
            "beta": 1.0,
            "t_values": [2.0, 4.0, 8.0, 16.0, 32.0, 64.0, 128.0, 256.0],
            "n_poly": 720,
        },
        "tolerances": {"slope_rel": 0.05, "fit_slack": 1.3},
    },
    "lemma_a": {
        "grid": {"alpha": 1.0, "z_grid": 1000, "beta_grid": 200},
        "tolerances": {"identity_abs": 1e-12},
    },
    "stress": {
        "grid": {"pairs": [[0.0, 0.0], [1.0, 1.0], [0.5, 0.75]], "count": 10000},
        "tolerances": {"ratio_slack": 1e-9, "steiner_rel": 1e-12},
    },
    "oracles": {
        "grid": {"pairs": _ORACLE_PAIRS, "step_tol": 1e-10},
        "tolerances": {"mutual_rel": 1e-6},
    },
    "spectral": {
        "grid": {"p": 2.0, "count": 10000, "target_area": 2.0},
        "tolerances": {"ratio_slack": 0.0},
    },
}


def _expect(cond: bool, code: str, message: str) -> None:
    if not cond:
        raise ConfigError(code, message)


def _check_number(value, path: str, *, integer: bool = False) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError("type", f"{path}: expected a number (got {value!r})")
    if not math.isfinite(value):
        raise ConfigError("value", f"{path}: number must be finite (got {value!r})")
    if integer and int(value) != value:
        raise ConfigError("type", f"{path}: expected an integer (got {value!r})")
    return int(value) if integer else float(value)


def _check_weight_pair(pair, path: str) -> list[float]:
    _expect(
        isinstance(pair, (list, tuple)) and len(pair) == 2,
        "type",
        f"{path}: expected a [alpha, beta] pair (got {pair!r})",
    )
    alpha = _check_number(pair[0], f"{path}[0]")
    beta = _check_number(pair[1], f"{path}[1]")
    try:
        WeightPair(alpha, beta)
    except ValueError as exc:
        raise ConfigError("region", f"{path}: {exc}") from None
    return [alpha, beta]


def _check_sharp_pair(pair, path: str) -> list[float]:
    alpha, beta = _check_weight_pair(pair, path)
    violated = sharp_violation(WeightPair(alpha, beta))
    _expect(
        violated is None,
        "region",
        f"{path}: weights must lie in the attained regime; violated {violated} "
        f"(got alpha={alpha!r}, beta={beta!r})",
    )
    return [alpha, beta]


def _check_profile_pair(pair, path: str) -> list[float]:
    alpha, beta = _check_weight_pair(pair, path)
    _expect(
        beta + 1.0 - alpha > 0.0,
        "region",
        f"{path}: weights must satisfy alpha < beta + 1 (got alpha={alpha!r}, beta={beta!r})",
    )
    return [alpha, beta]


def _check_t_values(value, path: str, *, minimum: float = 0.0) -> list[float]:
    _expect(isinstance(value, list) and value, "type", f"{path}: expected a nonempty list")
    out = [_check_number(v, f"{path}[{i}]") for i, v in enumerate(value)]
    _expect(all(v > minimum for v in out), "value", f"{path}: every value must exceed {minimum}")
    _expect(
        all(b > a for a, b in zip(out, out[1:])),
        "value",
        f"{path}: values must be strictly increasing",
    )
    return out


def _grid_validators(suite: str, grid: dict, path: str) -> dict:
    out = dict(grid)
    keys = set(grid)

    def num(key: str, *, integer: bool = False, low=None, low_open=False):
        if key not in keys:
            return
        v = _check_number(grid[key], f"{path}.{key}", integer=integer)
        if low is not None:
            ok = v > low if low_open else v >= low
            cmp = ">" if low_open else ">="
            _expect(ok, "value", f"{path}.{key}: must be {cmp} {low} (got {v!r})")
        out[key] = v

    if suite == "rectangle":
        if "pairs" in keys:
            _expect(isinstance(grid["pairs"], list) and grid["pairs"], "type", f"{path}.pairs: expected a nonempty list")
            out["pairs"] = [
                _check_weight_pair(p, f"{path}.pairs[{i}]") for i, p in enumerate(grid["pairs"])
            ]
        if "t_values" in keys:
            out["t_values"] = _check_t_values(grid["t_values"], f"{path}.t_values")
        allowed = {"pairs", "t_values"}
    elif suite == "ball":
        num("alpha", low=0.0)
        num("beta", low=-1.0, low_open=True)
        if "t_values" in keys:
            out["t_values"] = _check_t_values(grid["t_values"], f"{path}.t_values", minimum=2.0 - 1e-15)
        num("n_poly", integer=True, low=8)
        allowed = {"alpha", "beta", "t_values", "n_poly"}
    elif suite == "lemma_a":
        num("alpha", low=0.0, low_open=True)
        num("z_grid", integer=True, low=100)
        num("beta_grid", integer=True, low=100)
        allowed = {"alpha", "z_grid", "beta_grid"}
    elif suite == "stress":
        if "pairs" in keys:
            _expect(isinstance(grid["pairs"], list) and grid["pairs"], "type", f"{path}.pairs: expected a nonempty list")
            out["pairs"] = [
                _check_sharp_pair(p, f"{path}.pairs[{i}]") for i, p in enumerate(grid["pairs"])
            ]
        num("count", integer=True, low=1)
        allowed = {"pairs", "count"}
    elif suite == "oracles":
        if "pairs" in keys:
            _expect(isinstance(grid["pairs"], list) and grid["pairs"], "type", f"{path}.pairs: expected a nonempty list")
            out["pairs"] = [
                _check_profile_pair(p, f"{path}.pairs[{i}]") for i, p in enumerate(grid["pairs"])
            ]
        num("step_tol", low=0.0, low_open=True)
        allowed = {"pairs", "step_tol"}
    else:  # spectral
        num("p", low=1.0, low_open=True)
        num("count", integer=True, low=1)
        num("target_area", low=0.0, low_open=True)
        allowed = {"p", "count", "target_area"}

    unknown = keys - allowed
    if unknown:
        raise ConfigError(
            "unknown-key",
            f"{path}: unknown grid key '{sorted(unknown)[0]}' "
            f"(allowed: {', '.join(sorted(allowed))})",
        )
    return out


def _parse_suite(suite: str, block, path: str) -> SuiteSettings:
    _expect(isinstance(block, dict), "type", f"{path}: expected an object")
    defaults = _SUITE_DEFAULTS[suite]
    enabled = True
    seed = None
    grid_inline: dict = {}
    grid_block: dict = {}
    tolerances = copy.deepcopy(defaults["tolerances"])

    for key, value in block.items():
        if key == "enabled":
            _expect(isinstance(value, bool), "type", f"{path}.enabled: expected true or false")
            enabled = value
        elif key == "seed":
            if value is not None:
                seed = _check_number(value, f"{path}.seed", integer=True)
        elif key == "grid":
            _expect(isinstance(value, dict), "type", f"{path}.grid: expected an object")
            grid_block = value
        elif key == "tolerances":
            _expect(isinstance(value, dict), "type", f"{path}.tolerances: expected an object")
            for tk, tv in value.items():
                _expect(
                    tk in tolerances,
                    "unknown-key",
                    f"{path}.tolerances: unknown key '{tk}' (allowed: {', '.join(sorted(tolerances))})",
                )
                tolerances[tk] = _check_number(tv, f"{path}.tolerances.{tk}")
        elif key in defaults["grid"]:
            grid_inline[key] = value
        else:
            raise ConfigError(
                "unknown-key",
                f"{path}: unknown key '{key}' (allowed: enabled, grid, tolerances, seed, "
                f"{', '.join(sorted(defaults['grid']))})",
            )

    overlap = set(grid_inline) & set(grid_block)
    if overlap:
        raise ConfigError(
            "duplicate-key",
            f"{path}: key '{sorted(overlap)[0]}' given both inline and inside 'grid'",
        )
    merged = copy.deepcopy(defaults["grid"])
    merged.update(grid_block)
    merged.update(grid_inline)
    grid = _grid_validators(suite, merged, f"{path}.grid")
    return SuiteSettings(enabled=enabled, grid=grid, tolerances=tolerances, seed=seed)


def _reject_duplicates(pairs):
    seen = set()
    for key, _ in pairs:
        if key in seen:
            raise ConfigError("duplicate-key", f"duplicate key '{key}' in the same object")
        seen.add(key)
    return dict(pairs)


def default_config() -> RunConfig:
    return parse_config("{}")


def parse_config(text: str) -> RunConfig:
    try:
        doc = json.loads(text, object_pairs_hook=_reject_duplicates)
    except json.JSONDecodeError as exc:
        raise ConfigError(
            "syntax", f"config is not valid JSON: {exc.msg} at line {exc.lineno} column {exc.colno}"
        ) from None
    _expect(isinstance(doc, dict), "type", "config: top level must be an object")

    seed = 1905
    output_dir = "halfiso-report"
    out_format = "csv"
    quadrature = QuadratureConfig()
    suite_blocks: dict = {}

    for key, value in doc.items():
        if key == "seed":
            seed = _check_number(value, "config.seed", integer=True)
        elif key == "output_dir":
            _expect(isinstance(value, str) and value, "type", "config.output_dir: expected a nonempty string")
            output_dir = value
        elif key == "format":
            _expect(
                value in ("csv", "json"),
                "value",
                f"config.format: expected 'csv' or 'json' (got {value!r})",
            )
            out_format = value
        elif key == "quadrature":
            _expect(isinstance(value, dict), "type", "config.quadrature: expected an object")
            allowed = {"level", "abs_tol", "max_evals"}
            unknown = set(value) - allowed
            if unknown:
                raise ConfigError(
                    "unknown-key", f"config.quadrature: unknown key '{sorted(unknown)[0]}'"
                )
            kwargs = {}
            if "level" in value:
                kwargs["level"] = _check_number(value["level"], "config.quadrature.level", integer=True)
            if "abs_tol" in value:
                kwargs["abs_tol"] = _check_number(value["abs_tol"], "config.quadrature.abs_tol")
            if "max_evals" in value:
                kwargs["max_evals"] = _check_number(value["max_evals"], "config.quadrature.max_evals", integer=True)
            try:
                quadrature = QuadratureConfig(**kwargs)
            except ValueError as exc:
                raise ConfigError("value", f"config.quadrature: {exc}") from None
        elif key == "suites":
            _expect(isinstance(value, dict), "type", "config.suites: expected an object")
            suite_blocks = value
        else:
            raise ConfigError(
                "unknown-key",
                f"config: unknown key '{key}' (allowed: seed, output_dir, format, quadrature, suites)",
            )

    suites: dict[str, SuiteSettings] = {}
    for name, block in suite_blocks.items():
        _expect(
            name in SUITE_NAMES,
            "unknown-key",
            f"config.suites: unknown suite '{name}' (known: {', '.join(SUITE_NAMES)})",
        )
        suites[name] = _parse_suite(name, block, f"config.suites.{name}")
    for name in SUITE_NAMES:
        if name not in suites:
            suites[name] = _parse_suite(name, {}, f"config.suites.{name}")

    return RunConfig(
        seed=seed,
        output_dir=output_dir,
        format=out_format,
        quadrature=quadrature,
        suites=suites,
    )


def load_config(path: str | Path) -> RunConfig:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise ConfigError("io", f"cannot read config {p}: {exc}") from None
    return parse_config(text)


# ---------------------------------------------------------------------------
# polygon text format: one "x y" line per vertex, blank line between loops


def parse_polygon(text: str) -> HalfPlanePolygon:
    loops: list[list[tuple[float, float]]] = []
    current: list[tuple[float, float]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            if current:
                loops.append(current)
                current = []
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ConfigError(
                "polygon", f"line {lineno}: expected two numbers separated by whitespace"
            )
        try:
            x, y = float(parts[0]), float(parts[1])
        except ValueError:
            raise ConfigError("polygon", f"line {lineno}: could not parse numbers") from None
        if not (math.isfinite(x) and math.isfinite(y)):
            raise ConfigError("polygon", f"line {lineno}: coordinates must be finite")
        if y < 0.0:
            raise ConfigError(
                "polygon", f"line {lineno}: vertex must satisfy y >= 0 (got y={fmt(y)})"
            )
        current.append((x, y))
    if current:
        loops.append(current)
    if not loops:
        raise ConfigError("polygon", "no vertices found")
    for i, loop in enumerate(loops):
        if len(loop) < 3:
            raise ConfigError("polygon", f"loop {i} has fewer than 3 vertices")
    try:
        return HalfPlanePolygon.from_loops(loops)
    except ValueError as exc:
        raise ConfigError("polygon", str(exc)) from None


def serialize_polygon(poly: HalfPlanePolygon) -> str:
    chunks = []
    for loop in poly.loops:
        chunks.append("\n".join(f"{fmt(x)} {fmt(y)}" for x, y in loop))
    return "\n\n".join(chunks) + "\n"


# ---------------------------------------------------------------------------
# grid-function text format: "nx ny spacing x0 y0" header, then row-major rows


def parse_grid(text: str) -> GridFunction:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ConfigError("grid", "empty grid file")
    head = lines[0].split()
    if len(head) != 5:
        raise ConfigError("grid", "line 1: header must be 'nx ny spacing x0 y0'")
    try:
        nx, ny = int(head[0]), int(head[1])
        spacing, x0, y0 = float(head[2]), float(head[3]), float(head[4])
    except ValueError:
        raise ConfigError("grid", "line 1: could not parse header numbers") from None
    if len(lines) - 1 != ny:
        raise ConfigError("grid", f"expected {ny} value rows, found {len(lines) - 1}")
    values = np.empty((ny, nx))
    for j, raw in enumerate(lines[1:], start=2):
        parts = raw.split()
        if len(parts) != nx:
            raise ConfigError("grid", f"line {j}: expected {nx} values, found {len(parts)}")
        try:
            values[j - 2] = [float(p) for p in parts]
        except ValueError:
            raise ConfigError("grid", f"line {j}: could not parse numbers") from None
    try:
        return GridFunction(values, spacing, x0, y0)
    except ValueError as exc:
        raise ConfigError("grid", str(exc)) from None


def serialize_grid(u: GridFunction) -> str:
    header = f"{u.nx} {u.ny} {fmt(u.spacing)} {fmt(u.x0)} {fmt(u.y0)}"
    rows = (" ".join(fmt(v) for v in row) for row in u.values)
    return header + "\n" + "\n".join(rows) + "\n"


# ---------------------------------------------------------------------------
# delimited output


def render_cases_csv(fieldnames: list[str], rows: list[dict]) -> str:
    """Deterministic CSV text: named header plus 17-significant-digit reals."""
    out = [",".join(fieldnames)]
    for row in rows:
        cells = []
        for name in fieldnames:
            v = row.get(name, "")
            if isinstance(v, bool):
                cells.append("true" if v else "false")
            elif isinstance(v, (int, np.integer)):
                cells.append(str(int(v)))
            elif isinstance(v, (float, np.floating)):
                cells.append(fmt(v))
            else:
                cells.append(str(v))
        out.append(",".join(cells))
    return "\n".join(out) + "\n"
