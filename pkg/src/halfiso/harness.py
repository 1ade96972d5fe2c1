"""Batch verification suites over the weighted isoperimetric machinery.

Each suite evaluates a family of cases, attaches a signed slack ``margin`` to
every case (nonnegative iff the case passes, with any tolerance already folded
in), and returns a SweepReport whose summary is derived from the case records.
Randomized suites draw from a counter-based generator keyed by (seed, case
index), so results are reproducible and independent of evaluation order;
degenerate random polygons are regenerated on a fresh stream and counted.
"""

from __future__ import annotations

import json
import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .config_io import ConfigError, RunConfig, default_config, load_config, render_cases_csv
from .euler import shoot
from .geometry import (
    Classification,
    HalfPlanePolygon,
    WeightPair,
    isoperimetric_ratio,
    scale,
    sharp_violation,
    steiner_symmetrize,
    weighted_area,
    weighted_perimeter,
)
from .optimal_set import mu_closed_form, optimal_functionals
from .spectral import EigenParams, cheeger_lower_bound, eigenvalue_lower_bound, param_map, subset_ratio_check

__all__ = [
    "SweepReport",
    "ball_sequence",
    "full_report",
    "lemma_a_g",
    "lemma_a_sweep",
    "oracle_sweep",
    "random_polygon",
    "random_polygon_stress",
    "rectangle_sequence",
    "run_suite",
    "spectral_suite",
]

ORACLE_GRID = tuple(
    (a, f * a) for a in (0.0, 0.5, 1.0, 2.0) for f in (1.0, 1.5, 2.0)
)


@dataclass(frozen=True)
class SweepReport:
    """Per-case records plus a summary consistent with them."""

    suite: str
    grid: str
    cases: list
    notes: tuple
    min_margin: float
    max_violation: float
    runtime_ms: float

    @property
    def failures(self) -> int:
        return sum(1 for c in self.cases if not c["ok"])

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def summary(self) -> dict:
        return {
            "suite": self.suite,
            "cases": len(self.cases),
            "failures": self.failures,
            "min_margin": self.min_margin,
            "runtime_ms": self.runtime_ms,
        }

    @classmethod
    def from_cases(
        cls, suite: str, grid: str, cases: list, notes: list, started: float
    ) -> "SweepReport":
        margins = [c["margin"] for c in cases if math.isfinite(c["margin"])]
        min_margin = min(margins) if margins else 0.0
        max_violation = max((-m for m in margins if m < 0.0), default=0.0)
        return cls(
            suite=suite,
            grid=grid,
            cases=cases,
            notes=tuple(notes),
            min_margin=min_margin,
            max_violation=max_violation,
            runtime_ms=(time.perf_counter() - started) * 1000.0,
        )


def _map_indexed(fn, n: int, workers: int | None) -> list:
    """Evaluate fn(0..n-1) on a thread pool, results in index order."""
    if workers is None:
        workers = min(8, os.cpu_count() or 1)
    if workers <= 1 or n < 8:
        return [fn(i) for i in range(n)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, range(n)))


# ---------------------------------------------------------------------------
# random polygon generation


def _stream_rng(seed: int, stream: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=[seed & (2**64 - 1), stream]))


def _convex_hull(points: np.ndarray) -> np.ndarray:
    """Counterclockwise hull (monotone chain); rejects flat point sets."""
    pts = points[np.lexsort((points[:, 1], points[:, 0]))]

    def half(seq):
        out: list = []
        for p in seq:
            while len(out) >= 2:
                u = out[-1] - out[-2]
                v = p - out[-2]
                if u[0] * v[1] - u[1] * v[0] > 0.0:
                    break
                out.pop()
            out.append(p)
        return out

    lower = half(pts)
    upper = half(pts[::-1])
    hull = np.array(lower[:-1] + upper[:-1])
    if len(hull) < 3:
        raise ValueError("degenerate hull: fewer than 3 extreme points")
    return hull


def _gen_hull(rng: np.random.Generator) -> HalfPlanePolygon:
    m = int(rng.integers(6, 40))
    y_lo = rng.uniform(0.0, 2.0)
    halfw = rng.uniform(0.4, 2.0)
    height = rng.uniform(0.4, 2.0)
    pts = np.column_stack(
        [rng.uniform(-halfw, halfw, m), y_lo + rng.uniform(0.0, height, m)]
    )
    return HalfPlanePolygon(_convex_hull(pts))


def _gen_star(rng: np.random.Generator) -> HalfPlanePolygon:
    n = int(rng.integers(4, 24))
    ang = 2.0 * math.pi * (np.arange(n) + rng.uniform(0.1, 0.9, n)) / n
    radii = rng.uniform(0.2, 1.0, n) * rng.uniform(0.5, 2.0)
    cx = rng.uniform(-1.0, 1.0)
    cy = radii.max() * rng.uniform(1.0, 2.5)
    verts = np.column_stack([cx + radii * np.cos(ang), cy + radii * np.sin(ang)])
    verts[:, 1] = np.maximum(verts[:, 1], 0.0)
    return HalfPlanePolygon(verts)


def _gen_boxes(rng: np.random.Generator) -> HalfPlanePolygon:
    k = int(rng.integers(2, 4))
    loops = []
    x = rng.uniform(-3.0, -2.0)
    for _ in range(k):
        width = rng.uniform(0.3, 1.5)
        y0 = rng.uniform(0.0, 1.5)
        h = rng.uniform(0.3, 2.0)
        loops.append([(x, y0), (x + width, y0), (x + width, y0 + h), (x, y0 + h)])
        x += width + rng.uniform(0.1, 1.0)
    return HalfPlanePolygon.from_loops(loops)


_GENERATORS = (_gen_hull, _gen_star, _gen_boxes)


def random_polygon(seed: int, index: int) -> tuple[HalfPlanePolygon, str, int]:
    """Deterministic polygon #index: (polygon, kind, regeneration count)."""
    gen = _GENERATORS[index % len(_GENERATORS)]
    for attempt in range(64):
        rng = _stream_rng(seed, index + (attempt << 48))
        try:
            return gen(rng), gen.__name__.removeprefix("_gen_"), attempt
        except ValueError:
            continue
    raise RuntimeError(f"could not generate polygon {index} in 64 attempts")


# ---------------------------------------------------------------------------
# suites


def rectangle_sequence(
    w: WeightPair, t_values, *, formula_rel: float = 1e-12
) -> SweepReport:
    """Boxes (0,t)x(0,1): exact functionals vs the closed ratio formula.

    The ratio is (t + 2/(alpha+1)) / (t/(beta+1))**e with e=(alpha+1)/(beta+2).
    Along increasing t the sequence must decrease to 0 when alpha > beta+1,
    decrease to beta+1 from above when alpha = beta+1, and stay at or above
    mu(alpha, beta) in the attained regime.
    """
    started = time.perf_counter()
    ts = [float(t) for t in t_values]
    if not ts:
        raise ValueError("t_values must be nonempty")
    if any(not t > 0.0 for t in ts) or any(b <= a for a, b in zip(ts, ts[1:])):
        raise ValueError("t_values must be positive and strictly increasing")
    e = w.ratio_exponent
    is_boundary = w.alpha == w.beta + 1.0
    is_vanishing = w.alpha > w.beta + 1.0
    is_sharp = w.classification is Classification.SHARP
    mu = mu_closed_form(w) if is_sharp else math.nan

    cases = []
    prev = math.inf
    for t in ts:
        poly = HalfPlanePolygon([(0.0, 0.0), (t, 0.0), (t, 1.0), (0.0, 1.0)])
        r_poly = isoperimetric_ratio(poly, w)
        r_formula = (t + 2.0 / (w.alpha + 1.0)) / (t / (w.beta + 1.0)) ** e
        rel = abs(r_poly - r_formula) / r_formula
        margins = [formula_rel - rel]
        if is_boundary or is_vanishing:
            margins.append(prev - r_poly)
        if is_boundary:
            margins.append(r_poly - (w.beta + 1.0))
        if is_sharp:
            margins.append(r_poly - mu)
        margin = min(margins)
        cases.append(
            {
                "t": t,
                "ratio_polygon": r_poly,
                "ratio_formula": r_formula,
                "rel_err": rel,
                "margin": margin,
                "ok": margin >= 0.0,
            }
        )
        prev = r_poly
    notes = [f"alpha={w.alpha}, beta={w.beta}"]
    if is_boundary:
        notes.append(f"final gap above beta+1: {cases[-1]['ratio_polygon'] - (w.beta + 1.0):.6e}")
    if is_vanishing:
        notes.append(f"tail shrink factor: {cases[-1]['ratio_polygon'] / cases[0]['ratio_polygon']:.6e}")
    if is_sharp:
        notes.append(f"min ratio - mu: {min(c['ratio_polygon'] for c in cases) - mu:.6e}")
    grid = f"alpha={w.alpha}, beta={w.beta}, t in [{ts[0]}, {ts[-1]}] ({len(ts)} values)"
    return SweepReport.from_cases("rectangle", grid, cases, notes, started)


def _inscribed_disk(t: float, n_poly: int) -> HalfPlanePolygon:
    ang = 2.0 * math.pi * np.arange(n_poly) / n_poly
    return HalfPlanePolygon(np.column_stack([np.cos(ang), t + np.sin(ang)]))


def ball_sequence(
    w: WeightPair,
    t_values,
    n_poly: int = 720,
    *,
    slope_rel: float = 0.05,
    fit_slack: float = 1.3,
) -> SweepReport:
    """Unit disks centered at (0, t): ratio decay against the power law.

    Inscribed regular n_poly-gons stand in for the disks.  When 2*alpha < beta
    the ratio must decrease and stay below C*t**q with q the decay exponent
    alpha - beta*(alpha+1)/(beta+2) and C fitted (with slack) at the first
    point, and the log-log slope over the last decade of t must match q.
    At alpha = beta = 0 the ratio is translation invariant, hence constant.
    """
    started = time.perf_counter()
    ts = [float(t) for t in t_values]
    if not ts:
        raise ValueError("t_values must be nonempty")
    if any(t < 2.0 for t in ts):
        raise ValueError(f"every t must be >= 2 so the disk stays in the half-plane (min got {min(ts)!r})")
    if any(b <= a for a, b in zip(ts, ts[1:])):
        raise ValueError("t_values must be strictly increasing")
    if n_poly < 8:
        raise ValueError(f"n_poly must be at least 8 (got {n_poly!r})")

    q = w.alpha - w.beta * (w.alpha + 1.0) / (w.beta + 2.0)
    decay = 2.0 * w.alpha < w.beta
    constant = w.alpha == 0.0 and w.beta == 0.0
    ratios = [isoperimetric_ratio(_inscribed_disk(t, n_poly), w) for t in ts]

    cases = []
    fit_c = fit_slack * ratios[0] / ts[0] ** q
    for i, (t, r) in enumerate(zip(ts, ratios)):
        if decay:
            bound = fit_c * t**q
            margins = [bound - r]
            if i > 0:
                margins.append(ratios[i - 1] - r)
            margin = min(margins)
        elif constant:
            bound = ratios[0]
            margin = 1e-12 * ratios[0] - abs(r - ratios[0])
        else:
            bound = math.nan
            margin = 0.0
        cases.append(
            {"kind": "point", "t": t, "value": r, "reference": bound,
             "margin": margin, "ok": margin >= 0.0}
        )
    notes = [f"alpha={w.alpha}, beta={w.beta}, exponent q={q:.12g}, n_poly={n_poly}"]
    if decay:
        tail = [(math.log(t), math.log(r)) for t, r in zip(ts, ratios) if t >= ts[-1] / 10.0]
        if len(tail) < 2:
            tail = [(math.log(t), math.log(r)) for t, r in zip(ts[-2:], ratios[-2:])]
        slope = float(np.polyfit([p[0] for p in tail], [p[1] for p in tail], 1)[0])
        margin = slope_rel * abs(q) - abs(slope - q)
        cases.append(
            {"kind": "slope", "t": math.nan, "value": slope, "reference": q,
             "margin": margin, "ok": margin >= 0.0}
        )
        notes.append(f"last-decade slope {slope:.6f} vs exponent {q:.6f} over {len(tail)} points")
    elif not constant:
        notes.append("no decay assertion: weights do not satisfy 2 alpha < beta")
    grid = f"alpha={w.alpha}, beta={w.beta}, t in [{ts[0]}, {ts[-1]}] ({len(ts)} values)"
    return SweepReport.from_cases("ball", grid, cases, notes, started)


def lemma_a_g(alpha: float, z, beta) -> np.ndarray:
    """Four-term comparison polynomial g(z, beta); positive on (0,1) for beta in [alpha, 2 alpha]."""
    z = np.asarray(z, dtype=float)
    beta = np.asarray(beta, dtype=float)
    zp = z ** (beta + 1.0 - alpha)
    first = alpha * (1.0 - z ** (alpha + 1.0) + zp - z ** (beta + 2.0))
    second = (beta + 1.0 - alpha) * (-z + zp - z ** (alpha + 1.0) + z ** (beta + 1.0))
    return first + second


def lemma_a_sweep(
    alpha: float, z_grid: int = 1000, beta_grid: int = 200, *, identity_abs: float = 1e-12
) -> SweepReport:
    """Positivity of g on the open z grid for beta between alpha and 2 alpha.

    Also checks the closed form g(z, alpha) = alpha*(1 - z**(alpha+1))*(1 + z)
    and the endpoint values g(0, beta) = alpha, g(1, beta) = 0.
    """
    started = time.perf_counter()
    if not alpha > 0.0:
        raise ValueError(f"alpha must be positive (got {alpha!r})")
    if z_grid < 100 or beta_grid < 100:
        raise ValueError("z_grid and beta_grid must be at least 100")
    z = np.arange(1, z_grid + 1) / (z_grid + 1.0)
    betas = np.linspace(alpha, 2.0 * alpha, beta_grid)
    g = lemma_a_g(alpha, z[:, None], betas[None, :])

    cases = []
    mins = g.min(axis=0)
    arg = g.argmin(axis=0)
    for j, b in enumerate(betas):
        m = float(mins[j])
        cases.append(
            {"kind": "positivity", "beta": float(b), "value": m,
             "z_at": float(z[arg[j]]), "margin": m, "ok": m > 0.0}
        )
    closed = alpha * (1.0 - z ** (alpha + 1.0)) * (1.0 + z)
    dev = float(np.max(np.abs(g[:, 0] - closed)))
    cases.append(
        {"kind": "boundary_identity", "beta": alpha, "value": dev,
         "z_at": math.nan, "margin": identity_abs - dev, "ok": identity_abs - dev >= 0.0}
    )
    at0 = float(np.max(np.abs(lemma_a_g(alpha, 0.0, betas) - alpha)))
    at1 = float(np.max(np.abs(lemma_a_g(alpha, 1.0, betas))))
    for name, val in (("endpoint_alpha", at0), ("endpoint_zero", at1)):
        cases.append(
            {"kind": name, "beta": math.nan, "value": val,
             "z_at": math.nan, "margin": identity_abs - val, "ok": identity_abs - val >= 0.0}
        )
    notes = [f"min g over grid: {float(g.min()):.6e}"]
    grid = f"alpha={alpha}, z grid {z_grid} (open), beta grid {beta_grid} on [{alpha}, {2 * alpha}]"
    return SweepReport.from_cases("lemma_a", grid, cases, notes, started)


def random_polygon_stress(
    w: WeightPair,
    count: int,
    seed: int,
    *,
    ratio_slack: float = 1e-9,
    steiner_rel: float = 1e-12,
    workers: int | None = None,
) -> SweepReport:
    """Seeded random polygons: ratio at or above mu, symmetrization improving.

    Every sample must satisfy R >= mu - ratio_slack; its symmetrized image
    must not gain weighted perimeter (relative slack steiner_rel) and must
    keep the weighted area to the same relative tolerance.
    """
    started = time.perf_counter()
    violated = sharp_violation(w)
    if violated is not None:
        raise ValueError(
            f"stress weights must lie in the attained regime; violated {violated} "
            f"(alpha={w.alpha!r}, beta={w.beta!r})"
        )
    if count < 1:
        raise ValueError(f"count must be positive (got {count!r})")
    mu = mu_closed_form(w)

    def case(i: int) -> dict:
        poly, kind, retries = random_polygon(seed, i)
        ratio = isoperimetric_ratio(poly, w)
        p0 = weighted_perimeter(poly, w)
        a0 = weighted_area(poly, w)
        sym = steiner_symmetrize(poly)
        dp_rel = (weighted_perimeter(sym, w) - p0) / p0
        da_rel = abs(weighted_area(sym, w) - a0) / a0
        margin = min(ratio - mu + ratio_slack, steiner_rel - dp_rel, steiner_rel - da_rel)
        return {
            "case": i,
            "kind": kind,
            "vertices": len(poly.vertices),
            "ratio": ratio,
            "ratio_margin": ratio - mu,
            "steiner_dp_rel": dp_rel,
            "steiner_da_rel": da_rel,
            "regenerated": retries,
            "margin": margin,
            "ok": margin >= 0.0,
        }

    cases = _map_indexed(case, count, workers)
    regen = sum(c["regenerated"] for c in cases)
    notes = [
        f"mu={mu:.12g}",
        f"min ratio - mu: {min(c['ratio_margin'] for c in cases):.6e}",
        f"regenerated degenerate samples: {regen}",
    ]
    grid = f"alpha={w.alpha}, beta={w.beta}, count={count}, seed={seed}"
    return SweepReport.from_cases("stress", grid, cases, notes, started)


def oracle_sweep(
    pairs=ORACLE_GRID,
    step_tol: float = 1e-10,
    *,
    mutual_rel: float = 1e-6,
    quad_cfg=None,
) -> SweepReport:
    """Closed form, quadrature, and shooting values of the sharp ratio must agree."""
    started = time.perf_counter()
    cases = []
    for alpha, beta in pairs:
        w = WeightPair(float(alpha), float(beta))
        mu = mu_closed_form(w)
        r_quad = optimal_functionals(w, quad_cfg).ratio_quad
        r_shoot = shoot(w, step_tol).isoperimetric_ratio()
        spread = (max(mu, r_quad, r_shoot) - min(mu, r_quad, r_shoot)) / mu
        margin = mutual_rel - spread
        cases.append(
            {
                "alpha": w.alpha,
                "beta": w.beta,
                "mu_closed": mu,
                "ratio_quadrature": r_quad,
                "ratio_shooting": r_shoot,
                "rel_spread": spread,
                "margin": margin,
                "ok": margin >= 0.0,
            }
        )
    notes = [f"max relative spread: {max(c['rel_spread'] for c in cases):.6e}"]
    grid = f"{len(cases)} weight pairs, step_tol={step_tol}"
    return SweepReport.from_cases("oracles", grid, cases, notes, started)


def spectral_suite(
    p: float = 2.0,
    count: int = 10000,
    target_area: float = 2.0,
    seed: int = 0,
    *,
    ratio_slack: float = 0.0,
    workers: int | None = None,
) -> SweepReport:
    """Random subsets never undercut the matched Cheeger constant.

    Uses gamma1 = gamma2 = 0 (unweighted case) so any polygon of weighted
    area at most target_area is an admissible subset; each sample's P/A is
    compared against h, and the eigenvalue bound (h/p)**p is recorded.
    """
    started = time.perf_counter()
    if count < 1:
        raise ValueError(f"count must be positive (got {count!r})")
    ep = EigenParams(p=p, gamma1=0.0, gamma2=0.0)
    w = param_map(ep)
    bound = cheeger_lower_bound(w, target_area)
    eigen = eigenvalue_lower_bound(ep, target_area)

    def case(i: int) -> dict:
        poly, kind, _ = random_polygon(seed, i)
        area = weighted_area(poly, w)
        if area > target_area:
            poly = scale(poly, (0.5 * target_area / area) ** (1.0 / (w.beta + 2.0)))
            area = weighted_area(poly, w)
        ratio = subset_ratio_check(poly, bound)
        margin = ratio - bound.h + ratio_slack
        return {
            "case": i,
            "kind": kind,
            "area": area,
            "ratio": ratio,
            "margin": margin,
            "ok": margin >= 0.0,
        }

    cases = _map_indexed(case, count, workers)
    notes = [
        f"h={bound.h:.12g} at target area {target_area}",
        f"eigenvalue bound (h/p)^p = {eigen:.12g} at p={p}",
        f"min ratio - h: {min(c['margin'] for c in cases) - ratio_slack:.6e}",
    ]
    grid = f"p={p}, gamma1=gamma2=0, target_area={target_area}, count={count}, seed={seed}"
    return SweepReport.from_cases("spectral", grid, cases, notes, started)


# ---------------------------------------------------------------------------
# config-driven execution


def run_suite(name: str, cfg: RunConfig, *, workers: int | None = None) -> SweepReport:
    """Run one named suite with grids, tolerances, and seed from the config."""
    settings = cfg.suites[name]
    g = settings.grid
    tol = settings.tolerances
    seed = settings.seed if settings.seed is not None else cfg.seed

    if name == "rectangle":
        reports = [
            rectangle_sequence(WeightPair(a, b), g["t_values"], formula_rel=tol["formula_rel"])
            for a, b in g["pairs"]
        ]
        return _merge(reports, "rectangle")
    if name == "ball":
        return ball_sequence(
            WeightPair(g["alpha"], g["beta"]),
            g["t_values"],
            g["n_poly"],
            slope_rel=tol["slope_rel"],
            fit_slack=tol["fit_slack"],
        )
    if name == "lemma_a":
        return lemma_a_sweep(
            g["alpha"], g["z_grid"], g["beta_grid"], identity_abs=tol["identity_abs"]
        )
    if name == "stress":
        reports = [
            random_polygon_stress(
                WeightPair(a, b),
                g["count"],
                seed,
                ratio_slack=tol["ratio_slack"],
                steiner_rel=tol["steiner_rel"],
                workers=workers,
            )
            for a, b in g["pairs"]
        ]
        return _merge(reports, "stress")
    if name == "oracles":
        return oracle_sweep(
            [tuple(p) for p in g["pairs"]],
            g["step_tol"],
            mutual_rel=tol["mutual_rel"],
            quad_cfg=cfg.quadrature,
        )
    if name == "spectral":
        return spectral_suite(
            g["p"],
            g["count"],
            g["target_area"],
            seed,
            ratio_slack=tol["ratio_slack"],
            workers=workers,
        )
    raise ConfigError("unknown-key", f"unknown suite '{name}'")


def _merge(reports: list, suite: str) -> SweepReport:
    """Combine same-suite reports over several weight pairs into one."""
    cases = []
    notes = []
    for idx, r in enumerate(reports):
        for c in r.cases:
            row = {"sweep": idx}
            row.update(c)
            cases.append(row)
        notes.extend(f"[{r.grid}] {n}" for n in r.notes)
    return SweepReport(
        suite=suite,
        grid="; ".join(r.grid for r in reports),
        cases=cases,
        notes=tuple(notes),
        min_margin=min(r.min_margin for r in reports),
        max_violation=max(r.max_violation for r in reports),
        runtime_ms=sum(r.runtime_ms for r in reports),
    )


def write_artifacts(
    reports: list, out_dir: str | Path, fmt: str, *, render_figures: bool = True
) -> list[Path]:
    """Write one cases file per suite, a summary JSON, and report figures."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for rep in reports:
        if fmt == "csv":
            path = out / f"{rep.suite}.csv"
            fieldnames = list(rep.cases[0].keys()) if rep.cases else []
            path.write_text(render_cases_csv(fieldnames, rep.cases))
        else:
            path = out / f"{rep.suite}.json"
            path.write_text(json.dumps({"grid": rep.grid, "cases": rep.cases}, indent=1) + "\n")
        written.append(path)
    summary_path = out / "summary.json"
    summary_path.write_text(json.dumps([r.summary() for r in reports], indent=1) + "\n")
    written.append(summary_path)
    if render_figures:
        from . import figures

        written.extend(figures.render_report_figures(reports, out))
    return written


def full_report(
    config_path: str | Path | None = None,
    *,
    out_dir: str | Path | None = None,
    fmt: str | None = None,
    workers: int | None = None,
    render_figures: bool = True,
) -> tuple[int, list]:
    """Run every enabled suite per config and write its artifacts.

    Returns (exit_code, reports): 0 when all suites pass, 1 otherwise.
    Configuration problems raise ConfigError before any suite runs.
    """
    cfg = load_config(config_path) if config_path is not None else default_config()
    reports = [
        run_suite(name, cfg, workers=workers)
        for name in cfg.suites
        if cfg.suites[name].enabled
    ]
    write_artifacts(
        reports,
        out_dir if out_dir is not None else cfg.output_dir,
        fmt if fmt is not None else cfg.format,
        render_figures=render_figures,
    )
    return (0 if all(r.passed for r in reports) else 1), reports
