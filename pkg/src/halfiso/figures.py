"""Figure rendering for report artifacts.

Only the report path imports this module, so matplotlib stays optional for
library use; the Agg backend keeps rendering headless.  One PNG per suite is
written next to the delimited case files.
"""

from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

__all__ = ["render_report_figures"]


def _finite(xs, ys):
    pts = [(x, y) for x, y in zip(xs, ys) if math.isfinite(x) and math.isfinite(y)]
    return [p[0] for p in pts], [p[1] for p in pts]


def _plot_rectangle(ax, rep) -> None:
    sweeps = sorted({c.get("sweep", 0) for c in rep.cases})
    for s in sweeps:
        rows = [c for c in rep.cases if c.get("sweep", 0) == s]
        ax.loglog([c["t"] for c in rows], [c["ratio_polygon"] for c in rows], "o-", label=f"sweep {s}")
    ax.set_xlabel("t")
    ax.set_ylabel("ratio")
    ax.set_title("box ratio vs side length")
    ax.legend(fontsize=8)


def _plot_ball(ax, rep) -> None:
    rows = [c for c in rep.cases if c["kind"] == "point"]
    ts, rs = _finite([c["t"] for c in rows], [c["value"] for c in rows])
    ax.loglog(ts, rs, "o-", label="ratio")
    refs = [c["reference"] for c in rows]
    if all(math.isfinite(r) for r in refs):
        ax.loglog(ts, refs, "--", label="fitted power bound")
    ax.set_xlabel("t")
    ax.set_ylabel("ratio")
    ax.set_title("shifted-disk ratio decay")
    ax.legend(fontsize=8)


def _plot_lemma_a(ax, rep) -> None:
    rows = [c for c in rep.cases if c["kind"] == "positivity"]
    ax.plot([c["beta"] for c in rows], [c["value"] for c in rows], ".-")
    ax.axhline(0.0, color="k", lw=0.8)
    ax.set_xlabel("beta")
    ax.set_ylabel("min g over z grid")
    ax.set_title("comparison polynomial positivity")


def _plot_margin_hist(ax, rep, field: str, title: str) -> None:
    vals = [c[field] for c in rep.cases if field in c and math.isfinite(c[field])]
    if vals:
        ax.hist(vals, bins=60)
    ax.set_xlabel(field)
    ax.set_ylabel("count")
    ax.set_title(title)


def _plot_oracles(ax, rep) -> None:
    spreads = [c["rel_spread"] for c in rep.cases]
    ax.semilogy(range(len(spreads)), [max(s, 1e-18) for s in spreads], "o")
    ax.set_xlabel("case")
    ax.set_ylabel("relative spread")
    ax.set_title("three-route agreement")


_RENDERERS = {
    "rectangle": _plot_rectangle,
    "ball": _plot_ball,
    "lemma_a": _plot_lemma_a,
    "oracles": _plot_oracles,
}


def render_report_figures(reports, out_dir: str | Path) -> list[Path]:
    out = Path(out_dir)
    written = []
    for rep in reports:
        fig, ax = plt.subplots(figsize=(5.0, 3.4), dpi=120)
        renderer = _RENDERERS.get(rep.suite)
        if renderer is not None:
            renderer(ax, rep)
        elif rep.suite == "stress":
            _plot_margin_hist(ax, rep, "ratio_margin", "ratio margin over mu")
        elif rep.suite == "spectral":
            _plot_margin_hist(ax, rep, "margin", "subset ratio margin over h")
        else:
            _plot_margin_hist(ax, rep, "margin", rep.suite)
        fig.tight_layout()
        path = out / f"{rep.suite}.png"
        fig.savefig(path)
        plt.close(fig)
        written.append(path)
    return written
