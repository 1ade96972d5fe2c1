"""Polygonal geometry in the closed upper half-plane with monomial weights.

Area elements carry the weight y**beta and boundary length carries y**alpha.
Boundary pieces lying on the axis y = 0 never count toward the weighted
perimeter: the relevant perimeter measure only sees the open half-plane, so
a set may rest on the axis "for free".

Both functionals have exact per-edge closed forms (the average of y**p along
a straight segment is a difference of powers), so polygon values here are
correct to float roundoff rather than to a quadrature tolerance.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "Classification",
    "HalfPlanePolygon",
    "SliceProfile",
    "WeightPair",
    "isoperimetric_ratio",
    "scale",
    "sharp_violation",
    "slice_profile",
    "steiner_symmetrize",
    "weighted_area",
    "weighted_perimeter",
]


class Classification(enum.Enum):
    """Existence regime of the weighted isoperimetric problem."""

    SHARP = "sharp"
    DEGENERATE_ZERO = "degenerate_zero"
    BOUNDARY_NO_MIN = "boundary_no_min"
    UNCLASSIFIED = "unclassified"


@dataclass(frozen=True)
class WeightPair:
    """Exponents (alpha, beta) of the perimeter weight y**alpha and area weight y**beta."""

    alpha: float
    beta: float

    def __post_init__(self) -> None:
        alpha = float(self.alpha)
        beta = float(self.beta)
        if not (math.isfinite(alpha) and alpha >= 0.0):
            raise ValueError(f"alpha must satisfy alpha >= 0 (got {self.alpha!r})")
        if not (math.isfinite(beta) and beta > -1.0):
            raise ValueError(f"beta must satisfy beta > -1 (got {self.beta!r})")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)

    @property
    def gamma(self) -> float:
        """Curve exponent beta + 1 - alpha; positive iff the optimal profile exists."""
        return self.beta + 1.0 - self.alpha

    @property
    def ratio_exponent(self) -> float:
        """Area exponent (alpha + 1)/(beta + 2) of the scale-invariant ratio."""
        return (self.alpha + 1.0) / (self.beta + 2.0)

    @property
    def classification(self) -> Classification:
        if self.alpha == self.beta + 1.0:
            return Classification.BOUNDARY_NO_MIN
        if self.alpha > self.beta + 1.0 or 2.0 * self.alpha < self.beta:
            return Classification.DEGENERATE_ZERO
        if self.alpha < self.beta + 1.0 and self.beta <= 2.0 * self.alpha:
            return Classification.SHARP
        return Classification.UNCLASSIFIED


def sharp_violation(w: WeightPair) -> str | None:
    """Name of the attained-regime inequality the pair violates, or None."""
    if w.alpha >= w.beta + 1.0:
        return "alpha < beta + 1"
    if w.beta > 2.0 * w.alpha:
        return "beta <= 2 alpha"
    return None


def _as_loop_array(loop: Sequence) -> np.ndarray:
    arr = np.asarray(loop, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ValueError(f"a loop must be a sequence of (x, y) pairs (got shape {arr.shape})")
    return arr


def _signed_area(loop: np.ndarray) -> float:
    x, y = loop[:, 0], loop[:, 1]
    xn, yn = np.roll(x, -1), np.roll(y, -1)
    return 0.5 * float(np.sum(x * yn - xn * y))


def _point_in_loop(pt: np.ndarray, loop: np.ndarray) -> bool:
    """Even-odd crossing test, used only for loop-nesting detection."""
    x, y = pt
    x1, y1 = loop[:, 0], loop[:, 1]
    x2, y2 = np.roll(x1, -1), np.roll(y1, -1)
    cond = (y1 > y) != (y2 > y)
    with np.errstate(divide="ignore", invalid="ignore"):
        xs = x1 + (y - y1) * (x2 - x1) / (y2 - y1)
    return bool(np.sum(cond & (xs > x)) % 2)


class HalfPlanePolygon:
    """One or more disjoint simple loops with vertices in {y >= 0}.

    Loops are stored counter-clockwise.  ``component_breaks`` gives the
    start index of every loop after the first within the flattened vertex
    list, matching the text file format understood by ``halfiso.config_io``.
    """

    __slots__ = ("loops", "_edges")

    def __init__(self, vertices, component_breaks: Sequence[int] | None = None, *, validate: bool = True):
        arr = np.asarray(vertices, dtype=float)
        if component_breaks:
            loops = [np.array(part) for part in np.split(arr, sorted(component_breaks))]
        else:
            loops = [arr]
        self.loops: tuple[np.ndarray, ...] = tuple(_as_loop_array(lp) for lp in loops)
        self._edges: tuple[np.ndarray, ...] | None = None
        if validate:
            self.validate()

    @classmethod
    def from_loops(cls, loops: Iterable[Sequence], *, validate: bool = True) -> "HalfPlanePolygon":
        poly = cls.__new__(cls)
        poly.loops = tuple(_as_loop_array(lp) for lp in loops)
        poly._edges = None
        if not poly.loops:
            raise ValueError("a polygon needs at least one loop")
        if validate:
            poly.validate()
        return poly

    @property
    def vertices(self) -> np.ndarray:
        return np.vstack(self.loops)

    @property
    def component_breaks(self) -> tuple[int, ...]:
        breaks = []
        total = 0
        for lp in self.loops[:-1]:
            total += len(lp)
            breaks.append(total)
        return tuple(breaks)

    def edge_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """Concatenated edge endpoints (p, q), each of shape (n_edges, 2)."""
        if self._edges is None:
            ps = np.vstack([lp for lp in self.loops])
            qs = np.vstack([np.roll(lp, -1, axis=0) for lp in self.loops])
            self._edges = (ps, qs)
        return self._edges

    def validate(self) -> None:
        for li, lp in enumerate(self.loops):
            if len(lp) < 3:
                raise ValueError(f"loop {li} has fewer than 3 vertices")
            if not np.all(np.isfinite(lp)):
                raise ValueError(f"loop {li} contains non-finite coordinates")
            bad = np.nonzero(lp[:, 1] < 0.0)[0]
            if bad.size:
                raise ValueError(
                    f"vertex {bad[0]} of loop {li} has y < 0 (got y={lp[bad[0], 1]!r})"
                )
            dup = np.nonzero(np.all(lp == np.roll(lp, -1, axis=0), axis=1))[0]
            if dup.size:
                raise ValueError(f"loop {li} repeats vertex {dup[0]} consecutively")
            area = _signed_area(lp)
            if area == 0.0:
                raise ValueError(f"loop {li} has zero signed area (degenerate)")
            if area < 0.0:
                raise ValueError(f"loop {li} is clockwise; loops must be counter-clockwise")
        self._check_simple()
        self._check_disjoint()

    def _check_simple(self) -> None:
        ps, qs = self.edge_arrays()
        n = len(ps)
        loop_id = np.concatenate([np.full(len(lp), i) for i, lp in enumerate(self.loops)])
        edge_pos = np.concatenate([np.arange(len(lp)) for lp in self.loops])
        loop_len = np.concatenate([np.full(len(lp), len(lp)) for lp in self.loops])

        block = 256
        for i0 in range(0, n, block):
            i1 = min(i0 + block, n)
            pi = ps[i0:i1, None, :]
            qi = qs[i0:i1, None, :]
            pj = ps[None, :, :]
            qj = qs[None, :, :]

            d1 = _cross2(qj - pj, pi - pj)
            d2 = _cross2(qj - pj, qi - pj)
            d3 = _cross2(qi - pi, pj - pi)
            d4 = _cross2(qi - pi, qj - pi)

            proper = (d1 * d2 < 0) & (d3 * d4 < 0)
            touch = (
                ((d1 == 0) & _within(pj, qj, pi))
                | ((d2 == 0) & _within(pj, qj, qi))
                | ((d3 == 0) & _within(pi, qi, pj))
                | ((d4 == 0) & _within(pi, qi, qj))
            )
            hit = proper | touch

            gi = np.arange(i0, i1)[:, None]
            gj = np.arange(n)[None, :]
            same_loop = loop_id[i0:i1, None] == loop_id[None, :]
            diff = np.abs(edge_pos[i0:i1, None] - edge_pos[None, :])
            adjacent = same_loop & (
                (diff <= 1) | (diff == loop_len[i0:i1, None] - 1)
            )
            consider = (gj > gi) & ~adjacent
            bad = hit & consider
            if np.any(bad):
                bi, bj = np.argwhere(bad)[0]
                raise ValueError(
                    f"edges {int(gi[bi, 0])} and {int(bj)} intersect; loops must be simple and disjoint"
                )

    def _check_disjoint(self) -> None:
        # edge contacts between loops are caught above; still reject nesting
        for i, a in enumerate(self.loops):
            for j, b in enumerate(self.loops):
                if i != j and _point_in_loop(a[0], b):
                    raise ValueError(f"loop {i} lies inside loop {j}; loops must be disjoint")


def _cross2(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    return u[..., 0] * v[..., 1] - u[..., 1] * v[..., 0]


def _within(a: np.ndarray, b: np.ndarray, c: np.ndarray) -> np.ndarray:
    """Componentwise bounding-box test: c inside box(a, b)."""
    lo = np.minimum(a, b)
    hi = np.maximum(a, b)
    return np.all((c >= lo) & (c <= hi), axis=-1)


def _mean_pow(p: float, y1: np.ndarray, y2: np.ndarray) -> np.ndarray:
    """Average of y**p along a segment with endpoint heights y1, y2.

    Equals (hi**(p+1) - lo**(p+1)) / ((p+1)(hi - lo)), evaluated through
    expm1/log1p so nearly level segments keep full relative precision.
    Segments lying on the axis (both heights zero) return 0.
    """
    lo = np.minimum(y1, y2)
    hi = np.maximum(y1, y2)
    q = p + 1.0
    out = np.zeros(np.broadcast(lo, hi).shape)
    pos = hi > 0.0
    flat = pos & (lo == hi)
    base = pos & (lo == 0.0)
    gen = pos & ~flat & ~base
    out[flat] = hi[flat] ** p
    out[base] = hi[base] ** p / q
    if np.any(gen):
        lo_g, hi_g = lo[gen], hi[gen]
        d = lo_g / hi_g - 1.0  # in (-1, 0); exact for ratios >= 0.5
        out[gen] = hi_g**p * np.expm1(q * np.log1p(d)) / (q * d)
    return out


def weighted_perimeter(poly: HalfPlanePolygon, w: WeightPair) -> float:
    """Integral of y**alpha over the polygon boundary, axis edges excluded."""
    ps, qs = poly.edge_arrays()
    lengths = np.hypot(qs[:, 0] - ps[:, 0], qs[:, 1] - ps[:, 1])
    means = _mean_pow(w.alpha, ps[:, 1], qs[:, 1])
    return math.fsum((lengths * means).tolist())


def weighted_area(poly: HalfPlanePolygon, w: WeightPair) -> float:
    """Integral of y**beta over the polygon interior (per-edge closed form)."""
    ps, qs = poly.edge_arrays()
    means = _mean_pow(w.beta + 1.0, ps[:, 1], qs[:, 1])
    contrib = -(qs[:, 0] - ps[:, 0]) * means / (w.beta + 1.0)
    return math.fsum(contrib.tolist())


def isoperimetric_ratio(poly: HalfPlanePolygon, w: WeightPair) -> float:
    """Scale-invariant ratio P_alpha / A_beta**((alpha+1)/(beta+2))."""
    area = weighted_area(poly, w)
    if not area > 0.0:
        raise ValueError(f"weighted area must be positive (got {area!r})")
    return weighted_perimeter(poly, w) / area**w.ratio_exponent


def scale(poly: HalfPlanePolygon, t: float) -> HalfPlanePolygon:
    """Dilation x -> t x about the origin; preserves validity for t > 0."""
    if not (math.isfinite(t) and t > 0.0):
        raise ValueError(f"scale factor must satisfy t > 0 (got {t!r})")
    return HalfPlanePolygon.from_loops([lp * t for lp in poly.loops], validate=False)


@dataclass(frozen=True)
class SliceProfile:
    """Horizontal slice lengths of a polygon as a piecewise-linear function.

    ``levels`` holds the ordinates of all vertices (sorted, distinct);
    between consecutive levels the total slice length is linear.  ``below``
    and ``above`` record the one-sided limits at each level, which differ
    exactly at horizontal-edge levels (jumps).
    """

    levels: np.ndarray
    below: np.ndarray
    above: np.ndarray

    @property
    def support(self) -> tuple[float, float]:
        return float(self.levels[0]), float(self.levels[-1])

    def length(self, y) -> np.ndarray:
        """Slice length at height(s) y; right-continuous at jump levels."""
        y = np.asarray(y, dtype=float)
        out = np.zeros(y.shape if y.shape else (1,))
        ys = np.atleast_1d(y)
        idx = np.searchsorted(self.levels, ys, side="right") - 1
        inside = (idx >= 0) & (idx < len(self.levels) - 1)
        i = idx[inside]
        y0 = self.levels[i]
        y1 = self.levels[i + 1]
        frac = (ys[inside] - y0) / (y1 - y0)
        out_flat = out.reshape(-1)
        out_flat[np.nonzero(inside.reshape(-1))[0]] = (
            self.above[i] * (1.0 - frac) + self.below[i + 1] * frac
        )
        return out if y.shape else float(out_flat[0])


def slice_profile(poly: HalfPlanePolygon) -> SliceProfile:
    ps, qs = poly.edge_arrays()
    x1, y1 = ps[:, 0], ps[:, 1]
    x2, y2 = qs[:, 0], qs[:, 1]
    ylo = np.minimum(y1, y2)
    yhi = np.maximum(y1, y2)

    levels = np.unique(np.concatenate([y1, y2]))
    nb = len(levels) - 1
    if nb < 1:
        raise ValueError("polygon is degenerate: all vertices share one height")

    bot = levels[:-1][:, None]  # (nb, 1)
    top = levels[1:][:, None]
    spans = (ylo[None, :] <= bot) & (yhi[None, :] >= top)  # (nb, ne)

    sentinel = 1e308
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        slope = (x2 - x1) / (y2 - y1)
        xbot = np.where(spans, x1[None, :] + (bot - y1[None, :]) * slope[None, :], sentinel)
        xtop = np.where(spans, x1[None, :] + (top - y1[None, :]) * slope[None, :], sentinel)
        xmid = np.where(spans, 0.5 * (xbot + xtop), sentinel)

    order = np.argsort(xmid, axis=1, kind="stable")
    xbot_s = np.take_along_axis(xbot, order, axis=1)
    xtop_s = np.take_along_axis(xtop, order, axis=1)

    counts = spans.sum(axis=1)
    if np.any(counts % 2):
        raise ValueError("open slice detected; polygon loops are not closed curves")
    pos = np.arange(spans.shape[1])[None, :]
    in_range = pos < counts[:, None]
    signs = np.where(pos % 2 == 1, 1.0, -1.0) * in_range
    len_bot = np.sum(np.where(in_range, xbot_s, 0.0) * signs, axis=1)
    len_top = np.sum(np.where(in_range, xtop_s, 0.0) * signs, axis=1)

    above = np.concatenate([len_bot, [0.0]])
    below = np.concatenate([[0.0], len_top])
    return SliceProfile(levels=levels, below=below, above=above)


def steiner_symmetrize(poly: HalfPlanePolygon) -> HalfPlanePolygon:
    """Replace every horizontal slice by the centered interval of equal length.

    Preserves the weighted area for every area weight exactly (the slice
    function is carried over unchanged) and never increases the weighted
    perimeter.  Jump levels of the slice function become horizontal edges;
    pinch levels (slice length vanishing at an isolated height) split the
    result into separate loops.
    """
    prof = slice_profile(poly)
    lv = prof.levels
    half_below = prof.below / 2.0
    half_above = prof.above / 2.0
    nb = len(lv) - 1
    band_alive = [(half_above[i] > 0.0 or half_below[i + 1] > 0.0) for i in range(nb)]

    loops: list[np.ndarray] = []
    i = 0
    while i < nb:
        if not band_alive[i]:
            i += 1
            continue
        j = i
        while (
            j + 1 < nb
            and band_alive[j + 1]
            and half_below[j + 1] > 0.0
            and half_above[j + 1] > 0.0
        ):
            j += 1
        # run of bands i..j, spanning levels i..j+1
        right: list[tuple[float, float]] = [(half_above[i], float(lv[i]))]
        for k in range(i + 1, j + 1):
            right.append((float(half_below[k]), float(lv[k])))
            if half_above[k] != half_below[k]:
                right.append((float(half_above[k]), float(lv[k])))
        right.append((float(half_below[j + 1]), float(lv[j + 1])))
        ring = right + [(-x, y) for x, y in reversed(right)]
        cleaned: list[tuple[float, float]] = []
        for x, y in ring:
            pt = (x + 0.0, y)  # normalize -0.0
            if not cleaned or cleaned[-1] != pt:
                cleaned.append(pt)
        while len(cleaned) > 1 and cleaned[0] == cleaned[-1]:
            cleaned.pop()
        if len(cleaned) >= 3:
            loops.append(np.array(cleaned))
        i = j + 1

    if not loops:
        raise ValueError("symmetrization produced an empty polygon")
    return HalfPlanePolygon.from_loops(loops, validate=False)
