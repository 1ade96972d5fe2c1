"""Cheeger-constant lower bounds, the p-Laplacian eigenvalue bound, and
discrete checks of the weighted gradient inequality.

The eigenvalue problem is parametrized by (p, gamma1, gamma2); it maps to the
isoperimetric weights through alpha = gamma1 + gamma2 and
beta = p*gamma2/(p-1), and the eigenvalue parameters are admissible exactly
when (alpha, beta) lies in the attained regime.  The Cheeger bound is a pure
formula (the matched rescaling of the optimal set); the grid-function side
provides discretized test functions only, never an eigensolver.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .geometry import HalfPlanePolygon, WeightPair, sharp_violation, weighted_area, weighted_perimeter
from .optimal_set import mu_closed_form, optimal_functionals

__all__ = [
    "CheegerBound",
    "EigenParams",
    "GridFunction",
    "cheeger_lower_bound",
    "eigenvalue_lower_bound",
    "in_region",
    "inverse_param_map",
    "param_map",
    "rayleigh_quotient",
    "sobolev_check",
    "subset_ratio_check",
]


@dataclass(frozen=True)
class EigenParams:
    """Exponent p and weight exponents (gamma1, gamma2) of the eigenvalue problem."""

    p: float
    gamma1: float
    gamma2: float

    def __post_init__(self) -> None:
        p = float(self.p)
        if not (math.isfinite(p) and p > 1.0):
            raise ValueError(f"p must satisfy p > 1 (got {self.p!r})")
        for name in ("gamma1", "gamma2"):
            v = float(getattr(self, name))
            if not math.isfinite(v):
                raise ValueError(f"{name} must be finite (got {getattr(self, name)!r})")
            object.__setattr__(self, name, v)
        object.__setattr__(self, "p", p)


def in_region(ep: EigenParams) -> bool:
    """Admissible-region test on (gamma1, gamma2): the three defining inequalities."""
    s = ep.gamma1 + ep.gamma2
    b = ep.p * ep.gamma2 / (ep.p - 1.0)
    return s >= 0.0 and b > s - 1.0 and b <= 2.0 * s


def param_map(ep: EigenParams) -> WeightPair:
    """Weights (alpha, beta) = (gamma1 + gamma2, p*gamma2/(p-1))."""
    return WeightPair(ep.gamma1 + ep.gamma2, ep.p * ep.gamma2 / (ep.p - 1.0))


def inverse_param_map(w: WeightPair, p: float) -> EigenParams:
    """Eigenvalue parameters with gamma2 = (p-1)*beta/p and gamma1 = alpha - gamma2."""
    gamma2 = (p - 1.0) * w.beta / p
    return EigenParams(p=p, gamma1=w.alpha - gamma2, gamma2=gamma2)


def _require_sharp(w: WeightPair, what: str) -> None:
    violated = sharp_violation(w)
    if violated is not None:
        raise ValueError(
            f"{what} needs weights in the attained regime: "
            f"violated {violated} (got alpha={w.alpha!r}, beta={w.beta!r})"
        )


@dataclass(frozen=True)
class CheegerBound:
    """Matched-rescaling Cheeger lower bound for domains of a given weighted area."""

    w: WeightPair
    target_area: float
    t_match: float
    h: float


def cheeger_lower_bound(w: WeightPair, target_area: float) -> CheegerBound:
    """P/A of the optimal set rescaled to the target weighted area.

    h = mu(alpha, beta) * target_area**((alpha+1)/(beta+2) - 1); every subset
    with weighted area at most target_area has P/A ratio at least h.
    """
    _require_sharp(w, "the Cheeger bound")
    if not (math.isfinite(target_area) and target_area > 0.0):
        raise ValueError(f"target_area must be positive (got {target_area!r})")
    area_star = optimal_functionals(w).area_closed
    t_match = (target_area / area_star) ** (1.0 / (w.beta + 2.0))
    h = mu_closed_form(w) * target_area ** (w.ratio_exponent - 1.0)
    return CheegerBound(w=w, target_area=target_area, t_match=t_match, h=h)


def subset_ratio_check(poly: HalfPlanePolygon, bound: CheegerBound) -> float:
    """P_alpha/A_beta of a polygon playing the subset role; always >= bound.h.

    The polygon's weighted area must not exceed the bound's target area,
    since the bound only constrains subsets of the matched domain.
    """
    area = weighted_area(poly, bound.w)
    if not area > 0.0:
        raise ValueError(f"subset must have positive weighted area (got {area!r})")
    if area > bound.target_area * (1.0 + 1e-12):
        raise ValueError(
            f"subset area {area!r} exceeds the bound's target area {bound.target_area!r}"
        )
    return weighted_perimeter(poly, bound.w) / area


def eigenvalue_lower_bound(ep: EigenParams, target_area: float) -> float:
    """First-eigenvalue lower bound (h/p)**p from the matched Cheeger constant."""
    if not in_region(ep):
        raise ValueError(
            f"eigenvalue parameters outside the admissible region: "
            f"gamma1={ep.gamma1!r}, gamma2={ep.gamma2!r}, p={ep.p!r}"
        )
    bound = cheeger_lower_bound(param_map(ep), target_area)
    return (bound.h / ep.p) ** ep.p


class GridFunction:
    """Test function sampled on a uniform grid strictly above the axis.

    ``values[j, i]`` sits at (x0 + i*spacing, y0 + j*spacing); the function
    is extended by zero outside the grid, which is consistent only when the
    outermost ring of values vanishes (checked by the quotient routines).
    """

    __slots__ = ("values", "spacing", "x0", "y0")

    def __init__(self, values, spacing: float, x0: float, y0: float):
        vals = np.asarray(values, dtype=float)
        if vals.ndim != 2 or vals.shape[0] < 3 or vals.shape[1] < 3:
            raise ValueError(f"values must be a 2-D array, at least 3x3 (got shape {vals.shape})")
        if not np.all(np.isfinite(vals)):
            raise ValueError("values must be finite")
        if not (math.isfinite(spacing) and spacing > 0.0):
            raise ValueError(f"spacing must be positive (got {spacing!r})")
        if not (math.isfinite(y0) and y0 > 0.0):
            raise ValueError(f"the grid must stay above the axis: y0 > 0 (got {y0!r})")
        self.values = vals
        self.spacing = float(spacing)
        self.x0 = float(x0)
        self.y0 = float(y0)

    @property
    def nx(self) -> int:
        return self.values.shape[1]

    @property
    def ny(self) -> int:
        return self.values.shape[0]

    def y_coords(self) -> np.ndarray:
        return self.y0 + self.spacing * np.arange(self.ny)

    @classmethod
    def from_callable(
        cls,
        func: Callable[[np.ndarray, np.ndarray], np.ndarray],
        nx: int,
        ny: int,
        spacing: float,
        x0: float,
        y0: float,
        *,
        zero_boundary: bool = False,
    ) -> "GridFunction":
        xs = x0 + spacing * np.arange(nx)
        ys = y0 + spacing * np.arange(ny)
        vals = np.asarray(func(xs[None, :], ys[:, None]), dtype=float)
        vals = np.broadcast_to(vals, (ny, nx)).copy()
        if zero_boundary:
            vals[0, :] = 0.0
            vals[-1, :] = 0.0
            vals[:, 0] = 0.0
            vals[:, -1] = 0.0
        return cls(vals, spacing, x0, y0)


def _require_admissible(u: GridFunction, what: str) -> None:
    v = u.values
    if np.any(v[0, :] != 0.0) or np.any(v[-1, :] != 0.0) or np.any(v[:, 0] != 0.0) or np.any(v[:, -1] != 0.0):
        raise ValueError(f"{what} needs the support strictly inside the grid: boundary values must be zero")


def _gradient_magnitude(u: GridFunction) -> np.ndarray:
    """Central differences against the zero extension."""
    v = u.values
    padded = np.pad(v, 1)
    ux = (padded[1:-1, 2:] - padded[1:-1, :-2]) / (2.0 * u.spacing)
    uy = (padded[2:, 1:-1] - padded[:-2, 1:-1]) / (2.0 * u.spacing)
    return np.hypot(ux, uy)


def rayleigh_quotient(u: GridFunction, ep: EigenParams) -> float:
    """Discrete ratio of the weighted p-gradient integral to the weighted p-norm."""
    _require_admissible(u, "the Rayleigh quotient")
    p = ep.p
    grad = _gradient_magnitude(u)
    yw = u.y_coords()[:, None]
    num = float(np.sum(grad**p * yw ** (p * ep.gamma1)))
    den = float(np.sum(np.abs(u.values) ** p * yw ** (p * ep.gamma2 / (p - 1.0))))
    if den == 0.0:
        raise ValueError("the Rayleigh quotient needs a nonzero function")
    return num / den


def sobolev_check(u: GridFunction, w: WeightPair) -> tuple[float, float]:
    """Both sides of the weighted gradient inequality on a grid function.

    lhs is the discrete integral of |grad u| y**alpha; rhs is
    mu(alpha, beta) times the discrete (beta+2)/(alpha+1)-norm of u weighted
    by y**beta, raised back to first-order homogeneity.  The continuum
    inequality is lhs >= rhs.
    """
    _require_sharp(w, "the gradient inequality")
    _require_admissible(u, "the gradient inequality")
    cell = u.spacing**2
    yw = u.y_coords()[:, None]
    lhs = float(np.sum(_gradient_magnitude(u) * yw**w.alpha)) * cell
    q = (w.beta + 2.0) / (w.alpha + 1.0)
    norm_q = float(np.sum(np.abs(u.values) ** q * yw**w.beta)) * cell
    rhs = mu_closed_form(w) * norm_q ** (1.0 / q)
    return lhs, rhs
