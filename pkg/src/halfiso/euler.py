"""Recovery of the optimal boundary by integrating its Euler-Lagrange system.

The minimizer's boundary curve satisfies, in unit-speed form with tangent
angle theta,

    x' = cos(theta),  y' = sin(theta),  theta' = -kappa(y),

where the curvature comes from the first integral y**alpha cos(theta) =
lam*y**(beta+1) + d.  The minimizer itself has lam = 1, d = 0 after scaling
its apex to (0, 1), which is the normalization `shoot` integrates from.
This route never evaluates the profile integral, so agreement with
`optimal_set.profile_f` is a genuinely independent check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import WeightPair
from .optimal_set import OptimalProfile

__all__ = [
    "EulerTrajectory",
    "compare_to_profile",
    "curvature",
    "first_integral_residual",
    "shoot",
]


def curvature(y: float, w: WeightPair, lam: float, d: float) -> float:
    """Boundary curvature lam*y**(beta-alpha)*(beta+1-alpha) - alpha*d*y**(-1-alpha).

    Positive whenever lam > 0 and d <= 0 in the profile regime, which is the
    strict-convexity statement for critical curves.
    """
    y = float(y)
    if not y > 0.0:
        raise ValueError(f"curvature needs y > 0 (got {y!r})")
    value = lam * y ** (w.beta - w.alpha) * w.gamma
    if d != 0.0:
        value -= w.alpha * d * y ** (-1.0 - w.alpha)
    return value


@dataclass(frozen=True)
class EulerTrajectory:
    """Integrated boundary curve with its accumulated weighted functionals.

    ``p_half`` and ``a_half`` are the perimeter and area integrals along the
    computed (right) half of the symmetric boundary, excluding the analytic
    tail below the final height; the functional accessors add the tail and
    the mirrored half.
    """

    w: WeightPair
    lam: float
    d: float
    s: np.ndarray
    x: np.ndarray
    y: np.ndarray
    theta: np.ndarray
    kappa: np.ndarray
    p_half: float
    a_half: float
    status: str

    @property
    def L(self) -> float:
        """Total integrated arclength."""
        return float(self.s[-1])

    @property
    def states(self) -> list[tuple[float, float, float, float, float]]:
        return [
            (float(a), float(b), float(c), float(t), float(k))
            for a, b, c, t, k in zip(self.s, self.x, self.y, self.theta, self.kappa)
        ]

    @property
    def endpoint_x(self) -> float:
        """Base half-width estimate: final x plus the analytic tail to y = 0.

        Below the termination height the first integral gives
        dx/dy = -lam*y**gamma/sqrt(1-(lam*y**gamma)**2), whose integral to 0
        is lam*y**(gamma+1)/(gamma+1) up to O(y**(3*gamma+1)).
        """
        y_end = float(self.y[-1])
        return float(self.x[-1]) + self.lam * y_end ** (self.w.gamma + 1.0) / (self.w.gamma + 1.0)

    def weighted_perimeter(self) -> float:
        """P_alpha of the full symmetric region bounded by the curve."""
        y_end = float(self.y[-1])
        tail = y_end ** (self.w.alpha + 1.0) / (self.w.alpha + 1.0)
        return 2.0 * (self.p_half + tail)

    def weighted_area(self) -> float:
        """A_beta of the full symmetric region bounded by the curve."""
        y_end = float(self.y[-1])
        tail = self.endpoint_x * y_end ** (self.w.beta + 1.0) / (self.w.beta + 1.0)
        return 2.0 * (self.a_half + tail)

    def isoperimetric_ratio(self) -> float:
        return self.weighted_perimeter() / self.weighted_area() ** self.w.ratio_exponent


# Cash-Karp embedded 5(4) pair
_CK_C = (0.0, 0.2, 0.3, 0.6, 1.0, 0.875)
_CK_A = (
    (),
    (0.2,),
    (3.0 / 40.0, 9.0 / 40.0),
    (0.3, -0.9, 1.2),
    (-11.0 / 54.0, 2.5, -70.0 / 27.0, 35.0 / 27.0),
    (1631.0 / 55296.0, 175.0 / 512.0, 575.0 / 13824.0, 44275.0 / 110592.0, 253.0 / 4096.0),
)
_CK_B5 = (37.0 / 378.0, 0.0, 250.0 / 621.0, 125.0 / 594.0, 0.0, 512.0 / 1771.0)
_CK_B4 = (2825.0 / 27648.0, 0.0, 18575.0 / 48384.0, 13525.0 / 55296.0, 277.0 / 14336.0, 0.25)


def shoot(
    w: WeightPair,
    step_tol: float = 1e-10,
    *,
    y_stop: float = 1e-9,
    max_steps: int = 500_000,
) -> EulerTrajectory:
    """Integrate the boundary from the apex (0, 1) down to y = y_stop.

    State is (x, y, theta) plus running weighted perimeter and area
    integrals; the embedded pair keeps the local error below step_tol per
    unit arclength.  The last step is shortened by bisection so the final
    state lands on y_stop; `status` reports "reached_y_stop", or
    "step_underflow"/"max_steps" if the target height was not attained.
    """
    gamma = w.gamma
    if not gamma > 0.0:
        raise ValueError(
            f"shooting needs beta + 1 - alpha > 0 (got gamma={gamma!r} "
            f"for alpha={w.alpha!r}, beta={w.beta!r})"
        )
    if not (math.isfinite(step_tol) and step_tol > 0.0):
        raise ValueError(f"step_tol must be positive (got {step_tol!r})")
    if not 0.0 < y_stop < 1.0:
        raise ValueError(f"y_stop must lie in (0, 1) (got {y_stop!r})")
    alpha, beta = w.alpha, w.beta

    def rhs(state: tuple) -> tuple | None:
        x, y, theta, _, _ = state
        if y <= 0.0:
            return None
        sin_t = math.sin(theta)
        cos_t = math.cos(theta)
        kap = gamma * y ** (gamma - 1.0)
        return (cos_t, sin_t, -kap, y**alpha, -(y**beta) * x * sin_t)

    def step(state: tuple, h: float) -> tuple[tuple, float] | None:
        """One Cash-Karp step; returns (5th-order state, max abs error) or None."""
        k = []
        for i in range(6):
            trial = state
            if i:
                coeffs = _CK_A[i]
                trial = tuple(
                    sv + h * sum(a * kv[j] for a, kv in zip(coeffs, k))
                    for j, sv in enumerate(state)
                )
            deriv = rhs(trial)
            if deriv is None:
                return None
            k.append(deriv)
        new = tuple(
            sv + h * sum(b * kv[j] for b, kv in zip(_CK_B5, k)) for j, sv in enumerate(state)
        )
        err = max(
            abs(h * sum((b5 - b4) * kv[j] for b5, b4, kv in zip(_CK_B5, _CK_B4, k)))
            for j in range(5)
        )
        if not all(math.isfinite(v) for v in new) or not math.isfinite(err):
            return None
        return new, err

    state = (0.0, 1.0, 0.0, 0.0, 0.0)
    s_now = 0.0
    rec_s = [0.0]
    rec_state = [state]
    h = 1e-3
    status = "max_steps"
    h_min = 1e-14

    for _ in range(max_steps):
        if state[1] <= y_stop * (1.0 + 1e-9):
            status = "reached_y_stop"
            break
        h = min(h, 1.5 * (state[1] - y_stop) + 0.25 * y_stop)
        result = step(state, h)
        if result is None:
            h *= 0.25
            if h < h_min:
                status = "step_underflow"
                break
            continue
        new, err = result
        tol_h = step_tol * h
        if err > tol_h:
            shrink = max(0.1, 0.9 * (tol_h / err) ** 0.25)
            h *= shrink
            if h < h_min:
                status = "step_underflow"
                break
            continue
        if new[1] < y_stop:
            # bisect the step length so the state lands on y_stop
            lo, hi = 0.0, h
            landed = None
            for _ in range(80):
                mid = 0.5 * (lo + hi)
                trial = step(state, mid)
                if trial is None:
                    hi = mid
                    continue
                if trial[0][1] > y_stop:
                    lo = mid
                    landed = (mid, trial[0])
                else:
                    hi = mid
                if abs(trial[0][1] - y_stop) <= 1e-3 * y_stop:
                    landed = (mid, trial[0])
                    break
            if landed is not None:
                s_now += landed[0]
                state = landed[1]
                rec_s.append(s_now)
                rec_state.append(state)
            status = "reached_y_stop"
            break
        s_now += h
        state = new
        rec_s.append(s_now)
        rec_state.append(state)
        grow = 0.9 * (tol_h / err) ** 0.2 if err > 0.0 else 5.0
        h *= min(5.0, max(0.2, grow))

    arr = np.asarray(rec_state)
    ys = arr[:, 1]
    kappas = gamma * ys ** (gamma - 1.0)
    return EulerTrajectory(
        w=w,
        lam=1.0,
        d=0.0,
        s=np.asarray(rec_s),
        x=arr[:, 0],
        y=ys,
        theta=arr[:, 2],
        kappa=kappas,
        p_half=float(arr[-1, 3]),
        a_half=float(arr[-1, 4]),
        status=status,
    )


def first_integral_residual(traj: EulerTrajectory, w: WeightPair) -> float:
    """Max over states of |y**alpha cos(theta) - lam*y**(beta+1) - d|."""
    resid = (
        traj.y**w.alpha * np.cos(traj.theta) - traj.lam * traj.y ** (w.beta + 1.0) - traj.d
    )
    return float(np.max(np.abs(resid)))


def compare_to_profile(traj: EulerTrajectory, prof: OptimalProfile) -> float:
    """Sup over trajectory states of |x(s) - f(y(s))| with f interpolated."""
    if prof.w != traj.w:
        raise ValueError(
            f"weight mismatch: trajectory has {traj.w!r}, profile has {prof.w!r}"
        )
    return float(np.max(np.abs(traj.x - prof.half_width(traj.y))))
