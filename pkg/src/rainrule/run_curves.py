"""Wicket-conditioned average scoring curves and constrained polynomial fits.

For a fixed format, innings and wicket count ``w``, the curve holds the mean
cumulative score at each legal ball over all innings that had exactly ``w``
wickets down at that ball.  The fitted model is

    f(x) = a*x**3 + b*x**2 + c*x        (degree 3)
    f(x) =          b*x**2 + c*x        (degree 2, T20-style innings)

with the constant term identically zero: a side starts on nought, so the
curve is pinned to the origin by construction.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass

import numpy as np

from .ball_log import InningsTrajectory, MatchFormat, MatchRecord, trajectory
from .errors import EmptyCurveError, SingularFitError

__all__ = [
    "WicketCurve",
    "PolyFit",
    "wicket_curve",
    "fit_poly",
    "poly_eval",
    "curve_csv",
    "fit_summary",
]

DEFAULT_MIN_SUPPORT = 10


@dataclass(frozen=True)
class WicketCurve:
    """Mean cumulative score per ball, conditioned on exactly ``wickets`` down."""

    wickets: int
    balls: np.ndarray
    means: np.ndarray
    support: np.ndarray
    format: MatchFormat
    innings_index: int

    def __post_init__(self):
        if not 0 <= self.wickets <= 10:
            raise ValueError("wickets must be in [0, 10]")
        order = np.argsort(self.balls, kind="stable")
        balls = np.asarray(self.balls, dtype=np.int64)[order]
        if np.any(np.diff(balls) == 0):
            raise ValueError("duplicate ball values in curve")
        object.__setattr__(self, "balls", balls)
        object.__setattr__(self, "means", np.asarray(self.means, dtype=float)[order])
        object.__setattr__(self, "support", np.asarray(self.support, dtype=np.int64)[order])
        for arr in (self.balls, self.means, self.support):
            arr.setflags(write=False)

    @property
    def points(self) -> list[tuple[int, float, int]]:
        return list(
            zip(self.balls.tolist(), self.means.tolist(), self.support.tolist())
        )

    def __len__(self) -> int:
        return len(self.balls)


@dataclass(frozen=True)
class PolyFit:
    """Zero-intercept polynomial coefficients in raw ball units."""

    a: float
    b: float
    c: float
    degree: int
    rss: float = 0.0

    def __post_init__(self):
        if self.degree not in (2, 3):
            raise ValueError("degree must be 2 or 3")
        if self.degree == 2 and self.a != 0.0:
            raise ValueError("degree-2 fit requires a = 0")


def poly_eval(fit: PolyFit, x):
    """Evaluate the fitted polynomial; exactly zero at x = 0."""
    return ((fit.a * x + fit.b) * x + fit.c) * x


def _qualifies(traj: InningsTrajectory, scheduled_balls: int) -> bool:
    # innings from shortened matches are excluded entirely; an all-out
    # innings ended naturally and stays in
    if traj.completed_balls >= scheduled_balls:
        return True
    return traj.wickets.size > 0 and int(traj.wickets[-1]) == 10


def wicket_curve(
    corpus: Iterable[MatchRecord],
    format: MatchFormat,
    innings_index: int,
    w: int,
    min_support: int = DEFAULT_MIN_SUPPORT,
) -> WicketCurve:
    """Average cumulative score at each ball with exactly ``w`` wickets down.

    Balls supported by fewer than ``min_support`` innings are omitted; a
    curve with no retained ball raises :class:`EmptyCurveError`.
    """
    if not 0 <= w <= 10:
        raise ValueError("w must be in [0, 10]")
    min_support = max(int(min_support), 1)
    scheduled = format.scheduled_balls
    sums = np.zeros(scheduled + 1)
    count = np.zeros(scheduled + 1, dtype=np.int64)

    for match in corpus:
        if match.format is not format:
            continue
        for inn in match.innings:
            if inn.innings_index != innings_index:
                continue
            traj = trajectory(inn, format)
            if not _qualifies(traj, scheduled):
                continue
            mask = (traj.wickets == w) & (traj.ball <= scheduled)
            idx = traj.ball[mask]
            sums[idx] += traj.runs[mask]
            count[idx] += 1

    retained = np.nonzero(count[1:] >= min_support)[0] + 1
    if retained.size == 0:
        raise EmptyCurveError(
            f"no ball has {min_support}+ innings with exactly {w} wickets down"
        )
    return WicketCurve(
        wickets=w,
        balls=retained,
        means=sums[retained] / count[retained],
        support=count[retained],
        format=format,
        innings_index=innings_index,
    )


def fit_poly(curve: WicketCurve, degree: int = 3, weighted: bool = True) -> PolyFit:
    """Weighted least squares over the zero-intercept monomial basis.

    Solved by normal equations; the ball axis is rescaled to [0, 1]
    internally for conditioning and the coefficients are reported back in
    raw ball units.  Weights are the per-ball supporting innings counts when
    ``weighted``, else uniform.
    """
    if degree not in (2, 3):
        raise ValueError("degree must be 2 or 3")
    x = curve.balls.astype(float)
    y = curve.means
    if np.unique(x).size < degree + 1:
        raise SingularFitError(
            f"need at least {degree + 1} distinct ball values for a degree-{degree} fit, "
            f"have {np.unique(x).size}"
        )

    weights = curve.support.astype(float) if weighted else np.ones_like(x)
    scale = float(curve.format.scheduled_balls)
    s = x / scale
    powers = (3, 2, 1) if degree == 3 else (2, 1)
    design = np.column_stack([s**p for p in powers])

    gram = design.T @ (design * weights[:, None])
    rhs = design.T @ (weights * y)
    try:
        scaled_coeffs = np.linalg.solve(gram, rhs)
    except np.linalg.LinAlgError as e:
        raise SingularFitError(f"normal equations are singular: {e}") from e
    if not np.all(np.isfinite(scaled_coeffs)):
        raise SingularFitError("non-finite coefficients from normal equations")

    coeffs = {p: float(v) / scale**p for p, v in zip(powers, scaled_coeffs)}
    fit = PolyFit(
        a=coeffs.get(3, 0.0), b=coeffs[2], c=coeffs[1], degree=degree, rss=0.0
    )
    residual = y - poly_eval(fit, x)
    rss = float(np.sum(weights * residual * residual))
    return PolyFit(a=fit.a, b=fit.b, c=fit.c, degree=degree, rss=rss)


# ---------------------------------------------------------------------------
# exports


def curve_csv(curve: WicketCurve, fit: PolyFit) -> str:
    """CSV of ``ball,mean_score,n_contributing,fitted_value`` rows."""
    fitted = poly_eval(fit, curve.balls.astype(float))
    lines = ["ball,mean_score,n_contributing,fitted_value"]
    for ball, mean, n, value in zip(curve.balls, curve.means, curve.support, fitted):
        lines.append(f"{int(ball)},{float(mean)!r},{int(n)},{float(value)!r}")
    return "\n".join(lines) + "\n"


def fit_summary(curve: WicketCurve, fit: PolyFit) -> dict:
    """JSON-ready fit summary."""
    return {
        "format": curve.format.value,
        "innings": curve.innings_index,
        "wickets": curve.wickets,
        "degree": fit.degree,
        "a": fit.a,
        "b": fit.b,
        "c": fit.c,
        "rss": fit.rss,
    }
