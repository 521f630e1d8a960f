"""Innings-total histograms and the three-parameter normal curve fit.

The curve fitted to a totals histogram is

    f(x) = amplitude / (sqrt(2*pi) * sigma) * exp(-(x - xi)**2 / (2 * sigma**2))

with all three parameters free; ``amplitude`` is fitted in count units, not
forced to the sample-mass normalisation.  The fit minimises the sum of
squared count residuals at bin centers.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

import numpy as np

from .ball_log import InningsRecord, MatchFormat, MatchRecord
from .errors import DegenerateFitError, EmptySelectionError, InsufficientDataError
from .leastsq import damped_gauss_newton

__all__ = [
    "Histogram",
    "NormalFit",
    "totals",
    "build_histogram",
    "fit_normal",
    "normal_curve",
    "histogram_csv",
    "fit_summary",
]

_SQRT_2PI = math.sqrt(2.0 * math.pi)
_SIGMA_FLOOR = 1e-9


@dataclass(frozen=True)
class Histogram:
    """Uniform-width histogram with left-closed right-open bins."""

    bin_width: float
    bin_lower_edges: np.ndarray
    counts: np.ndarray
    n_samples: int

    def __post_init__(self):
        self.bin_lower_edges.setflags(write=False)
        self.counts.setflags(write=False)

    @property
    def centers(self) -> np.ndarray:
        return self.bin_lower_edges + 0.5 * self.bin_width


@dataclass(frozen=True)
class NormalFit:
    xi: float
    sigma: float
    amplitude: float
    rss: float


def totals(
    corpus: Iterable[MatchRecord], format: MatchFormat, innings_index: int
) -> list[int]:
    """Total runs of every matching innings, in corpus order."""
    out: list[int] = []
    for match in corpus:
        if match.format is not format:
            continue
        for inn in match.innings:
            if inn.innings_index == innings_index:
                out.append(_innings_total(inn))
    if not out:
        raise EmptySelectionError(
            f"no innings {innings_index} for format {format.value}"
        )
    return out


def _innings_total(innings: InningsRecord) -> int:
    return sum(d.total_runs for d in innings.deliveries)


def build_histogram(values: Sequence[int], bin_width: float) -> Histogram:
    """Bin integer values into uniform left-closed bins.

    The lowest edge is ``floor(min/bin_width) * bin_width``; mass is
    conserved exactly (sum of counts equals the sample count).
    """
    vals = np.asarray(list(values), dtype=np.int64)
    if vals.size == 0:
        raise EmptySelectionError("cannot build a histogram from no values")
    if not bin_width > 0:
        raise ValueError("bin_width must be positive")

    lowest = math.floor(vals.min() / bin_width) * bin_width
    while lowest > vals.min():  # guard against upward rounding of the product
        lowest -= bin_width
    n_bins = int(math.floor((vals.max() - lowest) / bin_width)) + 1
    edges = lowest + np.arange(n_bins + 1, dtype=float) * bin_width

    idx = np.searchsorted(edges, vals, side="right") - 1
    idx = np.clip(idx, 0, n_bins - 1)
    counts = np.bincount(idx, minlength=n_bins)
    return Histogram(
        bin_width=float(bin_width),
        bin_lower_edges=edges[:-1],
        counts=counts.astype(np.int64),
        n_samples=int(vals.size),
    )


def normal_curve(
    x: np.ndarray | float, xi: float, sigma: float, amplitude: float
) -> np.ndarray | float:
    """Evaluate the three-parameter normal curve."""
    z = (np.asarray(x, dtype=float) - xi) / sigma
    return amplitude / (_SQRT_2PI * sigma) * np.exp(-0.5 * z * z)


def fit_normal(hist: Histogram) -> NormalFit:
    """Least-squares (xi, sigma, amplitude) for a totals histogram.

    Initialised from the binned mean / standard deviation and
    ``amplitude0 = n_samples * bin_width``; converged when the relative RSS
    change drops below 1e-10 (at most 500 iterations).
    """
    nonempty = int(np.count_nonzero(hist.counts))
    if nonempty < 4:
        raise InsufficientDataError(
            f"need at least 4 nonempty bins to fit 3 parameters, have {nonempty}"
        )
    centers = hist.centers
    counts = hist.counts.astype(float)
    mass = counts.sum()
    xi0 = float((counts * centers).sum() / mass)
    sigma0 = float(np.sqrt((counts * (centers - xi0) ** 2).sum() / mass))
    amp0 = float(hist.n_samples * hist.bin_width)
    return _fit_normal_from_init(hist, xi0, sigma0, amp0)


def _fit_normal_from_init(
    hist: Histogram, xi0: float, sigma0: float, amp0: float
) -> NormalFit:
    if sigma0 <= _SIGMA_FLOOR:
        raise DegenerateFitError(f"sigma collapsed below {_SIGMA_FLOOR:g}")
    centers = hist.centers
    counts = hist.counts.astype(float)

    def residuals(p: np.ndarray) -> np.ndarray:
        return normal_curve(centers, p[0], p[1], p[2]) - counts

    def jacobian(p: np.ndarray) -> np.ndarray:
        xi, sigma, amp = p
        f = normal_curve(centers, xi, sigma, amp)
        z = (centers - xi) / sigma
        return np.column_stack((f * z / sigma, f * (z * z - 1.0) / sigma, f / amp))

    def acceptable(p: np.ndarray) -> bool:
        return p[1] > _SIGMA_FLOOR and p[2] > 0.0

    outcome = damped_gauss_newton(
        residuals, jacobian, np.array([xi0, sigma0, amp0]), accept=acceptable
    )
    xi, sigma, amplitude = (float(v) for v in outcome.params)
    if sigma <= _SIGMA_FLOOR or amplitude <= 0.0:
        raise DegenerateFitError(f"degenerate fit: sigma={sigma:g} amplitude={amplitude:g}")
    return NormalFit(xi=xi, sigma=sigma, amplitude=amplitude, rss=outcome.rss)


# ---------------------------------------------------------------------------
# exports


def histogram_csv(hist: Histogram, fit: NormalFit) -> str:
    """CSV of ``bin_center,count,fitted_value`` rows."""
    fitted = normal_curve(hist.centers, fit.xi, fit.sigma, fit.amplitude)
    lines = ["bin_center,count,fitted_value"]
    for center, count, value in zip(hist.centers, hist.counts, fitted):
        lines.append(f"{float(center)!r},{int(count)},{float(value)!r}")
    return "\n".join(lines) + "\n"


def fit_summary(fit: NormalFit, hist: Histogram) -> dict:
    """JSON-ready fit summary."""
    return {
        "xi": fit.xi,
        "sigma": fit.sigma,
        "amplitude": fit.amplitude,
        "rss": fit.rss,
        "n_samples": hist.n_samples,
        "bin_width": hist.bin_width,
    }
