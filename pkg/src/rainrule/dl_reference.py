"""Exponential remaining-resource model, the comparison baseline.

The model is Z(u) = z0 * (1 - exp(-decay * u)) where u is whole overs
remaining and z0 the asymptotic average of runs still to come with w
wickets down.  One curve is fitted per wicket state w = 0..9 from the
corpus, and a resource percentage table is derived from the family.

This module is a baseline for side-by-side comparison only; it does not
revise targets end-to-end.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np

from .ball_log import MatchFormat, MatchRecord, trajectory
from .errors import DegenerateFitError, IncompleteFamilyError, InsufficientDataError
from .leastsq import damped_gauss_newton
from .run_curves import DEFAULT_MIN_SUPPORT, _qualifies

__all__ = [
    "DLCurve",
    "DLFamily",
    "ResourceTable",
    "remaining_run_means",
    "fit_dl_curve",
    "fit_dl_family",
    "resource_table",
    "resource_table_csv",
]

_Z0_FLOOR = 1e-9
_DECAY_FLOOR = 1e-12


@dataclass(frozen=True)
class DLCurve:
    """Fitted exponential resource curve for one wicket state."""

    w: int
    z0: float
    decay: float
    rss: float = 0.0

    def __post_init__(self):
        if not 0 <= self.w <= 10:
            raise ValueError(f"w must be in [0, 10], got {self.w}")
        if not self.z0 > 0:
            raise ValueError(f"z0 must be positive, got {self.z0}")
        if not self.decay > 0:
            raise ValueError(f"decay must be positive, got {self.decay}")

    def value(self, u):
        """Mean runs still to come from u overs remaining."""
        return self.z0 * (1.0 - np.exp(-self.decay * np.asarray(u, dtype=float)))


@dataclass(frozen=True)
class DLFamily(Sequence):
    """Per-wicket curve family with fit diagnostics.

    ``adjusted`` is set when the isotonic pass changed any z0; ``omitted``
    lists wicket states skipped for lack of support.
    """

    format: MatchFormat
    curves: tuple[DLCurve, ...]
    adjusted: bool = False
    omitted: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "curves", tuple(self.curves))
        object.__setattr__(self, "omitted", tuple(self.omitted))
        ws = [c.w for c in self.curves]
        if sorted(set(ws)) != ws:
            raise ValueError("curves must be sorted by w without duplicates")

    def __len__(self):
        return len(self.curves)

    def __getitem__(self, index):
        return self.curves[index]


def remaining_run_means(
    corpus: Sequence[MatchRecord],
    format: MatchFormat,
    *,
    min_support: int = DEFAULT_MIN_SUPPORT,
) -> dict[int, tuple[np.ndarray, np.ndarray, np.ndarray]]:
    """Average remaining runs by (wickets down, overs remaining).

    Walks every full-length or all-out first innings of the given format
    and, at each whole-over mark with u >= 1 overs remaining, records the
    runs scored from that point to the end of the innings under the wicket
    count at the mark.  Returns, per wicket state w = 0..9 that has at
    least one supported cell, ascending arrays (u, mean, count) keeping
    only cells with count >= min_support.
    """
    scheduled = format.scheduled_balls
    max_overs = format.scheduled_overs
    sums = np.zeros((10, max_overs + 1))
    counts = np.zeros((10, max_overs + 1), dtype=int)
    for match in corpus:
        if match.format is not format:
            continue
        for innings in match.innings:
            if innings.innings_index != 1:
                continue
            traj = trajectory(innings, format)
            if not _qualifies(traj, scheduled):
                continue
            last_mark = min(traj.completed_balls, scheduled - 6)
            marks = np.arange(0, last_mark + 1, 6)
            overs_left = max_overs - marks // 6
            at = np.maximum(marks - 1, 0)
            runs_at = np.where(marks == 0, 0, traj.runs[at])
            wkts_at = np.where(marks == 0, 0, traj.wickets[at])
            keep = wkts_at <= 9
            np.add.at(
                sums, (wkts_at[keep], overs_left[keep]), traj.total - runs_at[keep]
            )
            np.add.at(counts, (wkts_at[keep], overs_left[keep]), 1)
    points: dict[int, tuple[np.ndarray, np.ndarray, np.ndarray]] = {}
    for w in range(10):
        retained = np.flatnonzero(counts[w] >= max(min_support, 1))
        if retained.size == 0:
            continue
        u = retained.astype(float)
        means = sums[w, retained] / counts[w, retained]
        points[w] = (u, means, counts[w, retained].copy())
    return points


def fit_dl_curve(u, means, w: int) -> DLCurve:
    """Least-squares fit of Z(u) = z0 * (1 - exp(-decay * u)) to mean points."""
    u = np.asarray(u, dtype=float)
    y = np.asarray(means, dtype=float)
    if u.size != y.size:
        raise ValueError("u and means must have the same length")
    if np.unique(u).size < 2:
        raise InsufficientDataError(
            f"need at least 2 distinct overs-remaining points, have {np.unique(u).size}"
        )
    if not y.max() > 0:
        raise DegenerateFitError("all mean remaining runs are non-positive")

    def residuals(p):
        z0, decay = p
        return z0 * (1.0 - np.exp(-decay * u)) - y

    def jacobian(p):
        z0, decay = p
        damp = np.exp(-decay * u)
        return np.column_stack((1.0 - damp, z0 * u * damp))

    def positive(p):
        return p[0] > _Z0_FLOOR and p[1] > _DECAY_FLOOR

    p0 = np.array([1.2 * y.max(), 2.0 / u.max()])
    outcome = damped_gauss_newton(residuals, jacobian, p0, accept=positive)
    z0, decay = outcome.params
    if not (z0 > _Z0_FLOOR and decay > _DECAY_FLOOR):
        raise DegenerateFitError(
            f"exponential fit collapsed (z0={z0!r}, decay={decay!r})"
        )
    return DLCurve(w=w, z0=float(z0), decay=float(decay), rss=float(outcome.rss))


def _pool_nonincreasing(values: list[float]) -> list[float]:
    # pool-adjacent-violators for a non-increasing sequence, equal weights
    blocks: list[list[float]] = []  # [mean, weight]
    for v in values:
        blocks.append([v, 1.0])
        while len(blocks) > 1 and blocks[-2][0] < blocks[-1][0]:
            hi, lo = blocks.pop(), blocks.pop()
            weight = hi[1] + lo[1]
            blocks.append([(hi[0] * hi[1] + lo[0] * lo[1]) / weight, weight])
    out: list[float] = []
    for mean, weight in blocks:
        out.extend([mean] * int(round(weight)))
    return out


def fit_dl_family(
    corpus: Sequence[MatchRecord],
    format: MatchFormat,
    *,
    min_support: int = DEFAULT_MIN_SUPPORT,
    min_points: int = 3,
) -> DLFamily:
    """Fit the w = 0..9 curve family from first-innings remaining runs.

    Wicket states with fewer than min_points supported cells are omitted
    and reported in the family's ``omitted`` tuple.  Fitted z0 values are
    forced non-increasing in w by pooling adjacent violators; the family's
    ``adjusted`` flag records whether that changed anything.
    """
    points = remaining_run_means(corpus, format, min_support=min_support)
    fitted: list[DLCurve] = []
    omitted: list[int] = []
    for w in range(10):
        if w not in points or points[w][0].size < max(min_points, 2):
            omitted.append(w)
            continue
        u, means, _ = points[w]
        fitted.append(fit_dl_curve(u, means, w))
    if not fitted:
        raise InsufficientDataError(
            f"no wicket state has enough support to fit a {format.name} family"
        )
    pooled = _pool_nonincreasing([c.z0 for c in fitted])
    adjusted = any(new != old.z0 for new, old in zip(pooled, fitted))
    if adjusted:
        fitted = [
            DLCurve(w=c.w, z0=new, decay=c.decay, rss=c.rss)
            for new, c in zip(pooled, fitted)
        ]
    return DLFamily(
        format=format, curves=tuple(fitted), adjusted=adjusted, omitted=tuple(omitted)
    )


@dataclass(frozen=True)
class ResourceTable:
    """Resource percentages indexed by overs remaining and wickets lost."""

    max_overs: int
    grid: np.ndarray = field(repr=False)  # shape (max_overs + 1, 11)

    def __post_init__(self):
        grid = np.asarray(self.grid, dtype=float)
        if grid.shape != (self.max_overs + 1, 11):
            raise ValueError(f"grid shape {grid.shape} does not match max_overs")
        grid = grid.copy()
        grid.flags.writeable = False
        object.__setattr__(self, "grid", grid)

    def percentage(self, overs_remaining: int, wickets_lost: int) -> float:
        if not 0 <= overs_remaining <= self.max_overs:
            raise ValueError(f"overs_remaining out of range: {overs_remaining}")
        if not 0 <= wickets_lost <= 10:
            raise ValueError(f"wickets_lost out of range: {wickets_lost}")
        return float(self.grid[overs_remaining, wickets_lost])


def resource_table(family: Sequence[DLCurve], max_overs: int) -> ResourceTable:
    """Percentage of full resources for every (overs remaining, wickets) cell.

    percentage(u, w) = 100 * Z(u, w) / Z(max_overs, 0).  Wicket states
    without a curve borrow the nearest fitted state below them, and every
    cell is clamped to the cell one wicket earlier so the table is
    non-increasing in w even when fitted decay rates cross.
    """
    if max_overs <= 0:
        raise ValueError(f"max_overs must be positive, got {max_overs}")
    by_w = {curve.w: curve for curve in family}
    if 0 not in by_w:
        raise IncompleteFamilyError("resource table requires the w=0 curve")
    scale = float(by_w[0].value(max_overs))
    overs = np.arange(max_overs + 1, dtype=float)
    grid = np.zeros((max_overs + 1, 11))
    curve = by_w[0]
    for w in range(10):
        curve = by_w.get(w, curve)
        # divide first: value(max_overs)/scale is exactly 1, so the w=0
        # full-allocation corner lands on 100.0 with no round-off
        raw = 100.0 * (curve.value(overs) / scale)
        grid[:, w] = raw if w == 0 else np.minimum(grid[:, w - 1], raw)
    return ResourceTable(max_overs=max_overs, grid=grid)


def resource_table_csv(table: ResourceTable) -> str:
    """Render the table as CSV, rows u = max_overs..0, columns w = 0..10."""
    lines = ["overs_remaining," + ",".join(str(w) for w in range(11))]
    for u in range(table.max_overs, -1, -1):
        cells = ",".join(f"{table.percentage(u, w):.1f}" for w in range(11))
        lines.append(f"{u},{cells}")
    return "\n".join(lines) + "\n"
