"""Deterministic damped Gauss-Newton solver for small nonlinear fits.

Both nonlinear models in this package (the three-parameter normal curve and
the two-parameter exponential resource curve) are fitted with the same
routine: Gauss-Newton steps with Levenberg-style damping on the normal-matrix
diagonal.  The damping factor starts at 1e-3, grows x10 on a rejected step
and shrinks /10 on an accepted one.  There is no randomness anywhere, so a
given problem always produces bit-identical results.
"""

from __future__ import annotations

from collections.abc import Callable

import numpy as np

__all__ = ["FitOutcome", "damped_gauss_newton"]

_LAMBDA_START = 1e-3
_LAMBDA_GROW = 10.0
_LAMBDA_SHRINK = 10.0
_LAMBDA_MAX = 1e12


class FitOutcome:
    """Solution of a damped Gauss-Newton run."""

    __slots__ = ("params", "rss", "iterations", "converged")

    def __init__(self, params: np.ndarray, rss: float, iterations: int, converged: bool):
        self.params = params
        self.rss = rss
        self.iterations = iterations
        self.converged = converged


def damped_gauss_newton(
    residuals: Callable[[np.ndarray], np.ndarray],
    jacobian: Callable[[np.ndarray], np.ndarray],
    p0: np.ndarray,
    *,
    rel_tol: float = 1e-10,
    max_iter: int = 500,
    accept: Callable[[np.ndarray], bool] | None = None,
) -> FitOutcome:
    """Minimise ``sum(residuals(p)**2)`` starting from ``p0``.

    ``accept`` may veto candidate parameter vectors (e.g. to keep a scale
    parameter positive); a vetoed step is treated like an increase in RSS,
    so the damping grows and a shorter step is tried.  Convergence is
    declared when the relative RSS change of an accepted step falls below
    ``rel_tol``.
    """
    p = np.asarray(p0, dtype=float).copy()
    r = residuals(p)
    rss = float(r @ r)
    lam = _LAMBDA_START

    for iteration in range(1, max_iter + 1):
        jac = jacobian(p)
        normal = jac.T @ jac
        gradient = jac.T @ r
        diag = np.diag(normal).copy()
        diag[diag <= 0.0] = 1.0

        try:
            step = np.linalg.solve(normal + lam * np.diag(diag), -gradient)
        except np.linalg.LinAlgError:
            lam = min(lam * _LAMBDA_GROW, _LAMBDA_MAX)
            continue

        candidate = p + step
        if accept is not None and not accept(candidate):
            lam = min(lam * _LAMBDA_GROW, _LAMBDA_MAX)
            if lam >= _LAMBDA_MAX:
                return FitOutcome(p, rss, iteration, False)
            continue

        r_new = residuals(candidate)
        rss_new = float(r_new @ r_new)
        if rss_new <= rss:
            change = rss - rss_new
            p, r, rss = candidate, r_new, rss_new
            lam = lam / _LAMBDA_SHRINK
            if change <= rel_tol * max(rss, np.finfo(float).tiny):
                return FitOutcome(p, rss, iteration, True)
        else:
            lam = min(lam * _LAMBDA_GROW, _LAMBDA_MAX)
            if lam >= _LAMBDA_MAX:
                # no downhill step exists at any damping: local optimum
                return FitOutcome(p, rss, iteration, True)

    return FitOutcome(p, rss, max_iter, False)
