"""Shared fixtures and the quadrature oracle used by the tests."""

from __future__ import annotations

import numpy as np
import pytest

from rainrule import MatchFormat
from rainrule.fixtures import demo_corpus, exponential_profile_corpus, synthetic_corpus


def adaptive_simpson(f, lo: float, hi: float, tol: float = 1e-12) -> float:
    """Adaptive Simpson quadrature with Richardson extrapolation.

    Plain Simpson is already exact for cubics, so for the polynomials under
    test the adaptive machinery only confirms the estimate; it recurses for
    anything rougher.
    """

    def simpson(a, b, fa, fm, fb):
        return (b - a) / 6.0 * (fa + 4.0 * fm + fb)

    def recurse(a, b, fa, fm, fb, whole, eps, depth):
        m = 0.5 * (a + b)
        lm, rm = 0.5 * (a + m), 0.5 * (m + b)
        flm, frm = f(lm), f(rm)
        left = simpson(a, m, fa, flm, fm)
        right = simpson(m, b, fm, frm, fb)
        delta = left + right - whole
        if depth <= 0 or abs(delta) <= 15.0 * eps:
            return left + right + delta / 15.0
        return recurse(a, m, fa, flm, fm, left, eps / 2.0, depth - 1) + recurse(
            m, b, fm, frm, fb, right, eps / 2.0, depth - 1
        )

    if hi == lo:
        return 0.0
    fa, fb = f(lo), f(hi)
    fm = f(0.5 * (lo + hi))
    whole = simpson(lo, hi, fa, fm, fb)
    # tol is relative; the cap keeps round-off noise from forcing full depth
    return recurse(lo, hi, fa, fm, fb, whole, tol * max(1.0, abs(whole)), 30)


@pytest.fixture(scope="session")
def simpson_oracle():
    """The quadrature function, for tests that cross-check closed forms."""
    return adaptive_simpson


@pytest.fixture(scope="session")
def demo():
    """The deterministic mixed-format corpus used by the heavier tests."""
    return demo_corpus()


@pytest.fixture(scope="session")
def small_odi():
    return synthetic_corpus(MatchFormat.ODI, 12, seed=7)


@pytest.fixture(scope="session")
def profile_odi():
    return exponential_profile_corpus(MatchFormat.ODI)
