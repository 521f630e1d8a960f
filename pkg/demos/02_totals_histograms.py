"""Innings-total histograms and the three-parameter normal fit.

Runs on the bundled synthetic corpus (deterministic, ~160 matches) so the
numbers below are stable run to run. Swap in load_corpus(<dir>) to do the
same on a real corpus.
"""

from rainrule import MatchFormat, build_histogram, fit_normal, totals
from rainrule.fixtures import demo_corpus

corpus = demo_corpus()
print(f"corpus: {len(corpus)} synthetic matches\n")

# One fit per (format, innings) cell, like the stats subcommand prints.
print(f"{'format':<8}{'innings':>8}{'n':>6}{'xi':>10}{'sigma':>10}{'amplitude':>12}")
fits = {}
for fmt in (MatchFormat.ODI, MatchFormat.T20I, MatchFormat.IPL):
    for innings in (1, 2):
        values = totals(corpus, fmt, innings)
        hist = build_histogram(values, bin_width=10.0)
        fit = fit_normal(hist)
        fits[fmt, innings] = (hist, fit)
        print(
            f"{fmt.value:<8}{innings:>8}{len(values):>6}"
            f"{fit.xi:>10.2f}{fit.sigma:>10.2f}{fit.amplitude:>12.1f}"
        )

print()
print("first innings sits above the second in every format, the gap is the")
print("usual chasing-side effect\n")

# Text rendering of the ODI innings-1 histogram with the fitted curve.
from rainrule import normal_curve  # noqa: E402

hist, fit = fits[MatchFormat.ODI, 1]
print("odi innings 1, counts (#) vs fitted curve (.):")
for lo, count, center in zip(hist.bin_lower_edges, hist.counts, hist.centers):
    expected = float(normal_curve(center, fit.xi, fit.sigma, fit.amplitude))
    bar = "#" * int(count)
    dot = max(int(round(expected)), 0)
    marker = "." if dot >= len(bar) else ""
    print(f"  [{int(lo):>3},{int(lo + hist.bin_width):>3})  {bar:<{max(dot, 1)}}{marker}")
print(f"\nresidual sum of squares: {fit.rss:.3f}")
