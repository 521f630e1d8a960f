"""The exponential resource model and its percentage table.

The comparison baseline models the runs still to come with u overs left and
w wickets down as Z(u, w) = z0_w * (1 - exp(-decay_w * u)). The resource
table expresses Z as a percentage of the full allocation Z(max_overs, 0).
"""

from rainrule import (
    DLCurve,
    InterruptionScenario,
    MatchFormat,
    PolyFit,
    fit_dl_family,
    resource_ratio,
    resource_table,
    resource_table_csv,
)
from rainrule.fixtures import demo_corpus

# A hand-specified family with the shape real 50-over data produces: capacity
# z0 falls as wickets go, the curve saturates a little faster when the tail
# is exposed.
family = [
    DLCurve(w=w, z0=z0, decay=decay)
    for w, (z0, decay) in enumerate(
        [
            (285.0, 0.033), (268.0, 0.035), (241.0, 0.037), (207.0, 0.039),
            (169.0, 0.041), (131.0, 0.043), (95.0, 0.045), (63.0, 0.047),
            (37.0, 0.049), (16.0, 0.051),
        ]
    )
]

table = resource_table(family, MatchFormat.ODI.scheduled_overs)

print("resource percentages (rows: overs remaining, cols: wickets down):")
print(f"{'u':>4}" + "".join(f"{w:>7}" for w in range(11)))
for u in (50, 40, 30, 20, 10, 5, 1, 0):
    row = "".join(f"{table.percentage(u, w):>7.1f}" for w in range(11))
    print(f"{u:>4}{row}")

print()
print("guarantees: non-decreasing down the u axis, non-increasing across w,")
print("100.0 at (50, 0), zero when no overs or no wickets remain")

# Put both rules on the same interruption and compare what they say.
scenario = InterruptionScenario(
    n=120, m=180, N=300, target_score=275, current_score=100, wickets_at_stoppage=4
)
fit = PolyFit(a=-0.0031, b=1.0298, c=0.0, degree=3)
ratio = resource_ratio(fit, scenario)

u_stop = (scenario.N - scenario.n) // 6
u_restart = (scenario.N - scenario.m) // 6
at_stop = table.percentage(u_stop, scenario.wickets_at_stoppage)
at_restart = table.percentage(u_restart, scenario.wickets_at_stoppage)

print()
print("same rain break, two rules:")
print(f"  area ratio of the score curve      : {ratio:.4f}")
print(f"  resource model, % at the stoppage  : {at_stop:.1f}")
print(f"  resource model, % at the restart   : {at_restart:.1f}")
print(f"  resource model, share of the chase that was lost: "
      f"{(at_stop - at_restart) / 100:.4f}")

# The CSV export is what the compare subcommand writes next to its JSON.
csv_text = resource_table_csv(table)
print()
print("csv export, first three lines:")
for line in csv_text.splitlines()[:3]:
    print(f"  {line}")

# Fitting the family from a corpus is one call. On the bundled synthetic
# corpus the per-ball rate is constant by construction, so the fitted decay
# sits near zero (the curve degenerates toward a line) and sparse high-w
# states are omitted; a real corpus separates the states properly.
fitted = fit_dl_family(demo_corpus(), MatchFormat.ODI)
print()
print(f"fit on the synthetic corpus: states={[c.w for c in fitted]}, "
      f"omitted={list(fitted.omitted)}, isotonic z0 adjustment={fitted.adjusted}")
for curve in list(fitted)[:3]:
    print(f"  w={curve.w}: z0={curve.z0:8.1f}  decay={curve.decay:.6f}")
