"""Revising the target of an interrupted chase, step by step.

Scenario: a 50-over chase of 275. The side batting second is 100 for 4
after 20 overs (legal ball 120) when rain takes out 10 overs; play resumes
at what would have been the 30-over mark (ball 180). How many runs should
win the shortened match?
"""

import json

from rainrule import (
    InterruptionScenario,
    PolyFit,
    area_full,
    area_interrupted,
    resource_ratio,
    revise_target,
    revision_to_json,
    scenario_from_json,
)
from rainrule.fixtures import fixture_path

# Cubic fitted to the four-down average-score curve; in a live pipeline the
# curves demo (03) produces these coefficients from a corpus.
fit = PolyFit(a=-0.0031, b=1.0298, c=0.0, degree=3)

scenario = InterruptionScenario(
    n=120,  # last legal ball before the rain
    m=180,  # first legal ball after the restart
    N=300,  # scheduled length of the innings
    target_score=275,
    current_score=100,
    wickets_at_stoppage=4,
)

full = area_full(fit, scenario.N)
avail = area_interrupted(fit, scenario.n, scenario.m, scenario.N)
print(f"area under the curve, uninterrupted innings : {full:,.1f}")
print(f"area actually available (balls lost removed): {avail:,.1f}")

ratio = resource_ratio(fit, scenario)
print(f"resource ratio                               : {ratio:.6f}")

revision = revise_target(fit, scenario)
remaining = scenario.target_score - scenario.current_score
print()
print(f"runs that were still needed      : {remaining}")
print(f"scaled by the ratio              : {revision.runs_remaining:.2f}")
print(f"revised total (floor of the sum) : {revision.revised_total}")
print(f"runs to win                      : {revision.revised_total + 1}")

# Same computation through the JSON interface the CLI uses.
print()
doc = json.loads(fixture_path("example_scenario.json").read_text())
print("bundled example_scenario.json:", doc)
parsed = scenario_from_json(doc)
print(json.dumps(revision_to_json(revise_target(fit, parsed)), indent=2, sort_keys=True))

# Edge cases worth knowing about.
paused = InterruptionScenario(n=150, m=150, N=300, target_score=275, current_score=100)
print()
print("zero-length interruption keeps the target:", revise_target(fit, paused).revised_total)

late = InterruptionScenario(
    n=240, m=300, N=300, target_score=275, current_score=200, wickets_at_stoppage=4
)
print("rain ends the innings at ball 240 :", revise_target(fit, late).revised_total)
