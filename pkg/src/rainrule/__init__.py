"""Rain-rule analytics for limited-overs cricket.

The package turns ball-by-ball match logs into: innings-total histograms
with a three-parameter normal fit, wicket-conditioned mean scoring curves
with zero-intercept polynomial fits, closed-form revised targets for
rain-interrupted chases, and an exponential remaining-resource baseline
for comparison.
"""

from .ball_log import (
    CSV_HEADER,
    Corpus,
    DeliveryEvent,
    Diagnostic,
    ExtrasKind,
    InningsRecord,
    InningsTrajectory,
    MatchFormat,
    MatchRecord,
    ParseWarning,
    export_csv,
    load_corpus,
    parse_match,
    trajectory,
)
from .dl_reference import (
    DLCurve,
    DLFamily,
    ResourceTable,
    fit_dl_curve,
    fit_dl_family,
    remaining_run_means,
    resource_table,
    resource_table_csv,
)
from .errors import (
    DataError,
    DegenerateCurveError,
    DegenerateFitError,
    EmptyCurveError,
    EmptySelectionError,
    FitError,
    IncompleteFamilyError,
    InsufficientDataError,
    InvalidScenarioError,
    ParseError,
    RainRuleError,
    ScenarioError,
    SingularFitError,
    UnsupportedFormatError,
)
from .run_curves import (
    PolyFit,
    WicketCurve,
    curve_csv,
    fit_poly,
    poly_eval,
    wicket_curve,
)
from .score_stats import (
    Histogram,
    NormalFit,
    build_histogram,
    fit_normal,
    histogram_csv,
    normal_curve,
    totals,
)
from .target_engine import (
    InterruptionScenario,
    RevisedTarget,
    area_full,
    area_interrupted,
    resource_ratio,
    revise_target,
    revision_to_json,
    scenario_from_json,
)

__version__ = "0.1.0"

__all__ = [
    "CSV_HEADER",
    "Corpus",
    "DLCurve",
    "DLFamily",
    "DataError",
    "DegenerateCurveError",
    "DegenerateFitError",
    "DeliveryEvent",
    "Diagnostic",
    "EmptyCurveError",
    "EmptySelectionError",
    "ExtrasKind",
    "FitError",
    "Histogram",
    "IncompleteFamilyError",
    "InningsRecord",
    "InningsTrajectory",
    "InsufficientDataError",
    "InterruptionScenario",
    "InvalidScenarioError",
    "MatchFormat",
    "MatchRecord",
    "NormalFit",
    "ParseError",
    "ParseWarning",
    "PolyFit",
    "RainRuleError",
    "ResourceTable",
    "RevisedTarget",
    "ScenarioError",
    "SingularFitError",
    "UnsupportedFormatError",
    "WicketCurve",
    "area_full",
    "area_interrupted",
    "build_histogram",
    "curve_csv",
    "export_csv",
    "fit_dl_curve",
    "fit_dl_family",
    "fit_normal",
    "fit_poly",
    "histogram_csv",
    "load_corpus",
    "normal_curve",
    "parse_match",
    "poly_eval",
    "remaining_run_means",
    "resource_ratio",
    "resource_table",
    "resource_table_csv",
    "revise_target",
    "revision_to_json",
    "scenario_from_json",
    "totals",
    "trajectory",
    "wicket_curve",
    "__version__",
]
