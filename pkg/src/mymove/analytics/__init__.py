from .alignment import (
    UNCOVERED,
    AnalyticsError,
    DegenerateInterval,
    GroundTruthSegment,
    StepBin,
    align,
    attributed_steps,
    bins_from_vitals,
    cadence,
    check_sorted,
)
from .intensity import (
    MODERATE_CADENCE,
    MODERATE_PCT_HIGH,
    MODERATE_PCT_LOW,
    IntensityBand,
    IntensityCall,
    IntensityMeasurement,
    InvalidAge,
    NoMeasurement,
    classify_intensity,
    hr_max,
    pct_hrmax,
)
from .wer import EmptyReference, edit_distance, normalize_text, wer
from .regression import (
    DEFAULT_ALPHA_KEEP,
    EliminationOutcome,
    EliminationStep,
    RankDeficient,
    RegressionResult,
    backward_eliminate,
    ols_fit,
)
from .summaries import (
    DeviceSummary,
    StudySummary,
    method_table,
    render_table,
    summarize,
)
from .figures import render_effort_metrics, render_timeline, render_wear_hours
from .timeline import read_segments_csv, render_timeline_csv, timeline_rows

__all__ = [
    "AnalyticsError",
    "DEFAULT_ALPHA_KEEP",
    "DegenerateInterval",
    "DeviceSummary",
    "EliminationOutcome",
    "EliminationStep",
    "EmptyReference",
    "GroundTruthSegment",
    "IntensityBand",
    "IntensityCall",
    "IntensityMeasurement",
    "InvalidAge",
    "MODERATE_CADENCE",
    "MODERATE_PCT_HIGH",
    "MODERATE_PCT_LOW",
    "NoMeasurement",
    "RankDeficient",
    "RegressionResult",
    "StepBin",
    "StudySummary",
    "UNCOVERED",
    "align",
    "attributed_steps",
    "backward_eliminate",
    "bins_from_vitals",
    "cadence",
    "check_sorted",
    "classify_intensity",
    "edit_distance",
    "hr_max",
    "method_table",
    "normalize_text",
    "ols_fit",
    "pct_hrmax",
    "read_segments_csv",
    "render_effort_metrics",
    "render_table",
    "render_timeline",
    "render_timeline_csv",
    "render_wear_hours",
    "summarize",
    "timeline_rows",
    "wer",
]
