"""Scripted-participant simulator: full device traces with known answers."""
from .export import report_payload, write_trace
from .harness import SimTrace, run, trace_summary_line
from .script import (
    BehaviorScript,
    CueMode,
    FillerProfile,
    InvalidScript,
    Participant,
    ReportPolicy,
    ScriptEntry,
    SleepProfile,
    load_default_script,
    parse_script,
    validate_script,
)
from .verify import TIMESPAN_TOLERANCE_MS, ledger_mismatches
from .transcripts import (
    CUE_CLASS,
    TemplateError,
    TranscriptSpec,
    render_filler,
    render_transcript,
    supported_secondary_types,
)

__all__ = [
    "BehaviorScript",
    "CUE_CLASS",
    "CueMode",
    "FillerProfile",
    "InvalidScript",
    "Participant",
    "ReportPolicy",
    "ScriptEntry",
    "SimTrace",
    "SleepProfile",
    "TemplateError",
    "TranscriptSpec",
    "TIMESPAN_TOLERANCE_MS",
    "ledger_mismatches",
    "load_default_script",
    "parse_script",
    "render_filler",
    "render_transcript",
    "report_payload",
    "run",
    "supported_secondary_types",
    "trace_summary_line",
    "validate_script",
    "write_trace",
]
