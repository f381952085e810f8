from .taxonomy import (
    ACTIVITY_TYPES,
    EffortCategory,
    ReportStructure,
    Semantic,
    effort_score,
)
from .lexicon import (
    LexiconEntry,
    LexiconError,
    Match,
    find_activity_matches,
    find_effort_match,
    load_lexicon,
    parse_lexicon,
)
from .timecue import (
    CrossMidnight,
    FutureInterval,
    ResolutionError,
    TimeCue,
    TimeCueClass,
    extract_time_cue,
    resolve_timespan,
)
from .effort import EffortCue, extract_effort
from .segment import ActivityMention, SegmentedReport, segment_report
from .pipeline import (
    ExtractedActivity,
    Extractor,
    activity_from_record,
    extract_report,
)

__all__ = [
    "ACTIVITY_TYPES",
    "ActivityMention",
    "activity_from_record",
    "CrossMidnight",
    "EffortCategory",
    "EffortCue",
    "ExtractedActivity",
    "Extractor",
    "FutureInterval",
    "LexiconEntry",
    "LexiconError",
    "Match",
    "ReportStructure",
    "ResolutionError",
    "SegmentedReport",
    "Semantic",
    "TimeCue",
    "TimeCueClass",
    "effort_score",
    "extract_effort",
    "extract_report",
    "extract_time_cue",
    "find_activity_matches",
    "find_effort_match",
    "load_lexicon",
    "parse_lexicon",
    "resolve_timespan",
    "segment_report",
]
