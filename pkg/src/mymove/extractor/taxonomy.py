"""Activity and effort coding vocabularies.

29 activity types roll up into 9 semantic families. Effort is an ordered
seven-point scale with two unscored outliers: "relaxed" sits outside the
scale and hedged phrasings land in "uncategorizable".
"""
from __future__ import annotations

from enum import Enum
from typing import Optional


class Semantic(str, Enum):
    HOUSEKEEPING = "housekeeping"
    SELF_MAINTENANCE = "self-maintenance"
    NON_EXERCISE_STEPPING = "non-exercise stepping"
    SCREEN_TIME = "screen time"
    EXERCISE = "exercise"
    PAPERWORK_DESK_WORK = "paperwork/desk work"
    HOBBY_LEISURE = "hobby/leisure"
    RESTING = "resting"
    SOCIAL = "social"


# activity type id -> semantic family
ACTIVITY_TYPES: dict[str, Semantic] = {
    "cleaning_arranging_carrying": Semantic.HOUSEKEEPING,
    "preparing_food": Semantic.HOUSEKEEPING,
    "driving_in_vehicle": Semantic.HOUSEKEEPING,
    "gardening": Semantic.HOUSEKEEPING,
    "caring_for_pets": Semantic.HOUSEKEEPING,
    "offline_shopping": Semantic.HOUSEKEEPING,
    "other_housekeeping": Semantic.HOUSEKEEPING,
    "eating_food": Semantic.SELF_MAINTENANCE,
    "dressing": Semantic.SELF_MAINTENANCE,
    "personal_hygiene": Semantic.SELF_MAINTENANCE,
    "treatment": Semantic.SELF_MAINTENANCE,
    "non_exercise_stepping": Semantic.NON_EXERCISE_STEPPING,
    "computer": Semantic.SCREEN_TIME,
    "tv": Semantic.SCREEN_TIME,
    "mobile_device": Semantic.SCREEN_TIME,
    "device_unspecified": Semantic.SCREEN_TIME,
    "cardio": Semantic.EXERCISE,
    "strength_stretching": Semantic.EXERCISE,
    "other_exercise": Semantic.EXERCISE,
    "paperwork_desk_work": Semantic.PAPERWORK_DESK_WORK,
    "reading_on_paper": Semantic.HOBBY_LEISURE,
    "puzzle_table_game": Semantic.HOBBY_LEISURE,
    "crafting_artwork": Semantic.HOBBY_LEISURE,
    "seeing_at_theater": Semantic.HOBBY_LEISURE,
    "musical_instrument": Semantic.HOBBY_LEISURE,
    "nothing_waiting": Semantic.RESTING,
    "napping": Semantic.RESTING,
    "face_to_face": Semantic.SOCIAL,
    "voice_call": Semantic.SOCIAL,
}


class EffortCategory(str, Enum):
    RELAXED = "relaxed"
    NO_EFFORT = "no_effort"
    NO_TO_LOW = "no_to_low"
    LOW = "low"
    LOW_TO_MODERATE = "low_to_moderate"
    MODERATE = "moderate"
    MODERATE_TO_STRENUOUS = "moderate_to_strenuous"
    STRENUOUS = "strenuous"
    UNCATEGORIZABLE = "uncategorizable"


_EFFORT_SCORES: dict[EffortCategory, int] = {
    EffortCategory.NO_EFFORT: 1,
    EffortCategory.NO_TO_LOW: 2,
    EffortCategory.LOW: 3,
    EffortCategory.LOW_TO_MODERATE: 4,
    EffortCategory.MODERATE: 5,
    EffortCategory.MODERATE_TO_STRENUOUS: 6,
    EffortCategory.STRENUOUS: 7,
}


def effort_score(category: EffortCategory) -> Optional[int]:
    """Ordinal 1..7 position, or None for the unscored categories."""
    return _EFFORT_SCORES.get(category)


class ReportStructure(str, Enum):
    SINGLETON = "singleton"
    SEQUENTIAL = "sequential"
    MULTITASKING = "multitasking"
    COMPOUND = "compound"
    UNCODED = "uncoded"  # no recognized activity mention
