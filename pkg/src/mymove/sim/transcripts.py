"""Template bank for synthetic spoken reports.

Every phrase here is chosen so the extraction pipeline recovers exactly the
activity types, structure, time cue, and effort the simulator scripted: the
openers carry one lexicon mention each, the time suffixes fire one cue rule
each, and nothing collides with completion verbs, "been ... for", or clock
grammar by accident. Tests enforce the round trip over the whole bank.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

from ..extractor.taxonomy import EffortCategory
from ..extractor.timecue import TimeCueClass
from .script import CueMode


class TemplateError(ValueError):
    pass


# cue mode -> completeness class the extractor should land on
CUE_CLASS: dict[CueMode, TimeCueClass] = {
    CueMode.NONE: TimeCueClass.NONE,
    CueMode.COMPLETION: TimeCueClass.INCOMPLETE,
    CueMode.DURATION: TimeCueClass.INCOMPLETE,
    CueMode.DURATION_COMPLETED: TimeCueClass.COMPLETE,
    CueMode.ELAPSED: TimeCueClass.COMPLETE,
    CueMode.CLOCK_PAIR: TimeCueClass.COMPLETE,
}

_OPENERS: dict[str, tuple[str, ...]] = {
    "cleaning_arranging_carrying": (
        "I'm vacuuming the living room",
        "I'm folding the laundry",
    ),
    "preparing_food": ("I'm making dinner", "I'm cooking at the stove"),
    "driving_in_vehicle": ("I'm driving to town", "I'm riding in the car"),
    "gardening": ("I'm watering the plants", "I'm weeding in my garden"),
    "caring_for_pets": ("I'm feeding the dog", "I'm brushing the cat"),
    "offline_shopping": ("I'm grocery shopping", "I'm at the supermarket"),
    "other_housekeeping": ("I'm doing household chores", "I'm running errands"),
    "eating_food": ("I'm eating lunch", "I'm having a snack"),
    "dressing": ("I'm getting dressed",),
    "personal_hygiene": ("I'm brushing my teeth", "I'm showering"),
    "treatment": ("I'm at physical therapy", "I'm getting treatment"),
    "non_exercise_stepping": (
        "I'm walking around the house",
        "I walked upstairs",
    ),
    "computer": ("I'm on my computer", "I'm working on my laptop"),
    "tv": ("I'm watching TV", "I'm sitting in front of the TV"),
    "mobile_device": ("I'm scrolling on my phone",),
    "device_unspecified": ("I'm watching a video", "I'm on YouTube"),
    "cardio": ("I went for a walk", "I'm on the treadmill"),
    "strength_stretching": (
        "I'm doing stretching exercises",
        "I'm lifting weights",
    ),
    "other_exercise": ("I'm doing tai chi", "I'm doing breathing exercises"),
    "paperwork_desk_work": ("I'm paying bills", "I'm filling out paperwork"),
    "reading_on_paper": ("I'm reading a book", "I'm reading the newspaper"),
    "puzzle_table_game": ("I'm working on a puzzle", "I'm playing cards"),
    "crafting_artwork": ("I'm knitting", "I'm sewing"),
    "seeing_at_theater": ("I'm at the movies", "I'm at a concert"),
    "musical_instrument": ("I'm playing the piano", "I'm practicing the guitar"),
    "nothing_waiting": (
        "I'm just sitting around, not doing much",
        "I'm waiting at the pharmacy",
    ),
    "napping": ("I was napping", "I took a nap"),
    "face_to_face": ("I'm chatting with my neighbor", "I'm visiting with a friend"),
    "voice_call": ("I'm talking on the phone", "I'm on a zoom call"),
}

# -ing phrases safe to hang after "while ..."; only these types may appear
# as the second member of a simultaneous pair
_ING_FORMS: dict[str, str] = {
    "tv": "watching TV",
    "eating_food": "eating a snack",
    "voice_call": "talking on the phone",
    "preparing_food": "cooking at the stove",
    "cleaning_arranging_carrying": "vacuuming",
    "mobile_device": "scrolling on my phone",
    "face_to_face": "chatting with my neighbor",
    "reading_on_paper": "reading a book",
    "crafting_artwork": "knitting",
    "gardening": "watering the plants",
    "device_unspecified": "watching a video",
}

_EFFORT_PHRASES: dict[EffortCategory, tuple[str, ...]] = {
    EffortCategory.RELAXED: ("Pretty leisurely.",),
    EffortCategory.NO_EFFORT: ("No effort at all.",),
    EffortCategory.NO_TO_LOW: ("Little to no effort.",),
    EffortCategory.LOW: ("Light exertion.", "Minimal effort."),
    EffortCategory.LOW_TO_MODERATE: ("Light to moderate activity.",),
    EffortCategory.MODERATE: ("Moderate exertion.",),
    EffortCategory.MODERATE_TO_STRENUOUS: ("Medium to heavy intensity.",),
    EffortCategory.STRENUOUS: ("It was strenuous.", "A great deal of energy."),
    EffortCategory.UNCATEGORIZABLE: ("Not much effort.",),
}

FILLER_TRANSCRIPTS = (
    "Just sitting around, not doing much.",
    "I'm just relaxing in my chair.",
    "Sitting around waiting, nothing much going on.",
)


@dataclass(frozen=True)
class TranscriptSpec:
    activity_type: str
    cue_mode: CueMode = CueMode.NONE
    minutes: Optional[int] = None
    start_clock: Optional[tuple[int, int]] = None  # (hour24, minute)
    end_clock: Optional[tuple[int, int]] = None
    effort: Optional[EffortCategory] = None
    secondary_type: Optional[str] = None


def _spoken_clock(clock: tuple[int, int]) -> str:
    hour, minute = clock
    h12 = ((hour - 1) % 12) + 1
    return f"{h12}:{minute:02d}"


def _minutes_phrase(n: int) -> str:
    unit = "minute" if n == 1 else "minutes"
    return f"{n} {unit}"


def render_transcript(spec: TranscriptSpec, rng: random.Random) -> str:
    openers = _OPENERS.get(spec.activity_type)
    if not openers:
        raise TemplateError(f"no phrase bank for {spec.activity_type!r}")
    body = rng.choice(openers)

    if spec.secondary_type is not None:
        ing = _ING_FORMS.get(spec.secondary_type)
        if ing is None:
            raise TemplateError(
                f"{spec.secondary_type!r} has no -ing form for a while-clause"
            )
        body = f"{body} while {ing}"

    mode = spec.cue_mode
    if mode in (CueMode.DURATION, CueMode.DURATION_COMPLETED, CueMode.ELAPSED):
        if spec.minutes is None or spec.minutes < 1:
            raise TemplateError(f"{mode.value} cue needs a positive minute count")
    if mode is CueMode.NONE:
        sentence = f"{body}."
    elif mode is CueMode.COMPLETION:
        sentence = f"{body}. Just finished that."
    elif mode is CueMode.DURATION:
        sentence = f"{body}, for about {_minutes_phrase(spec.minutes)}."
    elif mode is CueMode.DURATION_COMPLETED:
        sentence = f"{body}. Just finished, it took about {_minutes_phrase(spec.minutes)}."
    elif mode is CueMode.ELAPSED:
        sentence = f"{body}, for the past {_minutes_phrase(spec.minutes)}."
    elif mode is CueMode.CLOCK_PAIR:
        if spec.start_clock is None or spec.end_clock is None:
            raise TemplateError("clock_pair cue needs both clocks")
        sentence = (
            f"{body}, from {_spoken_clock(spec.start_clock)} "
            f"until {_spoken_clock(spec.end_clock)}."
        )
    else:  # pragma: no cover - enum is closed
        raise TemplateError(f"unhandled cue mode {mode!r}")

    if spec.effort is not None:
        sentence = f"{sentence} {rng.choice(_EFFORT_PHRASES[spec.effort])}"
    return sentence


def render_filler(rng: random.Random) -> str:
    return rng.choice(FILLER_TRANSCRIPTS)


def supported_secondary_types() -> frozenset[str]:
    return frozenset(_ING_FORMS)
