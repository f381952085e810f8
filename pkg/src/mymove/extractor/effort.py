"""Report-level effort extraction."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .lexicon import LexiconEntry, find_effort_match
from .taxonomy import EffortCategory, effort_score


@dataclass(frozen=True)
class EffortCue:
    category: EffortCategory
    score: Optional[int]
    span: tuple[int, int]


def extract_effort(text: str, entries: list[LexiconEntry]) -> Optional[EffortCue]:
    m = find_effort_match(text, entries)
    if m is None:
        return None
    category = EffortCategory(m.value)
    return EffortCue(category=category, score=effort_score(category), span=m.span)
