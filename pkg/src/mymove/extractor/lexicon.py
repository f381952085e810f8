"""Pattern lexicon: TSV-backed regex table mapping phrases to activity
types and effort categories.

Rows are (pattern, field, value, priority). Patterns are regex fragments,
compiled case-insensitive inside word-boundary guards. When matches overlap,
the winner is picked by priority, then span length, then earliest position.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from importlib import resources
from typing import Iterable, Optional

from .taxonomy import ACTIVITY_TYPES, EffortCategory


class LexiconError(ValueError):
    pass


@dataclass(frozen=True)
class LexiconEntry:
    pattern: re.Pattern
    field: str  # "activity" | "effort"
    value: str
    priority: int


@dataclass(frozen=True)
class Match:
    start: int
    end: int
    field: str
    value: str
    priority: int

    @property
    def span(self) -> tuple[int, int]:
        return self.start, self.end


def _compile(fragment: str) -> re.Pattern:
    return re.compile(rf"\b(?:{fragment})\b", re.IGNORECASE)


def parse_lexicon(lines: Iterable[str]) -> list[LexiconEntry]:
    entries: list[LexiconEntry] = []
    for lineno, line in enumerate(lines, start=1):
        line = line.rstrip("\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 4:
            raise LexiconError(f"line {lineno}: expected 4 tab-separated fields")
        fragment, field, value, priority = parts
        if field not in ("activity", "effort"):
            raise LexiconError(f"line {lineno}: unknown field {field!r}")
        if field == "activity" and value not in ACTIVITY_TYPES:
            raise LexiconError(f"line {lineno}: unknown activity type {value!r}")
        if field == "effort":
            EffortCategory(value)  # raises ValueError on a bad category
        try:
            pattern = _compile(fragment)
        except re.error as exc:
            raise LexiconError(f"line {lineno}: bad pattern: {exc}") from exc
        entries.append(LexiconEntry(pattern, field, value, int(priority)))
    return entries


def load_lexicon(extra_rows: Optional[Iterable[str]] = None) -> list[LexiconEntry]:
    """Load the bundled lexicon, optionally appending extra TSV rows."""
    text = (
        resources.files("mymove.extractor")
        .joinpath("data/lexicon.tsv")
        .read_text(encoding="utf-8")
    )
    entries = parse_lexicon(text.splitlines())
    if extra_rows:
        entries.extend(parse_lexicon(extra_rows))
    return entries


def find_matches(text: str, entries: list[LexiconEntry], field: str) -> list[Match]:
    """All non-overlapping matches for one field, best-first resolution,
    returned in text order."""
    raw: list[Match] = []
    for entry in entries:
        if entry.field != field:
            continue
        for m in entry.pattern.finditer(text):
            raw.append(Match(m.start(), m.end(), field, entry.value, entry.priority))
    raw.sort(key=lambda m: (-m.priority, -(m.end - m.start), m.start))
    kept: list[Match] = []
    for cand in raw:
        if all(cand.end <= k.start or cand.start >= k.end for k in kept):
            kept.append(cand)
    kept.sort(key=lambda m: m.start)
    return kept


def find_activity_matches(text: str, entries: list[LexiconEntry]) -> list[Match]:
    return find_matches(text, entries, "activity")


def find_effort_match(text: str, entries: list[LexiconEntry]) -> Optional[Match]:
    matches = find_matches(text, entries, "effort")
    if not matches:
        return None
    # report-level cue: highest priority wins, ties to the last mention
    # (effort statements usually trail the description)
    best = max(matches, key=lambda m: (m.priority, m.start))
    return best
