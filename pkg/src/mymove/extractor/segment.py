"""Segmenting a transcript into one or more activities and classifying
how they relate (single, sequential, simultaneous, compound).

Lexicon matches of the same activity type collapse into one activity.
For each adjacent pair of distinct activities the connector region (the text
from the end of the first span through the end of the second) is scanned for
simultaneity and sequence markers; with neither present, the pair defaults to
simultaneous when both mentions are progressive ("-ing") and share a
sentence, else sequential.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .lexicon import LexiconEntry, Match, find_activity_matches
from .taxonomy import ACTIVITY_TYPES, ReportStructure, Semantic

_SIM_MARKERS = re.compile(
    r"\bwhile\b|\bin\s+front\s+of\b|\bduring\b|\bat\s+the\s+same\s+time\b|\bsimultaneously\b",
    re.IGNORECASE,
)
_SEQ_MARKERS = re.compile(
    r"\band\s+then\b|\bthen\b|\bafter\s+that\b|\bafterwards?\b|\bfollowed\s+by\b"
    r"|\band\s+now\b|\bbefore\s+that\b",
    re.IGNORECASE,
)
_ING = re.compile(r"\w+ing\b", re.IGNORECASE)
_SENTENCE_BREAK = re.compile(r"[.!?]")


@dataclass(frozen=True)
class ActivityMention:
    activity_type: str
    semantic: Semantic
    span: tuple[int, int]  # first mention


@dataclass(frozen=True)
class SegmentedReport:
    structure: ReportStructure
    activities: tuple[ActivityMention, ...]
    # relation per adjacent pair: "simultaneous" | "sequential"
    relations: tuple[str, ...]


def _merge_same_type(matches: list[Match]) -> list[ActivityMention]:
    mentions: list[ActivityMention] = []
    seen: set[str] = set()
    for m in matches:
        if m.value in seen:
            continue
        seen.add(m.value)
        mentions.append(
            ActivityMention(
                activity_type=m.value,
                semantic=ACTIVITY_TYPES[m.value],
                span=m.span,
            )
        )
    return mentions


def _classify_pair(text: str, a: ActivityMention, b: ActivityMention) -> str:
    connector = text[a.span[1] : b.span[1]]
    if _SIM_MARKERS.search(connector):
        return "simultaneous"
    if _SEQ_MARKERS.search(connector):
        return "sequential"
    # fallback: two progressive mentions in one sentence read as concurrent
    a_text = text[a.span[0] : a.span[1]]
    b_text = text[b.span[0] : b.span[1]]
    between = text[a.span[1] : b.span[0]]
    same_sentence = not _SENTENCE_BREAK.search(between)
    if same_sentence and _ING.search(a_text) and _ING.search(b_text):
        return "simultaneous"
    return "sequential"


def segment_report(text: str, entries: list[LexiconEntry]) -> SegmentedReport:
    matches = find_activity_matches(text, entries)
    mentions = _merge_same_type(matches)

    if not mentions:
        return SegmentedReport(ReportStructure.UNCODED, (), ())
    if len(mentions) == 1:
        return SegmentedReport(ReportStructure.SINGLETON, tuple(mentions), ())

    relations = tuple(
        _classify_pair(text, mentions[i], mentions[i + 1])
        for i in range(len(mentions) - 1)
    )
    if all(r == "simultaneous" for r in relations):
        structure = ReportStructure.MULTITASKING
    elif all(r == "sequential" for r in relations):
        structure = ReportStructure.SEQUENTIAL
    else:
        structure = ReportStructure.COMPOUND
    return SegmentedReport(structure, tuple(mentions), relations)
