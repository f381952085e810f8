"""Transcript normalization and word error rate.

Normalization lowercases, expands contractions, and strips punctuation,
except that clock times keep their colon ("6:47" stays one token) so a
misheard time still scores as a single error. WER is word-level edit
distance over the reference length and may exceed 1 when insertions
dominate.
"""
from __future__ import annotations

import re

from .alignment import AnalyticsError


class EmptyReference(AnalyticsError):
    pass


# lowercase contraction -> expansion; applied before punctuation stripping
_CONTRACTIONS = {
    "i'm": "i am",
    "i've": "i have",
    "i'll": "i will",
    "i'd": "i would",
    "you're": "you are",
    "you've": "you have",
    "you'll": "you will",
    "he's": "he is",
    "she's": "she is",
    "it's": "it is",
    "we're": "we are",
    "we've": "we have",
    "we'll": "we will",
    "they're": "they are",
    "they've": "they have",
    "that's": "that is",
    "there's": "there is",
    "here's": "here is",
    "what's": "what is",
    "who's": "who is",
    "let's": "let us",
    "don't": "do not",
    "doesn't": "does not",
    "didn't": "did not",
    "can't": "cannot",
    "couldn't": "could not",
    "won't": "will not",
    "wouldn't": "would not",
    "shouldn't": "should not",
    "isn't": "is not",
    "aren't": "are not",
    "wasn't": "was not",
    "weren't": "were not",
    "haven't": "have not",
    "hasn't": "has not",
    "hadn't": "had not",
    "gonna": "going to",
    "wanna": "want to",
}
_CONTRACTION_RE = re.compile(
    r"\b(?:" + "|".join(re.escape(c) for c in _CONTRACTIONS) + r")\b"
)
_CLOCK_TOKEN = re.compile(r"\d{1,2}(?::\d{2})+")


def normalize_text(s: str) -> list[str]:
    text = s.lower().replace("’", "'")
    text = _CONTRACTION_RE.sub(lambda m: _CONTRACTIONS[m.group(0)], text)
    text = text.replace("'", "")  # possessives collapse: lowe's -> lowes
    text = re.sub(r"[^a-z0-9:]+", " ", text)
    tokens: list[str] = []
    for tok in text.split():
        if _CLOCK_TOKEN.fullmatch(tok):
            tokens.append(tok)
        else:
            tokens.extend(t for t in tok.split(":") if t)
    return tokens


def edit_distance(ref: list[str], hyp: list[str]) -> int:
    """Word-level Levenshtein distance, two-row rolling table."""
    if not ref:
        return len(hyp)
    if not hyp:
        return len(ref)
    prev = list(range(len(hyp) + 1))
    for i, r in enumerate(ref, start=1):
        cur = [i] + [0] * len(hyp)
        for j, h in enumerate(hyp, start=1):
            cur[j] = min(
                prev[j] + 1,  # deletion
                cur[j - 1] + 1,  # insertion
                prev[j - 1] + (r != h),  # substitution
            )
        prev = cur
    return prev[-1]


def wer(reference: str, hypothesis: str) -> float:
    ref = normalize_text(reference)
    hyp = normalize_text(hypothesis)
    if not ref:
        raise EmptyReference("reference normalizes to no tokens")
    return edit_distance(ref, hyp) / len(ref)
