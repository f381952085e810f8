"""Bundled transcript fixtures with expected codes, used by the test suite
and by `mymove extract --selftest`."""
from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from typing import Optional

from .taxonomy import EffortCategory, ReportStructure
from .timecue import TimeCueClass


@dataclass(frozen=True)
class FixtureRow:
    fixture_id: str
    structure: ReportStructure
    activity_types: tuple[str, ...]
    time_cue: TimeCueClass
    effort: Optional[EffortCategory]
    text: str


def load_fixture_corpus() -> list[FixtureRow]:
    raw = (
        resources.files("mymove.extractor")
        .joinpath("data/fixture_corpus.tsv")
        .read_text(encoding="utf-8")
    )
    rows: list[FixtureRow] = []
    for line in raw.splitlines():
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        fixture_id, structure, types, cue, effort, text = line.split("\t")
        rows.append(
            FixtureRow(
                fixture_id=fixture_id,
                structure=ReportStructure(structure),
                activity_types=tuple(types.split("|")),
                time_cue=TimeCueClass(cue),
                effort=None if effort == "-" else EffortCategory(effort),
                text=text,
            )
        )
    return rows
