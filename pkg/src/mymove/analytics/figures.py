"""Matplotlib renderings for the report paths: a three-lane timeline
(ground truth / report intervals / step bars) and effort-metric charts.
Figures write straight to files; the Agg backend keeps this headless."""
from __future__ import annotations

from collections import Counter
from typing import Optional, Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
from matplotlib.patches import Patch

from ..extractor.pipeline import ExtractedActivity
from ..types import MS_PER_HOUR, MS_PER_MINUTE
from .alignment import GroundTruthSegment, StepBin
from .intensity import IntensityCall

GT_COLORS = {
    "sitting": "#c6dbef",
    "lying": "#9ecae1",
    "standing": "#a1d99b",
    "stepping": "#31a354",
    "in_vehicle": "#bdbdbd",
    "biking": "#fd8d3c",
}
_REPORT_COLOR = "#756bb1"


def _hours(ms: int, origin: int) -> float:
    return (ms - origin) / MS_PER_HOUR


def render_timeline(
    path: str,
    segments: Sequence[GroundTruthSegment],
    activities: Sequence[ExtractedActivity],
    step_bins: Sequence[StepBin],
    title: Optional[str] = None,
) -> None:
    spans = [s.start for s in segments] + [b.start for b in step_bins]
    spans += [a.timespan[0] for a in activities if a.timespan]
    origin = min(spans) if spans else 0
    fig, (ax_gt, ax_rep, ax_steps) = plt.subplots(
        3, 1, sharex=True, figsize=(11, 5.5), height_ratios=[1, 1, 1.4]
    )

    for seg in segments:
        ax_gt.broken_barh(
            [(_hours(seg.start, origin), (seg.end - seg.start) / MS_PER_HOUR)],
            (0.1, 0.8),
            facecolors=GT_COLORS.get(seg.gt_class.value, "#dddddd"),
        )
    ax_gt.set_ylim(0, 1)
    ax_gt.set_yticks([])
    ax_gt.set_ylabel("ground\ntruth", rotation=0, ha="right", va="center")
    seen = {s.gt_class.value for s in segments}
    ax_gt.legend(
        handles=[Patch(color=GT_COLORS[k], label=k) for k in GT_COLORS if k in seen],
        loc="upper right",
        ncol=min(6, max(1, len(seen))),
        fontsize=7,
        frameon=False,
    )

    for act in activities:
        if act.timespan is None:
            continue
        left = _hours(act.timespan[0], origin)
        width = (act.timespan[1] - act.timespan[0]) / MS_PER_HOUR
        ax_rep.broken_barh([(left, width)], (0.1, 0.8), facecolors=_REPORT_COLOR)
        ax_rep.text(
            left + width / 2,
            0.5,
            act.activity_type,
            ha="center",
            va="center",
            fontsize=6,
            color="white",
            clip_on=True,
        )
    ax_rep.set_ylim(0, 1)
    ax_rep.set_yticks([])
    ax_rep.set_ylabel("reports", rotation=0, ha="right", va="center")

    if step_bins:
        xs = [_hours(b.start, origin) for b in step_bins]
        width = (
            (step_bins[0].end - step_bins[0].start) / MS_PER_HOUR if step_bins else 0.01
        )
        ax_steps.bar(
            xs,
            [b.steps for b in step_bins],
            width=width,
            align="edge",
            color="#3182bd",
        )
    ax_steps.set_ylabel("steps/min")
    ax_steps.set_xlabel("hours")
    if title:
        fig.suptitle(title)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def render_effort_metrics(
    path: str,
    activities: Sequence[ExtractedActivity],
    calls: Optional[Sequence[IntensityCall]] = None,
) -> None:
    fig, axes = plt.subplots(1, 2 if calls else 1, figsize=(9, 3.6), squeeze=False)
    ax = axes[0][0]
    scores = Counter(
        a.effort.score for a in activities if a.effort and a.effort.score is not None
    )
    xs = list(range(1, 8))
    ax.bar(xs, [scores.get(x, 0) for x in xs], color="#31a354")
    ax.set_xticks(xs)
    ax.set_xlabel("effort score")
    ax.set_ylabel("activities")
    ax.set_title("reported effort")

    if calls:
        ax2 = axes[0][1]
        bands = Counter(c.band.value for c in calls)
        keys = ["below_moderate", "moderate", "vigorous_candidate"]
        ax2.bar(
            range(len(keys)),
            [bands.get(k, 0) for k in keys],
            color=["#bdbdbd", "#fdae6b", "#e6550d"],
        )
        ax2.set_xticks(range(len(keys)), keys, rotation=15, fontsize=8)
        ax2.set_ylabel("activities")
        ax2.set_title("sensor intensity")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def render_wear_hours(path: str, wear_hours: dict[str, float]) -> None:
    fig, ax = plt.subplots(figsize=(8, 3))
    days = sorted(wear_hours)
    ax.bar(range(len(days)), [wear_hours[d] for d in days], color="#3182bd")
    ax.set_xticks(range(len(days)), days, rotation=30, fontsize=7)
    ax.set_ylabel("wear hours")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
