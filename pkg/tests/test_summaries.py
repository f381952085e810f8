import csv
import io

from mymove.analytics import (
    GroundTruthSegment,
    StepBin,
    method_table,
    render_table,
    render_timeline_csv,
    summarize,
)
from mymove.analytics.figures import (
    render_effort_metrics,
    render_timeline,
    render_wear_hours,
)
from mymove.capture import VerbalReport
from mymove.extractor import Extractor
from mymove.types import MS_PER_HOUR, GroundTruthClass, parse_instant

T0 = parse_instant("2021-06-07T08:00:00Z")
EXTRACTOR = Extractor()


def make_report(i: int, device: str, method: str, text: str) -> VerbalReport:
    return VerbalReport(
        report_id=f"r-{device}-{i}",
        device_id=device,
        method=method,
        submitted_at=T0 + i * MS_PER_HOUR,
        audio_duration=9.0,
        transcript=text,
    )


def corpus():
    reports = [
        make_report(0, "w1", "prompted", "I'm vacuuming the living room."),
        make_report(1, "w1", "voluntary", "Just completed a 30-minute drive."),
        make_report(2, "w1", "prompted", "um, nothing to report"),
        make_report(0, "w2", "prompted", "Eating lunch while watching TV. Low effort."),
    ]
    activities = [a for r in reports for a in EXTRACTOR.extract(r)]
    return reports, activities


class TestSummarize:
    def test_empty_corpus_all_zero(self):
        s = summarize([], [])
        assert s.per_device == {}
        assert s.totals.total_reports == 0
        assert s.totals.activity_count == 0

    def test_counts_by_method_and_structure(self):
        reports, acts = corpus()
        s = summarize(reports, acts)
        w1 = s.per_device["w1"]
        assert w1.methods == {"prompted": 2, "voluntary": 1}
        assert w1.structures["singleton"] == 2
        assert w1.structures["uncoded"] == 1
        assert w1.time_cues == {"complete": 1, "incomplete": 0, "none": 2}
        w2 = s.per_device["w2"]
        assert w2.structures["multitasking"] == 1
        assert w2.with_effort == 1
        assert s.totals.total_reports == 4
        assert s.totals.activity_count == len(acts)

    def test_method_by_cue_cross_table(self):
        reports, acts = corpus()
        s = summarize(reports, acts)
        assert s.per_device["w1"].method_by_cue["voluntary"]["complete"] == 1
        assert s.per_device["w1"].method_by_cue["prompted"]["none"] == 2

    def test_wear_hours_split_at_midnight(self):
        late = parse_instant("2021-06-07T23:00:00Z")
        s = summarize([], [], wear={"w1": [(late, late + 2 * MS_PER_HOUR)]})
        hours = s.per_device["w1"].wear_hours
        assert hours["2021-06-07"] == 1.0
        assert hours["2021-06-08"] == 1.0

    def test_table_layout(self):
        reports, acts = corpus()
        rows = method_table(summarize(reports, acts))
        assert rows[0] == ["reports", "w1", "w2", "total"]
        assert rows[1] == ["prompted", "2", "1", "3"]
        assert rows[2] == ["voluntary", "1", "0", "1"]
        assert rows[3] == ["total", "3", "1", "4"]
        text = render_table(rows)
        assert len(text.splitlines()) == 4


class TestTimelineExport:
    def test_csv_sections(self):
        segments = [
            GroundTruthSegment(T0, T0 + MS_PER_HOUR, GroundTruthClass.SITTING, 12)
        ]
        reports, acts = corpus()
        bins = [StepBin(T0, T0 + 60_000, 40)]
        text = render_timeline_csv(segments, acts, bins)
        rows = list(csv.DictReader(io.StringIO(text)))
        series = {r["series"] for r in rows}
        assert series == {"ground_truth", "report", "steps"}
        gt = next(r for r in rows if r["series"] == "ground_truth")
        assert gt["label"] == "sitting"
        assert gt["start"] == "2021-06-07T08:00:00Z"


class TestFigures:
    def test_renders_to_files(self, tmp_path):
        segments = [
            GroundTruthSegment(T0, T0 + MS_PER_HOUR, GroundTruthClass.STEPPING, 3000)
        ]
        reports, acts = corpus()
        bins = [StepBin(T0 + i * 60_000, T0 + (i + 1) * 60_000, 80) for i in range(30)]
        timeline = tmp_path / "timeline.png"
        effort = tmp_path / "effort.png"
        wear = tmp_path / "wear.png"
        render_timeline(str(timeline), segments, acts, bins, title="day 1")
        render_effort_metrics(str(effort), acts)
        render_wear_hours(str(wear), {"2021-06-07": 11.5, "2021-06-08": 12.2})
        for p in (timeline, effort, wear):
            assert p.exists() and p.stat().st_size > 1000
