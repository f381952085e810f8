import random

import numpy as np
import pytest

from mymove.analytics import (
    DegenerateInterval,
    EmptyReference,
    GroundTruthSegment,
    IntensityBand,
    IntensityMeasurement,
    InvalidAge,
    NoMeasurement,
    RankDeficient,
    StepBin,
    align,
    backward_eliminate,
    bins_from_vitals,
    cadence,
    classify_intensity,
    edit_distance,
    hr_max,
    normalize_text,
    ols_fit,
    pct_hrmax,
    wer,
)
from mymove.ingest.types import MinuteVitals
from mymove.types import MS_PER_MINUTE, MS_PER_SECOND, GroundTruthClass

SEC = MS_PER_SECOND


def seg(start_s: int, end_s: int, cls: GroundTruthClass, steps: int = 0):
    return GroundTruthSegment(start_s * SEC, end_s * SEC, cls, steps)


def align_oracle(interval, segments):
    """Per-second brute force: count whole seconds by class."""
    start, end = interval
    counts: dict[str, int] = {}
    total = 0
    for t in range(start // SEC, end // SEC):
        ms = t * SEC
        hit = None
        for s in segments:
            if s.start <= ms < s.end:
                hit = s.gt_class.value
                break
        counts[hit or "uncovered"] = counts.get(hit or "uncovered", 0) + 1
        total += 1
    return {k: v / total for k, v in counts.items()}


class TestAlign:
    def test_interval_inside_single_segment(self):
        frac = align((60 * SEC, 120 * SEC), [seg(0, 600, GroundTruthClass.SITTING)])
        assert frac == {"sitting": 1.0}

    def test_half_and_half(self):
        segments = [
            seg(0, 100, GroundTruthClass.STEPPING),
            seg(100, 200, GroundTruthClass.STANDING),
        ]
        frac = align((50 * SEC, 150 * SEC), segments)
        assert frac == {"stepping": 0.5, "standing": 0.5}

    def test_wholly_uncovered(self):
        frac = align((0, 60 * SEC), [seg(100, 200, GroundTruthClass.SITTING)])
        assert frac == {"uncovered": 1.0}

    def test_empty_interval_rejected(self):
        with pytest.raises(DegenerateInterval):
            align((1000, 1000), [])

    def test_fractions_sum_to_one(self):
        rng = random.Random(7)
        for _ in range(50):
            cursor = 0
            segments = []
            for _ in range(rng.randrange(1, 12)):
                cursor += rng.randrange(0, 120)  # may leave gaps
                length = rng.randrange(1, 600)
                segments.append(
                    seg(
                        cursor,
                        cursor + length,
                        rng.choice(list(GroundTruthClass)),
                        rng.randrange(0, 200),
                    )
                )
                cursor += length
            lo = rng.randrange(0, cursor)
            hi = rng.randrange(lo + 1, cursor + 300)
            frac = align((lo * SEC, hi * SEC), segments)
            assert abs(sum(frac.values()) - 1.0) < 1e-9

    def test_matches_per_second_oracle(self):
        rng = random.Random(2024)
        for _ in range(60):
            cursor = 0
            segments = []
            for _ in range(rng.randrange(1, 10)):
                cursor += rng.randrange(0, 90)
                length = rng.randrange(1, 400)
                segments.append(
                    seg(cursor, cursor + length, rng.choice(list(GroundTruthClass)))
                )
                cursor += length
            lo = rng.randrange(0, max(1, cursor - 1))
            hi = rng.randrange(lo + 1, cursor + 120)
            got = align((lo * SEC, hi * SEC), segments)
            want = align_oracle((lo * SEC, hi * SEC), segments)
            assert set(got) == set(want)
            for key in want:
                assert abs(got[key] - want[key]) < 1e-9


class TestCadence:
    def test_uniform_steps_over_full_interval(self):
        segments = [seg(0, 1800, GroundTruthClass.STEPPING, steps=3000)]
        assert cadence(segments, (0, 1800 * SEC)) == pytest.approx(100.0)

    def test_partial_bin_attribution(self):
        # interval covers 30 s of a 60-s bin holding 60 steps
        bins = [StepBin(0, 60 * SEC, 60)]
        assert cadence(bins, (0, 30 * SEC)) == pytest.approx(60.0)

    def test_no_overlap_is_zero(self):
        bins = [StepBin(0, 60 * SEC, 60)]
        assert cadence(bins, (120 * SEC, 180 * SEC)) == 0.0

    def test_zero_length_interval_rejected(self):
        with pytest.raises(DegenerateInterval):
            cadence([], (5, 5))

    def test_vitals_adapter(self):
        vitals = [MinuteVitals(minute_anchor=0, step_count=90)]
        bins = bins_from_vitals(vitals)
        assert bins == [StepBin(0, MS_PER_MINUTE, 90)]


class TestIntensity:
    def test_published_example_age70(self):
        pct = pct_hrmax([83.1], 70)
        assert pct == pytest.approx(50.0, abs=0.01)

    def test_mean_at_ceiling_is_100(self):
        assert pct_hrmax([211 - 0.64 * 40], 40) == pytest.approx(100.0)

    def test_empty_samples_none(self):
        assert pct_hrmax([], 50) is None

    def test_invalid_age(self):
        with pytest.raises(InvalidAge):
            pct_hrmax([100.0], 0)

    def test_band_boundaries(self):
        band = lambda **kw: classify_intensity(IntensityMeasurement(**kw)).band
        assert band(pct_hrmax=63.999) is IntensityBand.BELOW_MODERATE
        assert band(pct_hrmax=64.0) is IntensityBand.MODERATE
        assert band(pct_hrmax=70.0) is IntensityBand.MODERATE
        assert band(pct_hrmax=76.0) is IntensityBand.MODERATE
        assert band(pct_hrmax=76.001) is IntensityBand.VIGOROUS_CANDIDATE
        assert band(cadence_gt=99.999) is IntensityBand.BELOW_MODERATE
        assert band(cadence_gt=100.0) is IntensityBand.MODERATE
        assert band(cadence_watch=100.0) is IntensityBand.MODERATE
        assert band(pct_hrmax=30.0, cadence_gt=20.0) is IntensityBand.BELOW_MODERATE

    def test_criterion_reported(self):
        call = classify_intensity(IntensityMeasurement(pct_hrmax=70.0))
        assert call.criterion == "pct_hrmax"
        call = classify_intensity(IntensityMeasurement(pct_hrmax=30.0, cadence_gt=120))
        assert call.criterion == "cadence"

    def test_no_measurement_rejected(self):
        with pytest.raises(NoMeasurement):
            classify_intensity(IntensityMeasurement())

    def test_monotone_in_each_measurement(self):
        order = {
            IntensityBand.BELOW_MODERATE: 0,
            IntensityBand.MODERATE: 1,
            IntensityBand.VIGOROUS_CANDIDATE: 2,
        }
        pcts = [0, 30, 63.9, 64, 70, 76, 76.1, 120, 250]
        cads = [0, 50, 99.9, 100, 140, 200]
        for cad in cads:
            bands = [
                order[classify_intensity(
                    IntensityMeasurement(pct_hrmax=p, cadence_gt=cad)
                ).band]
                for p in pcts
            ]
            assert bands == sorted(bands)
        for p in pcts:
            bands = [
                order[classify_intensity(
                    IntensityMeasurement(pct_hrmax=p, cadence_gt=c)
                ).band]
                for c in cads
            ]
            assert bands == sorted(bands)

    def test_ceiling_decreases_with_age(self):
        # older participant, lower predicted maximum; hence a fixed mean HR
        # reads as a higher percentage
        ceilings = [hr_max(a) for a in range(20, 91, 5)]
        assert ceilings == sorted(ceilings, reverse=True)
        pcts = [pct_hrmax([110.0], a) for a in range(20, 91, 5)]
        assert pcts == sorted(pcts)


def wer_oracle(ref: list[str], hyp: list[str]) -> int:
    """Full-matrix edit distance, no rolling rows."""
    n, m = len(ref), len(hyp)
    d = [[0] * (m + 1) for _ in range(n + 1)]
    for i in range(n + 1):
        d[i][0] = i
    for j in range(m + 1):
        d[0][j] = j
    for i in range(1, n + 1):
        for j in range(1, m + 1):
            d[i][j] = min(
                d[i - 1][j] + 1,
                d[i][j - 1] + 1,
                d[i - 1][j - 1] + (ref[i - 1] != hyp[j - 1]),
            )
    return d[n][m]


class TestNormalize:
    def test_contraction_expansion(self):
        assert normalize_text("I'm walking.") == ["i", "am", "walking"]

    def test_empty(self):
        assert normalize_text("") == []

    def test_clock_token_survives(self):
        assert normalize_text("until 6:47.") == ["until", "6:47"]

    def test_possessive_collapses(self):
        assert normalize_text("At Lowe's!") == ["at", "lowes"]

    def test_stray_colon_splits(self):
        assert normalize_text("note: ok") == ["note", "ok"]

    def test_curly_apostrophe(self):
        assert normalize_text("I’m done") == ["i", "am", "done"]


class TestWer:
    def test_identity_zero(self):
        s = "I'm eating lunch and about to get on a zoom call."
        assert wer(s, s) == 0.0

    def test_published_substitution(self):
        ref = "eating lunch and about to get on a zoom call"
        hyp = "eating lunch Ann about to get on a zoom call"
        assert wer(ref, hyp) == pytest.approx(0.10)

    def test_empty_hypothesis_all_deletions(self):
        assert wer("a b c", "") == pytest.approx(1.0)

    def test_empty_reference_rejected(self):
        with pytest.raises(EmptyReference):
            wer("...", "words here")

    def test_insertions_can_exceed_one(self):
        assert wer("one", "one two three four") == pytest.approx(3.0)

    def test_normalization_invariance(self):
        assert wer("I'm walking, now.", "i am walking now") == 0.0

    def test_matches_oracle_on_random_pairs(self):
        rng = random.Random(99)
        vocab = ["a", "b", "c", "walk", "eat", "tv", "6:30"]
        for _ in range(300):
            ref = [rng.choice(vocab) for _ in range(rng.randrange(1, 14))]
            hyp = [rng.choice(vocab) for _ in range(rng.randrange(0, 14))]
            assert edit_distance(ref, hyp) == wer_oracle(ref, hyp)


def ols_oracle(X, y):
    """Normal equations, explicit inverse."""
    X = np.asarray(X, float)
    y = np.asarray(y, float)
    xtx_inv = np.linalg.inv(X.T @ X)
    beta = xtx_inv @ X.T @ y
    resid = y - X @ beta
    df = X.shape[0] - X.shape[1]
    sigma2 = resid @ resid / df
    se = np.sqrt(np.diag(sigma2 * xtx_inv))
    return beta, se


class TestRegression:
    def test_noiseless_line(self):
        x = np.arange(10.0)
        X = np.column_stack([np.ones_like(x), x])
        r = ols_fit(X, 2 * x + 1, names=["intercept", "x"])
        assert r.coefficients["intercept"] == pytest.approx(1.0, abs=1e-10)
        assert r.coefficients["x"] == pytest.approx(2.0, abs=1e-10)
        assert r.adjusted_r2 == pytest.approx(1.0, abs=1e-9)

    def test_matches_normal_equation_oracle(self):
        rng = np.random.default_rng(5)
        X = np.column_stack([np.ones(200), rng.normal(size=(200, 3))])
        y = X @ np.array([1.0, 0.5, -2.0, 3.0]) + rng.normal(0, 0.7, 200)
        r = ols_fit(X, y)
        beta, se = ols_oracle(X, y)
        for i, name in enumerate(r.names):
            assert r.coefficients[name] == pytest.approx(beta[i], abs=1e-8)
            assert r.standard_errors[name] == pytest.approx(se[i], abs=1e-8)

    def test_recovers_planted_coefficients(self):
        rng = np.random.default_rng(11)
        planted = np.array([2.0, 1.5, -0.75, 0.25])
        X = np.column_stack([np.ones(500), rng.normal(size=(500, 3))])
        y = X @ planted + rng.normal(0, 1.0, 500)
        r = ols_fit(X, y)
        for i, name in enumerate(r.names):
            delta = abs(r.coefficients[name] - planted[i])
            assert delta <= 3 * r.standard_errors[name]

    def test_residuals_orthogonal_to_design(self):
        rng = np.random.default_rng(3)
        X = np.column_stack([np.ones(100), rng.normal(size=(100, 2))])
        y = rng.normal(size=100)
        r = ols_fit(X, y)
        beta = np.array([r.coefficients[n] for n in r.names])
        resid = y - X @ beta
        scale = np.abs(X).max() * np.abs(y).max() * len(y)
        assert np.all(np.abs(X.T @ resid) < 1e-8 * scale)

    def test_duplicate_column_rejected(self):
        x = np.arange(6.0)
        X = np.column_stack([np.ones_like(x), x, x])
        with pytest.raises(RankDeficient):
            ols_fit(X, x)

    def test_more_columns_than_rows_rejected(self):
        with pytest.raises(RankDeficient):
            ols_fit(np.ones((2, 3)), [1.0, 2.0])


class TestBackwardElimination:
    def test_noise_predictor_eliminated(self):
        rng = np.random.default_rng(21)
        x1 = rng.normal(size=400)
        noise = rng.normal(size=400)
        X = np.column_stack([np.ones(400), x1, noise])
        y = 3 * x1 + rng.normal(0, 0.5, 400)
        out = backward_eliminate(X, y, alpha_keep=0.05, names=["intercept", "x1", "junk"])
        assert "junk" not in out.result.coefficients
        assert "x1" in out.result.coefficients
        assert [s.dropped for s in out.trace] == ["junk"]

    def test_all_noise_reduces_to_intercept(self):
        rng = np.random.default_rng(22)
        X = np.column_stack([np.ones(300), rng.normal(size=(300, 3))])
        y = 5 + rng.normal(0, 1, 300)
        out = backward_eliminate(X, y, alpha_keep=0.01)
        assert out.result.names == ["intercept"]
        assert len(out.trace) == 3

    def test_significant_predictor_is_identity(self):
        rng = np.random.default_rng(23)
        x = rng.normal(size=200)
        X = np.column_stack([np.ones(200), x])
        y = 4 * x + rng.normal(0, 0.3, 200)
        out = backward_eliminate(X, y)
        assert out.trace == ()
        assert set(out.result.names) == {"intercept", "x1"}
