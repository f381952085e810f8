import hashlib
import random
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mymove.ingest import (
    CodecError,
    CorruptBatch,
    FormatError,
    InertialWindow,
    LocomotionSample,
    MinuteVitals,
    OverfullWindow,
    SampleKind,
    SensorBatch,
    ShortWindow,
    TruncatedBatch,
    decode_batch,
    encode_batch,
    seal_minute_window,
)
from mymove.types import Locomotion
from synth import make_batch, make_window

GOLDEN = Path(__file__).parent / "data" / "golden_two_window.mymv"
GOLDEN_SHA = "42c6db57c8c4c16708a38398771305345e8867a35fc4a3ac3eb7f53ce78ccc89"


class TestGoldenFixture:
    def test_encoding_matches_frozen_bytes(self):
        batch = make_batch(2024, n_windows=2, device_id="watch-07", sequence=11)
        data = encode_batch(batch)
        assert hashlib.sha256(data).hexdigest() == GOLDEN_SHA
        assert data == GOLDEN.read_bytes()

    def test_golden_decodes_to_source_batch(self):
        batch = make_batch(2024, n_windows=2, device_id="watch-07", sequence=11)
        assert decode_batch(GOLDEN.read_bytes()) == batch


class TestRoundTrip:
    def test_seeded_batches(self):
        for seed in range(25):
            batch = make_batch(seed, n_windows=seed % 3)
            data = encode_batch(batch)
            assert decode_batch(data) == batch
            assert encode_batch(decode_batch(data)) == data

    def test_empty_batch(self):
        batch = SensorBatch(device_id="watch-00", sequence=0)
        assert decode_batch(encode_batch(batch)) == batch

    def test_unicode_device_id(self):
        batch = SensorBatch(device_id="часы-07", sequence=3)
        assert decode_batch(encode_batch(batch)) == batch

    @settings(max_examples=60, deadline=None)
    @given(
        device=st.text(min_size=1, max_size=24),
        sequence=st.integers(min_value=0, max_value=2**64 - 1),
        vitals=st.lists(
            st.tuples(
                st.integers(min_value=0, max_value=2**40),
                st.integers(min_value=0, max_value=2**32 - 1),
                st.one_of(st.none(), st.floats(min_value=1, max_value=250, width=32)),
            ),
            max_size=6,
        ),
        locomotion=st.lists(
            st.tuples(st.integers(min_value=0, max_value=2**40), st.sampled_from(list(Locomotion))),
            max_size=6,
        ),
    )
    def test_payload_structures(self, device, sequence, vitals, locomotion):
        batch = SensorBatch(
            device_id=device,
            sequence=sequence,
            vitals=[MinuteVitals(a, s, h) for a, s, h in vitals],
            locomotion=[LocomotionSample(t, c) for t, c in locomotion],
        )
        data = encode_batch(batch)
        assert decode_batch(data) == batch
        assert encode_batch(decode_batch(data)) == data


class TestRejection:
    def test_bad_magic(self):
        data = bytearray(GOLDEN.read_bytes())
        data[0] ^= 0xFF
        with pytest.raises(FormatError):
            decode_batch(bytes(data))

    def test_bad_version(self):
        data = bytearray(GOLDEN.read_bytes())
        data[4] = 0x7F
        with pytest.raises(FormatError):
            decode_batch(bytes(data))

    def test_truncated_tail(self):
        data = GOLDEN.read_bytes()
        with pytest.raises(TruncatedBatch):
            decode_batch(data[:-5])

    def test_truncated_header(self):
        with pytest.raises(TruncatedBatch):
            decode_batch(GOLDEN.read_bytes()[:3])

    def test_payload_bit_flip_is_corrupt(self):
        data = bytearray(GOLDEN.read_bytes())
        data[len(data) // 2] ^= 0x04  # deep inside a sample payload
        with pytest.raises(CorruptBatch):
            decode_batch(bytes(data))

    def test_any_single_bit_flip_rejected(self):
        data = GOLDEN.read_bytes()
        rng = random.Random(7)
        for _ in range(120):
            pos = rng.randrange(len(data))
            bit = 1 << rng.randrange(8)
            mutated = bytearray(data)
            mutated[pos] ^= bit
            with pytest.raises(CodecError):
                decode_batch(bytes(mutated))


class TestSealWindow:
    def _samples(self, n=500):
        rng = np.random.default_rng(0)
        return {
            SampleKind.ACCELEROMETER: rng.random((n, 3), dtype=np.float32),
            SampleKind.ROTATION_VECTOR: rng.random((n, 4), dtype=np.float32),
            SampleKind.MAGNETOMETER: rng.random((n, 3), dtype=np.float32),
            SampleKind.GRAVITY: rng.random((n, 3), dtype=np.float32),
        }

    def test_accepts_exact_500(self):
        window = seal_minute_window(0, self._samples())
        assert isinstance(window, InertialWindow)
        assert all(arr.shape[0] == 500 for arr in window.samples.values())

    def test_rejects_499(self):
        samples = self._samples()
        samples[SampleKind.GRAVITY] = samples[SampleKind.GRAVITY][:499]
        with pytest.raises(ShortWindow):
            seal_minute_window(0, samples)

    def test_rejects_501(self):
        samples = self._samples()
        extra = np.vstack([samples[SampleKind.ACCELEROMETER], np.zeros((1, 3), np.float32)])
        samples[SampleKind.ACCELEROMETER] = extra
        with pytest.raises(OverfullWindow):
            seal_minute_window(0, samples)

    def test_rejects_missing_kind(self):
        samples = self._samples()
        del samples[SampleKind.MAGNETOMETER]
        with pytest.raises(ShortWindow):
            seal_minute_window(0, samples)

    def test_component_override(self):
        samples = self._samples()
        samples[SampleKind.ROTATION_VECTOR] = samples[SampleKind.ROTATION_VECTOR][:, :3]
        window = seal_minute_window(
            0, samples, components={SampleKind.ROTATION_VECTOR: 3}
        )
        assert window.samples[SampleKind.ROTATION_VECTOR].shape == (500, 3)
        # and a 3-component rotation stream survives the wire
        batch = SensorBatch(device_id="d", sequence=1, windows=[window])
        assert decode_batch(encode_batch(batch)) == batch


def test_window_alias_round_trip():
    window = make_window(np.random.default_rng(5), minute_anchor=60_000)
    batch = SensorBatch(device_id="w", sequence=9, windows=[window])
    assert decode_batch(encode_batch(batch)) == batch
