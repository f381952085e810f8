"""Binary batch format (.mymv files).

Layout, all integers little-endian (see docs/format.md for the full story):

    magic "MYMV" | version u8 | device_id_len u16 | device_id utf-8 |
    sequence u64 | records... | crc32 u32

Each record is tag u8, payload_len u32, payload. Tags: 0x01 inertial window,
0x02 minute vitals, 0x03 locomotion samples. The trailing CRC-32 covers every
byte before it.
"""
from __future__ import annotations

import struct
import zlib

import numpy as np

from ..types import Locomotion
from .types import (
    InertialWindow,
    LocomotionSample,
    MinuteVitals,
    SampleKind,
    SensorBatch,
)

MAGIC = b"MYMV"
VERSION = 0x01
FILE_EXTENSION = ".mymv"

TAG_WINDOW = 0x01
TAG_VITALS = 0x02
TAG_LOCOMOTION = 0x03

_KIND_IDS = {
    SampleKind.ACCELEROMETER: 1,
    SampleKind.ROTATION_VECTOR: 2,
    SampleKind.MAGNETOMETER: 3,
    SampleKind.GRAVITY: 4,
}
_KIND_BY_ID = {v: k for k, v in _KIND_IDS.items()}

_LOCO_IDS = {
    Locomotion.STILL: 0,
    Locomotion.WALKING: 1,
    Locomotion.RUNNING: 2,
    Locomotion.IN_VEHICLE: 3,
    Locomotion.ON_BICYCLE: 4,
    Locomotion.UNKNOWN: 5,
}
_LOCO_BY_ID = {v: k for k, v in _LOCO_IDS.items()}


class CodecError(ValueError):
    pass


class FormatError(CodecError):
    """Not this format, or structurally malformed."""


class TruncatedBatch(CodecError):
    """The buffer ends before the declared structure does."""


class CorruptBatch(CodecError):
    """Structure is intact but the checksum does not match."""


def encode_batch(batch: SensorBatch) -> bytes:
    device = batch.device_id.encode("utf-8")
    if len(device) > 0xFFFF:
        raise FormatError("device_id too long")
    if batch.sequence < 0:
        raise FormatError("sequence must be >= 0")
    out = bytearray()
    out += MAGIC
    out.append(VERSION)
    out += struct.pack("<H", len(device))
    out += device
    out += struct.pack("<Q", batch.sequence)
    for window in batch.windows:
        out += _record(TAG_WINDOW, _encode_window(window))
    for vitals in batch.vitals:
        out += _record(TAG_VITALS, _encode_vitals(vitals))
    if batch.locomotion:
        out += _record(TAG_LOCOMOTION, _encode_locomotion(batch.locomotion))
    out += struct.pack("<I", zlib.crc32(bytes(out)))
    return bytes(out)


def _record(tag: int, payload: bytes) -> bytes:
    return struct.pack("<BI", tag, len(payload)) + payload


def _encode_window(window: InertialWindow) -> bytes:
    body = bytearray(struct.pack("<q", window.minute_anchor))
    for kind in sorted(window.samples, key=lambda k: _KIND_IDS[k]):
        arr = np.ascontiguousarray(window.samples[kind], dtype="<f4")
        body += struct.pack("<BBH", _KIND_IDS[kind], arr.shape[1], arr.shape[0])
        body += arr.tobytes()
    return bytes(body)


def _encode_vitals(vitals: MinuteVitals) -> bytes:
    body = struct.pack("<qI", vitals.minute_anchor, vitals.step_count)
    if vitals.heart_rate is None:
        return body + b"\x00"
    return body + b"\x01" + struct.pack("<f", vitals.heart_rate)


def _encode_locomotion(samples: list[LocomotionSample]) -> bytes:
    body = bytearray(struct.pack("<I", len(samples)))
    for s in samples:
        body += struct.pack("<qB", s.timestamp, _LOCO_IDS[s.locomotion])
    return bytes(body)


class _Reader:
    def __init__(self, buf: bytes, end: int):
        self.buf = buf
        self.pos = 0
        self.end = end

    def take(self, n: int) -> bytes:
        if self.pos + n > self.end:
            raise TruncatedBatch(f"need {n} bytes at offset {self.pos}, have {self.end - self.pos}")
        chunk = self.buf[self.pos : self.pos + n]
        self.pos += n
        return chunk

    def unpack(self, fmt: str):
        return struct.unpack(fmt, self.take(struct.calcsize(fmt)))


def decode_batch(data: bytes) -> SensorBatch:
    """Inverse of encode_batch. Raises FormatError / TruncatedBatch / CorruptBatch."""
    if len(data) < len(MAGIC) + 1:
        raise TruncatedBatch("buffer shorter than the magic header")
    if data[: len(MAGIC)] != MAGIC:
        raise FormatError("bad magic")
    if data[len(MAGIC)] != VERSION:
        raise FormatError(f"unsupported version {data[len(MAGIC)]}")
    if len(data) < len(MAGIC) + 1 + 2 + 8 + 4:
        raise TruncatedBatch("buffer shorter than the fixed header")

    body_end = len(data) - 4
    r = _Reader(data, body_end)
    r.pos = len(MAGIC) + 1
    (device_len,) = r.unpack("<H")
    device_id = r.take(device_len).decode("utf-8", errors="strict")
    (sequence,) = r.unpack("<Q")

    # structural walk first, so truncation is reported as such
    records: list[tuple[int, bytes]] = []
    while r.pos < body_end:
        tag, payload_len = r.unpack("<BI")
        if tag not in (TAG_WINDOW, TAG_VITALS, TAG_LOCOMOTION):
            raise FormatError(f"unknown record tag 0x{tag:02x}")
        records.append((tag, r.take(payload_len)))

    (stored_crc,) = struct.unpack("<I", data[body_end:])
    if zlib.crc32(data[:body_end]) != stored_crc:
        raise CorruptBatch("crc32 mismatch")

    batch = SensorBatch(device_id=device_id, sequence=sequence)
    for tag, payload in records:
        if tag == TAG_WINDOW:
            batch.windows.append(_decode_window(payload))
        elif tag == TAG_VITALS:
            batch.vitals.append(_decode_vitals(payload))
        else:
            batch.locomotion.extend(_decode_locomotion(payload))
    return batch


def _decode_window(payload: bytes) -> InertialWindow:
    r = _Reader(payload, len(payload))
    (anchor,) = r.unpack("<q")
    samples: dict[SampleKind, np.ndarray] = {}
    while r.pos < len(payload):
        kind_id, components, count = r.unpack("<BBH")
        kind = _KIND_BY_ID.get(kind_id)
        if kind is None:
            raise FormatError(f"unknown sensor kind id {kind_id}")
        raw = r.take(4 * components * count)
        samples[kind] = np.frombuffer(raw, dtype="<f4").reshape(count, components).copy()
    return InertialWindow(minute_anchor=anchor, samples=samples)


def _decode_vitals(payload: bytes) -> MinuteVitals:
    r = _Reader(payload, len(payload))
    anchor, steps = r.unpack("<qI")
    (flag,) = r.unpack("<B")
    hr = None
    if flag == 1:
        (hr,) = r.unpack("<f")
    elif flag != 0:
        raise FormatError(f"bad heart-rate flag {flag}")
    return MinuteVitals(minute_anchor=anchor, step_count=steps, heart_rate=hr)


def _decode_locomotion(payload: bytes) -> list[LocomotionSample]:
    r = _Reader(payload, len(payload))
    (count,) = r.unpack("<I")
    out = []
    for _ in range(count):
        ts, loco_id = r.unpack("<qB")
        loco = _LOCO_BY_ID.get(loco_id)
        if loco is None:
            raise FormatError(f"unknown locomotion id {loco_id}")
        out.append(LocomotionSample(timestamp=ts, locomotion=loco))
    return out
