from .codec import (
    FILE_EXTENSION,
    MAGIC,
    VERSION,
    CodecError,
    CorruptBatch,
    FormatError,
    TruncatedBatch,
    decode_batch,
    encode_batch,
)
from .store import BatchStore, IngestAck, ingest_batch
from .types import (
    DEFAULT_COMPONENTS,
    KIND_ORDER,
    SAMPLE_RATE_HZ,
    SAMPLES_PER_WINDOW,
    WINDOW_SECONDS,
    InertialWindow,
    LocomotionSample,
    MinuteVitals,
    OverfullWindow,
    SampleKind,
    SensorBatch,
    ShortWindow,
    WindowError,
    seal_minute_window,
)

__all__ = [
    "FILE_EXTENSION", "MAGIC", "VERSION",
    "CodecError", "CorruptBatch", "FormatError", "TruncatedBatch",
    "decode_batch", "encode_batch",
    "BatchStore", "IngestAck", "ingest_batch",
    "DEFAULT_COMPONENTS", "KIND_ORDER", "SAMPLE_RATE_HZ", "SAMPLES_PER_WINDOW",
    "WINDOW_SECONDS", "InertialWindow", "LocomotionSample", "MinuteVitals",
    "OverfullWindow", "SampleKind", "SensorBatch", "ShortWindow", "WindowError",
    "seal_minute_window",
]
