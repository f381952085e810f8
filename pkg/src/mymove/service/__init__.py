"""Study service: HTTP API plus append-only persistence."""
from .app import build_extractor, create_app
from .config import ConfigError, ServiceConfig, load_config
from .storage import (
    CORRECTABLE_FIELDS,
    ConflictError,
    StorageError,
    Store,
    UnknownActivity,
    apply_overlay,
)

__all__ = [
    "CORRECTABLE_FIELDS",
    "ConfigError",
    "ConflictError",
    "ServiceConfig",
    "StorageError",
    "Store",
    "UnknownActivity",
    "apply_overlay",
    "build_extractor",
    "create_app",
    "load_config",
]
