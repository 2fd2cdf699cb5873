"""Emotion telemetry for agile boards: capture, aggregate, serve."""

from .emotions import EmotionKind, default_schema
from .records import ReactionBatch, ReactionFilter, ReactionRecord, StageRef
from .store import MemoryStore, SqliteStore

__version__ = "1.0.0"

__all__ = [
    "EmotionKind",
    "default_schema",
    "ReactionBatch",
    "ReactionFilter",
    "ReactionRecord",
    "StageRef",
    "MemoryStore",
    "SqliteStore",
    "__version__",
]
