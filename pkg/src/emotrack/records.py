"""Reaction records, batches and filters, plus timestamp/id plumbing.

Timestamps are UTC with millisecond precision throughout; the canonical
wire form is an RFC 3339 string with exactly three fractional digits
(``2021-03-02T10:15:00.123Z``) so exports are byte-reproducible.
"""

from __future__ import annotations

import secrets
import threading
from dataclasses import dataclass, field
from datetime import datetime, timedelta, timezone
from typing import Mapping

from .emotions import CANONICAL_ORDER, EmotionKind, validate_rating
from .errors import InvalidBatchError, InvalidFilterError

EPOCH = datetime(1970, 1, 1, tzinfo=timezone.utc)
_MS = timedelta(milliseconds=1)


def to_ms(dt: datetime) -> int:
    """Milliseconds since the Unix epoch; exact integer arithmetic."""
    return (dt - EPOCH) // _MS


def from_ms(ms: int) -> datetime:
    return EPOCH + ms * _MS


def truncate_ms(dt: datetime) -> datetime:
    """Normalize to UTC and drop sub-millisecond precision.

    Naive datetimes are rejected: every capture time must carry an
    explicit zone so ordering is unambiguous.
    """
    if dt.tzinfo is None:
        raise ValueError("capture timestamps must be timezone-aware")
    dt = dt.astimezone(timezone.utc)
    return dt.replace(microsecond=dt.microsecond // 1000 * 1000)


def format_ts(dt: datetime) -> str:
    dt = truncate_ms(dt)
    return f"{dt.strftime('%Y-%m-%dT%H:%M:%S')}.{dt.microsecond // 1000:03d}Z"


def parse_ts(text: str) -> datetime:
    """Parse an RFC 3339 timestamp; accepts 'Z' or numeric offsets."""
    raw = text.strip()
    if raw.endswith(("Z", "z")):
        raw = raw[:-1] + "+00:00"
    return truncate_ms(datetime.fromisoformat(raw))


# Record ids sort by generation order within a process: millisecond
# timestamp, then a process-wide counter, then random tail for
# cross-process uniqueness. (captured_at, record_id) ordering therefore
# matches append order even when two appends share a millisecond.
_id_lock = threading.Lock()
_id_counter = 0


def new_record_id(captured_at: datetime) -> str:
    global _id_counter
    with _id_lock:
        _id_counter = (_id_counter + 1) % (1 << 32)
        counter = _id_counter
    return f"{to_ms(captured_at):012x}{counter:08x}{secrets.token_hex(3)}"


@dataclass(frozen=True, slots=True)
class StageRef:
    """A board list, as (stable id, display name at capture time)."""

    stage_id: str
    name: str


@dataclass(frozen=True, slots=True)
class ReactionRecord:
    """One member's rating of one emotion on one card at one instant.

    Immutable once appended. ``captured_at`` is assigned by the server
    clock, never the client; ``stage`` is the provider-reported stage at
    capture time and is never rewritten when the card later moves.
    """

    record_id: str
    board_id: str
    card_id: str
    member_id: str
    emotion: EmotionKind
    intensity: int
    captured_at: datetime
    stage: StageRef
    schema_version: int

    def __post_init__(self):
        validate_rating(self.emotion, self.intensity)
        if self.captured_at != truncate_ms(self.captured_at):
            raise ValueError("captured_at must be UTC with millisecond precision")

    @property
    def sort_key(self) -> tuple[datetime, str]:
        return (self.captured_at, self.record_id)


@dataclass(frozen=True)
class ReactionBatch:
    """One panel-save worth of ratings for a single card.

    At least one rating, at most one per emotion kind (the mapping type
    enforces the latter), every value in 1..7.
    """

    board_id: str
    card_id: str
    member_id: str
    ratings: Mapping[EmotionKind, int]

    def __post_init__(self):
        if not self.ratings:
            raise InvalidBatchError("a reaction batch needs at least one rating")
        for kind, value in self.ratings.items():
            validate_rating(kind, value)

    def ordered_ratings(self) -> list[tuple[EmotionKind, int]]:
        """Ratings in canonical emotion order."""
        return [(k, self.ratings[k]) for k in CANONICAL_ORDER if k in self.ratings]


@dataclass(frozen=True)
class ReactionFilter:
    """Conjunctive record predicate; absent fields match everything.

    The time window is half-open: ``since <= captured_at < until``.
    """

    board_id: str | None = None
    card_id: str | None = None
    member_id: str | None = None
    emotions: frozenset[EmotionKind] | None = None
    since: datetime | None = None
    until: datetime | None = None
    stages: frozenset[str] | None = field(default=None)  # stage ids

    def __post_init__(self):
        if self.since is not None and self.until is not None and not self.since < self.until:
            raise InvalidFilterError("time window requires since < until")

    def matches(self, r: ReactionRecord) -> bool:
        if self.board_id is not None and r.board_id != self.board_id:
            return False
        if self.card_id is not None and r.card_id != self.card_id:
            return False
        if self.member_id is not None and r.member_id != self.member_id:
            return False
        if self.emotions is not None and r.emotion not in self.emotions:
            return False
        if self.since is not None and r.captured_at < self.since:
            return False
        if self.until is not None and r.captured_at >= self.until:
            return False
        if self.stages is not None and r.stage.stage_id not in self.stages:
            return False
        return True
