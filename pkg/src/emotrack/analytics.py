"""Dashboard analytics: card summaries, time series, peaks, breakdowns.

Everything here is a pure function of an immutable record snapshot, so
results are deterministic and safe to compute concurrently. Means are
exact rationals (fractions.Fraction); callers convert to float only at
the serialization boundary.

Two distinct views of the data are computed on purpose: summaries
describe the *current* state (latest rating per member), while time
series describe *how feelings changed* and therefore use full history.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import datetime
from enum import Enum
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .emotions import CANONICAL_ORDER, EmotionKind, EmotionSchema, Valence
from .records import ReactionFilter, ReactionRecord, StageRef, from_ms, to_ms

HOUR_MS = 3_600_000
DAY_MS = 86_400_000
WEEK_MS = 7 * DAY_MS
# 1969-12-29 was a Monday; week buckets start on Mondays (ISO convention).
_WEEK_ORIGIN_MS = -3 * DAY_MS


class Granularity(str, Enum):
    HOUR = "hour"
    DAY = "day"
    WEEK = "week"

    @property
    def length_ms(self) -> int:
        return {"hour": HOUR_MS, "day": DAY_MS, "week": WEEK_MS}[self.value]

    def bucket_start_ms(self, ms: int) -> int:
        if self is Granularity.WEEK:
            return (ms - _WEEK_ORIGIN_MS) // WEEK_MS * WEEK_MS + _WEEK_ORIGIN_MS
        return ms // self.length_ms * self.length_ms

    def bucket_start(self, dt: datetime) -> datetime:
        return from_ms(self.bucket_start_ms(to_ms(dt)))


@dataclass(frozen=True)
class EmotionRow:
    """Per-emotion statistics over current (latest-per-member) ratings."""

    emotion: EmotionKind
    count: int
    mean: Fraction | None
    min: int | None
    max: int | None
    latest: int | None


@dataclass(frozen=True)
class CardSummary:
    card_id: str
    rows: tuple[EmotionRow, ...]
    respondent_count: int

    def row(self, kind: EmotionKind) -> EmotionRow:
        return self.rows[CANONICAL_ORDER.index(kind)]


@dataclass(frozen=True)
class BucketStat:
    count: int
    mean: Fraction | None


@dataclass(frozen=True)
class TimeBucket:
    start: datetime
    emotions: Mapping[EmotionKind, BucketStat]


@dataclass(frozen=True)
class TimeSeries:
    granularity: Granularity
    buckets: tuple[TimeBucket, ...]
    scope: str | None = None
    applied_filter: ReactionFilter | None = None


@dataclass(frozen=True)
class Peak:
    emotion: EmotionKind
    bucket_start: datetime
    mean: Fraction


@dataclass(frozen=True)
class StageRow:
    stage: StageRef
    count: int
    emotions: Mapping[EmotionKind, BucketStat]


@dataclass(frozen=True)
class StageBreakdown:
    rows: tuple[StageRow, ...]

    @property
    def total_count(self) -> int:
        return sum(row.count for row in self.rows)


def current_records(records: Iterable[ReactionRecord]) -> dict[tuple[str, str, EmotionKind], ReactionRecord]:
    """Latest record per (card, member, emotion) by (captured_at, record_id)."""
    best: dict[tuple[str, str, EmotionKind], ReactionRecord] = {}
    for r in records:
        key = (r.card_id, r.member_id, r.emotion)
        kept = best.get(key)
        if kept is None or r.sort_key > kept.sort_key:
            best[key] = r
    return best


def emotion_rows(records: Sequence[ReactionRecord]) -> tuple[EmotionRow, ...]:
    """Current-state statistics per emotion, all eight kinds present.

    ``latest`` is the intensity of the most recent record of that emotion
    in scope regardless of member.
    """
    current = list(current_records(records).values())
    rows = []
    for kind in CANONICAL_ORDER:
        of_kind = [r for r in current if r.emotion is kind]
        if not of_kind:
            rows.append(EmotionRow(kind, 0, None, None, None, None))
            continue
        values = [r.intensity for r in of_kind]
        latest = max(of_kind, key=lambda r: r.sort_key)
        rows.append(
            EmotionRow(
                emotion=kind,
                count=len(values),
                mean=Fraction(sum(values), len(values)),
                min=min(values),
                max=max(values),
                latest=latest.intensity,
            )
        )
    return tuple(rows)


def card_summary(card_id: str, records: Sequence[ReactionRecord]) -> CardSummary:
    """Current emotional state of one card.

    Statistics run over latest-per-member ratings, not raw history;
    respondent_count is the number of distinct members with any record.
    """
    card_records = [r for r in records if r.card_id == card_id]
    return CardSummary(
        card_id=card_id,
        rows=emotion_rows(card_records),
        respondent_count=len({r.member_id for r in card_records}),
    )


def time_series(
    records: Sequence[ReactionRecord],
    granularity: Granularity,
    *,
    flt: ReactionFilter | None = None,
    scope: str | None = None,
) -> TimeSeries:
    """Bucketed per-emotion history.

    Buckets are contiguous from the first to the last record in scope and
    aligned to UTC granularity boundaries; empty buckets are present with
    count 0. An empty scope yields a series with zero buckets.
    """
    if flt is not None:
        records = [r for r in records if flt.matches(r)]
    if not records:
        return TimeSeries(granularity, (), scope=scope, applied_filter=flt)

    step = granularity.length_ms
    times = [to_ms(r.captured_at) for r in records]
    first = granularity.bucket_start_ms(min(times))
    last = granularity.bucket_start_ms(max(times))

    sums: dict[tuple[int, EmotionKind], int] = {}
    counts: dict[tuple[int, EmotionKind], int] = {}
    for r, ms in zip(records, times):
        key = (granularity.bucket_start_ms(ms), r.emotion)
        sums[key] = sums.get(key, 0) + r.intensity
        counts[key] = counts.get(key, 0) + 1

    buckets = []
    for start in range(first, last + step, step):
        stats = {}
        for kind in CANONICAL_ORDER:
            n = counts.get((start, kind), 0)
            mean = Fraction(sums[(start, kind)], n) if n else None
            stats[kind] = BucketStat(count=n, mean=mean)
        buckets.append(TimeBucket(start=from_ms(start), emotions=stats))
    return TimeSeries(granularity, tuple(buckets), scope=scope, applied_filter=flt)


def member_trend(
    records: Sequence[ReactionRecord],
    board_id: str,
    member_id: str,
    granularity: Granularity,
) -> TimeSeries:
    """One member's history across every card of a board (manager view;
    authorization is enforced by the caller, not here)."""
    flt = ReactionFilter(board_id=board_id, member_id=member_id)
    return time_series(records, granularity, flt=flt, scope=f"member:{member_id}")


def detect_peaks(series: TimeSeries, emotion: EmotionKind) -> list[Peak]:
    """Buckets whose mean strictly exceeds both neighbors' for the emotion.

    A missing or empty neighbor mean counts as 0; edge buckets compare
    only against the neighbors they have. Ordered by bucket start.
    """
    means = [b.emotions[emotion].mean for b in series.buckets]
    peaks = []
    for i, mean in enumerate(means):
        if mean is None:
            continue
        neighbors = [means[j] for j in (i - 1, i + 1) if 0 <= j < len(means)]
        if all(mean > (n if n is not None else 0) for n in neighbors):
            peaks.append(Peak(emotion=emotion, bucket_start=series.buckets[i].start, mean=mean))
    return peaks


def stage_breakdown(records: Sequence[ReactionRecord]) -> StageBreakdown:
    """Raw-history statistics grouped by the stage snapshot at capture.

    Stage identity is the stored (id, name) pair, so a list renamed
    mid-project shows up as two rows; counts across rows sum to the total
    record count of the scope.
    """
    groups: dict[StageRef, list[ReactionRecord]] = {}
    for r in records:
        groups.setdefault(r.stage, []).append(r)

    rows = []
    for stage in sorted(groups, key=lambda s: (s.stage_id, s.name)):
        members = groups[stage]
        stats = {}
        for kind in CANONICAL_ORDER:
            values = [r.intensity for r in members if r.emotion is kind]
            stats[kind] = BucketStat(
                count=len(values),
                mean=Fraction(sum(values), len(values)) if values else None,
            )
        rows.append(StageRow(stage=stage, count=len(members), emotions=stats))
    return StageBreakdown(rows=tuple(rows))


def aggregate_sentiment(rows: Iterable[EmotionRow], schema: EmotionSchema) -> Fraction | None:
    """Positive-minus-negative balance of current means, in [-7, 7].

    Mean of the present positive-valence emotion means minus mean of the
    present negative ones; a side with no present emotion contributes 0.
    None when no emotion has any rating at all.
    """
    present = [row for row in rows if row.count > 0]
    if not present:
        return None
    pos = [row.mean for row in present if schema.valence(row.emotion) is Valence.POSITIVE]
    neg = [row.mean for row in present if schema.valence(row.emotion) is Valence.NEGATIVE]
    pos_mean = sum(pos, Fraction(0)) / len(pos) if pos else Fraction(0)
    neg_mean = sum(neg, Fraction(0)) / len(neg) if neg else Fraction(0)
    return pos_mean - neg_mean
