"""Pydantic request/response models for the HTTP API.

Timestamps are RFC 3339 UTC strings with millisecond precision; means
are JSON numbers (full float precision of the underlying rationals).
"""

from __future__ import annotations

from pydantic import BaseModel, ConfigDict, Field


class ErrorBody(BaseModel):
    code: str
    message: str


class ReactionsIn(BaseModel):
    ratings: dict[str, int]


class RecordOut(BaseModel):
    record_id: str
    board_id: str
    card_id: str
    member_id: str
    emotion: str
    intensity: int
    captured_at: str
    stage_id: str
    stage_name: str
    schema_version: int


class ReactionsOut(BaseModel):
    message: str
    records: list[RecordOut]


class RecordsOut(BaseModel):
    records: list[RecordOut]


class EmotionRowOut(BaseModel):
    emotion: str
    count: int
    mean: float | None
    min: int | None
    max: int | None
    latest: int | None


class SummaryOut(BaseModel):
    card_id: str
    title: str
    respondent_count: int
    emotions: list[EmotionRowOut]


class BucketStatOut(BaseModel):
    count: int
    mean: float | None


class BucketOut(BaseModel):
    start: str
    emotions: dict[str, BucketStatOut]


class FilterEcho(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    emotions: list[str] | None = None
    member: str | None = None
    since: str | None = Field(default=None, alias="from")
    until: str | None = Field(default=None, alias="to")


class SeriesOut(BaseModel):
    scope: str
    granularity: str
    timezone: str = "UTC"
    buckets: list[BucketOut]


class PeakOut(BaseModel):
    emotion: str
    bucket_start: str
    mean: float


class StageRowOut(BaseModel):
    stage_id: str
    stage_name: str
    count: int
    emotions: dict[str, BucketStatOut]


class DashboardOut(BaseModel):
    series: SeriesOut
    peaks: list[PeakOut]
    stages: list[StageRowOut]
    sentiment: float | None
    filter: FilterEcho


class CardOut(BaseModel):
    card_id: str
    title: str
    stage_id: str
    stage_name: str


class CardsOut(BaseModel):
    cards: list[CardOut]


class DescriptorOut(BaseModel):
    kind: str
    label: str
    glyph: str
    valence: str
    arousal: str
    motivation: str


class SchemaOut(BaseModel):
    version: int
    scale_min: int
    scale_max: int
    scale_hint: str
    emotions: list[DescriptorOut]


class WebhookAck(BaseModel):
    ok: bool
    updated: bool = False
