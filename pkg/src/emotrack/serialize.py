"""CSV and JSONL record serialization.

Both formats share the same flat field set and ordering. Output is a
pure function of the record sequence: exporting, re-importing and
exporting again yields byte-identical files.
"""

from __future__ import annotations

import csv
import io
import json
from typing import Iterable, Mapping

from .emotions import parse_kind
from .records import ReactionRecord, StageRef, format_ts, parse_ts

FIELDS = (
    "record_id",
    "board_id",
    "card_id",
    "member_id",
    "emotion",
    "intensity",
    "captured_at",
    "stage_id",
    "stage_name",
    "schema_version",
)

FORMATS = ("csv", "jsonl")


def record_to_row(r: ReactionRecord) -> dict:
    return {
        "record_id": r.record_id,
        "board_id": r.board_id,
        "card_id": r.card_id,
        "member_id": r.member_id,
        "emotion": r.emotion.value,
        "intensity": r.intensity,
        "captured_at": format_ts(r.captured_at),
        "stage_id": r.stage.stage_id,
        "stage_name": r.stage.name,
        "schema_version": r.schema_version,
    }


def row_to_record(row: Mapping) -> ReactionRecord:
    return ReactionRecord(
        record_id=str(row["record_id"]),
        board_id=str(row["board_id"]),
        card_id=str(row["card_id"]),
        member_id=str(row["member_id"]),
        emotion=parse_kind(str(row["emotion"])),
        intensity=int(row["intensity"]),
        captured_at=parse_ts(str(row["captured_at"])),
        stage=StageRef(str(row["stage_id"]), str(row["stage_name"])),
        schema_version=int(row["schema_version"]),
    )


def export_csv(records: Iterable[ReactionRecord]) -> bytes:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=FIELDS, lineterminator="\n")
    writer.writeheader()
    for r in records:
        writer.writerow(record_to_row(r))
    return buf.getvalue().encode("utf-8")


def export_jsonl(records: Iterable[ReactionRecord]) -> bytes:
    lines = [
        json.dumps(record_to_row(r), ensure_ascii=False, separators=(",", ":"))
        for r in records
    ]
    return ("".join(line + "\n" for line in lines)).encode("utf-8")


def export_records(records: Iterable[ReactionRecord], fmt: str) -> bytes:
    if fmt == "csv":
        return export_csv(records)
    if fmt == "jsonl":
        return export_jsonl(records)
    raise ValueError(f"unsupported export format: {fmt!r}")


def parse_csv(data: bytes) -> list[ReactionRecord]:
    reader = csv.DictReader(io.StringIO(data.decode("utf-8")))
    return [row_to_record(row) for row in reader]


def parse_jsonl(data: bytes) -> list[ReactionRecord]:
    out = []
    for line in data.decode("utf-8").splitlines():
        if line.strip():
            out.append(row_to_record(json.loads(line)))
    return out


def parse_records(data: bytes, fmt: str) -> list[ReactionRecord]:
    if fmt == "csv":
        return parse_csv(data)
    if fmt == "jsonl":
        return parse_jsonl(data)
    raise ValueError(f"unsupported export format: {fmt!r}")
