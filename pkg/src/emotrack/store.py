"""Append-only reaction log with pluggable backends.

Two backends ship: an in-process list for tests and demos, and a
single-file SQLite database for deployments. Both are safe for
concurrent readers and writers; batch appends are atomic and queries
observe a consistent snapshot.
"""

from __future__ import annotations

import sqlite3
import threading
from abc import ABC, abstractmethod
from datetime import datetime
from typing import TYPE_CHECKING, Sequence

from .emotions import SCHEMA_VERSION, EmotionKind
from .errors import StorageError
from .records import (
    ReactionBatch,
    ReactionFilter,
    ReactionRecord,
    StageRef,
    from_ms,
    new_record_id,
    to_ms,
    truncate_ms,
)
from .serialize import export_records

if TYPE_CHECKING:
    from .providers.base import BoardStateProvider


class ReactionStore(ABC):
    """Interface of the reaction log; see MemoryStore and SqliteStore."""

    def append_batch(
        self,
        batch: ReactionBatch,
        now: datetime,
        provider: "BoardStateProvider",
    ) -> list[ReactionRecord]:
        """Record one panel-save.

        One record per rating, all sharing the server-assigned capture
        time and the provider's current stage for the card; persisted
        atomically; returned in canonical emotion order.
        """
        stage = provider.get_stage(batch.card_id)
        captured = truncate_ms(now)
        records = [
            ReactionRecord(
                record_id=new_record_id(captured),
                board_id=batch.board_id,
                card_id=batch.card_id,
                member_id=batch.member_id,
                emotion=kind,
                intensity=value,
                captured_at=captured,
                stage=stage,
                schema_version=SCHEMA_VERSION,
            )
            for kind, value in batch.ordered_ratings()
        ]
        self.add_records(records)
        return records

    @abstractmethod
    def add_records(self, records: Sequence[ReactionRecord]) -> None:
        """Persist already-built records atomically (also used by re-import)."""

    @abstractmethod
    def query(self, flt: ReactionFilter | None = None) -> list[ReactionRecord]:
        """All records matching the filter, ordered by (captured_at, record_id)."""

    @abstractmethod
    def purge_member(self, board_id: str, member_id: str) -> int:
        """Erase one member's records on one board; returns the count removed."""

    def latest_per_member(self, card_id: str) -> dict[tuple[str, EmotionKind], ReactionRecord]:
        """Current reaction per (member, emotion) on a card.

        For each pair with at least one record, the record with maximal
        (captured_at, record_id); earlier records stay in history.
        """
        best: dict[tuple[str, EmotionKind], ReactionRecord] = {}
        for r in self.query(ReactionFilter(card_id=card_id)):
            key = (r.member_id, r.emotion)
            kept = best.get(key)
            if kept is None or r.sort_key > kept.sort_key:
                best[key] = r
        return best

    def export(self, flt: ReactionFilter | None, fmt: str) -> bytes:
        return export_records(self.query(flt), fmt)


class MemoryStore(ReactionStore):
    """Volatile in-process store; snapshot reads via copy-under-lock."""

    def __init__(self):
        self._records: list[ReactionRecord] = []
        self._lock = threading.Lock()

    def add_records(self, records: Sequence[ReactionRecord]) -> None:
        with self._lock:
            self._records.extend(records)

    def query(self, flt: ReactionFilter | None = None) -> list[ReactionRecord]:
        with self._lock:
            snapshot = list(self._records)
        if flt is not None:
            snapshot = [r for r in snapshot if flt.matches(r)]
        snapshot.sort(key=lambda r: r.sort_key)
        return snapshot

    def purge_member(self, board_id: str, member_id: str) -> int:
        with self._lock:
            before = len(self._records)
            self._records = [
                r
                for r in self._records
                if not (r.board_id == board_id and r.member_id == member_id)
            ]
            return before - len(self._records)


_SQL_SCHEMA = """
CREATE TABLE IF NOT EXISTS reactions (
    record_id      TEXT PRIMARY KEY,
    board_id       TEXT NOT NULL,
    card_id        TEXT NOT NULL,
    member_id      TEXT NOT NULL,
    emotion        TEXT NOT NULL,
    intensity      INTEGER NOT NULL,
    captured_at_ms INTEGER NOT NULL,
    stage_id       TEXT NOT NULL,
    stage_name     TEXT NOT NULL,
    schema_version INTEGER NOT NULL
);
CREATE INDEX IF NOT EXISTS idx_reactions_card ON reactions (card_id);
CREATE INDEX IF NOT EXISTS idx_reactions_board_member ON reactions (board_id, member_id);
CREATE INDEX IF NOT EXISTS idx_reactions_time ON reactions (captured_at_ms);
"""


class SqliteStore(ReactionStore):
    """Single-file embedded database backend.

    One shared connection, serialized by a lock; each write runs in its
    own transaction so batch appends are all-or-nothing.
    """

    def __init__(self, path: str):
        self.path = str(path)
        try:
            self._conn = sqlite3.connect(self.path, check_same_thread=False)
            self._conn.executescript(_SQL_SCHEMA)
            self._conn.commit()
        except sqlite3.Error as exc:
            raise StorageError(f"cannot open reaction database {self.path!r}: {exc}") from exc
        self._lock = threading.Lock()

    def close(self) -> None:
        with self._lock:
            self._conn.close()

    def add_records(self, records: Sequence[ReactionRecord]) -> None:
        rows = [
            (
                r.record_id,
                r.board_id,
                r.card_id,
                r.member_id,
                r.emotion.value,
                r.intensity,
                to_ms(r.captured_at),
                r.stage.stage_id,
                r.stage.name,
                r.schema_version,
            )
            for r in records
        ]
        try:
            with self._lock, self._conn:
                self._conn.executemany(
                    "INSERT INTO reactions VALUES (?,?,?,?,?,?,?,?,?,?)", rows
                )
        except sqlite3.Error as exc:
            raise StorageError(f"append failed: {exc}") from exc

    def query(self, flt: ReactionFilter | None = None) -> list[ReactionRecord]:
        where, params = self._where(flt)
        sql = (
            "SELECT record_id, board_id, card_id, member_id, emotion, intensity,"
            " captured_at_ms, stage_id, stage_name, schema_version FROM reactions"
            + where
            + " ORDER BY captured_at_ms, record_id"
        )
        try:
            with self._lock:
                rows = self._conn.execute(sql, params).fetchall()
        except sqlite3.Error as exc:
            raise StorageError(f"query failed: {exc}") from exc
        return [
            ReactionRecord(
                record_id=row[0],
                board_id=row[1],
                card_id=row[2],
                member_id=row[3],
                emotion=EmotionKind(row[4]),
                intensity=row[5],
                captured_at=from_ms(row[6]),
                stage=StageRef(row[7], row[8]),
                schema_version=row[9],
            )
            for row in rows
        ]

    def purge_member(self, board_id: str, member_id: str) -> int:
        try:
            with self._lock, self._conn:
                cur = self._conn.execute(
                    "DELETE FROM reactions WHERE board_id = ? AND member_id = ?",
                    (board_id, member_id),
                )
                return cur.rowcount
        except sqlite3.Error as exc:
            raise StorageError(f"purge failed: {exc}") from exc

    @staticmethod
    def _where(flt: ReactionFilter | None) -> tuple[str, list]:
        if flt is None:
            return "", []
        clauses: list[str] = []
        params: list = []
        for column, value in (
            ("board_id", flt.board_id),
            ("card_id", flt.card_id),
            ("member_id", flt.member_id),
        ):
            if value is not None:
                clauses.append(f"{column} = ?")
                params.append(value)
        if flt.emotions is not None:
            names = sorted(k.value for k in flt.emotions)
            if names:
                clauses.append(f"emotion IN ({','.join('?' * len(names))})")
                params.extend(names)
            else:
                clauses.append("0")  # empty set matches nothing
        if flt.since is not None:
            clauses.append("captured_at_ms >= ?")
            params.append(to_ms(flt.since))
        if flt.until is not None:
            clauses.append("captured_at_ms < ?")
            params.append(to_ms(flt.until))
        if flt.stages is not None:
            ids = sorted(flt.stages)
            if ids:
                clauses.append(f"stage_id IN ({','.join('?' * len(ids))})")
                params.extend(ids)
            else:
                clauses.append("0")
        if not clauses:
            return "", []
        return " WHERE " + " AND ".join(clauses), params
