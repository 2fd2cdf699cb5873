"""Board-state provider backed by the Trello REST API.

All HTTP goes through an injectable httpx client so the test suite runs
with zero network access (httpx.MockTransport stands in for the real
API). Card stages are cached with a TTL; webhook card-move events keep
the cache warm between polls, so a fresh cache answers get_stage without
any network call.
"""

from __future__ import annotations

import logging
import time
from typing import Callable, Iterable, Mapping

import httpx

from ..errors import MalformedEventError, UnknownCardError, UpstreamError
from ..records import StageRef
from .base import BoardStateProvider, Card, Member

log = logging.getLogger(__name__)

DEFAULT_BASE_URL = "https://api.trello.com/1"
DEFAULT_STAGE_TTL = 300.0


class TrelloAdapter(BoardStateProvider):
    def __init__(
        self,
        *,
        key: str,
        token: str,
        board_ids: Iterable[str],
        base_url: str = DEFAULT_BASE_URL,
        client: httpx.Client | None = None,
        stage_ttl: float = DEFAULT_STAGE_TTL,
        clock: Callable[[], float] = time.monotonic,
    ):
        self._auth = {"key": key, "token": token}
        self.board_ids = set(board_ids)
        self._base_url = base_url.rstrip("/")
        self._client = client or httpx.Client(timeout=10.0)
        self._stage_ttl = stage_ttl
        self._clock = clock
        self._stage_cache: dict[str, tuple[StageRef, float]] = {}

    # -- HTTP plumbing --------------------------------------------------------

    def _get(self, path: str, params: Mapping | None = None) -> object:
        merged = dict(self._auth)
        if params:
            merged.update(params)
        try:
            response = self._client.get(self._base_url + path, params=merged)
        except httpx.HTTPError as exc:
            raise UpstreamError(f"board platform unreachable: {exc}") from exc
        if response.status_code == 404:
            raise _NotFound(path)
        if response.status_code >= 400:
            raise UpstreamError(
                f"board platform returned {response.status_code} for {path}"
            )
        try:
            return response.json()
        except ValueError as exc:
            raise UpstreamError(f"undecodable platform response for {path}") from exc

    # -- BoardStateProvider ---------------------------------------------------

    def get_card(self, card_id: str) -> Card:
        try:
            data = self._get(f"/cards/{card_id}", {"fields": "id,name,idList"})
        except _NotFound:
            raise UnknownCardError(card_id) from None
        return Card(card_id=card_id, title=str(data.get("name", "")), stage=self.get_stage(card_id))

    def list_cards(self, board_id: str) -> list[Card]:
        try:
            cards = self._get(f"/boards/{board_id}/cards", {"fields": "id,name,idList"})
            lists = self._get(f"/boards/{board_id}/lists", {"fields": "id,name"})
        except _NotFound as exc:
            raise UpstreamError(f"board {board_id!r} not found upstream") from exc
        names = {l["id"]: str(l.get("name", "")) for l in lists}
        out = []
        now = self._clock()
        for c in cards:
            stage = StageRef(str(c["idList"]), names.get(c["idList"], str(c["idList"])))
            self._stage_cache[c["id"]] = (stage, now)  # prime while we have the data
            out.append(Card(card_id=str(c["id"]), title=str(c.get("name", "")), stage=stage))
        return out

    def get_stage(self, card_id: str) -> StageRef:
        cached = self._stage_cache.get(card_id)
        if cached is not None and self._clock() - cached[1] < self._stage_ttl:
            return cached[0]
        try:
            data = self._get(f"/cards/{card_id}/list", {"fields": "id,name"})
        except _NotFound:
            raise UnknownCardError(card_id) from None
        stage = StageRef(str(data["id"]), str(data.get("name", "")))
        self._stage_cache[card_id] = (stage, self._clock())
        return stage

    def is_admin(self, member_id: str, board_id: str) -> bool:
        try:
            memberships = self._get(f"/boards/{board_id}/memberships")
        except _NotFound:
            return False
        return any(
            m.get("idMember") == member_id and m.get("memberType") == "admin"
            for m in memberships
        )

    def list_members(self, board_id: str) -> list[Member]:
        try:
            members = self._get(f"/boards/{board_id}/members", {"fields": "id,fullName"})
            memberships = self._get(f"/boards/{board_id}/memberships")
        except _NotFound as exc:
            raise UpstreamError(f"board {board_id!r} not found upstream") from exc
        admins = {m.get("idMember") for m in memberships if m.get("memberType") == "admin"}
        return [
            Member(
                member_id=str(m["id"]),
                name=str(m.get("fullName") or m["id"]),
                admin=m["id"] in admins,
            )
            for m in members
        ]

    # -- webhooks -------------------------------------------------------------

    def webhook_ingest(self, event: Mapping) -> bool:
        """Apply one posted action document to the stage cache.

        Returns True when the cache changed. Unrecognized action types
        are ignored; events for boards this deployment does not serve are
        ignored with a warning. Raises MalformedEventError only when the
        document cannot be interpreted as an action at all.
        """
        if not isinstance(event, Mapping):
            raise MalformedEventError("webhook payload must be a JSON object")
        action = event.get("action")
        if not isinstance(action, Mapping) or not isinstance(action.get("type"), str):
            raise MalformedEventError("webhook payload has no action.type")

        if action["type"] != "updateCard":
            return False
        data = action.get("data") or {}
        card = data.get("card") or {}
        moved_to = data.get("listAfter")
        if not isinstance(moved_to, Mapping) or not card.get("id"):
            return False  # some other card update; not a move

        board = (data.get("board") or {}).get("id")
        if board not in self.board_ids:
            log.warning("ignoring card-move event for unknown board %r", board)
            return False
        stage = StageRef(str(moved_to.get("id")), str(moved_to.get("name") or ""))
        self._stage_cache[str(card["id"])] = (stage, self._clock())
        return True


class _NotFound(Exception):
    pass
