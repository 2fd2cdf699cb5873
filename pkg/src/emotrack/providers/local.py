"""Declarative in-memory board roster for standalone and demo deployments.

Loaded from a YAML (or JSON) document shaped like::

    boards:
      - board_id: team-board
        name: Team Board
        stages:
          - {stage_id: todo, name: "To Do"}
          - {stage_id: doing, name: "In Progress"}
        cards:
          - {card_id: card-1, title: "First task", stage_id: todo}
        members:
          - {member_id: alice, name: "Alice", admin: true}
          - {member_id: bob, name: "Bob"}
"""

from __future__ import annotations

from typing import Mapping

import yaml

from ..errors import RosterValidationError, UnknownBoardError, UnknownCardError
from ..records import StageRef
from .base import BoardStateProvider, Card, Member


class LocalRoster(BoardStateProvider):
    def __init__(self, document: Mapping):
        problems: list[str] = []
        self._boards: dict[str, dict] = {}
        self._card_board: dict[str, str] = {}

        boards = document.get("boards") if isinstance(document, Mapping) else None
        if not isinstance(boards, list) or not boards:
            raise RosterValidationError(["document must contain a non-empty 'boards' list"])

        for bi, board in enumerate(boards):
            path = f"boards[{bi}]"
            if not isinstance(board, Mapping) or not board.get("board_id"):
                problems.append(f"{path}: missing board_id")
                continue
            board_id = str(board["board_id"])
            if board_id in self._boards:
                problems.append(f"{path}: duplicate board_id {board_id!r}")
                continue

            stages: dict[str, StageRef] = {}
            for si, stage in enumerate(board.get("stages") or []):
                spath = f"{path}.stages[{si}]"
                if not isinstance(stage, Mapping) or not stage.get("stage_id"):
                    problems.append(f"{spath}: missing stage_id")
                    continue
                sid = str(stage["stage_id"])
                if sid in stages:
                    problems.append(f"{spath}: duplicate stage_id {sid!r}")
                stages[sid] = StageRef(sid, str(stage.get("name") or sid))

            members: dict[str, Member] = {}
            for mi, member in enumerate(board.get("members") or []):
                mpath = f"{path}.members[{mi}]"
                if not isinstance(member, Mapping) or not member.get("member_id"):
                    problems.append(f"{mpath}: missing member_id")
                    continue
                mid = str(member["member_id"])
                members[mid] = Member(
                    member_id=mid,
                    name=str(member.get("name") or mid),
                    admin=bool(member.get("admin", False)),
                )

            cards: dict[str, str] = {}  # card_id -> stage_id
            titles: dict[str, str] = {}
            for ci, card in enumerate(board.get("cards") or []):
                cpath = f"{path}.cards[{ci}]"
                if not isinstance(card, Mapping) or not card.get("card_id"):
                    problems.append(f"{cpath}: missing card_id")
                    continue
                cid = str(card["card_id"])
                if cid in self._card_board or cid in cards:
                    problems.append(f"{cpath}: duplicate card_id {cid!r}")
                    continue
                sid = str(card.get("stage_id") or "")
                if sid not in stages:
                    problems.append(
                        f"{cpath}: card {cid!r} references unknown stage_id {sid!r}"
                    )
                    continue
                cards[cid] = sid
                titles[cid] = str(card.get("title") or cid)
                self._card_board[cid] = board_id

            self._boards[board_id] = {
                "stages": stages,
                "members": members,
                "cards": cards,
                "titles": titles,
            }

        if problems:
            raise RosterValidationError(problems)

    # -- BoardStateProvider ---------------------------------------------------

    def get_card(self, card_id: str) -> Card:
        board = self._board_of(card_id)
        return Card(
            card_id=card_id,
            title=board["titles"][card_id],
            stage=board["stages"][board["cards"][card_id]],
        )

    def list_cards(self, board_id: str) -> list[Card]:
        board = self._require_board(board_id)
        return [self.get_card(cid) for cid in board["cards"]]

    def get_stage(self, card_id: str) -> StageRef:
        board = self._board_of(card_id)
        return board["stages"][board["cards"][card_id]]

    def is_admin(self, member_id: str, board_id: str) -> bool:
        board = self._boards.get(board_id)
        if board is None:
            return False
        member = board["members"].get(member_id)
        return member.admin if member else False

    def list_members(self, board_id: str) -> list[Member]:
        return list(self._require_board(board_id)["members"].values())

    # -- roster management ----------------------------------------------------

    def move_card(self, card_id: str, stage_id: str) -> None:
        """Relocate a card to another stage of its board (demo/test helper)."""
        board = self._board_of(card_id)
        if stage_id not in board["stages"]:
            raise RosterValidationError([f"unknown stage_id {stage_id!r}"])
        board["cards"][card_id] = stage_id

    def board_ids(self) -> list[str]:
        return list(self._boards)

    def _board_of(self, card_id: str) -> dict:
        board_id = self._card_board.get(card_id)
        if board_id is None:
            raise UnknownCardError(card_id)
        return self._boards[board_id]

    def _require_board(self, board_id: str) -> dict:
        board = self._boards.get(board_id)
        if board is None:
            raise UnknownBoardError(board_id)
        return board


def load_roster(document: Mapping) -> LocalRoster:
    return LocalRoster(document)


def load_roster_file(path: str) -> LocalRoster:
    with open(path, "r", encoding="utf-8") as fh:
        document = yaml.safe_load(fh)
    if not isinstance(document, Mapping):
        raise RosterValidationError([f"{path}: roster document must be a mapping"])
    return LocalRoster(document)
