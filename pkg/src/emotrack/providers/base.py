"""Source-of-truth abstraction for boards, cards, stages and membership.

Implementations answer questions; they never touch reaction data. The
same contract test suite runs against every implementation.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass

from ..records import StageRef


@dataclass(frozen=True, slots=True)
class Card:
    card_id: str
    title: str
    stage: StageRef


@dataclass(frozen=True, slots=True)
class Member:
    member_id: str
    name: str
    admin: bool


class BoardStateProvider(ABC):
    @abstractmethod
    def get_card(self, card_id: str) -> Card:
        """Raises UnknownCardError if the card cannot be resolved."""

    @abstractmethod
    def list_cards(self, board_id: str) -> list[Card]:
        ...

    @abstractmethod
    def get_stage(self, card_id: str) -> StageRef:
        """Current stage of a card; agrees with get_card(card_id).stage."""

    @abstractmethod
    def is_admin(self, member_id: str, board_id: str) -> bool:
        ...

    @abstractmethod
    def list_members(self, board_id: str) -> list[Member]:
        ...
