from .base import BoardStateProvider, Card, Member
from .local import LocalRoster, load_roster, load_roster_file
from .trello import TrelloAdapter

__all__ = [
    "BoardStateProvider",
    "Card",
    "Member",
    "LocalRoster",
    "load_roster",
    "load_roster_file",
    "TrelloAdapter",
]
