"""Built-in demo board: a small mobile-game team with a few days of history.

The seeded history already has one member worried about the
"Integrate microtransactions" card (current anxiety 4, fear 3), and is
deliberately quiet on the day before seeding and on the seed day itself:
a fresh anxiety/fear save on that card keeps the card summary exact and
registers as a peak on the board's day-granularity chart.
"""

from __future__ import annotations

from datetime import datetime, timedelta, timezone

from .auth import issue_token
from .providers.local import LocalRoster
from .records import ReactionBatch
from .store import ReactionStore
from . import emotions

DEMO_BOARD_ID = "demo-board"
MICROTRANSACTIONS_CARD_ID = "card-microtransactions"

DEMO_ROSTER_DOCUMENT = {
    "boards": [
        {
            "board_id": DEMO_BOARD_ID,
            "name": "Free-to-Play Mobile Game",
            "stages": [
                {"stage_id": "list-todo", "name": "To Do"},
                {"stage_id": "list-doing", "name": "In Progress"},
                {"stage_id": "list-done", "name": "Done"},
            ],
            "cards": [
                {
                    "card_id": MICROTRANSACTIONS_CARD_ID,
                    "title": "Integrate microtransactions",
                    "stage_id": "list-doing",
                },
                {"card_id": "card-login", "title": "Login screen", "stage_id": "list-done"},
                {"card_id": "card-tutorial", "title": "Tutorial flow", "stage_id": "list-doing"},
                {"card_id": "card-shop", "title": "Shop UI polish", "stage_id": "list-todo"},
            ],
            "members": [
                {"member_id": "kashumi", "name": "Kashumi", "admin": False},
                {"member_id": "rashina", "name": "Rashina", "admin": True},
                {"member_id": "damon", "name": "Damon", "admin": False},
                {"member_id": "thomas", "name": "Thomas", "admin": False},
            ],
        }
    ]
}

# (card, member, {emotion: intensity}, days before seed time) — one panel
# save each. Only kashumi ever rates the microtransactions card, and days
# 0 and 1 stay anxiety-free so a fresh save stands out.
_K = emotions.EmotionKind
_HISTORY = (
    ("card-login", "damon", {_K.HAPPINESS: 5}, 6),
    ("card-shop", "thomas", {_K.ANGER: 2}, 6),
    ("card-microtransactions", "kashumi", {_K.ANXIETY: 3, _K.FEAR: 2}, 5),
    ("card-microtransactions", "kashumi", {_K.ANXIETY: 4, _K.FEAR: 3}, 4),
    ("card-tutorial", "damon", {_K.ANXIETY: 2}, 3),
    ("card-login", "thomas", {_K.RELAXATION: 4}, 2),
    ("card-tutorial", "thomas", {_K.SADNESS: 2}, 2),
    ("card-shop", "kashumi", {_K.HAPPINESS: 6}, 2),
    ("card-tutorial", "kashumi", {_K.ANXIETY: 1}, 2),
    ("card-shop", "damon", {_K.DESIRE: 5}, 1),
)


def demo_roster() -> LocalRoster:
    return LocalRoster(DEMO_ROSTER_DOCUMENT)


def seed_demo(
    store: ReactionStore,
    provider: LocalRoster,
    *,
    now: datetime | None = None,
) -> int:
    """Append the built-in reaction history; returns the record count."""
    now = now or datetime.now(timezone.utc)
    total = 0
    for card_id, member_id, ratings, days_ago in _HISTORY:
        batch = ReactionBatch(
            board_id=DEMO_BOARD_ID,
            card_id=card_id,
            member_id=member_id,
            ratings=dict(ratings),
        )
        total += len(store.append_batch(batch, now - timedelta(days=days_ago), provider))
    return total


def demo_tokens(secret: str, *, now: datetime | None = None) -> dict[str, str]:
    """Bearer tokens for every demo member (7-day validity)."""
    now = now or datetime.now(timezone.utc)
    board = DEMO_ROSTER_DOCUMENT["boards"][0]
    return {
        member["member_id"]: issue_token(
            member["member_id"], DEMO_BOARD_ID, secret, issued_at=now
        )
        for member in board["members"]
    }
