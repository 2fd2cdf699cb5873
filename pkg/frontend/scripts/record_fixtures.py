#!/usr/bin/env python3
"""Record demo-board API responses as JSON fixtures for the UI tests.

Seeds the built-in demo board at a frozen point in time and captures
real HTTP responses, so the frontend tests render exactly what the
service serves. Re-run after API changes:

    python3 scripts/record_fixtures.py
"""

from __future__ import annotations

import json
import pathlib
import sys
from datetime import datetime, timezone

from fastapi.testclient import TestClient

from emotrack.api import create_app
from emotrack.auth import issue_token
from emotrack.config import load_config
from emotrack.demo import DEMO_BOARD_ID, demo_roster, seed_demo
from emotrack.store import MemoryStore

FROZEN_NOW = datetime(2023, 5, 21, 12, 0, tzinfo=timezone.utc)
SECRET = "fixture-secret"

OUT_DIR = pathlib.Path(__file__).resolve().parent.parent / "tests" / "fixtures"


def main() -> int:
    store = MemoryStore()
    provider = demo_roster()
    seed_demo(store, provider, now=FROZEN_NOW)

    config = load_config(env={}, overrides={"token_secret": SECRET})
    client = TestClient(create_app(config, store=store, provider=provider))

    def bearer(member: str) -> dict:
        return {"Authorization": f"Bearer {issue_token(member, DEMO_BOARD_ID, SECRET)}"}

    captures = {
        "schema.json": client.get("/v1/schema", headers=bearer("kashumi")),
        "cards.json": client.get(f"/v1/boards/{DEMO_BOARD_ID}/cards", headers=bearer("kashumi")),
        "summary-microtransactions.json": client.get(
            f"/v1/boards/{DEMO_BOARD_ID}/cards/card-microtransactions/summary",
            headers=bearer("rashina"),
        ),
        "dashboard-day.json": client.get(
            f"/v1/boards/{DEMO_BOARD_ID}/dashboard", headers=bearer("rashina")
        ),
        "dashboard-member-403.json": client.get(
            f"/v1/boards/{DEMO_BOARD_ID}/dashboard", headers=bearer("kashumi")
        ),
    }

    OUT_DIR.mkdir(parents=True, exist_ok=True)
    for name, response in captures.items():
        expected = 403 if name.endswith("-403.json") else 200
        if response.status_code != expected:
            print(f"{name}: expected {expected}, got {response.status_code}", file=sys.stderr)
            return 1
        payload = {"status": response.status_code, "body": response.json()}
        path = OUT_DIR / name
        path.write_text(json.dumps(payload, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")
        print(f"wrote {path.relative_to(OUT_DIR.parent.parent)}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
