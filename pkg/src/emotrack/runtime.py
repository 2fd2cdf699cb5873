"""Wires configuration to concrete store and provider instances."""

from __future__ import annotations

from .config import ServiceConfig
from .demo import demo_roster
from .providers.base import BoardStateProvider
from .providers.local import load_roster_file
from .providers.trello import DEFAULT_BASE_URL, TrelloAdapter
from .store import MemoryStore, ReactionStore, SqliteStore


def build_store(config: ServiceConfig) -> ReactionStore:
    if config.storage_mode == "memory":
        return MemoryStore()
    return SqliteStore(config.db_path)


def build_provider(config: ServiceConfig) -> BoardStateProvider:
    if config.provider_mode == "demo":
        return demo_roster()
    if config.provider_mode == "local":
        return load_roster_file(config.roster_path)
    return TrelloAdapter(
        key=config.trello_key,
        token=config.trello_token,
        board_ids=config.trello_boards,
        base_url=config.trello_base_url or DEFAULT_BASE_URL,
        stage_ttl=config.stage_cache_ttl,
    )
