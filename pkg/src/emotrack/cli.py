"""Command-line front door: serve, seed-demo, export, report.

Exit codes: 0 success, 1 usage, 2 configuration, 3 local I/O,
4 upstream board platform failure.
"""

from __future__ import annotations

import secrets
import sys

import click

from . import analytics
from .config import ServiceConfig, load_config
from .demo import DEMO_BOARD_ID, demo_tokens, seed_demo
from .errors import ConfigError, StorageError, UpstreamError
from .records import ReactionFilter
from .runtime import build_provider, build_store


def _load(config_path: str | None, **overrides) -> ServiceConfig:
    return load_config(config_path, overrides=overrides)


@click.group()
def cli() -> None:
    """Emotion telemetry for agile boards."""


@cli.command()
@click.option("--config", "config_path", type=click.Path(), default=None, help="YAML config file.")
@click.option("--host", default=None)
@click.option("--port", type=int, default=None)
@click.option("--demo", is_flag=True, help="Serve an in-memory demo board with seeded history.")
def serve(config_path: str | None, host: str | None, port: int | None, demo: bool) -> None:
    """Run the HTTP service."""
    import uvicorn

    from .api import create_app

    overrides: dict[str, object] = {"host": host, "port": port}
    if demo:
        overrides.update({"provider_mode": "demo", "storage_mode": "memory"})
        try:
            config = _load(config_path, **overrides)
        except ConfigError:
            # no secret configured anywhere; demo mode invents one
            overrides["token_secret"] = secrets.token_hex(16)
            config = _load(config_path, **overrides)
    else:
        config = _load(config_path, **overrides)

    store = build_store(config)
    provider = build_provider(config)
    if demo:
        seed_demo(store, provider)
        click.echo(f"demo board: {DEMO_BOARD_ID}")
        for member_id, token in demo_tokens(config.token_secret).items():
            click.echo(f"token {member_id}: {token}")

    app = create_app(config, store=store, provider=provider)
    uvicorn.run(app, host=config.host, port=config.port, log_level="info")


@cli.command("seed-demo")
@click.option("--config", "config_path", type=click.Path(), default=None, help="YAML config file.")
def seed_demo_cmd(config_path: str | None) -> None:
    """Write the demo board's reaction history into file storage."""
    config = _load(config_path, provider_mode="demo")
    if config.storage_mode != "file":
        raise ConfigError(["seed-demo needs file storage (set storage.mode: file and a db path)"])
    store = build_store(config)
    provider = build_provider(config)
    count = seed_demo(store, provider)
    click.echo(f"seeded {count} records into {config.db_path}")
    if config.token_secret:
        for member_id, token in demo_tokens(config.token_secret).items():
            click.echo(f"token {member_id}: {token}")


@cli.command()
@click.option("--config", "config_path", type=click.Path(), default=None, help="YAML config file.")
@click.option("--board", default=None)
@click.option("--format", "fmt", type=click.Choice(["csv", "jsonl"]), default="csv")
@click.option("--out", type=click.Path(), default=None, help="Output file (default: stdout).")
def export(config_path: str | None, board: str | None, fmt: str, out: str | None) -> None:
    """Dump reaction records as CSV or JSON lines."""
    if not board:
        raise ConfigError(["--board is required"])
    config = _load(config_path)
    store = build_store(config)
    payload = store.export(ReactionFilter(board_id=board), fmt)
    if out:
        with open(out, "wb") as fh:
            fh.write(payload)
    else:
        sys.stdout.buffer.write(payload)


@cli.command()
@click.option("--config", "config_path", type=click.Path(), default=None, help="YAML config file.")
@click.option("--board", default=None)
@click.option("--card", default=None)
def report(config_path: str | None, board: str | None, card: str | None) -> None:
    """Print a count/mean table of the stored reactions."""
    if not board:
        raise ConfigError(["--board is required"])
    config = _load(config_path)
    store = build_store(config)
    records = store.query(ReactionFilter(board_id=board, card_id=card))
    rows = analytics.emotion_rows(records)

    scope = f"board {board}" + (f", card {card}" if card else "")
    click.echo(f"reactions for {scope}: {len(records)} records")
    click.echo(f"{'emotion':<12}{'count':>7}{'mean':>7}")
    for row in rows:
        mean = f"{float(row.mean):.1f}" if row.mean is not None else "-"
        click.echo(f"{row.emotion.value:<12}{row.count:>7}{mean:>7}")


def main(argv: list[str] | None = None) -> int:
    try:
        cli.main(args=argv, standalone_mode=False)
    except click.exceptions.Abort:
        click.echo("aborted", err=True)
        return 1
    except click.ClickException as exc:  # covers UsageError
        exc.show()
        return 1
    except ConfigError as exc:
        click.echo(str(exc), err=True)
        return 2
    except (OSError, StorageError) as exc:
        click.echo(f"i/o error: {exc}", err=True)
        return 3
    except UpstreamError as exc:
        click.echo(f"board platform error: {exc}", err=True)
        return 4
    return 0


if __name__ == "__main__":
    sys.exit(main())
