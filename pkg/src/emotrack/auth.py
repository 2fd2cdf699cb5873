"""Token verification, role resolution and the privacy policy.

Tokens are standard three-part signed web tokens (base64url header,
payload, HMAC-SHA256 signature) so off-the-shelf clients interoperate;
the signing secret is symmetric and deployment-configured.

The visibility policy: a member sees their own raw records and
identifier-free aggregates; a manager (board admin per the board-state
provider) additionally sees everyone's raw records with identity.
"""

from __future__ import annotations

import base64
import binascii
import hashlib
import hmac
import json
import threading
import time
from dataclasses import dataclass
from datetime import datetime, timedelta, timezone
from enum import Enum
from typing import TYPE_CHECKING, Callable, Iterable

from .errors import (
    BadSignatureError,
    MalformedTokenError,
    ProviderError,
    TokenExpiredError,
)
from .records import ReactionRecord

if TYPE_CHECKING:
    from .providers.base import BoardStateProvider

_HEADER = {"alg": "HS256", "typ": "JWT"}


class Role(str, Enum):
    MEMBER = "member"
    MANAGER = "manager"


@dataclass(frozen=True)
class TokenClaims:
    member_id: str
    board_id: str
    issued_at: datetime
    expires_at: datetime


@dataclass(frozen=True)
class Principal:
    member_id: str
    board_id: str
    role: Role

    @property
    def is_manager(self) -> bool:
        return self.role is Role.MANAGER


def _b64url(data: bytes) -> bytes:
    return base64.urlsafe_b64encode(data).rstrip(b"=")


def _unb64url(data: bytes) -> bytes:
    return base64.urlsafe_b64decode(data + b"=" * (-len(data) % 4))


def _sign(signing_input: bytes, secret: str) -> bytes:
    return hmac.new(secret.encode("utf-8"), signing_input, hashlib.sha256).digest()


def issue_token(
    member_id: str,
    board_id: str,
    secret: str,
    *,
    issued_at: datetime | None = None,
    ttl: timedelta = timedelta(days=7),
) -> str:
    if ttl <= timedelta(0):
        raise ValueError("token ttl must be positive")
    issued_at = issued_at or datetime.now(timezone.utc)
    payload = {
        "member_id": member_id,
        "board_id": board_id,
        "iat": int(issued_at.timestamp()),
        "exp": int((issued_at + ttl).timestamp()),
    }
    head = _b64url(json.dumps(_HEADER, separators=(",", ":")).encode())
    body = _b64url(json.dumps(payload, separators=(",", ":")).encode())
    signature = _b64url(_sign(head + b"." + body, secret))
    return (head + b"." + body + b"." + signature).decode("ascii")


def verify_token(token: str, secret: str, now: datetime) -> TokenClaims:
    """Check structure, signature and expiry, in that order.

    The signature is verified before expiry so a forged token never
    learns whether its claims would otherwise have been accepted.
    """
    parts = token.encode("ascii", errors="replace").split(b".")
    if len(parts) != 3:
        raise MalformedTokenError("token must have three dot-separated parts")
    head_b64, body_b64, sig_b64 = parts
    try:
        header = json.loads(_unb64url(head_b64))
        payload = json.loads(_unb64url(body_b64))
        signature = _unb64url(sig_b64)
    except (binascii.Error, ValueError) as exc:
        raise MalformedTokenError(f"undecodable token: {exc}") from None
    if not isinstance(header, dict) or header.get("alg") != "HS256":
        raise MalformedTokenError("unsupported token algorithm")

    expected = _sign(head_b64 + b"." + body_b64, secret)
    if not hmac.compare_digest(signature, expected):
        raise BadSignatureError("token signature does not verify")

    if not isinstance(payload, dict):
        raise MalformedTokenError("token payload is not an object")
    try:
        member_id = payload["member_id"]
        board_id = payload["board_id"]
        iat = int(payload["iat"])
        exp = int(payload["exp"])
    except (KeyError, TypeError, ValueError):
        raise MalformedTokenError("token payload is missing required claims") from None
    if not isinstance(member_id, str) or not isinstance(board_id, str) or exp <= iat:
        raise MalformedTokenError("token claims are malformed")

    expires_at = datetime.fromtimestamp(exp, tz=timezone.utc)
    if now >= expires_at:
        raise TokenExpiredError("token has expired")
    return TokenClaims(
        member_id=member_id,
        board_id=board_id,
        issued_at=datetime.fromtimestamp(iat, tz=timezone.utc),
        expires_at=expires_at,
    )


class RoleCache:
    """TTL cache for role lookups; bounds provider query load.

    Thread-safe; refreshes are last-write-wins. A TTL of 0 disables
    caching entirely.
    """

    def __init__(self, ttl: float, clock: Callable[[], float] = time.monotonic):
        self.ttl = ttl
        self._clock = clock
        self._entries: dict[tuple[str, str], tuple[Role, float]] = {}
        self._lock = threading.Lock()

    def get_or_resolve(self, member_id: str, board_id: str, resolver: Callable[[], Role]) -> Role:
        key = (member_id, board_id)
        if self.ttl > 0:
            with self._lock:
                entry = self._entries.get(key)
                if entry is not None and self._clock() - entry[1] < self.ttl:
                    return entry[0]
        role = resolver()  # resolved outside the lock; may hit the network
        if self.ttl > 0:
            with self._lock:
                self._entries[key] = (role, self._clock())
        return role


def resolve_role(
    claims: TokenClaims,
    provider: "BoardStateProvider",
    cache: RoleCache | None = None,
) -> Principal:
    """Attach member-vs-manager authority to verified claims.

    Manager iff the provider reports board-admin status. A provider
    failure fails closed: the request proceeds with member role.
    """

    def lookup() -> Role:
        try:
            admin = provider.is_admin(claims.member_id, claims.board_id)
        except ProviderError:
            return Role.MEMBER
        return Role.MANAGER if admin else Role.MEMBER

    if cache is not None:
        role = cache.get_or_resolve(claims.member_id, claims.board_id, lookup)
    else:
        role = lookup()
    return Principal(member_id=claims.member_id, board_id=claims.board_id, role=role)


def redact_records(records: Iterable[ReactionRecord], principal: Principal) -> list[ReactionRecord]:
    """Apply the raw-record visibility rule: managers see all, members
    see only their own."""
    if principal.is_manager:
        return list(records)
    return [r for r in records if r.member_id == principal.member_id]
