"""Exception hierarchy shared across the package.

The HTTP layer maps these onto status codes and machine-readable error
codes; everything else raises them directly.
"""


class EmotrackError(Exception):
    """Base class for all errors raised by this package."""


class UnknownEmotionError(EmotrackError):
    def __init__(self, text: str):
        super().__init__(f"unknown emotion kind: {text!r}")
        self.text = text


class RatingOutOfRangeError(EmotrackError):
    def __init__(self, value, kind=None):
        where = f" for {kind.value}" if kind is not None else ""
        super().__init__(f"intensity{where} must be an integer in 1..7, got {value!r}")
        self.value = value
        self.kind = kind


class InvalidBatchError(EmotrackError):
    """A reaction batch violates its own invariants (e.g. no ratings)."""


class InvalidFilterError(EmotrackError):
    """A reaction filter violates its own invariants (e.g. from >= to)."""


class StorageError(EmotrackError):
    """The storage backend failed to persist or read records."""


# --- board-state providers ---------------------------------------------------


class ProviderError(EmotrackError):
    """Base class for board-state provider failures."""


class UnknownCardError(ProviderError):
    def __init__(self, card_id: str):
        super().__init__(f"unknown card: {card_id!r}")
        self.card_id = card_id


class UnknownBoardError(ProviderError):
    def __init__(self, board_id: str):
        super().__init__(f"unknown board: {board_id!r}")
        self.board_id = board_id


class UpstreamError(ProviderError):
    """The external board platform is unreachable or returned a server error."""


class RosterValidationError(EmotrackError):
    """A local roster document failed referential-integrity checks."""

    def __init__(self, problems: list[str]):
        super().__init__("invalid roster: " + "; ".join(problems))
        self.problems = problems


class MalformedEventError(EmotrackError):
    """A webhook payload could not be interpreted at all."""


# --- authentication ----------------------------------------------------------


class AuthError(EmotrackError):
    """Base class for token rejections; all map to HTTP 401."""


class MalformedTokenError(AuthError):
    pass


class BadSignatureError(AuthError):
    pass


class TokenExpiredError(AuthError):
    pass


class NotManagerError(EmotrackError):
    """Manager-only view requested by a member-role principal."""


class ConfigError(EmotrackError):
    """Service configuration is missing or contradictory."""

    def __init__(self, problems: list[str]):
        super().__init__("invalid configuration: " + "; ".join(problems))
        self.problems = problems
