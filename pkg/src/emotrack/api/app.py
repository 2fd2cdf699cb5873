"""HTTP service shell: binds store, analytics, auth and providers.

All endpoints live under /v1 and require a bearer token except
/healthz (liveness) and the platform webhook receiver, which external
services call without our tokens. Every error body has the
{code, message} shape; stack traces never leave the process.
"""

from __future__ import annotations

from datetime import datetime, timezone
from fractions import Fraction

from fastapi import Depends, FastAPI, Path, Query, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, PlainTextResponse
from starlette.exceptions import HTTPException as StarletteHTTPException

from .. import analytics
from ..auth import Principal, RoleCache, redact_records, resolve_role, verify_token
from ..config import ServiceConfig
from ..emotions import CANONICAL_ORDER, default_schema, parse_kind
from ..errors import (
    AuthError,
    EmotrackError,
    InvalidBatchError,
    InvalidFilterError,
    MalformedEventError,
    MalformedTokenError,
    NotManagerError,
    ProviderError,
    RatingOutOfRangeError,
    StorageError,
    UnknownBoardError,
    UnknownCardError,
    UnknownEmotionError,
    UpstreamError,
)
from ..records import ReactionBatch, ReactionFilter, ReactionRecord, format_ts, parse_ts
from ..runtime import build_provider, build_store
from . import schemas

_ERROR_MAP: list[tuple[type[EmotrackError], int, str]] = [
    (AuthError, 401, "unauthorized"),
    (NotManagerError, 403, "not_manager"),
    (UnknownCardError, 404, "unknown_card"),
    (UnknownBoardError, 404, "not_found"),
    (UnknownEmotionError, 422, "invalid_rating"),
    (RatingOutOfRangeError, 422, "invalid_rating"),
    (InvalidBatchError, 422, "invalid_rating"),
    (InvalidFilterError, 422, "invalid_request"),
    (MalformedEventError, 422, "invalid_request"),
    (UpstreamError, 503, "provider_unavailable"),
    (StorageError, 503, "storage_unavailable"),
]


def _error_response(status: int, code: str, message: str) -> JSONResponse:
    return JSONResponse(status_code=status, content={"code": code, "message": message})


def create_app(config: ServiceConfig, *, store=None, provider=None) -> FastAPI:
    store = store if store is not None else build_store(config)
    provider = provider if provider is not None else build_provider(config)
    schema = default_schema()
    role_cache = RoleCache(config.role_cache_ttl)

    app = FastAPI(title="emotrack", version="1.0", docs_url="/docs")
    app.state.config = config
    app.state.store = store
    app.state.provider = provider

    if config.cors_origins:
        app.add_middleware(
            CORSMiddleware,
            allow_origins=list(config.cors_origins),
            allow_methods=["GET", "POST", "HEAD", "OPTIONS"],
            allow_headers=["Authorization", "Content-Type"],
        )

    # -- errors ---------------------------------------------------------------

    for exc_type, status, code in _ERROR_MAP:
        def _handler(request: Request, exc: Exception, status=status, code=code):
            return _error_response(status, code, str(exc))

        app.add_exception_handler(exc_type, _handler)

    @app.exception_handler(RequestValidationError)
    async def _validation_handler(request: Request, exc: RequestValidationError):
        return _error_response(422, "invalid_request", "request failed validation")

    @app.exception_handler(StarletteHTTPException)
    async def _http_handler(request: Request, exc: StarletteHTTPException):
        code = {404: "not_found", 405: "method_not_allowed"}.get(exc.status_code, "error")
        return _error_response(exc.status_code, code, str(exc.detail))

    @app.exception_handler(Exception)
    async def _fallback_handler(request: Request, exc: Exception):
        return _error_response(500, "internal", "internal error")

    # -- auth -----------------------------------------------------------------

    def _claims(request: Request):
        header = request.headers.get("authorization", "")
        if not header.startswith("Bearer "):
            raise MalformedTokenError("missing bearer token")
        now = datetime.now(timezone.utc)
        return verify_token(header[len("Bearer "):], config.token_secret, now)

    def board_principal(request: Request, board: str = Path()) -> Principal:
        claims = _claims(request)
        if claims.board_id != board:
            raise AuthError("token is not valid for this board")
        return resolve_role(claims, provider, role_cache)

    def any_principal(request: Request) -> Principal:
        claims = _claims(request)
        return resolve_role(claims, provider, role_cache)

    # -- endpoints ------------------------------------------------------------

    @app.get("/healthz", response_class=PlainTextResponse)
    def healthz() -> str:
        return "ok"

    @app.get("/v1/schema", response_model=schemas.SchemaOut)
    def get_schema(principal: Principal = Depends(any_principal)):
        return _schema_out()

    @app.get("/v1/boards/{board}/cards", response_model=schemas.CardsOut)
    def list_cards(board: str, principal: Principal = Depends(board_principal)):
        cards = provider.list_cards(board)
        return schemas.CardsOut(
            cards=[
                schemas.CardOut(
                    card_id=c.card_id,
                    title=c.title,
                    stage_id=c.stage.stage_id,
                    stage_name=c.stage.name,
                )
                for c in cards
            ]
        )

    @app.post(
        "/v1/boards/{board}/cards/{card}/reactions",
        response_model=schemas.ReactionsOut,
        status_code=201,
    )
    def post_reactions(
        board: str,
        card: str,
        body: schemas.ReactionsIn,
        principal: Principal = Depends(board_principal),
    ):
        ratings = {parse_kind(name): value for name, value in body.ratings.items()}
        batch = ReactionBatch(
            board_id=board,
            card_id=card,
            member_id=principal.member_id,
            ratings=ratings,
        )
        records = store.append_batch(batch, datetime.now(timezone.utc), provider)
        noun = "reaction" if len(records) == 1 else "reactions"
        return schemas.ReactionsOut(
            message=f"Saved {len(records)} {noun}.",
            records=[_record_out(r) for r in records],
        )

    @app.get("/v1/boards/{board}/cards/{card}/reactions", response_model=schemas.RecordsOut)
    def card_reactions(
        board: str,
        card: str,
        principal: Principal = Depends(board_principal),
    ):
        provider.get_card(card)  # 404 for unknown cards
        records = store.query(ReactionFilter(board_id=board, card_id=card))
        visible = redact_records(records, principal)
        return schemas.RecordsOut(records=[_record_out(r) for r in visible])

    @app.get("/v1/boards/{board}/cards/{card}/summary", response_model=schemas.SummaryOut)
    def card_summary(
        board: str,
        card: str,
        principal: Principal = Depends(board_principal),
    ):
        card_info = provider.get_card(card)
        records = store.query(ReactionFilter(board_id=board, card_id=card))
        summary = analytics.card_summary(card, records)
        return schemas.SummaryOut(
            card_id=card,
            title=card_info.title,
            respondent_count=summary.respondent_count,
            emotions=[_row_out(row) for row in summary.rows],
        )

    @app.get("/v1/boards/{board}/dashboard", response_model=schemas.DashboardOut)
    def dashboard(
        board: str,
        granularity: str = "day",
        emotion: list[str] | None = Query(default=None),
        member: str | None = None,
        since: str | None = Query(default=None, alias="from"),
        until: str | None = Query(default=None, alias="to"),
        principal: Principal = Depends(board_principal),
    ):
        if not principal.is_manager:
            raise NotManagerError("the dashboard is restricted to board managers")
        try:
            gran = analytics.Granularity(granularity)
        except ValueError:
            raise InvalidFilterError(f"unsupported granularity {granularity!r}") from None
        kinds = [parse_kind(e) for e in emotion] if emotion else list(CANONICAL_ORDER)
        try:
            since_dt = parse_ts(since) if since else None
            until_dt = parse_ts(until) if until else None
        except ValueError as exc:
            raise InvalidFilterError(f"bad time bound: {exc}") from None

        flt = ReactionFilter(
            board_id=board,
            member_id=member,
            emotions=frozenset(kinds) if emotion else None,
            since=since_dt,
            until=until_dt,
        )
        records = store.query(flt)
        series = analytics.time_series(records, gran, scope=f"board:{board}")
        peaks = [p for kind in kinds for p in analytics.detect_peaks(series, kind)]
        peaks.sort(key=lambda p: (p.bucket_start, CANONICAL_ORDER.index(p.emotion)))
        breakdown = analytics.stage_breakdown(records)
        sentiment = analytics.aggregate_sentiment(analytics.emotion_rows(records), schema)
        return schemas.DashboardOut(
            series=_series_out(series),
            peaks=[
                schemas.PeakOut(
                    emotion=p.emotion.value,
                    bucket_start=format_ts(p.bucket_start),
                    mean=float(p.mean),
                )
                for p in peaks
            ],
            stages=[
                schemas.StageRowOut(
                    stage_id=row.stage.stage_id,
                    stage_name=row.stage.name,
                    count=row.count,
                    emotions=_stats_out(row.emotions),
                )
                for row in breakdown.rows
            ],
            sentiment=_num(sentiment),
            filter=schemas.FilterEcho(
                emotions=[k.value for k in kinds] if emotion else None,
                member=member,
                since=format_ts(since_dt) if since_dt else None,
                until=format_ts(until_dt) if until_dt else None,
            ),
        )

    @app.get("/v1/boards/{board}/members/me/reactions", response_model=schemas.RecordsOut)
    def my_reactions(board: str, principal: Principal = Depends(board_principal)):
        records = store.query(
            ReactionFilter(board_id=board, member_id=principal.member_id)
        )
        visible = redact_records(records, principal)
        return schemas.RecordsOut(records=[_record_out(r) for r in visible])

    @app.post("/v1/webhooks/trello", response_model=schemas.WebhookAck)
    async def webhook(request: Request):
        ingest = getattr(provider, "webhook_ingest", None)
        if ingest is None:
            raise StarletteHTTPException(404, "no webhook-capable provider configured")
        try:
            event = await request.json()
        except ValueError:
            raise MalformedEventError("webhook body is not JSON") from None
        return schemas.WebhookAck(ok=True, updated=bool(ingest(event)))

    @app.head("/v1/webhooks/trello", include_in_schema=False)
    @app.get("/v1/webhooks/trello", include_in_schema=False)
    def webhook_probe():
        # the platform validates callback URLs with HEAD/GET pings
        return PlainTextResponse("ok")

    return app


# -- converters ---------------------------------------------------------------


def _num(value: Fraction | None) -> float | None:
    return None if value is None else float(value)


def _record_out(r: ReactionRecord) -> schemas.RecordOut:
    return schemas.RecordOut(
        record_id=r.record_id,
        board_id=r.board_id,
        card_id=r.card_id,
        member_id=r.member_id,
        emotion=r.emotion.value,
        intensity=r.intensity,
        captured_at=format_ts(r.captured_at),
        stage_id=r.stage.stage_id,
        stage_name=r.stage.name,
        schema_version=r.schema_version,
    )


def _row_out(row: analytics.EmotionRow) -> schemas.EmotionRowOut:
    return schemas.EmotionRowOut(
        emotion=row.emotion.value,
        count=row.count,
        mean=_num(row.mean),
        min=row.min,
        max=row.max,
        latest=row.latest,
    )


def _stats_out(stats) -> dict[str, schemas.BucketStatOut]:
    return {
        kind.value: schemas.BucketStatOut(count=s.count, mean=_num(s.mean))
        for kind, s in stats.items()
    }


def _series_out(series: analytics.TimeSeries) -> schemas.SeriesOut:
    return schemas.SeriesOut(
        scope=series.scope or "",
        granularity=series.granularity.value,
        buckets=[
            schemas.BucketOut(start=format_ts(b.start), emotions=_stats_out(b.emotions))
            for b in series.buckets
        ],
    )


def _schema_out() -> schemas.SchemaOut:
    from ..emotions import INTENSITY_MAX, INTENSITY_MIN, SCALE_HINT

    schema = default_schema()
    return schemas.SchemaOut(
        version=schema.version,
        scale_min=INTENSITY_MIN,
        scale_max=INTENSITY_MAX,
        scale_hint=SCALE_HINT,
        emotions=[
            schemas.DescriptorOut(
                kind=d.kind.value,
                label=d.label,
                glyph=d.glyph,
                valence=d.valence.value,
                arousal=d.arousal.value,
                motivation=d.motivation.value,
            )
            for d in schema.descriptors
        ],
    )
