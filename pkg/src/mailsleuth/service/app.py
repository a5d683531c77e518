"""HTTP service: identification endpoint, health, static web UI hosting.

Routes are plain sync handlers (FastAPI runs them on its thread pool);
the engine's own fan-out provides per-request concurrency.  Responses are
rendered with a single serializer so identical requests yield
byte-identical bodies.
"""
from __future__ import annotations

import logging
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.responses import HTMLResponse, JSONResponse, Response
from fastapi.staticfiles import StaticFiles

from ..config import EngineConfig
from ..core import MAX_EPS, InvalidEmail, normalize_email
from ..engine import Engine, PageFetcher
from ..providers import Clock, utc_now
from .cache import ResponseCache
from .schemas import IdentifyResponse, identify_payload, rfc3339
from .session_log import SessionLog

logger = logging.getLogger(__name__)

_FAILURE_STATUSES = {"timeout", "error"}

_PLACEHOLDER_PAGE = """<!doctype html>
<html>
<head><meta charset="utf-8"><title>mailsleuth</title></head>
<body>
<h1>mailsleuth</h1>
<p>The web UI bundle is not installed. The JSON API is live at
<code>/api/v1/identify?email=&lt;address&gt;</code>.</p>
</body>
</html>
"""


class AllProvidersFailed(Exception):
    """Every registered provider ended in timeout or error."""

    def __init__(self, payload: IdentifyResponse):
        super().__init__("all providers failed")
        self.payload = payload


def _error(status_code: int, error: str) -> JSONResponse:
    return JSONResponse(status_code=status_code, content={"error": error})


def create_app(
    config: EngineConfig,
    *,
    clock: Clock = utc_now,
    engine: Engine | None = None,
    page_fetcher: PageFetcher | None = None,
    ui_dir: Path | str | None = None,
) -> FastAPI:
    engine = engine or Engine(config, clock=clock, page_fetcher=page_fetcher)
    cache = ResponseCache(ttl_s=config.cache_ttl_s, clock=clock)
    session_log = SessionLog(config.log_path) if config.log_path else None

    app = FastAPI(title="mailsleuth", version="0.1.0")
    app.state.engine = engine
    app.state.cache = cache

    def log_search(payload: IdentifyResponse) -> None:
        if session_log is None:
            return
        session_log.append(
            {
                "timestamp": rfc3339(clock()),
                "normalized_email": payload.email,
                "summary_success": payload.summary_success,
                "blog_success": payload.blog_success,
                "provider_statuses": {s.provider: s.status for s in payload.sources},
            }
        )

    @app.get("/api/v1/identify")
    def identify(request: Request) -> Response:
        raw_email = request.query_params.get("email")
        if raw_email is None:
            return _error(400, "invalid_email")

        raw_eps = request.query_params.get("eps")
        eps: int | None = None
        if raw_eps is not None:
            try:
                eps = int(raw_eps)
            except ValueError:
                return _error(400, "invalid_eps")
            if not 1 <= eps <= MAX_EPS:
                return _error(400, "invalid_eps")

        try:
            email = normalize_email(raw_email)
        except InvalidEmail:
            return _error(400, "invalid_email")

        def compute() -> IdentifyResponse:
            identity = engine.identify_email(email, eps)
            payload = identify_payload(identity, cached=False)
            if all(s.status in _FAILURE_STATUSES for s in payload.sources):
                raise AllProvidersFailed(payload)
            return payload

        key = (email.normalized, eps if eps is not None else config.eps.eps)
        try:
            payload, was_cached = cache.get_or_compute(key, compute)
        except AllProvidersFailed as failure:
            log_search(failure.payload)
            return _error(503, "all_providers_failed")

        if was_cached:
            payload = payload.model_copy(update={"cached": True})
        log_search(payload)
        return Response(content=payload.model_dump_json(), media_type="application/json")

    @app.get("/api/v1/health")
    def health() -> dict:
        return {"status": "ok", "providers": len(config.providers)}

    ui_path = Path(ui_dir) if ui_dir else None
    if ui_path is not None and ui_path.is_dir():
        app.mount("/", StaticFiles(directory=ui_path, html=True), name="ui")
    else:
        @app.get("/", include_in_schema=False)
        def index() -> HTMLResponse:
            return HTMLResponse(_PLACEHOLDER_PAGE)

    return app
