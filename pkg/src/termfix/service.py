"""HTTP ingestion and per-session analysis.

POST /v1/events takes a JSONL batch; each line is validated independently
and accepted lines are appended in order to the log file (line-atomic,
single writer). GET /v1/sessions/{id}/report rebuilds the session from the
log and returns the same JSON bytes the offline CLI produces for that
session. Storage is the JSONL log plus an in-memory offset index built at
startup and maintained on append; there is no database.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from pathlib import Path

from fastapi import FastAPI, Request, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .events import EventDecodeError, decode_event
from .extraction import ThresholdPolicy, default_policy
from .reports import session_report_json
from .sessions import build_sessions
from .stats import DEFAULT_ALPHA
from .textnorm import NormalizationConfig, default_config

__all__ = ["ServiceSettings", "LogStore", "create_app"]

MAX_BATCH_BYTES_DEFAULT = 1 << 20  # 1 MiB


@dataclass(frozen=True)
class ServiceSettings:
    log_path: Path
    max_batch_bytes: int = MAX_BATCH_BYTES_DEFAULT
    alpha: float = DEFAULT_ALPHA
    cors_origins: tuple[str, ...] = ("*",)
    token: str | None = None


class LogStore:
    """Append-only JSONL log with a per-session byte-offset index.

    A single lock serializes appends; readers snapshot the index under the
    lock and then read the file without it, which is safe because indexed
    bytes are flushed before the lock is released.
    """

    def __init__(self, path: Path | str):
        self.path = Path(path)
        self._lock = threading.Lock()
        self._index: dict[str, list[tuple[int, int]]] = {}
        self._size = 0
        if self.path.exists():
            self._scan()

    def _scan(self) -> None:
        offset = 0
        with self.path.open("rb") as fh:
            for raw in fh:
                length = len(raw)
                line = raw.decode("utf-8", errors="replace").rstrip("\r\n")
                if line and not line.startswith("#"):
                    try:
                        event = decode_event(line)
                    except EventDecodeError:
                        pass
                    else:
                        self._index.setdefault(event.session_id, []).append(
                            (offset, length)
                        )
                offset += length
        self._size = offset

    def append_lines(self, pairs: list[tuple[str, str]]) -> None:
        """Append (session_id, line) pairs; lines must not contain newlines."""
        with self._lock:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            with self.path.open("ab") as fh:
                for session_id, line in pairs:
                    data = (line + "\n").encode("utf-8")
                    fh.write(data)
                    self._index.setdefault(session_id, []).append(
                        (self._size, len(data))
                    )
                    self._size += len(data)
                fh.flush()

    def session_lines(self, session_id: str) -> list[str]:
        with self._lock:
            spans = list(self._index.get(session_id, ()))
        if not spans:
            return []
        lines = []
        with self.path.open("rb") as fh:
            for offset, length in spans:
                fh.seek(offset)
                lines.append(fh.read(length).decode("utf-8").rstrip("\r\n"))
        return lines


def _ack(accepted: int, rejected: int, first_error) -> dict:
    return {
        "accepted": accepted,
        "rejected": rejected,
        "records": accepted + rejected,
        "first_error": first_error,
    }


def create_app(
    settings: ServiceSettings,
    cfg: NormalizationConfig | None = None,
    policy: ThresholdPolicy | None = None,
) -> FastAPI:
    if cfg is None:
        cfg = default_config()
    if policy is None:
        policy = default_policy()
    app = FastAPI(title="term-fixation ingest", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=list(settings.cors_origins),
        allow_methods=["GET", "POST"],
        allow_headers=["*"],
    )
    store = LogStore(settings.log_path)
    app.state.store = store
    app.state.settings = settings

    def _unauthorized(request: Request) -> bool:
        if settings.token is None:
            return False
        return request.headers.get("authorization") != f"Bearer {settings.token}"

    @app.post("/v1/events")
    async def ingest(request: Request) -> Response:
        if _unauthorized(request):
            return JSONResponse({"detail": "Unauthorized"}, status_code=401)
        body = await request.body()
        if len(body) > settings.max_batch_bytes:
            return JSONResponse({"detail": "PayloadTooLarge"}, status_code=413)
        try:
            text = body.decode("utf-8")
        except UnicodeDecodeError:
            return JSONResponse({"detail": "MalformedBatch"}, status_code=400)

        accepted: list[tuple[str, str]] = []
        rejected = 0
        first_error = None
        for lineno, line in enumerate(text.split("\n"), start=1):
            line = line.rstrip("\r")
            if not line.strip():
                continue  # blank lines are not records
            try:
                event = decode_event(line)
            except EventDecodeError as e:
                rejected += 1
                if first_error is None:
                    first_error = {"line": lineno, "error": type(e).__name__}
            else:
                accepted.append((event.session_id, line))

        if not accepted:
            return JSONResponse(
                _ack(0, rejected, first_error), status_code=400
            )
        try:
            store.append_lines(accepted)
        except OSError:
            return JSONResponse({"detail": "StorageUnavailable"}, status_code=503)
        return JSONResponse(
            _ack(len(accepted), rejected, first_error), status_code=202
        )

    @app.get("/v1/sessions/{session_id}/report")
    async def report(session_id: str, request: Request) -> Response:
        if _unauthorized(request):
            return JSONResponse({"detail": "Unauthorized"}, status_code=401)
        try:
            lines = store.session_lines(session_id)
        except OSError:
            return JSONResponse({"detail": "StorageUnavailable"}, status_code=503)
        if not lines:
            return JSONResponse({"detail": "UnknownSession"}, status_code=404)
        events = [decode_event(line) for line in lines]
        corpus = build_sessions(events, cfg)
        session = corpus.by_id(session_id)
        if session is None:  # e.g. clicks without any query: not admitted
            return JSONResponse({"detail": "UnknownSession"}, status_code=404)
        payload = session_report_json(session, cfg, alpha=settings.alpha, policy=policy)
        return Response(content=payload, media_type="application/json")

    return app
