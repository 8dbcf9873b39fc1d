"""HTTP service wiring prediction, explanation, narration, logging, and
simulation behind a small JSON API.

Request validation is explicit (no framework models) so every rejection
produces the same machine-readable envelope: ``{code, message, field_path}``
with 400 for unparseable JSON and 422 for schema violations. ``/v1/explain``
runs the chart-payload branch and the narrative branch concurrently and
joins them; narrative failures of any kind degrade to template cards and
never surface as 5xx.
"""

from __future__ import annotations

import datetime as dt
import logging
import os
from concurrent.futures import ThreadPoolExecutor
from typing import Any

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from starlette.concurrency import run_in_threadpool

from . import __version__
from .errors import DiariskError, IncompleteBaseline
from .explain import tree_shap
from .model import RiskEstimate, TreeEnsemble, model_checksum, predict
from .narrate import (
    CompletionClient,
    KnowledgeBase,
    NarrativeMode,
    build_knowledge_base,
    generate_narratives,
    render_template_narrative,
)
from .narrate.generate import mode_from_env
from .schema import FeatureSchema, PatientRecord, default_schema
from .simulate import SimulationRequest, simulate
from .store import DataStore, LogEntry, LogKind, RiskHistoryPoint
from .view import to_percentages, view_payload

logger = logging.getLogger(__name__)

DEFAULT_USER = "local"
NARRATIVE_JOIN_TIMEOUT = 30.0  # seconds; generous next to the client's own timeout

_STATUS_BY_CODE = {"malformed_document": 400, "malformed_json": 400}


class ApiError(Exception):
    def __init__(self, status: int, code: str, message: str, field_path: str | None = None):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message
        self.field_path = field_path


def _envelope(code: str, message: str, field_path: str | None) -> dict[str, Any]:
    return {"code": code, "message": message, "field_path": field_path}


def _estimate_payload(estimate: RiskEstimate) -> dict[str, Any]:
    return {
        "margin": estimate.margin,
        "probability": estimate.probability,
        "level": estimate.level.value,
    }


async def _read_json(request: Request) -> Any:
    try:
        return await request.json()
    except Exception:
        raise ApiError(400, "malformed_json", "request body is not valid JSON")


def _require_object(body: Any, what: str) -> dict:
    if not isinstance(body, dict):
        raise ApiError(422, "invalid_body", f"{what} must be a JSON object")
    return body


def _parse_value_map(obj: Any, field_prefix: str) -> dict[str, float]:
    mapping = _require_object(obj, field_prefix)
    values: dict[str, float] = {}
    for key, raw in mapping.items():
        if isinstance(raw, bool) or not isinstance(raw, (int, float)):
            raise ApiError(
                422,
                "invalid_value",
                f"{key} must be a number",
                field_path=f"{field_prefix}.{key}" if field_prefix else key,
            )
        values[key] = float(raw)
    return values


def _parse_record(obj: Any, schema: FeatureSchema, field_prefix: str = "") -> PatientRecord:
    values = _parse_value_map(obj, field_prefix)
    try:
        return PatientRecord.from_mapping(schema, values)
    except DiariskError as exc:
        field = exc.field
        if field and field_prefix:
            field = f"{field_prefix}.{field}"
        raise ApiError(422, exc.code, str(exc), field_path=field)


def create_app(
    ensemble: TreeEnsemble,
    schema: FeatureSchema | None = None,
    store: DataStore | None = None,
    kb: KnowledgeBase | None = None,
    narrative_client: CompletionClient | None = None,
) -> FastAPI:
    schema = schema or default_schema()
    if store is None:
        store = DataStore(os.environ.get("DIARISK_DATA_DIR", "data"), schema)
    if kb is None:
        kb = build_knowledge_base(schema)

    app = FastAPI(title="diarisk", version=__version__)
    ui_origin = os.environ.get("UI_ORIGIN", "*")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=[ui_origin],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    checksum = model_checksum(ensemble)
    executor = ThreadPoolExecutor(max_workers=8, thread_name_prefix="narrate")
    app.state.ensemble = ensemble
    app.state.schema = schema
    app.state.store = store
    app.state.kb = kb

    @app.exception_handler(ApiError)
    async def _handle_api_error(_request: Request, exc: ApiError):
        return JSONResponse(
            status_code=exc.status,
            content=_envelope(exc.code, exc.message, exc.field_path),
        )

    @app.exception_handler(DiariskError)
    async def _handle_library_error(_request: Request, exc: DiariskError):
        status = _STATUS_BY_CODE.get(exc.code, 422)
        return JSONResponse(
            status_code=status, content=_envelope(exc.code, str(exc), exc.field)
        )

    def _user_id(request: Request) -> str:
        return request.headers.get("X-User", DEFAULT_USER)

    # -- stateless prediction and explanation --------------------------------

    @app.post("/v1/estimate")
    async def estimate(request: Request):
        body = await _read_json(request)
        record = _parse_record(body, schema)
        result = await run_in_threadpool(predict, ensemble, record)
        return _estimate_payload(result)

    def _explain_sync(record: PatientRecord, narrative_mode: NarrativeMode) -> dict:
        estimate_result = predict(ensemble, record)
        attribution = tree_shap(ensemble, record)
        view = to_percentages(attribution)

        # Narrative branch runs while the chart payload is assembled; its
        # failure (or a blown join deadline) degrades to template cards.
        future = executor.submit(
            generate_narratives, narrative_mode, view, record, kb,
            client=narrative_client,
        )
        payload = view_payload(view)
        try:
            narrative = future.result(timeout=NARRATIVE_JOIN_TIMEOUT)
            cards, mode_used = narrative.cards, narrative.mode_used
        except Exception as exc:  # pragma: no cover - defensive join guard
            logger.warning("narrative branch failed, using template cards: %s", exc)
            cards = render_template_narrative(view, record, kb)
            mode_used = NarrativeMode.FALLBACK

        return {
            "estimate": _estimate_payload(estimate_result),
            "view": payload,
            "cards": [card.as_dict() for card in cards],
            "narrative_mode_used": mode_used.value,
        }

    @app.post("/v1/explain")
    async def explain(request: Request):
        body = _require_object(await _read_json(request), "body")
        if "record" not in body:
            raise ApiError(422, "missing_field", "body must contain 'record'", "record")
        record = _parse_record(body["record"], schema, "record")
        options = body.get("options", {})
        options = _require_object(options, "options") if options else {}
        raw_mode = options.get("narrative_mode")
        if raw_mode is None:
            narrative_mode = mode_from_env()
        else:
            try:
                narrative_mode = NarrativeMode(str(raw_mode).strip().upper())
            except ValueError:
                raise ApiError(
                    422,
                    "invalid_value",
                    f"narrative_mode must be 'template' or 'llm', got {raw_mode!r}",
                    "options.narrative_mode",
                )
            if narrative_mode == NarrativeMode.FALLBACK:
                raise ApiError(
                    422,
                    "invalid_value",
                    "narrative_mode must be 'template' or 'llm'",
                    "options.narrative_mode",
                )
        return await run_in_threadpool(_explain_sync, record, narrative_mode)

    @app.post("/v1/simulate")
    async def simulate_endpoint(request: Request):
        body = _require_object(await _read_json(request), "body")
        if "base_record" not in body:
            raise ApiError(
                422, "missing_field", "body must contain 'base_record'", "base_record"
            )
        record = _parse_record(body["base_record"], schema, "base_record")
        overrides = _parse_value_map(body.get("overrides", {}), "overrides")
        sim_request = SimulationRequest(base_record=record, overrides=overrides)
        result = await run_in_threadpool(simulate, ensemble, sim_request)
        return {
            "before": _estimate_payload(result.before),
            "after": _estimate_payload(result.after),
            "delta_probability": result.delta_probability,
            "after_view": view_payload(result.after_view),
        }

    # -- logging and history ---------------------------------------------------

    def _logs_sync(user_id: str, entry: LogEntry) -> dict:
        logged = store.logged_features(user_id)
        if not set(schema.ids) <= (logged | set(entry.values)):
            raise IncompleteBaseline(
                "logs must cover every feature before risk tracking starts; "
                "submit the full initial survey as a NONDAILY entry"
            )
        store.put_log(entry)
        record = store.current_record(user_id)
        estimate_result = predict(ensemble, record)
        point = RiskHistoryPoint(
            user_id=user_id,
            date=entry.date,
            probability=estimate_result.probability,
            level=estimate_result.level,
        )
        store.put_history_point(point)
        return {
            "status": "ok",
            "point": {
                "date": point.date.isoformat(),
                "probability": point.probability,
                "level": point.level.value,
            },
        }

    @app.post("/v1/logs")
    async def logs(request: Request):
        body = _require_object(await _read_json(request), "body")
        kind_raw = body.get("kind")
        try:
            kind = LogKind(str(kind_raw).strip().upper())
        except ValueError:
            raise ApiError(
                422, "invalid_value", f"kind must be DAILY or NONDAILY, got {kind_raw!r}", "kind"
            )
        date_raw = body.get("date")
        if date_raw is None:
            date = dt.date.today()
        else:
            try:
                date = dt.date.fromisoformat(str(date_raw))
            except ValueError:
                raise ApiError(
                    422, "invalid_value", f"date must be YYYY-MM-DD, got {date_raw!r}", "date"
                )
        if "values" not in body:
            raise ApiError(422, "missing_field", "body must contain 'values'", "values")
        values = _parse_value_map(body["values"], "values")
        entry = LogEntry(user_id=_user_id(request), date=date, kind=kind, values=values)
        return await run_in_threadpool(_logs_sync, entry.user_id, entry)

    @app.get("/v1/history")
    async def history(request: Request, days: int = 30):
        if days < 1:
            raise ApiError(422, "invalid_value", f"days must be >= 1, got {days}", "days")
        points = await run_in_threadpool(store.history, _user_id(request), days)
        return {
            "points": [
                {
                    "date": p.date.isoformat(),
                    "probability": p.probability,
                    "level": p.level.value,
                }
                for p in points
            ]
        }

    @app.get("/v1/health")
    async def health():
        return {"status": "ok", "version": __version__, "model_checksum": checksum}

    return app
