"""Per-user durable logs and risk history over append-only JSON lines.

Layout: ``<data_dir>/<user_id>/log.jsonl`` holds health-data log entries,
``<data_dir>/<user_id>/history.jsonl`` holds risk points. Files are append
only; replace semantics (same day, same kind / same day) are applied during
replay, so replaying a file always reproduces the in-memory state.
"""

from __future__ import annotations

import datetime as dt
import enum
import json
import re
import threading
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping

from .errors import (
    IncompleteBaseline,
    InvalidValue,
    MalformedDocument,
    UncontrollableInDaily,
    UnknownFeature,
)
from .model import RiskLevel
from .schema import FeatureSchema, PatientRecord

_USER_ID = re.compile(r"^[A-Za-z0-9_-]{1,64}$")


class LogKind(str, enum.Enum):
    DAILY = "DAILY"
    NONDAILY = "NONDAILY"


@dataclass(frozen=True)
class LogEntry:
    user_id: str
    date: dt.date
    kind: LogKind
    values: Mapping[str, float]


@dataclass(frozen=True)
class RiskHistoryPoint:
    user_id: str
    date: dt.date
    probability: float
    level: RiskLevel


class _UserState:
    def __init__(self):
        # (date, kind) -> (sequence, values); sequence orders same-day writes.
        self.entries: dict[tuple[dt.date, LogKind], tuple[int, dict[str, float]]] = {}
        self.history: dict[dt.date, RiskHistoryPoint] = {}
        self.sequence = 0
        self.lock = threading.Lock()


class DataStore:
    """Durable store with single-writer-per-user semantics."""

    def __init__(self, data_dir: str | Path, schema: FeatureSchema):
        self.data_dir = Path(data_dir)
        self.schema = schema
        self._states: dict[str, _UserState] = {}
        self._states_lock = threading.Lock()

    # -- paths and state -----------------------------------------------------

    def _user_dir(self, user_id: str) -> Path:
        if not _USER_ID.match(user_id):
            raise InvalidValue(f"invalid user id {user_id!r}", field="user_id")
        return self.data_dir / user_id

    def _state(self, user_id: str) -> _UserState:
        with self._states_lock:
            state = self._states.get(user_id)
            if state is None:
                state = self._replay(user_id)
                self._states[user_id] = state
            return state

    def _replay(self, user_id: str) -> _UserState:
        state = _UserState()
        log_path = self._user_dir(user_id) / "log.jsonl"
        if log_path.exists():
            for line_no, line in enumerate(log_path.read_text("utf-8").splitlines(), 1):
                if not line.strip():
                    continue
                try:
                    row = json.loads(line)
                    date = dt.date.fromisoformat(row["date"])
                    kind = LogKind(row["kind"])
                    values = {k: float(v) for k, v in row["values"].items()}
                except (KeyError, ValueError, TypeError) as exc:
                    raise MalformedDocument(f"{log_path}:{line_no}: {exc}") from exc
                state.sequence += 1
                state.entries[(date, kind)] = (state.sequence, values)
        history_path = self._user_dir(user_id) / "history.jsonl"
        if history_path.exists():
            for line_no, line in enumerate(
                history_path.read_text("utf-8").splitlines(), 1
            ):
                if not line.strip():
                    continue
                try:
                    row = json.loads(line)
                    point = RiskHistoryPoint(
                        user_id=user_id,
                        date=dt.date.fromisoformat(row["date"]),
                        probability=float(row["probability"]),
                        level=RiskLevel(row["level"]),
                    )
                except (KeyError, ValueError, TypeError) as exc:
                    raise MalformedDocument(f"{history_path}:{line_no}: {exc}") from exc
                state.history[point.date] = point
        return state

    def _append(self, user_id: str, filename: str, row: dict) -> None:
        directory = self._user_dir(user_id)
        directory.mkdir(parents=True, exist_ok=True)
        with (directory / filename).open("a", encoding="utf-8") as handle:
            handle.write(json.dumps(row, sort_keys=True))
            handle.write("\n")

    # -- operations ------------------------------------------------------------

    def put_log(self, entry: LogEntry) -> None:
        """Validate, persist, and apply one log entry (replacing same-day same-kind)."""
        if not entry.values:
            raise InvalidValue("log entry has no values", field="values")
        for feature_id, value in entry.values.items():
            spec = self.schema.by_id(feature_id)  # raises UnknownFeature
            if entry.kind == LogKind.DAILY and not spec.controllable:
                raise UncontrollableInDaily(
                    f"daily entries may only set controllable features, got {feature_id!r}",
                    field=feature_id,
                )
            try:
                spec.check_value(value)
            except Exception as exc:
                raise InvalidValue(str(exc), field=feature_id) from exc

        state = self._state(entry.user_id)
        with state.lock:
            self._append(
                entry.user_id,
                "log.jsonl",
                {
                    "date": entry.date.isoformat(),
                    "kind": entry.kind.value,
                    "values": {k: float(v) for k, v in entry.values.items()},
                },
            )
            state.sequence += 1
            state.entries[(entry.date, entry.kind)] = (
                state.sequence,
                {k: float(v) for k, v in entry.values.items()},
            )

    def current_record(self, user_id: str) -> PatientRecord:
        """Most recent value per feature across all logs (date, then write order)."""
        state = self._state(user_id)
        with state.lock:
            ordered = sorted(
                state.entries.items(), key=lambda item: (item[0][0], item[1][0])
            )
            merged: dict[str, float] = {}
            for (_date, _kind), (_seq, values) in ordered:
                merged.update(values)
        missing = [f.id for f in self.schema if f.id not in merged]
        if missing:
            raise IncompleteBaseline(
                f"no logged values yet for {missing}; complete the initial survey first"
            )
        return PatientRecord.from_mapping(self.schema, merged)

    def has_baseline(self, user_id: str) -> bool:
        try:
            self.current_record(user_id)
            return True
        except IncompleteBaseline:
            return False

    def logged_features(self, user_id: str) -> set[str]:
        """Ids of features covered by at least one log entry."""
        state = self._state(user_id)
        with state.lock:
            covered: set[str] = set()
            for _seq, values in state.entries.values():
                covered.update(values)
        return covered

    def put_history_point(self, point: RiskHistoryPoint) -> None:
        """Persist a risk point; a later point for the same day replaces it."""
        if not 0.0 <= point.probability <= 1.0:
            raise InvalidValue(
                f"probability must be in [0, 1], got {point.probability}",
                field="probability",
            )
        state = self._state(point.user_id)
        with state.lock:
            self._append(
                point.user_id,
                "history.jsonl",
                {
                    "date": point.date.isoformat(),
                    "probability": point.probability,
                    "level": point.level.value,
                },
            )
            state.history[point.date] = point

    def history(self, user_id: str, days: int) -> list[RiskHistoryPoint]:
        """The most recent ``days`` points, ascending by date; gaps stay gaps."""
        if days < 1:
            raise InvalidValue(f"days must be >= 1, got {days}", field="days")
        state = self._state(user_id)
        with state.lock:
            points = sorted(state.history.values(), key=lambda p: p.date)
        return points[-days:]
