"""
Durable logging and the 30-day risk trend
=========================================

Walks the persistence layer directly: an initial survey, daily lifestyle
logs, the merged "current" record, and the gap-preserving history query.
Everything lands in append-only JSON-lines files you can inspect.
"""

import datetime as dt
import tempfile
from pathlib import Path

from diarisk import (
    DataStore,
    LogEntry,
    LogKind,
    RiskHistoryPoint,
    default_schema,
    fit_gbdt,
    predict,
)
from diarisk.datasets import make_synthetic_dataset

schema = default_schema()
records, labels = make_synthetic_dataset(n=200, seed=42)
model = fit_gbdt(records, labels)

data_dir = Path(tempfile.mkdtemp(prefix="diarisk-demo-"))
store = DataStore(data_dir, schema)
user = "demo"
day0 = dt.date(2026, 7, 1)

survey = {
    "age": 51, "sex": 1, "bmi": 29.0, "fasting_glucose": 131,
    "systolic_bp": 141, "family_history": 1, "physical_activity": 20, "smoking": 1,
}
store.put_log(LogEntry(user, day0, LogKind.NONDAILY, survey))

# Two weeks of sporadic daily logging: glucose drifting down, two gap days.
for offset, glucose in ((1, 128), (2, 124), (4, 118), (5, 116), (8, 108), (13, 102)):
    date = day0 + dt.timedelta(days=offset)
    store.put_log(LogEntry(user, date, LogKind.DAILY, {"fasting_glucose": glucose}))
    estimate = predict(model, store.current_record(user))
    store.put_history_point(
        RiskHistoryPoint(user, date, estimate.probability, estimate.level)
    )

current = store.current_record(user)
print(f"current merged glucose: {current.value('fasting_glucose')} mg/dL")

print("\n30-day trend (gaps stay gaps):")
for point in store.history(user, 30):
    bar = "#" * int(point.probability * 40)
    print(f"  {point.date}  {point.probability:.3f} {point.level.value:6s} {bar}")

log_file = data_dir / user / "log.jsonl"
print(f"\nappend-only log at {log_file}:")
print(log_file.read_text().strip()[:300], "...")

# Replaying the files reproduces the state exactly.
reopened = DataStore(data_dir, schema)
assert reopened.current_record(user) == current
print("replay after reopen reproduces the same current record")
