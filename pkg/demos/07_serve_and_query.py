"""
The HTTP service, end to end in one process
===========================================

Builds the FastAPI app around a trained model and drives every endpoint
with an in-process client - the same flow the web client uses. To serve
for real: ``diarisk serve -m model.json --port 8000``.
"""

import tempfile

from starlette.testclient import TestClient

from diarisk import DataStore, default_schema, fit_gbdt
from diarisk.api import create_app
from diarisk.datasets import make_synthetic_dataset

schema = default_schema()
records, labels = make_synthetic_dataset(n=200, seed=42)
model = fit_gbdt(records, labels)
store = DataStore(tempfile.mkdtemp(prefix="diarisk-api-"), schema)
client = TestClient(create_app(model, schema, store))

patient = {
    "age": 51, "sex": 1, "bmi": 29.0, "fasting_glucose": 131,
    "systolic_bp": 141, "family_history": 1, "physical_activity": 20, "smoking": 1,
}

print("GET /v1/health ->", client.get("/v1/health").json())

estimate = client.post("/v1/estimate", json=patient).json()
print(f"POST /v1/estimate -> p={estimate['probability']:.3f} ({estimate['level']})")

explain = client.post(
    "/v1/explain",
    json={"record": patient, "options": {"narrative_mode": "template"}},
).json()
top = min(explain["view"]["factors"], key=lambda f: f["rank"])
print(
    f"POST /v1/explain -> top factor {top['abbr']} at {top['percent']:.1f}% "
    f"({top['color']}), {len(explain['cards'])} cards, "
    f"mode {explain['narrative_mode_used']}"
)

survey = client.post(
    "/v1/logs", json={"kind": "NONDAILY", "values": patient},
    headers={"X-User": "demo"},
).json()
print("POST /v1/logs (survey) ->", survey["point"])

daily = client.post(
    "/v1/logs", json={"kind": "DAILY", "values": {"fasting_glucose": 104}},
    headers={"X-User": "demo"},
).json()
print("POST /v1/logs (daily)  ->", daily["point"])

simulate = client.post(
    "/v1/simulate",
    json={"base_record": patient, "overrides": {"fasting_glucose": 95, "smoking": 0}},
).json()
print(f"POST /v1/simulate -> delta {simulate['delta_probability']:+.3f}")

history = client.get("/v1/history?days=30", headers={"X-User": "demo"}).json()
print(f"GET /v1/history -> {len(history['points'])} point(s)")

rejected = client.post(
    "/v1/simulate", json={"base_record": patient, "overrides": {"age": 25}}
)
print(f"guard: overriding age -> {rejected.status_code} {rejected.json()['code']}")
