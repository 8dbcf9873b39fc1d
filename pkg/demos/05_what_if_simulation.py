"""
What-if simulation over controllable factors
============================================

Applies lifestyle overrides to a record, reports the probability change,
and demonstrates the guard that keeps unchangeable factors out of reach.
"""

from diarisk import (
    PatientRecord,
    SimulationRequest,
    default_schema,
    fit_gbdt,
    simulate,
)
from diarisk.datasets import make_synthetic_dataset
from diarisk.errors import UncontrollableFeature

schema = default_schema()
records, labels = make_synthetic_dataset(n=200, seed=42)
model = fit_gbdt(records, labels)

patient = PatientRecord.from_mapping(
    schema,
    {
        "age": 51, "sex": 1, "bmi": 29.0, "fasting_glucose": 131,
        "systolic_bp": 141, "family_history": 1,
        "physical_activity": 20, "smoking": 1,
    },
)

scenarios = [
    {},
    {"fasting_glucose": 98.0},
    {"fasting_glucose": 98.0, "bmi": 22.5, "physical_activity": 180, "smoking": 0},
]
for overrides in scenarios:
    result = simulate(model, SimulationRequest(patient, overrides))
    label = ", ".join(f"{k}={v:g}" for k, v in overrides.items()) or "(no change)"
    print(
        f"{label:60s} p: {result.before.probability:.3f} -> "
        f"{result.after.probability:.3f}  (delta {result.delta_probability:+.3f}, "
        f"{result.after.level.value})"
    )

try:
    simulate(model, SimulationRequest(patient, {"family_history": 0}))
except UncontrollableFeature as exc:
    print(f"\nrejected as expected: {exc}")
