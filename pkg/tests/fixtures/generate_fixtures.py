"""Regenerate the committed model fixtures and their golden values.

Run from the repository root:

    python tests/fixtures/generate_fixtures.py

Outputs are deterministic; regeneration should be a no-op unless the
trainer or the synthetic dataset intentionally changed.
"""

from __future__ import annotations

import json
from pathlib import Path

from diarisk import PatientRecord, TrainParams, default_schema, fit_gbdt, predict
from diarisk.datasets import make_synthetic_dataset
from diarisk.model import to_document

HERE = Path(__file__).parent


def make_trained_fixture() -> None:
    """5-tree model trained on the synthetic glucose-rule dataset."""
    schema = default_schema()
    records, labels = make_synthetic_dataset(n=200, seed=7, schema=schema)
    ensemble = fit_gbdt(records, labels, TrainParams(rounds=5))
    (HERE / "gbdt_model.json").write_text(
        json.dumps(to_document(ensemble), indent=2) + "\n", encoding="utf-8"
    )

    golden_rows = [records[i].as_mapping() for i in (0, 13, 57, 111, 199)]
    golden_margins = [
        predict(ensemble, PatientRecord.from_mapping(schema, row)).margin
        for row in golden_rows
    ]
    (HERE / "gbdt_golden.json").write_text(
        json.dumps({"rows": golden_rows, "margins": golden_margins}, indent=2) + "\n",
        encoding="utf-8",
    )


def make_profile_fixture() -> None:
    """Handcrafted model + record where family history dominates (risk up)
    while age pulls risk down; used by explanation and service tests."""
    schema = default_schema()
    idx = {f.id: i for i, f in enumerate(schema)}

    def split(feature_id, threshold, left_value, left_cover, right_value, right_cover):
        return {
            "feature": idx[feature_id],
            "threshold": threshold,
            "cover": left_cover + right_cover,
            "left": {"leaf": left_value, "cover": left_cover},
            "right": {"leaf": right_value, "cover": right_cover},
        }

    document = {
        "version": "1",
        "schema_version": schema.version,
        "base_margin": 0.2,
        "trees": [
            split("family_history", 0.5, -1.2, 50, 1.2, 50),
            split("age", 50.0, -0.5, 60, 0.5, 40),
            split("fasting_glucose", 100.0, -0.3, 50, 0.3, 50),
            split("bmi", 23.0, -0.2, 55, 0.2, 45),
        ],
    }
    (HERE / "profile_model.json").write_text(
        json.dumps(document, indent=2) + "\n", encoding="utf-8"
    )
    record = {
        "age": 34,
        "sex": 1,
        "bmi": 24.7,
        "fasting_glucose": 95,
        "systolic_bp": 118,
        "family_history": 1,
        "physical_activity": 90,
        "smoking": 0,
    }
    (HERE / "profile_record.json").write_text(
        json.dumps(record, indent=2) + "\n", encoding="utf-8"
    )


def make_bad_cover_fixture() -> None:
    """Structurally broken model: parent cover 10 but children sum to 9."""
    schema = default_schema()
    document = {
        "version": "1",
        "schema_version": schema.version,
        "base_margin": 0.0,
        "trees": [
            {
                "feature": 3,
                "threshold": 110.0,
                "cover": 10,
                "left": {"leaf": -1.0, "cover": 4},
                "right": {"leaf": 1.0, "cover": 5},
            }
        ],
    }
    (HERE / "bad_cover_model.json").write_text(
        json.dumps(document, indent=2) + "\n", encoding="utf-8"
    )


if __name__ == "__main__":
    make_trained_fixture()
    make_profile_fixture()
    make_bad_cover_fixture()
    print("fixtures written to", HERE)
