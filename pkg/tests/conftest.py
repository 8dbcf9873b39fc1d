import json
from pathlib import Path

import pytest

from diarisk import PatientRecord, default_schema, load_model
from diarisk.explain import Attribution
from diarisk.view import to_percentages

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def schema():
    return default_schema()


@pytest.fixture(scope="session")
def fixtures_dir():
    return FIXTURES


@pytest.fixture(scope="session")
def trained_ensemble(schema):
    return load_model(FIXTURES / "gbdt_model.json", schema)


@pytest.fixture(scope="session")
def golden():
    return json.loads((FIXTURES / "gbdt_golden.json").read_text())


@pytest.fixture(scope="session")
def profile_ensemble(schema):
    return load_model(FIXTURES / "profile_model.json", schema)


@pytest.fixture(scope="session")
def profile_record(schema):
    mapping = json.loads((FIXTURES / "profile_record.json").read_text())
    return PatientRecord.from_mapping(schema, mapping)


@pytest.fixture(scope="session")
def synth_data():
    from diarisk.datasets import make_synthetic_dataset

    return make_synthetic_dataset(n=200, seed=42)


# The worked example behind several "card shows 17.0% for BMI 24.7" checks:
# a record with BMI 24.7 and an attribution whose BMI share of sum|S| is 0.17.
FIG_SHAP = {
    "age": -0.12,
    "sex": 0.0,
    "bmi": 0.17,
    "fasting_glucose": 0.28,
    "systolic_bp": 0.13,
    "family_history": 0.20,
    "physical_activity": -0.06,
    "smoking": -0.04,
}


@pytest.fixture(scope="session")
def fig_record(schema):
    return PatientRecord.from_mapping(
        schema,
        {
            "age": 54,
            "sex": 1,
            "bmi": 24.7,
            "fasting_glucose": 112,
            "systolic_bp": 128,
            "family_history": 1,
            "physical_activity": 60,
            "smoking": 0,
        },
    )


@pytest.fixture(scope="session")
def fig_attribution(schema):
    return Attribution(
        schema=schema,
        base_value=-0.3,
        shap_values=tuple(FIG_SHAP[spec.id] for spec in schema),
    )


@pytest.fixture(scope="session")
def fig_view(fig_attribution):
    return to_percentages(fig_attribution)
