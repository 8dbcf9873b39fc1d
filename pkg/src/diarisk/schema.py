"""Risk-factor catalog: feature definitions, bounds, and patient records.

The schema is the single source of truth for feature order. Models, records,
attributions, and chart payloads all index features by their position here.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping

from .errors import MissingFeature, OutOfBounds, UnknownFeature

CONTINUOUS = "continuous"
BINARY = "binary"


@dataclass(frozen=True)
class FeatureSpec:
    """One risk factor: identity, display strings, domain, and controllability.

    ``ideal_range`` is expressed in feature units and must sit inside
    ``[minimum, maximum]``. Binary features always have the {0, 1} domain.
    """

    id: str
    label: str
    abbreviation: str
    kind: str
    unit: str
    minimum: float
    maximum: float
    controllable: bool
    definition: str
    ideal_range: tuple[float, float] | None = None

    def __post_init__(self):
        if self.kind not in (CONTINUOUS, BINARY):
            raise ValueError(f"unknown feature kind {self.kind!r}")
        if len(self.abbreviation) > 4 or not self.abbreviation:
            raise ValueError(f"abbreviation {self.abbreviation!r} must be 1-4 chars")
        if self.kind == BINARY and (self.minimum, self.maximum) != (0.0, 1.0):
            raise ValueError(f"binary feature {self.id!r} must have domain {{0, 1}}")
        if not self.minimum < self.maximum:
            raise ValueError(f"feature {self.id!r}: min must be < max")
        if self.ideal_range is not None:
            lo, hi = self.ideal_range
            if not (self.minimum <= lo <= hi <= self.maximum):
                raise ValueError(f"feature {self.id!r}: ideal_range outside bounds")

    def check_value(self, value: float) -> float:
        """Validate ``value`` against this feature's domain; returns it as float."""
        value = float(value)
        if self.kind == BINARY:
            if value not in (0.0, 1.0):
                raise OutOfBounds(
                    f"{self.id} must be 0 or 1, got {value}", field=self.id
                )
            return value
        if not (self.minimum <= value <= self.maximum):
            raise OutOfBounds(
                f"{self.id} must be within [{self.minimum}, {self.maximum}], got {value}",
                field=self.id,
            )
        return value


@dataclass(frozen=True)
class FeatureSchema:
    """Ordered, versioned collection of features.

    Order is canonical: it defines feature indices used by models and the
    tie-break order for ranking factors.
    """

    features: tuple[FeatureSpec, ...]
    version: str

    def __post_init__(self):
        ids = [f.id for f in self.features]
        if len(set(ids)) != len(ids):
            raise ValueError("feature ids must be unique")
        abbrs = [f.abbreviation for f in self.features]
        if len(set(abbrs)) != len(abbrs):
            raise ValueError("feature abbreviations must be unique")

    def __len__(self) -> int:
        return len(self.features)

    def __iter__(self) -> Iterator[FeatureSpec]:
        return iter(self.features)

    @property
    def ids(self) -> tuple[str, ...]:
        return tuple(f.id for f in self.features)

    def by_id(self, feature_id: str) -> FeatureSpec:
        for spec in self.features:
            if spec.id == feature_id:
                return spec
        raise UnknownFeature(f"unknown feature {feature_id!r}", field=feature_id)

    def index(self, feature_id: str) -> int:
        for i, spec in enumerate(self.features):
            if spec.id == feature_id:
                return i
        raise UnknownFeature(f"unknown feature {feature_id!r}", field=feature_id)


@dataclass(frozen=True)
class PatientRecord:
    """One complete set of feature values, in canonical schema order."""

    schema: FeatureSchema
    values: tuple[float, ...]

    def __post_init__(self):
        if len(self.values) != len(self.schema):
            raise MissingFeature(
                f"record has {len(self.values)} values, schema expects {len(self.schema)}"
            )
        for spec, value in zip(self.schema, self.values):
            spec.check_value(value)

    @classmethod
    def from_mapping(
        cls, schema: FeatureSchema, mapping: Mapping[str, float]
    ) -> "PatientRecord":
        known = set(schema.ids)
        for key in mapping:
            if key not in known:
                raise UnknownFeature(f"unknown feature {key!r}", field=key)
        values = []
        for spec in schema:
            if spec.id not in mapping:
                raise MissingFeature(f"missing value for {spec.id!r}", field=spec.id)
            values.append(float(mapping[spec.id]))
        return cls(schema=schema, values=tuple(values))

    def value(self, feature_id: str) -> float:
        return self.values[self.schema.index(feature_id)]

    def as_mapping(self) -> dict[str, float]:
        return {spec.id: v for spec, v in zip(self.schema, self.values)}

    def with_overrides(self, overrides: Mapping[str, float]) -> "PatientRecord":
        """New record with ``overrides`` applied; bounds re-validated."""
        merged = self.as_mapping()
        for key, value in overrides.items():
            if key not in merged:
                raise UnknownFeature(f"unknown feature {key!r}", field=key)
            merged[key] = float(value)
        return PatientRecord.from_mapping(self.schema, merged)


SCHEMA_VERSION = "1"


def default_schema() -> FeatureSchema:
    """The canonical eight-factor catalog used by the shipped models."""
    return FeatureSchema(
        version=SCHEMA_VERSION,
        features=(
            FeatureSpec(
                id="age",
                label="Age",
                abbreviation="AGE",
                kind=CONTINUOUS,
                unit="years",
                minimum=18.0,
                maximum=100.0,
                controllable=False,
                definition=(
                    "Age in years; the chance of developing type 2 diabetes "
                    "grows as people get older."
                ),
            ),
            FeatureSpec(
                id="sex",
                label="Sex",
                abbreviation="SEX",
                kind=BINARY,
                unit="",
                minimum=0.0,
                maximum=1.0,
                controllable=False,
                definition=(
                    "Biological sex recorded as 0 for female and 1 for male; "
                    "it shifts baseline diabetes risk slightly."
                ),
            ),
            FeatureSpec(
                id="bmi",
                label="Body Mass Index",
                abbreviation="BMI",
                kind=CONTINUOUS,
                unit="kg/m²",
                minimum=10.0,
                maximum=60.0,
                controllable=True,
                ideal_range=(18.5, 22.9),
                definition=(
                    "Body Mass Index (BMI) relates weight to height and is a "
                    "standard screen for excess body fat."
                ),
            ),
            FeatureSpec(
                id="fasting_glucose",
                label="Fasting Glucose",
                abbreviation="GLU",
                kind=CONTINUOUS,
                unit="mg/dL",
                minimum=50.0,
                maximum=300.0,
                controllable=True,
                ideal_range=(70.0, 99.0),
                definition=(
                    "Fasting blood glucose is the sugar level measured after an "
                    "overnight fast; 70–99 mg/dL counts as normal."
                ),
            ),
            FeatureSpec(
                id="systolic_bp",
                label="Systolic Blood Pressure",
                abbreviation="BP",
                kind=CONTINUOUS,
                unit="mmHg",
                minimum=70.0,
                maximum=220.0,
                controllable=True,
                ideal_range=(90.0, 119.0),
                definition=(
                    "Systolic blood pressure is the pressure in the arteries "
                    "while the heart beats; 90–119 mmHg counts as normal."
                ),
            ),
            FeatureSpec(
                id="family_history",
                label="Family History",
                abbreviation="FAM",
                kind=BINARY,
                unit="",
                minimum=0.0,
                maximum=1.0,
                controllable=False,
                definition=(
                    "Whether a parent or sibling has diabetes; heredity is a "
                    "strong, unchangeable risk factor."
                ),
            ),
            FeatureSpec(
                id="physical_activity",
                label="Physical Activity",
                abbreviation="ACT",
                kind=CONTINUOUS,
                unit="min/week",
                minimum=0.0,
                maximum=1000.0,
                controllable=True,
                ideal_range=(150.0, 1000.0),
                definition=(
                    "Minutes of moderate exercise per week; 150 minutes or more "
                    "is the widely recommended target."
                ),
            ),
            FeatureSpec(
                id="smoking",
                label="Smoking",
                abbreviation="SMK",
                kind=BINARY,
                unit="",
                minimum=0.0,
                maximum=1.0,
                controllable=True,
                ideal_range=(0.0, 0.0),
                definition=(
                    "Current smoking status recorded as 0 for non-smoker and 1 "
                    "for smoker; smoking worsens insulin response."
                ),
            ),
        ),
    )
