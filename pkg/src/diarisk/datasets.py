"""Synthetic datasets and CSV I/O for desk-scale training runs."""

from __future__ import annotations

import csv
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import MalformedDocument
from .schema import FeatureSchema, PatientRecord, default_schema

GLUCOSE_RULE_THRESHOLD = 110.0


def make_synthetic_dataset(
    n: int = 200, seed: int = 0, schema: FeatureSchema | None = None
) -> tuple[list[PatientRecord], list[int]]:
    """Rows labeled 1 exactly when fasting glucose exceeds 110 mg/dL.

    All other features are label-independent noise; smoking is held constant
    so at least one feature can never be split on.
    """
    schema = schema or default_schema()
    rng = np.random.default_rng(seed)
    glucose_index = schema.index("fasting_glucose")

    records: list[PatientRecord] = []
    labels: list[int] = []
    for _ in range(n):
        values = []
        for spec in schema:
            if spec.id == "age":
                values.append(float(rng.integers(20, 80)))
            elif spec.id == "sex":
                values.append(float(rng.integers(0, 2)))
            elif spec.id == "bmi":
                values.append(round(float(rng.uniform(16.0, 38.0)), 1))
            elif spec.id == "fasting_glucose":
                values.append(round(float(rng.uniform(70.0, 180.0)), 1))
            elif spec.id == "systolic_bp":
                values.append(float(rng.integers(90, 180)))
            elif spec.id == "family_history":
                values.append(float(rng.integers(0, 2)))
            elif spec.id == "physical_activity":
                values.append(float(rng.integers(0, 400)))
            elif spec.id == "smoking":
                values.append(0.0)
            else:
                values.append(float(rng.uniform(spec.minimum, spec.maximum)))
        records.append(PatientRecord(schema=schema, values=tuple(values)))
        labels.append(int(values[glucose_index] > GLUCOSE_RULE_THRESHOLD))
    return records, labels


def write_dataset_csv(
    path: str | Path,
    records: Sequence[PatientRecord],
    labels: Sequence[int] | None = None,
) -> None:
    """Write records (and optional labels) with header = feature ids [+ 'label']."""
    schema = records[0].schema
    header = list(schema.ids) + (["label"] if labels is not None else [])
    with Path(path).open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(header)
        for i, record in enumerate(records):
            row = [_format_cell(v) for v in record.values]
            if labels is not None:
                row.append(str(int(labels[i])))
            writer.writerow(row)


def load_dataset_csv(
    path: str | Path, schema: FeatureSchema | None = None, require_label: bool = True
) -> tuple[list[PatientRecord], list[int]]:
    """Read a dataset CSV; header must be the schema's feature ids (+ 'label')."""
    schema = schema or default_schema()
    expected = list(schema.ids)
    with Path(path).open(newline="", encoding="utf-8") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise MalformedDocument(f"{path}: empty CSV") from None
        has_label = header == expected + ["label"]
        if not has_label and header != expected:
            raise MalformedDocument(
                f"{path}: header must be feature ids"
                + (" plus 'label'" if require_label else "")
                + f", got {header}"
            )
        if require_label and not has_label:
            raise MalformedDocument(f"{path}: missing 'label' column")
        records: list[PatientRecord] = []
        labels: list[int] = []
        for line_no, row in enumerate(reader, start=2):
            if len(row) != len(header):
                raise MalformedDocument(f"{path}:{line_no}: wrong column count")
            try:
                values = tuple(float(cell) for cell in row[: len(expected)])
            except ValueError as exc:
                raise MalformedDocument(f"{path}:{line_no}: {exc}") from None
            records.append(PatientRecord(schema=schema, values=values))
            if has_label:
                labels.append(int(float(row[-1])))
    return records, labels


def _format_cell(value: float) -> str:
    return f"{value:g}"
