"""Per-factor narrative cards and the deterministic template renderer.

Template mode is first-class: it needs no network, emits byte-identical
output for identical inputs, and is grounded by construction, since every
number it prints comes straight from the record, the percentage view, or
the knowledge base.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from ..schema import BINARY, FeatureSpec, PatientRecord
from ..view import Direction, ExplanationView, rank_factors
from .knowledge import KnowledgeBase


def display_percent(percentage: float) -> float:
    """One-decimal display rounding applied at presentation boundaries."""
    return round(percentage, 1)


def format_value(value: float) -> str:
    """Compact numeric display: 24.7 -> '24.7', 150.0 -> '150'."""
    return f"{value:g}"


@dataclass(frozen=True)
class NarrativeCard:
    feature_id: str
    contribution_percent: float
    sentences: tuple[str, ...]
    user_value: float
    unit: str
    ideal_range: str

    @property
    def contribution_display(self) -> str:
        return f"{self.contribution_percent:.1f}%"

    @property
    def value_display(self) -> str:
        text = format_value(self.user_value)
        return f"{text} {self.unit}" if self.unit else text

    def as_dict(self) -> dict[str, Any]:
        return {
            "feature_id": self.feature_id,
            "contribution_percent": self.contribution_percent,
            "sentences": list(self.sentences),
            "user_value": self.user_value,
            "unit": self.unit,
            "ideal_range": self.ideal_range,
        }


# Wording for a value sitting below / within / above its ideal range.
_STATUS_PHRASES = {
    "bmi": (
        "in the underweight range",
        "in the healthy range",
        "in the overweight range",
    ),
    "fasting_glucose": (
        "below the normal range",
        "in the normal range",
        "above the normal range",
    ),
    "systolic_bp": (
        "below the normal range",
        "in the normal range",
        "above the normal range",
    ),
    "physical_activity": (
        "below the recommended amount",
        "meeting the recommended amount",
        "meeting the recommended amount",
    ),
}
_GENERIC_STATUS = ("below the ideal range", "within the ideal range", "above the ideal range")

# Subject phrasing for binary features, keyed by (feature id, value).
_BINARY_SUBJECTS = {
    ("smoking", 1.0): "Your smoking habit",
    ("smoking", 0.0): "Being a non-smoker",
    ("family_history", 1.0): "Your family history of diabetes",
    ("family_history", 0.0): "Having no family history of diabetes",
    ("sex", 1.0): "Your recorded sex",
    ("sex", 0.0): "Your recorded sex",
}


def _status_phrase(spec: FeatureSpec, value: float) -> str | None:
    if spec.ideal_range is None or spec.kind == BINARY:
        return None
    lo, hi = spec.ideal_range
    phrases = _STATUS_PHRASES.get(spec.id, _GENERIC_STATUS)
    if value < lo:
        return phrases[0]
    if value > hi:
        return phrases[2]
    return phrases[1]


def _subject(spec: FeatureSpec, value: float) -> str:
    if spec.kind == BINARY:
        fallback = f"Your {spec.label.lower()} status"
        return _BINARY_SUBJECTS.get((spec.id, value), fallback)
    value_text = format_value(value)
    unit_suffix = f" {spec.unit}" if spec.unit else ""
    subject = f"Your {spec.label} of {value_text}{unit_suffix}"
    status = _status_phrase(spec, value)
    if status is not None:
        subject += f" is {status} and"
    return subject


def render_template_narrative(
    view: ExplanationView, record: PatientRecord, kb: KnowledgeBase
) -> tuple[NarrativeCard, ...]:
    """One two-sentence card per factor, ordered by rank."""
    cards = []
    for factor in rank_factors(view):
        spec = record.schema.by_id(factor.feature_id)
        entry = kb.entry(factor.feature_id)
        value = record.value(factor.feature_id)
        percent = display_percent(factor.percentage)
        subject = _subject(spec, value)

        if factor.direction == Direction.INCREASES:
            first = (
                f"{subject} is raising your estimated diabetes risk, "
                f"contributing {percent:.1f}% of the total influence."
            )
        elif factor.direction == Direction.DECREASES:
            first = (
                f"{subject} is lowering your estimated diabetes risk, "
                f"contributing {percent:.1f}% of the total influence."
            )
        else:
            first = (
                f"{subject} currently has no influence on your estimated "
                f"diabetes risk ({percent:.1f}% of the total influence)."
            )

        cards.append(
            NarrativeCard(
                feature_id=factor.feature_id,
                contribution_percent=percent,
                sentences=(first, entry.definition),
                user_value=value,
                unit=spec.unit,
                ideal_range=entry.ideal_text,
            )
        )
    return tuple(cards)
