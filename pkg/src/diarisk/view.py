"""Chart-ready explanation payload: percentages, directions, colors, ranks.

Each signed contribution S_i becomes the share P_i = |S_i| / sum|S_j| * 100,
so the magnitudes always total 100. Sign is kept separately as a direction
(and as a signed percentage for diverging bars): positive contributions push
risk up and render red, negative ones pull it down and render green.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Any

from .explain import Attribution


class Direction(str, enum.Enum):
    INCREASES = "INCREASES"
    DECREASES = "DECREASES"
    NEUTRAL = "NEUTRAL"


class Color(str, enum.Enum):
    RED = "RED"
    GREEN = "GREEN"
    GRAY = "GRAY"


_DIRECTION_COLOR = {
    Direction.INCREASES: Color.RED,
    Direction.DECREASES: Color.GREEN,
    Direction.NEUTRAL: Color.GRAY,
}


@dataclass(frozen=True)
class FactorView:
    feature_id: str
    abbreviation: str
    shap: float
    percentage: float
    signed_percentage: float
    direction: Direction
    color: Color
    rank: int


@dataclass(frozen=True)
class ExplanationView:
    """Factors in canonical schema order; ``all_zero`` flags the degenerate
    case where every contribution is exactly zero and no shares exist."""

    base_value: float
    margin: float
    factors: tuple[FactorView, ...]
    all_zero: bool = False


def to_percentages(attribution: Attribution) -> ExplanationView:
    """Convert signed contributions into the chart-ready percentage view."""
    schema = attribution.schema
    shap_values = attribution.shap_values
    total = sum(abs(s) for s in shap_values)
    all_zero = total == 0.0

    order = sorted(
        range(len(shap_values)), key=lambda i: (-abs(shap_values[i]), i)
    )
    rank_of = {feature_index: pos + 1 for pos, feature_index in enumerate(order)}

    factors = []
    for i, (spec, s) in enumerate(zip(schema, shap_values)):
        if all_zero or s == 0.0:
            direction = Direction.NEUTRAL
            percentage = 0.0
        else:
            direction = Direction.INCREASES if s > 0 else Direction.DECREASES
            percentage = abs(s) / total * 100.0
        factors.append(
            FactorView(
                feature_id=spec.id,
                abbreviation=spec.abbreviation,
                shap=s,
                percentage=percentage,
                signed_percentage=percentage if s > 0 else -percentage,
                direction=direction,
                color=_DIRECTION_COLOR[direction],
                rank=rank_of[i],
            )
        )

    return ExplanationView(
        base_value=attribution.base_value,
        margin=attribution.margin,
        factors=tuple(factors),
        all_zero=all_zero,
    )


def rank_factors(view: ExplanationView) -> list[FactorView]:
    """Factors ordered by share descending; ties keep canonical order."""
    return sorted(view.factors, key=lambda f: f.rank)


def view_payload(view: ExplanationView) -> dict[str, Any]:
    """The wire payload consumed by chart clients."""
    return {
        "base_value": view.base_value,
        "margin": view.margin,
        "factors": [
            {
                "id": f.feature_id,
                "abbr": f.abbreviation,
                "shap": f.shap,
                "percent": f.percentage,
                "signed_percent": f.signed_percentage,
                "direction": f.direction.value,
                "color": f.color.value,
                "rank": f.rank,
            }
            for f in view.factors
        ],
    }
