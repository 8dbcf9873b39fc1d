"""What-if engine: apply lifestyle overrides and report the risk change.

Only controllable features may be overridden; the base record is never
mutated and nothing here touches persistence.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .errors import UncontrollableFeature
from .explain import tree_shap
from .model import RiskEstimate, TreeEnsemble, predict
from .schema import PatientRecord
from .view import ExplanationView, to_percentages


@dataclass(frozen=True)
class SimulationRequest:
    base_record: PatientRecord
    overrides: Mapping[str, float]


@dataclass(frozen=True)
class SimulationResult:
    before: RiskEstimate
    after: RiskEstimate
    delta_probability: float
    after_view: ExplanationView


def simulate(ensemble: TreeEnsemble, request: SimulationRequest) -> SimulationResult:
    """Recompute risk and explanation with overrides applied.

    Raises UnknownFeature / UncontrollableFeature / OutOfBounds before any
    prediction happens, so a rejected request has no partial effect.
    """
    schema = request.base_record.schema
    for feature_id in request.overrides:
        spec = schema.by_id(feature_id)
        if not spec.controllable:
            raise UncontrollableFeature(
                f"{feature_id} is not a lifestyle-controllable feature",
                field=feature_id,
            )
    after_record = request.base_record.with_overrides(request.overrides)

    before = predict(ensemble, request.base_record)
    after = predict(ensemble, after_record)
    after_view = to_percentages(tree_shap(ensemble, after_record))
    return SimulationResult(
        before=before,
        after=after,
        delta_probability=after.probability - before.probability,
        after_view=after_view,
    )
