"""Static grounding facts per feature: definitions, ideal ranges, importance.

The knowledge base is what keeps generated text honest: every definition,
ideal range, and global importance figure a narrative may cite lives here.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from ..errors import SchemaMismatch
from ..explain import tree_shap
from ..model import TreeEnsemble
from ..schema import BINARY, FeatureSchema, FeatureSpec, PatientRecord


@dataclass(frozen=True)
class KnowledgeEntry:
    definition: str
    ideal_text: str
    unit: str
    global_importance: float  # percent share of mean absolute attribution


@dataclass(frozen=True)
class KnowledgeBase:
    entries: Mapping[str, KnowledgeEntry]

    @property
    def is_empty(self) -> bool:
        return not self.entries

    def entry(self, feature_id: str) -> KnowledgeEntry:
        try:
            return self.entries[feature_id]
        except KeyError:
            raise SchemaMismatch(
                f"knowledge base has no entry for {feature_id!r}", field=feature_id
            ) from None

    def validate(self, schema: FeatureSchema) -> None:
        """Coverage and importance-total invariants; raises ValueError."""
        missing = [f.id for f in schema if f.id not in self.entries]
        if missing:
            raise ValueError(f"knowledge base missing features {missing}")
        total = sum(e.global_importance for e in self.entries.values())
        if abs(total - 100.0) > 0.1:
            raise ValueError(f"global importance must total 100, got {total}")


def ideal_range_text(spec: FeatureSpec) -> str:
    """Human-readable ideal range, e.g. '18.5–22.9 kg/m²' or 'at least 150 min/week'."""
    if spec.ideal_range is None:
        return "n/a"
    lo, hi = spec.ideal_range
    if spec.kind == BINARY:
        if (lo, hi) == (0.0, 0.0):
            return "0 (no)"
        if (lo, hi) == (1.0, 1.0):
            return "1 (yes)"
        return "0 or 1"
    unit_suffix = f" {spec.unit}" if spec.unit else ""
    if hi >= spec.maximum:
        return f"at least {lo:g}{unit_suffix}"
    if lo <= spec.minimum:
        return f"at most {hi:g}{unit_suffix}"
    return f"{lo:g}–{hi:g}{unit_suffix}"


def build_knowledge_base(
    schema: FeatureSchema,
    ensemble: TreeEnsemble | None = None,
    reference_records: Sequence[PatientRecord] = (),
) -> KnowledgeBase:
    """Knowledge base with global importance from mean |attribution| shares.

    Without a model or reference records the importance falls back to a
    uniform split, which still satisfies the total-100 invariant.
    """
    n = len(schema)
    if ensemble is not None and reference_records:
        totals = [0.0] * n
        for record in reference_records:
            attribution = tree_shap(ensemble, record)
            for i, s in enumerate(attribution.shap_values):
                totals[i] += abs(s)
        grand = sum(totals)
        if grand > 0:
            shares = [t / grand * 100.0 for t in totals]
        else:
            shares = [100.0 / n] * n
    else:
        shares = [100.0 / n] * n

    entries = {
        spec.id: KnowledgeEntry(
            definition=spec.definition,
            ideal_text=ideal_range_text(spec),
            unit=spec.unit,
            global_importance=share,
        )
        for spec, share in zip(schema, shares)
    }
    return KnowledgeBase(entries=entries)
