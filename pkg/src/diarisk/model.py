"""Boosted-tree risk model: structure, persistence, and prediction.

Trees are binary with a split convention of ``value <= threshold`` routing
left. Every node carries a ``cover`` (training row weight); internal covers
must equal the sum of their children's, which is what makes cover-weighted
conditional expectations well-defined downstream.
"""

from __future__ import annotations

import enum
import hashlib
import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from .errors import (
    CoverMismatch,
    FeatureIndexOutOfRange,
    MalformedDocument,
    OutOfRange,
    SchemaMismatch,
)
from .schema import FeatureSchema, PatientRecord, default_schema

MODEL_FORMAT_VERSION = "1"

LOW_THRESHOLD = 0.35
HIGH_THRESHOLD = 0.65

# Internal covers are row counts; allow only float noise when checking sums.
_COVER_TOLERANCE = 1e-6


@dataclass(frozen=True)
class TreeNode:
    """A split node or a leaf. Leaves have ``value``; splits have the rest."""

    cover: float
    feature: int | None = None
    threshold: float | None = None
    left: "TreeNode | None" = None
    right: "TreeNode | None" = None
    value: float | None = None

    @property
    def is_leaf(self) -> bool:
        return self.value is not None

    @classmethod
    def leaf(cls, value: float, cover: float) -> "TreeNode":
        return cls(cover=float(cover), value=float(value))

    @classmethod
    def split(
        cls,
        feature: int,
        threshold: float,
        left: "TreeNode",
        right: "TreeNode",
        cover: float,
    ) -> "TreeNode":
        return cls(
            cover=float(cover),
            feature=int(feature),
            threshold=float(threshold),
            left=left,
            right=right,
        )


@dataclass(frozen=True)
class TreeEnsemble:
    """Additive tree model in margin (log-odds) space.

    Leaf values already include any learning-rate shrinkage; prediction is
    ``base_margin`` plus the sum of one leaf per tree.
    """

    trees: tuple[TreeNode, ...]
    base_margin: float
    schema_version: str
    version: str = MODEL_FORMAT_VERSION


class RiskLevel(str, enum.Enum):
    LOW = "LOW"
    MEDIUM = "MEDIUM"
    HIGH = "HIGH"


@dataclass(frozen=True)
class RiskEstimate:
    margin: float
    probability: float
    level: RiskLevel


def logistic(margin: float) -> float:
    """Numerically stable logistic transform."""
    if margin >= 0:
        return 1.0 / (1.0 + math.exp(-margin))
    e = math.exp(margin)
    return e / (1.0 + e)


def risk_level(probability: float) -> RiskLevel:
    """Map a probability to LOW (< 0.35), MEDIUM (0.35–0.65), or HIGH (> 0.65)."""
    if not 0.0 <= probability <= 1.0:
        raise OutOfRange(f"probability must be in [0, 1], got {probability}")
    if probability < LOW_THRESHOLD:
        return RiskLevel.LOW
    if probability > HIGH_THRESHOLD:
        return RiskLevel.HIGH
    return RiskLevel.MEDIUM


def _leaf_for(node: TreeNode, values: tuple[float, ...]) -> float:
    while not node.is_leaf:
        if values[node.feature] <= node.threshold:
            node = node.left
        else:
            node = node.right
    return node.value


def predict(ensemble: TreeEnsemble, record: PatientRecord) -> RiskEstimate:
    """Risk margin, probability, and level for one record."""
    if record.schema.version != ensemble.schema_version:
        raise SchemaMismatch(
            f"record schema {record.schema.version!r} does not match "
            f"model schema {ensemble.schema_version!r}"
        )
    margin = ensemble.base_margin
    for tree in ensemble.trees:
        margin += _leaf_for(tree, record.values)
    probability = logistic(margin)
    return RiskEstimate(margin=margin, probability=probability, level=risk_level(probability))


# --- persistence -----------------------------------------------------------


def _node_to_document(node: TreeNode) -> dict[str, Any]:
    if node.is_leaf:
        return {"leaf": node.value, "cover": node.cover}
    return {
        "feature": node.feature,
        "threshold": node.threshold,
        "cover": node.cover,
        "left": _node_to_document(node.left),
        "right": _node_to_document(node.right),
    }


def to_document(ensemble: TreeEnsemble) -> dict[str, Any]:
    return {
        "version": ensemble.version,
        "schema_version": ensemble.schema_version,
        "base_margin": ensemble.base_margin,
        "trees": [_node_to_document(t) for t in ensemble.trees],
    }


def _require_number(obj: dict, key: str, path: str) -> float:
    value = obj.get(key)
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise MalformedDocument(f"{path}.{key} must be a number")
    if not math.isfinite(value):
        raise MalformedDocument(f"{path}.{key} must be finite")
    return float(value)


def _node_from_document(obj: Any, n_features: int, path: str) -> TreeNode:
    if not isinstance(obj, dict):
        raise MalformedDocument(f"{path} must be an object")
    if "leaf" in obj:
        if set(obj) != {"leaf", "cover"}:
            raise MalformedDocument(f"{path} leaf must have exactly 'leaf' and 'cover'")
        value = _require_number(obj, "leaf", path)
        cover = _require_number(obj, "cover", path)
        if cover <= 0:
            raise MalformedDocument(f"{path}.cover must be positive")
        return TreeNode.leaf(value, cover)
    required = {"feature", "threshold", "cover", "left", "right"}
    if set(obj) != required:
        raise MalformedDocument(f"{path} split must have exactly {sorted(required)}")
    feature = obj["feature"]
    if isinstance(feature, bool) or not isinstance(feature, int):
        raise MalformedDocument(f"{path}.feature must be an integer")
    if not 0 <= feature < n_features:
        raise FeatureIndexOutOfRange(
            f"{path}.feature {feature} outside schema of {n_features} features"
        )
    threshold = _require_number(obj, "threshold", path)
    cover = _require_number(obj, "cover", path)
    if cover <= 0:
        raise MalformedDocument(f"{path}.cover must be positive")
    left = _node_from_document(obj["left"], n_features, path + ".left")
    right = _node_from_document(obj["right"], n_features, path + ".right")
    if abs(cover - (left.cover + right.cover)) > _COVER_TOLERANCE:
        raise CoverMismatch(
            f"{path}: cover {cover} != children sum {left.cover + right.cover}"
        )
    return TreeNode.split(feature, threshold, left, right, cover)


def from_document(document: Any, schema: FeatureSchema | None = None) -> TreeEnsemble:
    """Build a validated ensemble from a parsed model document.

    When ``schema`` is omitted the document must reference the canonical
    schema version; otherwise the declared version must match.
    """
    if not isinstance(document, dict):
        raise MalformedDocument("model document must be a JSON object")
    for key in ("version", "schema_version", "base_margin", "trees"):
        if key not in document:
            raise MalformedDocument(f"model document missing {key!r}")
    if schema is None:
        schema = default_schema()
    if document["schema_version"] != schema.version:
        raise SchemaMismatch(
            f"model schema_version {document['schema_version']!r} does not "
            f"match schema {schema.version!r}"
        )
    base_margin = _require_number(document, "base_margin", "$")
    trees_doc = document["trees"]
    if not isinstance(trees_doc, list):
        raise MalformedDocument("$.trees must be a list")
    trees = tuple(
        _node_from_document(t, len(schema), f"$.trees[{i}]")
        for i, t in enumerate(trees_doc)
    )
    return TreeEnsemble(
        trees=trees,
        base_margin=base_margin,
        schema_version=str(document["schema_version"]),
        version=str(document["version"]),
    )


def loads_model(data: bytes | str, schema: FeatureSchema | None = None) -> TreeEnsemble:
    try:
        document = json.loads(data)
    except json.JSONDecodeError as exc:
        raise MalformedDocument(f"model file is not valid JSON: {exc}") from exc
    return from_document(document, schema)


def load_model(path: str | Path, schema: FeatureSchema | None = None) -> TreeEnsemble:
    return loads_model(Path(path).read_bytes(), schema)


def dumps_model(ensemble: TreeEnsemble) -> str:
    return json.dumps(to_document(ensemble), indent=2)


def save_model(ensemble: TreeEnsemble, path: str | Path) -> None:
    Path(path).write_text(dumps_model(ensemble) + "\n", encoding="utf-8")


def model_checksum(ensemble: TreeEnsemble) -> str:
    """Stable sha256 over the canonical document, for health reporting."""
    canonical = json.dumps(to_document(ensemble), sort_keys=True, separators=(",", ":"))
    return "sha256:" + hashlib.sha256(canonical.encode("utf-8")).hexdigest()
