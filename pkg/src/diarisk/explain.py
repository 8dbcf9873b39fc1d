"""Exact per-feature attribution for tree ensembles.

For each tree the algorithm walks every root-to-leaf path once while
maintaining the set of distinct features encountered so far together with,
per feature, the fraction of cover flowing down when the feature is absent
from a coalition (``zero fraction``) and the 0/1 indicator of the record's
own branch (``one fraction``). Path weights are the Shapley permutation
weights aggregated over all coalition sizes; extending and unwinding the
path updates them incrementally, so the per-tree cost is polynomial in
depth rather than exponential in the number of features.

The attribution anchor (base value) is the cover-weighted mean leaf value
of each tree plus the model's base margin, i.e. the expected output with no
features conditioned on. Local accuracy holds by construction: base value
plus all per-feature contributions equals the prediction margin.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import SchemaMismatch
from .model import TreeEnsemble, TreeNode
from .schema import FeatureSchema, PatientRecord

# Path entries are [feature, zero_fraction, one_fraction, weight].
_FEATURE = 0
_ZERO = 1
_ONE = 2
_WEIGHT = 3


@dataclass(frozen=True)
class Attribution:
    """Signed per-feature contributions in margin units, plus the anchor."""

    schema: FeatureSchema
    base_value: float
    shap_values: tuple[float, ...]

    @property
    def margin(self) -> float:
        return self.base_value + sum(self.shap_values)


def expected_tree_value(node: TreeNode) -> float:
    """Cover-weighted mean of a tree's leaves."""
    if node.is_leaf:
        return node.value
    total = node.left.cover + node.right.cover
    return (
        node.left.cover * expected_tree_value(node.left)
        + node.right.cover * expected_tree_value(node.right)
    ) / total


def _extend(path: list[list], zero_fraction: float, one_fraction: float, feature: int) -> None:
    length = len(path)
    path.append([feature, zero_fraction, one_fraction, 1.0 if length == 0 else 0.0])
    for i in range(length - 1, -1, -1):
        path[i + 1][_WEIGHT] += one_fraction * path[i][_WEIGHT] * (i + 1) / (length + 1)
        path[i][_WEIGHT] = zero_fraction * path[i][_WEIGHT] * (length - i) / (length + 1)


def _unwind(path: list[list], index: int) -> None:
    last = len(path) - 1
    one_fraction = path[index][_ONE]
    zero_fraction = path[index][_ZERO]
    carry = path[last][_WEIGHT]
    if one_fraction != 0.0:
        for j in range(last - 1, -1, -1):
            kept = path[j][_WEIGHT]
            path[j][_WEIGHT] = carry * (last + 1) / ((j + 1) * one_fraction)
            carry = kept - path[j][_WEIGHT] * zero_fraction * (last - j) / (last + 1)
    else:
        for j in range(last - 1, -1, -1):
            path[j][_WEIGHT] = path[j][_WEIGHT] * (last + 1) / (zero_fraction * (last - j))
    for j in range(index, last):
        path[j][_FEATURE] = path[j + 1][_FEATURE]
        path[j][_ZERO] = path[j + 1][_ZERO]
        path[j][_ONE] = path[j + 1][_ONE]
    path.pop()


def _unwound_weight_sum(path: list[list], index: int) -> float:
    """Total path weight after hypothetically unwinding entry ``index``."""
    last = len(path) - 1
    one_fraction = path[index][_ONE]
    zero_fraction = path[index][_ZERO]
    carry = path[last][_WEIGHT]
    total = 0.0
    if one_fraction != 0.0:
        for j in range(last - 1, -1, -1):
            piece = carry / ((j + 1) * one_fraction)
            total += piece
            carry = path[j][_WEIGHT] - piece * zero_fraction * (last - j)
    else:
        for j in range(last - 1, -1, -1):
            total += path[j][_WEIGHT] / (zero_fraction * (last - j))
    return total * (last + 1)


def _recurse(
    node: TreeNode,
    path: list[list],
    zero_fraction: float,
    one_fraction: float,
    feature: int,
    values: tuple[float, ...],
    phi: list[float],
) -> None:
    path = [entry[:] for entry in path]
    _extend(path, zero_fraction, one_fraction, feature)

    if node.is_leaf:
        for i in range(1, len(path)):
            weight = _unwound_weight_sum(path, i)
            phi[path[i][_FEATURE]] += weight * (path[i][_ONE] - path[i][_ZERO]) * node.value
        return

    if values[node.feature] <= node.threshold:
        hot, cold = node.left, node.right
    else:
        hot, cold = node.right, node.left

    incoming_zero = 1.0
    incoming_one = 1.0
    for k in range(1, len(path)):
        if path[k][_FEATURE] == node.feature:
            incoming_zero = path[k][_ZERO]
            incoming_one = path[k][_ONE]
            _unwind(path, k)
            break

    _recurse(
        hot, path, incoming_zero * hot.cover / node.cover, incoming_one,
        node.feature, values, phi,
    )
    _recurse(
        cold, path, incoming_zero * cold.cover / node.cover, 0.0,
        node.feature, values, phi,
    )


def tree_shap(ensemble: TreeEnsemble, record: PatientRecord) -> Attribution:
    """Exact path-dependent attribution of one prediction to each feature."""
    if record.schema.version != ensemble.schema_version:
        raise SchemaMismatch(
            f"record schema {record.schema.version!r} does not match "
            f"model schema {ensemble.schema_version!r}"
        )
    phi = [0.0] * len(record.schema)
    base_value = ensemble.base_margin
    for tree in ensemble.trees:
        base_value += expected_tree_value(tree)
        if not tree.is_leaf:
            _recurse(tree, [], 1.0, 1.0, -1, record.values, phi)
    return Attribution(
        schema=record.schema, base_value=base_value, shap_values=tuple(phi)
    )
