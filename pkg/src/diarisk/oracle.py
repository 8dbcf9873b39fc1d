"""Exhaustive Shapley attribution by subset enumeration.

This is the verification oracle for the fast path-walking algorithm in
``explain``: it evaluates the coalition value v(S) for every one of the 2^n
feature subsets directly from its definition, then applies the Shapley
weighting formula

    phi_i = sum over S not containing i of
            |S|! (n - |S| - 1)! / n!  *  (v(S + {i}) - v(S))

v(S) traverses each tree: at a node whose split feature is in S it follows
the record's branch; otherwise it blends both children weighted by their
cover fractions. Subsets are encoded as bitmasks over canonical feature
indices and all 2^n values are carried as one vector through a single
recursive pass per tree, which keeps the oracle exact while making the
enumeration affordable for n up to 12.
"""

from __future__ import annotations

from math import factorial

import numpy as np

from .errors import SchemaMismatch, TooManyFeatures
from .explain import Attribution
from .model import TreeEnsemble, TreeNode
from .schema import PatientRecord

MAX_FEATURES = 12


def _subset_values(
    node: TreeNode, values: tuple[float, ...], bit_set: list[np.ndarray], size: int
) -> np.ndarray:
    """v(S) for every subset S, as a vector indexed by bitmask."""
    if node.is_leaf:
        return np.full(size, node.value)
    left = _subset_values(node.left, values, bit_set, size)
    right = _subset_values(node.right, values, bit_set, size)
    followed = left if values[node.feature] <= node.threshold else right
    blended = (node.left.cover * left + node.right.cover * right) / node.cover
    return np.where(bit_set[node.feature], followed, blended)


def brute_force_shapley(ensemble: TreeEnsemble, record: PatientRecord) -> Attribution:
    """Shapley attribution computed by full subset enumeration."""
    if record.schema.version != ensemble.schema_version:
        raise SchemaMismatch(
            f"record schema {record.schema.version!r} does not match "
            f"model schema {ensemble.schema_version!r}"
        )
    n = len(record.schema)
    if n > MAX_FEATURES:
        raise TooManyFeatures(
            f"subset enumeration supports at most {MAX_FEATURES} features, got {n}"
        )

    size = 1 << n
    masks = np.arange(size)
    bit_set = [((masks >> i) & 1).astype(bool) for i in range(n)]

    v = np.full(size, ensemble.base_margin)
    for tree in ensemble.trees:
        v = v + _subset_values(tree, record.values, bit_set, size)

    # Shapley weight by coalition size |S|, for S drawn from the n-1 others.
    weight_by_size = np.array(
        [factorial(s) * factorial(n - s - 1) / factorial(n) for s in range(n)]
    )
    popcount = np.array([bin(mask).count("1") for mask in range(size)])

    phi = []
    for i in range(n):
        without = masks[~bit_set[i]]
        with_i = without | (1 << i)
        gains = v[with_i] - v[without]
        phi.append(float(np.dot(weight_by_size[popcount[without]], gains)))

    return Attribution(
        schema=record.schema, base_value=float(v[0]), shap_values=tuple(phi)
    )


def _single_value(node: TreeNode, values: tuple[float, ...], indices: set[int]) -> float:
    if node.is_leaf:
        return node.value
    if node.feature in indices:
        child = node.left if values[node.feature] <= node.threshold else node.right
        return _single_value(child, values, indices)
    return (
        node.left.cover * _single_value(node.left, values, indices)
        + node.right.cover * _single_value(node.right, values, indices)
    ) / node.cover


def coalition_value(
    ensemble: TreeEnsemble, record: PatientRecord, feature_ids: frozenset[str] | set[str]
) -> float:
    """v(S) for a single named coalition; exposed for hand-check tests."""
    indices = {record.schema.index(feature_id) for feature_id in feature_ids}
    total = ensemble.base_margin
    for tree in ensemble.trees:
        total += _single_value(tree, record.values, indices)
    return total
