"""Desk-scale gradient-boosting trainer for the logistic objective.

Greedy exact splits over all candidate thresholds (midpoints of sorted
unique values), Newton-step leaf values with L2 damping, covers recorded as
row counts. Fully deterministic: no subsampling, ties broken by canonical
feature order then lowest threshold.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DegenerateData, TooFewRows
from .model import MODEL_FORMAT_VERSION, TreeEnsemble, TreeNode
from .schema import PatientRecord

MIN_ROWS = 20
# Gains below this are treated as zero so float noise never creates a split.
_GAIN_EPS = 1e-12


@dataclass(frozen=True)
class TrainParams:
    rounds: int = 50
    max_depth: int = 4
    learning_rate: float = 0.1
    min_cover: int = 1
    l2: float = 1.0


def _grow_tree(
    X: np.ndarray,
    grad: np.ndarray,
    hess: np.ndarray,
    rows: np.ndarray,
    depth: int,
    params: TrainParams,
) -> TreeNode:
    cover = float(len(rows))
    g_sum = float(grad[rows].sum())
    h_sum = float(hess[rows].sum())

    def leaf() -> TreeNode:
        value = -params.learning_rate * g_sum / (h_sum + params.l2)
        return TreeNode.leaf(value, cover)

    if depth >= params.max_depth or len(rows) < 2 * params.min_cover:
        return leaf()

    parent_score = g_sum * g_sum / (h_sum + params.l2)
    best_gain = 0.0
    best: tuple[int, float, np.ndarray] | None = None

    for j in range(X.shape[1]):
        values = X[rows, j]
        order = np.argsort(values, kind="stable")
        sorted_values = values[order]
        g_sorted = grad[rows][order]
        h_sorted = hess[rows][order]
        g_prefix = np.cumsum(g_sorted)
        h_prefix = np.cumsum(h_sorted)
        # Splittable positions: boundaries between distinct adjacent values.
        for k in range(len(rows) - 1):
            if sorted_values[k] == sorted_values[k + 1]:
                continue
            n_left = k + 1
            n_right = len(rows) - n_left
            if n_left < params.min_cover or n_right < params.min_cover:
                continue
            gl, hl = float(g_prefix[k]), float(h_prefix[k])
            gr, hr = g_sum - gl, h_sum - hl
            gain = 0.5 * (
                gl * gl / (hl + params.l2)
                + gr * gr / (hr + params.l2)
                - parent_score
            )
            if gain > best_gain + _GAIN_EPS:
                threshold = float((sorted_values[k] + sorted_values[k + 1]) / 2.0)
                mask = values <= threshold
                best_gain = gain
                best = (j, threshold, mask)

    if best is None:
        return leaf()

    feature, threshold, mask = best
    left = _grow_tree(X, grad, hess, rows[mask], depth + 1, params)
    right = _grow_tree(X, grad, hess, rows[~mask], depth + 1, params)
    return TreeNode.split(feature, threshold, left, right, cover)


def _tree_margins(node: TreeNode, X: np.ndarray) -> np.ndarray:
    out = np.empty(X.shape[0])
    for i in range(X.shape[0]):
        cur = node
        while not cur.is_leaf:
            cur = cur.left if X[i, cur.feature] <= cur.threshold else cur.right
        out[i] = cur.value
    return out


def fit_gbdt(
    records: Sequence[PatientRecord],
    labels: Sequence[int],
    params: TrainParams | None = None,
) -> TreeEnsemble:
    """Train a boosted logistic model on complete records and 0/1 labels."""
    params = params or TrainParams()
    if len(records) < MIN_ROWS:
        raise TooFewRows(f"need at least {MIN_ROWS} rows, got {len(records)}")
    if len(records) != len(labels):
        raise ValueError("records and labels must have equal length")
    schema = records[0].schema

    X = np.array([r.values for r in records], dtype=float)
    y = np.asarray(labels, dtype=float)
    if not set(np.unique(y)) <= {0.0, 1.0}:
        raise ValueError("labels must be 0 or 1")
    mean = float(y.mean())
    if mean in (0.0, 1.0):
        raise DegenerateData("all labels are identical")

    base_margin = math.log(mean / (1.0 - mean))
    margins = np.full(len(y), base_margin)
    rows = np.arange(len(y))

    trees: list[TreeNode] = []
    for _ in range(params.rounds):
        p = 1.0 / (1.0 + np.exp(-margins))
        grad = p - y
        hess = p * (1.0 - p)
        tree = _grow_tree(X, grad, hess, rows, 0, params)
        trees.append(tree)
        margins = margins + _tree_margins(tree, X)

    return TreeEnsemble(
        trees=tuple(trees),
        base_margin=base_margin,
        schema_version=schema.version,
        version=MODEL_FORMAT_VERSION,
    )


def training_accuracy(
    ensemble: TreeEnsemble, records: Sequence[PatientRecord], labels: Sequence[int]
) -> float:
    """Share of rows whose predicted probability lands on the true side of 0.5."""
    from .model import predict

    hits = 0
    for record, label in zip(records, labels):
        p = predict(ensemble, record).probability
        hits += int((p >= 0.5) == bool(label))
    return hits / len(records)


def log_loss_by_round(
    ensemble: TreeEnsemble, records: Sequence[PatientRecord], labels: Sequence[int]
) -> list[float]:
    """Training log-loss after 0, 1, ..., all boosting rounds."""
    X = np.array([r.values for r in records], dtype=float)
    y = np.asarray(labels, dtype=float)
    margins = np.full(len(y), ensemble.base_margin)
    losses = [_log_loss(margins, y)]
    for tree in ensemble.trees:
        margins = margins + _tree_margins(tree, X)
        losses.append(_log_loss(margins, y))
    return losses


def _log_loss(margins: np.ndarray, y: np.ndarray) -> float:
    # log(1 + e^m) - y*m, computed stably.
    per_row = np.logaddexp(0.0, margins) - y * margins
    return float(per_row.mean())
