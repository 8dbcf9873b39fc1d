"""diarisk: explainable diabetes-risk engine.

Boosted-tree risk scoring with exact per-feature attribution, chart-ready
percentage payloads, grounded narrative cards, what-if simulation, durable
risk history, and an HTTP service exposing all of it.
"""

__version__ = "0.1.0"

from .errors import DiariskError
from .explain import Attribution, tree_shap
from .model import (
    RiskEstimate,
    RiskLevel,
    TreeEnsemble,
    TreeNode,
    load_model,
    logistic,
    model_checksum,
    predict,
    risk_level,
    save_model,
)
from .oracle import brute_force_shapley, coalition_value
from .schema import FeatureSchema, FeatureSpec, PatientRecord, default_schema
from .simulate import SimulationRequest, SimulationResult, simulate
from .store import DataStore, LogEntry, LogKind, RiskHistoryPoint
from .train import TrainParams, fit_gbdt, training_accuracy
from .view import (
    Color,
    Direction,
    ExplanationView,
    FactorView,
    rank_factors,
    to_percentages,
    view_payload,
)

__all__ = [
    "Attribution",
    "Color",
    "DataStore",
    "DiariskError",
    "Direction",
    "ExplanationView",
    "FactorView",
    "FeatureSchema",
    "FeatureSpec",
    "LogEntry",
    "LogKind",
    "PatientRecord",
    "RiskEstimate",
    "RiskHistoryPoint",
    "RiskLevel",
    "SimulationRequest",
    "SimulationResult",
    "TrainParams",
    "TreeEnsemble",
    "TreeNode",
    "brute_force_shapley",
    "coalition_value",
    "default_schema",
    "fit_gbdt",
    "load_model",
    "logistic",
    "model_checksum",
    "predict",
    "rank_factors",
    "risk_level",
    "save_model",
    "simulate",
    "to_percentages",
    "training_accuracy",
    "tree_shap",
    "view_payload",
]
