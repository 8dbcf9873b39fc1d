"""
Exact attribution, verified two ways
====================================

The fast path-walking attribution and the exhaustive subset-enumeration
oracle compute the same Shapley values; this script shows both on a small
handcrafted tree and on a trained model, plus the local-accuracy identity.
"""

from diarisk import (
    PatientRecord,
    TreeEnsemble,
    TreeNode,
    brute_force_shapley,
    coalition_value,
    default_schema,
    fit_gbdt,
    predict,
    tree_shap,
)
from diarisk.datasets import make_synthetic_dataset

schema = default_schema()

# A single symmetric split on fasting glucose: all credit goes to glucose.
glu = schema.index("fasting_glucose")
tree = TreeNode.split(glu, 110.0, TreeNode.leaf(-1.0, 50), TreeNode.leaf(1.0, 50), 100)
toy = TreeEnsemble(trees=(tree,), base_margin=0.0, schema_version=schema.version)
record = PatientRecord.from_mapping(
    schema,
    {
        "age": 40, "sex": 0, "bmi": 22.0, "fasting_glucose": 150.0,
        "systolic_bp": 110, "family_history": 0, "physical_activity": 200, "smoking": 0,
    },
)
attribution = tree_shap(toy, record)
print("toy tree: phi(glucose) =", attribution.shap_values[glu])
print("coalition values: v({}) =", coalition_value(toy, record, set()),
      " v({glucose}) =", coalition_value(toy, record, {"fasting_glucose"}))

# Trained model: fast path vs. oracle, componentwise.
records, labels = make_synthetic_dataset(n=200, seed=42)
model = fit_gbdt(records, labels)
sample = records[11]
fast = tree_shap(model, sample)
slow = brute_force_shapley(model, sample)
worst = max(abs(a - b) for a, b in zip(fast.shap_values, slow.shap_values))
print(f"trained model: max |fast - oracle| = {worst:.2e}")

margin = predict(model, sample).margin
residual = fast.base_value + sum(fast.shap_values) - margin
print(f"local accuracy: base + sum(phi) - margin = {residual:.2e}")

print("per-feature contributions (margin units):")
for spec, value in zip(schema, fast.shap_values):
    if value != 0.0:
        print(f"  {spec.abbreviation:4s} {value:+.4f}")
