"""
From signed contributions to a chart-ready payload
==================================================

Converts raw attributions into the percentage view rendered by clients:
shares summing to 100, red/green direction coding, ranks, and the signed
percentages that drive a diverging bar chart.
"""

import json

from diarisk import default_schema, rank_factors, to_percentages, view_payload
from diarisk.explain import Attribution

schema = default_schema()
shap_values = {
    "age": -0.12, "sex": 0.0, "bmi": 0.17, "fasting_glucose": 0.28,
    "systolic_bp": 0.13, "family_history": 0.20,
    "physical_activity": -0.06, "smoking": -0.04,
}
attribution = Attribution(
    schema=schema,
    base_value=-0.3,
    shap_values=tuple(shap_values[s.id] for s in schema),
)

view = to_percentages(attribution)
print(f"sum of shares: {sum(f.percentage for f in view.factors):.10f}")
print("rank  abbr  share    signed   color")
for factor in rank_factors(view):
    print(
        f"{factor.rank:4d}  {factor.abbreviation:4s}  "
        f"{factor.percentage:5.1f}%  {factor.signed_percentage:+6.1f}%  {factor.color.value}"
    )

# The same numbers feed a standard bar chart (share), a pie chart (share),
# and a diverging bar chart (signed share, decreasing factors to the left).
payload = view_payload(view)
print("\nwire payload:")
print(json.dumps(payload, indent=2)[:400], "...")
