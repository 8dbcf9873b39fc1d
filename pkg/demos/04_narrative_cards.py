"""
Grounded narrative cards
========================

Renders the per-factor cards (template mode), previews the prompt that the
optional remote-LLM mode would send, and shows the grounding validator
rejecting a card that contradicts the data.
"""

import dataclasses

from diarisk import PatientRecord, default_schema, to_percentages
from diarisk.explain import Attribution
from diarisk.narrate import (
    build_knowledge_base,
    build_llm_prompt,
    render_template_narrative,
    validate_narrative,
)

schema = default_schema()
record = PatientRecord.from_mapping(
    schema,
    {
        "age": 54, "sex": 1, "bmi": 24.7, "fasting_glucose": 112,
        "systolic_bp": 128, "family_history": 1,
        "physical_activity": 60, "smoking": 0,
    },
)
shap_values = {
    "age": -0.12, "sex": 0.0, "bmi": 0.17, "fasting_glucose": 0.28,
    "systolic_bp": 0.13, "family_history": 0.20,
    "physical_activity": -0.06, "smoking": -0.04,
}
view = to_percentages(Attribution(
    schema=schema, base_value=-0.3,
    shap_values=tuple(shap_values[s.id] for s in schema),
))
kb = build_knowledge_base(schema)

cards = render_template_narrative(view, record, kb)
bmi = next(c for c in cards if c.feature_id == "bmi")
print(f"[{bmi.contribution_display} of total influence]")
print(f"  {bmi.sentences[0]}")
print(f"  {bmi.sentences[1]}")
print(f"  Your value: {bmi.value_display}   Ideal: {bmi.ideal_range}")

report = validate_narrative(cards, view, record, kb)
print(f"\nall {len(cards)} template cards pass grounding checks: {report.passed}")

# A card that flips the direction is caught mechanically.
lied = [
    dataclasses.replace(
        c, sentences=(c.sentences[0].replace("raising", "lowering"), c.sentences[1])
    )
    if c.feature_id == "bmi" else c
    for c in cards
]
bad = validate_narrative(lied, view, record, kb)
print(f"tampered card rejected with: {[r.value for r in bad.reasons_for('bmi')]}")

# LLM mode sends this deterministic prompt pair (set NARRATE_BASE_URL etc.).
prompt = build_llm_prompt(view, record, kb)
print(f"\nsystem prompt: {len(prompt.system_text)} chars; user prompt:")
print(prompt.user_text)
