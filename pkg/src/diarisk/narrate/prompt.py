"""Prompt construction for the remote completion service.

The system prompt fixes a persona, the task, a markdown knowledge-base
table, worked examples, and the exact output JSON schema; the user prompt
carries only the current patient's numbers. Both are deterministic
functions of their inputs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from ..errors import EmptyKnowledgeBase
from ..schema import PatientRecord
from ..view import ExplanationView, rank_factors
from .cards import display_percent, format_value
from .knowledge import KnowledgeBase

PERSONA = "Medical AI Explainer"

CARD_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": ["cards"],
    "properties": {
        "cards": {
            "type": "array",
            "items": {
                "type": "object",
                "additionalProperties": False,
                "required": [
                    "feature_id",
                    "contribution_percent",
                    "sentences",
                    "user_value",
                    "unit",
                    "ideal_range",
                ],
                "properties": {
                    "feature_id": {"type": "string"},
                    "contribution_percent": {"type": "number"},
                    "sentences": {
                        "type": "array",
                        "items": {"type": "string"},
                        "minItems": 1,
                    },
                    "user_value": {"type": "number"},
                    "unit": {"type": "string"},
                    "ideal_range": {"type": "string"},
                },
            },
        }
    },
}

CARD_SCHEMA_TEXT = json.dumps(CARD_SCHEMA, indent=2)


@dataclass(frozen=True)
class PromptDocument:
    system_text: str
    user_text: str


# One worked example keeps the output shape unambiguous for the model.
_FEW_SHOT_INPUT = """\
| Feature | Your value | Unit | Direction | Contribution (%) |
|---|---|---|---|---|
| fasting_glucose | 128 | mg/dL | INCREASES | 60.0 |
| physical_activity | 180 | min/week | DECREASES | 40.0 |"""

_FEW_SHOT_OUTPUT = json.dumps(
    {
        "cards": [
            {
                "feature_id": "fasting_glucose",
                "contribution_percent": 60.0,
                "sentences": [
                    "Your Fasting Glucose of 128 mg/dL is above the normal "
                    "range and is raising your estimated diabetes risk, "
                    "contributing 60.0% of the total influence.",
                    "Fasting blood glucose is the sugar level measured after "
                    "an overnight fast; 70–99 mg/dL counts as normal.",
                ],
                "user_value": 128,
                "unit": "mg/dL",
                "ideal_range": "70–99 mg/dL",
            },
            {
                "feature_id": "physical_activity",
                "contribution_percent": 40.0,
                "sentences": [
                    "Your Physical Activity of 180 min/week is meeting the "
                    "recommended amount and is lowering your estimated "
                    "diabetes risk, contributing 40.0% of the total influence.",
                    "Minutes of moderate exercise per week; 150 minutes or "
                    "more is the widely recommended target.",
                ],
                "user_value": 180,
                "unit": "min/week",
                "ideal_range": "at least 150 min/week",
            },
        ]
    },
    indent=2,
    ensure_ascii=False,
)

DEFAULT_FEW_SHOTS: tuple[tuple[str, str], ...] = ((_FEW_SHOT_INPUT, _FEW_SHOT_OUTPUT),)


def _markdown_row(cells: Sequence[str]) -> str:
    return "| " + " | ".join(cells) + " |"


def _knowledge_table(kb: KnowledgeBase, feature_ids: Sequence[str]) -> str:
    lines = [
        _markdown_row(["Feature", "Definition", "Ideal range", "Unit", "Global importance (%)"]),
        "|---|---|---|---|---|",
    ]
    for feature_id in feature_ids:
        entry = kb.entry(feature_id)
        lines.append(
            _markdown_row(
                [
                    feature_id,
                    entry.definition,
                    entry.ideal_text,
                    entry.unit or "-",
                    f"{display_percent(entry.global_importance):.1f}",
                ]
            )
        )
    return "\n".join(lines)


def _patient_table(view: ExplanationView, record: PatientRecord) -> str:
    lines = [
        _markdown_row(["Feature", "Your value", "Unit", "Direction", "Contribution (%)"]),
        "|---|---|---|---|---|",
    ]
    for factor in rank_factors(view):
        spec = record.schema.by_id(factor.feature_id)
        lines.append(
            _markdown_row(
                [
                    factor.feature_id,
                    format_value(record.value(factor.feature_id)),
                    spec.unit or "-",
                    factor.direction.value,
                    f"{display_percent(factor.percentage):.1f}",
                ]
            )
        )
    return "\n".join(lines)


def build_llm_prompt(
    view: ExplanationView,
    record: PatientRecord,
    kb: KnowledgeBase,
    few_shots: Sequence[tuple[str, str]] = DEFAULT_FEW_SHOTS,
) -> PromptDocument:
    """Deterministic system/user prompt pair for narrative generation."""
    if kb.is_empty:
        raise EmptyKnowledgeBase("knowledge base has no entries")
    if not few_shots:
        raise ValueError("at least one worked example is required")

    feature_ids = [f.feature_id for f in view.factors]
    example_blocks = []
    for i, (shot_input, shot_output) in enumerate(few_shots, start=1):
        example_blocks.append(
            f"## Example {i}\nInput:\n{shot_input}\nOutput:\n{shot_output}"
        )
    examples = "\n\n".join(example_blocks)

    system_text = f"""# Persona
You are a '{PERSONA}' for a diabetes-risk screening application. You turn \
model attribution data into short, plain-language explanations a layperson \
can act on.

# Task
Write one narrative card per risk factor listed in the user message. Each \
card carries two to three concise sentences: the first describes the \
personal impact (the stated direction of influence together with the \
user's own value), the second gives general context using the knowledge \
base definition; an optional third sentence may add practical context.

# Rules
- Use only numbers that appear in the user message or the knowledge base; \
never invent or adjust values.
- Respect the stated direction exactly: INCREASES means the factor is \
raising this user's risk, DECREASES means it is lowering it, NEUTRAL means \
it currently has no influence.
- Copy user_value, unit, ideal_range, and contribution_percent verbatim \
from the inputs.

# Knowledge base
{_knowledge_table(kb, feature_ids)}

# Output format
Respond with JSON only - no prose, no code fences - matching this schema \
exactly (unknown fields are rejected):
{CARD_SCHEMA_TEXT}

{examples}"""

    user_text = f"""Explain this risk assessment.

{_patient_table(view, record)}"""

    return PromptDocument(system_text=system_text, user_text=user_text)
