"""Strict parsing of completion responses against the card schema.

No partial salvage: any unknown field, missing field, or type violation
rejects the whole response with a pointer to the offending location.
Markdown code fences around the JSON body are tolerated because chat
models add them routinely.
"""

from __future__ import annotations

import json
from typing import Any

from ..errors import NarrativeSchemaError
from .cards import NarrativeCard

_CARD_FIELDS = (
    "feature_id",
    "contribution_percent",
    "sentences",
    "user_value",
    "unit",
    "ideal_range",
)


def _strip_code_fences(text: str) -> str:
    stripped = text.strip()
    if stripped.startswith("```") and stripped.endswith("```"):
        first_newline = stripped.find("\n")
        if first_newline != -1:
            return stripped[first_newline + 1 : stripped.rfind("```")].strip()
    return stripped


def _require_string(value: Any, path: str) -> str:
    if not isinstance(value, str):
        raise NarrativeSchemaError(f"{path} must be a string", path=path)
    return value


def _require_number(value: Any, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise NarrativeSchemaError(f"{path} must be a number", path=path)
    return float(value)


def _parse_card(obj: Any, path: str) -> NarrativeCard:
    if not isinstance(obj, dict):
        raise NarrativeSchemaError(f"{path} must be an object", path=path)
    for key in obj:
        if key not in _CARD_FIELDS:
            raise NarrativeSchemaError(f"{path}: unexpected field {key!r}", path=path)
    for key in _CARD_FIELDS:
        if key not in obj:
            raise NarrativeSchemaError(f"{path}: missing field {key!r}", path=path)
    sentences = obj["sentences"]
    if not isinstance(sentences, list) or not sentences:
        raise NarrativeSchemaError(
            f"{path}.sentences must be a non-empty array", path=f"{path}.sentences"
        )
    parsed_sentences = tuple(
        _require_string(s, f"{path}.sentences[{i}]") for i, s in enumerate(sentences)
    )
    return NarrativeCard(
        feature_id=_require_string(obj["feature_id"], f"{path}.feature_id"),
        contribution_percent=_require_number(
            obj["contribution_percent"], f"{path}.contribution_percent"
        ),
        sentences=parsed_sentences,
        user_value=_require_number(obj["user_value"], f"{path}.user_value"),
        unit=_require_string(obj["unit"], f"{path}.unit"),
        ideal_range=_require_string(obj["ideal_range"], f"{path}.ideal_range"),
    )


def parse_llm_response(text: str) -> tuple[NarrativeCard, ...]:
    """Parse a completion body into candidate cards, or raise NarrativeSchemaError."""
    body = _strip_code_fences(text)
    try:
        document = json.loads(body)
    except json.JSONDecodeError as exc:
        raise NarrativeSchemaError(
            f"response is not valid JSON: {exc.msg} at line {exc.lineno} column {exc.colno}",
            path="$",
        ) from exc
    if not isinstance(document, dict):
        raise NarrativeSchemaError("response must be a JSON object", path="$")
    for key in document:
        if key != "cards":
            raise NarrativeSchemaError(f"$: unexpected field {key!r}", path="$")
    if "cards" not in document:
        raise NarrativeSchemaError("$: missing field 'cards'", path="$")
    cards_doc = document["cards"]
    if not isinstance(cards_doc, list):
        raise NarrativeSchemaError("$.cards must be an array", path="$.cards")
    return tuple(
        _parse_card(card, f"cards[{i}]") for i, card in enumerate(cards_doc)
    )
