"""Grounding validator: reject narrative cards that contradict the data.

Checks are mechanical and lexicon-based, never model-based, so a failing
card always maps to a concrete reason: wrong direction words in the impact
sentence, a numeral that traces to nothing in the record / view / knowledge
base, a bad sentence count, a duplicated or missing factor, or a card for
a feature that does not exist.
"""

from __future__ import annotations

import enum
import json
import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path

from ..schema import PatientRecord
from ..view import Direction, ExplanationView
from .cards import NarrativeCard, display_percent
from .knowledge import KnowledgeBase

_NUMERAL = re.compile(r"\d+(?:\.\d+)?")
_TOLERANCE = 1e-9


class Reason(str, enum.Enum):
    DIRECTION_MISMATCH = "DIRECTION_MISMATCH"
    VALUE_MISMATCH = "VALUE_MISMATCH"
    MISSING_FEATURE = "MISSING_FEATURE"
    SENTENCE_COUNT = "SENTENCE_COUNT"
    SCHEMA_ERROR = "SCHEMA_ERROR"


@dataclass(frozen=True)
class CardCheck:
    feature_id: str
    passed: bool
    reasons: tuple[Reason, ...]


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple[CardCheck, ...]

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def reasons_for(self, feature_id: str) -> tuple[Reason, ...]:
        reasons: list[Reason] = []
        for check in self.checks:
            if check.feature_id == feature_id:
                reasons.extend(check.reasons)
        return tuple(reasons)


def load_direction_lexicon(path: str | Path | None = None) -> dict[str, list[str]]:
    """Keyword lists for risk-direction claims; override via a config file."""
    if path is not None:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    data = resources.files("diarisk.narrate").joinpath("direction_lexicon.json")
    return json.loads(data.read_text(encoding="utf-8"))


@lru_cache(maxsize=4)
def _word_pattern(words: tuple[str, ...]) -> re.Pattern:
    joined = "|".join(re.escape(w) for w in words)
    return re.compile(rf"\b(?:{joined})\b", re.IGNORECASE)


def _extract_numerals(text: str) -> list[float]:
    return [float(m) for m in _NUMERAL.findall(text)]


def _matches_any(value: float, allowed: list[float]) -> bool:
    return any(abs(value - candidate) <= _TOLERANCE for candidate in allowed)


def _check_direction(
    card: NarrativeCard, direction: Direction, lexicon: dict[str, list[str]]
) -> bool:
    """Impact sentence must claim the right direction and not the opposite.

    Only the first sentence is inspected: later sentences give general
    context and may legitimately describe how a factor usually moves risk.
    """
    impact = card.sentences[0] if card.sentences else ""
    has_increase = bool(_word_pattern(tuple(lexicon["increase"])).search(impact))
    has_decrease = bool(_word_pattern(tuple(lexicon["decrease"])).search(impact))
    if direction == Direction.INCREASES:
        return has_increase and not has_decrease
    if direction == Direction.DECREASES:
        return has_decrease and not has_increase
    return not has_increase and not has_decrease


def validate_narrative(
    cards: tuple[NarrativeCard, ...] | list[NarrativeCard],
    view: ExplanationView,
    record: PatientRecord,
    kb: KnowledgeBase,
    lexicon: dict[str, list[str]] | None = None,
) -> ValidationReport:
    """Check every expected factor exactly once; extra cards fail too."""
    lexicon = lexicon or load_direction_lexicon()
    factors = {f.feature_id: f for f in view.factors}

    by_id: dict[str, list[NarrativeCard]] = {}
    for card in cards:
        by_id.setdefault(card.feature_id, []).append(card)

    checks: list[CardCheck] = []
    for factor in view.factors:
        matching = by_id.get(factor.feature_id, [])
        reasons: list[Reason] = []
        if not matching:
            reasons.append(Reason.MISSING_FEATURE)
        elif len(matching) > 1:
            reasons.append(Reason.SCHEMA_ERROR)
        else:
            card = matching[0]
            if len(card.sentences) not in (2, 3):
                reasons.append(Reason.SENTENCE_COUNT)
            if not _check_direction(card, factor.direction, lexicon):
                reasons.append(Reason.DIRECTION_MISMATCH)
            if _value_mismatch(card, factor.percentage, record, kb):
                reasons.append(Reason.VALUE_MISMATCH)
        checks.append(
            CardCheck(
                feature_id=factor.feature_id,
                passed=not reasons,
                reasons=tuple(reasons),
            )
        )

    for feature_id in by_id:
        if feature_id not in factors:
            checks.append(
                CardCheck(
                    feature_id=feature_id,
                    passed=False,
                    reasons=(Reason.SCHEMA_ERROR,),
                )
            )
    return ValidationReport(checks=tuple(checks))


def _value_mismatch(
    card: NarrativeCard, percentage: float, record: PatientRecord, kb: KnowledgeBase
) -> bool:
    expected_value = record.value(card.feature_id)
    expected_percent = display_percent(percentage)
    if card.user_value != expected_value:
        return True
    if abs(card.contribution_percent - expected_percent) > _TOLERANCE:
        return True

    entry = kb.entry(card.feature_id)
    if card.unit != entry.unit:
        return True

    allowed = [expected_value, expected_percent]
    allowed.extend(_extract_numerals(entry.definition))
    allowed.extend(_extract_numerals(entry.ideal_text))
    allowed.append(display_percent(entry.global_importance))
    allowed.append(entry.global_importance)

    for sentence in card.sentences:
        for numeral in _extract_numerals(sentence):
            if not _matches_any(numeral, allowed):
                return True
    for numeral in _extract_numerals(card.ideal_range):
        if not _matches_any(numeral, _extract_numerals(entry.ideal_text)):
            return True
    return False
