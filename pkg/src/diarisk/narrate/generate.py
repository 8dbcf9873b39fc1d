"""Narrative generation orchestrator: template mode, LLM mode, fallback.

LLM mode builds the prompt, calls the remote chat-completion endpoint,
parses strictly, and validates grounding; any failure is retried once and
then silently (but logged) replaced by template cards. The result therefore
always passes validation whenever template inputs are valid.
"""

from __future__ import annotations

import enum
import json
import logging
import os
import urllib.error
import urllib.request
from dataclasses import dataclass
from typing import Sequence

from ..errors import CompletionError, NarrativeSchemaError
from ..schema import PatientRecord
from ..view import ExplanationView
from .cards import NarrativeCard, render_template_narrative
from .knowledge import KnowledgeBase
from .prompt import DEFAULT_FEW_SHOTS, build_llm_prompt
from .validate import validate_narrative

logger = logging.getLogger(__name__)

ENV_BASE_URL = "NARRATE_BASE_URL"
ENV_API_KEY = "NARRATE_API_KEY"
ENV_MODEL = "NARRATE_MODEL"
ENV_MODE = "NARRATE_MODE"

DEFAULT_TIMEOUT = 10.0
DEFAULT_MAX_TOKENS = 1600
_ATTEMPTS = 2  # one try plus one retry


class NarrativeMode(str, enum.Enum):
    TEMPLATE = "TEMPLATE"
    LLM = "LLM"
    FALLBACK = "FALLBACK"


@dataclass(frozen=True)
class NarrativeResult:
    cards: tuple[NarrativeCard, ...]
    mode_used: NarrativeMode


@dataclass(frozen=True)
class CompletionClient:
    """Minimal chat-style completion client (OpenAI-compatible wire shape)."""

    base_url: str
    api_key: str | None = None
    model: str = "gpt-4o"
    timeout: float = DEFAULT_TIMEOUT
    max_tokens: int = DEFAULT_MAX_TOKENS

    @classmethod
    def from_env(cls) -> "CompletionClient | None":
        base_url = os.environ.get(ENV_BASE_URL)
        if not base_url:
            return None
        return cls(
            base_url=base_url,
            api_key=os.environ.get(ENV_API_KEY),
            model=os.environ.get(ENV_MODEL, "gpt-4o"),
        )

    def complete(self, system_text: str, user_text: str) -> str:
        payload = {
            "model": self.model,
            "messages": [
                {"role": "system", "content": system_text},
                {"role": "user", "content": user_text},
            ],
            "temperature": 0,
            "max_tokens": self.max_tokens,
        }
        url = self.base_url.rstrip("/") + "/chat/completions"
        headers = {"Content-Type": "application/json"}
        if self.api_key:
            headers["Authorization"] = f"Bearer {self.api_key}"
        request = urllib.request.Request(
            url, data=json.dumps(payload).encode("utf-8"), headers=headers
        )
        try:
            with urllib.request.urlopen(request, timeout=self.timeout) as response:
                body = json.loads(response.read().decode("utf-8"))
        except (urllib.error.URLError, OSError, ValueError) as exc:
            raise CompletionError(f"completion request failed: {exc}") from exc
        try:
            content = body["choices"][0]["message"]["content"]
        except (KeyError, IndexError, TypeError) as exc:
            raise CompletionError("completion response missing message content") from exc
        if not isinstance(content, str):
            raise CompletionError("completion message content must be a string")
        return content


def mode_from_env(default: str = "template") -> NarrativeMode:
    value = os.environ.get(ENV_MODE, default).strip().upper()
    if value == NarrativeMode.LLM.value:
        return NarrativeMode.LLM
    return NarrativeMode.TEMPLATE


def generate_narratives(
    mode: NarrativeMode | str,
    view: ExplanationView,
    record: PatientRecord,
    kb: KnowledgeBase,
    *,
    client: CompletionClient | None = None,
    few_shots: Sequence[tuple[str, str]] = DEFAULT_FEW_SHOTS,
) -> NarrativeResult:
    """Full card set for a view; never fails when template inputs are valid."""
    if isinstance(mode, str):
        mode = NarrativeMode(mode.strip().upper())
    if mode == NarrativeMode.FALLBACK:
        raise ValueError("FALLBACK is a result flag, not a requestable mode")

    if mode == NarrativeMode.TEMPLATE:
        return NarrativeResult(
            cards=render_template_narrative(view, record, kb),
            mode_used=NarrativeMode.TEMPLATE,
        )

    client = client or CompletionClient.from_env()
    if client is None:
        logger.warning("LLM narrative mode requested but no endpoint configured")
        return _fallback(view, record, kb)

    prompt = build_llm_prompt(view, record, kb, few_shots)
    for attempt in range(1, _ATTEMPTS + 1):
        try:
            text = client.complete(prompt.system_text, prompt.user_text)
            cards = parse_and_validate(text, view, record, kb)
        except (CompletionError, NarrativeSchemaError, GroundingFailure) as exc:
            logger.warning("narrative attempt %d/%d failed: %s", attempt, _ATTEMPTS, exc)
            continue
        return NarrativeResult(cards=cards, mode_used=NarrativeMode.LLM)
    return _fallback(view, record, kb)


class GroundingFailure(Exception):
    """A parsed response failed the grounding validator."""


def parse_and_validate(
    text: str, view: ExplanationView, record: PatientRecord, kb: KnowledgeBase
) -> tuple[NarrativeCard, ...]:
    from .parse import parse_llm_response

    cards = parse_llm_response(text)
    report = validate_narrative(cards, view, record, kb)
    if not report.passed:
        failed = {
            check.feature_id: [r.value for r in check.reasons]
            for check in report.checks
            if not check.passed
        }
        raise GroundingFailure(f"cards failed grounding checks: {failed}")
    return cards


def _fallback(
    view: ExplanationView, record: PatientRecord, kb: KnowledgeBase
) -> NarrativeResult:
    logger.info("falling back to template narrative cards")
    return NarrativeResult(
        cards=render_template_narrative(view, record, kb),
        mode_used=NarrativeMode.FALLBACK,
    )
