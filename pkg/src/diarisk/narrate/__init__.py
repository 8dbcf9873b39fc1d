"""Narrative cards: grounded per-factor text in template or remote-LLM mode."""

from .cards import NarrativeCard, display_percent, format_value, render_template_narrative
from .generate import (
    CompletionClient,
    NarrativeMode,
    NarrativeResult,
    generate_narratives,
)
from .knowledge import KnowledgeBase, KnowledgeEntry, build_knowledge_base, ideal_range_text
from .parse import parse_llm_response
from .prompt import CARD_SCHEMA_TEXT, PromptDocument, build_llm_prompt
from .validate import Reason, ValidationReport, validate_narrative

__all__ = [
    "CARD_SCHEMA_TEXT",
    "CompletionClient",
    "KnowledgeBase",
    "KnowledgeEntry",
    "NarrativeCard",
    "NarrativeMode",
    "NarrativeResult",
    "PromptDocument",
    "Reason",
    "ValidationReport",
    "build_knowledge_base",
    "build_llm_prompt",
    "display_percent",
    "format_value",
    "generate_narratives",
    "ideal_range_text",
    "parse_llm_response",
    "render_template_narrative",
    "validate_narrative",
]
