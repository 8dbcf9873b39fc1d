"""Validators for the published response JSON schemas (package data)."""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources

import jsonschema
from referencing import Registry, Resource
from referencing.jsonschema import DRAFT202012


def _load(name: str) -> dict:
    return json.loads(resources.files("diarisk.schemas").joinpath(name).read_text())


@lru_cache(maxsize=None)
def _registry() -> Registry:
    return Registry().with_resources(
        [
            (
                "diarisk/common.json",
                Resource.from_contents(_load("common.json"), default_specification=DRAFT202012),
            ),
            (
                "diarisk/responses.json",
                Resource.from_contents(_load("responses.json"), default_specification=DRAFT202012),
            ),
        ]
    )


@lru_cache(maxsize=None)
def validator_for(definition: str) -> jsonschema.Draft202012Validator:
    return jsonschema.Draft202012Validator(
        {"$ref": f"diarisk/responses.json#/definitions/{definition}"},
        registry=_registry(),
    )


def assert_valid(body: dict, definition: str) -> None:
    validator_for(definition).validate(body)
