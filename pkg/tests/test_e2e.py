"""Runs every catalogued end-to-end scenario against a fresh service."""

import pytest
from starlette.testclient import TestClient

from diarisk import DataStore
from diarisk.api import create_app
from diarisk.narrate import CompletionClient

from .e2e_scenarios import SCENARIOS


class Ctx:
    def __init__(self, profile_ensemble, schema, record, tmp_path):
        self._ensemble = profile_ensemble
        self._schema = schema
        self._tmp_path = tmp_path
        self.record = record
        self._clients = []
        self.client = self._make(DataStore(tmp_path / "main", schema))

    def _make(self, store, narrative_client=None):
        app = create_app(
            self._ensemble, self._schema, store, narrative_client=narrative_client
        )
        client = TestClient(app)
        self._clients.append(client)
        return client

    def new_client_with_dead_llm(self):
        dead = CompletionClient(base_url="http://127.0.0.1:9", timeout=0.2)
        return self._make(DataStore(self._tmp_path / "dead", self._schema), dead)

    def close(self):
        for client in self._clients:
            client.close()


@pytest.fixture()
def ctx(profile_ensemble, schema, profile_record, tmp_path, monkeypatch):
    monkeypatch.setenv("NARRATE_MODE", "template")
    monkeypatch.delenv("NARRATE_BASE_URL", raising=False)
    context = Ctx(profile_ensemble, schema, profile_record.as_mapping(), tmp_path)
    yield context
    context.close()


def test_catalog_is_large_enough():
    assert len(SCENARIOS) >= 40


@pytest.mark.parametrize(
    "case", SCENARIOS, ids=[f"{s.group}::{s.name}" for s in SCENARIOS]
)
def test_scenario(case, ctx):
    case.run(ctx)
