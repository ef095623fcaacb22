from pathlib import Path

import pytest
from fastapi.testclient import TestClient

from equichern.reports import extract_machine_section, extract_scenario_section
from equichern.service.app import create_app

SCENARIOS = Path(__file__).resolve().parents[1] / "scenarios"

SMALL = """\
symmetry = su2
structure = u1
truncation = 6
suites = universal-check
"""


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


def test_health(client):
    body = client.get("/v1/health").json()
    assert body["status"] == "ok"


def test_validate_good(client):
    body = client.post("/v1/scenario/validate", json={"scenario_text": SMALL}).json()
    assert body["valid"]
    assert "symmetry = su2" in body["canonical_text"]


def test_validate_bad_key_carries_line(client):
    body = client.post(
        "/v1/scenario/validate",
        json={"scenario_text": SMALL + "structure_grp = u1\n"},
    ).json()
    assert not body["valid"]
    assert any(e["line"] == 5 and "structure_grp" in e["message"] for e in body["errors"])


def test_run_universal_check_passes(client):
    body = client.post("/v1/run", json={"command": "universal-check",
                                        "scenario_text": SMALL}).json()
    assert body["exit_code"] == 0
    assert body["failed_suites"] == []
    assert all(c["status"] == "PASS" for c in body["checks"])
    assert "CHECK universal.structure_equation[su2,u1] PASS exact" in body["report"]


def test_run_schema_error_is_422(client):
    response = client.post("/v1/run", json={"command": "all",
                                            "scenario_text": "nonsense\n"})
    assert response.status_code == 422


def test_run_truncation_override(client):
    body = client.post("/v1/run", json={
        "command": "universal-check",
        "scenario_text": SMALL,
        "truncation": 8,
    }).json()
    assert body["exit_code"] == 0
    assert "truncation = 8" in body["report"]


def test_series_endpoint_ch(client):
    body = client.get("/v1/series/ch", params={"degree": 6}).json()
    assert body["expansion"]["k=3"] == "1/6"


def test_series_endpoint_a_hat(client):
    body = client.get("/v1/series/a_hat", params={"degree": 8}).json()
    assert body["log_coefficients"]["u^2"] == "-1/24"
    assert body["log_coefficients"]["u^8"] == "1/9676800"
    assert body["normalization"] == "2pi"


def test_series_endpoint_rejects_odd_degree(client):
    assert client.get("/v1/series/ch", params={"degree": 5}).status_code == 422
    assert client.get("/v1/series/todd").status_code == 404


def test_machine_section_deterministic(client):
    text = (SCENARIOS / "su2_u1.scn").read_text()
    first = client.post("/v1/run", json={"command": "all", "scenario_text": text}).json()
    second = client.post("/v1/run", json={"command": "all", "scenario_text": text}).json()
    assert first["exit_code"] == 0
    assert extract_machine_section(first["report"]) == extract_machine_section(second["report"])


def test_report_embeds_reusable_scenario(client):
    text = (SCENARIOS / "su2_u1.scn").read_text()
    first = client.post("/v1/run", json={"command": "all", "scenario_text": text}).json()
    embedded = extract_scenario_section(first["report"])
    second = client.post("/v1/run", json={"command": "all", "scenario_text": embedded}).json()
    assert extract_machine_section(first["report"]) == extract_machine_section(second["report"])
