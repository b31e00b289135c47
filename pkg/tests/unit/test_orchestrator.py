# tests/unit/test_orchestrator.py
import dataclasses
import json

import pytest

from src.core.orchestrator import ComputationOrchestrator
from src.utils.config import RunConfig
from src.utils.metrics import AGREE


@pytest.fixture
def orchestrator(settings):
    return ComputationOrchestrator(settings=settings)


def test_hvector_pentagon(orchestrator):
    result = orchestrator.run(RunConfig(subcommand="hvector", builder="pentagon"))
    assert result["ok"]
    assert result["notes"][0] == "f = (5,5); h = (1,3,1)"
    assert result["h_vector"] == [1, 3, 1]
    assert result["faces_by_dimension"] == [5, 5, 1]


def test_betti_methods(orchestrator):
    both = orchestrator.run(RunConfig(subcommand="betti", builder="square", lambda_spec="klein"))
    assert both["ok"] and both["verdict"] == AGREE
    assert both["checks"][0]["vectors"]["oracle"] == [1, 2, 1]
    ring = orchestrator.run(RunConfig(subcommand="betti", builder="cube", method="ring"))
    assert ring["checks"][0]["vectors"] == {"h": [1, 3, 3, 1], "ring": [1, 3, 3, 1]}


def test_betti_rejects_non_characteristic_map(orchestrator):
    result = orchestrator.run(RunConfig(subcommand="betti", builder="square", lambda_spec="10,10,10,01"))
    assert not result["ok"]
    assert result["error"].startswith("CharacteristicMapError")
    assert "L/B" in result["error"]


def test_doublecover_trivial_class(orchestrator):
    result = orchestrator.run(RunConfig(subcommand="doublecover", builder="square", class_spec="L,R"))
    assert result["ok"]
    assert result["checks"][0]["vectors"]["oracle"] == [2, 4, 2]
    assert "doublecover: disconnected" in result["notes"]
    assert "w = {L,R}" in result["notes"]


def test_section_by_hyperplane_and_facet(orchestrator):
    vertical = orchestrator.run(RunConfig(subcommand="section", builder="square", hyperplane="1,0,0.5"))
    assert vertical["ok"]
    assert vertical["class"] == [1, 0, 0, 0]
    assert vertical["section_h_vector"] == [1, 1]
    assert vertical["other_class"] == vertical["class"]
    assert "w' = {L}" in vertical["notes"]
    facet = orchestrator.run(RunConfig(subcommand="section", builder="triangle", facet="0"))
    assert facet["ok"]
    assert facet["checks"][0]["vectors"]["formula"] == [1, 0, 1]
    assert facet["other_class"] == facet["class"]


def test_section_errors(orchestrator):
    both = orchestrator.run(RunConfig(subcommand="section", builder="square", facet="L", hyperplane="1,0,0.5"))
    assert both["error"].startswith("ConfigurationError")
    assert both["invalid_request"]
    connected = orchestrator.run(RunConfig(subcommand="section", builder="triangle", hyperplane="1,0,0.5"))
    assert not connected["ok"]
    assert "connected preimage: not a section class" in connected["error"]
    assert not connected["invalid_request"]


def test_demo_pentagon_gap(orchestrator):
    result = orchestrator.run(RunConfig(subcommand="demo", demo="pentagon-gap"))
    assert result["ok"]
    assert result["violation_classes"] == [[1, 1]]
    assert "violation v=B, w=C" in result["notes"]
    assert "cover E1 defect for w = {AB}: (1,2,1)" in result["notes"]


def test_demo_prism(orchestrator):
    result = orchestrator.run(RunConfig(subcommand="demo", demo="prism-proposition"))
    assert result["ok"]
    assert result["checks"][0]["vectors"]["kunneth"] == [1, 3, 3, 1]


def test_demo_permutohedron(orchestrator):
    result = orchestrator.run(RunConfig(subcommand="demo", demo="permutohedron-example"))
    assert result["ok"] and result["verdict"] == AGREE
    coloring, nu, section = result["checks"]
    assert coloring["vectors"]["oracle"] == [1, 11, 11, 1]
    assert nu["vectors"]["oracle"] == [1, 11, 11, 1]
    assert section["vectors"]["oracle"] == [1, 17, 17, 1]


def test_unknown_demo_and_cap(orchestrator):
    unknown = orchestrator.run(RunConfig(subcommand="demo", demo="nope"))
    assert unknown["error"].startswith("ConfigurationError")
    capped = orchestrator.run(RunConfig(subcommand="betti", builder="square", cap=10))
    assert capped["error"].startswith("SizeLimitError")
    again = orchestrator.run(RunConfig(subcommand="betti", builder="square"))
    assert again["ok"]
    status = orchestrator.get_system_status()
    assert status["run_state"] == {"runs_completed": 1, "runs_failed": 2, "last_command": "betti"}


def test_save_runs(settings, tmp_path):
    orchestrator = ComputationOrchestrator(settings=dataclasses.replace(settings, save_runs=True))
    orchestrator.run(RunConfig(subcommand="hvector", builder="triangle"))
    saved = json.loads((tmp_path / "output" / "hvector.json").read_text())
    assert saved["h_vector"] == [1, 1, 1]
    assert saved["schema"] == 1
