# tests/integration/test_cli.py
import json

import pytest
from typer.testing import CliRunner

from main import app

runner = CliRunner()


@pytest.fixture(autouse=True)
def quiet_environment(monkeypatch):
    monkeypatch.setenv("SMALLCOVER_LOG_LEVEL", "WARNING")
    monkeypatch.delenv("SMALLCOVER_CONFIG", raising=False)
    monkeypatch.delenv("SMALLCOVER_CELL_CAP", raising=False)
    monkeypatch.delenv("SMALLCOVER_LOG_FILE", raising=False)


def test_hvector_pentagon():
    result = runner.invoke(app, ["hvector", "--builder", "pentagon"])
    assert result.exit_code == 0, result.output
    assert "f = (5,5); h = (1,3,1)" in result.output


def test_betti_json_is_deterministic():
    args = ["betti", "--builder", "square", "--lambda", "klein", "--format", "json"]
    first = runner.invoke(app, args)
    second = runner.invoke(app, args)
    assert first.exit_code == 0, first.output
    assert first.output == second.output
    payload = json.loads(first.output)
    assert payload["verdict"] == "AGREE"
    assert payload["schema"] == 1


def test_invalid_lambda_lists_vertices():
    result = runner.invoke(app, ["betti", "--builder", "square", "--lambda", "10,10,10,01"])
    assert result.exit_code == 1
    assert "L/B" in result.output


def test_doublecover_class_by_name():
    result = runner.invoke(app, ["doublecover", "--builder", "square", "--class", "L", "--format", "json"])
    assert result.exit_code == 0, result.output
    assert json.loads(result.output)["checks"][0]["vectors"]["gysin"] == [1, 2, 1]


def test_section_connected_preimage():
    result = runner.invoke(app, ["section", "--builder", "triangle", "--hyperplane", "1,0,0.5"])
    assert result.exit_code == 1
    assert "connected preimage: not a section class" in result.output


def test_ambiguous_input_exits_with_usage_error():
    result = runner.invoke(app, ["hvector"])
    assert result.exit_code == 2
    assert "exactly one input source" in result.output


@pytest.mark.parametrize("name", ["pentagon-gap", "permutohedron-example", "prism-proposition"])
def test_demos(name):
    result = runner.invoke(app, ["demo", name])
    assert result.exit_code == 0, result.output


def test_permutohedron_demo_json():
    result = runner.invoke(app, ["demo", "permutohedron-example", "--format", "json"])
    assert result.exit_code == 0, result.output
    payload = json.loads(result.output)
    assert payload["verdict"] == "AGREE"
    assert payload["checks"][-1]["vectors"]["oracle"] == [1, 17, 17, 1]


@pytest.mark.parametrize(
    "args",
    [
        ["demo", "nope"],
        ["section", "--builder", "square", "--facet", "L", "--hyperplane", "1,0,0.5"],
    ],
)
def test_invalid_request_inside_run_exits_with_usage_error(args):
    result = runner.invoke(app, args)
    assert result.exit_code == 2
    assert "ConfigurationError" in result.output


def test_verify_square():
    result = runner.invoke(app, ["verify", "--builder", "square", "--format", "json"])
    assert result.exit_code == 0, result.output
    payload = json.loads(result.output)
    assert all(p["passed"] for p in payload["properties"])
