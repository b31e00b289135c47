# tests/unit/test_fixtures.py
import json

import pytest

from src.core.exceptions import ConfigurationError, DimensionMismatchError
from src.data_management import fixtures
from src.data_management.json_manager import JSONManager
from src.utils import metrics


@pytest.fixture
def manager(tmp_path):
    return JSONManager(tmp_path)


@pytest.mark.parametrize(
    "name, kwargs, n, m",
    [
        ("segment", {}, 1, 2),
        ("square", {}, 2, 4),
        ("triangle", {}, 2, 3),
        ("pentagon", {}, 2, 5),
        ("polygon", {"gons": 7}, 2, 7),
        ("simplex", {"dim": 3}, 3, 4),
        ("cube", {}, 3, 6),
        ("permutohedron3", {}, 3, 14),
    ],
)
def test_builders(name, kwargs, n, m):
    P = fixtures.build_polytope(name, **kwargs)
    assert (P.n, P.m) == (n, m)
    assert fixtures.default_charmap(name, P).polytope is P


def test_builder_errors():
    with pytest.raises(ConfigurationError):
        fixtures.build_polytope("polygon")
    with pytest.raises(ConfigurationError):
        fixtures.build_polytope("dodecahedron")


def test_permutohedron_coloring(permutohedron3):
    assert fixtures.permutohedron_coloring(permutohedron3) == [1] * 4 + [2] * 6 + [3] * 4
    assert fixtures.first_color_one_facet(permutohedron3) == 0


def test_resolve_charmap(square, manager, tmp_path):
    literal = fixtures.resolve_charmap("10,10,01,01", "square", square, manager)
    assert literal.as_rows() == fixtures.coordinate_map(square).as_rows()
    assert fixtures.resolve_charmap("klein", "square", square, manager).as_rows()[3] == [1, 1]
    path = tmp_path / "map.json"
    path.write_text(json.dumps({"lambda": [[1, 0], [1, 0], [0, 1], [1, 1]]}))
    assert fixtures.resolve_charmap(str(path), None, square, manager).as_rows()[3] == [1, 1]
    with pytest.raises(DimensionMismatchError):
        fixtures.resolve_charmap("10,10,01", "square", square, manager)
    with pytest.raises(ConfigurationError):
        fixtures.default_charmap(None, square)


def test_resolve_class(torus, manager):
    assert fixtures.resolve_class("L,B", torus, manager).vector == (1, 0, 1, 0)
    assert fixtures.resolve_class("0100", torus, manager).vector == (0, 1, 0, 0)
    assert fixtures.resolve_class("1,0,0,0", torus, manager).vector == (1, 0, 0, 0)
    assert fixtures.resolve_class("3", torus, manager).vector == (0, 0, 0, 1)
    with pytest.raises(ConfigurationError):
        fixtures.resolve_class(None, torus, manager)


def test_parse_hyperplane():
    assert fixtures.parse_hyperplane("1,0,0.5", 2) == ((1.0, 0.0), 0.5)
    with pytest.raises(ConfigurationError):
        fixtures.parse_hyperplane("1,0.5", 2)
    with pytest.raises(ConfigurationError):
        fixtures.parse_hyperplane("a,b,c", 2)


def test_three_way_fixture_catalog():
    catalog = fixtures.three_way_fixtures()
    assert len(catalog) == 8
    assert catalog["square/klein"].as_rows() != catalog["square/torus"].as_rows()


def test_metrics_helpers():
    assert metrics.verdict((1, 2, 1), [1, 2, 1]) == metrics.AGREE
    assert metrics.verdict((1, 2, 1), (1, 3, 1)) == metrics.DISAGREE
    assert metrics.kunneth_with_circle((1, 2, 1)) == (1, 3, 3, 1)
    assert metrics.alternating_sum((1, 3, 1)) == -1
    assert metrics.is_palindromic((1, 11, 11, 1))
    assert metrics.format_vector((5, 5)) == "(5,5)"
