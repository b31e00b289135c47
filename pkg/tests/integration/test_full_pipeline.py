# tests/integration/test_full_pipeline.py
import pytest

from src.core import polytope as poly
from src.core import quotientcomplex as qc
from src.core.charmap import CohomologyClass
from src.data_management import fixtures
from src.evaluation.betti_evaluator import BettiEvaluator, all_agree
from src.utils.config import Settings


@pytest.fixture(scope="module")
def evaluator():
    return BettiEvaluator(Settings(log_level="WARNING"))


@pytest.mark.parametrize("name", sorted(fixtures.three_way_fixtures()))
def test_three_way_agreement(evaluator, name):
    charmap = fixtures.three_way_fixtures()[name]
    check = evaluator.three_way_check(charmap, name)
    assert check.ok, check.vectors


def test_permutohedron_betti(evaluator, nu_map):
    assert evaluator.three_way_check(nu_map).vectors["oracle"] == (1, 11, 11, 1)


def test_pentagon_frontier_gap(pentagon_map):
    P = pentagon_map.polytope
    violations = qc.frontier_check(pentagon_map, P.geometry, (0.0, 1.0))
    assert len(qc.group_violations(violations)) == 1
    table = qc.filtration_e1_table(pentagon_map, P.geometry, (0.0, 1.0))
    assert table.totals == qc.betti(qc.small_cover_complex(pentagon_map))


@pytest.mark.parametrize(
    "fixture, direction, threshold, expected",
    [
        ("torus", (1.0, 0.0), 0.5, (1, 2, 1)),
        ("cube3_map", (0.0, 0.0, 1.0), 0.5, (1, 3, 3, 1)),
    ],
)
def test_hyperplane_sections(evaluator, request, fixture, direction, threshold, expected):
    charmap = request.getfixturevalue(fixture)
    section = qc.section_to_class(charmap, charmap.polytope.geometry, direction, threshold)
    check = evaluator.section_check(charmap, section)
    assert check.ok, check.vectors
    assert check.vectors["formula"] == expected


def test_facet_sections(evaluator, triangle_map, nu_map):
    triangle = evaluator.section_check(triangle_map, qc.facet_section_class(triangle_map, 0))
    assert triangle.ok and triangle.vectors["formula"] == (1, 0, 1)
    G = fixtures.first_color_one_facet(nu_map.polytope)
    nu = evaluator.section_check(nu_map, qc.facet_section_class(nu_map, G))
    assert nu.ok, nu.vectors
    assert nu.vectors["oracle"] == (1, 17, 17, 1)


@pytest.mark.parametrize("name, classes", [("torus", 4), ("pentagon_map", 8)])
def test_exhaustive_sweeps(evaluator, request, name, classes):
    charmap = request.getfixturevalue(name)
    results = evaluator.exhaustive_gysin_sweep(charmap)
    assert len(results) == classes
    assert all_agree(results)
    trivial = results[0]
    assert trivial.notes == ["disconnected"]
    assert trivial.vectors["oracle"] == tuple(2 * h for h in poly.h_vector(charmap.polytope))
    assert all(r.notes == [] for r in results[1:])


@pytest.mark.parametrize("name, expected", [("torus", (1, 3, 3, 1)), ("pentagon_map", (1, 5, 5, 1))])
def test_prism_kunneth(evaluator, request, name, expected):
    charmap = request.getfixturevalue(name)
    check = evaluator.prism_kunneth_check(charmap, CohomologyClass.indicator(charmap, [0]))
    assert check.ok, check.vectors
    assert check.vectors["kunneth"] == expected


@pytest.mark.parametrize("builder", ["segment", "square", "triangle", "pentagon", "cube", "permutohedron3"])
def test_morse_independence(evaluator, builder):
    check = evaluator.morse_independence(fixtures.build_polytope(builder), count=20, seed=11)
    assert check.ok
    assert len(check.vectors) == 21


@pytest.mark.parametrize("name", sorted(fixtures.three_way_fixtures()))
def test_property_suite(evaluator, name):
    results = evaluator.property_suite(fixtures.three_way_fixtures()[name])
    assert all(r.passed for r in results), [r.to_dict() for r in results if not r.passed]


def test_segment_everything(evaluator):
    segment_map = fixtures.coordinate_map(poly.segment())
    assert evaluator.three_way_check(segment_map).vectors["oracle"] == (1, 1)
    results = evaluator.exhaustive_gysin_sweep(segment_map)
    assert [r.vectors["oracle"] for r in results] == [(2, 2), (1, 1)]
