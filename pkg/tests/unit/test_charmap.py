# tests/unit/test_charmap.py
import itertools

import numpy as np
import pytest

from src.core import polytope as poly
from src.core.charmap import (
    CharacteristicMap,
    CohomologyClass,
    all_classes,
    from_coloring,
    has_odd_weight,
    perturb,
    prism_charmap,
    restrict_to_facet,
    restrict_to_section,
    validate,
)
from src.core.exceptions import (
    CharacteristicMapError,
    ColoringError,
    DimensionMismatchError,
    FacetIndexError,
)
from src.core.gf2linalg import BitMatrix
from src.data_management import fixtures


def test_validate_reports_offending_vertices(square):
    matrix = BitMatrix.from_rows([[1, 0], [1, 0], [1, 0], [0, 1]])
    offending = validate(square, matrix)
    assert [square.label(v) for v in offending] == ["L/B", "R/B"]
    with pytest.raises(CharacteristicMapError) as excinfo:
        CharacteristicMap.create(square, matrix)
    assert excinfo.value.offending == ["L/B", "R/B"]


def test_validate_shape_mismatch(square):
    with pytest.raises(DimensionMismatchError):
        CharacteristicMap.from_rows(square, [[1, 0], [0, 1], [1, 1]])


def test_torus_forms(torus):
    assert torus.n == 2 and torus.m == 4
    assert torus.linear_forms.to_array().tolist() == [[1, 1, 0, 0], [0, 0, 1, 1]]


def test_coloring(square):
    charmap = from_coloring(square, [1, 1, 2, 2])
    assert charmap.as_rows() == [[1, 0], [1, 0], [0, 1], [0, 1]]
    with pytest.raises(ColoringError):
        from_coloring(square, [1, 2, 2, 1])
    with pytest.raises(ColoringError):
        from_coloring(square, [0, 1, 2, 2])


def test_permutohedron_coloring_and_perturbation(permutohedron3, nu_map):
    assert nu_map.row(0).tolist() == [1, 1, 0]
    assert all(nu_map.row(j).tolist() == [0, 1, 0] for j in range(4, 10))
    assert has_odd_weight([0, 1, 0])
    assert not has_odd_weight([1, 1, 0])


def test_perturbation_can_break_the_map(torus):
    assert perturb(torus, 0, [0, 1]).as_rows()[0] == [1, 1]
    with pytest.raises(CharacteristicMapError):
        perturb(torus, 0, [1, 0])
    with pytest.raises(FacetIndexError):
        perturb(torus, 7, [1, 0])


def test_zero_perturbation_is_identity(torus, permutohedron3):
    assert perturb(torus, 0, [0, 0]).as_rows() == torus.as_rows()
    coloring = from_coloring(permutohedron3, fixtures.permutohedron_coloring(permutohedron3))
    assert perturb(coloring, 0, [0, 0, 0]).as_rows() == coloring.as_rows()


def test_canonical_representatives_keep_low_facets(torus):
    R = CohomologyClass.indicator(torus, [1])
    T = CohomologyClass.indicator(torus, [3])
    assert R.canonical_rep().tolist() == [1, 0, 0, 0]
    assert T.canonical_rep().tolist() == [0, 0, 1, 0]
    assert R.equivalent(CohomologyClass.indicator(torus, [0]))
    assert (R + CohomologyClass.indicator(torus, [0])).is_trivial()
    assert CohomologyClass.indicator(torus, [0, 2]).names() == ["L", "B"]


def test_class_length_is_checked(torus):
    with pytest.raises(DimensionMismatchError):
        CohomologyClass.of(torus, [1, 0])
    with pytest.raises(FacetIndexError):
        CohomologyClass.indicator(torus, [4])


def test_all_classes(torus, pentagon_map):
    classes = all_classes(torus)
    assert [c.vector for c in classes] == [(0, 0, 0, 0), (1, 0, 0, 0), (0, 0, 1, 0), (1, 0, 1, 0)]
    assert classes[0].is_trivial()
    assert not any(c.is_trivial() for c in classes[1:])
    pentagon_classes = all_classes(pentagon_map)
    assert len(pentagon_classes) == 8
    reps = {tuple(c.canonical_rep()) for c in pentagon_classes}
    assert len(reps) == 8


def test_prism_map(torus):
    lam_w = prism_charmap(torus, [1, 0, 0, 0])
    assert lam_w.polytope.n == 3
    assert lam_w.as_rows() == [[1, 0, 1], [1, 0, 0], [0, 1, 0], [0, 1, 0], [0, 0, 1], [0, 0, 1]]
    pulled = CohomologyClass.indicator(torus, [0]).pullback_to_prism()
    assert pulled.vector == (0, 0, 0, 0, 1, 1)
    assert pulled.equivalent(CohomologyClass.indicator(pulled.charmap, [0]))


@pytest.mark.parametrize("name", sorted(fixtures.three_way_fixtures()))
def test_prism_map_for_every_class(name):
    charmap = fixtures.three_way_fixtures()[name]
    if charmap.m - charmap.n > 6:
        pytest.skip("demasiadas clases")
    for c in itertools.product((0, 1), repeat=charmap.m):
        lam_w = prism_charmap(charmap, c)
        assert validate(lam_w.polytope, lam_w.matrix) == []


def test_pentagon_prism_map(pentagon_map):
    AB_CD = CohomologyClass.indicator(pentagon_map, [0, 2])
    assert AB_CD.names() == ["AB", "CD"]
    lam_w = prism_charmap(pentagon_map, AB_CD.vector)
    assert (lam_w.polytope.n, lam_w.polytope.m) == (3, 7)
    assert validate(lam_w.polytope, lam_w.matrix) == []


def test_restrict_to_facet(cube3_map):
    induced = restrict_to_facet(cube3_map, 0)
    assert induced.polytope.facet_names == ("x2=0", "x2=1", "x3=0", "x3=1")
    assert induced.as_rows() == [[1, 0], [1, 0], [0, 1], [0, 1]]


def test_restrict_to_section(square, torus):
    section = poly.slice_polytope(square, square.geometry, (1.0, 0.0), 0.5)
    induced = restrict_to_section(torus, section)
    assert induced.polytope.n == 1
    assert induced.as_rows() == [[1], [1]]
    assert np.array_equal(induced.matrix.to_array(), np.array([[1], [1]], dtype=np.uint8))
