# tests/unit/test_quotientcomplex.py
import pytest

from src.core import quotientcomplex as qc
from src.core.charmap import CohomologyClass
from src.core.exceptions import (
    CharacteristicMapError,
    ConnectedPreimageError,
    DimensionMismatchError,
    GeometryRequiredError,
    SizeLimitError,
)
from src.core.gf2linalg import BitMatrix
from src.data_management import fixtures
from src.core import polytope as poly


def test_torus_complex(torus):
    complex_ = qc.small_cover_complex(torus)
    assert complex_.cell_counts() == (4, 8, 4)
    assert qc.betti(complex_) == (1, 2, 1)
    assert qc.euler_characteristic(complex_) == 0
    assert qc.boundary_squared_is_zero(complex_)
    dump = complex_.to_dict()
    assert dump["n"] == 2 and dump["N"] == 2
    assert len(dump["cells"]) == 16


@pytest.mark.parametrize(
    "name, expected",
    [
        ("klein", (1, 2, 1)),
        ("triangle_map", (1, 1, 1)),
        ("pentagon_map", (1, 3, 1)),
        ("cube3_map", (1, 3, 3, 1)),
    ],
)
def test_small_cover_betti(name, expected, request):
    complex_ = qc.small_cover_complex(request.getfixturevalue(name))
    assert qc.betti(complex_) == expected
    assert qc.boundary_squared_is_zero(complex_)


def test_projective_plane_cells(triangle_map):
    complex_ = qc.small_cover_complex(triangle_map)
    assert complex_.cell_counts() == (3, 6, 4)
    assert qc.euler_characteristic(complex_) == 1


def test_double_covers(torus, triangle_map):
    L = CohomologyClass.indicator(torus, [0])
    assert qc.betti(qc.double_cover_complex(torus, L)) == (1, 2, 1)
    trivial = CohomologyClass.of(torus, [0, 0, 0, 0])
    assert qc.betti(qc.double_cover_complex(torus, trivial)) == (2, 4, 2)
    F1 = CohomologyClass.indicator(triangle_map, [0])
    assert qc.betti(qc.double_cover_complex(triangle_map, F1)) == (1, 0, 1)


def test_permutohedron_double_cover_cells(nu_map):
    G = fixtures.first_color_one_facet(nu_map.polytope)
    cover = qc.double_cover_complex(nu_map, CohomologyClass.indicator(nu_map, [G]))
    assert cover.cell_counts() == (48, 144, 112, 16)
    assert sum(cover.cell_counts()) == 320


def test_build_errors(square, torus):
    with pytest.raises(SizeLimitError):
        qc.small_cover_complex(torus, cell_cap=10)
    with pytest.raises(CharacteristicMapError):
        qc.build_complex(square, BitMatrix.from_rows([[1, 0], [1, 0], [1, 0], [0, 1]]))
    with pytest.raises(DimensionMismatchError):
        qc.build_complex(square, BitMatrix.from_rows([[1], [1], [1], [1]]))


def test_preimage_components(square, torus):
    assert qc.preimage_components(square, torus.matrix, (0,)) == 1
    doubled = torus.matrix.append_column([0, 0, 0, 0])
    assert qc.preimage_components(square, doubled, ()) == 2
    cover = qc.build_complex(square, doubled)
    assert qc.subcomplex_components(cover, ()) == 2
    assert qc.subcomplex_components(cover, (0,)) == 2


def test_dual_graph(square, torus):
    graph = qc.build_dual_graph(square, torus.matrix)
    assert len(graph.nodes) == 4
    assert len(graph.edges) == 8
    assert graph.is_connected()
    assert graph.graph.number_of_edges() == 8
    cycles = graph.fundamental_cycles()
    assert cycles.shape == (5, 6)
    # cada ciclo cierra: Σ paridad_i λ(F_i) = 0, y no hay aristas de sección
    assert not ((cycles[:, :4].astype(int) @ torus.matrix.to_array().astype(int)) % 2).any()
    assert not cycles[:, 4:].any()


def test_dual_graph_components(square, torus):
    doubled = torus.matrix.append_column([0, 0, 0, 0])
    graph = qc.build_dual_graph(square, doubled)
    assert len(graph.nodes) == 8
    assert not graph.is_connected()


def test_vertical_section_class(square, torus):
    result = qc.section_to_class(torus, square.geometry, (1.0, 0.0), 0.5)
    assert result.cohomology_class.names() == ["L"]
    assert result.other_class.equivalent(result.cohomology_class)
    assert result.h_S == (1, 1)
    assert result.psi == (1, 0)
    assert qc.submanifold_betti(torus, result) == (1, 1)


def test_section_errors(triangle_map, torus):
    triangle = triangle_map.polytope
    with pytest.raises(ConnectedPreimageError, match="connected preimage: not a section class"):
        qc.section_to_class(triangle_map, triangle.geometry, (1.0, 0.0), 0.5)
    with pytest.raises(GeometryRequiredError):
        qc.section_to_class(torus, None, (1.0, 0.0), 0.5)


def test_facet_section_class(triangle_map):
    result = qc.facet_section_class(triangle_map, 0)
    assert result.h_S == (1, 1)
    assert result.facet == 0
    assert qc.submanifold_betti(triangle_map, result) == (1, 1)


def test_facet_section_on_segment():
    segment_map = fixtures.coordinate_map(poly.segment())
    result = qc.facet_section_class(segment_map, 0)
    assert result.h_S == (1,)
    assert qc.submanifold_betti(segment_map, result) == (1,)


def test_find_section_classes(square, torus):
    found = qc.find_section_classes(torus, square.geometry, directions=20, seed=3)
    names = {tuple(r.cohomology_class.names()) for r in found}
    assert names
    assert names <= {("L",), ("B",)}


def test_pentagon_frontier_violations(pentagon_map):
    P = pentagon_map.polytope
    violations = qc.frontier_check(pentagon_map, P.geometry, (0.0, 1.0))
    pairs = {(x.vertex, x.witness_vertex) for x in violations}
    assert pairs == {("B", "C"), ("C", "D")}
    groups = qc.group_violations(violations)
    assert list(groups) == [(1, 1)]


def test_pentagon_e1_table(pentagon_map):
    P = pentagon_map.polytope
    table = qc.filtration_e1_table(pentagon_map, P.geometry, (0.0, 1.0))
    assert table.totals == (1, 3, 1)
    assert table.entries[0] == (1, -1, "E")
    assert table.entries[-1] == (5, -3, "A")
    assert table.dimension(1, -1) == 1
    assert table.dimension(1, 0) == 0


def test_cover_e1_defect(pentagon_map):
    P = pentagon_map.polytope
    w = CohomologyClass.indicator(pentagon_map, [0])
    assert qc.cover_e1_defect(pentagon_map, P.geometry, (0.0, 1.0), w) == (1, 2, 1)
    trivial = CohomologyClass.of(pentagon_map, [0] * 5)
    assert qc.cover_e1_defect(pentagon_map, P.geometry, (0.0, 1.0), trivial) == (0, 0, 0)
