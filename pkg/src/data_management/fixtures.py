# src/data_management/fixtures.py
"""Polítopos y mapas característicos predefinidos, y resolución de literales de la CLI"""
from pathlib import Path
from typing import Dict, List, Optional, Sequence

import numpy as np

from ..core import polytope as poly
from ..core.charmap import CharacteristicMap, CohomologyClass, from_coloring, perturb
from ..core.exceptions import ConfigurationError, DimensionMismatchError
from ..core.gf2linalg import BitMatrix
from ..core.polytope import CombinatorialPolytope
from .json_manager import JSONManager

BUILDERS = (
    "segment", "square", "triangle", "pentagon", "polygon", "simplex", "cube",
    "permutohedron", "permutohedron3",
)


def build_polytope(
    name: str,
    dim: Optional[int] = None,
    gons: Optional[int] = None,
    vertex_cap: Optional[int] = None,
) -> CombinatorialPolytope:
    if name == "segment":
        return poly.segment()
    if name == "square":
        return poly.cube(2)
    if name == "triangle":
        return poly.simplex(2)
    if name == "pentagon":
        return poly.polygon(5)
    if name == "polygon":
        if gons is None:
            raise ConfigurationError("--builder polygon requiere --gons")
        return poly.polygon(gons, vertex_cap)
    if name == "simplex":
        return poly.simplex(dim or 2, vertex_cap)
    if name == "cube":
        return poly.cube(dim or 3, vertex_cap)
    if name == "permutohedron":
        return poly.permutohedron(dim or 3, vertex_cap)
    if name == "permutohedron3":
        return poly.permutohedron(3, vertex_cap)
    raise ConfigurationError(f"builder desconocido {name!r}; opciones: {', '.join(BUILDERS)}")


def coordinate_map(P: CombinatorialPolytope) -> CharacteristicMap:
    """Cubo: las facetas x_i = 0 y x_i = 1 van a e_i (el toro en el cuadrado)"""
    rows = np.zeros((P.m, P.n), dtype=np.uint8)
    for j in range(P.m):
        rows[j, j // 2] = 1
    return CharacteristicMap.create(P, BitMatrix.from_array(rows))


def klein_map(P: CombinatorialPolytope) -> CharacteristicMap:
    """Cuadrado: L, R -> e_1, B -> e_2, T -> e_1 + e_2"""
    return CharacteristicMap.from_rows(P, [[1, 0], [1, 0], [0, 1], [1, 1]])


def standard_simplex_map(P: CombinatorialPolytope) -> CharacteristicMap:
    """Símplice: F_i -> e_i para i <= n, F_{n+1} -> e_1 + ... + e_n"""
    rows = np.zeros((P.m, P.n), dtype=np.uint8)
    for j in range(P.n):
        rows[j, j] = 1
    rows[P.n, :] = 1
    return CharacteristicMap.create(P, BitMatrix.from_array(rows))


def alternating_polygon_map(P: CombinatorialPolytope) -> CharacteristicMap:
    """Polígono: e_1, e_2 alternados; con m impar la última arista va a e_1 + e_2"""
    rows = [[1, 0] if j % 2 == 0 else [0, 1] for j in range(P.m)]
    if P.m % 2:
        rows[-1] = [1, 1]
    return CharacteristicMap.from_rows(P, rows)


def permutohedron_coloring(P: CombinatorialPolytope) -> List[int]:
    """Color de la faceta S = |S|"""
    return [len(name[1:].split(",")) if "," in name else len(name) - 1 for name in P.facet_names]


def coloring_map(P: CombinatorialPolytope) -> CharacteristicMap:
    return from_coloring(P, permutohedron_coloring(P))


def first_color_one_facet(P: CombinatorialPolytope) -> int:
    return permutohedron_coloring(P).index(1)


def nu_map(P: CombinatorialPolytope) -> CharacteristicMap:
    """Perturbación ν en la primera faceta de color 1 con a = e_2"""
    a = np.zeros(P.n, dtype=np.uint8)
    a[1] = 1
    return perturb(coloring_map(P), first_color_one_facet(P), a)


_PRESETS = {
    "torus": coordinate_map,
    "coordinate": coordinate_map,
    "klein": klein_map,
    "standard": standard_simplex_map,
    "alternating": alternating_polygon_map,
    "coloring": coloring_map,
    "nu": nu_map,
}


def default_charmap(builder: Optional[str], P: CombinatorialPolytope) -> CharacteristicMap:
    if builder in ("segment", "square", "cube"):
        return coordinate_map(P)
    if builder in ("triangle", "simplex"):
        return standard_simplex_map(P)
    if builder in ("pentagon", "polygon"):
        return alternating_polygon_map(P)
    if builder in ("permutohedron", "permutohedron3"):
        return coloring_map(P)
    raise ConfigurationError("se requiere --lambda para polítopos leídos de archivo")


def resolve_charmap(
    spec: Optional[str],
    builder: Optional[str],
    P: CombinatorialPolytope,
    json_manager: JSONManager,
) -> CharacteristicMap:
    """--lambda: archivo .json, preset (torus, klein, coloring, nu, ...) o filas '10,10,01,01'"""
    if spec is None:
        return default_charmap(builder, P)
    if spec in _PRESETS:
        return _PRESETS[spec](P)
    if spec.endswith(".json") or Path(spec).is_file():
        return json_manager.load_charmap(spec, P)
    rows = [r.strip() for r in spec.split(",")]
    if len(rows) != P.m or any(len(r) != P.n or set(r) - {"0", "1"} for r in rows):
        raise DimensionMismatchError(f"--lambda debe tener {P.m} filas de {P.n} bits")
    return CharacteristicMap.from_rows(P, [[int(b) for b in r] for r in rows])


def resolve_facet(spec: str, P: CombinatorialPolytope) -> int:
    if spec in P.facet_names:
        return P.facet_index(spec)
    if spec.isdigit() and int(spec) < P.m:
        return int(spec)
    return P.facet_index(spec)


def resolve_class(
    spec: Optional[str],
    charmap: CharacteristicMap,
    json_manager: JSONManager,
) -> CohomologyClass:
    """--class: archivo .json, vector 0/1 ('1000') o nombres de facetas ('L,B')"""
    if spec is None:
        raise ConfigurationError("se requiere --class")
    P = charmap.polytope
    if spec.endswith(".json") or Path(spec).is_file():
        return json_manager.load_class(spec, charmap)
    compact = spec.replace(",", "").strip()
    if len(compact) == P.m and set(compact) <= {"0", "1"} and not set(spec.split(",")) & set(P.facet_names):
        return CohomologyClass.of(charmap, [int(b) for b in compact])
    names = [s.strip() for s in spec.split(",") if s.strip()]
    return CohomologyClass.indicator(charmap, [resolve_facet(name, P) for name in names])


def parse_hyperplane(spec: str, n: int) -> Sequence[float]:
    """'l_1,...,l_n,c' -> (l, c)"""
    try:
        values = [float(x) for x in spec.split(",")]
    except ValueError as e:
        raise ConfigurationError(f"--hyperplane inválido: {spec!r}") from e
    if len(values) != n + 1:
        raise ConfigurationError(f"--hyperplane necesita {n} coeficientes y un umbral")
    return tuple(values[:n]), values[n]


def three_way_fixtures() -> Dict[str, CharacteristicMap]:
    """Los pares (P, Λ) sobre los que se comparan h-vector, anillo y oráculo"""
    square = poly.cube(2)
    permuto = poly.permutohedron(3)
    return {
        "segment": coordinate_map(poly.segment()),
        "square/torus": coordinate_map(square),
        "square/klein": klein_map(square),
        "pentagon": alternating_polygon_map(poly.polygon(5)),
        "triangle": standard_simplex_map(poly.simplex(2)),
        "cube3": coordinate_map(poly.cube(3)),
        "permutohedron3/coloring": coloring_map(permuto),
        "permutohedron3/nu": nu_map(permuto),
    }
