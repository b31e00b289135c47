# src/core/polytope.py
"""
Modelo combinatorio (y opcionalmente geométrico) de un polítopo simple.

Un polítopo de dimensión n con m facetas se describe por su complejo dual:
cada vértice es el conjunto (ordenado) de las n facetas que lo contienen.
Las caras de codimensión k son los k-subconjuntos contenidos en algún vértice.
Se usa la indexación f_i = número de caras de codimensión i+1.
"""
from __future__ import annotations

import itertools
import logging
import math
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from .exceptions import (
    DimensionMismatchError,
    DisconnectedComplexError,
    EmptySectionError,
    FacetIndexError,
    GeometryRequiredError,
    NonGenericError,
    NonSimpleError,
    PolytopeError,
    RidgeConditionError,
    SizeLimitError,
)

logger = logging.getLogger(__name__)

Vertex = Tuple[int, ...]
Face = Tuple[int, ...]

DEFAULT_EPSILON = 1e-9
DEFAULT_VERTEX_CAP = 100_000

# Pentágono ABCDE convexo con y(A) > y(B) > y(C) > y(D) > y(E)
PENTAGON_COORDS = ((0, 10), (3, 8), (4, 5), (3, 2), (0, 0))


@dataclass(frozen=True)
class GeometricRealization:
    """Coordenadas reales de cada vértice (claves: conjuntos de facetas)"""

    coordinates: Mapping[Vertex, Tuple[float, ...]]

    def point(self, vertex: Vertex) -> np.ndarray:
        return np.asarray(self.coordinates[vertex], dtype=float)

    def heights(self, direction: Sequence[float]) -> Dict[Vertex, float]:
        l = np.asarray(direction, dtype=float)
        return {v: float(np.dot(l, self.point(v))) for v in self.coordinates}


@dataclass(frozen=True)
class FaceLattice:
    """Caras por codimensión; faces[k] son los k-subconjuntos ordenados lexicográficamente"""

    n: int
    faces: Tuple[Tuple[Face, ...], ...]

    @cached_property
    def _index(self) -> frozenset:
        return frozenset(itertools.chain.from_iterable(self.faces))

    def __contains__(self, face: Face) -> bool:
        return tuple(sorted(face)) in self._index

    def codim(self, k: int) -> Tuple[Face, ...]:
        return self.faces[k]

    def counts(self) -> Tuple[int, ...]:
        return tuple(len(level) for level in self.faces)

    def cofaces(self, face: Face, m: int) -> List[Face]:
        """Caras de codimensión |T|+1 contenidas en la cara T"""
        members = set(face)
        result = []
        for j in range(m):
            if j in members:
                continue
            candidate = tuple(sorted(members | {j}))
            if candidate in self._index:
                result.append(candidate)
        return result

    def all_faces(self) -> List[Face]:
        return [face for level in self.faces for face in level]


@dataclass(frozen=True)
class CombinatorialPolytope:
    n: int
    m: int
    facet_names: Tuple[str, ...]
    vertices: Tuple[Vertex, ...]
    vertex_labels: Tuple[str, ...] = ()
    geometry: Optional[GeometricRealization] = field(default=None, compare=False)

    @cached_property
    def lattice(self) -> FaceLattice:
        return face_lattice(self)

    @cached_property
    def face_vertices(self) -> Dict[Face, Tuple[Vertex, ...]]:
        """Vértices de cada cara (la cara T contiene al vértice v si T ⊆ v)"""
        table: Dict[Face, List[Vertex]] = {}
        for v in self.vertices:
            for k in range(self.n + 1):
                for face in itertools.combinations(v, k):
                    table.setdefault(face, []).append(v)
        return {face: tuple(vs) for face, vs in table.items()}

    def label(self, vertex: Vertex) -> str:
        return self.vertex_labels[self.vertices.index(vertex)]

    def facet_index(self, name: str) -> int:
        try:
            return self.facet_names.index(name)
        except ValueError:
            raise FacetIndexError(f"faceta desconocida: {name!r}") from None

    def edges(self) -> List[Tuple[Face, Vertex, Vertex]]:
        """Aristas (caras de codimensión n-1) con sus dos extremos"""
        result = []
        for face in self.lattice.codim(self.n - 1):
            u, w = self.face_vertices[face]
            result.append((face, u, w))
        return result

    def neighbors(self, vertex: Vertex) -> Dict[int, Vertex]:
        """Vecino de v a lo largo de la arista v \\ {j}, para cada faceta j de v"""
        result = {}
        for j in vertex:
            edge = tuple(i for i in vertex if i != j)
            u, w = self.face_vertices[edge]
            result[j] = w if u == vertex else u
        return result

    def facets_meeting(self, face: Face) -> List[int]:
        """Facetas que cortan a la cara T (las que aparecen en algún vértice de T)"""
        return sorted({j for v in self.face_vertices[tuple(face)] for j in v})


def from_vertex_facets(
    n: int,
    m: int,
    facet_names: Optional[Sequence[str]],
    vertices: Sequence[Sequence[int]],
    vertex_labels: Optional[Sequence[str]] = None,
    coords: Optional[Sequence[Sequence[float]]] = None,
) -> CombinatorialPolytope:
    """Valida los datos del complejo dual y construye el polítopo"""
    if n < 1:
        raise PolytopeError(f"dimensión inválida: {n}")
    names = tuple(facet_names) if facet_names is not None else tuple(f"F{i + 1}" for i in range(m))
    if len(names) != m:
        raise PolytopeError(f"{len(names)} nombres para {m} facetas")
    if len(set(names)) != m:
        raise PolytopeError("nombres de facetas repetidos")
    if coords is not None and len(coords) != len(vertices):
        raise PolytopeError("coords y vertices deben tener el mismo largo")
    if vertex_labels is not None and len(vertex_labels) != len(vertices):
        raise PolytopeError("vertex_labels y vertices deben tener el mismo largo")

    records = []
    for idx, raw in enumerate(vertices):
        facets = tuple(sorted(int(j) for j in raw))
        if any(j < 0 or j >= m for j in facets):
            raise FacetIndexError(f"vértice {list(raw)}: índice de faceta fuera de rango 0..{m - 1}")
        if len(set(facets)) != n:
            raise NonSimpleError(f"vértice {list(raw)} no está en exactamente {n} facetas")
        label = vertex_labels[idx] if vertex_labels is not None else "/".join(names[j] for j in facets)
        point = tuple(float(x) for x in coords[idx]) if coords is not None else None
        records.append((facets, label, point))
    records.sort(key=lambda r: r[0])

    verts = tuple(r[0] for r in records)
    if len(set(verts)) != len(verts):
        raise PolytopeError("vértices repetidos")
    if not verts:
        raise PolytopeError("el polítopo no tiene vértices")

    used = {j for v in verts for j in v}
    missing = sorted(set(range(m)) - used)
    if missing:
        raise PolytopeError(f"facetas sin vértices: {[names[j] for j in missing]}")

    # Condición de cresta: cada (n-1)-símplex está en exactamente dos vértices
    ridges: Counter = Counter()
    for v in verts:
        for ridge in itertools.combinations(v, n - 1):
            ridges[ridge] += 1
    bad = sorted(r for r, count in ridges.items() if count != 2)
    if bad:
        raise RidgeConditionError(f"crestas que no están en exactamente dos vértices: {bad[:5]}")

    # Conexión por crestas
    by_ridge: Dict[Face, List[int]] = {}
    for i, v in enumerate(verts):
        for ridge in itertools.combinations(v, n - 1):
            by_ridge.setdefault(ridge, []).append(i)
    adjacency = nx.Graph()
    adjacency.add_nodes_from(range(len(verts)))
    adjacency.add_edges_from(tuple(pair) for pair in by_ridge.values())
    if not nx.is_connected(adjacency):
        reached = len(nx.node_connected_component(adjacency, 0))
        raise DisconnectedComplexError(
            f"el complejo dual no es conexo ({reached} de {len(verts)} vértices alcanzados)"
        )

    geometry = None
    if coords is not None:
        dims = {len(r[2]) for r in records}
        if dims != {n}:
            raise PolytopeError(f"las coordenadas deben tener dimensión {n}")
        geometry = GeometricRealization({r[0]: r[2] for r in records})

    return CombinatorialPolytope(
        n=n,
        m=m,
        facet_names=names,
        vertices=verts,
        vertex_labels=tuple(r[1] for r in records),
        geometry=geometry,
    )


def face_lattice(P: CombinatorialPolytope) -> FaceLattice:
    levels = []
    for k in range(P.n + 1):
        level = {face for v in P.vertices for face in itertools.combinations(v, k)}
        levels.append(tuple(sorted(level)))
    return FaceLattice(n=P.n, faces=tuple(levels))


def f_vector(P: CombinatorialPolytope) -> Tuple[int, ...]:
    """(f_0, ..., f_{n-1}) con f_i = número de caras de codimensión i+1"""
    counts = P.lattice.counts()
    return tuple(counts[1:])


def faces_by_dimension(P: CombinatorialPolytope) -> Tuple[int, ...]:
    """Número de caras de dimensión 0, 1, ..., n"""
    return tuple(reversed(P.lattice.counts()))


def h_from_f(f: Sequence[int], dim: int) -> Tuple[int, ...]:
    """
    Coeficientes de (t-1)^d + f_0 (t-1)^{d-1} + ... + f_{d-1},
    de mayor a menor grado.
    """
    if len(f) != dim:
        raise ValueError(f"se esperaban {dim} f-números, hay {len(f)}")
    full = (1,) + tuple(int(x) for x in f)
    return tuple(
        sum(full[i] * math.comb(dim - i, k - i) * (-1) ** (k - i) for i in range(k + 1))
        for k in range(dim + 1)
    )


def h_vector(P: CombinatorialPolytope) -> Tuple[int, ...]:
    h = h_from_f(f_vector(P), P.n)
    if any(x < 0 for x in h):
        logger.warning(f"h-vector con entradas negativas {h}: la entrada no es una esfera")
    return h


def dehn_sommerville_holds(h: Sequence[int]) -> bool:
    return tuple(h) == tuple(reversed(h))


# --- constructores ---

def _check_vertex_cap(count: int, cap: Optional[int]) -> None:
    cap = DEFAULT_VERTEX_CAP if cap is None else cap
    if count > cap:
        raise SizeLimitError("vértices", count, cap)


def simplex(n: int, vertex_cap: Optional[int] = None) -> CombinatorialPolytope:
    """Símplice estándar: facetas x_i = 0 (i = 1..n) y x_1 + ... + x_n = 1"""
    if n < 1:
        raise PolytopeError("simplex requiere n >= 1")
    _check_vertex_cap(n + 1, vertex_cap)
    vertices, coords = [], []
    for missing in range(n + 1):
        vertices.append([j for j in range(n + 1) if j != missing])
        point = [0.0] * n
        if missing < n:
            point[missing] = 1.0
        coords.append(point)
    return from_vertex_facets(n, n + 1, None, vertices, coords=coords)


def cube(n: int, vertex_cap: Optional[int] = None) -> CombinatorialPolytope:
    """Cubo [0,1]^n; facetas en orden x_1=0, x_1=1, x_2=0, ..."""
    if n < 1:
        raise PolytopeError("cube requiere n >= 1")
    _check_vertex_cap(2 ** n, vertex_cap)
    if n == 2:
        names = ["L", "R", "B", "T"]
    else:
        names = [f"x{i + 1}={b}" for i in range(n) for b in (0, 1)]
    vertices, coords = [], []
    for point in itertools.product((0, 1), repeat=n):
        vertices.append([2 * i + b for i, b in enumerate(point)])
        coords.append([float(b) for b in point])
    return from_vertex_facets(n, 2 * n, names, vertices, coords=coords)


def segment() -> CombinatorialPolytope:
    return cube(1)


def _letters(count: int) -> List[str]:
    if count <= 26:
        return [chr(ord("A") + i) for i in range(count)]
    return [f"v{i}" for i in range(count)]


def polygon(m: int, vertex_cap: Optional[int] = None) -> CombinatorialPolytope:
    """
    m-gono con vértices A, B, C, ... y facetas AB, BC, ...; el pentágono
    usa coordenadas racionales con y(A) > y(B) > y(C) > y(D) > y(E).
    """
    if m < 3:
        raise PolytopeError("polygon requiere m >= 3")
    _check_vertex_cap(m, vertex_cap)
    letters = _letters(m)
    sep = "" if m <= 26 else "-"
    names = [f"{letters[i]}{sep}{letters[(i + 1) % m]}" for i in range(m)]
    vertices = [[(i - 1) % m, i] for i in range(m)]
    if m == 5:
        coords = [list(map(float, p)) for p in PENTAGON_COORDS]
    else:
        # polígono regular girado para evitar aristas horizontales
        offset = math.pi / 2 + 0.1234
        coords = [[math.cos(offset - 2 * math.pi * i / m), math.sin(offset - 2 * math.pi * i / m)]
                  for i in range(m)]
    return from_vertex_facets(2, m, names, vertices, vertex_labels=letters, coords=coords)


def product(
    P: CombinatorialPolytope,
    Q: CombinatorialPolytope,
    facet_names: Optional[Sequence[str]] = None,
    vertex_cap: Optional[int] = None,
) -> CombinatorialPolytope:
    """Producto P × Q: facetas de P seguidas de las de Q"""
    _check_vertex_cap(len(P.vertices) * len(Q.vertices), vertex_cap)
    if facet_names is None:
        facet_names = list(P.facet_names) + list(Q.facet_names)
        if len(set(facet_names)) != len(facet_names):
            facet_names = [f"P:{x}" for x in P.facet_names] + [f"Q:{x}" for x in Q.facet_names]
    vertices, labels, coords = [], [], []
    both = P.geometry is not None and Q.geometry is not None
    for u, lu in zip(P.vertices, P.vertex_labels):
        for w, lw in zip(Q.vertices, Q.vertex_labels):
            vertices.append(list(u) + [P.m + j for j in w])
            labels.append(f"{lu}x{lw}")
            if both:
                coords.append(list(P.geometry.coordinates[u]) + list(Q.geometry.coordinates[w]))
    return from_vertex_facets(
        P.n + Q.n,
        P.m + Q.m,
        facet_names,
        vertices,
        vertex_labels=labels,
        coords=coords if both else None,
    )


def prism(P: CombinatorialPolytope, vertex_cap: Optional[int] = None) -> CombinatorialPolytope:
    """P × [0,1]: facetas F_i × [0,1] en orden, luego P × {0} y P × {1}"""
    names = list(P.facet_names) + ["P0", "P1"]
    return product(P, segment(), facet_names=names, vertex_cap=vertex_cap)


def permutohedron(n: int, vertex_cap: Optional[int] = None) -> CombinatorialPolytope:
    """
    Permutoedro de dimensión n: facetas = subconjuntos propios no vacíos de {1..n+1}
    (ordenados por tamaño y luego lexicográficamente), vértices = cadenas maximales.
    """
    if n < 1:
        raise PolytopeError("permutohedron requiere n >= 1")
    _check_vertex_cap(math.factorial(n + 1), vertex_cap)
    ground = range(1, n + 2)
    subsets = [s for k in range(1, n + 1) for s in itertools.combinations(ground, k)]
    index = {s: i for i, s in enumerate(subsets)}
    sep = "" if n + 1 <= 9 else ","
    names = ["S" + sep.join(map(str, s)) for s in subsets]
    vertices, labels, coords = [], [], []
    for order in itertools.permutations(ground):
        vertices.append([index[tuple(sorted(order[:k]))] for k in range(1, n + 1)])
        labels.append("".join(map(str, order)) if n + 1 <= 9 else ",".join(map(str, order)))
        value = {x: float(pos + 1) for pos, x in enumerate(order)}
        # se descarta la última coordenada: proyección afín inyectiva del hiperplano suma constante
        coords.append([value[x] for x in ground][:n])
    return from_vertex_facets(n, len(subsets), names, vertices, vertex_labels=labels, coords=coords)


def facet_polytope(P: CombinatorialPolytope, i: int) -> CombinatorialPolytope:
    """La faceta F_i como polítopo de dimensión n-1 (facetas: las F_j adyacentes)"""
    if P.n < 2:
        raise PolytopeError("facet_polytope requiere n >= 2")
    if not 0 <= i < P.m:
        raise FacetIndexError(f"faceta {i} fuera de rango")
    verts = [v for v in P.vertices if i in v]
    neighbors = sorted({j for v in verts for j in v if j != i})
    reindex = {j: k for k, j in enumerate(neighbors)}
    return from_vertex_facets(
        P.n - 1,
        len(neighbors),
        [P.facet_names[j] for j in neighbors],
        [[reindex[j] for j in v if j != i] for v in verts],
        vertex_labels=[P.label(v) for v in verts],
    )


# --- geometría: secciones y funciones altura ---

def _tolerance(heights: Mapping[Vertex, float], epsilon: float) -> float:
    scale = max((abs(h) for h in heights.values()), default=0.0)
    return epsilon * scale if scale > 0 else epsilon


@dataclass(frozen=True)
class SectionData:
    direction: Tuple[float, ...]
    threshold: float
    side: Dict[Vertex, int]
    crossed_faces: Tuple[Face, ...]
    crossed_facets: Tuple[int, ...]
    f_vector_S: Tuple[int, ...]
    h_vector_S: Tuple[int, ...]

    def facets_on_side(self, P: CombinatorialPolytope, sign: int) -> List[int]:
        """Facetas con algún vértice en el lado indicado (-1 o +1)"""
        return sorted({j for v, s in self.side.items() if s == sign for j in v})

    def crossed_edges(self, P: CombinatorialPolytope) -> List[Face]:
        return [T for T in self.crossed_faces if len(T) == P.n - 1]


def slice_polytope(
    P: CombinatorialPolytope,
    geometry: Optional[GeometricRealization],
    direction: Sequence[float],
    threshold: float,
    epsilon: float = DEFAULT_EPSILON,
) -> SectionData:
    """Sección por el hiperplano <l, x> = c"""
    if geometry is None:
        raise GeometryRequiredError("slice")
    if len(direction) != P.n:
        raise DimensionMismatchError(f"la dirección debe tener {P.n} coordenadas, tiene {len(direction)}")
    raw = geometry.heights(direction)
    tol = _tolerance(raw, epsilon)
    side = {}
    for v in P.vertices:
        offset = raw[v] - threshold
        if abs(offset) <= tol:
            raise NonGenericError(f"el vértice {P.label(v)} está sobre el hiperplano")
        side[v] = 1 if offset > 0 else -1
    if len(set(side.values())) < 2:
        raise EmptySectionError("todos los vértices quedan del mismo lado del hiperplano")

    crossed = []
    for face in P.lattice.all_faces():
        if len(face) == P.n:
            continue
        signs = {side[v] for v in P.face_vertices[face]}
        if len(signs) == 2:
            crossed.append(face)
    crossed.sort(key=lambda T: (len(T), T))
    # caras de S de codimensión k <-> caras cruzadas de P de codimensión k
    f_S = tuple(sum(1 for T in crossed if len(T) == k + 1) for k in range(P.n - 1))
    return SectionData(
        direction=tuple(float(x) for x in direction),
        threshold=float(threshold),
        side=side,
        crossed_faces=tuple(crossed),
        crossed_facets=tuple(T[0] for T in crossed if len(T) == 1),
        f_vector_S=f_S,
        h_vector_S=h_from_f(f_S, P.n - 1),
    )


def section_polytope(P: CombinatorialPolytope, section: SectionData) -> CombinatorialPolytope:
    """S como polítopo: facetas = facetas cruzadas, vértices = aristas cruzadas"""
    if P.n < 2:
        raise PolytopeError("section_polytope requiere n >= 2")
    reindex = {j: k for k, j in enumerate(section.crossed_facets)}
    edges = section.crossed_edges(P)
    return from_vertex_facets(
        P.n - 1,
        len(reindex),
        [P.facet_names[j] for j in section.crossed_facets],
        [[reindex[j] for j in T] for T in edges],
    )


@dataclass(frozen=True)
class MorseData:
    heights: Dict[Vertex, float]
    index: Dict[Vertex, int]
    lower_facets: Dict[Vertex, Tuple[int, ...]]
    counts: Tuple[int, ...]

    def ascending(self) -> List[Vertex]:
        return sorted(self.heights, key=lambda v: (self.heights[v], v))

    def below_face(self, vertex: Vertex) -> Face:
        """Clausura de F_v: la cara generada por las aristas descendentes de v"""
        lower = set(self.lower_facets[vertex])
        return tuple(j for j in vertex if j not in lower)


def morse_index_counts(
    P: CombinatorialPolytope,
    geometry: Optional[GeometricRealization],
    direction: Sequence[float],
    epsilon: float = DEFAULT_EPSILON,
) -> MorseData:
    """Índice de cada vértice = número de vecinos por debajo"""
    if geometry is None:
        raise GeometryRequiredError("morse_index_counts")
    if len(direction) != P.n:
        raise DimensionMismatchError(f"la dirección debe tener {P.n} coordenadas, tiene {len(direction)}")
    heights = geometry.heights(direction)
    tol = _tolerance(heights, epsilon)
    for face, u, w in P.edges():
        if abs(heights[u] - heights[w]) <= tol:
            raise NonGenericError(
                f"dirección no genérica: la arista {P.label(u)}-{P.label(w)} es ortogonal a l"
            )
    index, lower = {}, {}
    for v in P.vertices:
        down = tuple(j for j, u in P.neighbors(v).items() if heights[u] < heights[v])
        lower[v] = down
        index[v] = len(down)
    counts = tuple(sum(1 for v in P.vertices if index[v] == i) for i in range(P.n + 1))
    return MorseData(heights=heights, index=index, lower_facets=lower, counts=counts)


def random_direction(n: int, rng: np.random.Generator) -> Tuple[float, ...]:
    return tuple(float(x) for x in rng.standard_normal(n))
