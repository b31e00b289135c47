# src/core/quotientcomplex.py
"""
Oráculo de fuerza bruta: P × Z_2^N / ~ como complejo celular finito.

Sobre cada cara G_T (T = facetas que la contienen) hay una celda por coclase de
Z_2^N módulo St(T) = <μ(F_j): j ∈ T>, de dimensión n - |T|. El borde de la celda
(T, a) son las celdas (T ∪ {j}, a mod St(T ∪ {j})), con incidencia 1 mod 2.
Con N = n y μ = Λ se obtiene el small cover; con μ = (Λ | c) su cubierta doble M_w.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from . import gf2linalg as gf2
from .charmap import (
    CharacteristicMap,
    CohomologyClass,
    restrict_to_facet,
    restrict_to_section,
)
from .exceptions import (
    CharacteristicMapError,
    ConnectedPreimageError,
    DimensionMismatchError,
    DisconnectedFacetPreimageError,
    EmptySectionError,
    GeometryRequiredError,
    InvariantViolationError,
    NonGenericError,
    SectionClassError,
    SizeLimitError,
    TooManyComponentsError,
)
from .gf2linalg import BitMatrix
from .polytope import (
    DEFAULT_EPSILON,
    CombinatorialPolytope,
    Face,
    GeometricRealization,
    SectionData,
    facet_polytope,
    h_vector,
    morse_index_counts,
    random_direction,
    slice_polytope,
)

logger = logging.getLogger(__name__)

DEFAULT_CELL_CAP = 1_000_000


@dataclass(frozen=True)
class Cell:
    face: Face
    coset: int
    dim: int


@dataclass(frozen=True)
class QuotientComplex:
    polytope: CombinatorialPolytope
    generators: BitMatrix
    cells: Tuple[Cell, ...]
    boundary: Tuple[Tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return self.polytope.n

    @property
    def N(self) -> int:
        return self.generators.cols

    @cached_property
    def index(self) -> Dict[Tuple[Face, int], int]:
        return {(cell.face, cell.coset): i for i, cell in enumerate(self.cells)}

    @cached_property
    def by_dimension(self) -> Dict[int, List[int]]:
        table: Dict[int, List[int]] = {d: [] for d in range(self.n + 1)}
        for i, cell in enumerate(self.cells):
            table[cell.dim].append(i)
        return table

    def cell_counts(self) -> Tuple[int, ...]:
        return tuple(len(self.by_dimension[d]) for d in range(self.n + 1))

    def boundary_matrix(self, d: int) -> BitMatrix:
        """∂_d: filas = celdas de dimensión d, columnas = celdas de dimensión d-1"""
        rows = self.by_dimension.get(d, [])
        cols = self.by_dimension.get(d - 1, [])
        position = {cell: k for k, cell in enumerate(cols)}
        return BitMatrix.from_supports(
            ([position[b] for b in self.boundary[i]] for i in rows), len(cols)
        )

    @cached_property
    def boundary_ranks(self) -> Tuple[int, ...]:
        """rank ∂_d para d = 0..n+1 (los extremos son nulos)"""
        ranks = [0]
        for d in range(1, self.n + 1):
            ranks.append(gf2.rank(self.boundary_matrix(d)))
        ranks.append(0)
        return tuple(ranks)

    def to_dict(self) -> Dict:
        return {
            "n": self.n,
            "N": self.N,
            "cells": [
                {
                    "face": list(cell.face),
                    "coset": [int(b) for b in gf2.int_to_bits(cell.coset, self.N)],
                    "dim": cell.dim,
                    "boundary": list(self.boundary[i]),
                }
                for i, cell in enumerate(self.cells)
            ],
        }


def _free_positions(echelon: gf2.RowEchelon, N: int) -> List[int]:
    pivots = set(echelon.pivots)
    return [i for i in range(N) if i not in pivots]


def build_complex(
    P: CombinatorialPolytope,
    generators: BitMatrix,
    cell_cap: int = DEFAULT_CELL_CAP,
) -> QuotientComplex:
    """Complejo celular de P × Z_2^N / ~ para la matriz generadora μ (m × N)"""
    if generators.rows != P.m:
        raise DimensionMismatchError(f"μ debe tener {P.m} filas, tiene {generators.rows}")
    N = generators.cols
    if N < P.n:
        raise DimensionMismatchError(f"N = {N} < n = {P.n}")
    offending = [v for v in P.vertices if gf2.rank(generators.select_rows(v)) != P.n]
    if offending:
        labels = [P.label(v) for v in offending]
        raise CharacteristicMapError(f"filas de μ dependientes en los vértices {labels}", labels)

    faces = sorted(P.lattice.all_faces(), key=lambda T: (len(T), T))
    stabilizers = {T: gf2.row_reduce(generators.select_rows(T)) for T in faces}
    total = sum(2 ** (N - stabilizers[T].rank) for T in faces)
    if total > cell_cap:
        raise SizeLimitError("celdas", total, cell_cap)

    cells: List[Cell] = []
    for T in faces:
        free = _free_positions(stabilizers[T], N)
        cosets = sorted(sum(((mask >> k) & 1) << i for k, i in enumerate(free))
                        for mask in range(2 ** len(free)))
        cells.extend(Cell(face=T, coset=a, dim=P.n - len(T)) for a in cosets)
    index = {(cell.face, cell.coset): i for i, cell in enumerate(cells)}

    boundary = []
    for cell in cells:
        vec = gf2.int_to_bits(cell.coset, N)
        targets = []
        for coface in P.lattice.cofaces(cell.face, P.m):
            rep = gf2.bits_to_int(stabilizers[coface].reduce(vec))
            targets.append(index[(coface, rep)])
        boundary.append(tuple(sorted(targets)))

    logger.debug(f"complejo con {len(cells)} celdas (N = {N})")
    return QuotientComplex(polytope=P, generators=generators, cells=tuple(cells), boundary=tuple(boundary))


def small_cover_complex(charmap: CharacteristicMap, cell_cap: int = DEFAULT_CELL_CAP) -> QuotientComplex:
    return build_complex(charmap.polytope, charmap.matrix, cell_cap)


def double_cover_complex(
    charmap: CharacteristicMap,
    c: CohomologyClass,
    cell_cap: int = DEFAULT_CELL_CAP,
) -> QuotientComplex:
    """
    Cubierta doble M_w con μ = (Λ | c): un lazo que cruza p^{-1}(F_i) cambia
    la coordenada extra exactamente cuando c_i = 1.
    """
    return build_complex(charmap.polytope, charmap.matrix.append_column(c.array()), cell_cap)


def betti(complex_: QuotientComplex) -> Tuple[int, ...]:
    """b_k = #celdas_k - rank ∂_k - rank ∂_{k+1}"""
    counts = complex_.cell_counts()
    ranks = complex_.boundary_ranks
    return tuple(counts[k] - ranks[k] - ranks[k + 1] for k in range(complex_.n + 1))


def euler_characteristic(complex_: QuotientComplex) -> int:
    return sum((-1) ** d * count for d, count in enumerate(complex_.cell_counts()))


def boundary_squared_is_zero(complex_: QuotientComplex) -> bool:
    for d in range(2, complex_.n + 1):
        if not (complex_.boundary_matrix(d) @ complex_.boundary_matrix(d - 1)).is_zero():
            return False
    return True


def preimage_components(P: CombinatorialPolytope, generators: BitMatrix, face: Face) -> int:
    """Componentes de p^{-1}(G_T) = 2^{N - rank <μ(F_j): F_j ∩ G_T ≠ ∅>}"""
    meeting = P.facets_meeting(tuple(face))
    return 2 ** (generators.cols - gf2.rank(generators.select_rows(meeting)))


def subcomplex_components(complex_: QuotientComplex, face: Face) -> int:
    """b_0 del subcomplejo formado por las celdas sobre las caras de G_T"""
    members = set(face)
    inside = [i for i, cell in enumerate(complex_.cells) if members.issubset(cell.face)]
    zero = [i for i in inside if complex_.cells[i].dim == 0]
    one = [i for i in inside if complex_.cells[i].dim == 1]
    position = {cell: k for k, cell in enumerate(zero)}
    d1 = BitMatrix.from_supports(([position[b] for b in complex_.boundary[i]] for i in one), len(zero))
    return len(zero) - gf2.rank(d1)


# --- grafo dual y clases de sección ---

@dataclass(frozen=True)
class DualEdge:
    u: int
    v: int
    facet: Optional[int]   # None para las aristas de sección
    bit: int = 0           # 1 si cruza la componente Y (ψ = 0)


@dataclass(frozen=True)
class DualGraph:
    nodes: Tuple[Tuple[int, int], ...]   # (lado, coclase)
    edges: Tuple[DualEdge, ...]
    m: int

    @cached_property
    def graph(self) -> nx.MultiGraph:
        graph = nx.MultiGraph()
        graph.add_nodes_from(range(len(self.nodes)))
        graph.add_edges_from((e.u, e.v, k, {"data": e}) for k, e in enumerate(self.edges))
        return graph

    def is_connected(self) -> bool:
        return nx.is_connected(self.graph)

    def _edge_label(self, e: DualEdge) -> np.ndarray:
        label = np.zeros(self.m + 2, dtype=np.uint8)
        if e.facet is None:
            label[self.m] = e.bit
            label[self.m + 1] = 1 - e.bit
        else:
            label[e.facet] = 1
        return label

    def _spanning_tree(self) -> Tuple[Dict[int, np.ndarray], set]:
        """Etiquetas de los nodos a lo largo de un árbol generador, y las claves de sus aristas"""
        spanning = list(nx.minimum_spanning_edges(self.graph, keys=True, data=True))
        tree = nx.Graph()
        tree.add_node(0)
        tree.add_edges_from((u, v, {"data": d["data"]}) for u, v, _, d in spanning)
        labels = {0: np.zeros(self.m + 2, dtype=np.uint8)}
        for x, y in nx.bfs_edges(tree, 0):
            labels[y] = labels[x] ^ self._edge_label(tree.edges[x, y]["data"])
        return labels, {k for _, _, k, _ in spanning}

    def fundamental_cycles(self) -> np.ndarray:
        """
        Una fila por ciclo fundamental: paridades de cruce de cada faceta,
        luego el bit de monodromía de Y (ψ = 0) y el de la otra componente.
        """
        labels, tree = self._spanning_tree()
        rows = [
            labels[e.u] ^ labels[e.v] ^ self._edge_label(e)
            for k, e in enumerate(self.edges)
            if k not in tree
        ]
        if not rows:
            return np.zeros((0, self.m + 2), dtype=np.uint8)
        return np.vstack(rows)


def build_dual_graph(P: CombinatorialPolytope, generators: BitMatrix) -> DualGraph:
    """Grafo dual de P × Z_2^N / ~: nodos = celdas de dimensión n, aristas = celdas de codimensión 1"""
    N = generators.cols
    nodes = tuple((0, a) for a in range(2 ** N))
    edges = []
    for i in range(P.m):
        step = gf2.bits_to_int(generators.row(i))
        for a in range(2 ** N):
            if a < a ^ step:
                edges.append(DualEdge(a, a ^ step, i))
    return DualGraph(nodes=nodes, edges=tuple(edges), m=P.m)


def _sliced_dual_graph(
    charmap: CharacteristicMap, section: SectionData, psi: np.ndarray
) -> DualGraph:
    P, n = charmap.polytope, charmap.n
    size = 2 ** n
    nodes = tuple((s, a) for s in (-1, 1) for a in range(size))
    node = {key: k for k, key in enumerate(nodes)}
    edges = []
    for s in (-1, 1):
        for i in section.facets_on_side(P, s):
            step = gf2.bits_to_int(charmap.row(i))
            for a in range(size):
                if a < a ^ step:
                    edges.append(DualEdge(node[(s, a)], node[(s, a ^ step)], i))
    for a in range(size):
        on_y = int(np.dot(psi, gf2.int_to_bits(a, n)) % 2 == 0)
        edges.append(DualEdge(node[(-1, a)], node[(1, a)], None, on_y))
    return DualGraph(nodes=nodes, edges=tuple(edges), m=P.m)


@dataclass(frozen=True)
class SectionClassResult:
    cohomology_class: CohomologyClass
    other_class: CohomologyClass
    section: Optional[SectionData]
    h_S: Tuple[int, ...]
    facet: Optional[int] = None
    psi: Tuple[int, ...] = ()


def _crossed_rank(charmap: CharacteristicMap, section: SectionData) -> Tuple[int, List[np.ndarray]]:
    rows = [charmap.row(j) for j in section.crossed_facets]
    return gf2.span_rank(rows, charmap.n), rows


def section_to_class(
    charmap: CharacteristicMap,
    geometry: Optional[GeometricRealization],
    direction: Sequence[float],
    threshold: float,
    epsilon: float = DEFAULT_EPSILON,
) -> SectionClassResult:
    """Clase dual de la componente Y = {ψ = 0} de p^{-1}(S) para una sección genérica"""
    P, n, m = charmap.polytope, charmap.n, charmap.m
    if geometry is None:
        raise GeometryRequiredError("section_to_class")
    section = slice_polytope(P, geometry, direction, threshold, epsilon)
    r, crossed = _crossed_rank(charmap, section)
    if r == n:
        raise ConnectedPreimageError("connected preimage: not a section class")
    if r < n - 1:
        raise TooManyComponentsError(
            f"p^-1(S) tiene {2 ** (n - r)} componentes: fuera de las hipótesis del teorema"
        )
    psi = gf2.kernel_basis(BitMatrix.from_rows(crossed, cols=n))[0]

    cycles = _sliced_dual_graph(charmap, section, psi).fundamental_cycles()
    pairing = BitMatrix.from_array(cycles[:, :m]) if len(cycles) else BitMatrix(0, m)
    if gf2.rank(pairing) != m - n:
        raise InvariantViolationError(f"la matriz de apareamientos tiene rango {gf2.rank(pairing)} != {m - n}")

    found = []
    for column in (m, m + 1):
        solution = gf2.solve(pairing, cycles[:, column] if len(cycles) else [])
        if solution is None:
            raise InvariantViolationError("sistema de monodromía inconsistente")
        found.append(CohomologyClass.of(charmap, charmap.reduce_class(solution)))
    primary, other = found
    if primary.is_trivial():
        raise InvariantViolationError("una clase de sección no puede ser trivial")
    if not primary.equivalent(other):
        raise InvariantViolationError("las dos componentes dan clases distintas")
    return SectionClassResult(
        cohomology_class=primary,
        other_class=other,
        section=section,
        h_S=section.h_vector_S,
        psi=tuple(int(x) for x in psi),
    )


def facet_section_class(charmap: CharacteristicMap, i: int) -> SectionClassResult:
    """v_i como clase de sección: requiere p^{-1}(F_i) conexo"""
    P, n = charmap.polytope, charmap.n
    if preimage_components(P, charmap.matrix, (i,)) != 1:
        raise DisconnectedFacetPreimageError(
            f"section formula hypotheses not met for this facet: p^-1({P.facet_names[i]}) no es conexo"
        )
    h_S = h_vector(facet_polytope(P, i)) if n >= 2 else (1,)
    c = CohomologyClass.indicator(charmap, [i])
    return SectionClassResult(cohomology_class=c, other_class=c, section=None, h_S=h_S, facet=i)


def submanifold_betti(
    charmap: CharacteristicMap,
    result: SectionClassResult,
    cell_cap: int = DEFAULT_CELL_CAP,
) -> Tuple[int, ...]:
    """Betti de Y = M_{S, λ_S}, construido como small cover sobre S"""
    if charmap.n == 1:
        return (1,)
    if result.facet is not None:
        induced = restrict_to_facet(charmap, result.facet)
    else:
        induced = restrict_to_section(charmap, result.section)
    return betti(small_cover_complex(induced, cell_cap))


def find_section_classes(
    charmap: CharacteristicMap,
    geometry: Optional[GeometricRealization],
    directions: int,
    seed: int,
    epsilon: float = DEFAULT_EPSILON,
) -> List[SectionClassResult]:
    """Barre direcciones aleatorias y umbrales entre alturas consecutivas; clases distintas"""
    if geometry is None:
        raise GeometryRequiredError("find_section_classes")
    rng = np.random.default_rng(seed)
    found: Dict[Tuple[int, ...], SectionClassResult] = {}
    for _ in range(directions):
        l = random_direction(charmap.n, rng)
        heights = sorted(set(geometry.heights(l).values()))
        for low, high in zip(heights, heights[1:]):
            try:
                result = section_to_class(charmap, geometry, l, (low + high) / 2, epsilon)
            except (SectionClassError, NonGenericError, EmptySectionError):
                continue
            key = tuple(int(x) for x in result.cohomology_class.canonical_rep())
            found.setdefault(key, result)
    return [found[key] for key in sorted(found)]


# --- frontera de las celdas de Morse y tabla E_1 ---

@dataclass(frozen=True)
class FrontierViolation:
    vertex: str
    witness_vertex: str
    witness_face: Face
    index_v: int
    index_w: int


def _subfaces(P: CombinatorialPolytope, face: Face) -> List[Face]:
    base = set(face)
    result = set()
    for u in P.face_vertices[face]:
        extra = [j for j in u if j not in base]
        for k in range(len(extra) + 1):
            for more in itertools.combinations(extra, k):
                result.add(tuple(sorted(base | set(more))))
    return sorted(result, key=lambda T: (len(T), T))


def frontier_check(
    charmap: CharacteristicMap,
    geometry: Optional[GeometricRealization],
    direction: Sequence[float],
    epsilon: float = DEFAULT_EPSILON,
) -> List[FrontierViolation]:
    """Caras G' ⊆ G_v sin v cuyo vértice máximo w tiene índice >= índice(v)"""
    P = charmap.polytope
    morse = morse_index_counts(P, geometry, direction, epsilon)
    violations = []
    for v in morse.ascending():
        closure = morse.below_face(v)
        for sub in _subfaces(P, closure):
            members = P.face_vertices[sub]
            if v in members:
                continue
            w = max(members, key=lambda u: morse.heights[u])
            if morse.index[w] >= morse.index[v]:
                violations.append(
                    FrontierViolation(P.label(v), P.label(w), sub, morse.index[v], morse.index[w])
                )
    return violations


def group_violations(violations: Sequence[FrontierViolation]) -> Dict[Tuple[int, int], List[FrontierViolation]]:
    """Agrupa por (índice de v, índice de w)"""
    groups: Dict[Tuple[int, int], List[FrontierViolation]] = {}
    for violation in violations:
        groups.setdefault((violation.index_v, violation.index_w), []).append(violation)
    return groups


@dataclass(frozen=True)
class E1Table:
    entries: Tuple[Tuple[int, int, str], ...]   # (p, q, vértice) con dim E_1^{p,q} = 1
    totals: Tuple[int, ...]                      # Σ_{p+q=i} dim E_1^{p,q}

    def dimension(self, p: int, q: int) -> int:
        return int(any(e[0] == p and e[1] == q for e in self.entries))


def filtration_e1_table(
    charmap: CharacteristicMap,
    geometry: Optional[GeometricRealization],
    direction: Sequence[float],
    epsilon: float = DEFAULT_EPSILON,
) -> E1Table:
    """G_p/G_{p-1} es una esfera de dimensión índice(v_p): E_1^{p,q} = Z_2 sólo si p + q = índice"""
    P = charmap.polytope
    morse = morse_index_counts(P, geometry, direction, epsilon)
    entries = []
    for p, v in enumerate(morse.ascending(), start=1):
        entries.append((p, morse.index[v] - p, P.label(v)))
    totals = tuple(sum(1 for e in entries if e[0] + e[1] == i) for i in range(P.n + 1))
    return E1Table(entries=tuple(entries), totals=totals)


def cover_e1_defect(
    charmap: CharacteristicMap,
    geometry: Optional[GeometricRealization],
    direction: Sequence[float],
    c: CohomologyClass,
    epsilon: float = DEFAULT_EPSILON,
    cell_cap: int = DEFAULT_CELL_CAP,
) -> Tuple[int, ...]:
    """
    La filtración levantada a M_w tiene E_1 con sumas 2 h_i(P); el defecto
    2 h_i(P) - b_i(M_w) mide lo que matan los diferenciales.
    """
    table = filtration_e1_table(charmap, geometry, direction, epsilon)
    cover = betti(double_cover_complex(charmap, c, cell_cap))
    defect = tuple(2 * t - b for t, b in zip(table.totals, cover))
    if any(x < 0 for x in defect):
        raise InvariantViolationError(f"defecto negativo {defect}")
    return defect
