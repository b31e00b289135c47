# src/core/charmap.py
"""
Mapas característicos λ: facetas -> Z_2^n y clases de cohomología de grado 1.

Una clase w = Σ c_i v_i se guarda como el vector c de longitud m, sin normalizar;
dos vectores representan la misma clase si difieren en el espacio de filas de Λᵀ.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import List, Optional, Sequence, Tuple

import numpy as np

from . import gf2linalg as gf2
from .exceptions import (
    CharacteristicMapError,
    ColoringError,
    DimensionMismatchError,
    FacetIndexError,
    InvariantViolationError,
)
from .gf2linalg import BitMatrix
from .polytope import CombinatorialPolytope, SectionData, Vertex, facet_polytope, prism, section_polytope

logger = logging.getLogger(__name__)


def validate(P: CombinatorialPolytope, matrix: BitMatrix) -> List[Vertex]:
    """Vértices donde las filas de sus facetas no forman una base; lista vacía si es característico"""
    if matrix.rows != P.m or matrix.cols != P.n:
        raise DimensionMismatchError(
            f"Λ debe ser {P.m}x{P.n}, es {matrix.rows}x{matrix.cols}"
        )
    return [v for v in P.vertices if gf2.rank(matrix.select_rows(v)) != P.n]


@dataclass(frozen=True)
class CharacteristicMap:
    polytope: CombinatorialPolytope
    matrix: BitMatrix

    @classmethod
    def create(cls, P: CombinatorialPolytope, matrix: BitMatrix) -> "CharacteristicMap":
        offending = validate(P, matrix)
        if offending:
            labels = [P.label(v) for v in offending]
            raise CharacteristicMapError(f"no es característico en los vértices {labels}", labels)
        return cls(polytope=P, matrix=matrix)

    @classmethod
    def from_rows(cls, P: CombinatorialPolytope, rows: Sequence[Sequence[int]]) -> "CharacteristicMap":
        return cls.create(P, BitMatrix.from_rows(rows, cols=P.n))

    @property
    def n(self) -> int:
        return self.matrix.cols

    @property
    def m(self) -> int:
        return self.matrix.rows

    def row(self, i: int) -> np.ndarray:
        return self.matrix.row(i)

    @cached_property
    def linear_forms(self) -> BitMatrix:
        """Λᵀ: la fila i es la forma lineal Σ_k λ_i(F_k) v_k"""
        return self.matrix.transpose()

    @cached_property
    def _reversed_forms(self) -> gf2.RowEchelon:
        # pivotes elegidos desde la última faceta: los representantes conservan las primeras
        return gf2.row_reduce(BitMatrix.from_array(self.linear_forms.to_array()[:, ::-1]))

    def reduce_class(self, vector: Sequence[int]) -> np.ndarray:
        c = gf2.to_gf2(vector)
        if len(c) != self.m:
            raise DimensionMismatchError(f"clase de longitud {len(c)}, se esperaban {self.m}")
        return self._reversed_forms.reduce(c[::-1])[::-1].copy()

    def as_rows(self) -> List[List[int]]:
        return [list(map(int, r)) for r in self.matrix.to_array()]


def from_coloring(P: CombinatorialPolytope, coloring: Sequence[int]) -> CharacteristicMap:
    """λ(F) = e_{color(F)}, colores en 1..n"""
    if len(coloring) != P.m:
        raise DimensionMismatchError(f"{len(coloring)} colores para {P.m} facetas")
    if any(not 1 <= c <= P.n for c in coloring):
        raise ColoringError(f"los colores deben estar en 1..{P.n}")
    bad = [v for v in P.vertices if len({coloring[j] for j in v}) != P.n]
    if bad:
        labels = [P.label(v) for v in bad]
        raise ColoringError(f"coloración impropia en los vértices {labels}", labels)
    rows = np.zeros((P.m, P.n), dtype=np.uint8)
    for i, c in enumerate(coloring):
        rows[i, c - 1] = 1
    return CharacteristicMap.create(P, BitMatrix.from_array(rows))


def has_odd_weight(a: Sequence[int]) -> bool:
    return bool(int(gf2.to_gf2(a).sum()) % 2)


def perturb(charmap: CharacteristicMap, facet: int, a: Sequence[int]) -> CharacteristicMap:
    """ν(F) = λ(G) + a si F = G, λ(F) en otro caso"""
    vec = gf2.to_gf2(a)
    if len(vec) != charmap.n:
        raise DimensionMismatchError(f"a debe tener {charmap.n} coordenadas")
    if not 0 <= facet < charmap.m:
        raise FacetIndexError(f"faceta {facet} fuera de rango")
    rows = charmap.matrix.to_array()
    rows[facet] ^= vec
    return CharacteristicMap.create(charmap.polytope, BitMatrix.from_array(rows))


def prism_charmap(charmap: CharacteristicMap, c: Sequence[int]) -> CharacteristicMap:
    """
    λ_w sobre P × [0,1]: λ(F_i) + c_i e_{n+1} sobre F_i × [0,1],
    e_{n+1} sobre P × {0} y P × {1}.
    """
    vec = gf2.to_gf2(c)
    if len(vec) != charmap.m:
        raise DimensionMismatchError(f"clase de longitud {len(vec)}, se esperaban {charmap.m}")
    P, n, m = charmap.polytope, charmap.n, charmap.m
    rows = np.zeros((m + 2, n + 1), dtype=np.uint8)
    rows[:m, :n] = charmap.matrix.to_array()
    rows[:m, n] = vec
    rows[m:, n] = 1
    prism_P = prism(P)
    matrix = BitMatrix.from_array(rows)
    offending = validate(prism_P, matrix)
    if offending:
        raise InvariantViolationError(f"λ_w no es característico en {[prism_P.label(v) for v in offending]}")
    return CharacteristicMap(polytope=prism_P, matrix=matrix)


@dataclass(frozen=True)
class CohomologyClass:
    charmap: CharacteristicMap
    vector: Tuple[int, ...]

    @classmethod
    def of(cls, charmap: CharacteristicMap, vector: Sequence[int]) -> "CohomologyClass":
        c = gf2.to_gf2(vector)
        if len(c) != charmap.m:
            raise DimensionMismatchError(f"clase de longitud {len(c)}, se esperaban {charmap.m}")
        return cls(charmap=charmap, vector=tuple(int(x) for x in c))

    @classmethod
    def indicator(cls, charmap: CharacteristicMap, facets: Sequence[int]) -> "CohomologyClass":
        c = np.zeros(charmap.m, dtype=np.uint8)
        for i in facets:
            if not 0 <= i < charmap.m:
                raise FacetIndexError(f"faceta {i} fuera de rango")
            c[i] ^= 1
        return cls.of(charmap, c)

    def array(self) -> np.ndarray:
        return np.array(self.vector, dtype=np.uint8)

    def is_trivial(self) -> bool:
        return not self.canonical_rep().any()

    def canonical_rep(self) -> np.ndarray:
        return self.charmap.reduce_class(self.vector)

    def equivalent(self, other: "CohomologyClass") -> bool:
        return np.array_equal(self.canonical_rep(), other.canonical_rep())

    def __add__(self, other: "CohomologyClass") -> "CohomologyClass":
        return CohomologyClass.of(self.charmap, self.array() ^ other.array())

    def support(self) -> List[int]:
        return [i for i, b in enumerate(self.vector) if b]

    def names(self) -> List[str]:
        return [self.charmap.polytope.facet_names[i] for i in self.support()]

    def pullback_to_prism(self) -> "CohomologyClass":
        """π*(w) = clase de las dos bases P×0 y P×1 en P × [0,1] con el mapa λ_w"""
        lam_w = prism_charmap(self.charmap, self.vector)
        return CohomologyClass.indicator(lam_w, [self.charmap.m, self.charmap.m + 1])


def all_classes(charmap: CharacteristicMap) -> List[CohomologyClass]:
    """Un representante canónico por clase de H^1 (2^{m-n} clases), la trivial primero"""
    forms = charmap._reversed_forms
    # los representantes canónicos son los vectores soportados fuera de los pivotes
    free = sorted(charmap.m - 1 - p for p in set(range(charmap.m)) - set(forms.pivots))
    classes = []
    for mask in range(2 ** len(free)):
        c = np.zeros(charmap.m, dtype=np.uint8)
        for k, i in enumerate(free):
            c[i] = (mask >> k) & 1
        classes.append(CohomologyClass.of(charmap, c))
    return classes


# --- mapas inducidos sobre secciones ---

def _coordinates_in(basis: np.ndarray, vector: np.ndarray) -> np.ndarray:
    """Coordenadas de vector en la base dada (filas), resolviendo basisᵀ x = vector"""
    x = gf2.solve(BitMatrix.from_array(basis.T), vector)
    if x is None:
        raise InvariantViolationError("vector fuera del subespacio")
    return x


def restrict_to_facet(charmap: CharacteristicMap, i: int) -> CharacteristicMap:
    """λ_S sobre la faceta F_i, con valores en Z_2^n / <λ(F_i)>"""
    P = charmap.polytope
    facet = facet_polytope(P, i)
    functionals = gf2.kernel_basis(BitMatrix.from_rows([charmap.row(i)], cols=charmap.n))
    projection = BitMatrix.from_rows(functionals, cols=charmap.n)
    rows = [projection.matvec(charmap.row(P.facet_index(name))) for name in facet.facet_names]
    result = BitMatrix.from_rows(rows, cols=charmap.n - 1)
    offending = validate(facet, result)
    if offending:
        raise InvariantViolationError(f"λ_S no es característico en la faceta {P.facet_names[i]}")
    return CharacteristicMap(polytope=facet, matrix=result)


def restrict_to_section(charmap: CharacteristicMap, section: SectionData) -> CharacteristicMap:
    """λ_S sobre una sección genérica, con valores en V = <λ(F): F corta a S> (rango n-1)"""
    P = charmap.polytope
    S = section_polytope(P, section)
    crossed = [charmap.row(j) for j in section.crossed_facets]
    echelon = gf2.row_reduce(BitMatrix.from_rows(crossed, cols=charmap.n))
    if echelon.rank != charmap.n - 1:
        raise InvariantViolationError(f"V tiene rango {echelon.rank}, se esperaba {charmap.n - 1}")
    basis = echelon.basis.to_array()
    rows = [_coordinates_in(basis, v) for v in crossed]
    result = BitMatrix.from_rows(rows, cols=charmap.n - 1)
    offending = validate(S, result)
    if offending:
        raise InvariantViolationError("λ_S no es característico sobre la sección")
    return CharacteristicMap(polytope=S, matrix=result)
