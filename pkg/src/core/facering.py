# src/core/facering.py
"""
Anillo graduado Z_2[v_1..v_m] / (I + J): I = ideal de Stanley-Reisner, J = formas lineales de Λᵀ.

En cada grado d las relaciones son (i) los monomios cuyo soporte no es cara y
(ii) los productos (forma lineal) × (monomio de grado d-1). Como (i) está generado
por monomios, se trabaja en la base de monomios estándar (soporte = cara): la
proyección de (ii) sobre esa base tiene rango rank(relaciones_d) - #no-estándar_d.
Un monomio es una tupla ordenada de índices de variables (con repetición);
dentro de cada grado el orden es lexicográfico.

Para una clase de sección w con sección S, section_formula_betti da los números de
Betti de M_w sólo a partir de h(P) y h(S); gysin_betti debe coincidir con ella.
"""
from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import gf2linalg as gf2
from .charmap import CharacteristicMap, CohomologyClass
from .exceptions import DimensionMismatchError, InvalidPairError, InvariantViolationError, SizeLimitError
from .gf2linalg import BitMatrix

logger = logging.getLogger(__name__)

Monomial = Tuple[int, ...]

DEFAULT_MONOMIAL_CAP = 2_000_000


@dataclass(frozen=True)
class DegreePiece:
    degree: int
    monomials: Tuple[Monomial, ...]      # monomios estándar de grado d
    relations: gf2.RowEchelon            # relaciones proyectadas, forma reducida
    total_monomials: int                 # todos los monomios de grado d

    @property
    def dimension(self) -> int:
        return len(self.monomials) - self.relations.rank

    @property
    def relation_rank(self) -> int:
        """Rango del espacio completo de relaciones (incluye los monomios no estándar)"""
        return self.total_monomials - len(self.monomials) + self.relations.rank

    @property
    def column(self) -> Dict[Monomial, int]:
        return {mono: i for i, mono in enumerate(self.monomials)}

    def basis(self) -> List[Monomial]:
        pivots = set(self.relations.pivots)
        return [mono for i, mono in enumerate(self.monomials) if i not in pivots]


@dataclass(frozen=True)
class GradedRingModel:
    charmap: CharacteristicMap
    pieces: Tuple[DegreePiece, ...]

    @property
    def n(self) -> int:
        return self.charmap.n

    @property
    def max_degree(self) -> int:
        return len(self.pieces) - 1

    def piece(self, d: int) -> Optional[DegreePiece]:
        return self.pieces[d] if 0 <= d <= self.max_degree else None


def _standard_monomials(faces: Sequence[Tuple[int, ...]], degree: int) -> List[Monomial]:
    result = []
    for face in faces:
        k = len(face)
        if k > degree or (k == 0 and degree > 0):
            continue
        for extra in itertools.combinations_with_replacement(face, degree - k):
            result.append(tuple(sorted(face + extra)))
    return sorted(result)


def build_ring(
    charmap: CharacteristicMap,
    max_degree: Optional[int] = None,
    monomial_cap: int = DEFAULT_MONOMIAL_CAP,
) -> GradedRingModel:
    """Construye las piezas de grado 0..max_degree (por defecto n+1)"""
    P = charmap.polytope
    top = P.n + 1 if max_degree is None else max_degree
    faces = P.lattice.all_faces()
    forms = charmap.linear_forms.to_array()

    pieces: List[DegreePiece] = []
    for d in range(top + 1):
        total = math.comb(P.m + d - 1, d)
        if total > monomial_cap:
            raise SizeLimitError(f"monomios de grado {d}", total, monomial_cap)
        monomials = _standard_monomials(faces, d)
        column = {mono: i for i, mono in enumerate(monomials)}
        supports = []
        if d > 0:
            for form in forms:
                variables = np.flatnonzero(form)
                for mono in pieces[d - 1].monomials:
                    row = []
                    for k in variables:
                        product = tuple(sorted(mono + (int(k),)))
                        if product in column:
                            row.append(column[product])
                    if row:
                        supports.append(row)
        relations = gf2.row_reduce(BitMatrix.from_supports(supports, len(monomials)))
        pieces.append(DegreePiece(d, tuple(monomials), relations, total))
        logger.debug(f"grado {d}: {len(monomials)} monomios estándar, rango {relations.rank}")

    model = GradedRingModel(charmap=charmap, pieces=tuple(pieces))
    if top > P.n and any(model.pieces[d].dimension for d in range(P.n + 1, top + 1)):
        logger.warning("el cociente no se anula por encima del grado n")
    return model


def graded_dims(model: GradedRingModel) -> Tuple[int, ...]:
    """(d_0, ..., d_n)"""
    return tuple(model.pieces[d].dimension if d <= model.max_degree else 0 for d in range(model.n + 1))


def quotient_basis(model: GradedRingModel, degree: int) -> List[Monomial]:
    return model.pieces[degree].basis()


def _multiply(class_vector: Sequence[int], monomials: Sequence[Monomial], target: DegreePiece) -> BitMatrix:
    """Imágenes de w·b para cada b, proyectadas a los monomios estándar de grado d+1"""
    column = target.column
    variables = [i for i, b in enumerate(class_vector) if b]
    supports = []
    for mono in monomials:
        row = []
        for i in variables:
            product = tuple(sorted(mono + (i,)))
            if product in column:
                row.append(column[product])
        supports.append(row)
    return BitMatrix.from_supports(supports, len(target.monomials))


def _check_class(model: GradedRingModel, c: CohomologyClass) -> np.ndarray:
    vec = c.array()
    if len(vec) != model.charmap.m:
        raise DimensionMismatchError(f"clase de longitud {len(vec)}, se esperaban {model.charmap.m}")
    return vec


def _image_rank(model: GradedRingModel, vec: np.ndarray, degree: int) -> int:
    source = model.pieces[degree]
    target = model.pieces[degree + 1]
    images = _multiply(vec, source.basis(), target)
    return gf2.rank(target.relations.basis.vstack(images)) - target.relations.rank


def cup_kernel_dims(model: GradedRingModel, c: CohomologyClass) -> Tuple[int, ...]:
    """k_m = dim ker(w ⌣ -: H^m -> H^{m+1}) para m = 0..n"""
    vec = _check_class(model, c)
    dims = graded_dims(model)
    kernel = []
    for m in range(model.n + 1):
        if m + 1 > model.max_degree:
            # el grado n+1 del cociente es nulo
            kernel.append(dims[m])
            continue
        kernel.append(dims[m] - _image_rank(model, vec, m))
    return tuple(kernel)


@dataclass(frozen=True)
class GysinResult:
    betti: Tuple[int, ...]
    kernel_dims: Tuple[int, ...]
    disconnected: bool


def gysin_betti(model: GradedRingModel, c: CohomologyClass) -> GysinResult:
    """b_m = d_m - d_{m-1} + k_{m-1} + k_m; la clase trivial da dos copias"""
    dims = graded_dims(model)
    k = cup_kernel_dims(model, c)
    betti = []
    for m in range(model.n + 1):
        prev_d = dims[m - 1] if m > 0 else 0
        prev_k = k[m - 1] if m > 0 else 0
        betti.append(dims[m] - prev_d + prev_k + k[m])
    trivial = c.is_trivial()
    if trivial and tuple(betti) != tuple(2 * x for x in dims):
        raise InvariantViolationError(f"clase trivial con Betti {betti}")
    if not trivial and betti[0] != 1:
        raise InvariantViolationError(f"clase no trivial con b_0 = {betti[0]}")
    return GysinResult(betti=tuple(betti), kernel_dims=k, disconnected=trivial)


def section_formula_betti(h_P: Sequence[int], h_S: Sequence[int]) -> Tuple[int, ...]:
    """h^m(M_w) = 2 h_m(P) - h_{m-1}(S) - h_m(S), con h_{-1}(S) = h_n(S) = 0"""
    n = len(h_P) - 1
    if len(h_S) != n:
        raise DimensionMismatchError(f"h(S) debe tener {n} entradas, tiene {len(h_S)}")
    padded = [0] + list(h_S) + [0]
    result = tuple(2 * h_P[m] - padded[m] - padded[m + 1] for m in range(n + 1))
    if any(b < 0 for b in result):
        raise InvalidPairError(f"inputs are not a valid (P,S) pair: {result}")
    return result


def square_is_zero(model: GradedRingModel, c: CohomologyClass) -> bool:
    """w² = Σ c_i v_i² en característica 2; se comprueba si cae en las relaciones de grado 2"""
    vec = _check_class(model, c)
    if model.max_degree < 2:
        raise DimensionMismatchError(f"el modelo llega al grado {model.max_degree}; w² vive en grado 2")
    target = model.pieces[2]
    column = target.column
    square = np.zeros(len(target.monomials), dtype=np.uint8)
    for i in np.flatnonzero(vec):
        mono = (int(i), int(i))
        if mono in column:
            square[column[mono]] ^= 1
    return target.relations.contains(square)


def lemma_k_check(model: GradedRingModel, c: CohomologyClass, h_Y: Sequence[int]) -> bool:
    """k_m = d_m - h_m(Y) para todo m (h_Y completado con ceros)"""
    k = cup_kernel_dims(model, c)
    dims = graded_dims(model)
    padded = list(h_Y) + [0] * (len(dims) - len(h_Y))
    return all(k[m] == dims[m] - padded[m] for m in range(len(dims)))
