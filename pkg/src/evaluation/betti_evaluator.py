# src/evaluation/betti_evaluator.py
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from tqdm import tqdm

from ..core import facering, quotientcomplex as qc
from ..core.charmap import CharacteristicMap, CohomologyClass, all_classes
from ..core.exceptions import NonGenericError, SizeLimitError
from ..core.polytope import (
    CombinatorialPolytope,
    dehn_sommerville_holds,
    h_vector,
    morse_index_counts,
    random_direction,
)
from ..utils.config import Settings
from ..utils.metrics import AGREE, DISAGREE, alternating_sum, is_palindromic, kunneth_with_circle, verdict

MAX_DIRECTION_ATTEMPTS = 1000


@dataclass
class CrossCheck:
    """Comparación de vectores de Betti calculados por vías independientes"""

    name: str
    vectors: Dict[str, Tuple[int, ...]]
    verdict: str
    notes: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.verdict == AGREE

    def to_dict(self) -> Dict:
        return {
            "name": self.name,
            "vectors": {k: list(v) for k, v in self.vectors.items()},
            "verdict": self.verdict,
            "notes": list(self.notes),
        }


@dataclass
class PropertyResult:
    name: str
    passed: bool
    detail: str = ""

    def to_dict(self) -> Dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


class BettiEvaluator:
    """
    Validación cruzada de los números de Betti: h-vector, anillo de caras
    y el complejo celular de fuerza bruta.
    """

    def __init__(self, settings: Optional[Settings] = None):
        self.settings = settings or Settings()
        self.logger = logging.getLogger(__name__)

    # --- utilidades internas ---

    def _ring(self, charmap: CharacteristicMap) -> facering.GradedRingModel:
        return facering.build_ring(charmap, monomial_cap=self.settings.monomial_cap)

    def _oracle(self, charmap: CharacteristicMap, c: Optional[CohomologyClass] = None) -> Tuple[int, ...]:
        if c is None:
            complex_ = qc.small_cover_complex(charmap, self.settings.cell_cap)
        else:
            complex_ = qc.double_cover_complex(charmap, c, self.settings.cell_cap)
        return qc.betti(complex_)

    # --- small cover: tres vías ---

    def three_way_check(
        self,
        charmap: CharacteristicMap,
        name: str = "three-way",
        model: Optional[facering.GradedRingModel] = None,
    ) -> CrossCheck:
        """h_vector = graded_dims = betti del oráculo"""
        P = charmap.polytope
        self.logger.info(f"Comparación de tres vías sobre {name}: n={P.n}, m={P.m}")
        model = model or self._ring(charmap)
        vectors = {
            "h": h_vector(P),
            "ring": facering.graded_dims(model),
            "oracle": self._oracle(charmap),
        }
        return CrossCheck(name, vectors, verdict(*vectors.values()))

    # --- cubiertas dobles ---

    def double_cover_check(
        self,
        charmap: CharacteristicMap,
        c: CohomologyClass,
        name: str = "doublecover",
        model: Optional[facering.GradedRingModel] = None,
    ) -> CrossCheck:
        model = model or self._ring(charmap)
        gysin = facering.gysin_betti(model, c)
        vectors = {"gysin": gysin.betti, "oracle": self._oracle(charmap, c)}
        notes = ["disconnected"] if gysin.disconnected else []
        check = CrossCheck(name, vectors, verdict(*vectors.values()), notes)
        if not check.ok:
            self.logger.warning(f"{name}: Gysin {gysin.betti} != oráculo {vectors['oracle']}")
        return check

    def section_check(
        self,
        charmap: CharacteristicMap,
        section: qc.SectionClassResult,
        name: str = "section",
        model: Optional[facering.GradedRingModel] = None,
    ) -> CrossCheck:
        """Fórmula de h-vectores, Gysin y oráculo; además k_m = d_m - h_m(S) y Betti(Y) = h(S)"""
        P = charmap.polytope
        model = model or self._ring(charmap)
        c = section.cohomology_class
        vectors = {
            "formula": facering.section_formula_betti(h_vector(P), section.h_S),
            "gysin": facering.gysin_betti(model, c).betti,
            "oracle": self._oracle(charmap, c),
        }
        notes = []
        agreed = verdict(*vectors.values())
        if not facering.lemma_k_check(model, c, section.h_S):
            notes.append("lemma_k: FAIL")
            agreed = DISAGREE
        submanifold = qc.submanifold_betti(charmap, section, self.settings.cell_cap)
        if tuple(submanifold) != tuple(section.h_S):
            notes.append(f"Betti(Y) = {submanifold} != h(S) = {section.h_S}")
            agreed = DISAGREE
        return CrossCheck(name, vectors, agreed, notes)

    def exhaustive_gysin_sweep(
        self,
        charmap: CharacteristicMap,
        name: str = "sweep",
    ) -> List[CrossCheck]:
        """Gysin frente al oráculo para las 2^{m-n} clases"""
        exponent = charmap.m - charmap.n
        if exponent > self.settings.exhaustive_class_limit:
            raise SizeLimitError("clases", 2 ** exponent, 2 ** self.settings.exhaustive_class_limit)
        model = self._ring(charmap)
        classes = all_classes(charmap)
        results = []
        for c in tqdm(classes, desc=name, disable=not self.settings.show_progress):
            label = "".join(map(str, c.vector))
            results.append(self.double_cover_check(charmap, c, f"{name}[{label}]", model))
        self.logger.info(f"{name}: {sum(r.ok for r in results)}/{len(results)} clases concuerdan")
        return results

    # --- prisma ---

    def prism_kunneth_check(self, charmap: CharacteristicMap, c: CohomologyClass) -> CrossCheck:
        """La cubierta de M_{P×I, λ_w} respecto de las dos bases es M_w × S^1"""
        base = self._oracle(charmap, c)
        pulled = c.pullback_to_prism()
        prism_map = pulled.charmap
        vectors = {
            "kunneth": kunneth_with_circle(base),
            "oracle": self._oracle(prism_map, pulled),
            "gysin": facering.gysin_betti(self._ring(prism_map), pulled).betti,
        }
        notes = [f"b(M_w) = {base}"]
        return CrossCheck("prism-proposition", vectors, verdict(*vectors.values()), notes)

    # --- teoría de Morse ---

    def morse_independence(
        self,
        P: CombinatorialPolytope,
        count: Optional[int] = None,
        seed: Optional[int] = None,
    ) -> CrossCheck:
        """Conteos de índice para direcciones aleatorias genéricas frente al h-vector"""
        count = self.settings.random_directions if count is None else count
        rng = np.random.default_rng(self.settings.seed if seed is None else seed)
        h = h_vector(P)
        vectors: Dict[str, Tuple[int, ...]] = {"h": h}
        attempts = 0
        while len(vectors) <= count:
            attempts += 1
            if attempts > MAX_DIRECTION_ATTEMPTS:
                raise NonGenericError("no se encontraron suficientes direcciones genéricas")
            direction = random_direction(P.n, rng)
            try:
                morse = morse_index_counts(P, P.geometry, direction, self.settings.genericity_epsilon)
            except NonGenericError:
                continue
            vectors[f"l{len(vectors)}"] = morse.counts
        return CrossCheck("morse", vectors, verdict(*vectors.values()))

    # --- propiedades ---

    def property_suite(self, charmap: CharacteristicMap) -> List[PropertyResult]:
        P = charmap.polytope
        complex_ = qc.small_cover_complex(charmap, self.settings.cell_cap)
        b = qc.betti(complex_)
        h = h_vector(P)
        results = [
            PropertyResult("boundary_squared", qc.boundary_squared_is_zero(complex_)),
            PropertyResult("poincare_duality", is_palindromic(b), f"betti = {b}"),
            PropertyResult(
                "euler_characteristic",
                qc.euler_characteristic(complex_) == alternating_sum(b) == alternating_sum(h),
                f"chi = {qc.euler_characteristic(complex_)}",
            ),
            PropertyResult("dehn_sommerville", dehn_sommerville_holds(h), f"h = {h}"),
            self._canonical_rep_property(charmap),
            self._preimage_property(charmap, complex_),
            self._square_obstruction_property(charmap),
        ]
        failed = [r.name for r in results if not r.passed]
        if failed:
            self.logger.warning(f"Propiedades fallidas: {failed}")
        return results

    def _canonical_rep_property(self, charmap: CharacteristicMap) -> PropertyResult:
        """Sumar una forma lineal no cambia el representante; el representante es idempotente"""
        rng = np.random.default_rng(self.settings.seed)
        forms = charmap.linear_forms.to_array()
        for _ in range(32):
            c = CohomologyClass.of(charmap, rng.integers(0, 2, charmap.m))
            shifted = c.array() ^ forms[int(rng.integers(0, charmap.n))]
            rep = c.canonical_rep()
            if not np.array_equal(rep, charmap.reduce_class(shifted)):
                return PropertyResult("canonical_rep", False, f"clase {c.vector}")
            if not np.array_equal(rep, charmap.reduce_class(rep)):
                return PropertyResult("canonical_rep", False, f"no idempotente en {c.vector}")
        return PropertyResult("canonical_rep", True)

    def _preimage_property(self, charmap: CharacteristicMap, complex_: qc.QuotientComplex) -> PropertyResult:
        """2^{n - rank} componentes de p^{-1}(G_T) frente a b_0 del subcomplejo"""
        P = charmap.polytope
        for face in P.lattice.all_faces():
            expected = qc.preimage_components(P, charmap.matrix, face)
            observed = qc.subcomplex_components(complex_, face)
            if expected != observed:
                return PropertyResult("preimage_components", False, f"cara {face}: {expected} != {observed}")
        return PropertyResult("preimage_components", True)

    def _square_obstruction_property(self, charmap: CharacteristicMap) -> PropertyResult:
        """Toda clase de sección encontrada cumple w² = 0"""
        P = charmap.polytope
        if P.geometry is None or P.n < 2:
            return PropertyResult("square_obstruction", True, "sin secciones genéricas")
        found = qc.find_section_classes(
            charmap,
            P.geometry,
            self.settings.random_directions,
            self.settings.seed,
            self.settings.genericity_epsilon,
        )
        model = self._ring(charmap)
        bad = [r.cohomology_class.vector for r in found if not facering.square_is_zero(model, r.cohomology_class)]
        return PropertyResult(
            "square_obstruction", not bad, f"{len(found)} clases de sección" + (f"; fallan {bad}" if bad else "")
        )


def all_agree(checks: Sequence[CrossCheck]) -> bool:
    return all(check.ok for check in checks)
