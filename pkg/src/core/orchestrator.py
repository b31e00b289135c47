# src/core/orchestrator.py
import dataclasses
import logging
from typing import Any, Dict, List, Optional, Sequence

from ..data_management import fixtures
from ..data_management.json_manager import JSONManager
from ..evaluation.betti_evaluator import BettiEvaluator, CrossCheck, all_agree
from ..utils.config import RunConfig, Settings, load_settings
from ..utils.logging_utils import setup_logging
from ..utils.metrics import AGREE, DISAGREE, format_vector, verdict
from . import facering, quotientcomplex as qc
from .charmap import CharacteristicMap, CohomologyClass, has_odd_weight
from .exceptions import ConfigurationError, SmallCoverError
from .polytope import (
    CombinatorialPolytope,
    dehn_sommerville_holds,
    f_vector,
    faces_by_dimension,
    h_vector,
    permutohedron,
    polygon,
)

SUBCOMMANDS = ("hvector", "betti", "doublecover", "section", "verify", "demo")
DEMOS = ("pentagon-gap", "permutohedron-example", "prism-proposition")
PENTAGON_DIRECTION = (0.0, 1.0)


def _table(title: str, columns: Sequence[str], rows: Sequence[Sequence[Any]]) -> Dict[str, Any]:
    return {"title": title, "columns": list(columns), "rows": [list(r) for r in rows]}


def _degree_table(title: str, vectors: Dict[str, Sequence[int]]) -> Dict[str, Any]:
    length = max(len(v) for v in vectors.values())
    rows = [[k] + [v[k] if k < len(v) else "" for v in vectors.values()] for k in range(length)]
    return _table(title, ["degree"] + list(vectors), rows)


def _check_table(check: CrossCheck) -> Dict[str, Any]:
    table = _degree_table(check.name, check.vectors)
    table["verdict"] = check.verdict
    return table


def _class_label(c: CohomologyClass) -> str:
    return "{" + ",".join(c.names()) + "}"


class ComputationOrchestrator:
    """
    Orquestador principal del sistema.
    Carga la configuración, resuelve las entradas de una petición y coordina
    el cálculo y la validación cruzada de los números de Betti.
    """

    def __init__(self, config_path: Optional[str] = None, settings: Optional[Settings] = None):
        self.settings = settings or load_settings(config_path)
        self.logger = self._setup_logging()

        # Componentes principales
        self.evaluator = BettiEvaluator(self.settings)
        self.json_manager = JSONManager(self.settings.output_path)

        # Estado del sistema
        self.run_state = {
            'runs_completed': 0,
            'runs_failed': 0,
            'last_command': None,
        }

    def _setup_logging(self) -> logging.Logger:
        """Configura sistema de logging"""
        setup_logging(self.settings)
        return logging.getLogger(__name__)

    # --- entradas ---

    def _settings_for(self, config: RunConfig) -> Settings:
        if config.cap is None:
            return self.settings
        return dataclasses.replace(self.settings, cell_cap=config.cap)

    def _polytope(self, config: RunConfig) -> CombinatorialPolytope:
        if config.input_path is not None:
            return self.json_manager.load_polytope(config.input_path)
        return fixtures.build_polytope(
            config.builder, config.dim, config.gons, self.settings.builder_vertex_cap
        )

    def _charmap(self, config: RunConfig, P: CombinatorialPolytope) -> CharacteristicMap:
        return fixtures.resolve_charmap(config.lambda_spec, config.builder, P, self.json_manager)

    def _describe(self, P: CombinatorialPolytope, config: RunConfig) -> Dict[str, Any]:
        return {
            "source": config.builder or config.input_path,
            "n": P.n,
            "m": P.m,
            "vertices": len(P.vertices),
            "facets": list(P.facet_names),
        }

    # --- ejecución ---

    def run(self, config: RunConfig) -> Dict[str, Any]:
        """Ejecuta una petición; los errores del dominio quedan en result['error']"""
        result: Dict[str, Any] = {
            "command": config.subcommand,
            "ok": False,
            "notes": [],
            "tables": [],
            "error": None,
        }
        self.run_state['last_command'] = config.subcommand
        self.logger.info(f"Iniciando {config.subcommand}")
        evaluator = self.evaluator
        try:
            if config.cap is not None:
                self.evaluator = BettiEvaluator(self._settings_for(config))
            handler = getattr(self, f"run_{config.subcommand}", None)
            if config.subcommand not in SUBCOMMANDS or handler is None:
                raise ConfigurationError(f"subcomando desconocido {config.subcommand!r}")
            handler(config, result)
            self.run_state['runs_completed'] += 1
        except SmallCoverError as e:
            self.logger.error(f"Error en {config.subcommand}: {e}")
            result["ok"] = False
            result["error"] = f"{type(e).__name__}: {e}"
            result["invalid_request"] = isinstance(e, ConfigurationError)
            self.run_state['runs_failed'] += 1
        finally:
            self.evaluator = evaluator

        if self.settings.save_runs:
            self.json_manager.save_run(result)
        self.logger.info(f"{config.subcommand} completado: ok={result['ok']}")
        return result

    def run_hvector(self, config: RunConfig, result: Dict[str, Any]) -> None:
        P = self._polytope(config)
        f, h = f_vector(P), h_vector(P)
        result["input"] = self._describe(P, config)
        result["f_vector"] = list(f)
        result["h_vector"] = list(h)
        result["faces_by_dimension"] = list(faces_by_dimension(P))
        rows = [[k, f[k] if k < len(f) else "", h[k]] for k in range(len(h))]
        result["tables"].append(_table("h-vector", ["k", "f_k", "h_k"], rows))
        result["notes"].append(f"f = {format_vector(f)}; h = {format_vector(h)}")
        if not dehn_sommerville_holds(h):
            self.logger.warning(f"Dehn-Sommerville no se cumple: h = {h}")
            result["notes"].append("Dehn-Sommerville: FAIL")
        result["ok"] = True

    def run_betti(self, config: RunConfig, result: Dict[str, Any]) -> None:
        if config.method not in ("ring", "oracle", "both"):
            raise ConfigurationError("--method debe ser ring, oracle o both")
        P = self._polytope(config)
        charmap = self._charmap(config, P)
        result["input"] = self._describe(P, config)
        result["lambda"] = charmap.as_rows()
        if config.method == "both":
            check = self.evaluator.three_way_check(charmap, "betti")
        else:
            vectors = {"h": h_vector(P)}
            if config.method == "ring":
                vectors["ring"] = facering.graded_dims(facering.build_ring(
                    charmap, monomial_cap=self.settings.monomial_cap))
            else:
                vectors["oracle"] = qc.betti(qc.small_cover_complex(charmap, self.evaluator.settings.cell_cap))
            check = CrossCheck("betti", vectors, verdict(*vectors.values()))
        self._record(result, [check])

    def run_doublecover(self, config: RunConfig, result: Dict[str, Any]) -> None:
        if config.method not in ("gysin", "oracle", "both"):
            raise ConfigurationError("--method debe ser gysin, oracle o both")
        P = self._polytope(config)
        charmap = self._charmap(config, P)
        c = fixtures.resolve_class(config.class_spec, charmap, self.json_manager)
        result["input"] = self._describe(P, config)
        result["class"] = list(c.vector)
        result["notes"].append(f"w = {_class_label(c)}")
        if config.method == "both":
            check = self.evaluator.double_cover_check(charmap, c)
        elif config.method == "gysin":
            gysin = facering.gysin_betti(facering.build_ring(
                charmap, monomial_cap=self.settings.monomial_cap), c)
            check = CrossCheck("doublecover", {"gysin": gysin.betti}, AGREE,
                               ["disconnected"] if gysin.disconnected else [])
        else:
            oracle = qc.betti(qc.double_cover_complex(charmap, c, self.evaluator.settings.cell_cap))
            check = CrossCheck("doublecover", {"oracle": oracle}, AGREE,
                               ["disconnected"] if c.is_trivial() else [])
        self._record(result, [check])

    def run_section(self, config: RunConfig, result: Dict[str, Any]) -> None:
        if (config.facet is None) == (config.hyperplane is None):
            raise ConfigurationError("section requiere exactamente uno de --facet o --hyperplane")
        P = self._polytope(config)
        charmap = self._charmap(config, P)
        result["input"] = self._describe(P, config)
        if config.facet is not None:
            i = fixtures.resolve_facet(config.facet, P)
            section = qc.facet_section_class(charmap, i)
            result["notes"].append(f"S = {P.facet_names[i]}: p^-1(S) conexo")
        else:
            direction, threshold = fixtures.parse_hyperplane(config.hyperplane, P.n)
            section = qc.section_to_class(
                charmap, P.geometry, direction, threshold, self.settings.genericity_epsilon
            )
            result["notes"].append(
                f"S = crossed facets {[P.facet_names[j] for j in section.section.crossed_facets]}: "
                f"p^-1(S) tiene 2 componentes, psi = {format_vector(section.psi)}"
            )
        c = section.cohomology_class
        result["class"] = list(c.vector)
        result["other_class"] = list(section.other_class.vector)
        result["section_h_vector"] = list(section.h_S)
        result["notes"].append(f"h(S) = {format_vector(section.h_S)}; w = {_class_label(c)}")
        result["notes"].append(f"w' = {_class_label(section.other_class)}")
        self._record(result, [self.evaluator.section_check(charmap, section)])

    def run_verify(self, config: RunConfig, result: Dict[str, Any]) -> None:
        """Tres vías, barrido exhaustivo, independencia de Morse y propiedades sobre una entrada"""
        P = self._polytope(config)
        charmap = self._charmap(config, P)
        result["input"] = self._describe(P, config)
        checks = [self.evaluator.three_way_check(charmap)]
        if P.m - P.n <= self.settings.exhaustive_class_limit:
            checks.extend(self.evaluator.exhaustive_gysin_sweep(charmap))
        else:
            result["notes"].append("barrido exhaustivo omitido: demasiadas clases")
        if P.geometry is not None:
            checks.append(self.evaluator.morse_independence(P))
        properties = self.evaluator.property_suite(charmap)
        result["properties"] = [p.to_dict() for p in properties]
        result["tables"].append(_table(
            "properties", ["property", "passed", "detail"],
            [[p.name, "PASS" if p.passed else "FAIL", p.detail] for p in properties],
        ))
        self._record(result, checks)
        result["ok"] = result["ok"] and all(p.passed for p in properties)

    def run_demo(self, config: RunConfig, result: Dict[str, Any]) -> None:
        if config.demo not in DEMOS:
            raise ConfigurationError(f"demo desconocida {config.demo!r}; opciones: {', '.join(DEMOS)}")
        result["demo"] = config.demo
        getattr(self, "_demo_" + config.demo.replace("-", "_"))(config, result)

    # --- demos ---

    def _demo_pentagon_gap(self, config: RunConfig, result: Dict[str, Any]) -> None:
        """Celdas de Morse del pentágono con altura y: la condición de frontera falla"""
        P = polygon(5)
        charmap = fixtures.alternating_polygon_map(P)
        eps = self.settings.genericity_epsilon
        violations = qc.frontier_check(charmap, P.geometry, PENTAGON_DIRECTION, eps)
        groups = qc.group_violations(violations)

        def face_label(face):
            if len(face) == P.n:
                return P.label(face)
            return "/".join(P.facet_names[j] for j in face)

        result["tables"].append(_table(
            "frontier violations", ["v", "w", "face", "index(v)", "index(w)"],
            [[x.vertex, x.witness_vertex, face_label(x.witness_face), x.index_v, x.index_w] for x in violations],
        ))
        table = qc.filtration_e1_table(charmap, P.geometry, PENTAGON_DIRECTION, eps)
        result["tables"].append(_table("E1", ["p", "q", "vertex"], [list(e) for e in table.entries]))
        oracle = qc.betti(qc.small_cover_complex(charmap, self.evaluator.settings.cell_cap))
        check = CrossCheck("e1-degeneration", {"E1": table.totals, "oracle": oracle},
                           verdict(table.totals, oracle))
        w = CohomologyClass.indicator(charmap, [0])
        defect = qc.cover_e1_defect(charmap, P.geometry, PENTAGON_DIRECTION, w, eps,
                                    self.evaluator.settings.cell_cap)
        result["violations"] = [dataclasses.asdict(x) for x in violations]
        result["violation_classes"] = [list(key) for key in sorted(groups)]
        for x in violations:
            result["notes"].append(f"violation v={x.vertex}, w={x.witness_vertex}")
        result["notes"].append(f"{len(groups)} violation class(es)")
        result["notes"].append(f"cover E1 defect for w = {_class_label(w)}: {format_vector(defect)}")
        self._record(result, [check])
        result["ok"] = result["ok"] and len(groups) == 1

    def _demo_permutohedron_example(self, config: RunConfig, result: Dict[str, Any]) -> None:
        """Coloración por cardinal, perturbación ν en una faceta de color 1 y su sección"""
        P = permutohedron(3)
        coloring = fixtures.coloring_map(P)
        nu = fixtures.nu_map(P)
        G = fixtures.first_color_one_facet(P)
        a = [0, 1, 0]
        result["notes"].append(
            f"nu: lambda({P.facet_names[G]}) + e2 es característico (peso impar: {has_odd_weight(a)})"
        )
        section = qc.facet_section_class(nu, G)
        result["notes"].append(f"S = {P.facet_names[G]}; h(S) = {format_vector(section.h_S)}")
        result["lambda"] = nu.as_rows()
        self._record(result, [
            self.evaluator.three_way_check(coloring, "coloring"),
            self.evaluator.three_way_check(nu, "nu"),
            self.evaluator.section_check(nu, section, "section"),
        ])

    def _demo_prism_proposition(self, config: RunConfig, result: Dict[str, Any]) -> None:
        """Künneth: la cubierta doble del prisma es M_w × S^1"""
        builder = config.builder or "square"
        P = fixtures.build_polytope(builder, config.dim, config.gons, self.settings.builder_vertex_cap)
        charmap = fixtures.resolve_charmap(config.lambda_spec, builder, P, self.json_manager)
        spec = config.class_spec or P.facet_names[0]
        c = fixtures.resolve_class(spec, charmap, self.json_manager)
        result["notes"].append(f"w = {_class_label(c)}")
        check = self.evaluator.prism_kunneth_check(charmap, c)
        self._record(result, [check])
        result["notes"].append(f"Künneth check {'PASS' if check.ok else 'FAIL'}")

    # --- resultados ---

    def _record(self, result: Dict[str, Any], checks: List[CrossCheck]) -> None:
        result["checks"] = [check.to_dict() for check in checks]
        for check in checks:
            result["tables"].append(_check_table(check))
            result["notes"].extend(f"{check.name}: {note}" for note in check.notes)
        result["ok"] = all_agree(checks)
        result["verdict"] = AGREE if result["ok"] else DISAGREE

    def get_system_status(self) -> Dict[str, Any]:
        """Retorna estado actual del sistema"""
        return {
            'run_state': dict(self.run_state),
            'settings': dataclasses.asdict(self.settings),
        }
