# src/data_management/json_manager.py
import json
import logging
from pathlib import Path
from typing import Any, Dict, Optional, Union

import numpy as np

from ..core.charmap import CharacteristicMap, CohomologyClass
from ..core.exceptions import ConfigurationError, DimensionMismatchError
from ..core.gf2linalg import BitMatrix
from ..core.polytope import CombinatorialPolytope, from_vertex_facets
from ..core.quotientcomplex import QuotientComplex

SCHEMA_VERSION = 1

PathLike = Union[str, Path]


def _plain(value: Any) -> Any:
    """Convierte tuplas, arrays y enteros de numpy a tipos JSON"""
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, np.ndarray):
        return [_plain(v) for v in value.tolist()]
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    return value


class JSONManager:
    """
    Lectura y escritura de los archivos JSON del sistema:
    polítopos, mapas característicos, clases y resultados de ejecución.
    """

    def __init__(self, output_path: PathLike = "data/output/"):
        self.output_path = Path(output_path)
        self.logger = logging.getLogger(__name__)

    def _read(self, path: PathLike) -> Dict[str, Any]:
        try:
            with open(path, "r") as file:
                data = json.load(file)
        except FileNotFoundError:
            raise ConfigurationError(f"no existe el archivo {path}") from None
        except json.JSONDecodeError as e:
            raise ConfigurationError(f"{path}: JSON inválido ({e})") from e
        if not isinstance(data, dict):
            raise ConfigurationError(f"{path}: se esperaba un objeto JSON")
        return data

    # --- polítopos ---

    def polytope_from_dict(self, data: Dict[str, Any]) -> CombinatorialPolytope:
        for key in ("n", "facets", "vertices"):
            if key not in data:
                raise ConfigurationError(f"falta el campo {key!r} en el polítopo")
        facets = list(data["facets"])
        return from_vertex_facets(
            int(data["n"]),
            len(facets),
            [str(x) for x in facets],
            data["vertices"],
            coords=data.get("coords"),
        )

    def load_polytope(self, path: PathLike) -> CombinatorialPolytope:
        P = self.polytope_from_dict(self._read(path))
        self.logger.info(f"Polítopo cargado de {path}: n={P.n}, m={P.m}, {len(P.vertices)} vértices")
        return P

    def polytope_to_dict(self, P: CombinatorialPolytope) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "n": P.n,
            "facets": list(P.facet_names),
            "vertices": [list(v) for v in P.vertices],
        }
        if P.geometry is not None:
            data["coords"] = [list(P.geometry.coordinates[v]) for v in P.vertices]
        return data

    # --- mapas y clases ---

    def charmap_from_dict(self, data: Dict[str, Any], P: CombinatorialPolytope) -> CharacteristicMap:
        if "lambda" not in data:
            raise ConfigurationError("falta el campo 'lambda'")
        rows = data["lambda"]
        if len(rows) != P.m or any(len(r) != P.n for r in rows):
            raise DimensionMismatchError(f"'lambda' debe ser {P.m}x{P.n}")
        return CharacteristicMap.create(P, BitMatrix.from_rows(rows, cols=P.n))

    def load_charmap(self, path: PathLike, P: CombinatorialPolytope) -> CharacteristicMap:
        return self.charmap_from_dict(self._read(path), P)

    def charmap_to_dict(self, charmap: CharacteristicMap) -> Dict[str, Any]:
        return {"lambda": charmap.as_rows()}

    def load_class(self, path: PathLike, charmap: CharacteristicMap) -> CohomologyClass:
        data = self._read(path)
        if "class" not in data:
            raise ConfigurationError("falta el campo 'class'")
        return CohomologyClass.of(charmap, data["class"])

    def class_to_dict(self, c: CohomologyClass) -> Dict[str, Any]:
        return {"class": list(c.vector)}

    # --- complejos y resultados ---

    def dump_complex(self, complex_: QuotientComplex, path: PathLike) -> Path:
        target = Path(path)
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(self.dumps(complex_.to_dict(), versioned=False))
        return target

    def dumps(self, result: Dict[str, Any], versioned: bool = True) -> str:
        """Serialización determinista (claves ordenadas)"""
        payload = dict(result)
        if versioned:
            payload["schema"] = SCHEMA_VERSION
        return json.dumps(_plain(payload), sort_keys=True, indent=2)

    def save_run(self, result: Dict[str, Any], name: Optional[str] = None) -> Path:
        """Guarda resultados de una ejecución bajo output_path"""
        self.output_path.mkdir(parents=True, exist_ok=True)
        target = self.output_path / f"{name or result.get('command', 'run')}.json"
        target.write_text(self.dumps(result))
        self.logger.info(f"Resultados guardados en {target}")
        return target
