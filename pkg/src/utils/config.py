# src/utils/config.py
"""Carga de configuración: YAML con marcadores ${VAR} / ${VAR:-defecto} resueltos desde el entorno"""
import os
import re
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Any, Dict, Optional

import yaml
from dotenv import load_dotenv

from ..core.exceptions import ConfigurationError

PROJECT_ROOT = Path(__file__).resolve().parents[2]
DEFAULT_CONFIG_PATH = PROJECT_ROOT / "configs" / "config.yaml"
DEFAULT_ENV_PATH = PROJECT_ROOT / "configs" / ".env"

_PLACEHOLDER = re.compile(r"\$\{([A-Za-z_][A-Za-z0-9_]*)(?::-([^}]*))?\}")

# sección del YAML -> clave -> campo de Settings
_LAYOUT = {
    "limits": {
        "cell_cap": "cell_cap",
        "monomial_cap": "monomial_cap",
        "builder_vertex_cap": "builder_vertex_cap",
    },
    "geometry": {"genericity_epsilon": "genericity_epsilon"},
    "evaluation": {
        "random_directions": "random_directions",
        "seed": "seed",
        "exhaustive_class_limit": "exhaustive_class_limit",
        "show_progress": "show_progress",
    },
    "logging": {"level": "log_level", "file": "log_file"},
    "data": {"output_path": "output_path", "save_runs": "save_runs"},
}


@dataclass
class Settings:
    cell_cap: int = 1_000_000
    monomial_cap: int = 2_000_000
    builder_vertex_cap: int = 100_000
    genericity_epsilon: float = 1e-9
    random_directions: int = 20
    seed: int = 12334567
    exhaustive_class_limit: int = 8
    show_progress: bool = False
    log_level: str = "INFO"
    log_file: Optional[str] = None
    output_path: str = "data/output/"
    save_runs: bool = False


def _expand(value: Any) -> Any:
    if isinstance(value, str):
        return _PLACEHOLDER.sub(lambda m: os.getenv(m.group(1), m.group(2) or ""), value)
    if isinstance(value, dict):
        return {k: _expand(v) for k, v in value.items()}
    if isinstance(value, list):
        return [_expand(v) for v in value]
    return value


def _coerce(name: str, value: Any, default: Any) -> Any:
    if value is None or value == "":
        return default
    try:
        if isinstance(default, bool):
            if isinstance(value, str):
                return value.strip().lower() in ("1", "true", "yes", "on")
            return bool(value)
        if isinstance(default, int):
            return int(float(value))
        if isinstance(default, float):
            return float(value)
        return str(value)
    except (TypeError, ValueError) as e:
        raise ConfigurationError(f"valor inválido para {name}: {value!r}") from e


def settings_from_dict(raw: Dict[str, Any]) -> Settings:
    defaults = Settings()
    values = {f.name: getattr(defaults, f.name) for f in fields(Settings)}
    for section, keys in _LAYOUT.items():
        block = raw.get(section) or {}
        if not isinstance(block, dict):
            raise ConfigurationError(f"la sección {section!r} debe ser un mapa")
        for key, name in keys.items():
            if key in block:
                values[name] = _coerce(name, block[key], values[name])
    settings = Settings(**values)
    for name in ("cell_cap", "monomial_cap", "builder_vertex_cap", "random_directions"):
        if getattr(settings, name) <= 0:
            raise ConfigurationError(f"{name} debe ser positivo")
    if settings.genericity_epsilon <= 0:
        raise ConfigurationError("genericity_epsilon debe ser positivo")
    return settings


def load_settings(config_path: Optional[str] = None, env_path: Optional[str] = None) -> Settings:
    """Carga configuración del sistema; sin archivo se usan los valores por defecto"""
    env_file = Path(env_path) if env_path else DEFAULT_ENV_PATH
    if env_file.exists():
        load_dotenv(env_file)
    path = Path(config_path) if config_path else DEFAULT_CONFIG_PATH
    if not path.exists():
        if config_path:
            raise ConfigurationError(f"no existe el archivo de configuración {path}")
        return Settings()
    with open(path, "r") as file:
        raw = yaml.safe_load(file) or {}
    if not isinstance(raw, dict):
        raise ConfigurationError(f"{path}: se esperaba un mapa YAML")
    return settings_from_dict(_expand(raw))


@dataclass(frozen=True)
class RunConfig:
    """Petición de una ejecución de la CLI"""

    subcommand: str
    builder: Optional[str] = None
    dim: Optional[int] = None
    gons: Optional[int] = None
    input_path: Optional[str] = None
    lambda_spec: Optional[str] = None
    class_spec: Optional[str] = None
    facet: Optional[str] = None
    hyperplane: Optional[str] = None
    method: str = "both"
    output_format: str = "table"
    cap: Optional[int] = None
    demo: Optional[str] = None

    def __post_init__(self):
        if self.subcommand != "demo" and (self.builder is None) == (self.input_path is None):
            raise ConfigurationError("exactly one input source required: --builder or --input")
        if self.builder is not None and self.input_path is not None:
            raise ConfigurationError("--builder and --input are mutually exclusive")
        if self.output_format not in ("table", "json"):
            raise ConfigurationError(f"--format debe ser table o json, no {self.output_format!r}")
        if self.cap is not None and self.cap <= 0:
            raise ConfigurationError("--cap debe ser positivo")
