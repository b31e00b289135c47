# src/core/exceptions.py
"""Jerarquía de errores del sistema de small covers."""
from typing import Any, List, Optional, Sequence


class SmallCoverError(Exception):
    """Error base de todos los cálculos"""


class ConfigurationError(SmallCoverError):
    """Configuración inválida o fuente de entrada ambigua"""


class SizeLimitError(SmallCoverError):
    """El cálculo supera el límite de tamaño configurado"""

    def __init__(self, what: str, size: int, cap: int):
        super().__init__(f"{what}: {size} excede el límite {cap}")
        self.what = what
        self.size = size
        self.cap = cap


class DimensionMismatchError(SmallCoverError):
    """Formas incompatibles entre matrices, vectores o polítopos"""


class PolytopeError(SmallCoverError):
    """Datos combinatorios que no describen un polítopo simple"""


class NonSimpleError(PolytopeError):
    pass


class RidgeConditionError(PolytopeError):
    pass


class DisconnectedComplexError(PolytopeError):
    pass


class FacetIndexError(PolytopeError):
    pass


class GeometryError(SmallCoverError):
    pass


class GeometryRequiredError(GeometryError):
    def __init__(self, operation: str):
        super().__init__(f"{operation}: geometry required")


class NonGenericError(GeometryError):
    pass


class EmptySectionError(GeometryError):
    pass


class CharacteristicMapError(SmallCoverError):
    """El mapa no es característico; guarda los vértices culpables"""

    def __init__(self, message: str, offending: Optional[Sequence[Any]] = None):
        super().__init__(message)
        self.offending: List[Any] = list(offending or [])


class ColoringError(CharacteristicMapError):
    pass


class SectionClassError(SmallCoverError):
    """La sección no cumple las hipótesis de una clase de sección"""


class ConnectedPreimageError(SectionClassError):
    pass


class TooManyComponentsError(SectionClassError):
    pass


class DisconnectedFacetPreimageError(SectionClassError):
    pass


class InvalidPairError(SmallCoverError):
    """Los h-vectores dados no provienen de un par (P, S) válido"""


class InvariantViolationError(SmallCoverError):
    """Una invariante interna falló: indica un bug, no un error del usuario"""
