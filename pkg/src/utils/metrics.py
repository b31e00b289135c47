# src/utils/metrics.py
from typing import Iterable, Sequence, Tuple

AGREE = "AGREE"
DISAGREE = "DISAGREE"


def verdict(*vectors: Sequence[int]) -> str:
    """AGREE si todos los vectores coinciden exactamente"""
    normalized = {tuple(int(x) for x in v) for v in vectors}
    return AGREE if len(normalized) <= 1 else DISAGREE


def alternating_sum(values: Iterable[int]) -> int:
    return sum((-1) ** k * int(v) for k, v in enumerate(values))


def kunneth_with_circle(betti: Sequence[int]) -> Tuple[int, ...]:
    """Betti de X × S^1 sobre un cuerpo: B_k = b_k + b_{k-1}"""
    padded = [0] + list(betti) + [0]
    return tuple(padded[k + 1] + padded[k] for k in range(len(betti) + 1))


def is_palindromic(values: Sequence[int]) -> bool:
    return tuple(values) == tuple(reversed(values))


def format_vector(values: Sequence[int]) -> str:
    return "(" + ",".join(str(int(v)) for v in values) + ")"
