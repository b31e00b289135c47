# src/core/gf2linalg.py
"""
Álgebra lineal densa sobre GF(2).

Las filas se guardan empaquetadas en palabras de 64 bits (numpy uint64);
la eliminación gaussiana opera por XOR de filas completas.
Todas las funciones son puras: no modifican sus entradas.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

WORD = 64
_ONE = np.uint64(1)
_SHIFTS = np.arange(WORD, dtype=np.uint64)
_WEIGHTS = _ONE << _SHIFTS


def _word_count(cols: int) -> int:
    return max(1, (cols + WORD - 1) // WORD)


def to_gf2(vector: Sequence[int]) -> np.ndarray:
    """Convierte a vector 1-D de uint8 con entradas 0/1"""
    return (np.asarray(vector, dtype=np.int64).reshape(-1) & 1).astype(np.uint8)


def _pack(array: np.ndarray) -> np.ndarray:
    rows, cols = array.shape
    words = _word_count(cols)
    padded = np.zeros((rows, words * WORD), dtype=np.uint64)
    padded[:, :cols] = array & 1
    return (padded.reshape(rows, words, WORD) * _WEIGHTS).sum(axis=2, dtype=np.uint64)


def _unpack(data: np.ndarray, cols: int) -> np.ndarray:
    rows, words = data.shape
    bits = (data[:, :, None] >> _SHIFTS) & _ONE
    return bits.reshape(rows, words * WORD)[:, :cols].astype(np.uint8)


def _bit(data: np.ndarray, row: int, col: int) -> int:
    word, offset = divmod(col, WORD)
    return int((data[row, word] >> np.uint64(offset)) & _ONE)


class BitMatrix:
    """Matriz inmutable de bits con filas empaquetadas"""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, rows: int, cols: int, data: Optional[np.ndarray] = None):
        if rows < 0 or cols < 0:
            raise ValueError(f"forma inválida ({rows}, {cols})")
        self.rows = rows
        self.cols = cols
        if data is None:
            data = np.zeros((rows, _word_count(cols)), dtype=np.uint64)
        elif data.shape != (rows, _word_count(cols)):
            raise ValueError(f"datos empaquetados con forma {data.shape}")
        data = np.array(data, dtype=np.uint64, copy=True)
        data.setflags(write=False)
        self._data = data

    # --- constructores ---

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BitMatrix":
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls.from_array(np.eye(n, dtype=np.uint8))

    @classmethod
    def from_array(cls, array) -> "BitMatrix":
        arr = np.asarray(array, dtype=np.int64)
        if arr.ndim != 2:
            raise ValueError(f"se esperaba una matriz 2-D, forma {arr.shape}")
        arr = (arr & 1).astype(np.uint64)
        return cls(arr.shape[0], arr.shape[1], _pack(arr))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: Optional[int] = None) -> "BitMatrix":
        rows = [to_gf2(r) for r in rows]
        if not rows:
            return cls(0, cols or 0)
        width = len(rows[0]) if cols is None else cols
        if any(len(r) != width for r in rows):
            raise ValueError("filas de longitud distinta")
        return cls.from_array(np.vstack(rows) if width else np.zeros((len(rows), 0)))

    @classmethod
    def from_supports(cls, supports: Iterable[Iterable[int]], cols: int) -> "BitMatrix":
        """Cada fila viene dada por los índices de columna con bit 1 (repetidos se cancelan)"""
        supports = list(supports)
        arr = np.zeros((len(supports), cols), dtype=np.uint64)
        for i, support in enumerate(supports):
            for j in support:
                arr[i, j] ^= _ONE
        return cls(len(supports), cols, _pack(arr))

    # --- acceso ---

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def packed(self) -> np.ndarray:
        return self._data

    def to_array(self) -> np.ndarray:
        return _unpack(self._data, self.cols)

    def __getitem__(self, index: Tuple[int, int]) -> int:
        row, col = index
        if not (0 <= row < self.rows and 0 <= col < self.cols):
            raise IndexError(index)
        return _bit(self._data, row, col)

    def row(self, i: int) -> np.ndarray:
        return _unpack(self._data[i:i + 1], self.cols)[0]

    def is_zero(self) -> bool:
        return not bool(self._data.any())

    # --- operaciones ---

    def transpose(self) -> "BitMatrix":
        return BitMatrix.from_array(self.to_array().T)

    def vstack(self, other: "BitMatrix") -> "BitMatrix":
        if other.cols != self.cols:
            raise ValueError(f"columnas distintas: {self.cols} vs {other.cols}")
        return BitMatrix(self.rows + other.rows, self.cols,
                         np.vstack([self._data, other._data]))

    def hstack(self, other: "BitMatrix") -> "BitMatrix":
        if other.rows != self.rows:
            raise ValueError(f"filas distintas: {self.rows} vs {other.rows}")
        return BitMatrix.from_array(np.hstack([self.to_array(), other.to_array()]))

    def append_column(self, column: Sequence[int]) -> "BitMatrix":
        col = to_gf2(column)
        if len(col) != self.rows:
            raise ValueError(f"columna de longitud {len(col)}, se esperaban {self.rows}")
        return BitMatrix.from_array(np.hstack([self.to_array(), col.reshape(-1, 1)]))

    def select_rows(self, indices: Sequence[int]) -> "BitMatrix":
        idx = np.asarray(list(indices), dtype=np.int64)
        return BitMatrix(len(idx), self.cols, self._data[idx] if len(idx) else None)

    def matvec(self, vector: Sequence[int]) -> np.ndarray:
        vec = to_gf2(vector)
        if len(vec) != self.cols:
            raise ValueError(f"vector de longitud {len(vec)}, se esperaban {self.cols}")
        return ((self.to_array().astype(np.int64) @ vec.astype(np.int64)) & 1).astype(np.uint8)

    def __matmul__(self, other: "BitMatrix") -> "BitMatrix":
        if self.cols != other.rows:
            raise ValueError(f"producto {self.shape} @ {other.shape}")
        prod = self.to_array().astype(np.int64) @ other.to_array().astype(np.int64)
        return BitMatrix.from_array(prod & 1)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return self.shape == other.shape and np.array_equal(self._data, other._data)

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self._data.tobytes()))

    def __repr__(self) -> str:
        body = "; ".join("".join(str(b) for b in row) for row in self.to_array())
        return f"BitMatrix({self.rows}x{self.cols}: {body})"


def _eliminate(data: np.ndarray, cols: int) -> Tuple[np.ndarray, List[int]]:
    """Forma escalonada reducida; devuelve las filas no nulas y las columnas pivote"""
    data = np.array(data, dtype=np.uint64, copy=True)
    nrows = data.shape[0]
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        if r == nrows:
            break
        word, offset = divmod(c, WORD)
        column = (data[:, word] & (_ONE << np.uint64(offset))) != 0
        candidates = np.flatnonzero(column[r:])
        if candidates.size == 0:
            continue
        p = r + int(candidates[0])
        if p != r:
            data[[r, p]] = data[[p, r]]
            column[[r, p]] = column[[p, r]]
        hits = np.flatnonzero(column)
        hits = hits[hits != r]
        if hits.size:
            data[hits] ^= data[r]
        pivots.append(c)
        r += 1
    return data[:r], pivots


@dataclass(frozen=True)
class RowEchelon:
    """Base escalonada reducida de un espacio de filas"""

    basis: BitMatrix
    pivots: Tuple[int, ...]
    _rows: np.ndarray = field(repr=False, compare=False)

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, vector: Sequence[int]) -> np.ndarray:
        """Representante canónico de vector + espacio de filas (ceros en los pivotes)"""
        v = to_gf2(vector).copy()
        if len(v) != self.basis.cols:
            raise ValueError(f"vector de longitud {len(v)}, se esperaban {self.basis.cols}")
        for row, p in zip(self._rows, self.pivots):
            if v[p]:
                v ^= row
        return v

    def contains(self, vector: Sequence[int]) -> bool:
        return not self.reduce(vector).any()


def row_reduce(matrix: BitMatrix) -> RowEchelon:
    data, pivots = _eliminate(matrix.packed, matrix.cols)
    basis = BitMatrix(len(pivots), matrix.cols, data if len(pivots) else None)
    return RowEchelon(basis=basis, pivots=tuple(pivots), _rows=basis.to_array())


def rank(matrix: BitMatrix) -> int:
    """Rango sobre GF(2)"""
    return len(_eliminate(matrix.packed, matrix.cols)[1])


def kernel_basis(matrix: BitMatrix) -> List[np.ndarray]:
    """Base del núcleo derecho, un vector por columna libre (en orden creciente)"""
    data, pivots = _eliminate(matrix.packed, matrix.cols)
    pivot_set = set(pivots)
    basis = []
    for free in range(matrix.cols):
        if free in pivot_set:
            continue
        v = np.zeros(matrix.cols, dtype=np.uint8)
        v[free] = 1
        for row, p in enumerate(pivots):
            v[p] = _bit(data, row, free)
        basis.append(v)
    return basis


def solve(matrix: BitMatrix, b: Sequence[int]) -> Optional[np.ndarray]:
    """
    Resuelve M·x = b. Devuelve None si no hay solución.
    Representante canónico: forma reducida con variables libres a cero.
    """
    rhs = to_gf2(b)
    if len(rhs) != matrix.rows:
        raise ValueError(f"b de longitud {len(rhs)}, se esperaban {matrix.rows}")
    augmented = matrix.append_column(rhs)
    data, pivots = _eliminate(augmented.packed, augmented.cols)
    if matrix.cols in pivots:
        return None
    x = np.zeros(matrix.cols, dtype=np.uint8)
    for row, p in enumerate(pivots):
        x[p] = _bit(data, row, matrix.cols)
    return x


def in_rowspace(matrix: BitMatrix, vector: Sequence[int]) -> bool:
    v = to_gf2(vector)
    if len(v) != matrix.cols:
        raise ValueError(f"vector de longitud {len(v)}, se esperaban {matrix.cols}")
    return row_reduce(matrix).contains(v)


def span_rank(vectors: Sequence[Sequence[int]], cols: int) -> int:
    """Rango del subespacio generado por una lista (posiblemente vacía) de vectores"""
    return rank(BitMatrix.from_rows(list(vectors), cols=cols))


def bits_to_int(vector: Sequence[int]) -> int:
    """Codifica un vector como entero (coordenada 0 = bit menos significativo)"""
    return sum(int(b) << i for i, b in enumerate(to_gf2(vector)))


def int_to_bits(value: int, length: int) -> np.ndarray:
    return np.array([(value >> i) & 1 for i in range(length)], dtype=np.uint8)
