"""Dense matrices over prime fields and exact rank computation.

Two elimination paths share one pivot rule (first nonzero entry in column
order, scanning rows top-down): an XOR path for p=2 with rows packed into
Python integers, and a vectorized modular path for general p. Only rank
values are observable and the two paths must agree; a differential test
enforces this.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import ParameterError
from .families import is_prime


@dataclass(frozen=True, eq=False)
class FieldMatrix:
    """Immutable dense matrix over F_p; entries stored reduced mod p."""

    modulus: int
    array: np.ndarray

    def __post_init__(self):
        if not is_prime(self.modulus):
            raise ParameterError(f"modulus must be prime, got {self.modulus}")
        arr = np.asarray(self.array, dtype=np.int64)
        if arr.ndim != 2:
            raise ParameterError("matrix must be two-dimensional")
        arr = np.mod(arr, self.modulus)
        arr.setflags(write=False)
        object.__setattr__(self, "array", arr)

    @classmethod
    def from_rows(cls, modulus: int, rows: Sequence[Sequence[int]]) -> "FieldMatrix":
        return cls(modulus, np.array(rows, dtype=np.int64))

    @classmethod
    def identity(cls, modulus: int, size: int) -> "FieldMatrix":
        return cls(modulus, np.eye(size, dtype=np.int64))

    @property
    def rows(self) -> int:
        return self.array.shape[0]

    @property
    def cols(self) -> int:
        return self.array.shape[1]

    def __eq__(self, other) -> bool:
        if not isinstance(other, FieldMatrix):
            return NotImplemented
        return self.modulus == other.modulus and np.array_equal(self.array, other.array)

    def __hash__(self):
        return hash((self.modulus, self.array.shape, self.array.tobytes()))


def pack_gf2_rows(matrix: FieldMatrix) -> list[int]:
    """Rows as integers with bit j = column j; requires p = 2."""
    if matrix.modulus != 2:
        raise ParameterError("packed rows are defined for p = 2 only")
    out = []
    for row in matrix.array:
        word = 0
        for j in np.nonzero(row)[0]:
            word |= 1 << int(j)
        out.append(word)
    return out


def rank_gf2_packed(rows: Iterable[int]) -> int:
    """Rank over F_2 of bit-packed rows; pivots claimed in column order."""
    pivots: dict[int, int] = {}
    rank = 0
    for row in rows:
        cur = row
        while cur:
            low = cur & -cur
            piv = pivots.get(low)
            if piv is None:
                pivots[low] = cur
                rank += 1
                break
            cur ^= piv
    return rank


def _rank_generic(array: np.ndarray, p: int) -> int:
    m = array.copy()
    n_rows, n_cols = m.shape
    r = 0
    for c in range(n_cols):
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            m[[r, piv]] = m[[piv, r]]
        inv = pow(int(m[r, c]), -1, p)
        m[r] = m[r] * inv % p
        col = m[:, c].copy()
        col[r] = 0
        m -= np.outer(col, m[r])
        m %= p
        r += 1
        if r == n_rows:
            break
    return r


def rank(matrix: FieldMatrix, *, path: str = "auto") -> int:
    """Exact rank over F_p.

    path: "auto" picks the packed kernel for p=2 and the generic modular
    elimination otherwise; "packed" and "generic" force one side (the
    packed path requires p=2).
    """
    if path not in ("auto", "packed", "generic"):
        raise ParameterError(f"unknown rank path {path!r}")
    if path == "packed" and matrix.modulus != 2:
        raise ParameterError("packed rank path requires p = 2")
    if path == "generic" or (path == "auto" and matrix.modulus != 2):
        return _rank_generic(matrix.array, matrix.modulus)
    return rank_gf2_packed(pack_gf2_rows(matrix))


class SpanTrackerGF2:
    """Incrementally tracked span of bit-packed length-m vectors over F_2."""

    __slots__ = ("length", "_pivots")

    def __init__(self, length: int):
        self.length = length
        self._pivots: dict[int, int] = {}

    @property
    def rank(self) -> int:
        return len(self._pivots)

    def reduce(self, vec: int) -> int:
        cur = vec
        while cur:
            piv = self._pivots.get(cur & -cur)
            if piv is None:
                return cur
            cur ^= piv
        return 0

    def contains(self, vec: int) -> bool:
        return self.reduce(vec) == 0

    def add(self, vec: int) -> bool:
        cur = self.reduce(vec)
        if cur == 0:
            return False
        self._pivots[cur & -cur] = cur
        return True


class SpanTrackerModP:
    """Incrementally tracked span of length-m vectors over F_p, pivots normalized."""

    __slots__ = ("modulus", "length", "_pivots")

    def __init__(self, modulus: int, length: int):
        if not is_prime(modulus):
            raise ParameterError(f"modulus must be prime, got {modulus}")
        self.modulus = modulus
        self.length = length
        self._pivots: dict[int, np.ndarray] = {}

    @property
    def rank(self) -> int:
        return len(self._pivots)

    def reduce(self, vec: np.ndarray) -> np.ndarray:
        p = self.modulus
        cur = np.mod(np.asarray(vec, dtype=np.int64), p)
        while True:
            nz = np.nonzero(cur)[0]
            if nz.size == 0:
                return cur
            j = int(nz[0])
            piv = self._pivots.get(j)
            if piv is None:
                return cur
            cur = (cur - cur[j] * piv) % p

    def contains(self, vec: np.ndarray) -> bool:
        return not self.reduce(vec).any()

    def add(self, vec: np.ndarray) -> bool:
        cur = self.reduce(vec)
        nz = np.nonzero(cur)[0]
        if nz.size == 0:
            return False
        j = int(nz[0])
        inv = pow(int(cur[j]), -1, self.modulus)
        self._pivots[j] = cur * inv % self.modulus
        return True
