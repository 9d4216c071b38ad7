"""Bit-packed linear algebra over GF(2).

A :class:`BitMatrix` stores each row as a Python ``int`` whose bit ``j`` is
the entry in column ``j``.  Python integers are arbitrary precision, so a row
with more than 64 columns simply spans several machine words; row XOR is the
only operation the hot loops need.

Column vectors handed around by the rest of the package use the transposed
convention: bit ``i`` of a column integer is the entry in row ``i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import DimensionError, IndexOutOfRange, RankDeficient

MAX_ROWS = 64
MAX_COLS = 256


@dataclass(frozen=True)
class BitMatrix:
    rows: int
    cols: int
    data: tuple[int, ...]

    def __post_init__(self):
        if not (0 <= self.rows <= MAX_ROWS and 0 <= self.cols <= MAX_COLS):
            raise DimensionError(
                f"{self.rows}x{self.cols} exceeds the {MAX_ROWS}x{MAX_COLS} limit"
            )
        if len(self.data) != self.rows:
            raise ValueError("row count does not match data")
        limit = 1 << self.cols
        for word in self.data:
            if word < 0 or word >= limit:
                raise ValueError("row has bits beyond the column count")

    # -- construction -----------------------------------------------------
    @classmethod
    def from_lists(cls, entries: Sequence[Sequence[int]], cols: int | None = None) -> "BitMatrix":
        if cols is None:
            cols = len(entries[0]) if entries else 0
        data = []
        for row in entries:
            if len(row) != cols:
                raise ValueError("ragged matrix")
            word = 0
            for j, x in enumerate(row):
                if x & 1:
                    word |= 1 << j
            data.append(word)
        return cls(len(data), cols, tuple(data))

    @classmethod
    def from_strings(cls, lines: Sequence[str]) -> "BitMatrix":
        """Build from strings such as ``"1011"`` (leftmost character = column 0)."""
        return cls.from_lists([[int(ch) for ch in line] for line in lines],
                              cols=len(lines[0]) if lines else 0)

    @classmethod
    def from_columns(cls, columns: Sequence[int], rows: int) -> "BitMatrix":
        data = [0] * rows
        for j, col in enumerate(columns):
            if col >> rows:
                raise ValueError("column has bits beyond the row count")
            i = 0
            while col:
                if col & 1:
                    data[i] |= 1 << j
                col >>= 1
                i += 1
        return cls(rows, len(columns), tuple(data))

    @classmethod
    def identity(cls, r: int) -> "BitMatrix":
        return cls(r, r, tuple(1 << i for i in range(r)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BitMatrix":
        return cls(rows, cols, (0,) * rows)

    # -- views -------------------------------------------------------------
    def entry(self, i: int, j: int) -> int:
        return (self.data[i] >> j) & 1

    def columns(self) -> tuple[int, ...]:
        return _transpose_words(self.data, self.cols)

    def to_lists(self) -> list[list[int]]:
        return [[(w >> j) & 1 for j in range(self.cols)] for w in self.data]

    def to_strings(self) -> list[str]:
        return ["".join("1" if (w >> j) & 1 else "0" for j in range(self.cols))
                for w in self.data]

    def transpose(self) -> "BitMatrix":
        return BitMatrix(self.cols, self.rows, self.columns())

    def permute_columns(self, perm: Sequence[int]) -> "BitMatrix":
        """Column ``k`` of the result is column ``perm[k]`` of ``self``."""
        return submatrix_columns(self, perm)

    def __str__(self):
        return "\n".join(self.to_strings())


def _transpose_words(words: Sequence[int], width: int) -> tuple[int, ...]:
    out = [0] * width
    for i, w in enumerate(words):
        bit = 1 << i
        j = 0
        while w:
            if w & 1:
                out[j] |= bit
            w >>= 1
            j += 1
    return tuple(out)


def rref(words: Iterable[int], width: int) -> tuple[list[int], list[int]]:
    """Reduced row echelon form with the leftmost-pivot rule.

    Returns the nonzero reduced rows and their pivot columns, in pivot order.
    """
    rows = [w for w in words if w]
    pivots: list[int] = []
    rank = 0
    for j in range(width):
        if rank == len(rows):
            break
        bit = 1 << j
        for i in range(rank, len(rows)):
            if rows[i] & bit:
                break
        else:
            continue
        rows[rank], rows[i] = rows[i], rows[rank]
        p = rows[rank]
        for k in range(len(rows)):
            if k != rank and rows[k] & bit:
                rows[k] ^= p
        pivots.append(j)
        rank += 1
    return rows[:rank], pivots


def rank(A: BitMatrix) -> int:
    return rank_of_vectors(A.data)


def rank_of_vectors(vectors: Iterable[int]) -> int:
    """GF(2) rank of a collection of integer-packed vectors."""
    pivots: dict[int, int] = {}
    for v in vectors:
        while v:
            top = v.bit_length() - 1
            if top in pivots:
                v ^= pivots[top]
            else:
                pivots[top] = v
                break
    return len(pivots)


def span_basis(vectors: Iterable[int]) -> list[int]:
    """A reduced basis (each vector's top bit cleared from all others)."""
    basis: list[int] = []
    for v in vectors:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            top = v.bit_length() - 1
            basis = [b ^ v if (b >> top) & 1 else b for b in basis]
            basis.append(v)
    basis.sort(reverse=True)
    return basis


def reduce_vector(v: int, basis: Sequence[int]) -> int:
    """Residue of ``v`` modulo a basis returned by :func:`span_basis`."""
    for b in basis:
        v = min(v, v ^ b)
    return v


def standardize(A: BitMatrix) -> tuple[BitMatrix, tuple[int, ...]]:
    """Row-reduce a full-row-rank matrix to ``[I_r | D]``.

    Returns ``(B, perm)`` where column ``k`` of ``B`` comes from column
    ``perm[k]`` of ``A``: the pivot columns (leftmost-pivot rule) first, then
    the remaining columns in their original order.
    """
    reduced, pivots = rref(A.data, A.cols)
    if len(reduced) < A.rows:
        raise RankDeficient(f"rank {len(reduced)} < {A.rows} rows")
    return _standard_from_rref(reduced, pivots, A.cols)


def _standard_from_rref(reduced: list[int], pivots: list[int], width: int):
    pivot_set = set(pivots)
    perm = tuple(pivots) + tuple(j for j in range(width) if j not in pivot_set)
    data = []
    for w in reduced:
        out = 0
        for k, j in enumerate(perm):
            if (w >> j) & 1:
                out |= 1 << k
        data.append(out)
    return BitMatrix(len(reduced), width, tuple(data)), perm


def row_space_codewords(A: BitMatrix) -> Iterator[tuple[int, int]]:
    """Yield ``(coeff, codeword)`` for every nonzero coefficient vector.

    Coefficients follow the binary reflected Gray code, so consecutive
    codewords differ by a single row XOR.  ``coeff`` bit ``i`` selects row ``i``.
    """
    rows = A.data
    coeff = 0
    word = 0
    for k in range(1, 1 << A.rows):
        i = (k & -k).bit_length() - 1
        coeff ^= 1 << i
        word ^= rows[i]
        yield coeff, word


def submatrix_columns(A: BitMatrix, S: Sequence[int]) -> BitMatrix:
    S = list(S)
    for j in S:
        if not 0 <= j < A.cols:
            raise IndexOutOfRange(f"column {j} not in 0..{A.cols - 1}")
    data = []
    for w in A.data:
        out = 0
        for k, j in enumerate(S):
            if (w >> j) & 1:
                out |= 1 << k
        data.append(out)
    return BitMatrix(A.rows, len(S), tuple(data))
