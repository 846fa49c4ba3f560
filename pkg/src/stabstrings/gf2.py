"""Dense GF(2) linear algebra on bit-packed vectors.

Vectors are Python ints used as bitsets (bit ``i`` = column ``i``), so a row
operation is a handful of word-wise XORs regardless of width.  Pivoting is
always lowest-index column first, rows in insertion order, which makes every
rank, kernel and membership result reproducible bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


class DimensionError(ValueError):
    """Operands have incompatible dimensions."""


def _lowest_bit(x: int) -> int:
    return (x & -x).bit_length() - 1


@dataclass(frozen=True)
class BitVector:
    """Fixed-length vector over GF(2), packed into one int."""

    length: int
    value: int = 0

    def __post_init__(self) -> None:
        if self.length < 0:
            raise DimensionError("negative length")
        if self.value < 0 or self.value >> self.length:
            raise DimensionError("value has bits beyond declared length")

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> "BitVector":
        value = 0
        n = 0
        for b in bits:
            if b & 1:
                value |= 1 << n
            n += 1
        return cls(n, value)

    @classmethod
    def from_indices(cls, length: int, indices: Iterable[int]) -> "BitVector":
        value = 0
        for i in indices:
            value |= 1 << i
        return cls(length, value)

    def get(self, i: int) -> int:
        if not 0 <= i < self.length:
            raise DimensionError(f"index {i} out of range for length {self.length}")
        return (self.value >> i) & 1

    def bits(self) -> tuple[int, ...]:
        return tuple((self.value >> i) & 1 for i in range(self.length))

    def indices(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.length) if (self.value >> i) & 1)

    def weight(self) -> int:
        return self.value.bit_count()

    @property
    def is_zero(self) -> bool:
        return self.value == 0

    def dot(self, other: "BitVector") -> int:
        self._check(other)
        return (self.value & other.value).bit_count() & 1

    def _check(self, other: "BitVector") -> None:
        if self.length != other.length:
            raise DimensionError(f"length mismatch: {self.length} != {other.length}")

    def __xor__(self, other: "BitVector") -> "BitVector":
        self._check(other)
        return BitVector(self.length, self.value ^ other.value)

    def __and__(self, other: "BitVector") -> "BitVector":
        self._check(other)
        return BitVector(self.length, self.value & other.value)

    def __str__(self) -> str:
        return "".join(str(b) for b in self.bits())

    def to_hex(self) -> str:
        return format(self.value, "x")


@dataclass(frozen=True)
class BitMatrix:
    """Rows of equal-length BitVectors."""

    n_cols: int
    rows: tuple[BitVector, ...]

    def __post_init__(self) -> None:
        for r in self.rows:
            if r.length != self.n_cols:
                raise DimensionError("ragged rows")

    @classmethod
    def from_rows(cls, rows: Sequence[BitVector], n_cols: int | None = None) -> "BitMatrix":
        if n_cols is None:
            if not rows:
                raise DimensionError("cannot infer width of an empty matrix")
            n_cols = rows[0].length
        return cls(n_cols, tuple(rows))

    @classmethod
    def from_bits(cls, rows: Sequence[Sequence[int]], n_cols: int | None = None) -> "BitMatrix":
        vecs = [BitVector.from_bits(r) for r in rows]
        return cls.from_rows(vecs, n_cols)

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    def transpose(self) -> "BitMatrix":
        cols = []
        for c in range(self.n_cols):
            cols.append(BitVector.from_bits(r.get(c) for r in self.rows))
        return BitMatrix(self.n_rows, tuple(cols))


class Echelon:
    """Incremental reduced row echelon form with combination tracking.

    Every kept pivot row remembers which input rows XOR to it, so dependent
    rows yield kernel certificates and membership queries yield witnesses in
    terms of the original row indexes.
    """

    def __init__(self, n_cols: int):
        self.n_cols = n_cols
        self._rows: list[int] = []
        self._tracks: list[int] = []
        self._pivots: dict[int, int] = {}  # column -> index into _rows
        self.n_added = 0

    @property
    def rank(self) -> int:
        return len(self._rows)

    def _reduce(self, row: int, track: int) -> tuple[int, int]:
        # rows are kept fully reduced, so one pass over pivots suffices
        for col, i in self._pivots.items():
            if (row >> col) & 1:
                row ^= self._rows[i]
                track ^= self._tracks[i]
        return row, track

    def add(self, vec: int) -> int | None:
        """Add a row (as int). Returns None if the rank grew, otherwise the
        kernel combination (bitmask over added rows, including this one)."""
        idx = self.n_added
        self.n_added += 1
        row, track = self._reduce(vec, 1 << idx)
        if row == 0:
            return track
        col = _lowest_bit(row)
        for j, r in enumerate(self._rows):
            if (r >> col) & 1:
                self._rows[j] ^= row
                self._tracks[j] ^= track
        self._pivots[col] = len(self._rows)
        self._rows.append(row)
        self._tracks.append(track)
        return None

    def residual(self, vec: int) -> tuple[int, int]:
        """Reduce a vector against the current span.

        Returns (residual, combo): residual == 0 iff vec is in the span, and
        combo is the bitmask of added rows whose XOR plus residual equals vec.
        """
        return self._reduce(vec, 0)

    def contains(self, vec: int) -> bool:
        row, _ = self._reduce(vec, 0)
        return row == 0


def rank(m: BitMatrix) -> int:
    """GF(2) row rank."""
    ech = Echelon(m.n_cols)
    for r in m.rows:
        ech.add(r.value)
    return ech.rank


def kernel_basis(m: BitMatrix) -> list[BitVector]:
    """Basis of the left kernel {v : v . m = 0}, vectors of length n_rows.

    Size is n_rows - rank(m); deterministic for a fixed input.
    """
    ech = Echelon(m.n_cols)
    out = []
    for r in m.rows:
        combo = ech.add(r.value)
        if combo is not None:
            out.append(BitVector(m.n_rows, combo))
    return out


def solve_membership(m: BitMatrix, v: BitVector) -> BitVector | None:
    """Coefficients c with c . m = v, or None when v is outside the row span."""
    if v.length != m.n_cols:
        raise DimensionError(f"vector length {v.length} != n_cols {m.n_cols}")
    ech = Echelon(m.n_cols)
    for r in m.rows:
        ech.add(r.value)
    residual, combo = ech.residual(v.value)
    if residual:
        return None
    return BitVector(m.n_rows, combo)
