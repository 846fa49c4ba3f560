"""Phase-tracked Pauli operators on a rectangular torus of qubit sites.

An operator is stored as i^e * prod_s X^{x_s} Z^{z_s} over row-major sites.
The displayed global phase is the prefix of the letter form (each XZ site
renders as a Y at the cost of one factor of i), so the fixed multiplication
convention is X.Z = -iY, Z.X = +iY, X.Y = iZ and cyclic relatives.
"""

from __future__ import annotations

from dataclasses import dataclass

from .gf2 import BitVector, DimensionError

# letter -> (x bit, z bit, i-exponent contributed when parsing the letter)
_LETTER_XZE = {"I": (0, 0, 0), "X": (1, 0, 0), "Y": (1, 1, 1), "Z": (0, 1, 0)}
_PREFIXES = {"+": 0, "": 0, "-": 2, "+i": 1, "i": 1, "-i": 3}
_PREFIX_TEXT = {0: "+", 1: "+i", 2: "-", 3: "-i"}


class LatticeMismatchError(ValueError):
    """Operators or areas live on different lattices."""


class EmptySupportError(ValueError):
    """Requested the support window of the identity operator."""


def _check_same_lattice(a, b) -> None:
    if (a.n_rows, a.n_cols) != (b.n_rows, b.n_cols):
        raise LatticeMismatchError(
            f"lattice mismatch: {a.n_rows}x{a.n_cols} vs {b.n_rows}x{b.n_cols}"
        )


@dataclass(frozen=True)
class CyclicInterval:
    """Contiguous interval [start, start+length) taken modulo period."""

    start: int
    length: int
    period: int

    @property
    def end(self) -> int:
        """Inclusive end index, modulo the period."""
        return (self.start + self.length - 1) % self.period

    def contains(self, i: int) -> bool:
        return ((i - self.start) % self.period) < self.length

    def contains_interval(self, other: "CyclicInterval") -> bool:
        if other.length > self.length:
            return False
        if self.length == self.period:
            return True
        return ((other.start - self.start) % self.period) + other.length <= self.length

    def __str__(self) -> str:
        return f"[{self.start},{self.end}]"


@dataclass(frozen=True)
class SupportWindow:
    rows: CyclicInterval
    cols: CyclicInterval


def _min_cyclic_cover(occupied: list[int], period: int) -> CyclicInterval:
    """Shortest cyclic interval covering all occupied indices.

    Tie-break: the cover with the smallest starting index.
    """
    occ = sorted(set(occupied))
    m = len(occ)
    if m == period:
        return CyclicInterval(0, period, period)
    best_start, best_len = None, None
    for i in range(m):
        nxt = occ[(i + 1) % m]
        gap = (nxt - occ[i]) % period - 1 if m > 1 else period - 1
        start = nxt if m > 1 else occ[0]
        length = period - gap
        if (
            best_len is None
            or length < best_len
            or (length == best_len and start < best_start)
        ):
            best_start, best_len = start, length
    return CyclicInterval(best_start, best_len, period)


@dataclass(frozen=True)
class Area:
    """A set of sites on the torus, materialized as a bit mask."""

    n_rows: int
    n_cols: int
    mask: int

    @classmethod
    def full(cls, n_rows: int, n_cols: int) -> "Area":
        return cls(n_rows, n_cols, (1 << (n_rows * n_cols)) - 1)

    @classmethod
    def empty(cls, n_rows: int, n_cols: int) -> "Area":
        return cls(n_rows, n_cols, 0)

    @classmethod
    def from_sites(cls, n_rows: int, n_cols: int, sites) -> "Area":
        mask = 0
        for r, c in sites:
            mask |= 1 << ((r % n_rows) * n_cols + (c % n_cols))
        return cls(n_rows, n_cols, mask)

    @classmethod
    def row_band(cls, n_rows: int, n_cols: int, top: int, height: int) -> "Area":
        """Horizontal band of `height` rows whose top row is `top` (mod n)."""
        if height >= n_rows:
            return cls.full(n_rows, n_cols)
        row_mask = (1 << n_cols) - 1
        mask = 0
        for i in range(height):
            mask |= row_mask << (((top + i) % n_rows) * n_cols)
        return cls(n_rows, n_cols, mask)

    @classmethod
    def col_band(cls, n_rows: int, n_cols: int, left: int, width: int) -> "Area":
        if width >= n_cols:
            return cls.full(n_rows, n_cols)
        mask = 0
        for i in range(width):
            c = (left + i) % n_cols
            for r in range(n_rows):
                mask |= 1 << (r * n_cols + c)
        return cls(n_rows, n_cols, mask)

    @classmethod
    def box(cls, n_rows: int, n_cols: int, top: int, left: int, height: int, width: int) -> "Area":
        rows = cls.row_band(n_rows, n_cols, top, height)
        cols = cls.col_band(n_rows, n_cols, left, width)
        return cls(n_rows, n_cols, rows.mask & cols.mask)

    def complement(self) -> "Area":
        return Area(self.n_rows, self.n_cols, self.mask ^ ((1 << (self.n_rows * self.n_cols)) - 1))

    def contains_site(self, r: int, c: int) -> bool:
        return bool((self.mask >> ((r % self.n_rows) * self.n_cols + (c % self.n_cols))) & 1)

    @property
    def mask_bits(self) -> BitVector:
        return BitVector(self.n_rows * self.n_cols, self.mask)


@dataclass(frozen=True)
class PauliOperator:
    """Pauli tensor product on an n_rows x n_cols torus with tracked phase."""

    n_rows: int
    n_cols: int
    x: int
    z: int
    phase_exp: int  # exponent e in i^e * prod X^x Z^z

    def __post_init__(self) -> None:
        n = self.n_rows * self.n_cols
        if self.x >> n or self.z >> n or self.x < 0 or self.z < 0:
            raise DimensionError("exponent bits beyond lattice size")
        object.__setattr__(self, "phase_exp", self.phase_exp % 4)

    # -- constructors ------------------------------------------------------

    @classmethod
    def identity(cls, n_rows: int, n_cols: int | None = None) -> "PauliOperator":
        if n_cols is None:
            n_cols = n_rows
        return cls(n_rows, n_cols, 0, 0, 0)

    @classmethod
    def from_sites(cls, n_rows: int, n_cols: int, letters, sign: int = 1) -> "PauliOperator":
        """Build from {(row, col): letter}; sign is +1 or -1."""
        x = z = e = 0
        for (r, c), letter in letters.items():
            lx, lz, le = _LETTER_XZE[letter]
            if lx == lz == 0:
                continue
            idx = (r % n_rows) * n_cols + (c % n_cols)
            if (x >> idx) & 1 or (z >> idx) & 1:
                raise ValueError(f"duplicate site ({r},{c})")
            x |= lx << idx
            z |= lz << idx
            e += le
        if sign == -1:
            e += 2
        elif sign != 1:
            raise ValueError("sign must be +1 or -1")
        return cls(n_rows, n_cols, x, z, e)

    @classmethod
    def single(cls, n_rows: int, n_cols: int, r: int, c: int, letter: str) -> "PauliOperator":
        return cls.from_sites(n_rows, n_cols, {(r, c): letter})

    @classmethod
    def from_text(cls, text: str) -> "PauliOperator":
        """Parse canonical text: optional phase prefix, then '/'-joined rows."""
        body = text.strip()
        prefix = ""
        while body and body[0] in "+-i":
            prefix += body[0]
            body = body[1:]
        if prefix not in _PREFIXES:
            raise ValueError(f"bad phase prefix {prefix!r}")
        rows = body.split("/")
        n_rows = len(rows)
        n_cols = len(rows[0])
        x = z = e = 0
        for r, row in enumerate(rows):
            if len(row) != n_cols:
                raise ValueError("ragged pattern rows")
            for c, letter in enumerate(row):
                if letter not in _LETTER_XZE:
                    raise ValueError(f"bad Pauli letter {letter!r}")
                lx, lz, le = _LETTER_XZE[letter]
                idx = r * n_cols + c
                x |= lx << idx
                z |= lz << idx
                e += le
        return cls(n_rows, n_cols, x, z, e + _PREFIXES[prefix])

    # -- basic structure ---------------------------------------------------

    @property
    def n_sites(self) -> int:
        return self.n_rows * self.n_cols

    @property
    def is_identity(self) -> bool:
        return self.x == 0 and self.z == 0 and self.phase_exp == 0

    @property
    def is_identity_pattern(self) -> bool:
        return self.x == 0 and self.z == 0

    @property
    def x_bits(self) -> BitVector:
        return BitVector(self.n_sites, self.x)

    @property
    def z_bits(self) -> BitVector:
        return BitVector(self.n_sites, self.z)

    def symplectic_bits(self) -> BitVector:
        """Length-2n vector [x | z] used for rank and membership arithmetic."""
        return BitVector(2 * self.n_sites, self.x | (self.z << self.n_sites))

    @property
    def phase(self) -> complex:
        """Global phase of the letter form: one of +1, -1, +1j, -1j."""
        y = (self.x & self.z).bit_count()
        return 1j ** ((self.phase_exp - y) % 4)

    @property
    def is_hermitian(self) -> bool:
        return self.phase in (1, -1)

    def weight(self) -> int:
        return (self.x | self.z).bit_count()

    def letter_at(self, r: int, c: int) -> str:
        idx = (r % self.n_rows) * self.n_cols + (c % self.n_cols)
        return "IXZY"[((self.x >> idx) & 1) | (((self.z >> idx) & 1) << 1)]

    # -- algebra -----------------------------------------------------------

    def multiply(self, other: "PauliOperator") -> "PauliOperator":
        _check_same_lattice(self, other)
        e = self.phase_exp + other.phase_exp + 2 * (self.z & other.x).bit_count()
        return PauliOperator(self.n_rows, self.n_cols, self.x ^ other.x, self.z ^ other.z, e)

    def __mul__(self, other: "PauliOperator") -> "PauliOperator":
        return self.multiply(other)

    def symplectic_inner(self, other: "PauliOperator") -> int:
        """0 when the operators commute, 1 when they anticommute."""
        _check_same_lattice(self, other)
        return ((self.x & other.z).bit_count() + (self.z & other.x).bit_count()) & 1

    def commutes_with(self, other: "PauliOperator") -> bool:
        return self.symplectic_inner(other) == 0

    def restrict(self, area: Area) -> "PauliOperator":
        """Replace every letter outside the area with identity; phase resets to +1."""
        _check_same_lattice(self, area)
        x = self.x & area.mask
        z = self.z & area.mask
        return PauliOperator(self.n_rows, self.n_cols, x, z, (x & z).bit_count())

    def support_window(self) -> SupportWindow:
        """Minimal cyclic row and column intervals covering the support."""
        supp = self.x | self.z
        if supp == 0:
            raise EmptySupportError("identity operator has no support window")
        rows, cols = set(), set()
        for idx in BitVector(self.n_sites, supp).indices():
            rows.add(idx // self.n_cols)
            cols.add(idx % self.n_cols)
        return SupportWindow(
            _min_cyclic_cover(sorted(rows), self.n_rows),
            _min_cyclic_cover(sorted(cols), self.n_cols),
        )

    def translated(self, dr: int, dc: int) -> "PauliOperator":
        nr, nc = self.n_rows, self.n_cols
        x = z = 0
        for idx in range(self.n_sites):
            bx = (self.x >> idx) & 1
            bz = (self.z >> idx) & 1
            if bx or bz:
                r, c = divmod(idx, nc)
                nidx = ((r + dr) % nr) * nc + (c + dc) % nc
                x |= bx << nidx
                z |= bz << nidx
        return PauliOperator(nr, nc, x, z, self.phase_exp)

    def transpose(self) -> "PauliOperator":
        """Swap rows and columns (lattice becomes n_cols x n_rows)."""
        nr, nc = self.n_rows, self.n_cols
        x = z = 0
        for idx in range(self.n_sites):
            bx = (self.x >> idx) & 1
            bz = (self.z >> idx) & 1
            if bx or bz:
                r, c = divmod(idx, nc)
                nidx = c * nr + r
                x |= bx << nidx
                z |= bz << nidx
        return PauliOperator(nc, nr, x, z, self.phase_exp)

    # -- rendering ---------------------------------------------------------

    def to_text(self) -> str:
        y = (self.x & self.z).bit_count()
        prefix = _PREFIX_TEXT[(self.phase_exp - y) % 4]
        rows = []
        for r in range(self.n_rows):
            rows.append(
                "".join(self.letter_at(r, c) for c in range(self.n_cols))
            )
        return prefix + "/".join(rows)

    def __str__(self) -> str:
        return self.to_text()
