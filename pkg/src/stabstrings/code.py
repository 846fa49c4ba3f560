"""Stabilizer Hamiltonians on a torus: model, validation, text format, families.

The Hamiltonian is H = -(delta/2) * sum_n K_n over mutually commuting Pauli
terms, each confined to a window of bounded side.  Built-in families cover the
benchmark models (toric code, 1D/2D Ising chains, translated 3x3 patterns);
anything else arrives through the plain-text format documented in `parse`.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import gf2
from .gf2 import BitMatrix, BitVector
from .pauli import PauliOperator, SupportWindow


class CodeFormatError(ValueError):
    """Malformed code file."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ValidationError(ValueError):
    """Code violates a structural invariant; carries the full report."""

    def __init__(self, report: "ValidationReport"):
        self.report = report
        super().__init__(report.summary())


class FrustratedCodeError(ValueError):
    """Some product of generators equals minus identity."""


class NotSpecifiedError(ValueError):
    """Operation requires a specified Hamiltonian (R >= number of qubits)."""


@dataclass(frozen=True)
class ValidationReport:
    commutation_violations: tuple[tuple[int, int], ...]
    nonhermitian_generators: tuple[int, ...]
    identity_generators: tuple[int, ...]
    oversize_generators: tuple[int, ...]
    strip_safe: bool
    specified: bool
    k: int
    degeneracy_exponent: int | None
    frustrated: bool

    @property
    def accepted(self) -> bool:
        return not (
            self.commutation_violations
            or self.nonhermitian_generators
            or self.identity_generators
        )

    def summary(self) -> str:
        problems = []
        for i, j in self.commutation_violations:
            problems.append(f"generators {i} and {j} anticommute")
        for i in self.nonhermitian_generators:
            problems.append(f"generator {i} is not Hermitian")
        for i in self.identity_generators:
            problems.append(f"generator {i} is the identity")
        if not self.strip_safe:
            problems.append(
                f"lattice too small for k={self.k} windows (need both sides >= 2k); "
                f"oversize generators: {list(self.oversize_generators)}"
            )
        return "; ".join(problems) if problems else "ok"


class StabilizerCode:
    """Validated stabilizer Hamiltonian on an n_rows x n_cols torus."""

    def __init__(
        self,
        n_rows: int,
        n_cols: int,
        generators,
        delta: float = 1.0,
        strict_size: bool = True,
        family: str | None = None,
        _skip_checks: bool = False,
    ):
        if n_rows < 1 or n_cols < 1:
            raise ValueError("lattice sides must be positive")
        if delta <= 0:
            raise ValueError("delta must be positive")
        self.n_rows = n_rows
        self.n_cols = n_cols
        self.delta = float(delta)
        self.generators: tuple[PauliOperator, ...] = tuple(generators)
        self.family = family
        if not self.generators:
            raise ValueError("a code needs at least one generator")
        for g in self.generators:
            if (g.n_rows, g.n_cols) != (n_rows, n_cols):
                raise ValueError("generator lattice does not match the code lattice")
        self._windows: list[SupportWindow | None] = [
            None if g.is_identity_pattern else g.support_window() for g in self.generators
        ]
        self.k_rows = max((w.rows.length for w in self._windows if w), default=1)
        self.k_cols = max((w.cols.length for w in self._windows if w), default=1)
        self.k = max(self.k_rows, self.k_cols)
        self._transposed_cache: "StabilizerCode | None" = None
        self._report_cache: ValidationReport | None = None
        if _skip_checks:
            return
        report = self.validate()
        if not report.accepted:
            raise ValidationError(report)
        if strict_size and not report.strip_safe:
            raise ValidationError(report)

    # -- structure ---------------------------------------------------------

    @property
    def n(self) -> int:
        """Lattice side; rows of the site grid (equals cols for square codes)."""
        return self.n_rows

    @property
    def n_qubits(self) -> int:
        return self.n_rows * self.n_cols

    @property
    def n_generators(self) -> int:
        return len(self.generators)

    def window(self, i: int) -> SupportWindow:
        w = self._windows[i]
        assert w is not None
        return w

    def symplectic_matrix(self) -> BitMatrix:
        return BitMatrix.from_rows(
            [g.symplectic_bits() for g in self.generators], 2 * self.n_qubits
        )

    def subset_product(self, indicator: BitVector) -> PauliOperator:
        """Ordered product of the selected generators (lowest index first)."""
        if indicator.length != self.n_generators:
            raise gf2.DimensionError("indicator length != number of generators")
        out = PauliOperator.identity(self.n_rows, self.n_cols)
        for i in indicator.indices():
            out = out * self.generators[i]
        return out

    def transpose(self) -> "StabilizerCode":
        """The same code with rows and columns swapped (checks skipped:
        transposition preserves every validated invariant)."""
        if self._transposed_cache is None:
            t = StabilizerCode(
                self.n_cols,
                self.n_rows,
                [g.transpose() for g in self.generators],
                delta=self.delta,
                family=self.family,
                _skip_checks=True,
            )
            t._transposed_cache = self
            self._transposed_cache = t
        return self._transposed_cache

    # -- validation and degeneracy ------------------------------------------

    def _strip_safe_dir(self, n_dir: int, k_dir: int) -> bool:
        return n_dir >= 2 * k_dir or (n_dir == 1 and k_dir == 1)

    def validate(self) -> ValidationReport:
        if self._report_cache is not None:
            return self._report_cache
        violations = []
        for i in range(self.n_generators):
            for j in range(i + 1, self.n_generators):
                if self.generators[i].symplectic_inner(self.generators[j]):
                    violations.append((i, j))
        nonhermitian = tuple(
            i for i, g in enumerate(self.generators) if not g.is_hermitian
        )
        identities = tuple(
            i for i, g in enumerate(self.generators) if g.is_identity_pattern
        )
        oversize = []
        for i, w in enumerate(self._windows):
            if w is None:
                continue
            if not self._strip_safe_dir(self.n_rows, w.rows.length) or not self._strip_safe_dir(
                self.n_cols, w.cols.length
            ):
                oversize.append(i)
        strip_safe = self._strip_safe_dir(self.n_rows, self.k_rows) and self._strip_safe_dir(
            self.n_cols, self.k_cols
        )
        frustrated = False
        m_exp = None
        if not violations and not nonhermitian and not identities:
            try:
                m_exp = self.degeneracy_exponent()
            except FrustratedCodeError:
                frustrated = True
        report = ValidationReport(
            commutation_violations=tuple(violations),
            nonhermitian_generators=nonhermitian,
            identity_generators=identities,
            oversize_generators=tuple(oversize),
            strip_safe=strip_safe,
            specified=self.is_specified(),
            k=self.k,
            degeneracy_exponent=m_exp,
            frustrated=frustrated,
        )
        self._report_cache = report
        return report

    def identity_kernel(self) -> list[BitVector]:
        """Kernel of the generator exponent matrix: indicator vectors whose
        ordered product has identity pattern. Raises if any product is -1."""
        basis = gf2.kernel_basis(self.symplectic_matrix())
        for v in basis:
            prod = self.subset_product(v)
            if prod.phase != 1:
                raise FrustratedCodeError(
                    f"generator subset {v} multiplies to {prod.phase:+.0f} * identity"
                )
        return basis

    def rank(self) -> int:
        return gf2.rank(self.symplectic_matrix())

    def degeneracy_exponent(self) -> int:
        """M with ground degeneracy 2^M; cross-checked against the identity-set
        count: M = n_qubits - R + |kernel|."""
        r = self.rank()
        m = self.n_qubits - r
        kernel = self.identity_kernel()  # also runs the frustration check
        alt = self.n_qubits - self.n_generators + len(kernel)
        assert alt == m, "rank/kernel bookkeeping out of sync"
        return m

    def is_specified(self) -> bool:
        """True when every potential degeneracy is pinned by a generator, so
        all remaining ground-space freedom comes from identity sets."""
        return self.n_generators >= self.n_qubits

    # -- text format ---------------------------------------------------------

    def render(self) -> str:
        lines = []
        if self.n_rows == self.n_cols:
            lines.append(f"LATTICE {self.n_rows}")
        else:
            lines.append(f"LATTICE {self.n_rows} {self.n_cols}")
        lines.append(f"DELTA {self.delta!r}")
        for g in self.generators:
            w = g.support_window()
            pattern_rows = []
            for i in range(w.rows.length):
                r = (w.rows.start + i) % self.n_rows
                pattern_rows.append(
                    "".join(
                        g.letter_at(r, (w.cols.start + j) % self.n_cols)
                        for j in range(w.cols.length)
                    )
                )
            sign = "-" if g.phase == -1 else ""
            lines.append(
                f"GEN {w.rows.start} {w.cols.start} {sign}{'/'.join(pattern_rows)}"
            )
        return "\n".join(lines) + "\n"


def _parse_pattern(token: str, line_no: int) -> tuple[list[str], int]:
    sign = 1
    if token.startswith("+"):
        token = token[1:]
    elif token.startswith("-"):
        sign = -1
        token = token[1:]
    rows = token.split("/")
    width = len(rows[0])
    for row in rows:
        if len(row) != width or width == 0:
            raise CodeFormatError("ragged or empty pattern", line_no)
        for ch in row:
            if ch not in "IXYZ":
                raise CodeFormatError(f"bad Pauli letter {ch!r}", line_no)
    return rows, sign


def _pattern_operator(
    n_rows: int, n_cols: int, anchor_r: int, anchor_c: int, rows: list[str], sign: int
) -> PauliOperator:
    sites = {}
    for i, row in enumerate(rows):
        for j, letter in enumerate(row):
            if letter != "I":
                sites[(anchor_r + i, anchor_c + j)] = letter
    return PauliOperator.from_sites(n_rows, n_cols, sites, sign=sign)


def parse(text: str, strict_size: bool = True) -> StabilizerCode:
    """Parse the plain-text code format.

    Line-oriented; '#' starts a comment.  Directives:

        LATTICE <N>              square N x N torus (or: LATTICE <ROWS> <COLS>)
        DELTA <float>            energy unit (optional, default 1.0)
        GEN <row> <col> <pat>    one generator, pattern anchored top-left
        TRANSLATE <pat> [STRIDE <dr> <dc>]
                                 copies of the pattern at every (row, col)
                                 offset on the stride grid, row-major from (0,0)

    Patterns are '/'-separated rows of IXYZ with an optional leading +/-.
    """
    n_rows = n_cols = None
    delta = 1.0
    generators: list[PauliOperator] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        verb = fields[0].upper()
        if verb == "LATTICE":
            if len(fields) not in (2, 3):
                raise CodeFormatError("LATTICE takes one or two integers", line_no)
            try:
                dims = [int(f) for f in fields[1:]]
            except ValueError:
                raise CodeFormatError("LATTICE size must be an integer", line_no)
            n_rows = dims[0]
            n_cols = dims[1] if len(dims) == 2 else dims[0]
            if n_rows < 1 or n_cols < 1:
                raise CodeFormatError("lattice sides must be positive", line_no)
        elif verb == "DELTA":
            if len(fields) != 2:
                raise CodeFormatError("DELTA takes one number", line_no)
            try:
                delta = float(fields[1])
            except ValueError:
                raise CodeFormatError("DELTA must be a number", line_no)
        elif verb == "GEN":
            if n_rows is None:
                raise CodeFormatError("GEN before LATTICE", line_no)
            if len(fields) != 4:
                raise CodeFormatError("GEN takes: row col pattern", line_no)
            try:
                r, c = int(fields[1]), int(fields[2])
            except ValueError:
                raise CodeFormatError("GEN anchor must be integers", line_no)
            rows, sign = _parse_pattern(fields[3], line_no)
            generators.append(_pattern_operator(n_rows, n_cols, r, c, rows, sign))
        elif verb == "TRANSLATE":
            if n_rows is None:
                raise CodeFormatError("TRANSLATE before LATTICE", line_no)
            stride_r = stride_c = 1
            if len(fields) == 2:
                pass
            elif len(fields) == 5 and fields[2].upper() == "STRIDE":
                try:
                    stride_r, stride_c = int(fields[3]), int(fields[4])
                except ValueError:
                    raise CodeFormatError("STRIDE takes two integers", line_no)
                if stride_r < 1 or stride_c < 1:
                    raise CodeFormatError("strides must be positive", line_no)
            else:
                raise CodeFormatError("TRANSLATE takes: pattern [STRIDE dr dc]", line_no)
            rows, sign = _parse_pattern(fields[1], line_no)
            for r in range(0, n_rows, stride_r):
                for c in range(0, n_cols, stride_c):
                    generators.append(_pattern_operator(n_rows, n_cols, r, c, rows, sign))
        else:
            raise CodeFormatError(f"unknown directive {fields[0]!r}", line_no)
    if n_rows is None:
        raise CodeFormatError("missing LATTICE directive")
    if not generators:
        raise CodeFormatError("no generators")
    return StabilizerCode(n_rows, n_cols, generators, delta=delta, strict_size=strict_size)


# -- built-in families -------------------------------------------------------


def _toric_sites(n: int):
    """Toric code on n x n cells: qubits live on edges, flattened onto a
    2n x n site grid with h(r,c) -> (2r, c) and v(r,c) -> (2r+1, c)."""

    def h_edge(r, c):
        return (2 * (r % n), c % n)

    def v_edge(r, c):
        return (2 * (r % n) + 1, c % n)

    return h_edge, v_edge


def builtin(family: str, n: int, delta: float = 1.0, pattern: str | None = None) -> StabilizerCode:
    """Construct a benchmark family.

    toric    n x n cells (2n^2 qubits): plaquette XXXX terms then star ZZZZ
             terms; n >= 2 (n in {2, 3} is accepted for degeneracy analysis
             only, the string pipeline needs n >= 2k).
    ising1d  ring of n qubits laid along a single column (n x 1 lattice).
    ising2d  n x n lattice, ZZ on every horizontal then vertical edge.
    trans3x3 a 3x3 pattern translated to every offset of an n x n torus
             (n >= 6); `pattern` is 'ABC/DEF/GHI' in letters IXYZ.
    """
    if family == "ising1d":
        if n < 4:
            raise ValueError("ising1d needs n >= 4 (lattice at least twice the window)")
        gens = [
            PauliOperator.from_sites(n, 1, {(i, 0): "Z", (i + 1, 0): "Z"})
            for i in range(n)
        ]
        return StabilizerCode(n, 1, gens, delta=delta, family="ising1d")
    if family == "ising2d":
        if n < 4:
            raise ValueError("ising2d needs n >= 4")
        gens = [
            PauliOperator.from_sites(n, n, {(r, c): "Z", (r, c + 1): "Z"})
            for r in range(n)
            for c in range(n)
        ]
        gens += [
            PauliOperator.from_sites(n, n, {(r, c): "Z", (r + 1, c): "Z"})
            for r in range(n)
            for c in range(n)
        ]
        return StabilizerCode(n, n, gens, delta=delta, family="ising2d")
    if family == "toric":
        if n < 2:
            raise ValueError("toric needs n >= 2")
        h_edge, v_edge = _toric_sites(n)
        gens = []
        for r in range(n):
            for c in range(n):  # plaquette: face (r, c)
                sites = {
                    h_edge(r, c): "X",
                    v_edge(r, c): "X",
                    v_edge(r, c + 1): "X",
                    h_edge(r + 1, c): "X",
                }
                gens.append(PauliOperator.from_sites(2 * n, n, sites))
        for r in range(n):
            for c in range(n):  # star: vertex (r, c)
                sites = {
                    h_edge(r, c): "Z",
                    h_edge(r, c - 1): "Z",
                    v_edge(r, c): "Z",
                    v_edge(r - 1, c): "Z",
                }
                gens.append(PauliOperator.from_sites(2 * n, n, sites))
        return StabilizerCode(
            2 * n, n, gens, delta=delta, family="toric", strict_size=(n >= 4)
        )
    if family == "trans3x3":
        if pattern is None:
            raise ValueError("trans3x3 needs a pattern")
        if n < 6:
            raise ValueError("trans3x3 needs n >= 6")
        rows = pattern.strip().split("/")
        if len(rows) != 3 or any(len(r) != 3 for r in rows):
            raise ValueError("trans3x3 pattern must be 3 rows of 3 letters")
        base = _pattern_operator(n, n, 0, 0, rows, 1)
        if base.is_identity_pattern:
            raise ValueError("pattern is the identity")
        gens = [base.translated(r, c) for r in range(n) for c in range(n)]
        return StabilizerCode(n, n, gens, delta=delta, family="trans3x3")
    raise ValueError(f"unknown family {family!r}")
