"""Degeneracy-breaking operators: strip construction, certificates, 3x3 classifier.

For every elementary identity set, a strip-restricted product of its members
yields an operator that provably commutes with every Hamiltonian term.  Sets
that wind around the torus give loop operators; window-confined sets give
point operators found by a local symplectic search.  The assembly routine
emits one independent operator per broken degeneracy and certifies, by GF(2)
rank, that no encoded qubit survives.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from . import gf2
from .code import NotSpecifiedError, StabilizerCode, builtin
from .gf2 import BitMatrix, BitVector
from .identity import (
    ElementarySetFamily,
    IdentitySet,
    elementary_sets,
    localize,
)
from .pauli import Area, CyclicInterval, PauliOperator, _min_cyclic_cover


class StripSafetyError(ValueError):
    """Lattice too small for the strip construction on this set."""


class ConstructionError(AssertionError):
    """A constructed operator failed its commutation check (internal bug)."""


class NotALogicalError(ValueError):
    """Operator anticommutes with some generator."""


class WitnessError(ValueError):
    """No witness product reproduces the requested operator."""


class BreakerSearchError(ValueError):
    """A confined set admitted no local degeneracy breaker."""


@dataclass(frozen=True)
class Independence:
    nontrivial: bool
    witness: BitVector | None  # generator combination reproducing the operator


@dataclass(frozen=True)
class StringReport:
    operator: PauliOperator
    source_set: IdentitySet | None  # None for operators found by strip search
    orientation: str  # 'horizontal' | 'vertical' | 'point'
    offset: int
    commutes_all: bool
    independence: Independence
    source_index: int | None = None


@dataclass(frozen=True)
class LogicalPartner:
    partner_of: int  # index into AssemblyResult.reports
    operator: PauliOperator
    classification: str  # 'horizontal' | 'vertical' | 'point' | 'area'
    solved: bool  # False when the partner was already among the emitted set


@dataclass(frozen=True)
class Certificate:
    passed: bool
    n_qubits: int
    base_rank: int
    achieved_rank: int
    commuting_indices: tuple[int, ...]

    @property
    def degeneracies_broken(self) -> int:
        return self.achieved_rank - self.base_rank

    @property
    def residual(self) -> int:
        return self.n_qubits - self.achieved_rank


@dataclass(frozen=True)
class AssemblyResult:
    code: StabilizerCode
    family: ElementarySetFamily
    reports: tuple[StringReport, ...]
    partners: tuple[LogicalPartner, ...]
    certificate: Certificate
    notes: tuple[str, ...]

    def operators(self) -> list[PauliOperator]:
        return [r.operator for r in self.reports] + [p.operator for p in self.partners if p.solved]


# -- classification helpers ----------------------------------------------------


def _support_class(code: StabilizerCode, op: PauliOperator) -> str:
    if op.is_identity_pattern:
        return "point"
    w = op.support_window()
    thin_rows = w.rows.length <= code.k
    thin_cols = w.cols.length <= code.k
    if thin_rows and thin_cols:
        return "point"
    if thin_rows:
        return "horizontal"
    if thin_cols:
        return "vertical"
    return "area"


def logical_class(code: StabilizerCode, p: PauliOperator) -> Independence:
    """Trivial iff p equals a product of generators exactly (pattern and phase).

    A pattern that matches a stabilizer product only up to a sign acts as a
    global -1 on the ground space; it splits nothing but is still classified
    nontrivial, matching the projector test tr((1+p) rho / 2) / tr(rho) = 1.
    """
    for i, g in enumerate(code.generators):
        if p.symplectic_inner(g):
            raise NotALogicalError(f"operator anticommutes with generator {i}")
    combo = gf2.solve_membership(code.symplectic_matrix(), p.symplectic_bits())
    if combo is None:
        return Independence(True, None)
    if code.subset_product(combo) == p:
        return Independence(False, combo)
    return Independence(True, None)


# -- the strip construction -----------------------------------------------------


def _members_within_rows(code: StabilizerCode, s: IdentitySet, band: CyclicInterval):
    return [
        i for i in s.member_indices() if band.contains_interval(code.window(i).rows)
    ]


def _set_k_rows(code: StabilizerCode, s: IdentitySet) -> int:
    return max(code.window(i).rows.length for i in s.member_indices())


def _build_horizontal(code: StabilizerCode, s: IdentitySet, offset: int) -> PauliOperator:
    if s.indicator.is_zero:
        raise ValueError("empty identity set")
    k = max(2, _set_k_rows(code, s))
    if code.n_rows < 2 * k:
        raise StripSafetyError(
            f"strip construction needs at least {2 * k} rows, lattice has {code.n_rows}"
        )
    down_band = CyclicInterval(offset % code.n_rows, 2 * k - 2, code.n_rows)
    members = _members_within_rows(code, s, down_band)
    prod = code.subset_product(BitVector.from_indices(code.n_generators, members))
    strip = Area.row_band(code.n_rows, code.n_cols, offset % code.n_rows, k - 1)
    op = prod.restrict(strip)
    for i, g in enumerate(code.generators):
        if op.symplectic_inner(g):
            raise ConstructionError(
                f"strip operator anticommutes with generator {i}; construction bug"
            )
    return op


def build_string(
    code: StabilizerCode, s: IdentitySet, orientation: str = "horizontal", offset: int = 0
) -> StringReport:
    """Strip-restricted product of the set's members near row (column) `offset`.

    The result commutes with every generator by construction, and the check is
    executed rather than assumed.  Horizontal means the strip is a band of
    rows (a winding set yields a loop along a row); vertical is the transpose.
    """
    if orientation == "horizontal":
        op = _build_horizontal(code, s, offset)
    elif orientation == "vertical":
        op = _build_horizontal(code.transpose(), s, offset).transpose()
    else:
        raise ValueError(f"orientation must be horizontal or vertical, not {orientation!r}")
    cls = _support_class(code, op)
    label = cls if cls == "point" else orientation
    return StringReport(
        operator=op,
        source_set=s,
        orientation=label,
        offset=offset,
        commutes_all=True,
        independence=logical_class(code, op),
    )


def _shift_step_witness(
    code: StabilizerCode, s: IdentitySet, l: int, k: int
) -> BitVector:
    """Members relating adjacent offsets: inside the height-k band at l-1 but
    not inside the height-(k-1) band at l."""
    wide = CyclicInterval((l - 1) % code.n_rows, k, code.n_rows)
    narrow = CyclicInterval(l % code.n_rows, k - 1, code.n_rows)
    in_wide = set(_members_within_rows(code, s, wide))
    in_narrow = set(_members_within_rows(code, s, narrow))
    return BitVector.from_indices(code.n_generators, in_wide ^ in_narrow)


def check_row_shift_dependence(
    code: StabilizerCode,
    s: IdentitySet,
    l: int,
    l_prime: int,
    orientation: str = "horizontal",
) -> BitVector:
    """Witness W inside the set with S^l . S^l' = prod_{K in W} K, exactly.

    Built by composing the closed-form single-step witnesses; if roundoff in
    the closed form ever fails the exact product check, a membership solve
    over the set's members is used instead.
    """
    if orientation == "vertical":
        return check_row_shift_dependence(code.transpose(), s, l, l_prime, "horizontal")
    k = max(2, _set_k_rows(code, s))
    s_l = _build_horizontal(code, s, l)
    s_lp = _build_horizontal(code, s, l_prime)
    target = s_l * s_lp
    witness = BitVector(code.n_generators, 0)
    steps = (l - l_prime) % code.n_rows
    for j in range(steps):
        witness = witness ^ _shift_step_witness(code, s, (l - j) % code.n_rows, k)
    if code.subset_product(witness) == target:
        return witness
    members = s.member_indices()
    sub = BitMatrix.from_rows(
        [code.generators[i].symplectic_bits() for i in members], 2 * code.n_qubits
    )
    combo = gf2.solve_membership(sub, target.symplectic_bits())
    if combo is None:
        raise WitnessError("shifted strings are not related inside the set")
    witness = BitVector.from_indices(
        code.n_generators, (members[j] for j in combo.indices())
    )
    if code.subset_product(witness) != target:
        raise WitnessError("witness reproduces the pattern but not the phase")
    return witness


# -- local breakers ---------------------------------------------------------------


def _set_bounding_box(code: StabilizerCode, s: IdentitySet) -> tuple[CyclicInterval, CyclicInterval]:
    rows, cols = set(), set()
    for i in s.member_indices():
        w = code.window(i)
        rows.update((w.rows.start + d) % code.n_rows for d in range(w.rows.length))
        cols.update((w.cols.start + d) % code.n_cols for d in range(w.cols.length))
    return (
        _min_cyclic_cover(sorted(rows), code.n_rows),
        _min_cyclic_cover(sorted(cols), code.n_cols),
    )


def local_breakers(code: StabilizerCode, s: IdentitySet) -> list[PauliOperator]:
    """Operators confined to the set's window that commute with every
    generator yet act nontrivially on the ground space.

    The search is linear: a basis of the in-window symplectic kernel is
    scanned, and because the trivial elements form a subspace, a breaker
    exists iff some basis element is one.
    """
    rows, cols = _set_bounding_box(code, s)
    if rows.length > code.k or cols.length > code.k:
        raise ValueError(
            f"set occupies {rows.length}x{cols.length}, larger than k={code.k}; "
            "localize it first"
        )
    sites = [
        ((rows.start + dr) % code.n_rows) * code.n_cols + (cols.start + dc) % code.n_cols
        for dr in range(rows.length)
        for dc in range(cols.length)
    ]
    box_mask = 0
    for site in sites:
        box_mask |= 1 << site
    overlapping = [
        j
        for j, g in enumerate(code.generators)
        if (g.x | g.z) & box_mask
    ]
    unknown_rows = []
    for site in sites:  # x unknowns: anticommutes with K at a site iff K has z there
        unknown_rows.append(
            BitVector.from_bits(
                (code.generators[j].z >> site) & 1 for j in overlapping
            )
        )
    for site in sites:  # z unknowns
        unknown_rows.append(
            BitVector.from_bits(
                (code.generators[j].x >> site) & 1 for j in overlapping
            )
        )
    kernel = gf2.kernel_basis(BitMatrix.from_rows(unknown_rows, len(overlapping)))
    b = len(sites)
    breakers = []
    for v in kernel:
        x = z = 0
        for u in v.indices():
            if u < b:
                x |= 1 << sites[u]
            else:
                z |= 1 << sites[u - b]
        op = PauliOperator(code.n_rows, code.n_cols, x, z, (x & z).bit_count())
        if logical_class(code, op).nontrivial:
            breakers.append(op)
    breakers.sort(key=lambda o: (o.weight(), o.x, o.z))
    if not breakers:
        raise BreakerSearchError(
            "confined identity set admits no local breaker; the input code "
            "contradicts the local-degeneracy argument (mis-specified?)"
        )
    return breakers


# -- assembly ----------------------------------------------------------------------


def _strip_commutant_ops(code: StabilizerCode, transposed: bool) -> list[PauliOperator]:
    """Operators confined to one height-k band that commute with every
    generator: the string ansatz searched exhaustively.

    Used as a fallback when the strip-product construction only yields
    operators inside the generator span (which can happen for stabilizer
    patterns whose full product is not the identity, where no single row or
    column of terms multiplies to one).  Every band position is scanned; the
    caller filters against the span it has already accumulated.
    """
    cc = code.transpose() if transposed else code
    k = min(cc.k_rows, cc.n_rows)
    out = []
    for top in range(cc.n_rows):
        band = CyclicInterval(top, k, cc.n_rows)
        sites = [
            ((top + dr) % cc.n_rows) * cc.n_cols + c
            for dr in range(k)
            for c in range(cc.n_cols)
        ]
        band_mask = 0
        for s in sites:
            band_mask |= 1 << s
        overlapping = [g for g in cc.generators if (g.x | g.z) & band_mask]
        unknown_rows = [
            BitVector.from_bits((g.z >> s) & 1 for g in overlapping) for s in sites
        ] + [
            BitVector.from_bits((g.x >> s) & 1 for g in overlapping) for s in sites
        ]
        kernel = gf2.kernel_basis(BitMatrix.from_rows(unknown_rows, len(overlapping)))
        b = len(sites)
        for v in kernel:
            x = z = 0
            for u in v.indices():
                if u < b:
                    x |= 1 << sites[u]
                else:
                    z |= 1 << sites[u - b]
            op = PauliOperator(cc.n_rows, cc.n_cols, x, z, (x & z).bit_count())
            out.append(op.transpose() if transposed else op)
    out.sort(key=lambda o: (o.weight(), o.x, o.z))
    return out


def assemble_logicals(code: StabilizerCode) -> AssemblyResult:
    """One independent degeneracy-breaking operator per elementary set, plus
    anticommuting partners and the full-rank certificate."""
    if not code.is_specified():
        raise NotSpecifiedError("assembly requires a specified Hamiltonian")
    fam = elementary_sets(code)
    adjoin = gf2.Echelon(2 * code.n_qubits)
    for g in code.generators:
        adjoin.add(g.symplectic_bits().value)
    base_rank = adjoin.rank

    reports: list[StringReport] = []
    notes: list[str] = []
    for idx, (s, (tv, th)) in enumerate(zip(fam.sets, fam.topology)):
        candidates: list[StringReport] = []
        if tv and th:
            confined = localize(code, localize(code, s, "vertical"), "horizontal")
            for op in local_breakers(code, confined):
                candidates.append(
                    StringReport(
                        operator=op,
                        source_set=s,
                        orientation="point",
                        offset=0,
                        commutes_all=True,
                        independence=logical_class(code, op),
                        source_index=idx,
                    )
                )
        else:
            if not tv:
                candidates.append(replace(build_string(code, s, "horizontal"), source_index=idx))
            if not th:
                candidates.append(replace(build_string(code, s, "vertical"), source_index=idx))
        emitted_from_set = 0
        for rep in candidates:
            if rep.operator.is_identity_pattern:
                notes.append(f"set {idx}: {rep.orientation} construction collapsed to identity")
                continue
            vec = rep.operator.symplectic_bits().value
            residual, _ = adjoin.residual(vec)
            if residual == 0:
                notes.append(
                    f"set {idx}: {rep.orientation} operator dependent on the "
                    "generators and previously emitted operators"
                )
                continue
            adjoin.add(vec)
            reports.append(rep)
            emitted_from_set += 1
        if emitted_from_set == 0 and candidates:
            notes.append(f"set {idx} witnesses no surviving degeneracy")

    # The certificate needs a mutually commuting independent family of size M
    # on top of the generators.  When the per-set constructions leave that
    # family short (dependent strip products, or pairs that anticommute), scan
    # every strip for commutant operators compatible with the family so far.
    chosen_ops = _greedy_commuting(code, reports)
    cert_ech = gf2.Echelon(2 * code.n_qubits)
    for g in code.generators:
        cert_ech.add(g.symplectic_bits().value)
    for op in chosen_ops:
        cert_ech.add(op.symplectic_bits().value)
    if cert_ech.rank < code.n_qubits:
        for transposed in (False, True):
            if cert_ech.rank == code.n_qubits:
                break
            for op in _strip_commutant_ops(code, transposed):
                if cert_ech.rank == code.n_qubits:
                    break
                if any(op.symplectic_inner(ch) for ch in chosen_ops):
                    continue
                vec = op.symplectic_bits().value
                residual, _ = cert_ech.residual(vec)
                if residual == 0:
                    continue
                cert_ech.add(vec)
                chosen_ops.append(op)
                reports.append(
                    StringReport(
                        operator=op,
                        source_set=None,
                        orientation=_support_class(code, op),
                        offset=0,
                        commutes_all=True,
                        independence=logical_class(code, op),
                    )
                )
                notes.append("strip search emitted an operator no set construction produced")

    partners = _complete_partners(code, reports)
    certificate = _certify(code, base_rank, reports)
    return AssemblyResult(
        code=code,
        family=fam,
        reports=tuple(reports),
        partners=tuple(partners),
        certificate=certificate,
        notes=tuple(notes),
    )


def _solve_partner(
    code: StabilizerCode, reports: list[StringReport], target: int
) -> PauliOperator:
    """Operator commuting with every generator and every emitted operator
    except the target, which it anticommutes with."""
    constraints = [g for g in code.generators] + [r.operator for r in reports]
    rhs_bits = [0] * code.n_generators + [1 if j == target else 0 for j in range(len(reports))]
    rhs = BitVector.from_bits(rhs_bits)
    n_sites = code.n_qubits

    def try_solve(use_x: bool, use_z: bool) -> PauliOperator | None:
        unknown_rows = []
        layout = []
        if use_x:
            for site in range(n_sites):
                unknown_rows.append(
                    BitVector.from_bits((c.z >> site) & 1 for c in constraints)
                )
                layout.append(("x", site))
        if use_z:
            for site in range(n_sites):
                unknown_rows.append(
                    BitVector.from_bits((c.x >> site) & 1 for c in constraints)
                )
                layout.append(("z", site))
        combo = gf2.solve_membership(
            BitMatrix.from_rows(unknown_rows, len(constraints)), rhs
        )
        if combo is None:
            return None
        x = z = 0
        for u in combo.indices():
            kind, site = layout[u]
            if kind == "x":
                x |= 1 << site
            else:
                z |= 1 << site
        return PauliOperator(code.n_rows, code.n_cols, x, z, (x & z).bit_count())

    for use_x, use_z in ((True, False), (False, True), (True, True)):
        op = try_solve(use_x, use_z)
        if op is not None:
            return op
    raise WitnessError("no anticommuting partner exists (degeneracy bookkeeping bug)")


def _complete_partners(
    code: StabilizerCode, reports: list[StringReport]
) -> list[LogicalPartner]:
    partners: list[LogicalPartner] = []
    for i, rep in enumerate(reports):
        found = None
        for j, other in enumerate(reports):
            if i != j and rep.operator.symplectic_inner(other.operator):
                found = j
                break
        if found is not None:
            partners.append(
                LogicalPartner(
                    partner_of=i,
                    operator=reports[found].operator,
                    classification=_support_class(code, reports[found].operator),
                    solved=False,
                )
            )
        else:
            op = _solve_partner(code, reports, i)
            partners.append(
                LogicalPartner(
                    partner_of=i,
                    operator=op,
                    classification=_support_class(code, op),
                    solved=True,
                )
            )
    return partners


def _greedy_commuting(code: StabilizerCode, reports: list[StringReport]) -> list[PauliOperator]:
    """Greedy maximal mutually-commuting independent subfamily of the reports."""
    ech = gf2.Echelon(2 * code.n_qubits)
    for g in code.generators:
        ech.add(g.symplectic_bits().value)
    chosen: list[PauliOperator] = []
    for rep in reports:
        if any(rep.operator.symplectic_inner(ch) for ch in chosen):
            continue
        vec = rep.operator.symplectic_bits().value
        residual, _ = ech.residual(vec)
        if residual:
            ech.add(vec)
            chosen.append(rep.operator)
    return chosen


def _certify(code: StabilizerCode, base_rank: int, reports: list[StringReport]) -> Certificate:
    ech = gf2.Echelon(2 * code.n_qubits)
    for g in code.generators:
        ech.add(g.symplectic_bits().value)
    chosen: list[int] = []
    for i, rep in enumerate(reports):
        if any(rep.operator.symplectic_inner(reports[j].operator) for j in chosen):
            continue
        vec = rep.operator.symplectic_bits().value
        residual, _ = ech.residual(vec)
        if residual:
            ech.add(vec)
            chosen.append(i)
    achieved = ech.rank
    return Certificate(
        passed=achieved == code.n_qubits,
        n_qubits=code.n_qubits,
        base_rank=base_rank,
        achieved_rank=achieved,
        commuting_indices=tuple(chosen),
    )


# -- translational 3x3 classifier -----------------------------------------------


@dataclass(frozen=True)
class TranslationalVerdict:
    pattern: str
    n: int
    row_products: tuple[str, str, str]
    col_products: tuple[str, str, str]
    case: str  # 'rejected-XYZ' | 'row-string' | 'column-string' | 'column-fallback'
    gap: bool  # True for the (P, I, P) row/column arrangement
    operators: tuple[PauliOperator, ...]
    degeneracy_exponent: int | None
    notes: tuple[str, ...]


def _letter_product(letters: list[str]) -> str:
    prod = PauliOperator.identity(1, 1)
    for letter in letters:
        prod = prod * PauliOperator.from_text("+" + letter)
    return prod.letter_at(0, 0)


def _letters_anticommute(a: str, b: str) -> bool:
    return PauliOperator.from_text("+" + a).symplectic_inner(
        PauliOperator.from_text("+" + b)
    ) == 1


def _triple_type(triple: tuple[str, str, str]) -> str:
    non_id = [t for t in triple if t != "I"]
    if not non_id:
        return "identity"
    if len(non_id) == 2 and non_id[0] == non_id[1]:
        return "two-equal"
    if len(non_id) == 3 and len(set(non_id)) == 3:
        return "xyz"
    return "invalid"


def _full_line_operator(code: StabilizerCode, letter: str, index: int, axis: str) -> PauliOperator:
    n_rows, n_cols = code.n_rows, code.n_cols
    if axis == "row":
        sites = {(index, c): letter for c in range(n_cols)}
    else:
        sites = {(r, index): letter for r in range(n_rows)}
    return PauliOperator.from_sites(n_rows, n_cols, sites)


def classify_translational_3x3(pattern: str, n: int) -> TranslationalVerdict:
    """The worked translational-code analysis for 3x3 stabilizer patterns.

    Row products (R1, R2, R3) drive the case split: a pairwise-distinct
    non-identity triple is impossible because R1 and R3 must commute; a
    two-equal-one-identity triple yields full-row string operators; all
    identity rows defer to the column products, and when those are identity
    too, a weight-3 single-letter column still splits the degeneracy.
    """
    rows = pattern.strip().split("/")
    if len(rows) != 3 or any(len(r) != 3 for r in rows):
        raise ValueError("pattern must be 3 rows of 3 letters")
    for row in rows:
        for ch in row:
            if ch not in "IXYZ":
                raise ValueError(f"bad Pauli letter {ch!r}")
    letters = [list(row) for row in rows]
    total = _letter_product([letters[i][j] for i in range(3) for j in range(3)])
    if total != "I":
        raise ValueError(
            "the nine letters multiply to a non-identity Pauli; translational "
            "degeneracy requires the all-stabilizer product to be identity"
        )
    row_products = tuple(_letter_product(letters[i]) for i in range(3))
    col_products = tuple(_letter_product([letters[i][j] for i in range(3)]) for j in range(3))
    notes: list[str] = []

    def rejected(products, which: str) -> TranslationalVerdict:
        r1 = next(p for p in products if p != "I")
        r3 = next(p for p in reversed(products) if p != "I")
        assert _letters_anticommute(r1, r3)
        notes.append(
            f"{which} products {products} are pairwise distinct non-identity "
            f"letters; [{r1}, {r3}] != 0 contradicts stabilizer commutation"
        )
        return TranslationalVerdict(
            pattern=pattern,
            n=n,
            row_products=row_products,
            col_products=col_products,
            case="rejected-XYZ",
            gap=False,
            operators=(),
            degeneracy_exponent=None,
            notes=tuple(notes),
        )

    row_type = _triple_type(row_products)
    col_type = _triple_type(col_products)
    assert row_type != "invalid" and col_type != "invalid"
    if row_type == "xyz":
        return rejected(row_products, "row")
    if row_type == "identity" and col_type == "xyz":
        return rejected(col_products, "column")

    code = builtin("trans3x3", n, pattern=pattern)  # validates self-commutation
    m = code.degeneracy_exponent()

    def verified_ops(ops: list[PauliOperator]) -> tuple[PauliOperator, ...]:
        out = []
        for op in ops:
            if all(op.commutes_with(g) for g in code.generators):
                out.append(op)
        return tuple(out)

    if row_type == "two-equal":
        p = next(letter for letter in row_products if letter != "I")
        gap = row_products[1] == "I"
        ops = verified_ops(
            [
                _full_line_operator(code, p, 0, "row"),
                _full_line_operator(code, p, 1, "row"),
            ]
        )
        assert ops, "single-row string failed its commutation check"
        if gap:
            assert m >= 2, "(P, I, P) rows imply degeneracy at least 4"
            notes.append(f"degeneracy at least 4 (2^M with M={m} >= 2)")
            prod = ops[0] * ops[1]
            independent = logical_class(code, prod).nontrivial
            notes.append(
                "row-0 and row-1 strings are "
                + ("independent" if independent else "dependent")
            )
        return TranslationalVerdict(
            pattern=pattern,
            n=n,
            row_products=row_products,
            col_products=col_products,
            case="row-string",
            gap=gap,
            operators=ops,
            degeneracy_exponent=m,
            notes=tuple(notes),
        )

    # rows are all identity
    if col_type == "two-equal":
        q = next(letter for letter in col_products if letter != "I")
        ops = verified_ops(
            [
                _full_line_operator(code, q, 0, "col"),
                _full_line_operator(code, q, 1, "col"),
            ]
        )
        assert ops, "single-column string failed its commutation check"
        notes.append("rows all multiply to identity; column construction used")
        return TranslationalVerdict(
            pattern=pattern,
            n=n,
            row_products=row_products,
            col_products=col_products,
            case="column-string",
            gap=col_products[1] == "I",
            operators=ops,
            degeneracy_exponent=m,
            notes=tuple(notes),
        )

    # rows and columns all identity: a same-letter weight-3 column commutes
    candidates = []
    for letter in "XYZ":
        op = PauliOperator.from_sites(
            code.n_rows, code.n_cols, {(r, 0): letter for r in range(3)}
        )
        if all(op.commutes_with(g) for g in code.generators) and logical_class(
            code, op
        ).nontrivial:
            candidates.append(op)
    if not candidates:
        raise BreakerSearchError(
            "no weight-3 column operator splits the degeneracy; "
            "contradicts the translational-code argument"
        )
    notes.append(
        "all row and column products are identity; weight-3 column operator emitted"
    )
    return TranslationalVerdict(
        pattern=pattern,
        n=n,
        row_products=row_products,
        col_products=col_products,
        case="column-fallback",
        gap=False,
        operators=tuple(candidates),
        degeneracy_exponent=m,
        notes=tuple(notes),
    )
