"""Identity sets: enumeration, topology classification, and localization.

An identity set is a subset of generators whose ordered product is exactly
the +1 identity.  The kernel of the exponent matrix gives a basis; the
elementary-set machinery re-bases it so that as many basis sets as possible
are confined to a single window (those break their degeneracy with a local
operator), leaving the genuinely winding sets to the string construction.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import gf2
from .gf2 import BitMatrix, BitVector
from .code import FrustratedCodeError, NotSpecifiedError, StabilizerCode
from .pauli import Area, CyclicInterval, _min_cyclic_cover


class NotAnIdentitySetError(ValueError):
    """Indicator does not multiply to +identity."""


class LocalizeError(ValueError):
    """Localization failed (wrong direction, or a membership solve failed)."""


@dataclass(frozen=True)
class IdentitySet:
    """Indicator over generator indexes whose product is +identity."""

    indicator: BitVector
    product_phase: int = 1

    def member_indices(self) -> tuple[int, ...]:
        return self.indicator.indices()

    def size(self) -> int:
        return self.indicator.weight()

    def combine(self, other: "IdentitySet") -> "IdentitySet":
        """Symmetric difference; phases multiply (commuting, self-inverse terms)."""
        return IdentitySet(self.indicator ^ other.indicator, self.product_phase * other.product_phase)

    def to_hex(self) -> str:
        return self.indicator.to_hex()


@dataclass(frozen=True)
class ElementarySetFamily:
    """Re-based identity-set basis with per-set topology flags.

    `sets` lists the full kernel basis, winding sets first and window-confined
    (trivial in both directions) sets last.  `w_r` marks a maximal independent
    generator subset; every degeneracy of a specified code is broken by an
    operator derived from one of these sets.
    """

    w_r: BitVector
    sets: tuple[IdentitySet, ...]
    topology: tuple[tuple[bool, bool], ...]  # (trivial_vertical, trivial_horizontal)

    def __len__(self) -> int:
        return len(self.sets)


def _checked_set(code: StabilizerCode, indicator: BitVector) -> IdentitySet:
    prod = code.subset_product(indicator)
    if not prod.is_identity_pattern:
        raise NotAnIdentitySetError("product has non-identity pattern")
    if prod.phase != 1:
        raise FrustratedCodeError("identity-set candidate multiplies to -identity")
    return IdentitySet(indicator, 1)


def identity_sets_basis(code: StabilizerCode) -> list[IdentitySet]:
    """Kernel basis of the generator exponent matrix, phase-checked."""
    return [_checked_set(code, v) for v in gf2.kernel_basis(code.symplectic_matrix())]


def _row_interval(code: StabilizerCode, i: int) -> CyclicInterval:
    return code.window(i).rows


def _crossing_members(code: StabilizerCode, s: IdentitySet, t: int) -> list[int]:
    """Members whose row window contains both the cut row t and the row above."""
    above = (t - 1) % code.n_rows
    out = []
    for i in s.member_indices():
        rows = _row_interval(code, i)
        if rows.contains(t) and rows.contains(above):
            out.append(i)
    return out


def _remainder_is_identity(code: StabilizerCode, s: IdentitySet, t: int) -> bool:
    crossing = _crossing_members(code, s, t)
    remainder = s.indicator ^ BitVector.from_indices(code.n_generators, crossing)
    return code.subset_product(remainder).is_identity


def _trivial_vertical(code: StabilizerCode, s: IdentitySet) -> bool:
    """True when some horizontal cut row t exists such that the members not
    straddling the cut still multiply to +identity."""
    return any(_remainder_is_identity(code, s, t) for t in range(code.n_rows))


def classify_topology(code: StabilizerCode, s: IdentitySet) -> tuple[bool, bool]:
    """(trivial_vertical, trivial_horizontal) per the opened-torus cut test."""
    prod = code.subset_product(s.indicator)
    if not prod.is_identity:
        raise NotAnIdentitySetError("not an identity set")
    tv = _trivial_vertical(code, s)
    th = _trivial_vertical(code.transpose(), s)
    return (tv, th)


def _window_local_sets(code: StabilizerCode) -> list[BitVector]:
    """Identity sets confined to a single k_rows x k_cols window, all anchors."""
    out = []
    seen = gf2.Echelon(code.n_generators)
    for top in range(code.n_rows):
        for left in range(code.n_cols):
            box_rows = CyclicInterval(top, min(code.k_rows, code.n_rows), code.n_rows)
            box_cols = CyclicInterval(left, min(code.k_cols, code.n_cols), code.n_cols)
            pool = [
                i
                for i in range(code.n_generators)
                if box_rows.contains_interval(code.window(i).rows)
                and box_cols.contains_interval(code.window(i).cols)
            ]
            if len(pool) < 2:
                continue
            sub = BitMatrix.from_rows(
                [code.generators[i].symplectic_bits() for i in pool], 2 * code.n_qubits
            )
            for v in gf2.kernel_basis(sub):
                full = BitVector.from_indices(
                    code.n_generators, (pool[j] for j in v.indices())
                )
                if seen.add(full.value) is None:
                    out.append(full)
    return out


def _shrink_support(code: StabilizerCode, vec: BitVector, others: list[BitVector]) -> BitVector:
    """Greedy support-size reduction of vec by XOR with other kernel vectors."""
    improved = True
    while improved:
        improved = False
        for o in others:
            cand = vec ^ o
            if 0 < cand.weight() < vec.weight():
                vec = cand
                improved = True
    return vec


def elementary_sets(code: StabilizerCode) -> ElementarySetFamily:
    """Select W_R and a re-based kernel basis, window-confined sets last."""
    if not code.is_specified():
        raise NotSpecifiedError(
            f"code has {code.n_generators} generators on {code.n_qubits} qubits; "
            "the construction requires a specified Hamiltonian"
        )
    ech = gf2.Echelon(2 * code.n_qubits)
    w_r_indices = []
    raw_kernel: list[BitVector] = []
    for i, g in enumerate(code.generators):
        combo = ech.add(g.symplectic_bits().value)
        if combo is None:
            w_r_indices.append(i)
        else:
            raw_kernel.append(BitVector(code.n_generators, combo))
    w_r = BitVector.from_indices(code.n_generators, w_r_indices)

    locals_ = _window_local_sets(code)
    basis_ech = gf2.Echelon(code.n_generators)
    for v in locals_:
        accepted = basis_ech.add(v.value)
        assert accepted is None, "window enumeration produced dependent sets"
    rest: list[BitVector] = []
    for v in raw_kernel:
        residual, _ = basis_ech.residual(v.value)
        if residual:
            reduced = BitVector(code.n_generators, residual)
            basis_ech.add(reduced.value)
            rest.append(reduced)

    # clean the winding sets: smaller supports classify more sharply
    for i in range(len(rest)):
        rest[i] = _shrink_support(code, rest[i], locals_ + [r for j, r in enumerate(rest) if j != i])

    rest_sets = [_checked_set(code, v) for v in rest]
    local_sets = [_checked_set(code, v) for v in locals_]
    rest_topo = [classify_topology(code, s) for s in rest_sets]
    local_topo = [classify_topology(code, s) for s in local_sets]

    # winding sets first (fewest trivial directions), confined sets last
    order = sorted(
        range(len(rest_sets)),
        key=lambda i: (rest_topo[i][0] + rest_topo[i][1], rest_sets[i].indicator.value),
    )
    sets = [rest_sets[i] for i in order] + local_sets
    topo = [rest_topo[i] for i in order] + local_topo
    return ElementarySetFamily(w_r, tuple(sets), tuple(topo))


def _opened_row_extent(code: StabilizerCode, s: IdentitySet, cut: int) -> tuple[int, int]:
    """(top, extent) of the member windows in coordinates opened at `cut`;
    meaningful only when no member straddles the cut."""
    n = code.n_rows
    offsets = []
    for i in s.member_indices():
        rows = _row_interval(code, i)
        start = (rows.start - cut) % n
        offsets.append((start, start + rows.length))
    top = min(o for o, _ in offsets)
    bottom = max(b for _, b in offsets)
    return (cut + top) % n, bottom - top


def _set_row_cover(code: StabilizerCode, s: IdentitySet) -> CyclicInterval:
    rows = {
        (_row_interval(code, i).start + d) % code.n_rows
        for i in s.member_indices()
        for d in range(_row_interval(code, i).length)
    }
    return _min_cyclic_cover(sorted(rows), code.n_rows)


def _localize_vertical(code: StabilizerCode, s: IdentitySet) -> IdentitySet:
    """Constructive half of the strip-confinement lemma, vertical direction."""
    n = code.n_generators
    k = max(_row_interval(code, i).length for i in s.member_indices())
    if _set_row_cover(code, s).length <= k:
        return s
    witness_cuts = [
        t for t in range(code.n_rows) if _remainder_is_identity(code, s, t)
    ]
    if not witness_cuts:
        raise LocalizeError("set is not trivial in the vertical direction")
    for t in witness_cuts:
        crossing = _crossing_members(code, s, t)
        remainder = s.indicator ^ BitVector.from_indices(n, crossing)
        if remainder.is_zero:
            continue
        trimmed = _checked_set(code, remainder)
        top, extent = _opened_row_extent(code, trimmed, t)
        if extent <= k:
            return trimmed
        # top-row members; the rest of the strip product, pushed one row down,
        # is re-expressed over generators confined to the strip
        t_members = [
            i
            for i in trimmed.member_indices()
            if _row_interval(code, i).start == top
        ]
        strip_top = (top + 1) % code.n_rows
        strip_height = k - 1
        strip = Area.row_band(code.n_rows, code.n_cols, strip_top, strip_height)
        strip_rows = CyclicInterval(strip_top, strip_height, code.n_rows)
        in_strip_members = [
            i
            for i in trimmed.member_indices()
            if i not in t_members and strip_rows.contains(_row_interval(code, i).start)
        ]
        prod = code.subset_product(BitVector.from_indices(n, in_strip_members))
        s_next = prod.restrict(strip)
        if s_next.is_identity_pattern:
            w = BitVector(n, 0)
        else:
            pool = [
                i
                for i in range(n)
                if strip_rows.contains_interval(code.window(i).rows)
            ]
            if not pool:
                continue
            sub = BitMatrix.from_rows(
                [code.generators[i].symplectic_bits() for i in pool], 2 * code.n_qubits
            )
            combo = gf2.solve_membership(sub, s_next.symplectic_bits())
            if combo is None:
                continue
            w = BitVector.from_indices(n, (pool[j] for j in combo.indices()))
        out = w ^ BitVector.from_indices(n, t_members)
        out_set = _checked_set(code, out)
        _, out_extent = _opened_row_extent(code, out_set, t)
        if out_extent <= k:
            return out_set
    raise LocalizeError("no cut admitted a confined equivalent set")


def localize(code: StabilizerCode, s: IdentitySet, direction: str) -> IdentitySet:
    """Equivalent identity set confined to a strip of height (width) at most k.

    `direction` is 'vertical' or 'horizontal'; requires the set to be trivial
    in that direction.  The output differs from the input by other identity
    sets only.
    """
    prod = code.subset_product(s.indicator)
    if not prod.is_identity:
        raise NotAnIdentitySetError("not an identity set")
    if direction == "vertical":
        return _localize_vertical(code, s)
    if direction == "horizontal":
        out = _localize_vertical(code.transpose(), s)
        return out  # indicators are lattice-agnostic
    raise ValueError(f"direction must be vertical or horizontal, not {direction!r}")


def render_family(code: StabilizerCode, family: ElementarySetFamily) -> str:
    """One line per set: indicator hex, phase, topology flags, bounding box."""
    lines = []
    for i, (s, (tv, th)) in enumerate(zip(family.sets, family.topology)):
        prod_sets = [code.window(j) for j in s.member_indices()]
        rows = sorted(
            {(w.rows.start + d) % code.n_rows for w in prod_sets for d in range(w.rows.length)}
        )
        cols = sorted(
            {(w.cols.start + d) % code.n_cols for w in prod_sets for d in range(w.cols.length)}
        )
        rbox = _min_cyclic_cover(rows, code.n_rows)
        cbox = _min_cyclic_cover(cols, code.n_cols)
        lines.append(
            f"set {i}: indicator 0x{s.to_hex()} phase {s.product_phase:+d} "
            f"trivial_v {str(tv).lower()} trivial_h {str(th).lower()} "
            f"rows {rbox} cols {cbox} members {s.size()}"
        )
    return "\n".join(lines)
