"""Truncated strings as anyon pairs: syndromes, energy plateaus, braiding.

A loop operator commutes with every Hamiltonian term, so cutting it open can
only violate the few terms that overlap its ends.  The excitation energy is
therefore flat in the truncation length, which is exactly the error pathway
that rules out thermal self-correction.
"""

from __future__ import annotations

from dataclasses import dataclass

from .code import StabilizerCode
from .pauli import Area, PauliOperator
from .strings import StringReport


class NotTruncatableError(ValueError):
    """Point operators have no long axis to truncate along."""


class PlateauError(AssertionError):
    """Bulk truncation energies failed to stay constant (construction bug)."""


@dataclass(frozen=True)
class SyndromeProfile:
    truncation_length: int | None
    violated: tuple[int, ...]
    energy: float  # in absolute units, delta times the violation count

    @property
    def energy_over_delta(self) -> int:
        return len(self.violated)


def syndrome(code: StabilizerCode, p: PauliOperator) -> SyndromeProfile:
    """Generators anticommuting with p; each one costs delta."""
    violated = tuple(
        i for i, g in enumerate(code.generators) if p.symplectic_inner(g)
    )
    return SyndromeProfile(None, violated, code.delta * len(violated))


def _loop_axis_length(code: StabilizerCode, report: StringReport) -> int:
    return code.n_cols if report.orientation == "horizontal" else code.n_rows


def truncate(
    code: StabilizerCode, report: StringReport, a: int, b: int
) -> PauliOperator:
    """Restriction of a loop to positions [a, b) along its long axis."""
    if report.orientation == "point":
        raise NotTruncatableError("cannot truncate a point operator")
    axis_len = _loop_axis_length(code, report)
    if not 0 <= a <= b <= axis_len:
        raise ValueError(f"need 0 <= a <= b <= {axis_len}")
    if report.orientation == "horizontal":
        area = Area.col_band(code.n_rows, code.n_cols, a, b - a) if b > a else Area.empty(
            code.n_rows, code.n_cols
        )
    else:
        area = Area.row_band(code.n_rows, code.n_cols, a, b - a) if b > a else Area.empty(
            code.n_rows, code.n_cols
        )
    return report.operator.restrict(area)


def energy_profile(code: StabilizerCode, report: StringReport) -> list[SyndromeProfile]:
    """Syndromes of the truncations [0, L) for L = 1 .. axis length.

    Checks the finite-cost bound (at most 2k^2 violated terms at any length)
    and that the bulk window [2k, N-2k] is flat.
    """
    if report.orientation == "point":
        raise NotTruncatableError("cannot profile a point operator")
    axis_len = _loop_axis_length(code, report)
    k = code.k
    out = []
    for length in range(1, axis_len + 1):
        p = truncate(code, report, 0, length)
        prof = syndrome(code, p)
        prof = SyndromeProfile(length, prof.violated, prof.energy)
        if len(prof.violated) > 2 * k * k:
            raise PlateauError(
                f"length {length}: {len(prof.violated)} violated terms exceeds 2k^2"
            )
        out.append(prof)
    k_axis = code.k_cols if report.orientation == "horizontal" else code.k_rows
    bulk = [p for p in out if 2 * k_axis <= p.truncation_length <= axis_len - 2 * k_axis]
    if bulk and len({len(p.violated) for p in bulk}) != 1:
        raise PlateauError("bulk truncation energies are not constant")
    return out


def braiding_phase(s1: PauliOperator, s2: PauliOperator) -> int:
    """+1 or -1: the Abelian phase acquired when the string segments cross."""
    return -1 if s1.symplectic_inner(s2) else 1


def profile_csv(profiles: list[SyndromeProfile]) -> str:
    lines = ["length,violated_count,energy_over_delta"]
    for p in profiles:
        lines.append(f"{p.truncation_length},{len(p.violated)},{p.energy_over_delta}")
    return "\n".join(lines) + "\n"
