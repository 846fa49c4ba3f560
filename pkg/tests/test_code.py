"""Code model: parsing, built-in families, validation, degeneracy counting."""

import random

import pytest

from stabstrings.code import (
    CodeFormatError,
    FrustratedCodeError,
    StabilizerCode,
    ValidationError,
    builtin,
    parse,
)

from _dense import dense_degeneracy_exponent


ISING_AS_2D = """\
# length-4 Ising ring laid along column 0, single-site Z elsewhere
LATTICE 4
DELTA 1.0
GEN 0 0 Z/Z
GEN 1 0 Z/Z
GEN 2 0 Z/Z
GEN 3 0 Z/Z
""" + "".join(
    f"GEN {r} {c} Z\n" for r in range(4) for c in range(1, 4)
)


def test_parse_ising_as_2d_fixture():
    c = parse(ISING_AS_2D)
    assert c.n_generators == 16
    assert c.n_qubits == 16
    assert c.degeneracy_exponent() == 1
    assert c.is_specified()


def test_parse_cites_anticommuting_pair():
    text = "LATTICE 2\nGEN 0 0 X\nGEN 0 0 Z\n"
    with pytest.raises(ValidationError) as err:
        parse(text)
    assert err.value.report.commutation_violations == ((0, 1),)


def test_parse_syntax_error_carries_line():
    with pytest.raises(CodeFormatError) as err:
        parse("LATTICE 4\nGEN 0 0 Q\n")
    assert err.value.line == 2


def test_parse_gen_before_lattice():
    with pytest.raises(CodeFormatError):
        parse("GEN 0 0 X\n")


def test_parse_rejects_undersized_lattice():
    # k = 3 window on a 4-lattice violates N >= 2k
    text = "LATTICE 4\nGEN 0 0 X/X/X\n" + "".join(
        f"GEN {r} {c} Z\n" for r in range(4) for c in range(1, 4)
    )
    with pytest.raises(ValidationError) as err:
        parse(text)
    assert not err.value.report.strip_safe


# star patterns live on the odd site rows; the leading identity row keeps the
# stride-2 anchors on the even sublattice for both pattern kinds
TORIC_VIA_TRANSLATE = """\
LATTICE 8 4
DELTA 1.0
TRANSLATE XI/XX/XI STRIDE 2 1
TRANSLATE II/IZ/ZZ/IZ STRIDE 2 1
"""


def test_parse_toric_via_translate():
    c = parse(TORIC_VIA_TRANSLATE)
    assert c.n_generators == 32
    assert c.n_qubits == 32
    assert c.degeneracy_exponent() == 2
    reference = builtin("toric", 4)
    assert {g.to_text() for g in c.generators} == {
        g.to_text() for g in reference.generators
    }


def test_render_roundtrip():
    for c in (parse(ISING_AS_2D), builtin("ising2d", 4), builtin("trans3x3", 6, pattern="XXX/III/XXX")):
        again = parse(c.render())
        assert again.n_rows == c.n_rows and again.n_cols == c.n_cols
        assert again.delta == c.delta
        assert [g.to_text() for g in again.generators] == [
            g.to_text() for g in c.generators
        ]
        assert again.render() == parse(again.render()).render()


def test_render_keeps_negative_sign():
    text = "LATTICE 4\nGEN 0 0 -XX\n" + "".join(
        f"GEN {r} {c} Z\n" for (r, c) in [(0, 2), (2, 0), (2, 2)]
    )
    c = parse(text, strict_size=False)
    assert c.generators[0].phase == -1
    again = parse(c.render(), strict_size=False)
    assert again.generators[0].phase == -1


# -- builtins -------------------------------------------------------------------


def test_ising1d_builtin():
    c = builtin("ising1d", 6)
    assert c.n_generators == 6
    assert c.n_qubits == 6
    assert all(g.to_text().replace("/", "").count("Z") == 2 for g in c.generators)
    assert c.is_specified()


def test_toric_builtin_counts():
    c = builtin("toric", 4)
    assert c.n_qubits == 32
    assert c.n_generators == 32
    assert c.k == 3  # plaquettes and stars span 3 site rows after flattening


def test_trans3x3_builtin_counts():
    c = builtin("trans3x3", 6, pattern="XXX/III/XXX")
    assert c.n_generators == 36


def test_builtin_too_small():
    with pytest.raises(ValueError):
        builtin("ising1d", 3)
    with pytest.raises(ValueError):
        builtin("trans3x3", 5, pattern="XXX/III/XXX")
    with pytest.raises(ValueError):
        builtin("toric", 1)


def test_builtin_pairs_commute_exhaustively():
    cases = (
        [builtin("toric", n) for n in range(2, 9)]
        + [builtin("ising1d", n) for n in range(4, 9)]
        + [builtin("ising2d", n) for n in range(4, 9)]
        + [
            builtin("trans3x3", 6, pattern="XXX/III/XXX"),
            builtin("trans3x3", 7, pattern="XXI/IXX/III"),
        ]
    )
    for c in cases:
        for i in range(c.n_generators):
            for j in range(i + 1, c.n_generators):
                assert c.generators[i].commutes_with(c.generators[j])


# -- degeneracy ------------------------------------------------------------------


def test_ising1d_degeneracy_all_sizes():
    for n in range(4, 9):
        assert builtin("ising1d", n).degeneracy_exponent() == 1


def test_toric_degeneracy():
    assert builtin("toric", 4).degeneracy_exponent() == 2
    assert builtin("toric", 2).degeneracy_exponent() == 2


def test_ising2d_degeneracy():
    assert builtin("ising2d", 4).degeneracy_exponent() == 1


def test_degeneracy_matches_dense_projector_small_codes():
    for c in [builtin("ising1d", n) for n in (4, 5, 6, 7, 8)] + [builtin("toric", 2)]:
        assert c.degeneracy_exponent() == dense_degeneracy_exponent(c)


def test_frustrated_code_raises():
    text = "LATTICE 2\nGEN 0 0 Z\nGEN 0 0 -Z\nGEN 0 1 Z\nGEN 1 0 Z\nGEN 1 1 Z\n"
    c = parse(text)
    with pytest.raises(FrustratedCodeError):
        c.degeneracy_exponent()


# -- specified ---------------------------------------------------------------------


def test_toric_is_specified():
    assert builtin("toric", 4).is_specified()


def test_toric_missing_plaquette_not_specified():
    c = builtin("toric", 4)
    trimmed = StabilizerCode(
        c.n_rows, c.n_cols, c.generators[1:], delta=c.delta
    )
    assert not trimmed.is_specified()
    assert trimmed.degeneracy_exponent() == 2  # degeneracy no longer fully witnessed


def test_ring_on_big_lattice_not_specified():
    text = "LATTICE 6\n" + "".join(f"GEN {i} 0 Z/Z\n" for i in range(6))
    c = parse(text)
    assert not c.is_specified()


# -- Lemma 1 bookkeeping -------------------------------------------------------------


def random_valid_trans3x3(rng, n=6, count=25):
    """Rejection-sample translationally invariant 3x3 patterns that validate."""
    out = []
    while len(out) < count:
        pattern = "/".join(
            "".join(rng.choice("IIXYZ") for _ in range(3)) for _ in range(3)
        )
        try:
            c = builtin("trans3x3", n, pattern=pattern)
            c.degeneracy_exponent()  # reject frustrated samples
        except (ValueError, ValidationError, FrustratedCodeError):
            continue
        out.append(c)
    return out


def test_lemma1_identity_all_families():
    rng = random.Random(2024)
    cases = (
        [builtin("toric", n) for n in (2, 4)]
        + [builtin("ising1d", n) for n in (4, 6, 8)]
        + [builtin("ising2d", 4)]
        + random_valid_trans3x3(rng, count=25)
    )
    for c in cases:
        m = c.degeneracy_exponent()
        kernel = c.identity_kernel()
        n_combos = 2 ** len(kernel) - 1
        # 2^M = (1 + |G|) 2^(N_qubits - R), kept in integers
        assert 2**m * 2**c.n_generators == (1 + n_combos) * 2**c.n_qubits
        assert m == c.n_qubits - c.n_generators + len(kernel)
