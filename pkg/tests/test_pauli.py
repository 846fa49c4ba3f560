"""Pauli algebra: commutation, products with phases, restriction, windows."""

import itertools
import random

import numpy as np
import pytest

from stabstrings.pauli import (
    Area,
    EmptySupportError,
    PauliOperator,
    _min_cyclic_cover,
)

from _dense import op_matrix


def single(n, r, c, letter):
    return PauliOperator.single(n, n, r, c, letter)


# -- symplectic inner product ------------------------------------------------


def test_xz_same_site_anticommute():
    assert single(4, 1, 2, "X").symplectic_inner(single(4, 1, 2, "Z")) == 1


def test_disjoint_sites_commute():
    assert single(4, 0, 0, "X").symplectic_inner(single(4, 3, 3, "Z")) == 0


def test_toric_plaquette_commutes_with_adjacent_star():
    from stabstrings.code import builtin

    c = builtin("toric", 4)
    for i in range(16):
        for j in range(16, 32):
            assert c.generators[i].symplectic_inner(c.generators[j]) == 0


def test_inner_is_symmetric():
    rng = random.Random(3)
    for _ in range(40):
        p = PauliOperator(2, 2, rng.getrandbits(4), rng.getrandbits(4), rng.randrange(4))
        q = PauliOperator(2, 2, rng.getrandbits(4), rng.getrandbits(4), rng.randrange(4))
        assert p.symplectic_inner(q) == q.symplectic_inner(p)


# -- multiplication ------------------------------------------------------------


def test_x_times_x_is_identity():
    p = single(3, 1, 1, "X")
    assert (p * p).is_identity


def test_x_times_z_is_minus_i_y():
    prod = single(3, 1, 1, "X") * single(3, 1, 1, "Z")
    assert prod.phase == -1j
    assert prod.letter_at(1, 1) == "Y"
    assert prod.to_text().startswith("-i")


def test_z_times_x_is_plus_i_y():
    prod = single(3, 1, 1, "Z") * single(3, 1, 1, "X")
    assert prod.phase == 1j


def test_x_times_y_is_i_z():
    prod = single(3, 0, 0, "X") * single(3, 0, 0, "Y")
    assert prod.phase == 1j
    assert prod.letter_at(0, 0) == "Z"


def test_ising_ring_product_is_identity():
    n = 5
    prod = PauliOperator.identity(n, 1)
    for i in range(n):
        prod = prod * PauliOperator.from_sites(n, 1, {(i, 0): "Z", (i + 1, 0): "Z"})
    assert prod.is_identity
    assert prod.phase == 1


def test_square_has_real_phase():
    rng = random.Random(5)
    for _ in range(60):
        p = PauliOperator(2, 3, rng.getrandbits(6), rng.getrandbits(6), rng.randrange(4))
        sq = p * p
        assert sq.is_identity_pattern
        assert sq.phase in (1, -1)


def test_multiply_matches_dense_matrices():
    rng = random.Random(9)
    for _ in range(40):
        nr, nc = rng.choice([(1, 2), (2, 2), (1, 4), (2, 1)])
        n = nr * nc
        p = PauliOperator(nr, nc, rng.getrandbits(n), rng.getrandbits(n), rng.randrange(4))
        q = PauliOperator(nr, nc, rng.getrandbits(n), rng.getrandbits(n), rng.randrange(4))
        assert np.allclose(op_matrix(p * q), op_matrix(p) @ op_matrix(q))
        anti = p.symplectic_inner(q)
        lhs = op_matrix(p) @ op_matrix(q)
        rhs = op_matrix(q) @ op_matrix(p)
        assert np.allclose(lhs, rhs if anti == 0 else -rhs)


def test_multiply_is_associative():
    rng = random.Random(7)
    for _ in range(40):
        ops = [
            PauliOperator(2, 2, rng.getrandbits(4), rng.getrandbits(4), rng.randrange(4))
            for _ in range(3)
        ]
        a, b, c = ops
        assert (a * b) * c == a * (b * c)


def test_generalized_commutation_lemma():
    # prod_i P_i commutes with P iff the tensor of the P_i commutes with P x ... x P
    for m in (1, 2, 3):
        for letters in itertools.product("IXYZ", repeat=m):
            for p in "IXYZ":
                prod = PauliOperator.identity(1, 1)
                for letter in letters:
                    prod = prod * PauliOperator.from_text("+" + letter)
                lhs = prod.symplectic_inner(PauliOperator.from_text("+" + p))
                tensor = PauliOperator.from_text("+" + "".join(letters))
                repeated = PauliOperator.from_text("+" + p * m)
                assert lhs == tensor.symplectic_inner(repeated)


# -- restriction ---------------------------------------------------------------


def test_restrict_identity():
    p = PauliOperator.identity(4, 4)
    assert p.restrict(Area.row_band(4, 4, 1, 2)).is_identity


def test_restrict_full_lattice_keeps_pattern():
    p = PauliOperator.from_text("-XZ/ZY")
    r = p.restrict(Area.full(2, 2))
    assert r.x == p.x and r.z == p.z
    assert r.phase == 1


def test_restrict_plaquette_to_middle_row_gives_xx():
    from stabstrings.code import builtin

    c = builtin("toric", 4)
    plaq = c.generators[0]  # face (0, 0): sites (0,0), (1,0), (1,1), (2,0)
    band = Area.row_band(8, 4, 1, 1)
    r = plaq.restrict(band)
    assert r == PauliOperator.from_sites(8, 4, {(1, 0): "X", (1, 1): "X"})
    top = plaq.restrict(Area.row_band(8, 4, 0, 1))
    assert top == PauliOperator.from_sites(8, 4, {(0, 0): "X"})


def test_area_complement_involution():
    rng = random.Random(61)
    for _ in range(20):
        a = Area(3, 4, rng.getrandbits(12))
        assert a.complement().complement() == a
    assert Area.full(3, 4).complement() == Area.empty(3, 4)
    band = Area.row_band(4, 4, 3, 2)  # wraps over the torus edge
    assert band.contains_site(3, 0) and band.contains_site(0, 2)
    assert not band.contains_site(1, 0)


def test_restrict_is_idempotent_and_splits():
    rng = random.Random(21)
    for _ in range(40):
        p = PauliOperator(3, 3, rng.getrandbits(9), rng.getrandbits(9), rng.randrange(4))
        a = Area(3, 3, rng.getrandbits(9))
        r = p.restrict(a)
        assert r.restrict(a) == r
        other = p.restrict(a.complement())
        joined = r * other
        assert joined.x == p.x and joined.z == p.z


def test_restricted_commutator_identity():
    # anticommutation of a restricted operator equals the per-site inner
    # product summed over the area only
    rng = random.Random(33)
    for _ in range(60):
        p = PauliOperator(3, 3, rng.getrandbits(9), rng.getrandbits(9), rng.randrange(4))
        q = PauliOperator(3, 3, rng.getrandbits(9), rng.getrandbits(9), rng.randrange(4))
        a = Area(3, 3, rng.getrandbits(9))
        per_site = ((p.x & a.mask & q.z).bit_count() + (p.z & a.mask & q.x).bit_count()) & 1
        assert p.restrict(a).symplectic_inner(q) == per_site


# -- support windows ----------------------------------------------------------


def test_window_single_site():
    w = single(8, 3, 4, "X").support_window()
    assert (w.rows.start, w.rows.end) == (3, 3)
    assert (w.cols.start, w.cols.end) == (4, 4)


def test_window_adjacent_pair():
    p = PauliOperator.from_sites(8, 8, {(0, 0): "Z", (0, 1): "Z"})
    w = p.support_window()
    assert (w.rows.start, w.rows.end, w.cols.start, w.cols.end) == (0, 0, 0, 1)


def test_window_wrapped_pair():
    p = PauliOperator.from_sites(8, 8, {(0, 7): "Z", (0, 0): "Z"})
    w = p.support_window()
    assert (w.cols.start, w.cols.end, w.cols.length) == (7, 0, 2)


def test_window_matches_enumeration():
    # oracle: try every (start, length) cyclic cover
    rng = random.Random(41)
    for _ in range(60):
        n = 6
        supp = rng.getrandbits(n) or 1
        occupied = [i for i in range(n) if (supp >> i) & 1]
        best = None
        for length in range(1, n + 1):
            for start in range(n):
                if all(((i - start) % n) < length for i in occupied):
                    if best is None or (length, start) < best:
                        best = (length, start)
            if best is not None and best[0] == length:
                break
        cover = _min_cyclic_cover(occupied, n)
        assert (cover.length, cover.start) == best


def test_window_of_identity_raises():
    with pytest.raises(EmptySupportError):
        PauliOperator.identity(3, 3).support_window()


# -- text round trip -----------------------------------------------------------


def test_text_roundtrip():
    rng = random.Random(55)
    for _ in range(60):
        p = PauliOperator(2, 4, rng.getrandbits(8), rng.getrandbits(8), rng.randrange(4))
        assert PauliOperator.from_text(p.to_text()) == p


def test_text_examples():
    p = PauliOperator.from_text("+XI/IZ")
    assert p.letter_at(0, 0) == "X" and p.letter_at(1, 1) == "Z"
    assert p.to_text() == "+XI/IZ"
    assert PauliOperator.from_text("-iY").phase == -1j


def test_dense_oracle_action_matches_kron():
    # the permutation-action oracle must agree with literal Kronecker products
    from _dense import apply_pauli

    rng = random.Random(3)
    for _ in range(40):
        nr, nc = rng.choice([(1, 2), (2, 2), (1, 3)])
        n = nr * nc
        p = PauliOperator(nr, nc, rng.getrandbits(n), rng.getrandbits(n), rng.randrange(4))
        eye = np.eye(2**n, dtype=complex)
        assert np.allclose(apply_pauli(p, eye), op_matrix(p))
