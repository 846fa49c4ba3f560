"""Metropolis dynamics: balance, bookkeeping, determinism, decoders."""

import math

import numpy as np
import pytest

from stabstrings.code import builtin
from stabstrings.pauli import PauliOperator
from stabstrings.thermal import (
    SimTrajectory,
    ThermalConfig,
    TrialResult,
    UnsupportedFamilyError,
    _run_proposals,
    _run_proposals_python,
    _site_tables,
    _acceptance_table,
    acceptance_probability,
    censoring_rate,
    decoder_failed,
    failure_time,
    median_failure_time,
    results_csv,
    step,
    sweep_proposals,
)

from stabstrings.anyons import syndrome


def test_detailed_balance_ratio():
    beta = 1.7
    for d_e in (1, 2, 3, 5):
        forward = acceptance_probability(beta, d_e)
        backward = acceptance_probability(beta, -d_e)
        assert backward == 1.0
        assert math.isclose(forward / backward, math.exp(-beta * d_e))


def test_zero_temperature_freeze():
    code = builtin("ising1d", 6)
    state = SimTrajectory.fresh(code)
    rng = np.random.Generator(np.random.PCG64(5))
    for _ in range(50):
        step(code, state, rng, beta=60.0)
    assert state.energy_count == 0
    assert not state.x_error.any() and not state.z_error.any()


def test_infinite_temperature_accepts_everything():
    code = builtin("ising1d", 6)
    state = SimTrajectory.fresh(code)
    rng = np.random.Generator(np.random.PCG64(6))
    sites, paulis, unifs = sweep_proposals(rng, code.n_qubits, 10)
    off, idx, gx, gz, mx = _site_tables(code)
    acc = np.ones(mx + 1, dtype=np.float64)  # beta = 0 limit
    _run_proposals_python(
        state.x_error, state.z_error, state.violated,
        off, idx, gx, gz, sites, paulis, unifs, acc, 0,
    )
    flips = sum(1 for p in paulis if p != 3) % 2  # x-parity of all accepted flips
    assert int(state.x_error.sum()) % 2 == flips


def test_domain_wall_extension_is_free():
    # an existing domain wall pair in the 1D Ising ring extends at zero cost
    code = builtin("ising1d", 8)
    state = SimTrajectory.fresh(code)
    off, idx, gx, gz, mx = _site_tables(code)
    acc = _acceptance_table(2.0, mx)
    # flip site 3 by force, then propose the adjacent flip at site 4
    forced = np.array([3], dtype=np.int64)
    _run_proposals_python(
        state.x_error, state.z_error, state.violated,
        off, idx, gx, gz, forced, np.array([1], dtype=np.int64),
        np.array([0.0]), acc, 0,
    )
    assert int(state.violated.sum()) == 2
    e = _run_proposals_python(
        state.x_error, state.z_error, state.violated,
        off, idx, gx, gz, np.array([4], dtype=np.int64), np.array([1], dtype=np.int64),
        np.array([0.999999]), acc, 2,
    )
    assert e == 2  # accepted despite the near-1 uniform because dE = 0
    assert state.x_error[4] == 1


def test_energy_bookkeeping_matches_recomputation():
    code = builtin("toric", 4)
    state = SimTrajectory.fresh(code)
    rng = np.random.Generator(np.random.PCG64(7))
    for sweep in range(300):
        step(code, state, rng, beta=0.5)
        if sweep % 100 == 99:
            recomputed = syndrome(code, state.accumulated_error(code))
            assert state.energy_count == len(recomputed.violated)
            assert set(np.nonzero(state.violated)[0]) == set(recomputed.violated)


def test_python_and_numba_kernels_agree():
    code = builtin("ising2d", 4)
    off, idx, gx, gz, mx = _site_tables(code)
    acc = _acceptance_table(1.3, mx)
    rng = np.random.Generator(np.random.PCG64(11))
    sites, paulis, unifs = sweep_proposals(rng, code.n_qubits, 40)
    sa = SimTrajectory.fresh(code)
    sb = SimTrajectory.fresh(code)
    ea = _run_proposals_python(
        sa.x_error, sa.z_error, sa.violated, off, idx, gx, gz, sites, paulis, unifs, acc, 0
    )
    eb = int(
        _run_proposals(
            sb.x_error, sb.z_error, sb.violated, off, idx, gx, gz, sites, paulis, unifs, acc, 0
        )
    )
    assert ea == eb
    assert np.array_equal(sa.x_error, sb.x_error)
    assert np.array_equal(sa.z_error, sb.z_error)
    assert np.array_equal(sa.violated, sb.violated)


def test_reproducibility_bit_for_bit():
    code = builtin("toric", 4)
    cfg = ThermalConfig(beta=2.0, t_max=300, seed=42, checkpoint_every=50, trials=3)
    a = failure_time(code, "toric", cfg)
    b = failure_time(code, "toric", cfg)
    assert a == b


def test_locality_of_proposals():
    # every site touches at most k^2 generators
    for c in (builtin("toric", 4), builtin("ising2d", 4), builtin("trans3x3", 6, pattern="XXX/III/XXX")):
        off, idx, gx, gz, mx = _site_tables(c)
        assert mx <= c.k * c.k


def test_local_delta_e_matches_full_syndrome_rescan():
    # the table-driven dE of a single proposal equals the change in the full
    # syndrome count computed from scratch
    code = builtin("toric", 4)
    off, idx, gx, gz, mx = _site_tables(code)
    acc = np.ones(mx + 1, dtype=np.float64)  # force-accept to observe dE
    rng = np.random.Generator(np.random.PCG64(23))
    state = SimTrajectory.fresh(code)
    for _ in range(60):
        step(code, state, rng, beta=0.7)  # scramble into a generic state
    before = len(syndrome(code, state.accumulated_error(code)).violated)
    for site, pauli in [(3, 1), (17, 2), (30, 3), (9, 1)]:
        e_after = _run_proposals_python(
            state.x_error, state.z_error, state.violated,
            off, idx, gx, gz,
            np.array([site], dtype=np.int64), np.array([pauli], dtype=np.int64),
            np.array([0.0]), acc, before,
        )
        after = len(syndrome(code, state.accumulated_error(code)).violated)
        assert e_after == after
        before = after


def test_tmax_zero_censors_everything():
    code = builtin("ising2d", 4)
    cfg = ThermalConfig(beta=2.0, t_max=0, seed=1, trials=4)
    results = failure_time(code, "ising2d", cfg)
    assert all(r.censored for r in results)
    assert censoring_rate(results) == 1.0
    assert median_failure_time(results, cfg.t_max) == 0


def test_unknown_family_rejected():
    code = builtin("toric", 4)
    cfg = ThermalConfig(beta=2.0, t_max=10, seed=1)
    with pytest.raises(UnsupportedFamilyError):
        failure_time(code, "mystery", cfg)


def test_toric_decoder_clears_small_errors():
    code = builtin("toric", 4)
    state = SimTrajectory.fresh(code)
    # a short X segment: two star defects, correctable, no logical failure
    for site in ((0, 1), (0, 2)):
        state.x_error[site[0] * 4 + site[1]] = 1
    err = state.accumulated_error(code)
    prof = syndrome(code, err)
    for j in prof.violated:
        state.violated[j] = 1
    state.energy_count = len(prof.violated)
    assert not decoder_failed(code, "toric", state)


def test_toric_decoder_sees_logical_loop():
    code = builtin("toric", 4)
    state = SimTrajectory.fresh(code)
    for c in range(4):  # X loop along h-edge row 0: a logical operator
        state.x_error[0 * 4 + c] = 1
    assert not syndrome(code, state.accumulated_error(code)).violated
    assert decoder_failed(code, "toric", state)


def test_ising_decoder_majority():
    code = builtin("ising2d", 4)
    state = SimTrajectory.fresh(code)
    state.x_error[:7] = 1  # 7 of 16: minority, decoder recovers
    assert not decoder_failed(code, "ising2d", state)
    state.x_error[:9] = 1  # 9 of 16: majority flipped, logical X happened
    assert decoder_failed(code, "ising2d", state)


def test_ising_decoder_ignores_z_noise():
    code = builtin("ising2d", 4)
    state = SimTrajectory.fresh(code)
    state.z_error[:] = 1  # pure dephasing never flips the classical bit
    assert not decoder_failed(code, "ising2d", state)


def test_failure_time_toric_smoke():
    code = builtin("toric", 4)
    cfg = ThermalConfig(beta=2.0, t_max=3000, seed=11, checkpoint_every=25, trials=6)
    results = failure_time(code, "toric", cfg)
    assert len(results) == 6
    assert any(not r.censored for r in results)
    med = median_failure_time(results, cfg.t_max)
    assert 0 < med <= cfg.t_max


def test_results_csv_format():
    rs = [TrialResult(0, 120, False, 4.0), TrialResult(1, None, True, 2.0)]
    text = results_csv("toric", 4, 2.0, rs)
    lines = text.strip().splitlines()
    assert lines[0] == "family,N,beta,trial,failure_time,censored"
    assert lines[1] == "toric,4,2.0,0,120,false"
    assert lines[2] == "toric,4,2.0,1,,true"


def test_event_sampler_matches_proposal_sampler_distribution():
    # the rejection-free kernel must reproduce the per-proposal chain in law
    for family, n, beta in (("ising1d", 6, 0.8), ("ising2d", 4, 0.9)):
        code = builtin(family, n)
        cfg = ThermalConfig(beta=beta, t_max=4000, seed=101, checkpoint_every=10, trials=400)
        a = failure_time(code, family, cfg, method="event")
        b = failure_time(code, family, cfg, method="proposal")
        ma = median_failure_time(a, cfg.t_max)
        mb = median_failure_time(b, cfg.t_max)
        assert 0.75 <= ma / mb <= 1.33
        ea = sum(r.final_energy for r in a) / len(a)
        eb = sum(r.final_energy for r in b) / len(b)
        assert abs(ea - eb) <= 0.15 * max(ea, eb, 1.0)


def test_proposal_sampler_matches_generic_distribution():
    # the specialized per-proposal kernel against the generator-table path
    code = builtin("ising1d", 6)
    cfg = ThermalConfig(beta=0.8, t_max=4000, seed=55, checkpoint_every=10, trials=300)
    a = failure_time(code, "ising1d", cfg, method="proposal")
    b = failure_time(code, "ising1d", cfg, method="generic")
    ma = median_failure_time(a, cfg.t_max)
    mb = median_failure_time(b, cfg.t_max)
    assert 0.7 <= ma / mb <= 1.4


def test_event_sampler_zero_temperature_censors():
    code = builtin("ising2d", 4)
    cfg = ThermalConfig(beta=50.0, t_max=5000, seed=2, checkpoint_every=100, trials=5)
    res = failure_time(code, "ising2d", cfg)
    assert all(r.censored for r in res)
    assert all(r.final_energy == 0.0 for r in res)


def test_event_sampler_deterministic():
    code = builtin("ising2d", 4)
    cfg = ThermalConfig(beta=1.0, t_max=2000, seed=31, checkpoint_every=10, trials=20)
    assert failure_time(code, "ising2d", cfg) == failure_time(code, "ising2d", cfg)
