"""Metropolis single-site Pauli dynamics and logical survival times.

One sweep proposes n_qubits uniform single-site X/Y/Z rotations; each is
accepted with probability min(1, exp(-beta dE)) where dE counts newly violated
minus newly satisfied Hamiltonian terms (in units of delta, so beta is carried
in 1/delta units).  Failure is declared at the first checkpoint where an
ideal family decoder, applied to a copy of the accumulated error, leaves a
nontrivial logical operator behind.

The inner loop is compiled with numba; a pure-Python mirror of the same
update rule backs the public single-sweep `step` and the equivalence tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from numba import njit, prange

from .code import StabilizerCode
from .pauli import PauliOperator


class UnsupportedFamilyError(ValueError):
    """No ideal decoder is available for this code family."""


@dataclass(frozen=True)
class ThermalConfig:
    beta: float  # inverse temperature in units of 1/delta
    t_max: int  # sweep cap
    seed: int
    checkpoint_every: int = 100
    trials: int = 1

    def __post_init__(self) -> None:
        if self.beta <= 0:
            raise ValueError("beta must be positive")
        if self.t_max < 0:
            raise ValueError("t_max must be nonnegative")
        if self.checkpoint_every < 1:
            raise ValueError("checkpoint_every must be at least 1")


@dataclass
class SimTrajectory:
    x_error: np.ndarray  # uint8 per site
    z_error: np.ndarray
    violated: np.ndarray  # uint8 per generator
    sweeps: int
    energy_count: int  # number of violated generators
    energy_trace: list[float] = field(default_factory=list)
    failure_time: int | None = None
    censored: bool = False

    @classmethod
    def fresh(cls, code: StabilizerCode) -> "SimTrajectory":
        return cls(
            x_error=np.zeros(code.n_qubits, dtype=np.uint8),
            z_error=np.zeros(code.n_qubits, dtype=np.uint8),
            violated=np.zeros(code.n_generators, dtype=np.uint8),
            sweeps=0,
            energy_count=0,
        )

    def accumulated_error(self, code: StabilizerCode) -> PauliOperator:
        """Error configuration as a Pauli pattern (phase bookkeeping is not
        meaningful for a noise history and is fixed to the +1 letter form)."""
        x = _bits_to_int(self.x_error)
        z = _bits_to_int(self.z_error)
        return PauliOperator(code.n_rows, code.n_cols, x, z, (x & z).bit_count())


@dataclass(frozen=True)
class TrialResult:
    trial: int
    failure_time: int | None
    censored: bool
    final_energy: float


def _bits_to_int(bits: np.ndarray) -> int:
    return int.from_bytes(
        np.packbits(bits.astype(np.uint8), bitorder="little").tobytes(), "little"
    )


# -- per-code tables ----------------------------------------------------------


def _site_tables(code: StabilizerCode):
    """CSR-style map from site to the generators overlapping it, with the
    generator letters at that site; at most k^2 entries per site."""
    cached = getattr(code, "_thermal_tables", None)
    if cached is not None:
        return cached
    nq = code.n_qubits
    per_site: list[list[tuple[int, int, int]]] = [[] for _ in range(nq)]
    for j, g in enumerate(code.generators):
        support = g.x | g.z
        site = 0
        while support:
            if support & 1:
                per_site[site].append((j, (g.x >> site) & 1, (g.z >> site) & 1))
            support >>= 1
            site += 1
    counts = [len(entries) for entries in per_site]
    off = np.zeros(nq + 1, dtype=np.int64)
    off[1:] = np.cumsum(counts)
    total = int(off[-1])
    idx = np.zeros(total, dtype=np.int64)
    gx = np.zeros(total, dtype=np.uint8)
    gz = np.zeros(total, dtype=np.uint8)
    pos = 0
    for entries in per_site:
        for j, bx, bz in entries:
            idx[pos] = j
            gx[pos] = bx
            gz[pos] = bz
            pos += 1
    tables = (off, idx, gx, gz, max(counts) if counts else 0)
    code._thermal_tables = tables
    return tables


def _acceptance_table(beta: float, max_de: int) -> np.ndarray:
    return np.array([math.exp(-beta * d) for d in range(max_de + 1)], dtype=np.float64)


@njit(cache=True)
def _run_proposals(x_err, z_err, violated, off, idx, gx, gz, sites, paulis, unifs, acc, energy):
    for i in range(sites.shape[0]):
        s = sites[i]
        p = paulis[i]
        px = np.uint8(1) if p != 3 else np.uint8(0)  # X and Y flip the x bit
        pz = np.uint8(1) if p != 1 else np.uint8(0)  # Z and Y flip the z bit
        d_e = 0
        for j in range(off[s], off[s + 1]):
            anti = (gx[j] & pz) ^ (gz[j] & px)
            if anti:
                d_e += 1 - 2 * int(violated[idx[j]])
        if d_e <= 0 or unifs[i] < acc[d_e]:
            for j in range(off[s], off[s + 1]):
                anti = (gx[j] & pz) ^ (gz[j] & px)
                if anti:
                    violated[idx[j]] ^= 1
            x_err[s] ^= px
            z_err[s] ^= pz
            energy += d_e
    return energy


def _run_proposals_python(x_err, z_err, violated, off, idx, gx, gz, sites, paulis, unifs, acc, energy):
    """Reference mirror of the compiled kernel, same arithmetic."""
    for i in range(sites.shape[0]):
        s = int(sites[i])
        p = int(paulis[i])
        px = 1 if p != 3 else 0
        pz = 1 if p != 1 else 0
        d_e = 0
        for j in range(off[s], off[s + 1]):
            anti = (int(gx[j]) & pz) ^ (int(gz[j]) & px)
            if anti:
                d_e += 1 - 2 * int(violated[idx[j]])
        if d_e <= 0 or unifs[i] < acc[d_e]:
            for j in range(off[s], off[s + 1]):
                anti = (int(gx[j]) & pz) ^ (int(gz[j]) & px)
                if anti:
                    violated[idx[j]] ^= 1
            x_err[s] ^= px
            z_err[s] ^= pz
            energy += d_e
    return energy


def sweep_proposals(rng: np.random.Generator, n_qubits: int, n_sweeps: int = 1):
    """The canonical proposal stream: sites, letters (1=X, 2=Y, 3=Z), uniforms."""
    n = n_qubits * n_sweeps
    sites = rng.integers(0, n_qubits, size=n, dtype=np.int64)
    paulis = rng.integers(1, 4, size=n, dtype=np.int64)
    unifs = rng.random(size=n)
    return sites, paulis, unifs


def step(
    code: StabilizerCode, state: SimTrajectory, rng: np.random.Generator, beta: float
) -> SimTrajectory:
    """One Metropolis sweep (n_qubits proposals), deterministic given the rng."""
    off, idx, gx, gz, max_per_site = _site_tables(code)
    acc = _acceptance_table(beta, max_per_site)
    sites, paulis, unifs = sweep_proposals(rng, code.n_qubits)
    state.energy_count = _run_proposals_python(
        state.x_error, state.z_error, state.violated,
        off, idx, gx, gz, sites, paulis, unifs, acc, state.energy_count,
    )
    state.sweeps += 1
    state.energy_trace.append(code.delta * state.energy_count)
    return state


def acceptance_probability(beta: float, d_e: int) -> float:
    """min(1, exp(-beta dE)); exposed for the detailed-balance check."""
    return 1.0 if d_e <= 0 else math.exp(-beta * d_e)


# -- ideal family decoders ------------------------------------------------------


def _ising_failed(code: StabilizerCode, x_err: np.ndarray) -> bool:
    """Majority vote on the classical Z-basis bit: failed when more than half
    the spins are flipped (the correction then lands on the flipped codeword)."""
    return int(x_err.sum()) * 2 > code.n_qubits


def _toric_meta(code: StabilizerCode):
    cached = getattr(code, "_toric_meta", None)
    if cached is not None:
        return cached
    n = code.n_cols
    nc = code.n_cols

    def h_site(r, c):
        return (2 * (r % n)) * nc + (c % n)

    def v_site(r, c):
        return (2 * (r % n) + 1) * nc + (c % n)

    def mask(sites):
        m = 0
        for s in sites:
            m |= 1 << s
        return m

    logical_masks = {
        "Z_H": mask([v_site(0, c) for c in range(n)]),
        "Z_V": mask([h_site(r, 0) for r in range(n)]),
        "X_H": mask([h_site(0, c) for c in range(n)]),
        "X_V": mask([v_site(r, 0) for r in range(n)]),
    }
    meta = (n, h_site, v_site, logical_masks)
    code._toric_meta = meta
    return meta


def _torus_distance(n: int, a: tuple[int, int], b: tuple[int, int]) -> int:
    dr = abs(a[0] - b[0])
    dc = abs(a[1] - b[1])
    return min(dr, n - dr) + min(dc, n - dc)


def _greedy_pairs(n: int, defects: list[tuple[int, int]]) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    remaining = list(defects)
    pairs = []
    while remaining:
        a = remaining.pop(0)
        best = min(
            range(len(remaining)),
            key=lambda i: (_torus_distance(n, a, remaining[i]), i),
        )
        pairs.append((a, remaining.pop(best)))
    return pairs


def _star_correction(code: StabilizerCode, defects: list[tuple[int, int]]) -> int:
    """X mask moving each star defect pair together along a torus geodesic."""
    n, h_site, v_site, _ = _toric_meta(code)
    mask = 0
    for (r1, c1), (r2, c2) in _greedy_pairs(n, defects):
        dr = (r2 - r1) % n
        if dr <= n - dr:
            for i in range(dr):
                mask ^= 1 << v_site(r1 + i, c1)
        else:
            for i in range(n - dr):
                mask ^= 1 << v_site(r1 - 1 - i, c1)
        dc = (c2 - c1) % n
        if dc <= n - dc:
            for i in range(dc):
                mask ^= 1 << h_site(r2, c1 + i)
        else:
            for i in range(n - dc):
                mask ^= 1 << h_site(r2, c1 - 1 - i)
    return mask


def _plaquette_correction(code: StabilizerCode, defects: list[tuple[int, int]]) -> int:
    """Z mask pairing plaquette defects through shared edges."""
    n, h_site, v_site, _ = _toric_meta(code)
    mask = 0
    for (r1, c1), (r2, c2) in _greedy_pairs(n, defects):
        dr = (r2 - r1) % n
        if dr <= n - dr:
            for i in range(dr):
                mask ^= 1 << h_site(r1 + 1 + i, c1)
        else:
            for i in range(n - dr):
                mask ^= 1 << h_site(r1 - i, c1)
        dc = (c2 - c1) % n
        if dc <= n - dc:
            for i in range(dc):
                mask ^= 1 << v_site(r2, c1 + 1 + i)
        else:
            for i in range(n - dc):
                mask ^= 1 << v_site(r2, c1 - i)
    return mask


def _toric_failed(code: StabilizerCode, violated: np.ndarray, x_err: np.ndarray, z_err: np.ndarray) -> bool:
    n, _, _, logical_masks = _toric_meta(code)
    n_cells = n * n
    star_defects = [
        divmod(j - n_cells, n) for j in range(n_cells, 2 * n_cells) if violated[j]
    ]
    plaq_defects = [divmod(j, n) for j in range(n_cells) if violated[j]]
    x_res = _bits_to_int(x_err) ^ _star_correction(code, star_defects)
    z_res = _bits_to_int(z_err) ^ _plaquette_correction(code, plaq_defects)
    for name in ("Z_H", "Z_V"):
        if (x_res & logical_masks[name]).bit_count() & 1:
            return True
    for name in ("X_H", "X_V"):
        if (z_res & logical_masks[name]).bit_count() & 1:
            return True
    return False


def decoder_failed(code: StabilizerCode, family: str, state: SimTrajectory) -> bool:
    """Apply the family's ideal decoder to a copy of the error; True on a
    residual nontrivial logical."""
    if family in ("ising1d", "ising2d"):
        return _ising_failed(code, state.x_error)
    if family == "toric":
        return _toric_failed(code, state.violated, state.x_error, state.z_error)
    raise UnsupportedFamilyError(
        f"no ideal decoder for family {family!r}; generic codes are analysis-only"
    )


# -- specialized Ising survival kernel ---------------------------------------------
#
# The Ising families dominate the thermal benchmark (deep in the ordered phase
# a 2D run is censored for tens of millions of sweeps), so their survival loop
# is a dedicated kernel: spins as a byte array, neighbour lookups instead of
# generator scans, a splitmix64 stream generated in place, and the majority
# vote evaluated without leaving compiled code.  Z proposals cost nothing and
# leave the majority untouched, so only the flip (X/Y) proposals do work.

_U64 = np.uint64
_SM_GAMMA = _U64(0x9E3779B97F4A7C15)
_SM_M1 = _U64(0xBF58476D1CE4E5B9)
_SM_M2 = _U64(0x94D049BB133111EB)
_U64_MASK = (1 << 64) - 1


@njit(inline="always")
def _mix64(z):
    z = (z ^ (z >> _U64(30))) * _SM_M1
    z = (z ^ (z >> _U64(27))) * _SM_M2
    return z ^ (z >> _U64(31))


@njit(cache=True, parallel=True)
def _ising_survival_kernel(seeds, nbr, acc, t_max, checkpoint, out_fail, out_energy):
    n_trials = seeds.shape[0]
    nq = nbr.shape[0]
    deg = nbr.shape[1]
    for t in prange(n_trials):
        state = seeds[t]
        spins = np.zeros(nq, dtype=np.uint8)
        flipped = 0
        fail = np.int64(-1)
        sweeps = 0
        while sweeps < t_max:
            end = sweeps + checkpoint
            if end > t_max:
                end = t_max
            for _ in range((end - sweeps) * nq):
                state = state + _SM_GAMMA
                v = _mix64(state)
                letter = np.int64((v >> _U64(32)) % _U64(3))
                if letter == 2:  # Z proposal: dE = 0, accepted, bit unaffected
                    continue
                site = np.int64((v & _U64(0xFFFFFFFF)) % _U64(nq))
                s = spins[site]
                diff = 0
                for j in range(deg):
                    if spins[nbr[site, j]] != s:
                        diff += 1
                d_e = deg - 2 * diff
                if d_e > 0:
                    state = state + _SM_GAMMA
                    u = np.float64(_mix64(state) >> _U64(11)) * (1.0 / 9007199254740992.0)
                    if u >= acc[d_e]:
                        continue
                spins[site] ^= 1
                flipped += 1 - 2 * np.int64(s)
            sweeps = end
            if 2 * flipped > nq:
                fail = np.int64(sweeps)
                break
        violated = 0
        for site in range(nq):
            for j in range(deg):
                other = nbr[site, j]
                if other > site and spins[other] != spins[site]:
                    violated += 1
        out_fail[t] = fail
        out_energy[t] = violated
    return 0


def _ising_survival_python(seed: int, nbr: np.ndarray, acc: np.ndarray, t_max: int, checkpoint: int):
    """Exact Python mirror of the compiled survival loop (one trial)."""
    state = int(seed)
    nq, deg = nbr.shape
    spins = np.zeros(nq, dtype=np.uint8)
    flipped = 0
    fail = None
    sweeps = 0

    def mix(z):
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 & _U64_MASK
        z = (z ^ (z >> 27)) * 0x94D049BB133111EB & _U64_MASK
        return z ^ (z >> 31)

    while sweeps < t_max:
        end = min(sweeps + checkpoint, t_max)
        for _ in range((end - sweeps) * nq):
            state = (state + 0x9E3779B97F4A7C15) & _U64_MASK
            v = mix(state)
            letter = (v >> 32) % 3
            if letter == 2:
                continue
            site = (v & 0xFFFFFFFF) % nq
            s = int(spins[site])
            diff = sum(1 for j in range(deg) if spins[nbr[site, j]] != s)
            d_e = deg - 2 * diff
            if d_e > 0:
                state = (state + 0x9E3779B97F4A7C15) & _U64_MASK
                u = float(mix(state) >> 11) * (1.0 / 9007199254740992.0)
                if u >= acc[d_e]:
                    continue
            spins[site] ^= 1
            flipped += 1 - 2 * s
        sweeps = end
        if 2 * flipped > nq:
            fail = sweeps
            break
    violated = sum(
        1
        for site in range(nq)
        for j in range(deg)
        if nbr[site, j] > site and spins[nbr[site, j]] != spins[site]
    )
    return fail, violated


# Rejection-free variant (n-fold way).  Between accepted flips the state is
# constant, so the number of proposals until the next flip is geometric with
# success probability Lambda = (2 / 3 nq) * sum_s min(1, exp(-beta dE_s)):
# a site is proposed with probability 1/nq, the letter is X or Y with
# probability 2/3 (Z proposals are always accepted but change nothing the
# failure observable can see).  Sampling the waiting time directly and then
# the flip site in proportion to its acceptance reproduces the Metropolis
# chain exactly in distribution while skipping the rejected proposals, which
# is what makes censored runs deep in the ordered phase affordable.
#
# Sites are bucketed by their count of anti-aligned neighbours (the only
# thing dE depends on); a flip moves itself and its neighbours between
# buckets in O(degree).


@njit(cache=True, parallel=True)
def _ising_survival_bkl(seeds, nbr, acc_flip, t_max, checkpoint, out_fail, out_energy):
    n_trials = seeds.shape[0]
    nq = nbr.shape[0]
    deg = nbr.shape[1]
    n_classes = deg + 1
    flip_scale = 2.0 / (3.0 * nq)
    cp_props = np.int64(checkpoint) * np.int64(nq)
    total_props = np.int64(t_max) * np.int64(nq)
    for t in prange(n_trials):
        state = seeds[t]
        spins = np.zeros(nq, dtype=np.uint8)
        anti = np.zeros(nq, dtype=np.int64)
        members = np.zeros((n_classes, nq), dtype=np.int64)
        pos = np.zeros(nq, dtype=np.int64)
        count = np.zeros(n_classes, dtype=np.int64)
        for s in range(nq):
            members[0, count[0]] = s
            pos[s] = count[0]
            count[0] += 1
        flipped = 0
        fail = np.int64(-1)
        done = np.int64(0)

        while True:
            lam = 0.0
            for k in range(n_classes):
                lam += count[k] * acc_flip[k]
            lam *= flip_scale
            if lam <= 0.0:  # acceptance underflow: no event will ever occur
                if 2 * flipped > nq:
                    next_cp = ((done // cp_props) + 1) * cp_props
                    if next_cp <= total_props:
                        fail = next_cp // nq
                break
            state = state + _SM_GAMMA
            u_wait = (np.float64(_mix64(state) >> _U64(11)) + 1.0) * (1.0 / 9007199254740992.0)
            if lam >= 1.0:
                event_at = done + np.int64(1)
            else:
                w_float = np.floor(np.log(u_wait) / np.log1p(-lam))
                if w_float >= np.float64(total_props - done):
                    event_at = total_props + np.int64(1)  # beyond the horizon
                else:
                    event_at = done + np.int64(1) + np.int64(w_float)

            # checkpoints passed strictly before the flip see the current state
            if 2 * flipped > nq:
                next_cp = ((done // cp_props) + 1) * cp_props
                if next_cp < event_at and next_cp <= total_props:
                    fail = next_cp // nq
                    break
            if event_at > total_props:
                break  # censored: state never changes again before t_max

            # pick the class in proportion to count * acceptance
            state = state + _SM_GAMMA
            u_cls = np.float64(_mix64(state) >> _U64(11)) * (1.0 / 9007199254740992.0)
            target = u_cls * (lam / flip_scale)
            cum = 0.0
            cls = np.int64(-1)
            for k in range(n_classes):
                if count[k] == 0:
                    continue
                cum += count[k] * acc_flip[k]
                cls = k
                if target < cum:
                    break
            state = state + _SM_GAMMA
            u_site = np.float64(_mix64(state) >> _U64(11)) * (1.0 / 9007199254740992.0)
            m = np.int64(u_site * count[cls])
            if m >= count[cls]:
                m = count[cls] - 1
            site = members[cls, m]

            # flip it: the site's class reflects, each neighbour shifts by one
            s_val = spins[site]
            for j in range(deg):
                o = nbr[site, j]
                k_old = anti[o]
                k_new = k_old + (1 if spins[o] == s_val else -1)
                last = count[k_old] - 1
                moved = members[k_old, last]
                members[k_old, pos[o]] = moved
                pos[moved] = pos[o]
                count[k_old] = last
                members[k_new, count[k_new]] = o
                pos[o] = count[k_new]
                count[k_new] += 1
                anti[o] = k_new
            k_old = anti[site]
            k_new = deg - k_old
            last = count[k_old] - 1
            moved = members[k_old, last]
            members[k_old, pos[site]] = moved
            pos[moved] = pos[site]
            count[k_old] = last
            members[k_new, count[k_new]] = site
            pos[site] = count[k_new]
            count[k_new] += 1
            anti[site] = k_new
            spins[site] ^= 1
            flipped += 1 - 2 * np.int64(s_val)
            done = event_at

            # a flip landing exactly on a checkpoint is visible to it
            if done % cp_props == 0 and 2 * flipped > nq:
                fail = done // nq
                break

        violated = 0
        for k in range(n_classes):
            violated += k * count[k]
        out_fail[t] = fail
        out_energy[t] = violated // 2
    return 0


def _ising_neighbor_table(code: StabilizerCode) -> np.ndarray:
    if code.family == "ising1d":
        n = code.n_rows
        return np.array([[(i - 1) % n, (i + 1) % n] for i in range(n)], dtype=np.int64)
    if code.family == "ising2d":
        n = code.n_rows
        table = np.zeros((n * n, 4), dtype=np.int64)
        for r in range(n):
            for c in range(n):
                table[r * n + c] = [
                    ((r - 1) % n) * n + c,
                    ((r + 1) % n) * n + c,
                    r * n + (c - 1) % n,
                    r * n + (c + 1) % n,
                ]
        return table
    raise UnsupportedFamilyError(f"no neighbor table for family {code.family!r}")


def _failure_time_ising(
    code: StabilizerCode, cfg: ThermalConfig, sampler: str = "event"
) -> list[TrialResult]:
    nbr = _ising_neighbor_table(code)
    deg = nbr.shape[1]
    seeds = np.random.SeedSequence(cfg.seed).generate_state(cfg.trials, dtype=np.uint64)
    out_fail = np.zeros(cfg.trials, dtype=np.int64)
    out_energy = np.zeros(cfg.trials, dtype=np.int64)
    if sampler == "event":
        acc_flip = np.array(
            [acceptance_probability(cfg.beta, deg - 2 * k) for k in range(deg + 1)],
            dtype=np.float64,
        )
        _ising_survival_bkl(
            seeds, nbr, acc_flip, cfg.t_max, cfg.checkpoint_every, out_fail, out_energy
        )
    else:
        acc = _acceptance_table(cfg.beta, deg)
        _ising_survival_kernel(
            seeds, nbr, acc, cfg.t_max, cfg.checkpoint_every, out_fail, out_energy
        )
    return [
        TrialResult(
            trial=t,
            failure_time=int(out_fail[t]) if out_fail[t] >= 0 else None,
            censored=out_fail[t] < 0,
            final_energy=code.delta * int(out_energy[t]),
        )
        for t in range(cfg.trials)
    ]


# -- survival-time measurement ----------------------------------------------------


def failure_time(
    code: StabilizerCode,
    family: str | None,
    cfg: ThermalConfig,
    method: str = "auto",
) -> list[TrialResult]:
    """Per-trial first-failure sweep counts (censored at t_max).

    Trials use independent child seeds split from cfg.seed, so results do not
    depend on execution order.  Ising families default to the rejection-free
    survival kernel ('event'); method='proposal' forces the per-proposal
    kernel and method='generic' the generator-table path (both slower, kept
    for cross-validation).
    """
    family = family or code.family
    if family not in ("ising1d", "ising2d", "toric"):
        raise UnsupportedFamilyError(
            f"no ideal decoder for family {family!r}; generic codes are analysis-only"
        )
    if method not in ("auto", "generic", "proposal", "event"):
        raise ValueError("method must be auto, generic, proposal or event")
    if family in ("ising1d", "ising2d") and method in ("auto", "event", "proposal"):
        return _failure_time_ising(
            code, cfg, sampler="event" if method in ("auto", "event") else "proposal"
        )
    if method in ("event", "proposal"):
        raise ValueError("specialized samplers only cover the Ising families")
    off, idx, gx, gz, max_per_site = _site_tables(code)
    acc = _acceptance_table(cfg.beta, max_per_site)
    children = np.random.SeedSequence(cfg.seed).spawn(cfg.trials)
    results = []
    for trial in range(cfg.trials):
        rng = np.random.Generator(np.random.PCG64(children[trial]))
        state = SimTrajectory.fresh(code)
        failed_at = None
        while state.sweeps < cfg.t_max:
            chunk = min(cfg.checkpoint_every, cfg.t_max - state.sweeps)
            sites, paulis, unifs = sweep_proposals(rng, code.n_qubits, chunk)
            state.energy_count = int(
                _run_proposals(
                    state.x_error, state.z_error, state.violated,
                    off, idx, gx, gz, sites, paulis, unifs, acc, state.energy_count,
                )
            )
            state.sweeps += chunk
            state.energy_trace.append(code.delta * state.energy_count)
            if decoder_failed(code, family, state):
                failed_at = state.sweeps
                break
        censored = failed_at is None
        results.append(
            TrialResult(
                trial=trial,
                failure_time=failed_at,
                censored=censored,
                final_energy=code.delta * state.energy_count,
            )
        )
    return results


def median_failure_time(results: list[TrialResult], t_max: int) -> float:
    """Median over trials, counting censored trials at t_max (a lower bound)."""
    times = sorted(t_max if r.censored else r.failure_time for r in results)
    mid = len(times) // 2
    if len(times) % 2:
        return float(times[mid])
    return (times[mid - 1] + times[mid]) / 2.0


def censoring_rate(results: list[TrialResult]) -> float:
    return sum(r.censored for r in results) / len(results)


def results_csv(family: str, n: int, beta: float, results: list[TrialResult]) -> str:
    lines = ["family,N,beta,trial,failure_time,censored"]
    for r in results:
        ft = "" if r.failure_time is None else str(r.failure_time)
        lines.append(f"{family},{n},{beta},{r.trial},{ft},{str(r.censored).lower()}")
    return "\n".join(lines) + "\n"
