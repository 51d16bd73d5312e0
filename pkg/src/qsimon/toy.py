"""Desk-scale end-to-end round-key recovery on 19-round SIMON32/64 with D2.

The toy keeps the attack pipeline intact and shrinks only the search spaces:

1. filter survivors: ``2^index_bits`` ciphertext pairs that pass the state-18
   filter, ``right_pairs`` of them planted right pairs;
2. partial key guessing: the 25 guessed key bits minus ``unknown_bits`` are
   fixed to the planted values; the phase-1 oracle circuit is run on every
   (pair, guess) basis state and compared with brute-force enumeration, then
   QAA is simulated exactly on that marked set;
3. measurement loop: the QAA instance is rerun and measured, collecting
   distinct candidate guesses, and the distinct count is compared with
   ``expected_distinct``;
4. remaining key search: QAA over candidates x ``free_bits`` remaining
   round-key bits, marked by two plaintext/ciphertext pairs.

Round-key coordinates: K15..K18 determine the master key.  The 25 guessed
bits cover K18, seven K17 bits and two K16 ^ K17 combinations; the other 39
"rest" bits are K15, K16 without the two combination bits, and the nine
unguessed K17 bits.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .differential import (MASK, N, classical_h, filter_pass, get_differential, h_spec,
                           k1_from_round_keys, right_pair, sample_filtered_pairs)
from .iterators import build_phase1_iterator, build_phase2_iterator
from .qaa import expected_distinct, iteration_count, measure, simulate_qaa_subspace
from .simon import encrypt, get_variant, invert_key_schedule, key_schedule
from .simulate import get_register, new_bits, set_register, simulate_basis

PARAMS = get_variant("SIMON32/64").with_rounds(19)
GUESS_BITS = 25
REST_BITS = 39
BATCH = 1 << 15


@dataclass(frozen=True)
class ToyConfig:
    unknown_bits: int = 12
    index_bits: int = 6
    right_pairs: int = 4
    free_bits: int = 8
    runs_factor: float = 2.0        # measurement runs per expected solution
    seed: int = 7
    did: str = "D2"

    def __post_init__(self) -> None:
        if not 0 <= self.unknown_bits <= 12:
            raise ValueError("unknown_bits must be in [0, 12]")
        if not 1 <= self.index_bits <= 10:
            raise ValueError("index_bits must be in [1, 10]")
        if not 1 <= self.right_pairs <= 1 << self.index_bits:
            raise ValueError("right_pairs must fit in the index space")
        if not 0 <= self.free_bits <= 12:
            raise ValueError("free_bits must be in [0, 12]")


@dataclass
class ToyResult:
    config: ToyConfig
    master_key: int
    planted_k1: int
    unknown_positions: tuple[int, ...]
    # phase 1
    marked_brute: np.ndarray
    marked_circuit: np.ndarray
    phase1_p: float
    phase1_iterations: int
    phase1_success: float
    runs: int
    distinct_solutions: int
    expected_distinct: float
    candidates: tuple[int, ...]
    # phase 2
    phase2_space: int
    phase2_marked: int
    phase2_oracle_agrees: bool
    phase2_p: float
    phase2_iterations: int
    phase2_success: float
    recovered_key: int | None
    log: list[str] = field(default_factory=list)

    @property
    def oracle_matches(self) -> bool:
        return bool(np.array_equal(self.marked_brute, self.marked_circuit))

    @property
    def partial_key_recovered(self) -> bool:
        return self.planted_k1 in self.candidates

    @property
    def key_recovered(self) -> bool:
        return self.recovered_key == self.master_key

    @property
    def ok(self) -> bool:
        return (self.oracle_matches and self.partial_key_recovered and self.phase2_oracle_agrees
                and self.key_recovered and self.phase2_success >= 1 - self.phase2_p)

    def summary(self) -> dict:
        c = self.config
        return {
            "seed": c.seed, "unknown_bits": c.unknown_bits, "index_bits": c.index_bits,
            "right_pairs": c.right_pairs, "free_bits": c.free_bits,
            "master_key": f"{self.master_key:016x}", "planted_k1": f"{self.planted_k1:07x}",
            "phase1": {"space": int(self.marked_brute.size), "marked": int(self.marked_brute.sum()),
                       "oracle_matches_brute_force": self.oracle_matches, "p": self.phase1_p,
                       "iterations": self.phase1_iterations, "success": self.phase1_success,
                       "runs": self.runs, "distinct_solutions": self.distinct_solutions,
                       "expected_distinct": self.expected_distinct,
                       "candidates": len(self.candidates),
                       "partial_key_recovered": self.partial_key_recovered},
            "phase2": {"space": self.phase2_space, "marked": self.phase2_marked,
                       "oracle_agrees": self.phase2_oracle_agrees, "p": self.phase2_p,
                       "iterations": self.phase2_iterations, "success": self.phase2_success,
                       "recovered_key": None if self.recovered_key is None else f"{self.recovered_key:016x}",
                       "key_recovered": self.key_recovered},
            "ok": self.ok,
        }


# -- round-key coordinates ----------------------------------------------------------
def _rest_layout(did: str) -> list[tuple[int, int]]:
    """(round, bit) of the 39 rest bits, in packing order."""
    spec = h_spec(did)
    kappa16 = {(p + 2) % N for p in spec.kappa}
    out = [(15, b) for b in range(N)]
    out += [(16, b) for b in range(N) if b not in kappa16]
    out += [(17, b) for b in range(N) if b not in spec.k17]
    assert len(out) == REST_BITS
    return out


def assemble_round_keys(k1: int, rest: int, did: str = "D2") -> tuple[int, int, int, int]:
    """K15..K18 from the 25 guessed bits and the 39 rest bits."""
    spec = h_spec(did)
    keys = {15: 0, 16: 0, 17: 0, 18: k1 & MASK}
    for j, (r, b) in enumerate(_rest_layout(did)):
        keys[r] |= ((rest >> j) & 1) << b
    for j, p in enumerate(spec.k17):
        keys[17] |= ((k1 >> (16 + j)) & 1) << p
    for j, p in enumerate(spec.kappa):
        want = (k1 >> (16 + len(spec.k17) + j)) & 1
        keys[16] |= (want ^ ((keys[17] >> p) & 1)) << ((p + 2) % N)
    return keys[15], keys[16], keys[17], keys[18]


def split_round_keys(keys: tuple[int, int, int, int], did: str = "D2") -> tuple[int, int]:
    """Inverse of ``assemble_round_keys``."""
    rk = dict(zip((15, 16, 17, 18), keys))
    rest = 0
    for j, (r, b) in enumerate(_rest_layout(did)):
        rest |= ((rk[r] >> b) & 1) << j
    return k1_from_round_keys(rk, did), rest


def master_from_round_keys(keys: tuple[int, int, int, int]) -> int:
    return invert_key_schedule(PARAMS, 15, list(keys))


# -- data ------------------------------------------------------------------------------
def filtered_pair(rng: np.random.Generator, k18: int, did: str = "D2"):
    """One ciphertext pair that passes the filter, under the last round key ``k18``."""
    ct, ctp, _ = sample_filtered_pairs(rng, 1, did, k18)
    return (int(ct[0][0]), int(ct[1][0])), (int(ctp[0][0]), int(ctp[1][0]))


def _scatter(u: np.ndarray, positions: tuple[int, ...]) -> np.ndarray:
    out = np.zeros_like(u)
    for j, p in enumerate(positions):
        out |= ((u >> j) & 1) << p
    return out


# -- the pipeline ------------------------------------------------------------------------
def _phase1_oracle_marks(pairs, k1_values: np.ndarray, idx: np.ndarray, did: str) -> np.ndarray:
    it = build_phase1_iterator(did)
    oracle = it.oracle()
    cl = np.array([p[0][0] for p in pairs], dtype=np.int64)
    cr = np.array([p[0][1] for p in pairs], dtype=np.int64)
    pl = np.array([p[1][0] for p in pairs], dtype=np.int64)
    pr = np.array([p[1][1] for p in pairs], dtype=np.int64)
    out = np.zeros(k1_values.size, dtype=bool)
    for lo in range(0, k1_values.size, BATCH):
        sl = slice(lo, lo + BATCH)
        n = k1_values[sl].size
        bits = new_bits(oracle, n)
        set_register(bits, oracle.register("k1"), k1_values[sl])
        set_register(bits, oracle.register("index"), idx[sl])
        # C2: load the ciphertext pair named by the index
        for name, col in (("c_left", cl), ("c_right", cr), ("cp_left", pl), ("cp_right", pr)):
            set_register(bits, oracle.register(name), col[idx[sl]])
        res = simulate_basis(oracle, bits)
        for name in ("out_left", "out_right"):
            if any(get_register(res, oracle.register(name))):
                raise RuntimeError("h output register not restored")
        if res[list(oracle.ancillas)].any():
            raise RuntimeError("ancilla not restored")
        out[sl] = res[it.flag]
    return out


def _phase2_oracle_marks(pairs, masters: list[int]) -> np.ndarray:
    it = build_phase2_iterator(PARAMS, 19, pairs, free_bits=PARAMS.key_bits)
    oracle = it.oracle()
    out = np.zeros(len(masters), dtype=bool)
    for lo in range(0, len(masters), BATCH):
        chunk = masters[lo:lo + BATCH]
        bits = new_bits(oracle, len(chunk))
        set_register(bits, oracle.register("key"), chunk)
        for name, v in it.preload.items():
            set_register(bits, oracle.register(name), v)
        res = simulate_basis(oracle, bits)
        out[lo:lo + len(chunk)] = res[it.flag]
    return out


def run_toy_attack(config: ToyConfig | None = None, check_circuits: bool = True) -> ToyResult:
    cfg = config or ToyConfig()
    rng = np.random.default_rng(cfg.seed)
    did = cfg.did
    log: list[str] = []

    master = int.from_bytes(rng.bytes(8), "little")
    rk = key_schedule(PARAMS, master, 19)
    window = tuple(rk[i] for i in (15, 16, 17, 18))
    k1_true, rest_true = split_round_keys(window, did)
    unknown = tuple(sorted(int(p) for p in rng.choice(GUESS_BITS, cfg.unknown_bits, replace=False)))
    unknown_mask = sum(1 << p for p in unknown)
    log.append(f"master key {master:016x}, planted k1 {k1_true:07x}, unknown k1 bits {list(unknown)}")

    # filter survivors with planted right pairs
    size = 1 << cfg.index_bits
    pairs = [right_pair(rng, did, window)[:2] for _ in range(cfg.right_pairs)]
    pairs += [filtered_pair(rng, window[3], did) for _ in range(size - cfg.right_pairs)]
    order = rng.permutation(size)
    pairs = [pairs[i] for i in order]
    if not all(filter_pass(a, b, did) for a, b in pairs):
        raise RuntimeError("a generated pair fails the filter")

    # phase 1: space (index, unknown guess), index major
    k_space = 1 << cfg.unknown_bits
    idx = np.repeat(np.arange(size, dtype=np.int64), k_space)
    u = np.tile(np.arange(k_space, dtype=np.int64), size)
    k1_values = (k1_true & ~unknown_mask) | _scatter(u, unknown)
    ct = tuple(np.array([p[0][w] for p in pairs], dtype=np.int64)[idx] for w in (0, 1))
    ctp = tuple(np.array([p[1][w] for p in pairs], dtype=np.int64)[idx] for w in (0, 1))
    dout = get_differential(did).differential.dout_int
    marked = classical_h(ct, ctp, k1_values, did) == dout
    marked_circuit = _phase1_oracle_marks(pairs, k1_values, idx, did) if check_circuits else marked.copy()
    m_count = int(marked.sum())
    log.append(f"phase 1: {m_count} marked of {marked.size}")

    qaa1 = simulate_qaa_subspace(marked)
    runs = max(1, int(round(cfg.runs_factor * m_count)))
    shots = measure(qaa1, rng, runs)
    good = shots[marked[shots]]
    distinct = np.unique(good)
    candidates = tuple(sorted({int(k1_values[s]) for s in distinct}))
    exp_d = expected_distinct(m_count, runs * qaa1.success_prob) if m_count else 0.0
    log.append(f"phase 1: p={qaa1.p:.3e}, m={qaa1.iterations}, {runs} runs, {distinct.size} distinct "
               f"solutions (expected {exp_d:.1f}), {len(candidates)} candidate guesses")

    # phase 2: candidates x free rest bits, other rest bits planted
    free_pos = tuple(sorted(int(p) for p in rng.choice(REST_BITS, cfg.free_bits, replace=False)))
    free_mask = sum(1 << p for p in free_pos)
    f_space = 1 << cfg.free_bits
    masters = []
    for k1 in candidates:
        for v in range(f_space):
            rest = (rest_true & ~free_mask) | int(_scatter(np.array([v]), free_pos)[0])
            masters.append(master_from_round_keys(assemble_round_keys(k1, rest, did)))
    pts = [int.from_bytes(rng.bytes(4), "little") for _ in range(2)]
    known = [(pt, _enc(rk, pt)) for pt in pts]
    marked2 = np.array([all(_enc(key_schedule(PARAMS, k, 19), pt) == c for pt, c in known)
                        for k in masters], dtype=bool)
    agrees = True
    if check_circuits and masters:
        agrees = bool(np.array_equal(_phase2_oracle_marks(known, masters), marked2))
    recovered = None
    p2 = it2 = succ2 = 0.0
    if marked2.any():
        qaa2 = simulate_qaa_subspace(marked2)
        p2, it2, succ2 = qaa2.p, qaa2.iterations, qaa2.success_prob
        shot = int(measure(qaa2, rng, 1)[0])
        recovered = masters[shot] if marked2[shot] else None
    log.append(f"phase 2: space {len(masters)}, marked {int(marked2.sum())}, p={p2:.3e}, m={it2}, "
               f"success {succ2:.6f}, recovered {recovered if recovered is None else f'{recovered:016x}'}")
    return ToyResult(cfg, master, k1_true, unknown, marked, marked_circuit, qaa1.p, qaa1.iterations,
                     qaa1.success_prob, runs, int(distinct.size), exp_d, candidates, len(masters),
                     int(marked2.sum()), agrees, p2, int(it2), succ2, recovered, log)


def _enc(rk, pt: int) -> int:
    l, r = encrypt(PARAMS, rk, ((pt >> 16) & MASK, pt & MASK), 19)
    return (l << 16) | r
