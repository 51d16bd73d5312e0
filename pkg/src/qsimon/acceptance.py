"""Acceptance criteria 1-9 as runnable checks.

Each ``criterion_N`` returns a ``CriterionResult`` with a pass flag, a
one-line detail string, the wall time and the data behind the verdict.  The
CLI ``verify`` command and ``tests/test_acceptance.py`` both run these.
Randomized checks take a seed and record it together with the sample count.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .circuit import Circuit
from .cost import TOLERANCE, constructive_h_cost, encryption_complexity, table_report
from .decompose import STRICT, ToffoliScheme, emit_toffoli, lower_circuit, mcx_to_toffoli
from .differential import ROTATIONS, classical_h, dout_check, sample_filtered_pairs
from .published import H_CIRCUIT, OPEN_QUESTION_CELLS, SUMMARY
from .qaa import evolve_aggregate, iteration_count, simulate_qaa_subspace, success_probability
from .simon import TEST_VECTORS, decrypt, encrypt_int, get_variant, int_to_block, key_schedule
from .simon_circuits import build_encryption_circuit, build_h_circuit, build_key_expansion
from .simulate import (equal_up_to_phase, get_register, new_bits, set_register, simulate_basis,
                       simulate_lowered, unitary)

VARIANTS = ("SIMON32/64", "SIMON48/72", "SIMON48/96", "SIMON64/96", "SIMON64/128")
DEFAULT_SEED = 2024


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float = 0.0
    limit: float | None = None
    data: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.passed and (self.limit is None or self.seconds < self.limit)

    def line(self, timing: bool = True) -> str:
        status = "PASS" if self.ok else "FAIL"
        slow = "" if self.limit is None or self.seconds < self.limit else " over time budget;"
        text = f"criterion {self.number} {status}: {self.title}:{slow} {self.detail}"
        if timing:
            budget = f" (limit {self.limit:g}s)" if self.limit else ""
            text += f" [{self.seconds:.2f}s{budget}]"
        return text


def _timed(number: int, title: str, limit: float | None):
    def wrap(fn: Callable[..., tuple[bool, str, dict]]):
        def run(*args, **kwargs) -> CriterionResult:
            t0 = time.perf_counter()
            passed, detail, data = fn(*args, **kwargs)
            return CriterionResult(number, title, passed, detail, time.perf_counter() - t0, limit, data)
        run.__name__ = fn.__name__
        run.__doc__ = fn.__doc__
        return run
    return wrap


def _random_ints(rng: np.random.Generator, bits: int, count: int) -> list[int]:
    return [int.from_bytes(rng.bytes((bits + 7) // 8), "little") & ((1 << bits) - 1) for _ in range(count)]


# -- 1 ----------------------------------------------------------------------------------
@_timed(1, "SIMON test vectors", 1.0)
def criterion_1() -> tuple[bool, str, dict]:
    """Published test vectors for all five variants, both directions."""
    results = {}
    for tv in TEST_VECTORS:
        p = tv.params
        keys = key_schedule(p, tv.key)
        ct = encrypt_int(p, tv.key, tv.plaintext)
        back = decrypt(p, keys, int_to_block(p, ct))
        results[p.name] = ct == tv.ciphertext and back == int_to_block(p, tv.plaintext)
    bad = [k for k, v in results.items() if not v]
    return not bad, f"{len(results) - len(bad)}/{len(results)} variants match", {"variants": results}


# -- 2 ----------------------------------------------------------------------------------
def _check_encryption(p, rng, samples: int) -> bool:
    c = lower_circuit(build_encryption_circuit(p), STRICT)
    keys = _random_ints(rng, p.key_bits, samples)
    pts = _random_ints(rng, p.block_bits, samples)
    bits = new_bits(c, samples)
    set_register(bits, c.register("key"), keys)
    set_register(bits, c.register("left"), [x >> p.n for x in pts])
    set_register(bits, c.register("right"), [x & p.mask for x in pts])
    out, _ = simulate_lowered(c, bits)
    left, right = get_register(out, c.register("ct_left")), get_register(out, c.register("ct_right"))
    ok = all(((l << p.n) | r) == encrypt_int(p, k, x) for l, r, k, x in zip(left, right, keys, pts))
    return ok and not out[list(c.ancillas)].any()


def _check_key_expansion(p, rng, samples: int) -> bool:
    c = lower_circuit(build_key_expansion(p), STRICT)
    keys = _random_ints(rng, p.key_bits, samples)
    bits = new_bits(c, samples)
    set_register(bits, c.register("key"), keys)
    out, _ = simulate_lowered(c, bits)
    got = get_register(out, c.register("key"))
    for k, g in zip(keys, got):
        rk = key_schedule(p, k)
        for j in range(p.m):
            i = max(i for i in range(p.rounds) if i % p.m == j)
            if (g >> (p.n * j)) & p.mask != rk[i]:
                return False
    return not out[list(c.ancillas)].any()


def _check_h(did: str, rng, samples: int) -> bool:
    c = lower_circuit(build_h_circuit(did), STRICT)
    vals = {name: rng.integers(0, 1 << len(c.register(name)), samples, dtype=np.int64)
            for name in ("k1", "c_left", "c_right", "cp_left", "cp_right")}
    bits = new_bits(c, samples)
    for name, v in vals.items():
        set_register(bits, c.register(name), v)
    out, _ = simulate_lowered(c, bits)
    got = (np.array(get_register(out, c.register("out_left"))) << 16) | np.array(get_register(out, c.register("out_right")))
    want = classical_h((vals["c_left"], vals["c_right"]), (vals["cp_left"], vals["cp_right"]), vals["k1"], did)
    return bool(np.array_equal(got, want)) and not out[list(c.ancillas)].any()


@_timed(2, "circuit vs classical equivalence", 60.0)
def criterion_2(seed: int = DEFAULT_SEED, samples: int = 1000) -> tuple[bool, str, dict]:
    """Lowered encryption and key expansion (all variants) and h (all differentials)."""
    rng = np.random.default_rng(seed)
    res = {}
    for v in VARIANTS:
        p = get_variant(v)
        res[f"enc {v}"] = _check_encryption(p, rng, samples)
        res[f"keyexp {v}"] = _check_key_expansion(p, rng, samples)
    for did in ROTATIONS:
        res[f"h {did}"] = _check_h(did, rng, samples)
    bad = [k for k, ok in res.items() if not ok]
    detail = f"{len(res) - len(bad)}/{len(res)} circuits exact on {samples} inputs each (seed {seed})"
    if bad:
        detail += "; mismatches: " + ", ".join(bad)
    return not bad, detail, {"seed": seed, "samples": samples, "circuits": res}


# -- 3 ----------------------------------------------------------------------------------
def _toffoli_unitary() -> np.ndarray:
    """Controls on qubits 0 and 1 (index bits 0 and 1), target qubit 2."""
    u = np.eye(8, dtype=complex)
    u[[3, 7]] = u[[7, 3]]
    return u


def _scheme_distance(scheme: ToffoliScheme) -> float:
    c = Circuit(3)
    c.extend(emit_toffoli(0, 1, 2, scheme))
    return equal_up_to_phase(unitary(c), _toffoli_unitary())


def _check_ladder(k: int, rng, samples: int) -> tuple[bool, int]:
    controls, target = list(range(k)), k
    anc = list(range(k + 1, 2 * k - 1))
    gates = mcx_to_toffoli(controls, target, anc)
    c = Circuit(2 * k - 1)
    c.extend(gates)
    inputs = rng.integers(0, 2, (k, samples)).astype(bool)
    inputs[:, 0] = True                       # all ones
    inputs[:, 1:k + 1] = True
    for j in range(min(k, samples - 1)):
        inputs[j, 1 + j] = False             # each single zero
    tgt = rng.integers(0, 2, samples).astype(bool)
    bits = np.zeros((c.width, samples), dtype=bool)
    bits[controls] = inputs
    bits[target] = tgt
    out = simulate_basis(c, bits)
    fire = inputs.all(axis=0)
    ok = (np.array_equal(out[target], tgt ^ fire) and np.array_equal(out[controls], inputs)
          and not out[anc].any())
    return ok, sum(g.kind == "TOF" for g in gates)


@_timed(3, "Toffoli and MCX decompositions", None)
def criterion_3(seed: int = DEFAULT_SEED, samples: int = 1000) -> tuple[bool, str, dict]:
    rng = np.random.default_rng(seed)
    dist = {s.value: _scheme_distance(s) for s in ToffoliScheme}
    ladders = {}
    for k in range(3, 65):
        ok, count = _check_ladder(k, rng, samples)
        ladders[k] = ok and count == 2 * k - 3
    unit_ok = all(d < 1e-12 for d in dist.values())
    bad = [k for k, ok in ladders.items() if not ok]
    detail = (", ".join(f"{s} distance {d:.1e}" for s, d in dist.items())
              + f"; MCX ladders k=3..64 exact with 2k-3 Toffolis: {len(ladders) - len(bad)}/{len(ladders)}"
              + f" ({samples} inputs each, seed {seed})")
    return unit_ok and not bad, detail, {"distance": dist, "ladders": ladders, "seed": seed}


# -- 4 ----------------------------------------------------------------------------------
EXACT_ROWS = (("4", "32"), ("4", "19"), ("5", "19"), ("8", "1"), ("9", "1"))


def exact_mismatches(source: str = "constructive") -> dict[tuple[str, str, str], tuple[float, float]]:
    """Cells of the exact targets where the built circuits differ from the published value."""
    out: dict[tuple[str, str, str], tuple[float, float]] = {}
    reports = {t: table_report(t, "auto", source) for t in ("4", "5", "8", "9")}
    for tid, label in EXACT_ROWS:
        row = next(r for r in reports[tid].rows if r.label == label)
        for c in row.cells:
            if c.computed != c.published:
                out[(tid, label, c.column)] = (c.computed, c.published)
    h = constructive_h_cost("D2")
    for col in ("cnot", "toffoli", "t_depth", "full_depth"):
        got = getattr(h, col)
        if got != H_CIRCUIT[col]:
            out[("h", "D2", col)] = (got, H_CIRCUIT[col])
    return out


@_timed(4, "exact table reproduction", None)
def criterion_4(source: str = "constructive") -> tuple[bool, str, dict]:
    """Exact cells, with mismatches allowed only where an open question names the cell."""
    mism = exact_mismatches(source)
    covered = {k: v for k, v in mism.items() if k in OPEN_QUESTION_CELLS}
    uncovered = {k: v for k, v in mism.items() if k not in OPEN_QUESTION_CELLS}
    stale = [k for k in OPEN_QUESTION_CELLS if k not in mism]
    exact_cells = 11 * len(EXACT_ROWS) + 4
    detail = f"{exact_cells - len(mism)}/{exact_cells} cells exact"
    if covered:
        detail += "; covered by open questions: " + ", ".join(
            f"{t}/{r}/{c} {int(a)} vs {int(b)}" for (t, r, c), (a, b) in sorted(covered.items()))
    if uncovered:
        detail += "; UNCOVERED: " + ", ".join(f"{t}/{r}/{c} {a} vs {b}" for (t, r, c), (a, b) in uncovered.items())
    if stale:
        detail += "; stale open-question entries: " + ", ".join("/".join(k) for k in stale)
    data = {"mismatches": {"/".join(k): v for k, v in mism.items()}, "source": source}
    return not uncovered and not stale, detail, data


# -- 5 ----------------------------------------------------------------------------------
TOLERANCE_TABLES = ("6", "10", "11", "12", "13a", "13b", "14")


@_timed(5, "table reproduction within 5%", 10.0)
def criterion_5() -> tuple[bool, str, dict]:
    reports = [table_report(t, "auto", "symbolic") for t in TOLERANCE_TABLES]
    parts, data = [], {}
    total = bad = 0
    for r in reports:
        n = sum(len(row.cells) for row in r.rows)
        f = r.failures()
        total += n
        bad += len(f)
        parts.append(f"{r.table_id}: {n - len(f)}/{n}")
        data[r.table_id] = [f"{lab}/{c.column}" for lab, c in f]
    detail = f"{total - bad}/{total} cells within {TOLERANCE:.0%} (" + ", ".join(parts) + ")"
    return bad == 0, detail, data


# -- 6 ----------------------------------------------------------------------------------
ROUNDING = 1e-12    # at p = 1/2 the bound holds with equality


@_timed(6, "QAA success bound", None)
def criterion_6(table_bits: int = 16) -> tuple[bool, str, dict]:
    """p = 2^-k, k = 1..30: per-key table simulation up to ``table_bits``, 2D evolution above."""
    worst_gap, worst_dev, fails = math.inf, 0.0, []
    for k in range(1, 31):
        p = 2.0 ** -k
        m = iteration_count(p)
        if k <= table_bits:
            marked = np.zeros(1 << k, dtype=bool)
            marked[0] = True
            res = simulate_qaa_subspace(marked, iterations=m)
            succ = res.success_prob
            norm_ok = all(abs(s.norm - 1) <= 1e-9 for s in res.trajectory)
        else:
            traj = evolve_aggregate(p, m)
            succ = traj[-1].good ** 2
            norm_ok = all(abs(s.norm - 1) <= 1e-9 for s in traj)
        dev = abs(succ - success_probability(p, m))
        gap = succ - max(1 - p, p)
        worst_gap, worst_dev = min(worst_gap, gap), max(worst_dev, dev)
        if gap < -ROUNDING or dev > 1e-9 or not norm_ok:
            fails.append(k)
    detail = (f"30 values of p; min(success - max(1-p,p)) = {worst_gap:.3e}, "
              f"max |success - sin^2((2m+1)theta)| = {worst_dev:.1e}")
    if fails:
        detail += f"; failing k: {fails}"
    return not fails, detail, {"failing_k": fails}


# -- 7 ----------------------------------------------------------------------------------
@_timed(7, "filter statistics", 120.0)
def criterion_7(seed: int = DEFAULT_SEED, samples: int = 1 << 22, did: str = "D2") -> tuple[bool, str, dict]:
    """Rate of the 14-bit check over filter-passing ciphertext pairs and random guesses."""
    rng = np.random.default_rng(seed)
    hits = 0
    chunk = 1 << 20
    for lo in range(0, samples, chunk):
        n = min(chunk, samples - lo)
        ct, ctp, _ = sample_filtered_pairs(rng, n, did)
        k1 = rng.integers(0, 1 << 25, n, dtype=np.int64)
        hits += int(np.count_nonzero(dout_check(ct, ctp, k1, did)))
    p = 2.0 ** -14
    mean, sd = samples * p, math.sqrt(samples * p * (1 - p))
    z = (hits - mean) / sd
    rate = math.log2(hits / samples) if hits else -math.inf
    detail = f"{hits} hits in {samples} samples, rate 2^{rate:.2f}, z = {z:+.2f} (seed {seed})"
    return abs(z) <= 3, detail, {"seed": seed, "samples": samples, "hits": hits, "z": z}


# -- 8 ----------------------------------------------------------------------------------
@_timed(8, "toy end-to-end round-key recovery", 300.0)
def criterion_8(unknown_bits: int = 12, seed: int = 7) -> tuple[bool, str, dict]:
    from .qaa import distinct_variance, expected_distinct
    from .toy import ToyConfig, run_toy_attack
    r = run_toy_attack(ToyConfig(unknown_bits=unknown_bits, seed=seed))
    m = int(r.marked_brute.sum())
    sd = math.sqrt(distinct_variance(m, r.runs)) if m > 1 else 0.0
    distinct_ok = abs(r.distinct_solutions - expected_distinct(m, r.runs)) <= max(3 * sd, 1.0)
    checks = {
        "phase-1 oracle marks = brute force": r.oracle_matches,
        "planted partial key among candidates": r.partial_key_recovered,
        "distinct count within 3 sd of expected_distinct": distinct_ok,
        "phase-2 oracle = classical predicate": r.phase2_oracle_agrees,
        "phase-2 success >= 1-p": r.phase2_success >= 1 - r.phase2_p,
        "recovered key = planted key": r.key_recovered,
    }
    detail = (f"k={unknown_bits}, seed {seed}: {m} marked of {r.marked_brute.size}, "
              f"{r.distinct_solutions} distinct in {r.runs} runs (expected {r.expected_distinct:.1f}), "
              f"{len(r.candidates)} candidates, phase-2 success {r.phase2_success:.6f}, "
              f"key {'recovered' if r.key_recovered else 'NOT recovered'}")
    bad = [k for k, v in checks.items() if not v]
    if bad:
        detail += "; failed: " + ", ".join(bad)
    return not bad, detail, {"checks": checks, "summary": r.summary()}


# -- 9 ----------------------------------------------------------------------------------
@_timed(9, "encryption complexity", None)
def criterion_9() -> tuple[bool, str, dict]:
    targets = {("SIMON32/64", "QMKS"): 32.6, ("SIMON32/64", "QRKR"): 31.1}
    for (variant, tech), cells in SUMMARY.items():
        targets[(variant, tech)] = float(cells[0])
    got = {k: encryption_complexity(k[1], k[0]) for k in targets}
    errs = {k: abs(got[k] - v) for k, v in targets.items()}
    bad = [k for k, e in errs.items() if e > 0.1]
    detail = (f"{len(targets) - len(bad)}/{len(targets)} within 0.1 (max error {max(errs.values()):.3f}); "
              f"QMKS 32/64 2^{got[('SIMON32/64', 'QMKS')]:.2f}, QRKR 32/64 2^{got[('SIMON32/64', 'QRKR')]:.2f}")
    return not bad, detail, {"/".join(k): got[k] for k in targets}


CRITERIA: dict[int, Callable[..., CriterionResult]] = {
    1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4, 5: criterion_5,
    6: criterion_6, 7: criterion_7, 8: criterion_8, 9: criterion_9,
}

SUITES: dict[str, tuple[int, ...]] = {
    "simon": (1,), "circuits": (2,), "decompositions": (3,), "tables": (4, 5), "qaa": (6,),
    "filter": (7,), "toy": (8,), "complexity": (9,), "all": tuple(CRITERIA),
}


def run_criteria(numbers: tuple[int, ...] | None = None) -> list[CriterionResult]:
    return [CRITERIA[n]() for n in (numbers or tuple(CRITERIA))]
