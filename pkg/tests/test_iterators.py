import numpy as np
import pytest

from oracles import ref_encrypt
from qsimon.analysis import mcx_sizes, summarize_resources
from qsimon.cost import parse_pow2
from qsimon.decompose import PAPER, STRICT
from qsimon.differential import dout_check, k1_from_round_keys, right_pair, sample_filtered_pairs
from qsimon.iterators import build_phase1_iterator, build_phase2_iterator, build_qmks_iterator
from qsimon.published import TABLES
from qsimon.simon import get_variant
from qsimon.simulate import get_register, new_bits, set_register, simulate_basis

P32 = get_variant("32/64")
KEY = 0x1918111009080100


def pairs(count, rounds, key=KEY, seed=3):
    rng = np.random.default_rng(seed)
    pts = [int(x) for x in rng.integers(0, 1 << 32, count)]
    return [(pt, ref_encrypt("32/64", key, pt, rounds)) for pt in pts]


@pytest.fixture(scope="module")
def qmks19():
    return build_qmks_iterator(P32, 19, pairs(3, 19))


def test_table5_19_round_row_paper_compat(qmks19):
    s = summarize_resources(qmks19.circuit, PAPER)
    want = [parse_pow2(x) for x in TABLES["5"]["rows"][1].cells]
    assert list(s.row().values()) == want
    assert s.toff_s == 2141 and s.qubits == 255


def test_table5_32_round_counts():
    s = summarize_resources(build_qmks_iterator(P32, 32, pairs(3, 32)).circuit, PAPER)
    assert (s.not_, s.cnot, s.toff_s) == (896, 9728, 3072 + 317)


def test_qmks_mcx_sizes(qmks19):
    assert sorted(mcx_sizes(qmks19.circuit)) == [64, 96]


def test_phase2_row_strict():
    it = build_phase2_iterator(P32, 19, pairs(2, 19), free_bits=25)
    s = summarize_resources(it.circuit, STRICT)
    assert (s.not_, s.toff_s, s.qubits) == (480, 4 * 304 + 2 * (2 * 64 - 3), 191)


def test_phase1_structure():
    it = build_phase1_iterator("D2")
    assert it.width == 209
    assert sorted(mcx_sizes(it.circuit)) == [32, 57]
    assert mcx_sizes(it.oracle()) == [32]
    s = summarize_resources(it.circuit, PAPER)
    assert s.toff_s == 2 * 102 + 2 * (32 + 57) - 3


def test_phase1_reflection_choice():
    # reflecting about A = C2 (C1 x H^25) gives the 50 H gates of the
    # published row; the uniform reflection needs H on all 57 search bits
    a = summarize_resources(build_phase1_iterator("D2").circuit, PAPER)
    b = summarize_resources(build_phase1_iterator("D2", uniform=True).circuit, PAPER)
    assert (a.h, b.h) == (50, 114)
    assert (a.toff_s, a.t_depth, a.qubits) == (b.toff_s, b.t_depth, b.qubits)


def run_qmks_oracle(it, keys):
    oracle = it.oracle()
    bits = new_bits(oracle, len(keys))
    set_register(bits, oracle.register("key"), keys)
    for name, v in it.preload.items():
        set_register(bits, oracle.register(name), v)
    before = bits.copy()
    out = simulate_basis(oracle, bits)
    flag = out[it.flag].copy()
    out[it.flag] = before[it.flag]
    assert np.array_equal(out, before), "registers other than the flag were not restored"
    return flag


@pytest.mark.parametrize("builder", ["qmks", "phase2"])
def test_oracle_marks_exactly_the_consistent_keys(builder):
    # exhaustive over 12 free key bits; the rest fixed to the planted key
    rounds, k = 19, 12
    rng = np.random.default_rng(9)
    positions = sorted(rng.choice(64, k, replace=False).tolist())
    known = pairs(3 if builder == "qmks" else 2, rounds)
    it = (build_qmks_iterator(P32, rounds, known) if builder == "qmks"
          else build_phase2_iterator(P32, rounds, known, free_bits=25))
    base = KEY & ~sum(1 << p for p in positions)
    keys = [base | sum(((u >> j) & 1) << p for j, p in enumerate(positions)) for u in range(1 << k)]
    flag = run_qmks_oracle(it, keys)
    want = [all(ref_encrypt("32/64", key, pt, rounds) == ct for pt, ct in known) for key in keys]
    assert np.array_equal(flag, want)
    assert flag.sum() >= 1


def test_phase1_oracle_marks_the_check_solutions():
    rng = np.random.default_rng(4)
    it = build_phase1_iterator("D2")
    oracle = it.oracle()
    batch = 4096
    ct, ctp, _ = sample_filtered_pairs(rng, batch)
    k1 = rng.integers(0, 1 << 25, batch, dtype=np.int64)
    for i in range(0, batch, 8):               # right pairs under their true guess
        a, b, keys = right_pair(rng, "D2")
        ct[0][i], ct[1][i], ctp[0][i], ctp[1][i] = *a, *b
        k1[i] = k1_from_round_keys(dict(zip((15, 16, 17, 18), keys)))
    bits = new_bits(oracle, batch)
    set_register(bits, oracle.register("k1"), k1)
    set_register(bits, oracle.register("index"), np.arange(batch))
    for name, v in zip(("c_left", "c_right", "cp_left", "cp_right"), (*ct, *ctp)):
        set_register(bits, oracle.register(name), v)
    before = bits.copy()
    out = simulate_basis(oracle, bits)
    want = dout_check(ct, ctp, k1)
    assert want[::8].all()
    assert np.array_equal(out[it.flag], want)
    out[it.flag] = before[it.flag]
    assert np.array_equal(out, before)


def test_iterator_oracle_prefix(qmks19):
    o = qmks19.oracle()
    assert o.gates == qmks19.circuit.gates[:qmks19.oracle_len]
    tail = qmks19.circuit.gates[qmks19.oracle_len:]
    assert sum(g.kind == "H" for g in tail) == 2 * 64
