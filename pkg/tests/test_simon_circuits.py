import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import ref_encrypt, ref_round_keys, ref_state_difference
from qsimon.analysis import summarize_resources
from qsimon.cost import constructive_row, parse_pow2
from qsimon.decompose import PAPER, STRICT, lower_mcx
from qsimon.differential import ROTATIONS, classical_h, get_differential, k1_from_round_keys, right_pair
from qsimon.published import TABLES
from qsimon.simon import get_variant
from qsimon.simon_circuits import (build_encryption_circuit, build_equality_oracle, build_h_circuit,
                                   build_key_expansion)
from qsimon.simulate import get_register, new_bits, run_registers, set_register, simulate_basis

NAMES = ("32/64", "48/72", "48/96", "64/96", "64/128")


def published(table, label):
    row = next(r for r in TABLES[table]["rows"] if r.label == label)
    return [parse_pow2(x) for x in row.cells]


@pytest.mark.parametrize("rounds", [32, 19])
@pytest.mark.parametrize("scheme", [STRICT, PAPER], ids=["strict", "paper"])
def test_table4_rows_exact(rounds, scheme):
    s = summarize_resources(build_encryption_circuit(get_variant("32/64"), rounds), scheme)
    assert list(s.row().values()) == published("4", str(rounds))


@pytest.mark.parametrize("label", [r.label for r in TABLES["11"]["rows"] if not r.label.startswith("SIMON64/128")])
def test_table11_rows_exact(label):
    variant, rounds = label.split(":")
    row = constructive_row("enc", variant, int(rounds)).row()
    assert list(row.values()) == published("11", label)


def test_table11_64_128_rows_follow_the_per_round_formula():
    # the published 64/128 cells break the fixed per-Toffoli ratios; only the
    # formula-determined columns are compared
    for rounds in (44, 26):
        row = constructive_row("enc", "SIMON64/128", rounds).row()
        assert row["toff_s"] == 32 * rounds
        assert row["not"] == 32 * (rounds - 4)
        assert row["cnot"] == 64 * rounds + 128 * (rounds - 4)
        assert row["qubits"] == 192


def test_full_key_expansion_counts():
    c = build_key_expansion(get_variant("32/64"))
    assert (c.count("NOT"), c.count("CNOT")) == (448, 1792)


@pytest.mark.parametrize("name", NAMES)
def test_toffolis_per_round(name):
    p = get_variant(name)
    assert build_encryption_circuit(p, 5).count("TOF") == 5 * p.n


@settings(max_examples=10)
@given(st.sampled_from(NAMES), st.data())
def test_encryption_circuit_matches_reference(name, data):
    p = get_variant(name)
    rounds = data.draw(st.integers(0, p.rounds))
    keys = data.draw(st.lists(st.integers(0, (1 << p.key_bits) - 1), min_size=20, max_size=20))
    pts = data.draw(st.lists(st.integers(0, (1 << p.block_bits) - 1), min_size=20, max_size=20))
    c = build_encryption_circuit(p, rounds)
    out = run_registers(c, {"key": keys, "left": [x >> p.n for x in pts], "right": [x & p.mask for x in pts]}, 20)
    got = [(l << p.n) | r for l, r in zip(out["ct_left"], out["ct_right"])]
    assert got == [ref_encrypt(name, k, x, rounds) for k, x in zip(keys, pts)]


@settings(max_examples=10)
@given(st.sampled_from(NAMES), st.integers(0, 2 ** 128 - 1))
def test_key_expansion_compute_uncompute(name, key):
    p = get_variant(name)
    key &= (1 << p.key_bits) - 1
    c = build_key_expansion(p)
    out = run_registers(c, {"key": [key]}, 1)["key"][0]
    want = ref_round_keys(name, key)
    for j in range(p.m):
        i = max(i for i in range(p.rounds) if i % p.m == j)
        assert (out >> (p.n * j)) & p.mask == want[i]
    assert run_registers(c.inverse(), {"key": [out]}, 1)["key"][0] == key


@pytest.mark.parametrize("did", sorted(ROTATIONS))
def test_h_circuit_matches_classical_h(did):
    rng = np.random.default_rng(11)
    c = build_h_circuit(did)
    vals = {n: rng.integers(0, 1 << len(c.register(n)), 1000, dtype=np.int64)
            for n in ("k1", "c_left", "c_right", "cp_left", "cp_right")}
    out = run_registers(c, vals, 1000)
    got = (np.array(out["out_left"]) << 16) | np.array(out["out_right"])
    want = classical_h((vals["c_left"], vals["c_right"]), (vals["cp_left"], vals["cp_right"]), vals["k1"], did)
    assert np.array_equal(got, want)


@pytest.mark.parametrize("did", sorted(ROTATIONS))
def test_h_on_right_pairs_equals_partial_decryption(did):
    rng = np.random.default_rng(5)
    dout = get_differential(did).differential.dout_int
    for _ in range(200):
        ct, ctp, keys = right_pair(rng, did)
        k1 = k1_from_round_keys({15: keys[0], 16: keys[1], 17: keys[2], 18: keys[3]}, did)
        assert ref_state_difference(ct, ctp, tuple(keys[1:])) == dout
        assert classical_h(ct, ctp, k1, did) == dout


def test_h_circuit_inventory():
    s = summarize_resources(build_h_circuit("D2"))
    assert (s.cnot, s.toff_s, s.t_depth, s.full_depth, s.qubits) == (196, 102, 30, 113, 121)


@pytest.mark.parametrize("did", sorted(ROTATIONS))
def test_h_costs_identical_across_differentials(did):
    a, b = summarize_resources(build_h_circuit("D2")), summarize_resources(build_h_circuit(did))
    assert a.row() == b.row()


def test_equality_oracle_all_zero_pattern():
    c = build_equality_oracle(0, 5, explicit_not=True)
    nots = [g for g in c.gates if g.kind == "NOT"]
    assert sorted(g.qubits[0] for g in nots) == sorted(list(c.register("reg")) * 2)


@given(st.integers(3, 12), st.data())
def test_equality_oracle_flags_only_the_pattern(width, data):
    pattern = data.draw(st.integers(0, (1 << width) - 1))
    for explicit in (False, True):
        c = build_equality_oracle(pattern, width, explicit)
        xs = np.arange(1 << width)
        bits = new_bits(c, xs.size)
        set_register(bits, c.register("reg"), xs)
        out = simulate_basis(lower_mcx(c), bits)
        flag = np.array(get_register(out, c.register("flag")))
        assert np.array_equal(flag, (xs == pattern).astype(int))


def test_equality_oracle_width_mismatch():
    with pytest.raises(ValueError):
        build_equality_oracle(1 << 5, 5)
