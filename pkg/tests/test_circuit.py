import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qsimon.analysis import TABLE_COLUMNS, check_layering, schedule_layers, summarize_resources
from qsimon.circuit import Circuit, CircuitError, Gate, compose
from qsimon.simon import get_variant
from qsimon.simon_circuits import build_encryption_circuit
from qsimon.simulate import new_bits, simulate_basis


def test_append_cnot():
    c = Circuit(2)
    c.append(Gate("CNOT", (0, 1)))
    assert len(c.gates) == 1


def test_duplicate_qubit_rejected():
    with pytest.raises(CircuitError):
        Gate("TOF", (0, 1, 0))


def test_out_of_range_rejected():
    with pytest.raises(CircuitError):
        Circuit(2).append(Gate("CNOT", (0, 2)))


def test_wide_mcx_accepted():
    c = Circuit(255)
    c.append(Gate("MCX", tuple(range(97))))
    assert c.gates[0].num_controls == 96


KINDS = ("NOT", "CNOT", "TOF", "H", "S", "SDG", "T", "TDG")


@st.composite
def circuits(draw, width=6, max_gates=30, kinds=KINDS):
    c = Circuit(width)
    for _ in range(draw(st.integers(0, max_gates))):
        kind = draw(st.sampled_from(kinds))
        arity = {"CNOT": 2, "TOF": 3}.get(kind, 1)
        qs = draw(st.permutations(range(width)))[:arity]
        vals = None
        if arity > 1:
            vals = tuple(draw(st.lists(st.integers(0, 1), min_size=arity - 1, max_size=arity - 1)))
        c.append(Gate(kind, tuple(qs), vals))
    return c


@given(circuits())
def test_text_roundtrip(c):
    back = Circuit.from_text(c.to_text())
    assert back.width == c.width and back.gates == c.gates


@given(circuits())
def test_layering_is_valid_and_order_consistent(c):
    lay = schedule_layers(c)
    check_layering(c, lay)
    for i, gi in enumerate(c.gates):
        for j in range(i + 1, len(c.gates)):
            if set(gi.qubits) & set(c.gates[j].qubits):
                assert lay.gate_layer[i] < lay.gate_layer[j]


def test_disjoint_cnots_share_a_layer():
    c = Circuit(4).cx(0, 1).cx(2, 3)
    assert schedule_layers(c).depth == 1


def test_unlowered_mcx_rejected():
    c = Circuit(5)
    c.append(Gate("MCX", (0, 1, 2, 3)))
    with pytest.raises(CircuitError):
        schedule_layers(c)


def test_empty_summary_is_zero():
    s = summarize_resources(Circuit(0))
    assert all(v == 0 for v in s.row().values())


@given(circuits(kinds=("NOT", "CNOT", "TOF")), circuits(kinds=("NOT", "CNOT", "TOF")))
def test_summary_additive_on_disjoint_registers(a, b):
    both = compose(a, b, [q + a.width for q in range(b.width)])
    sa, sb, sc = (summarize_resources(x, scheduler="asap") for x in (a, b, both))
    for col in ("not", "cnot", "toff_c", "h", "toff_h", "toff_s", "cliff", "t"):
        assert sc.row()[col] == sa.row()[col] + sb.row()[col]
    assert max(sa.full_depth, sb.full_depth) <= sc.full_depth <= sa.full_depth + sb.full_depth


@given(circuits(kinds=("NOT", "CNOT", "TOF")), st.integers(0, 63))
def test_compose_with_inverse_is_identity(c, x):
    both = compose(c, c.inverse())
    bits = new_bits(both, 1)
    for q in range(6):
        bits[q, 0] = (x >> q) & 1
    assert np.array_equal(simulate_basis(both, bits), bits)


def test_parallel_instances_depth_is_max():
    p = get_variant("32/64")
    enc = build_encryption_circuit(p, 19)
    three = enc
    for k in (1, 2):
        three = compose(three, enc, [q + k * enc.width for q in range(enc.width)], prefix=f"i{k}_")
    one, par = summarize_resources(enc), summarize_resources(three)
    assert par.full_depth == one.full_depth
    assert par.toff_s == 3 * one.toff_s


def test_compose_rejects_colliding_map():
    a, b = Circuit(2), Circuit(2).cx(0, 1)
    with pytest.raises(CircuitError):
        compose(a, b, [0, 0])


def test_qasm_export():
    c = Circuit(3).ccx(0, 1, 2).h(0)
    text = c.to_qasm()
    assert text.startswith("OPENQASM 2.0;") and "ccx q[0],q[1],q[2];" in text


def test_qasm_rejects_mcx():
    c = Circuit(5)
    c.append(Gate("MCX", (0, 1, 2, 3)))
    with pytest.raises(CircuitError):
        c.to_qasm()


def test_summary_columns_in_table_order():
    assert list(summarize_resources(Circuit(1)).row()) == list(TABLE_COLUMNS)
