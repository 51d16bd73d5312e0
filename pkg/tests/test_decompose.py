import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import mcx_truth
from qsimon.analysis import schedule_layers, summarize_resources, toffoli_block_profile
from qsimon.circuit import Circuit, CircuitError, Gate
from qsimon.decompose import (PAPER, STRICT, LoweringScheme, ToffoliScheme, emit_toffoli, lower_circuit,
                              mcx_to_toffoli, mcx_toffoli_count)
from qsimon.simulate import equal_up_to_phase, simulate_basis, simulate_lowered, statevector, unitary


def toffoli_matrix():
    u = np.eye(8, dtype=complex)
    u[[3, 7]] = u[[7, 3]]          # controls are qubits 0 and 1 (index bits 0 and 1)
    return u


@pytest.mark.parametrize("scheme", list(ToffoliScheme))
@pytest.mark.parametrize("values", list(itertools.product((0, 1), repeat=2)))
def test_decomposition_unitary(scheme, values):
    c = Circuit(3)
    c.extend(emit_toffoli(0, 1, 2, scheme, values))
    ref = Circuit(3)
    ref.append(Gate("TOF", (0, 1, 2), values))
    assert equal_up_to_phase(unitary(c), unitary(ref)) < 1e-12


def test_reference_unitary_is_toffoli():
    ref = Circuit(3).ccx(0, 1, 2)
    assert equal_up_to_phase(unitary(ref), toffoli_matrix()) == 0


def test_nc7_counts():
    p = toffoli_block_profile(ToffoliScheme.NC_TD7)
    assert (p["t"], p["cnot"], p["h"], p["s"]) == (7, 6, 2, 1)
    assert (p["depth"], p["t_depth"]) == (13, 7)


def test_amy3_counts():
    p = toffoli_block_profile(ToffoliScheme.AMY_TD3)
    assert (p["t"], p["cnot"], p["h"], p["s"]) == (7, 7, 2, 1)
    assert (p["depth"], p["t_depth"]) == (10, 3)


@pytest.mark.parametrize("scheme", list(ToffoliScheme))
def test_basis_truth_table(scheme):
    c = lower_circuit(Circuit(3).ccx(0, 1, 2), scheme.value)
    bits = np.array([[(x >> q) & 1 for x in range(8)] for q in range(3)], dtype=bool)
    out, _ = simulate_lowered(c, bits)
    assert [int(out[2, 3]), int(out[2, 7])] == [1, 0]          # |110> -> |111> and back
    assert np.array_equal(out[:2], bits[:2])


def ladder_circuit(k, values=None):
    c = Circuit(2 * k - 1)
    c.extend(mcx_to_toffoli(list(range(k)), k, list(range(k + 1, 2 * k - 1)), values))
    return c


@pytest.mark.parametrize("k", range(3, 97))
def test_ladder_toffoli_count(k):
    c = ladder_circuit(k)
    assert c.count("TOF") == 2 * k - 3 == mcx_toffoli_count(k)


@given(st.integers(3, 64), st.data())
def test_ladder_functional(k, data):
    rng = np.random.default_rng(data.draw(st.integers(0, 2 ** 32 - 1)))
    values = tuple(data.draw(st.lists(st.integers(0, 1), min_size=k, max_size=k)))
    c = ladder_circuit(k, values)
    batch = 200
    ctrl = rng.integers(0, 2, (k, batch)).astype(bool)
    ctrl[:, :2] = np.array(values, dtype=bool)[:, None]       # force firing cases
    ctrl[0, 1] ^= True
    bits = np.zeros((c.width, batch), dtype=bool)
    bits[:k] = ctrl
    bits[k] = rng.integers(0, 2, batch).astype(bool)
    out = simulate_basis(c, bits)
    assert np.array_equal(out[k], bits[k] ^ mcx_truth(ctrl, values))
    assert not out[k + 1:].any()
    assert np.array_equal(out[:k], ctrl)


def test_ladder_wrong_ancilla_count():
    with pytest.raises(CircuitError):
        mcx_to_toffoli([0, 1, 2, 3], 4, [5])


def test_ladder_ancilla_overlap():
    with pytest.raises(CircuitError):
        mcx_to_toffoli([0, 1, 2], 3, [2])


@pytest.mark.parametrize("k,t_depth,depth", [(3, 9, 30), (64, 375, 1250), (96, 567, 1890)])
def test_lowered_ladder_depths(k, t_depth, depth):
    c = Circuit(2 * k - 1)
    c.ancillas = list(range(k + 1, 2 * k - 1))
    c.append(Gate("MCX", tuple(range(k + 1))))
    s = summarize_resources(c)
    assert (s.toff_s, s.t_depth, s.full_depth) == (2 * k - 3, 6 * k - 9, 20 * k - 30)
    assert (s.t_depth, s.full_depth) == (t_depth, depth)


def test_512_toffolis_lowered():
    c = Circuit(3)
    for _ in range(512):
        c.ccx(0, 1, 2)
    s = summarize_resources(c)
    assert (s.toff_c, s.toff_h, s.toff_s, s.t) == (3584, 1024, 512, 3584)


def test_mcx_with_two_controls_is_toffoli():
    a = Circuit(3)
    a.append(Gate("MCX", (0, 1, 2)))
    assert lower_circuit(a).gates == lower_circuit(Circuit(3).ccx(0, 1, 2)).gates


def test_insufficient_ancillas():
    c = Circuit(6)
    c.append(Gate("MCX", (0, 1, 2, 3, 4)))
    with pytest.raises(CircuitError):
        lower_circuit(c)


def test_paper_compat_combined_ladder():
    c = Circuit(200)
    c.ancillas = list(range(102, 200))
    c.append(Gate("MCX", tuple(range(97))))
    c.append(Gate("MCX", tuple(range(64)) + (100,)))
    assert summarize_resources(c, STRICT).toff_s == 189 + 125
    assert summarize_resources(c, PAPER).toff_s == 2 * (96 + 64) - 3


def test_scheme_parse():
    s = LoweringScheme.parse("nc7", "paper")
    assert s.toffoli_scheme is ToffoliScheme.NC_TD7 and s.mode == "paper"


def test_statevector_of_h():
    psi = statevector(Circuit(1).h(0))
    assert np.allclose(psi, [2 ** -0.5, 2 ** -0.5])


def test_schedule_of_amy3_block():
    c = Circuit(3)
    c.extend(emit_toffoli(0, 1, 2, ToffoliScheme.AMY_TD3))
    lay = schedule_layers(c)
    assert lay.depth == 10 and lay.depth_of(c, ("T", "TDG")) == 3
