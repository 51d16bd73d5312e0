"""Simulators: batched basis-state, two-branch Clifford+T and dense statevector."""

from __future__ import annotations

from typing import Mapping, Sequence

import numpy as np

from .circuit import PSEUDO, Circuit, Gate

MAX_STATEVECTOR_QUBITS = 24
_PHASES = {
    "S": 1j, "SDG": -1j, "Z": -1.0,
    "T": np.exp(1j * np.pi / 4), "TDG": np.exp(-1j * np.pi / 4),
}


class SimulationError(RuntimeError):
    """Raised when a circuit is outside what a simulator supports."""


# -- register helpers --------------------------------------------------------
def new_bits(circuit: Circuit, batch: int) -> np.ndarray:
    return np.zeros((circuit.width, batch), dtype=bool)


def _as_words(values, batch: int, width: int):
    """uint64 array of the values when they fit, else None."""
    if width > 64:
        return None
    arr = np.asarray(values)
    if arr.dtype.kind in "iu":
        return np.broadcast_to(arr.astype(np.uint64), (batch,))
    try:
        return np.broadcast_to(np.asarray(values, dtype=np.uint64), (batch,))
    except (OverflowError, TypeError, ValueError):
        return None


def set_register(bits: np.ndarray, qubits: Sequence[int], values) -> None:
    """Write integer ``values`` (scalar or one per batch entry) LSB-first into ``qubits``."""
    words = _as_words(values, bits.shape[1], len(qubits))
    if words is not None:
        for j, q in enumerate(qubits):
            bits[q] = (words >> np.uint64(j)) & np.uint64(1)
        return
    vals = np.broadcast_to(np.asarray(values, dtype=object), (bits.shape[1],))
    for j, q in enumerate(qubits):
        bits[q] = np.array([(int(v) >> j) & 1 for v in vals], dtype=bool)


def get_register(bits: np.ndarray, qubits: Sequence[int]) -> list[int]:
    if len(qubits) <= 63:
        acc = np.zeros(bits.shape[1], dtype=np.int64)
        for j, q in enumerate(qubits):
            acc |= bits[q].astype(np.int64) << j
        return acc.tolist()
    out = [0] * bits.shape[1]
    for j, q in enumerate(qubits):
        col = bits[q]
        for b in np.flatnonzero(col):
            out[b] |= 1 << j
    return out


def random_bits(rng: np.random.Generator, qubits: Sequence[int], batch: int) -> list[int]:
    """Uniform random integers of width ``len(qubits)``."""
    words = rng.integers(0, 2, size=(batch, len(qubits)), dtype=np.uint8)
    return [sum(int(b) << j for j, b in enumerate(row)) for row in words]


# -- basis simulation ----------------------------------------------------------
def _controls_on(bits: np.ndarray, g: Gate) -> np.ndarray:
    acc = np.ones(bits.shape[1], dtype=bool)
    for q, v in zip(g.controls, g.control_values()):
        acc &= bits[q] if v else ~bits[q]
    return acc


def apply_classical(bits: np.ndarray, g: Gate) -> None:
    k = g.kind
    if k in PSEUDO:
        return
    if k == "NOT":
        bits[g.target] ^= True
    elif k in ("CNOT", "TOF", "MCX"):
        bits[g.target] ^= _controls_on(bits, g)
    else:
        raise SimulationError(f"{k} is not a classical reversible gate")


def simulate_basis(circuit: Circuit, bits: np.ndarray) -> np.ndarray:
    """Run a classical-reversible circuit on a batch of basis states (width x batch)."""
    out = np.array(bits, dtype=bool, copy=True)
    for g in circuit.gates:
        apply_classical(out, g)
    return out


def simulate_lowered(circuit: Circuit, bits: np.ndarray, atol: float = 1e-9) -> tuple[np.ndarray, np.ndarray]:
    """Run a Clifford+T circuit on basis inputs, tracking at most two branches.

    Decomposed Toffolis are contiguous blocks whose H gates open and close a
    single superposed branch, so every input stays a two-term superposition
    inside a block and returns to a basis state after it.  Returns the output
    bits and the global phase per batch entry; raises if any output is not a
    basis state.
    """
    b0 = np.array(bits, dtype=bool, copy=True)
    b1 = b0.copy()
    batch = b0.shape[1]
    a0 = np.ones(batch, dtype=complex)
    a1 = np.zeros(batch, dtype=complex)
    inv_sqrt2 = 1 / np.sqrt(2)
    for g in circuit.gates:
        k = g.kind
        if k in ("MARK", "BARRIER", "NOT", "CNOT", "TOF", "MCX"):
            apply_classical(b0, g)
            apply_classical(b1, g)
        elif k in _PHASES:
            ph = _PHASES[k]
            q = g.target
            a0 = np.where(b0[q], a0 * ph, a0)
            a1 = np.where(b1[q], a1 * ph, a1)
        elif k == "H":
            q = g.target
            live = np.abs(a1) > atol
            if live.any():
                diff = b0[:, live] != b1[:, live]
                diff[q] = False
                if diff.any():
                    raise SimulationError("more than two branches required")
            # amplitudes of the q=0 and q=1 components
            u = np.where(live, np.where(b0[q], a1, a0), np.where(b0[q], 0, a0))
            v = np.where(live, np.where(b0[q], a0, a1), np.where(b0[q], a0, 0))
            new0 = (u + v) * inv_sqrt2
            new1 = (u - v) * inv_sqrt2
            b0[q] = False
            b1[:] = b0
            b1[q] = True
            a0, a1 = new0, new1
            # keep a single live branch in slot 0 when one amplitude vanished
            only1 = (np.abs(a0) <= atol) & (np.abs(a1) > atol)
            if only1.any():
                b0[:, only1] = b1[:, only1]
                a0 = np.where(only1, a1, a0)
                a1 = np.where(only1, 0, a1)
            a1 = np.where(np.abs(a1) <= atol, 0, a1)
        else:
            raise SimulationError(f"unsupported gate {k}")
    if np.any(np.abs(a1) > atol) or not np.allclose(np.abs(a0), 1.0, atol=1e-9):
        raise SimulationError("output is not a basis state")
    return b0, a0


# -- dense statevector ------------------------------------------------------------
def _apply_1q(state: np.ndarray, q: int, mat: np.ndarray, width: int) -> np.ndarray:
    psi = state.reshape([2] * width)
    axis = width - 1 - q
    psi = np.moveaxis(np.tensordot(mat, psi, axes=([1], [axis])), 0, axis)
    return psi.reshape(-1)


def statevector(circuit: Circuit, initial: np.ndarray | int | None = None) -> np.ndarray:
    """Dense simulation; qubit q is bit q of the basis index."""
    w = circuit.width
    if w > MAX_STATEVECTOR_QUBITS:
        raise SimulationError(f"statevector mode supports at most {MAX_STATEVECTOR_QUBITS} qubits")
    dim = 1 << w
    if initial is None or isinstance(initial, (int, np.integer)):
        state = np.zeros(dim, dtype=complex)
        state[int(initial or 0)] = 1.0
    else:
        state = np.asarray(initial, dtype=complex).copy()
    idx = np.arange(dim)
    h = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
    for g in circuit.gates:
        k = g.kind
        if k in PSEUDO:
            continue
        if k == "H":
            state = _apply_1q(state, g.target, h, w)
        elif k in _PHASES:
            state = np.where((idx >> g.target) & 1, state * _PHASES[k], state)
        elif k in ("NOT", "CNOT", "TOF", "MCX"):
            cond = np.ones(dim, dtype=bool)
            for q, v in zip(g.controls, g.control_values()):
                cond &= ((idx >> q) & 1) == v
            src = np.where(cond, idx ^ (1 << g.target), idx)
            state = state[src]
        else:
            raise SimulationError(f"unsupported gate {k}")
    return state


def unitary(circuit: Circuit) -> np.ndarray:
    dim = 1 << circuit.width
    return np.stack([statevector(circuit, i) for i in range(dim)], axis=1)


def equal_up_to_phase(u: np.ndarray, v: np.ndarray) -> float:
    """Max-norm distance between u and v after removing the best global phase."""
    k = np.unravel_index(np.argmax(np.abs(v)), v.shape)
    phase = u[k] / v[k]
    phase /= abs(phase)
    return float(np.max(np.abs(u - phase * v)))


def run_registers(circuit: Circuit, inputs: Mapping[str, Sequence[int]], batch: int,
                  lowered: bool = False) -> dict[str, list[int]]:
    """Load register values, simulate, and read every register back."""
    bits = new_bits(circuit, batch)
    for name, values in inputs.items():
        set_register(bits, circuit.register(name), values)
    if lowered:
        out, _ = simulate_lowered(circuit, bits)
    else:
        out = simulate_basis(circuit, bits)
    return {name: get_register(out, qs) for name, qs in circuit.registers.items()}
