"""QAA iterators G = U_s U_g for the master-key search and both key-recovery phases.

Phase oracles use a flag qubit prepared in |-> once before the first
iteration: an MCX into the flag is then a phase flip.  The same circuit with
the flag starting in |0> is the bit-marking variant used for basis-state
testing, so both variants share every gate.

State preparation operators that the attack treats as free (loading a
superposition of classical tuples, or of candidate keys) are MARK gates.

With ``barriers`` (the default) the components of an iterator (compute,
comparator, uncompute, diffusion) are fenced so that its full depth is the
sum of the component depths; without them the scheduler may overlap the
comparator ladder with the tails of the encryptions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .circuit import Circuit, Gate
from .simon import SimonParams, get_variant
from .differential import get_differential
from .simon_circuits import (HLayout, emit_encryption, emit_uncompute, equality_oracle_gate,
                             h_gates, h_inverse_gates)


@dataclass
class Iterator:
    """An iterator circuit plus the metadata needed to run or cost it."""

    circuit: Circuit
    search: tuple[int, ...]
    flag: int
    preload: dict[str, int] = field(default_factory=dict)
    description: str = ""
    oracle_len: int = 0

    @property
    def width(self) -> int:
        return self.circuit.width

    def oracle(self) -> Circuit:
        """U_g alone (bit-marking when the flag starts in |0>)."""
        c = self.circuit.copy()
        c.gates = c.gates[:self.oracle_len]
        return c


def _diffusion(c: Circuit, hadamard: Sequence[int], reflect: Sequence[int], flag: int,
               prep: str | Sequence[tuple[str, Sequence[int]]] | None = None) -> None:
    """U_s = A S0 A^-1 with A = (prep) . H on ``hadamard``; S0 is a zero-controlled MCX.

    ``prep`` names the zero-cost preparation markers, applied last in A: a
    single label acts on ``reflect``, a sequence gives (label, qubits) pairs
    in the order A applies them.
    """
    steps = [] if not prep else [(prep, reflect)] if isinstance(prep, str) else list(prep)
    for label, qs in reversed(steps):
        c.mark(label + "_inv", qs)
    for q in hadamard:
        c.h(q)
    c.append(Gate("MCX", (*reflect, flag), (0,) * len(reflect)))
    for q in hadamard:
        c.h(q)
    for label, qs in steps:
        c.mark(label, qs)


def _encrypt_instances(c: Circuit, params: SimonParams, rounds: int, count: int):
    key = c.add_register("key", params.key_bits)
    states = [(c.add_register(f"left{k}", params.n), c.add_register(f"right{k}", params.n))
              for k in range(count)]
    return key, states


def _ct_qubits(states, rounds: int) -> list[int]:
    out: list[int] = []
    for left, right in states:
        ol, orr = (right, left) if rounds % 2 else (left, right)
        out += list(orr) + list(ol)       # block bits LSB-first: right word then left word
    return out


def _block_pattern(blocks: Sequence[int], n: int) -> int:
    """Concatenate 2n-bit blocks (left||right) into the comparator pattern."""
    pat = 0
    for k, b in enumerate(blocks):
        pat |= b << (2 * n * k)
    return pat


def _fence(c: Circuit, on: bool) -> None:
    if on:
        c.barrier()


def build_qmks_iterator(params: SimonParams | str, rounds: int | None,
                        pairs: Sequence[tuple[int, int]], barriers: bool = True) -> Iterator:
    """Master-key search iterator for ``len(pairs)`` plaintext/ciphertext pairs.

    U_g: in-place key expansion interleaved with the encryptions of all pairs
    under the shared key register, one comparator MCX over every ciphertext bit,
    and the inverse computation.  U_s: H on the key, zero-controlled MCX, H.
    """
    params = get_variant(params) if isinstance(params, str) else params
    rounds = params.rounds if rounds is None else rounds
    c = Circuit(name=f"QMKS iterator {params.name} {rounds} rounds")
    key, states = _encrypt_instances(c, params, rounds, len(pairs))
    cts = _ct_qubits(states, rounds)
    k_big = max(len(cts), params.key_bits)
    c.add_ancillas(k_big - 2)
    flag = c.add_register("flag", 1)[0]
    emit_encryption(c, params, key, states, rounds)
    _fence(c, barriers)
    c.append(equality_oracle_gate(_block_pattern([ct for _, ct in pairs], params.n), cts, flag))
    _fence(c, barriers)
    emit_uncompute(c, params, key, states, rounds)
    _fence(c, barriers)
    n_oracle = len(c.gates)
    _diffusion(c, key, key, flag)
    preload = {}
    for k, (pt, _) in enumerate(pairs):
        preload[f"left{k}"] = pt >> params.n
        preload[f"right{k}"] = pt & params.mask
    return Iterator(c, tuple(key), flag, preload, "QMKS", n_oracle)


def build_phase2_iterator(params: SimonParams | str, rounds: int | None,
                          pairs: Sequence[tuple[int, int]], free_bits: int = 25,
                          barriers: bool = True) -> Iterator:
    """Remaining-key search iterator over the full key register.

    A prepares the candidate superposition (MARK ``C``) on the key bits fixed
    by phase 1 and H on the ``free_bits`` remaining bits.  The key register
    holds the master key; the linear map from round-key coordinates is part
    of the preparation.
    """
    params = get_variant(params) if isinstance(params, str) else params
    rounds = params.rounds if rounds is None else rounds
    c = Circuit(name=f"QRKR phase-2 iterator {params.name} {rounds} rounds")
    key, states = _encrypt_instances(c, params, rounds, len(pairs))
    cts = _ct_qubits(states, rounds)
    c.add_ancillas(max(len(cts), params.key_bits) - 2)
    flag = c.add_register("flag", 1)[0]
    emit_encryption(c, params, key, states, rounds)
    _fence(c, barriers)
    c.append(equality_oracle_gate(_block_pattern([ct for _, ct in pairs], params.n), cts, flag))
    _fence(c, barriers)
    emit_uncompute(c, params, key, states, rounds)
    _fence(c, barriers)
    n_oracle = len(c.gates)
    _diffusion(c, key[params.key_bits - free_bits:], key, flag, prep="C")
    preload = {}
    for k, (pt, _) in enumerate(pairs):
        preload[f"left{k}"] = pt >> params.n
        preload[f"right{k}"] = pt & params.mask
    return Iterator(c, tuple(key), flag, preload, "QRKR phase 2", n_oracle)


def build_phase1_iterator(did: str = "D2", barriers: bool = True, uniform: bool = False) -> Iterator:
    """Partial-key-guessing iterator over 25 guessed key bits and a 32-bit plaintext index.

    U_g: h into the output register, a 32-fold comparator against the output
    difference, h inverse.  A = C2 (C1 x H^25): C1 loads the plaintext index,
    C2 the ciphertext pair; both are zero-cost markers.  U_s reflects about
    A|0> with one 57-fold MCX.  ``uniform`` reflects about H^57 instead, with
    C2 still loading the ciphertexts.
    """
    diff = get_differential(did).differential
    c = Circuit(name=f"QRKR phase-1 iterator {did}")
    k1 = c.add_register("k1", 25)
    index = c.add_register("index", 32)
    ct = (c.add_register("c_left", 16), c.add_register("c_right", 16))
    ctp = (c.add_register("cp_left", 16), c.add_register("cp_right", 16))
    out = (c.add_register("out_left", 16), c.add_register("out_right", 16))
    search = k1 + index
    c.add_ancillas(len(search) - 2)
    flag = c.add_register("flag", 1)[0]
    lay = HLayout(k1, ct, ctp, out)
    fwd = h_gates(lay, did)
    c.extend(fwd)
    _fence(c, barriers)
    c.append(equality_oracle_gate(diff.dout_int, out[1] + out[0], flag))
    _fence(c, barriers)
    c.extend(h_inverse_gates(fwd))
    _fence(c, barriers)
    n_oracle = len(c.gates)
    loaded = index + ct[0] + ct[1] + ctp[0] + ctp[1]
    if uniform:
        _diffusion(c, search, search, flag, prep=[("C2", loaded)])
    else:
        _diffusion(c, k1, search, flag, prep=[("C1", index), ("C2", loaded)])
    return Iterator(c, tuple(search), flag, {}, f"QRKR phase 1 {did}", n_oracle)
