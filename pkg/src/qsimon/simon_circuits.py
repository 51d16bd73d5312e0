"""Reversible SIMON circuits: rounds, key expansion and comparators.

The encryption is computed in place.  Round i XORs f(L) and K^i into the
register holding R; the two state registers swap roles every round, so no
fresh state qubits are needed.  The key register holds m words and is updated
in place: K^i overwrites K^{i-m} once round i-m no longer needs it.

Per-round inventory (n-bit words): n Toffolis for the AND term, n CNOTs for
the x<<<2 term and n CNOTs for the key addition; rotations are wiring only.
One key-expansion step costs 2n CNOTs (m = 2, 3) or 4n CNOTs (m = 4) and
exactly n NOTs: the constant c ^ z has weight n-2+z, which is injected by
n-4+2z direct NOTs plus 2-z "negated-source" windows (NOT s; CNOT s->t;
NOT s), each of which adds a constant 1 to its target.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .analysis import align_stages, stage_emission_order
from .circuit import Circuit, Gate
from .differential import N as H_WORD, h_spec, unpack_k1
from .simon import SimonParams


@dataclass(frozen=True)
class SimonCircuitLayout:
    """Register indices of an encryption circuit."""

    key_words: tuple[tuple[int, ...], ...]
    left: tuple[int, ...]
    right: tuple[int, ...]
    rounds: int

    @property
    def out_left(self) -> tuple[int, ...]:
        return self.right if self.rounds % 2 else self.left

    @property
    def out_right(self) -> tuple[int, ...]:
        return self.left if self.rounds % 2 else self.right

    def key_word_after(self, params: SimonParams, i: int) -> tuple[int, ...]:
        return self.key_words[i % params.m]


def key_words_of(key_register: Sequence[int], params: SimonParams) -> tuple[tuple[int, ...], ...]:
    n = params.n
    return tuple(tuple(key_register[j * n:(j + 1) * n]) for j in range(params.m))


# -- round function -------------------------------------------------------------
def round_gates(params: SimonParams, ctrl: Sequence[int], tgt: Sequence[int],
                key: Sequence[int] | None) -> dict[str, list[Gate]]:
    """Gates of one round grouped by operation: ``and``, ``rot2`` and ``key``."""
    n = params.n
    ops = {
        "and": [Gate("TOF", (ctrl[(i - 1) % n], ctrl[(i - 8) % n], tgt[i])) for i in range(n)],
        "rot2": [Gate("CNOT", (ctrl[(i - 2) % n], tgt[i])) for i in range(n)],
        "key": [] if key is None else [Gate("CNOT", (key[i], tgt[i])) for i in range(n)],
    }
    return ops


# -- key schedule ---------------------------------------------------------------
def _window_targets(params: SimonParams, z: int) -> list[int]:
    """Target bits whose constant 1 is injected through a NOT window."""
    return [2, 3][: 2 - z]


def key_expansion_step(params: SimonParams, words: Sequence[Sequence[int]], i: int) -> list[Gate]:
    """In-place K^i into the word that holds K^{i-m}."""
    n, m = params.n, params.m
    tgt = words[i % m]
    last = words[(i - 1) % m]
    sources: list[list[int]] = [[] for _ in range(n)]
    for j in range(n):
        if m == 4:
            a = words[(i - 3) % m]
            sources[j] += [a[j], a[(j + 1) % n]]
        sources[j] += [last[(j + 3) % n], last[(j + 4) % n]]
    z = params.z_bit(i - m)
    const = params.constant ^ z
    windows = _window_targets(params, z)
    gates: list[Gate] = []
    # one source term across all bits at a time: each group is a single layer
    for s_idx in range(len(sources[0])):
        final = s_idx == len(sources[0]) - 1
        pre = [Gate("NOT", (sources[j][s_idx],)) for j in windows] if final else []
        gates += pre
        gates += [Gate("CNOT", (sources[j][s_idx], tgt[j])) for j in range(n)]
        gates += pre
    for j in range(n):
        if (const >> j) & 1 and j not in windows:
            gates.append(Gate("NOT", (tgt[j],)))
    return gates


def build_key_expansion(params: SimonParams, rounds: int | None = None) -> Circuit:
    """Expand the key register in place up to K^{rounds-1}."""
    rounds = params.rounds if rounds is None else rounds
    _check(params, rounds)
    c = Circuit(name=f"{params.name} key expansion, {rounds} rounds")
    key = c.add_register("key", params.key_bits)
    words = key_words_of(key, params)
    for i in range(params.m, rounds):
        c.extend(key_expansion_step(params, words, i))
    return c


# -- encryption -----------------------------------------------------------------
def _check(params: SimonParams, rounds: int) -> None:
    if not 0 <= rounds <= params.rounds:
        raise ValueError(f"rounds must be in [0, {params.rounds}] for {params.name}")


def _round_ops(params: SimonParams, words, regs, i: int) -> list[Gate]:
    """Round i for every instance, each operation across all bits and instances.

    The key XORs visit the instances in reverse order so that the instance
    released last is the first whose next-round Toffolis are emitted; the
    stage-packed schedule then aligns all instances in one Toffoli stage.
    """
    per = [round_gates(params, l, r, words[i % params.m]) if i % 2 == 0
           else round_gates(params, r, l, words[i % params.m]) for l, r in regs]
    gates: list[Gate] = []
    for op in ("and", "rot2", "key"):
        for ops in (reversed(per) if op == "key" else per):
            gates.extend(ops[op])
    return gates


def emit_encryption(c: Circuit, params: SimonParams, key: Sequence[int],
                    states: Sequence[tuple[Sequence[int], Sequence[int]]], rounds: int,
                    expand_key: bool = True) -> None:
    """Emit ``rounds`` rounds for several instances sharing one key register.

    Emission order groups each operation across all bits (and all instances)
    before the next one: key expansion step, AND terms, x<<<2 terms, key terms.
    """
    words = key_words_of(key, params)
    regs = [list(s) for s in states]
    for i in range(rounds):
        if expand_key and i >= params.m:
            c.extend(key_expansion_step(params, words, i))
        c.extend(_round_ops(params, words, regs, i))


def emit_uncompute(c: Circuit, params: SimonParams, key: Sequence[int],
                   states: Sequence[tuple[Sequence[int], Sequence[int]]], rounds: int,
                   expand_key: bool = True) -> None:
    """Inverse of ``emit_encryption``.

    The gates of one round all XOR into the same register from controls the
    round leaves unchanged, so they commute and each is self-inverse: a round
    is undone by replaying it in forward order.  Key-expansion steps are
    undone by their reversed gate lists.
    """
    words = key_words_of(key, params)
    regs = [list(s) for s in states]
    for i in reversed(range(rounds)):
        c.extend(_round_ops(params, words, regs, i))
        if expand_key and i >= params.m:
            c.extend(g.inverse() for g in reversed(key_expansion_step(params, words, i)))


def build_encryption_circuit(params: SimonParams, rounds: int | None = None,
                             instances: int = 1, expand_key: bool = True) -> Circuit:
    """In-place encryption of ``instances`` blocks under one key register."""
    rounds = params.rounds if rounds is None else rounds
    _check(params, rounds)
    c = Circuit(name=f"{params.name} encryption, {rounds} rounds")
    key = c.add_register("key", params.key_bits)
    states = []
    for k in range(instances):
        sfx = "" if instances == 1 else str(k)
        states.append((c.add_register("left" + sfx, params.n), c.add_register("right" + sfx, params.n)))
    emit_encryption(c, params, key, states, rounds, expand_key)
    for k, (l, r) in enumerate(states):
        sfx = "" if instances == 1 else str(k)
        lay = SimonCircuitLayout(key_words_of(key, params), l, r, rounds)
        c.registers["ct_left" + sfx] = lay.out_left
        c.registers["ct_right" + sfx] = lay.out_right
    return c


def encryption_layout(params: SimonParams, c: Circuit, rounds: int, suffix: str = "") -> SimonCircuitLayout:
    return SimonCircuitLayout(key_words_of(c.register("key"), params), c.register("left" + suffix),
                              c.register("right" + suffix), rounds)


# -- function h ------------------------------------------------------------------
@dataclass(frozen=True)
class HLayout:
    """Registers of the h circuit: guessed key bits, ciphertext pair, output."""

    k1: tuple[int, ...]
    ct: tuple[tuple[int, ...], tuple[int, ...]]
    ctp: tuple[tuple[int, ...], tuple[int, ...]]
    out: tuple[tuple[int, ...], tuple[int, ...]]


def h_gates(lay: HLayout, did: str = "D2", stage_order: bool = True) -> list[Gate]:
    """Gates computing the state-15 difference into ``lay.out``.

    Works in place on the ciphertext registers (restored by the inverse):
    the left words become R18 = L17, the right word of C accumulates R17 on
    the guessed bits, and two bits of C's left word become R16 values.  The
    output register ends as (dL15, dR15), matching ``classical_h``.
    With ``stage_order`` the commuting gates are reordered for Toffoli depth.
    """
    n = H_WORD
    spec = h_spec(did)
    (xl, y), (xlp, yp) = lay.ct, lay.ctp
    dl, dr = lay.out
    k18 = lay.k1[:n]
    k17_bits = {p: lay.k1[n + j] for j, p in enumerate(spec.k17)}
    k17_bits.update({p: lay.k1[n + len(spec.k17) + j] for j, p in enumerate(spec.kappa)})
    tof = lambda a, b, t: Gate("TOF", (a, b, t))
    cx = lambda a, t: Gate("CNOT", (a, t))
    g: list[Gate] = []
    # Delta^18 stage: one round back with K18 on both ciphertexts
    for op in range(3):
        for left, right in ((xl, y), (xlp, yp)):
            for i in range(n):
                if op == 0:
                    g.append(tof(right[(i - 1) % n], right[(i - 8) % n], left[i]))
                elif op == 1:
                    g.append(cx(right[(i - 2) % n], left[i]))
                else:
                    g.append(cx(k18[i], left[i]))
    g += [cx(xl[i], dl[i]) for i in range(n)] + [cx(xlp[i], dl[i]) for i in range(n)]
    g += [cx(y[i], dr[i]) for i in range(n)] + [cx(yp[i], dr[i]) for i in range(n)]
    # state 17: dR17 into dr
    s17 = set(spec.s17)
    g += [tof(xl[(i - 1) % n], xl[(i - 8) % n], dr[i]) for i in range(n) if i in s17]
    g += [tof(xlp[(i - 1) % n], xlp[(i - 8) % n], dr[i]) for i in range(n) if i in s17]
    g += [tof(dl[(i - 1) % n], dl[(i - 8) % n], dr[i]) for i in range(n) if i not in s17]
    g += [cx(dl[(i - 2) % n], dr[i]) for i in range(n)]
    # R17 on the guessed bits, in place in C's right word
    vb = sorted(k17_bits)
    g += [tof(xl[(i - 1) % n], xl[(i - 8) % n], y[i]) for i in vb]
    g += [cx(xl[(i - 2) % n], y[i]) for i in vb]
    g += [cx(k17_bits[i], y[i]) for i in vb]
    # state 16: dR16 into dl
    g += [tof(y[(i - 1) % n], dr[(i - 8) % n], dl[i]) for i in sorted(spec.a16)]
    g += [tof(dr[(i - 1) % n], y[(i - 8) % n], dl[i]) for i in sorted(spec.b16)]
    g += [tof(dr[(i - 1) % n], dr[(i - 8) % n], dl[i]) for i in range(n) if i not in spec.c16_skip]
    g += [cx(dr[(i - 2) % n], dl[i]) for i in range(n)]
    # R16 values in place in C's left word
    g += [tof(y[(i - 1) % n], y[(i - 8) % n], xl[i]) for i in spec.r16]
    g += [cx(y[(i - 2) % n], xl[i]) for i in spec.r16]
    # state 15: dR15 into dr
    g += [tof(xl[(i - 1) % n], dl[(i - 8) % n], dr[i]) for i in sorted(spec.a15)]
    g += [tof(dl[(i - 1) % n], xl[(i - 8) % n], dr[i]) for i in sorted(spec.b15)]
    g += [tof(dl[(i - 1) % n], dl[(i - 8) % n], dr[i]) for i in range(n) if i not in spec.c15_skip]
    g += [cx(dl[(i - 2) % n], dr[i]) for i in range(n)]
    if stage_order:
        width = 1 + max(q for gate in g for q in gate.qubits)
        g = stage_emission_order(Circuit(width, g)).gates
    return g


def h_inverse_gates(forward: Sequence[Gate]) -> list[Gate]:
    """Inverse of an h gate list, with Toffoli runs aligned to stages."""
    width = 1 + max(q for gate in forward for q in gate.qubits)
    inv = Circuit(width, [g.inverse() for g in reversed(forward)])
    return align_stages(inv).gates


def add_h_registers(c: Circuit) -> HLayout:
    n = H_WORD
    k1 = c.add_register("k1", 25)
    ct = (c.add_register("c_left", n), c.add_register("c_right", n))
    ctp = (c.add_register("cp_left", n), c.add_register("cp_right", n))
    out = (c.add_register("out_left", n), c.add_register("out_right", n))
    return HLayout(tuple(k1), tuple(map(tuple, ct)), tuple(map(tuple, ctp)), tuple(map(tuple, out)))


def build_h_circuit(did: str = "D2") -> Circuit:
    """h for one SIMON32/64 differential: (k1, C, C', 0) -> (k1, C*, C'*, Delta^15)."""
    c = Circuit(name=f"h circuit {did}")
    lay = add_h_registers(c)
    c.extend(h_gates(lay, did))
    return c


def build_h_circuit_d2() -> Circuit:
    return build_h_circuit("D2")


# -- comparators ----------------------------------------------------------------
def equality_oracle_gate(pattern: int, register: Sequence[int], target: int) -> Gate:
    """MCX flipping ``target`` iff ``register`` holds ``pattern`` (zero-controls folded)."""
    values = tuple((pattern >> j) & 1 for j in range(len(register)))
    return Gate("MCX", (*register, target), values)


def build_equality_oracle(pattern: int, width: int, explicit_not: bool = False) -> Circuit:
    """Comparator circuit on a fresh ``width``-qubit register plus one flag qubit.

    With ``explicit_not`` the zero-controls are realized by NOT conjugation;
    otherwise they are folded into the Toffoli decompositions at no gate cost.
    """
    if not 0 <= pattern < (1 << width):
        raise ValueError("pattern wider than register")
    c = Circuit(name=f"equality {pattern:#x}")
    reg = c.add_register("reg", width)
    flag = c.add_register("flag", 1)[0]
    c.add_ancillas(max(0, width - 2))
    if explicit_not:
        zeros = [q for j, q in enumerate(reg) if not (pattern >> j) & 1]
        for q in zeros:
            c.x(q)
        c.mcx(reg, flag)
        for q in zeros:
            c.x(q)
    else:
        c.append(equality_oracle_gate(pattern, reg, flag))
    return c
