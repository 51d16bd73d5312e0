"""Toffoli and multi-controlled-NOT lowerings.

Two Toffoli decompositions are provided, each as a gate list on local wires
``a=0, b=1`` (controls) and ``c=2`` (target):

* ``NC_TD7``: 7 T/T-dagger, 6 CNOT, 2 H, 1 S, every T gate in its own layer
  (T-depth 7, greedy depth 13).
* ``AMY_TD3``: 7 T/T-dagger, 7 CNOT, 2 H, 1 S with T-depth 3 and depth 10.
  The variant used here occupies all three wires in its first and last layer,
  so chains of Toffolis sharing a wire stack without overlap (a k-control
  ladder then has greedy depth exactly 20k-30 and T-depth 6k-9).

Zero-controls are folded into the decomposition: conjugating a control by X
only swaps T with T-dagger (and S with S-dagger) on the affected parities, so
negated controls cost no extra gates.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .circuit import Circuit, CircuitError, Gate

Local = tuple  # ("H", 2) or ("CNOT", control, target)

NC_TD7_SEQUENCE: tuple[Local, ...] = (
    ("T", 0), ("H", 2), ("CNOT", 1, 2), ("TDG", 2), ("CNOT", 0, 2), ("T", 2),
    ("CNOT", 1, 2), ("TDG", 2), ("CNOT", 0, 2), ("T", 2), ("H", 2),
    ("CNOT", 0, 1), ("TDG", 1), ("CNOT", 0, 1), ("TDG", 1), ("S", 1),
)

AMY_TD3_SEQUENCE: tuple[Local, ...] = (
    ("H", 2), ("CNOT", 0, 1), ("T", 0), ("TDG", 1), ("TDG", 2), ("CNOT", 2, 0),
    ("CNOT", 0, 1), ("S", 2), ("TDG", 0), ("TDG", 1), ("CNOT", 2, 1), ("CNOT", 1, 0),
    ("T", 0), ("T", 1), ("CNOT", 2, 0), ("CNOT", 1, 0), ("H", 2),
)


class ToffoliScheme(str, enum.Enum):
    NC_TD7 = "nc7"
    AMY_TD3 = "amy3"


class McxAccounting(str, enum.Enum):
    STRICT = "strict"
    PAPER_COMPAT = "paper"


@dataclass(frozen=True)
class LoweringScheme:
    toffoli_scheme: ToffoliScheme = ToffoliScheme.AMY_TD3
    mcx_accounting: McxAccounting = McxAccounting.STRICT

    @classmethod
    def parse(cls, toffoli: str = "amy3", mcx: str = "strict") -> "LoweringScheme":
        return cls(ToffoliScheme(toffoli), McxAccounting(mcx))

    @property
    def mode(self) -> str:
        return self.mcx_accounting.value


STRICT = LoweringScheme()
PAPER = LoweringScheme(mcx_accounting=McxAccounting.PAPER_COMPAT)

_FLIP = {"T": "TDG", "TDG": "T", "S": "SDG", "SDG": "S"}


def _local_sequence(scheme: ToffoliScheme) -> tuple[Local, ...]:
    return NC_TD7_SEQUENCE if scheme is ToffoliScheme.NC_TD7 else AMY_TD3_SEQUENCE


@lru_cache(maxsize=None)
def toffoli_to_clifford_t(scheme: ToffoliScheme | str = ToffoliScheme.AMY_TD3,
                          ctrl_values: tuple[int, int] = (1, 1)) -> tuple[Local, ...]:
    """Clifford+T sequence for a Toffoli with the given control values.

    Negated controls are handled by pushing the conjugating X gates through the
    sequence: X on a wire propagates along CNOT controls and turns each phase
    gate it passes into its inverse.
    """
    scheme = ToffoliScheme(scheme)
    base = _local_sequence(scheme)
    flipped = [v == 0 for v in ctrl_values] + [False]
    out = []
    for op in base:
        kind = op[0]
        if kind == "CNOT":
            c, t = op[1], op[2]
            if flipped[c]:
                flipped[t] = not flipped[t]
            out.append(op)
        elif kind == "H":
            if flipped[op[1]]:
                raise CircuitError("control negation cannot be pushed through H")
            out.append(op)
        else:
            out.append((_FLIP[kind], op[1]) if flipped[op[1]] else op)
    if flipped != [v == 0 for v in ctrl_values] + [False]:
        raise CircuitError("decomposition does not restore the control wires")
    return tuple(out)


def emit_toffoli(a: int, b: int, c: int, scheme: ToffoliScheme,
                 ctrl_values: tuple[int, int] | None = None, origin: str = "toffoli") -> list[Gate]:
    wires = (a, b, c)
    seq = toffoli_to_clifford_t(ToffoliScheme(scheme), tuple(ctrl_values or (1, 1)))
    gates = []
    for op in seq:
        if op[0] == "CNOT":
            gates.append(Gate("CNOT", (wires[op[1]], wires[op[2]]), origin=origin))
        else:
            gates.append(Gate(op[0], (wires[op[1]],), origin=origin))
    return gates


def mcx_to_toffoli(controls: Sequence[int], target: int, ancillas: Sequence[int],
                   ctrl_values: Sequence[int] | None = None) -> list[Gate]:
    """Compute/apply/uncompute ladder: 2k-3 Toffolis using k-2 ancillas."""
    k = len(controls)
    if k < 3:
        raise CircuitError("the ladder needs at least 3 controls")
    if len(ancillas) != k - 2:
        raise CircuitError(f"{k}-control ladder needs exactly {k - 2} ancillas, got {len(ancillas)}")
    used = set(controls) | {target}
    if used & set(ancillas) or len(set(ancillas)) != len(ancillas):
        raise CircuitError("ancillas overlap the gate or each other")
    vals = list(ctrl_values) if ctrl_values is not None else [1] * k
    compute = [Gate("TOF", (controls[0], controls[1], ancillas[0]), (vals[0], vals[1]))]
    for i in range(2, k - 1):
        compute.append(Gate("TOF", (controls[i], ancillas[i - 2], ancillas[i - 1]), (vals[i], 1)))
    apply = Gate("TOF", (controls[k - 1], ancillas[k - 3], target), (vals[k - 1], 1))
    return [*compute, apply, *reversed(compute)]


def mcx_toffoli_count(k: int) -> int:
    if k < 1:
        raise ValueError("k >= 1")
    return 0 if k == 1 else (1 if k == 2 else 2 * k - 3)


def lower_mcx(circuit: Circuit) -> Circuit:
    """Replace every MCX by NOT/CNOT/Toffoli gates using the circuit's ancilla pool."""
    out = circuit.copy()
    out.gates = list(_lower_mcx_gates(circuit.gates, circuit.ancillas))
    return out


def _lower_mcx_gates(gates: Iterable[Gate], pool: Sequence[int]) -> Iterable[Gate]:
    for g in gates:
        if g.kind != "MCX":
            yield g
            continue
        k = g.num_controls
        vals = g.control_values()
        if k == 1:
            yield Gate("CNOT", g.qubits)
            if vals[0] == 0:
                yield Gate("NOT", (g.target,))
        elif k == 2:
            yield Gate("TOF", g.qubits, vals)
        else:
            free = [q for q in pool if q not in g.qubits]
            if len(free) < k - 2:
                raise CircuitError(f"ancilla pool too small for a {k}-control MCX")
            yield from mcx_to_toffoli(g.controls, g.target, free[: k - 2], vals)


def lower_toffoli(circuit: Circuit, scheme: ToffoliScheme | str = ToffoliScheme.AMY_TD3) -> Circuit:
    """Replace every Toffoli (and controlled gate with zero-controls) by Clifford+T."""
    scheme = ToffoliScheme(scheme)
    out = circuit.copy()
    gates: list[Gate] = []
    for g in circuit.gates:
        if g.kind == "TOF":
            gates.extend(emit_toffoli(*g.qubits, scheme, g.control_values()))
        elif g.kind == "CNOT" and g.ctrl_values is not None:
            gates.extend([Gate("CNOT", g.qubits, origin=g.origin), Gate("NOT", (g.target,), origin=g.origin)])
        elif g.kind == "MCX":
            raise CircuitError("lower MCX gates first")
        else:
            gates.append(g)
    out.gates = gates
    return out


def lower_circuit(circuit: Circuit, scheme: LoweringScheme | ToffoliScheme | str = STRICT) -> Circuit:
    """MCX -> Toffoli ladder -> Clifford+T."""
    tof = scheme.toffoli_scheme if isinstance(scheme, LoweringScheme) else ToffoliScheme(scheme)
    return lower_toffoli(lower_mcx(circuit), tof)
