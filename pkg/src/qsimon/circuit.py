"""Gate-level circuit representation.

A circuit is an ordered list of gates over integer-indexed qubits, plus named
registers and an ancilla pool.  Reversible gates (NOT, CNOT, TOF, MCX) carry
optional control values so that zero-controls need no explicit NOT
conjugation.  ``MARK`` is a zero-cost pseudo-gate standing for state
preparation steps whose cost is deliberately not modeled.  ``BARRIER`` is a
zero-cost scheduling fence: gates after it on its qubits start no earlier
than the latest gate before it on any of them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

# kind -> fixed arity (None = variable)
ARITY = {
    "NOT": 1, "CNOT": 2, "TOF": 3, "MCX": None,
    "H": 1, "S": 1, "SDG": 1, "T": 1, "TDG": 1, "Z": 1,
    "MARK": None, "BARRIER": None,
}
CONTROLLED = ("CNOT", "TOF", "MCX")
PSEUDO = ("MARK", "BARRIER")
CLASSICAL = ("NOT", "CNOT", "TOF", "MCX", *PSEUDO)
CLIFFORD_T = ("NOT", "CNOT", "H", "S", "SDG", "T", "TDG", "Z", *PSEUDO)
_INVERSE_KIND = {"S": "SDG", "SDG": "S", "T": "TDG", "TDG": "T"}


class CircuitError(ValueError):
    """Raised for malformed gates, registers or compositions."""


@dataclass(frozen=True, slots=True)
class Gate:
    """One gate.  For controlled kinds the last qubit is the target."""

    kind: str
    qubits: tuple[int, ...]
    ctrl_values: tuple[int, ...] | None = None
    origin: str = ""
    label: str = ""

    def __post_init__(self) -> None:
        if self.kind not in ARITY:
            raise CircuitError(f"unknown gate kind {self.kind!r}")
        arity = ARITY[self.kind]
        if arity is not None and len(self.qubits) != arity:
            raise CircuitError(f"{self.kind} takes {arity} qubits, got {len(self.qubits)}")
        if self.kind == "MCX" and len(self.qubits) < 2:
            raise CircuitError("MCX needs at least one control")
        if len(set(self.qubits)) != len(self.qubits):
            raise CircuitError(f"duplicate qubit in {self.kind} {self.qubits}")
        if any(q < 0 for q in self.qubits):
            raise CircuitError("negative qubit index")
        if self.ctrl_values is not None:
            if self.kind not in CONTROLLED:
                raise CircuitError(f"{self.kind} has no controls")
            if len(self.ctrl_values) != len(self.qubits) - 1:
                raise CircuitError("one control value per control qubit required")
            if any(v not in (0, 1) for v in self.ctrl_values):
                raise CircuitError("control values must be 0 or 1")
            if all(self.ctrl_values):
                object.__setattr__(self, "ctrl_values", None)

    @property
    def controls(self) -> tuple[int, ...]:
        return self.qubits[:-1] if self.kind in CONTROLLED else ()

    @property
    def target(self) -> int:
        return self.qubits[-1]

    @property
    def num_controls(self) -> int:
        return len(self.qubits) - 1 if self.kind in CONTROLLED else 0

    def control_values(self) -> tuple[int, ...]:
        return self.ctrl_values if self.ctrl_values is not None else (1,) * self.num_controls

    @property
    def is_marker(self) -> bool:
        return self.kind in PSEUDO

    def inverse(self) -> "Gate":
        if self.kind in _INVERSE_KIND:
            return Gate(_INVERSE_KIND[self.kind], self.qubits, origin=self.origin)
        if self.kind == "MARK":
            label = self.label[:-4] if self.label.endswith("_inv") else self.label + "_inv"
            return Gate("MARK", self.qubits, label=label)
        return self

    def remap(self, mapping: Mapping[int, int] | Sequence[int]) -> "Gate":
        return Gate(self.kind, tuple(mapping[q] for q in self.qubits), self.ctrl_values,
                    self.origin, self.label)

    def to_text(self) -> str:
        name = {"TOF": "TOF"}.get(self.kind, self.kind)
        parts = [name]
        if self.kind == "MARK":
            parts.append(self.label or "-")
        values = self.control_values()
        for i, q in enumerate(self.qubits):
            neg = i < len(values) and values[i] == 0
            parts.append(("~" if neg else "") + str(q))
        if self.origin:
            parts.append("@" + self.origin)
        return " ".join(parts)


@dataclass
class Circuit:
    """Ordered gate list with registers and an ancilla pool."""

    width: int = 0
    gates: list[Gate] = field(default_factory=list)
    registers: dict[str, tuple[int, ...]] = field(default_factory=dict)
    ancillas: list[int] = field(default_factory=list)
    name: str = ""

    # -- allocation -------------------------------------------------------
    def add_register(self, name: str, size: int) -> tuple[int, ...]:
        if name in self.registers:
            raise CircuitError(f"register {name!r} already exists")
        qubits = tuple(range(self.width, self.width + size))
        self.width += size
        self.registers[name] = qubits
        return qubits

    def add_ancillas(self, count: int, name: str = "anc") -> list[int]:
        """Grow the ancilla pool to at least ``count`` qubits."""
        missing = count - len(self.ancillas)
        if missing > 0:
            base = name
            suffix = 0
            while base in self.registers:
                suffix += 1
                base = f"{name}{suffix}"
            self.ancillas.extend(self.add_register(base, missing))
        return self.ancillas[:count]

    def register(self, name: str) -> tuple[int, ...]:
        try:
            return self.registers[name]
        except KeyError:
            raise CircuitError(f"no register {name!r}") from None

    # -- construction -----------------------------------------------------
    def append(self, gate: Gate) -> "Circuit":
        if gate.qubits and max(gate.qubits) >= self.width:
            raise CircuitError(f"{gate.kind} on qubit {max(gate.qubits)} exceeds width {self.width}")
        self.gates.append(gate)
        return self

    def extend(self, gates: Iterable[Gate]) -> "Circuit":
        for g in gates:
            self.append(g)
        return self

    def x(self, q: int) -> "Circuit":
        return self.append(Gate("NOT", (q,)))

    def cx(self, c: int, t: int, value: int = 1) -> "Circuit":
        return self.append(Gate("CNOT", (c, t), None if value else (0,)))

    def ccx(self, a: int, b: int, t: int, values: tuple[int, int] | None = None) -> "Circuit":
        return self.append(Gate("TOF", (a, b, t), values))

    def mcx(self, controls: Sequence[int], target: int,
            values: Sequence[int] | None = None) -> "Circuit":
        vals = None if values is None else tuple(values)
        return self.append(Gate("MCX", (*controls, target), vals))

    def h(self, q: int) -> "Circuit":
        return self.append(Gate("H", (q,)))

    def mark(self, label: str, qubits: Sequence[int]) -> "Circuit":
        return self.append(Gate("MARK", tuple(qubits), label=label))

    def barrier(self, qubits: Sequence[int] | None = None) -> "Circuit":
        qs = tuple(range(self.width)) if qubits is None else tuple(qubits)
        return self.append(Gate("BARRIER", qs))

    # -- transformations --------------------------------------------------
    def copy(self) -> "Circuit":
        return Circuit(self.width, list(self.gates), dict(self.registers), list(self.ancillas), self.name)

    def inverse(self) -> "Circuit":
        out = self.copy()
        out.gates = [g.inverse() for g in reversed(self.gates)]
        return out

    def count(self, kind: str) -> int:
        return sum(1 for g in self.gates if g.kind == kind)

    def __len__(self) -> int:
        return len(self.gates)

    # -- serialization ----------------------------------------------------
    def to_text(self) -> str:
        lines = [f"WIDTH {self.width}"]
        if self.name:
            lines.append(f"NAME {self.name}")
        for name, qs in self.registers.items():
            lines.append("REG " + name + " " + " ".join(map(str, qs)))
        if self.ancillas:
            lines.append("ANCILLA " + " ".join(map(str, self.ancillas)))
        lines.extend(g.to_text() for g in self.gates)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Circuit":
        circ = cls()
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            head, *rest = line.split()
            try:
                if head == "WIDTH":
                    circ.width = int(rest[0])
                elif head == "NAME":
                    circ.name = " ".join(rest)
                elif head == "REG":
                    circ.registers[rest[0]] = tuple(int(v) for v in rest[1:])
                elif head == "ANCILLA":
                    circ.ancillas = [int(v) for v in rest]
                else:
                    circ.append(_parse_gate(head, rest))
            except (IndexError, ValueError) as exc:
                raise CircuitError(f"line {lineno}: {exc}") from exc
        return circ

    def to_qasm(self) -> str:
        """OpenQASM 2.0 text; only Clifford+T and NOT/CNOT/TOF gates are exportable."""
        names = {"NOT": "x", "CNOT": "cx", "TOF": "ccx", "H": "h", "S": "s", "SDG": "sdg",
                 "T": "t", "TDG": "tdg", "Z": "z"}
        lines = ["OPENQASM 2.0;", 'include "qelib1.inc";', f"qreg q[{self.width}];"]
        for g in self.gates:
            if g.kind == "MARK":
                lines.append(f"// {g.label}")
                continue
            if g.kind == "BARRIER":
                lines.append("barrier " + ",".join(f"q[{q}]" for q in g.qubits) + ";")
                continue
            if g.kind == "MCX":
                raise CircuitError("lower MCX gates before QASM export")
            negated = [q for q, v in zip(g.controls, g.control_values()) if v == 0]
            lines.extend(f"x q[{q}];" for q in negated)
            args = ",".join(f"q[{q}]" for q in g.qubits)
            lines.append(f"{names[g.kind]} {args};")
            lines.extend(f"x q[{q}];" for q in negated)
        return "\n".join(lines) + "\n"


def _parse_gate(head: str, rest: list[str]) -> Gate:
    origin = ""
    if rest and rest[-1].startswith("@"):
        origin = rest.pop()[1:]
    label = ""
    if head == "MARK":
        label = rest.pop(0)
        label = "" if label == "-" else label
    qubits, values = [], []
    for tok in rest:
        values.append(0 if tok.startswith("~") else 1)
        qubits.append(int(tok.lstrip("~")))
    ctrl = tuple(values[:-1]) if head in CONTROLLED else None
    return Gate(head, tuple(qubits), ctrl, origin, label)


def compose(a: Circuit, b: Circuit, qubit_map: Mapping[int, int] | Sequence[int] | None = None,
            prefix: str = "") -> Circuit:
    """Return ``a`` followed by ``b`` relabeled through ``qubit_map``.

    ``qubit_map`` sends every qubit of ``b`` to a qubit of the result; it must be
    injective.  The result widens if the map points past ``a.width``.  Registers
    of ``b`` are carried over under ``prefix + name`` unless that name exists.
    """
    if qubit_map is None:
        qubit_map = list(range(b.width))
    if isinstance(qubit_map, Mapping):
        mapping = dict(qubit_map)
        missing = [q for q in range(b.width) if q not in mapping]
        if missing:
            raise CircuitError(f"qubit map misses qubits {missing[:5]}")
    else:
        if len(qubit_map) < b.width:
            raise CircuitError("qubit map shorter than circuit width")
        mapping = {q: int(qubit_map[q]) for q in range(b.width)}
    targets = list(mapping.values())
    if len(set(targets)) != len(targets):
        raise CircuitError("qubit map is not injective")
    out = a.copy()
    out.width = max(a.width, max(targets, default=-1) + 1)
    for name, qs in b.registers.items():
        new = prefix + name
        if new not in out.registers:
            out.registers[new] = tuple(mapping[q] for q in qs)
    for q in b.ancillas:
        if mapping[q] not in out.ancillas:
            out.ancillas.append(mapping[q])
    out.gates.extend(g.remap(mapping) for g in b.gates)
    return out
