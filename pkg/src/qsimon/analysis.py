"""Depth scheduling and resource summaries."""

from __future__ import annotations

from dataclasses import asdict, dataclass, fields, replace
from functools import lru_cache

import bisect

import numpy as np

from .circuit import PSEUDO, Circuit, CircuitError
from .decompose import (LoweringScheme, McxAccounting, STRICT, ToffoliScheme, emit_toffoli,
                        lower_mcx, lower_toffoli, toffoli_to_clifford_t)

TABLE_COLUMNS = ("not", "cnot", "toff_c", "h", "toff_h", "toff_s", "cliff", "t",
                 "t_depth", "full_depth", "qubits")


def _fence(last: list[int], qubits) -> None:
    top = max((last[q] for q in qubits), default=0)
    for q in qubits:
        last[q] = top


@dataclass(frozen=True)
class DepthLayering:
    """Greedy as-soon-as-possible layering.

    ``gate_layer[i]`` is the 1-based layer of gate i; zero-cost markers get 0
    and belong to no layer.
    """

    gate_layer: np.ndarray
    depth: int

    @property
    def layers(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.depth)]
        for i, layer in enumerate(self.gate_layer):
            if layer:
                out[layer - 1].append(i)
        return out

    def depth_of(self, circuit: Circuit, kinds: tuple[str, ...]) -> int:
        """Number of layers containing at least one gate of ``kinds``."""
        hit = {int(self.gate_layer[i]) for i, g in enumerate(circuit.gates) if g.kind in kinds}
        hit.discard(0)
        return len(hit)


def schedule_layers(circuit: Circuit, allow_mcx: bool = False) -> DepthLayering:
    """Place each gate one layer after the latest gate sharing any of its qubits."""
    last = [0] * circuit.width
    layer = np.zeros(len(circuit.gates), dtype=np.int64)
    depth = 0
    for i, g in enumerate(circuit.gates):
        if g.kind == "MARK":
            continue
        if g.kind == "BARRIER":
            _fence(last, g.qubits)
            continue
        if g.kind == "MCX" and not allow_mcx:
            raise CircuitError("lower MCX gates before scheduling")
        lvl = 1 + max(last[q] for q in g.qubits)
        for q in g.qubits:
            last[q] = lvl
        layer[i] = lvl
        depth = max(depth, lvl)
    return DepthLayering(layer, depth)


@lru_cache(maxsize=None)
def _block_shape(scheme: ToffoliScheme, ctrl_values: tuple[int, int]):
    """Local layer of each gate of a decomposed Toffoli plus first/last layer per wire."""
    seq = toffoli_to_clifford_t(scheme, ctrl_values)
    loc = [0, 0, 0]
    first = [0, 0, 0]
    layers = []
    for op in seq:
        qs = op[1:] if op[0] == "CNOT" else (op[1],)
        lvl = 1 + max(loc[q] for q in qs)
        for q in qs:
            loc[q] = lvl
            first[q] = first[q] or lvl
        layers.append(lvl)
    return tuple(layers), tuple(first), tuple(loc)


@dataclass(frozen=True)
class StageSchedule:
    """Layering of a lowered circuit plus its Toffoli stage starts."""

    lowered: Circuit
    layering: DepthLayering
    stage_starts: tuple[int, ...]

    @property
    def toffoli_depth(self) -> int:
        return len(self.stage_starts)


def schedule_stages(tof_level: Circuit, scheme: ToffoliScheme | str = ToffoliScheme.AMY_TD3) -> StageSchedule:
    """Stage-packed layering of the Clifford+T lowering of a Toffoli-level circuit.

    Non-Toffoli gates are placed as soon as possible.  Each Toffoli is lowered
    to a rigid block and, in program order, joins the earliest existing stage
    whose start is not before the block's ready time; if there is none it opens
    a new stage.  Blocks of one stage start together, so their T layers
    coincide and the T-depth is the per-Toffoli T-depth times the number of
    stages.  Greedy ASAP instead lets a block's early wires run ahead, which
    splits a stage's T layers apart.
    """
    scheme = ToffoliScheme(scheme)
    last = [0] * tof_level.width
    gates = []
    layer: list[int] = []
    starts: list[int] = []
    depth = 0
    for g in tof_level.gates:
        if g.kind == "MCX":
            raise CircuitError("lower MCX gates before scheduling")
        if g.kind in PSEUDO:
            if g.kind == "BARRIER":
                _fence(last, g.qubits)
            gates.append(g)
            layer.append(0)
            continue
        if g.kind == "TOF":
            cv = g.control_values()
            block = emit_toffoli(*g.qubits, scheme, cv)
            local, first, end = _block_shape(scheme, cv)
            ready = max(last[q] - first[i] + 1 for i, q in enumerate(g.qubits))
            k = bisect.bisect_left(starts, ready)
            if k == len(starts):
                starts.append(ready)
            start = starts[k]
            gates.extend(block)
            layer.extend(start + lvl for lvl in local)
            for i, q in enumerate(g.qubits):
                last[q] = start + end[i]
            depth = max(depth, start + max(end))
            continue
        sub = lower_toffoli(Circuit(tof_level.width, [g]), scheme).gates
        for h in sub:
            lvl = 1 + max(last[q] for q in h.qubits)
            for q in h.qubits:
                last[q] = lvl
            gates.append(h)
            layer.append(lvl)
            depth = max(depth, lvl)
    lowered = tof_level.copy()
    lowered.gates = gates
    return StageSchedule(lowered, DepthLayering(np.asarray(layer, dtype=np.int64), depth), tuple(starts))


def check_layering(circuit: Circuit, layering: DepthLayering) -> None:
    """Raise unless every layer acts on disjoint qubits and wire order is kept."""
    seen: dict[tuple[int, int], int] = {}
    last = [0] * circuit.width
    for i, g in enumerate(circuit.gates):
        lvl = int(layering.gate_layer[i])
        if g.kind in PSEUDO:
            continue
        for q in g.qubits:
            if lvl <= last[q]:
                raise CircuitError(f"gate {i} breaks the order on qubit {q}")
            if (lvl, q) in seen:
                raise CircuitError(f"qubit {q} used twice in layer {lvl}")
            seen[(lvl, q)] = i
            last[q] = lvl


def _gate_deps(gates) -> list[set[int]]:
    """Predecessors that a gate may not be moved across.

    XORs into one wire commute, as do reads of one wire; a write and a read
    of the same wire do not.  Gates other than NOT/CNOT/TOF conflict with
    every gate sharing a qubit.
    """
    acc = []
    for g in gates:
        if g.kind in ("NOT", "CNOT", "TOF"):
            acc.append((frozenset(g.qubits[:-1]), frozenset(g.qubits[-1:]), frozenset()))
        else:
            acc.append((frozenset(), frozenset(), frozenset(g.qubits)))
    preds: list[set[int]] = []
    for j, (rj, xj, hj) in enumerate(acc):
        allj = rj | xj | hj
        preds.append({i for i, (ri, xi, hi) in enumerate(acc[:j])
                      if xi & rj or ri & xj or hi & allj or hj & (ri | xi | hi)})
    return preds


def stage_emission_order(circuit: Circuit, scheme: ToffoliScheme | str = ToffoliScheme.AMY_TD3) -> Circuit:
    """Reorder commuting gates so that the stage-packed schedule uses few Toffoli stages.

    List scheduling at the Toffoli level: all ready non-Toffoli gates are
    emitted, then a maximal set of wire-disjoint ready Toffolis, chosen by
    longest remaining Toffoli path, then most direct successors, then
    program order.  Within one such set the Toffoli that becomes ready last
    is emitted first, so that the others can join its stage.
    """
    scheme = ToffoliScheme(scheme)
    gates = circuit.gates
    if any(g.kind in ("MCX",) + PSEUDO for g in gates):
        raise CircuitError("stage ordering expects a Toffoli-level circuit without MCX or markers")
    n = len(gates)
    preds = _gate_deps(gates)
    succ: list[list[int]] = [[] for _ in range(n)]
    for j, ps in enumerate(preds):
        for i in ps:
            succ[i].append(j)
    is_tof = [g.kind == "TOF" for g in gates]
    tail = [0] * n
    for i in reversed(range(n)):
        tail[i] = is_tof[i] + max((tail[j] for j in succ[i]), default=0)
    _, first, end = _block_shape(scheme, (1, 1))
    waiting = [len(p) for p in preds]
    free = [i for i in range(n) if not waiting[i]]
    last = [0] * circuit.width
    starts: list[int] = []
    order: list[int] = []

    def release(i: int) -> None:
        for j in succ[i]:
            waiting[j] -= 1
            if not waiting[j]:
                free.append(j)

    def ready(i: int) -> int:
        return max(last[q] - first[k] + 1 for k, q in enumerate(gates[i].qubits))

    while free:
        while any(not is_tof[i] for i in free):
            for i in sorted(i for i in free if not is_tof[i]):
                free.remove(i)
                lvl = 1 + max(last[q] for q in gates[i].qubits)
                for q in gates[i].qubits:
                    last[q] = lvl
                order.append(i)
                release(i)
        used: set[int] = set()
        pick = []
        for i in sorted(free, key=lambda i: (-tail[i], -len(succ[i]), i)):
            if used.isdisjoint(gates[i].qubits):
                used.update(gates[i].qubits)
                pick.append(i)
        for i in sorted(pick, key=lambda i: (-ready(i), i)):
            free.remove(i)
            k = bisect.bisect_left(starts, ready(i))
            if k == len(starts):
                starts.append(ready(i))
            for kk, q in enumerate(gates[i].qubits):
                last[q] = starts[k] + end[kk]
            order.append(i)
        for i in pick:
            release(i)
    out = circuit.copy()
    out.gates = [gates[i] for i in order]
    return out


def align_stages(circuit: Circuit, scheme: ToffoliScheme | str = ToffoliScheme.AMY_TD3) -> Circuit:
    """Within each run of consecutive Toffolis, emit the latest-ready one first.

    Dependencies inside a run are respected; the rest of the order is kept.
    Used on inverses of stage-ordered circuits, whose reversed runs would
    otherwise open a new stage for every early-ready Toffoli.
    """
    scheme = ToffoliScheme(scheme)
    _, first, end = _block_shape(scheme, (1, 1))
    gates = circuit.gates
    last = [0] * circuit.width
    starts: list[int] = []
    out: list = []

    def ready(g) -> int:
        return max(last[q] - first[k] + 1 for k, q in enumerate(g.qubits))

    i = 0
    while i < len(gates):
        g = gates[i]
        if g.kind in PSEUDO:
            if g.kind == "BARRIER":
                _fence(last, g.qubits)
            out.append(g)
            i += 1
            continue
        if g.kind != "TOF":
            lvl = 1 + max(last[q] for q in g.qubits)
            for q in g.qubits:
                last[q] = lvl
            out.append(g)
            i += 1
            continue
        j = i
        while j < len(gates) and gates[j].kind == "TOF":
            j += 1
        run = gates[i:j]
        preds = _gate_deps(run)
        placed: set[int] = set()
        while len(placed) < len(run):
            avail = [k for k in range(len(run)) if k not in placed and preds[k] <= placed]
            k = max(avail, key=lambda k: (ready(run[k]), -k))
            r = ready(run[k])
            pos = bisect.bisect_left(starts, r)
            if pos == len(starts):
                starts.append(r)
            for kk, q in enumerate(run[k].qubits):
                last[q] = starts[pos] + end[kk]
            out.append(run[k])
            placed.add(k)
        i = j
    res = circuit.copy()
    res.gates = out
    return res


@dataclass(frozen=True)
class ResourceSummary:
    """Gate counts and depths in the column layout of the cost tables.

    ``not_``/``cnot``/``h``/``s`` count native gates; ``toff_c``/``toff_h``/
    ``toff_s`` count gates produced by Toffoli decomposition; ``t`` counts all
    T and T-dagger gates.
    """

    not_: int = 0
    cnot: int = 0
    toff_c: int = 0
    h: int = 0
    toff_h: int = 0
    toff_s: int = 0
    t: int = 0
    toffoli_depth: int = 0
    t_depth: int = 0
    full_depth: int = 0
    qubits: int = 0
    s: int = 0
    mode: str = "strict"

    @property
    def cliff(self) -> int:
        return self.not_ + self.cnot + self.toff_c + self.h + self.toff_h + self.toff_s + self.s

    @property
    def toffoli(self) -> int:
        """Toffoli gate count (one S per decomposed Toffoli)."""
        return self.toff_s

    def row(self) -> dict[str, int]:
        """The eleven table columns, in table order."""
        d = {"not": self.not_, "cnot": self.cnot, "toff_c": self.toff_c, "h": self.h,
             "toff_h": self.toff_h, "toff_s": self.toff_s, "cliff": self.cliff, "t": self.t,
             "t_depth": self.t_depth, "full_depth": self.full_depth, "qubits": self.qubits}
        return d

    def to_dict(self) -> dict:
        d = asdict(self)
        d["cliff"] = self.cliff
        return d

    def __add__(self, other: "ResourceSummary") -> "ResourceSummary":
        """Sequential composition of counts and depths; width is the maximum."""
        vals = {f.name: getattr(self, f.name) + getattr(other, f.name)
                for f in fields(self) if f.name not in ("qubits", "mode")}
        return ResourceSummary(**vals, qubits=max(self.qubits, other.qubits), mode=self.mode)

    def scaled(self, counts: int = 1, depths: int = 1) -> "ResourceSummary":
        return replace(
            self, not_=self.not_ * counts, cnot=self.cnot * counts, toff_c=self.toff_c * counts,
            h=self.h * counts, toff_h=self.toff_h * counts, toff_s=self.toff_s * counts,
            t=self.t * counts, s=self.s * counts, toffoli_depth=self.toffoli_depth * depths,
            t_depth=self.t_depth * depths, full_depth=self.full_depth * depths)


@lru_cache(maxsize=None)
def toffoli_block_profile(scheme: ToffoliScheme) -> dict[str, int]:
    """Gate counts and depths of a single decomposed Toffoli."""
    c = Circuit(3)
    c.extend(emit_toffoli(0, 1, 2, scheme))
    lay = schedule_layers(c)
    return {"cnot": c.count("CNOT"), "h": c.count("H"), "s": c.count("S") + c.count("SDG"),
            "t": c.count("T") + c.count("TDG"), "t_depth": lay.depth_of(c, ("T", "TDG")),
            "depth": lay.depth}


def count_gates(circuit: Circuit) -> dict[str, int]:
    out = dict.fromkeys(("not", "cnot", "toff_c", "h", "toff_h", "toff_s", "s", "t", "tof", "mcx"), 0)
    for g in circuit.gates:
        derived = g.origin == "toffoli"
        k = g.kind
        if k == "NOT":
            out["not"] += 1
        elif k == "CNOT":
            out["toff_c" if derived else "cnot"] += 1
        elif k == "H":
            out["toff_h" if derived else "h"] += 1
        elif k in ("S", "SDG"):
            out["toff_s" if derived else "s"] += 1
        elif k in ("T", "TDG"):
            out["t"] += 1
        elif k == "TOF":
            out["tof"] += 1
        elif k == "MCX":
            out["mcx"] += 1
    return out


def mcx_sizes(circuit: Circuit) -> list[int]:
    return [g.num_controls for g in circuit.gates if g.kind == "MCX"]


def paper_compat_extra_toffolis(sizes: list[int]) -> int:
    """Extra Toffolis of the combined 2(sum k)-3 expression over per-gate 2k-3."""
    big = [k for k in sizes if k >= 2]
    if len(big) < 2:
        return 0
    return (2 * sum(big) - 3) - sum(2 * k - 3 for k in big)


def summarize_resources(circuit: Circuit, scheme: LoweringScheme = STRICT,
                        scheduler: str = "stage") -> ResourceSummary:
    """Lower a copy of ``circuit`` and report counts and depths.

    ``scheduler`` is ``"stage"`` (stage-packed layering, the default) or
    ``"asap"`` (plain greedy layering of the lowered gate list, with the
    Toffoli-depth taken from greedy layering of the Toffoli-level circuit).

    In PAPER_COMPAT mode the MCX gates of the circuit are charged as one
    combined ladder of 2(sum k)-3 Toffolis: the surplus over the per-gate
    ladders is added to the Toffoli-derived counts and to the Toffoli and T
    depths (each extra Toffoli is one more stage).  Full-depth always comes from
    the actual schedule.
    """
    tof_level = lower_mcx(circuit)
    if scheduler == "stage":
        sched = schedule_stages(tof_level, scheme.toffoli_scheme)
        lowered, lay, toffoli_depth = sched.lowered, sched.layering, sched.toffoli_depth
    elif scheduler == "asap":
        toffoli_depth = schedule_layers(tof_level).depth_of(tof_level, ("TOF",))
        lowered = lower_toffoli(tof_level, scheme.toffoli_scheme)
        lay = schedule_layers(lowered)
    else:
        raise ValueError(f"unknown scheduler {scheduler!r}")
    counts = count_gates(lowered)
    summary = ResourceSummary(
        not_=counts["not"], cnot=counts["cnot"], toff_c=counts["toff_c"], h=counts["h"],
        toff_h=counts["toff_h"], toff_s=counts["toff_s"], t=counts["t"], s=counts["s"],
        toffoli_depth=toffoli_depth, t_depth=lay.depth_of(lowered, ("T", "TDG")),
        full_depth=lay.depth, qubits=circuit.width, mode=scheme.mode)
    if scheme.mcx_accounting is McxAccounting.PAPER_COMPAT:
        extra = paper_compat_extra_toffolis(mcx_sizes(circuit))
        prof = toffoli_block_profile(scheme.toffoli_scheme)
        summary = replace(
            summary, toff_c=summary.toff_c + extra * prof["cnot"],
            toff_h=summary.toff_h + extra * prof["h"], toff_s=summary.toff_s + extra * prof["s"],
            t=summary.t + extra * prof["t"], toffoli_depth=summary.toffoli_depth + extra,
            t_depth=summary.t_depth + extra * prof["t_depth"])
    return summary
