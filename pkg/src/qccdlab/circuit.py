"""
Two-qubit circuit IR.

Contains:
    - Gate / Circuit: immutable program-ordered gate list
    - asap_layering: earliest-timestep layering of the gate list
    - partner_change_counts / stats: per-qubit movement counts and the
      benchmark statistics (depth, gates per timestep, movements per timestep)
    - dumps / loads: the plain-text circuit format

Single-qubit gates are not represented; they neither move ions nor change
the layer structure the cost model is built on.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence


@dataclass(frozen=True)
class Gate:
    qubit_a: int
    qubit_b: int
    program_index: int
    label: str = "g"

    @property
    def qubits(self) -> tuple[int, int]:
        return (self.qubit_a, self.qubit_b)

    def partner(self, q: int) -> int:
        return self.qubit_b if q == self.qubit_a else self.qubit_a


@dataclass(frozen=True)
class Circuit:
    n_qubits: int
    gates: tuple[Gate, ...]
    name: str = ""

    @classmethod
    def from_pairs(cls, n_qubits: int, pairs: Iterable[Sequence[int]], name: str = "",
                   label: str = "g") -> "Circuit":
        gates = tuple(Gate(int(a), int(b), i, label) for i, (a, b) in enumerate(pairs))
        return cls(n_qubits, gates, name)

    def pairs(self) -> list[tuple[int, int]]:
        return [g.qubits for g in self.gates]

    def __len__(self) -> int:
        return len(self.gates)


@dataclass(frozen=True)
class Layering:
    layers: tuple[tuple[int, ...], ...]
    layer_of: tuple[int, ...] = field(repr=False)

    @property
    def depth(self) -> int:
        return len(self.layers)


@dataclass(frozen=True)
class CircuitStats:
    n_qubits: int
    depth: int
    two_qubit_gate_count: int
    avg_gates_per_ts: float
    per_qubit_movements: tuple[int, ...]
    avg_ion_mov_per_ts: float
    movement_percentage: float

    @property
    def total_movements(self) -> int:
        return sum(self.per_qubit_movements)


def validate(circuit: Circuit) -> list[str]:
    """Return every invariant violation of ``circuit`` (empty list if valid)."""
    problems = []
    if circuit.n_qubits < 1:
        problems.append(f"non-positive qubit count {circuit.n_qubits}")
    for pos, g in enumerate(circuit.gates):
        if g.program_index != pos:
            problems.append(f"gate {pos}: program index {g.program_index} is not dense")
        if g.qubit_a == g.qubit_b:
            problems.append(f"gate {pos}: self-gate on qubit {g.qubit_a}")
        for q in g.qubits:
            if not 0 <= q < circuit.n_qubits:
                problems.append(f"gate {pos}: qubit out of range ({q} >= {circuit.n_qubits})")
    return problems


def asap_layering(circuit: Circuit) -> Layering:
    ready = [0] * circuit.n_qubits
    layer_of = []
    layers: list[list[int]] = []
    for g in circuit.gates:
        k = max(ready[g.qubit_a], ready[g.qubit_b])
        ready[g.qubit_a] = ready[g.qubit_b] = k + 1
        layer_of.append(k)
        if k == len(layers):
            layers.append([])
        layers[k].append(g.program_index)
    return Layering(tuple(tuple(l) for l in layers), tuple(layer_of))


def partner_change_counts(circuit: Circuit) -> list[int]:
    """Per-qubit movement count: partner changes between consecutive gates.

    A qubit's first gate is free; every later gate whose partner differs from
    the partner of the qubit's previous gate counts one movement.
    """
    last = [None] * circuit.n_qubits
    counts = [0] * circuit.n_qubits
    for g in circuit.gates:
        for q in g.qubits:
            p = g.partner(q)
            if last[q] is not None and last[q] != p:
                counts[q] += 1
            last[q] = p
    return counts


def _movement_percentage(circuit: Circuit, layering: Layering) -> float:
    # mean over layers (that have at least one qubit with a previous gate) of
    # the fraction of such qubits whose partner changed
    last = [None] * circuit.n_qubits
    fractions = []
    for layer in layering.layers:
        seen = changed = 0
        for gi in layer:
            g = circuit.gates[gi]
            for q in g.qubits:
                p = g.partner(q)
                if last[q] is not None:
                    seen += 1
                    changed += last[q] != p
                last[q] = p
        if seen:
            fractions.append(changed / seen)
    if not fractions:
        return 0.0
    return 100.0 * sum(fractions) / len(fractions)


def stats(circuit: Circuit) -> CircuitStats:
    layering = asap_layering(circuit)
    depth = layering.depth
    n_gates = len(circuit.gates)
    moves = partner_change_counts(circuit)
    return CircuitStats(
        n_qubits=circuit.n_qubits,
        depth=depth,
        two_qubit_gate_count=n_gates,
        avg_gates_per_ts=n_gates / depth if depth else 0.0,
        per_qubit_movements=tuple(moves),
        avg_ion_mov_per_ts=sum(moves) / depth if depth else 0.0,
        movement_percentage=_movement_percentage(circuit, layering),
    )


# -- text format ------------------------------------------------------------
#
#   # comment lines and blank lines are ignored
#   qubits N
#   g A B          (one line per two-qubit gate, program order; the leading
#                   token is the gate label, any identifier without spaces)

def dumps(circuit: Circuit) -> str:
    lines = [f"qubits {circuit.n_qubits}"]
    lines += [f"{g.label} {g.qubit_a} {g.qubit_b}" for g in circuit.gates]
    return "\n".join(lines) + "\n"


def loads(text: str, name: str = "") -> Circuit:
    n_qubits = None
    gates = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        if n_qubits is None:
            if tok[0] != "qubits" or len(tok) != 2:
                raise ValueError(f"line {lineno}: expected header 'qubits N', got {raw!r}")
            n_qubits = int(tok[1])
            continue
        if len(tok) != 3:
            raise ValueError(f"line {lineno}: expected 'label a b', got {raw!r}")
        gates.append(Gate(int(tok[1]), int(tok[2]), len(gates), tok[0]))
    if n_qubits is None:
        raise ValueError("missing 'qubits N' header")
    circuit = Circuit(n_qubits, tuple(gates), name)
    problems = validate(circuit)
    if problems:
        raise ValueError("invalid circuit: " + "; ".join(problems))
    return circuit
