"""Initial qubit placement onto a linear trap array."""
from __future__ import annotations

from collections import defaultdict

from ..circuit import Circuit, asap_layering
from ..machine import Topology
from .state import Placement, RoutingError


def interaction_weights(circuit: Circuit) -> dict[tuple[int, int], float]:
    """Temporally decayed interaction graph: w(i, j) = sum of 1 / (1 + layer)."""
    layer_of = asap_layering(circuit).layer_of
    w: dict[tuple[int, int], float] = defaultdict(float)
    for g in circuit.gates:
        key = (min(g.qubits), max(g.qubits))
        w[key] += 1.0 / (1.0 + layer_of[g.program_index])
    return dict(w)


def sta_placement(circuit: Circuit, topology: Topology) -> Placement:
    """Greedy spatio-temporal placement.

    Edges are visited heaviest first (ties: lower qubit pair). Traps are
    filled left to right up to capacity - 1 ions. An edge with both ends
    unplaced goes to the current fill trap (spilling its second qubit into
    the next trap when only one slot is left); an edge with one end placed
    pulls the other end into the same trap when it has room.
    """
    usable = topology.capacity - 1
    if circuit.n_qubits > topology.n_traps * usable:
        raise RoutingError(
            f"{circuit.n_qubits} qubits do not fit {topology.n_traps} traps "
            f"with {usable} usable slots each")
    chains: list[list[int]] = [[] for _ in range(topology.n_traps)]
    where: dict[int, int] = {}
    fill = 0

    def fill_trap() -> int:
        nonlocal fill
        while len(chains[fill]) >= usable:
            fill += 1
        return fill

    def put(q: int, t: int) -> None:
        chains[t].append(q)
        where[q] = t

    weights = interaction_weights(circuit)
    for (i, j), _ in sorted(weights.items(), key=lambda kv: (-kv[1], kv[0])):
        if i in where and j in where:
            continue
        if i not in where and j not in where:
            t = fill_trap()
            put(i, t)
            put(j, t if len(chains[t]) < usable else fill_trap())
            continue
        placed, free = (i, j) if i in where else (j, i)
        t = where[placed]
        put(free, t if len(chains[t]) < usable else fill_trap())
    for q in range(circuit.n_qubits):
        if q not in where:
            put(q, fill_trap())
    return Placement(tuple(tuple(c) for c in chains))


def paired_placement(circuit: Circuit, topology: Topology) -> Placement:
    """Put the i-th gate of the first timestep into trap i."""
    layering = asap_layering(circuit)
    first = [circuit.gates[i] for i in layering.layers[0]] if layering.layers else []
    covered = sorted(q for g in first for q in g.qubits)
    if covered != list(range(circuit.n_qubits)):
        raise RoutingError("first timestep is not a perfect matching of the qubits")
    if len(first) > topology.n_traps:
        raise RoutingError(f"too few traps: {len(first)} pairs, {topology.n_traps} traps")
    if topology.capacity < 3:
        raise RoutingError("paired placement needs capacity >= 3 (two ions plus a free slot)")
    chains = [tuple(g.qubits) for g in first]
    chains += [()] * (topology.n_traps - len(chains))
    return Placement(tuple(chains))


PLACEMENTS = {"sta": sta_placement, "paired": paired_placement}
