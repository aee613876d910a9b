"""Ion chains, placements and single-ion relocation planning."""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from ..machine import Topology


class RoutingError(RuntimeError):
    pass


class CapacityDeadlock(RoutingError):
    """Bubble displacement found no free slot to bring along the path."""


class Op(NamedTuple):
    """Untimed primitive; the router's timeline assigns start times."""
    kind: str                 # gate | swap | split | hop | merge
    qubits: tuple[int, ...]
    resource: int             # trap id, or segment id for hops
    gate_index: int = -1


@dataclass(frozen=True)
class Placement:
    """Initial ion chains, one tuple per trap (left edge first)."""
    chains: tuple[tuple[int, ...], ...]

    def location(self, q: int) -> tuple[int, int]:
        for t, chain in enumerate(self.chains):
            if q in chain:
                return t, chain.index(q)
        raise KeyError(q)

    def as_dict(self) -> dict[int, tuple[int, int]]:
        return {q: (t, i) for t, chain in enumerate(self.chains) for i, q in enumerate(chain)}

    def check(self, topology: Topology, n_qubits: int | None = None,
              reserve_free_slot: bool = True) -> list[str]:
        problems = []
        if len(self.chains) != topology.n_traps:
            problems.append(f"placement has {len(self.chains)} traps, topology {topology.n_traps}")
        limit = topology.capacity - 1 if reserve_free_slot else topology.capacity
        seen = set()
        for t, chain in enumerate(self.chains):
            if len(chain) > limit:
                problems.append(f"trap {t} holds {len(chain)} ions, limit {limit}")
            for q in chain:
                if q in seen:
                    problems.append(f"qubit {q} placed twice")
                seen.add(q)
        if n_qubits is not None and seen != set(range(n_qubits)):
            problems.append(f"placement covers {sorted(seen)}, expected 0..{n_qubits - 1}")
        return problems


class MachineState:
    """Mutable per-trap ion chains used while planning a schedule."""

    def __init__(self, chains, capacity: int):
        self.chains = [list(c) for c in chains]
        self.capacity = capacity
        self.trap_of = {q: t for t, c in enumerate(self.chains) for q in c}

    @classmethod
    def from_placement(cls, placement: Placement, topology: Topology) -> "MachineState":
        return cls(placement.chains, topology.capacity)

    @property
    def n_traps(self) -> int:
        return len(self.chains)

    def copy(self) -> "MachineState":
        return MachineState(self.chains, self.capacity)

    def occupancy(self, t: int) -> int:
        return len(self.chains[t])

    def has_room(self, t: int) -> bool:
        return len(self.chains[t]) < self.capacity

    def snapshot(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(c) for c in self.chains)

    # primitive mutations -- each returns the matching Op

    def swap(self, t: int, i: int) -> Op:
        chain = self.chains[t]
        chain[i], chain[i + 1] = chain[i + 1], chain[i]
        return Op("swap", (chain[i + 1], chain[i]), t)

    def split(self, t: int, right: bool) -> tuple[int, Op]:
        q = self.chains[t].pop(-1 if right else 0)
        del self.trap_of[q]
        return q, Op("split", (q,), t)

    def merge(self, q: int, t: int, left: bool) -> Op:
        if not self.has_room(t):
            raise RoutingError(f"merge of qubit {q} into full trap {t}")
        if left:
            self.chains[t].insert(0, q)
        else:
            self.chains[t].append(q)
        self.trap_of[q] = t
        return Op("merge", (q,), t)


def _swap_to_edge(state: MachineState, q: int, t: int, right: bool) -> list[Op]:
    chain = state.chains[t]
    i = chain.index(q)
    ops = []
    if right:
        while i < len(chain) - 1:
            ops.append(state.swap(t, i))
            i += 1
    else:
        while i > 0:
            ops.append(state.swap(t, i - 1))
            i -= 1
    return ops


def _shift_one(state: MachineState, giver: int, taker: int, mover: int, guard) -> list[Op]:
    """Move one ion of ``giver`` into the adjacent ``taker``.

    Picks the ion nearest the taker's side, skipping guarded ions when
    possible; the moving ion itself is never chosen.
    """
    right = taker > giver
    chain = state.chains[giver]
    order = list(reversed(chain) if right else chain)
    x = next((ion for ion in order if ion not in guard), None)
    if x is None:
        x = next((ion for ion in order if ion != mover), None)
    if x is None:
        raise CapacityDeadlock(f"trap {giver} holds only the moving ion")
    ops = _swap_to_edge(state, x, giver, right)
    _, op = state.split(giver, right)
    ops.append(op)
    ops.append(Op("hop", (x,), min(giver, taker)))
    ops.append(state.merge(x, taker, left=right))
    return ops


def _make_room(state: MachineState, u: int, path: list[int], step: int, mover: int,
               guard) -> list[Op]:
    """Bubble displacement: bring a free slot into full trap ``u``.

    The slot comes from the nearest trap that can spare one (ties favour the
    direction of travel, then the lower index); every trap in between hands
    one edge ion to its neighbour, so only ``u`` and the donor change size.
    Traps on the path keep one free slot for the moving ion.
    """
    on_path = set(path)

    def spare(j: int) -> bool:
        return state.capacity - state.occupancy(j) - (j in on_path) >= 1

    donors = [j for j in range(state.n_traps) if j != u and spare(j)]
    if not donors:
        raise CapacityDeadlock(f"no free slot can be brought to trap {u}")
    j = min(donors, key=lambda j: (abs(j - u), (j - u) * step < 0, j))
    d = 1 if j > u else -1
    ops = []
    while j != u:
        ops += _shift_one(state, j - d, j, mover, guard)
        j -= d
    return ops


def plan_move(state: MachineState, q: int, dest: int, protect=()) -> list[Op]:
    """Relocate ion ``q`` to trap ``dest``; mutates ``state`` and returns the ops.

    The ion is swapped to the departure-side edge, split, and hopped one
    segment at a time. Each intermediate trap is crossed by merging at the
    near edge, swapping to the far edge and splitting again. Full traps on
    the way are relieved by bubble displacement before the ion departs; ions
    in ``protect`` are displaced only when nothing else can go. On :class:`CapacityDeadlock` the
    state is left partially updated, so plan on a copy when a fallback is
    needed.
    """
    src = state.trap_of[q]
    if src == dest:
        return []
    if not 0 <= dest < state.n_traps:
        raise RoutingError(f"destination trap {dest} does not exist")
    step = 1 if dest > src else -1
    right = step > 0
    path = list(range(src + step, dest + step, step))
    guard = set(protect) | {q}
    ops = []
    for u in path:
        if not state.has_room(u):
            ops += _make_room(state, u, path, step, q, guard)
    ops += _swap_to_edge(state, q, src, right)
    _, op = state.split(src, right)
    ops.append(op)
    for cur, nxt in zip([src] + path, path):
        ops.append(Op("hop", (q,), min(cur, nxt)))
        ops.append(state.merge(q, nxt, left=right))
        if nxt == dest:
            break
        ops += _swap_to_edge(state, q, nxt, right)
        _, op = state.split(nxt, right)
        ops.append(op)
    return ops


def movement_cost(ops) -> int:
    """Swap + hop count of an op list."""
    return sum(op.kind in ("swap", "hop") for op in ops)
