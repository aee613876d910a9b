"""Independent replay check of a schedule.

Deliberately shares no code with the planner: it re-derives every chain from
the initial placement and the events alone.
"""
from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass

from ..circuit import Circuit
from ..machine import Topology
from .schedule import KINDS, Schedule

EPS = 1e-9


@dataclass
class Replay:
    violations: list[str]
    occupancy: list[int]     # chain length of the event's trap at event start (-1 for hops)

    @property
    def ok(self) -> bool:
        return not self.violations


def _overlaps(spans, label, out):
    spans.sort()
    for (s0, e0, i0), (s1, e1, i1) in zip(spans, spans[1:]):
        if s1 < e0 - EPS:
            out.append(f"{label} overlap: events {i0} and {i1}")


def replay(schedule: Schedule, circuit: Circuit | None = None,
           topology: Topology | None = None) -> Replay:
    circuit = circuit if circuit is not None else schedule.circuit
    topology = topology if topology is not None else schedule.topology
    events = schedule.events
    bad: list[str] = []
    occupancy = [-1] * len(events)

    by_resource = defaultdict(list)
    by_ion = defaultdict(list)
    for i, e in enumerate(events):
        if e.kind not in KINDS:
            bad.append(f"event {i}: unknown kind {e.kind!r}")
            continue
        if e.duration <= 0:
            bad.append(f"event {i}: non-positive duration")
        n_res = topology.n_segments if e.kind == "hop" else topology.n_traps
        if not 0 <= e.resource < n_res:
            bad.append(f"event {i}: resource {e.resource} out of range")
        by_resource[(e.kind == "hop", e.resource)].append((e.start, e.start + e.duration, i))
        for q in e.qubits:
            by_ion[q].append((e.start, e.start + e.duration, i))
    for (is_seg, r), spans in sorted(by_resource.items()):
        _overlaps(spans, f"resource {'segment' if is_seg else 'trap'} {r}", bad)
    for q, spans in sorted(by_ion.items()):
        _overlaps(spans, f"ion {q}", bad)
    if bad:
        return Replay(bad, occupancy)

    chains = [list(c) for c in schedule.placement.chains]
    if len(chains) != topology.n_traps:
        return Replay([f"placement has {len(chains)} traps, topology {topology.n_traps}"], occupancy)
    for t, c in enumerate(chains):
        if len(c) > topology.capacity:
            bad.append(f"capacity exceeded in trap {t} at start")
    home = {q: t for t, c in enumerate(chains) for q in c}
    # in flight: ion -> (trap it sits next to, side: -1 left edge, +1 right edge, 0 either)
    flight: dict[int, tuple[int, int]] = {}
    last_gate = {}

    for i in sorted(range(len(events)), key=lambda k: (events[k].start, k)):
        e = events[i]
        t = e.resource
        if e.kind in ("gate", "swap"):
            if len(e.qubits) != 2:
                bad.append(f"event {i}: {e.kind} needs two ions")
                continue
            chain = chains[t]
            occupancy[i] = len(chain)
            if any(home.get(q) != t for q in e.qubits):
                what = "gate qubits not co-located" if e.kind == "gate" else "swap ions not in trap"
                bad.append(f"event {i}: {what} in trap {t}")
                continue
            if e.kind == "swap":
                x, y = (chain.index(q) for q in e.qubits)
                if abs(x - y) != 1:
                    bad.append(f"event {i}: swap of non-adjacent ions")
                    continue
                chain[x], chain[y] = chain[y], chain[x]
            else:
                for q in e.qubits:
                    if last_gate.get(q, -1) > e.gate_index:
                        bad.append(f"event {i}: gate order on qubit {q}")
                    last_gate[q] = e.gate_index
        elif e.kind == "split":
            (q,) = e.qubits
            chain = chains[t]
            occupancy[i] = len(chain)
            if home.get(q) != t or q not in (chain[0], chain[-1]):
                bad.append(f"event {i}: split of ion {q} not at an edge of trap {t}")
                continue
            side = 0 if len(chain) == 1 else (-1 if chain[0] == q else 1)
            chain.remove(q)
            del home[q]
            flight[q] = (t, side)
        elif e.kind == "hop":
            (q,) = e.qubits
            if q not in flight:
                bad.append(f"event {i}: hop of ion {q} that is not in flight")
                continue
            at, side = flight[q]
            to = e.resource + 1 if at == e.resource else e.resource
            if at not in (e.resource, e.resource + 1) or (side and to - at != side):
                bad.append(f"event {i}: hop of ion {q} on segment {t} from trap {at}")
                continue
            flight[q] = (to, at - to)
        elif e.kind == "merge":
            (q,) = e.qubits
            if q not in flight or flight[q][0] != t:
                bad.append(f"event {i}: merge of ion {q} not waiting at trap {t}")
                continue
            chain = chains[t]
            occupancy[i] = len(chain)
            if len(chain) >= topology.capacity:
                bad.append(f"event {i}: capacity exceeded in trap {t}")
                continue
            _, side = flight.pop(q)
            if side < 0:
                chain.insert(0, q)
            else:
                chain.append(q)
            home[q] = t

    if flight:
        bad.append(f"ions still in flight at the end: {sorted(flight)}")
    if circuit is not None:
        done = Counter(e.gate_index for e in events if e.kind == "gate")
        expected = Counter(range(len(circuit.gates)))
        if done != expected:
            missing = sorted((expected - done).elements())
            extra = sorted((done - expected).elements())
            bad.append(f"gate coverage: missing {missing[:10]}, unexpected {extra[:10]}")
        for e in events:
            if e.kind == "gate" and 0 <= e.gate_index < len(circuit.gates):
                if set(e.qubits) != set(circuit.gates[e.gate_index].qubits):
                    bad.append(f"gate coverage: gate {e.gate_index} acts on wrong qubits")
    return Replay(bad, occupancy)


def validate_schedule(schedule: Schedule, circuit: Circuit | None = None,
                      topology: Topology | None = None) -> list[str]:
    return replay(schedule, circuit, topology).violations
