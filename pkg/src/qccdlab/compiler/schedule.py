"""Timed event schedules and the earliest-feasible timeline that builds them."""
from __future__ import annotations

from dataclasses import dataclass, field

from ..circuit import Circuit
from ..machine import DeviceParams, Topology
from .state import Op, Placement

KINDS = ("gate", "swap", "split", "hop", "merge")
MOVE_KINDS = ("swap", "split", "hop", "merge")


@dataclass(frozen=True)
class ScheduleEvent:
    kind: str
    qubits: tuple[int, ...]
    resource: int          # trap id; segment id for hops
    start: float           # microseconds
    duration: float
    gate_index: int = -1   # program index for gate events

    @property
    def end(self) -> float:
        return self.start + self.duration

    @property
    def resource_key(self) -> tuple[str, int]:
        return ("seg" if self.kind == "hop" else "trap", self.resource)


@dataclass(frozen=True)
class Schedule:
    events: tuple[ScheduleEvent, ...]
    placement: Placement
    topology: Topology
    circuit: Circuit | None = None
    router: str = ""
    meta: dict = field(default_factory=dict, compare=False)

    @property
    def makespan(self) -> float:
        if not self.events:
            return 0.0
        return max(e.end for e in self.events)

    def counts(self) -> dict[str, int]:
        out = dict.fromkeys(KINDS, 0)
        for e in self.events:
            out[e.kind] += 1
        return out

    @property
    def movement_events(self) -> int:
        return sum(e.kind in MOVE_KINDS for e in self.events)


def durations(params: DeviceParams) -> dict[str, float]:
    return {"gate": params.t_2q, "swap": params.t_swap, "split": params.t_split,
            "hop": params.t_hop, "merge": params.t_merge}


class Timeline:
    """List scheduler over traps, segments and ions.

    Each op starts as soon as all of its resources are free and never earlier
    than ``not_before``. There is no backfilling into idle gaps, so ops that
    share a resource keep their emission order in time; replaying the events
    by start time therefore reproduces the planner's state sequence.
    """

    def __init__(self, params: DeviceParams):
        self.duration = durations(params)
        self.free_at: dict[tuple, float] = {}
        self.events: list[ScheduleEvent] = []

    def place(self, op: Op, not_before: float = 0.0, extra: tuple = ()) -> ScheduleEvent:
        keys = [("seg" if op.kind == "hop" else "trap", op.resource)]
        keys += [("ion", q) for q in op.qubits]
        keys += list(extra)
        start = max([not_before] + [self.free_at.get(k, 0.0) for k in keys])
        ev = ScheduleEvent(op.kind, tuple(op.qubits), op.resource, start,
                           self.duration[op.kind], op.gate_index)
        for k in keys:
            self.free_at[k] = ev.end
        self.events.append(ev)
        return ev


# -- schedule dump -----------------------------------------------------------
#
#   # comment / header lines
#   <kind> <q1>[,<q2>] <T|S><resource> <start_us> <duration_us> [gate_index]
#
# T marks a trap resource, S a segment. Events are listed in emission order.

def dumps(schedule: Schedule) -> str:
    lines = [f"# router {schedule.router or '-'}",
             f"# topology {schedule.topology.describe()}",
             "# placement " + " | ".join(",".join(map(str, c)) for c in schedule.placement.chains),
             f"# makespan {schedule.makespan:.3f}"]
    for e in schedule.events:
        res = ("S" if e.kind == "hop" else "T") + str(e.resource)
        ops = ",".join(map(str, e.qubits))
        tail = f" {e.gate_index}" if e.kind == "gate" else ""
        lines.append(f"{e.kind} {ops} {res} {e.start:.3f} {e.duration:.3f}{tail}")
    return "\n".join(lines) + "\n"


def parse_events(text: str) -> list[ScheduleEvent]:
    events = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tok = line.split()
        gate_index = int(tok[5]) if len(tok) > 5 else -1
        events.append(ScheduleEvent(tok[0], tuple(int(x) for x in tok[1].split(",")),
                                    int(tok[2][1:]), float(tok[3]), float(tok[4]), gate_index))
    return events
