"""Placement, routing and scheduling onto a linear QCCD device."""
from .placement import PLACEMENTS, interaction_weights, paired_placement, sta_placement
from .routing import ROUTERS, route_greedy_minmove, route_naive_parallel
from .schedule import MOVE_KINDS, Schedule, ScheduleEvent, Timeline, dumps as dump_schedule
from .state import (CapacityDeadlock, MachineState, Op, Placement, RoutingError,
                    movement_cost, plan_move)
from .validate import Replay, replay, validate_schedule

__all__ = [
    "PLACEMENTS", "ROUTERS", "MOVE_KINDS", "CapacityDeadlock", "MachineState", "Op",
    "Placement", "Replay", "RoutingError", "Schedule", "ScheduleEvent", "Timeline",
    "dump_schedule", "interaction_weights", "movement_cost", "paired_placement", "plan_move",
    "replay", "route_greedy_minmove", "route_naive_parallel", "sta_placement",
    "validate_schedule",
]
