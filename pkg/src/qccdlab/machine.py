"""QCCD machine model: 1D-linear trap array and device parameters.

Segments are numbered so that segment ``s`` joins trap ``s`` and ``s + 1``.
Durations are in microseconds, T2 in milliseconds.
"""
from __future__ import annotations

import configparser
from dataclasses import dataclass, fields, replace
from pathlib import Path


@dataclass(frozen=True)
class Topology:
    n_traps: int
    capacity: int

    def __post_init__(self):
        if self.n_traps < 1:
            raise ValueError(f"need at least one trap, got {self.n_traps}")
        if self.capacity < 2:
            raise ValueError(f"trap capacity must be >= 2, got {self.capacity}")

    @property
    def n_segments(self) -> int:
        return self.n_traps - 1

    @property
    def total_slots(self) -> int:
        return self.n_traps * self.capacity

    @property
    def usable_slots(self) -> int:
        """Slots available to the initial placement (one free slot kept per trap)."""
        return self.n_traps * (self.capacity - 1)

    def segment_between(self, t: int, u: int) -> int:
        if abs(t - u) != 1:
            raise ValueError(f"traps {t} and {u} are not adjacent")
        return min(t, u)

    def describe(self) -> str:
        return f"linear{self.n_traps}x{self.capacity}"


def linear_topology(n_traps: int, capacity: int) -> Topology:
    return Topology(n_traps, capacity)


def single_trap(n_ions: int) -> Topology:
    """Single-trap device able to hold ``n_ions`` plus one free slot."""
    return Topology(1, max(2, n_ions + 1))


@dataclass(frozen=True)
class DeviceParams:
    eps_2q0: float = 1e-3
    gamma: float = 0.05
    swap_error_ratio: float = 3.0
    f_hop: float = 1 - 1e-4
    f_split: float = 1 - 5e-4
    f_merge: float = 1 - 5e-4
    t_2q: float = 100.0
    t_swap: float = 100.0
    t_split: float = 80.0
    t_merge: float = 80.0
    t_hop: float = 20.0
    T2: float = 1000.0

    def __post_init__(self):
        for name in ("t_2q", "t_swap", "t_split", "t_merge", "t_hop", "T2"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)}")
        if not 0 <= self.eps_2q0 < 1:
            raise ValueError(f"eps_2q0 must lie in [0, 1), got {self.eps_2q0}")
        if self.gamma < 0:
            raise ValueError(f"gamma must be non-negative, got {self.gamma}")
        if self.swap_error_ratio < 1:
            raise ValueError(f"swap_error_ratio must be >= 1, got {self.swap_error_ratio}")
        for name in ("f_hop", "f_split", "f_merge"):
            if not 0 < getattr(self, name) <= 1:
                raise ValueError(f"{name} must lie in (0, 1], got {getattr(self, name)}")

    def with_(self, **changes) -> "DeviceParams":
        return replace(self, **changes)

    @property
    def T2_us(self) -> float:
        return self.T2 * 1000.0


def gate_error(params: DeviceParams, chain_length: int) -> float:
    """Two-qubit gate error in a chain of ``chain_length`` ions.

    Linear surrogate for motional-mode crowding: the base error grows by
    ``gamma`` per ion beyond two.
    """
    if chain_length < 1:
        raise ValueError(f"chain length must be >= 1, got {chain_length}")
    return params.eps_2q0 * (1.0 + params.gamma * max(0, chain_length - 2))


def swap_error(params: DeviceParams, chain_length: int) -> float:
    return min(params.swap_error_ratio * gate_error(params, chain_length), 1.0 - 1e-15)


# -- config files ------------------------------------------------------------
#
# INI syntax, two optional sections:
#
#   [device]            any DeviceParams field, e.g.  gamma = 0.05
#   [topology]          n_traps = 20
#                       capacity = 3
#
# Missing keys take the DeviceParams defaults. Unknown keys are an error.

_DEVICE_FIELDS = {f.name for f in fields(DeviceParams)}
DEFAULT_CONFIG = Path(__file__).with_name("default_device.ini")


def load_config(path: str | Path | None = None) -> tuple[DeviceParams, Topology | None]:
    parser = configparser.ConfigParser()
    parser.optionxform = str  # keep T2 case
    src = Path(path) if path is not None else DEFAULT_CONFIG
    with open(src) as fh:
        parser.read_file(fh)
    unknown = set(parser.sections()) - {"device", "topology"}
    if unknown:
        raise ValueError(f"{src}: unknown sections {sorted(unknown)}")
    values = {}
    if parser.has_section("device"):
        for key, raw in parser.items("device"):
            if key not in _DEVICE_FIELDS:
                raise ValueError(f"{src}: unknown device key {key!r}")
            values[key] = float(raw)
    params = DeviceParams(**values)
    topology = None
    if parser.has_section("topology"):
        sec = parser["topology"]
        extra = set(sec) - {"n_traps", "capacity"}
        if extra:
            raise ValueError(f"{src}: unknown topology keys {sorted(extra)}")
        topology = Topology(sec.getint("n_traps", 1), sec.getint("capacity", 2))
    return params, topology


def dump_config(params: DeviceParams, topology: Topology | None = None) -> str:
    lines = ["[device]"]
    lines += [f"{f.name} = {getattr(params, f.name)!r}" for f in fields(DeviceParams)]
    if topology is not None:
        lines += ["", "[topology]", f"n_traps = {topology.n_traps}",
                  f"capacity = {topology.capacity}"]
    return "\n".join(lines) + "\n"


def default_params() -> DeviceParams:
    """The checked-in calibrated parameter set."""
    return load_config(DEFAULT_CONFIG)[0]
