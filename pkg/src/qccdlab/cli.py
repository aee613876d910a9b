"""Command-line entry point: ``qccdlab <subcommand> ...`` or ``python -m qccdlab``.

Every subcommand accepts ``--config PATH`` (device parameters, INI) and
``--out PATH`` (default: stdout). Data-producing subcommands also take
``--format csv|json``. Any schedule that fails replay validation, or any
routing failure, makes the process exit with status 1.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import circuit as circuit_io
from .compiler import RoutingError, dump_schedule
from .experiments import (
    MOVEMENT_COLUMNS, SUMMARY_COLUMNS, TRAP_COLUMNS, SweepSpec, ValidationFailure,
    compile_circuit, emit_bench_table, format_bench_table, sequential_topology, sweep_movement,
    sweep_traps, to_csv, to_json, trap_capacity,
)
from .generators import GENERATORS, BenchSpec, qaoa_complete, random_parallel
from .machine import DEFAULT_CONFIG, Topology, linear_topology, load_config
from .noise import evaluate_many

EXIT_INVALID = 1


def _ints(text: str) -> tuple[int, ...]:
    return tuple(int(x) for x in text.split(",") if x)


def _floats(text: str) -> tuple[float, ...]:
    return tuple(float(x) for x in text.split(",") if x)


def _pcts(text: str) -> tuple[float, ...]:
    # "0:100:10" is an inclusive range, otherwise a comma list
    if ":" in text:
        lo, hi, step = (float(x) for x in text.split(":"))
        out, k = [], 0
        while lo + k * step <= hi + 1e-9:
            out.append(round(lo + k * step, 10))
            k += 1
        return tuple(out)
    return _floats(text)


def _write(args, text: str) -> None:
    if args.out in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(args.out).write_text(text)


def _table(rows, columns, fmt: str) -> str:
    return to_json(rows, columns) if fmt == "json" else to_csv(rows, columns)


def _load_circuit(args):
    if args.circuit is not None:
        text = sys.stdin.read() if args.circuit == "-" else Path(args.circuit).read_text()
        return circuit_io.loads(text, name=Path(args.circuit).stem)
    if args.kind is None:
        raise SystemExit("give a circuit file or --kind to generate one")
    return _generate(args)


def _generate(args):
    if args.kind == "random":
        return random_parallel(BenchSpec(args.qubits, args.movement_pct, args.seed))
    if args.kind == "qaoa":
        return qaoa_complete(args.qubits, order=args.qaoa_order)
    return GENERATORS[args.kind](args.qubits)


def _topology(args, config_topology: Topology | None, n_qubits: int) -> Topology:
    if args.traps is not None:
        if args.traps == 1:
            return sequential_topology(n_qubits) if args.capacity is None else \
                linear_topology(1, args.capacity)
        cap = args.capacity if args.capacity is not None else trap_capacity(n_qubits, args.traps)
        return linear_topology(args.traps, cap)
    if config_topology is not None:
        return config_topology
    if args.placement == "paired":
        return linear_topology(max(1, n_qubits // 2), 3)
    return sequential_topology(n_qubits)


# -- subcommands -------------------------------------------------------------

def cmd_gen(args) -> int:
    _write(args, circuit_io.dumps(_generate(args)))
    return 0


def _compile(args):
    params, config_topology = load_config(args.config)
    circ = _load_circuit(args)
    top = _topology(args, config_topology, circ.n_qubits)
    schedule = compile_circuit(circ, top, params, args.router, args.placement,
                               args.lookahead, not args.serial_moves)
    return params, schedule


def cmd_compile(args) -> int:
    _, schedule = _compile(args)
    _write(args, dump_schedule(schedule))
    return 0


def cmd_run(args) -> int:
    params, schedule = _compile(args)
    report = evaluate_many(schedule, [params], args.coherence)[0]
    row = report.as_dict()
    row["movement_count"] = report.movement_count
    columns = list(row)
    _write(args, _table([row], columns, args.format))
    return 0


def _sweep_spec(args, **extra) -> SweepSpec:
    params, _ = load_config(args.config)
    return SweepSpec(
        qubit_counts=args.qubits, T2s=args.T2, swap_ratios=args.swap_ratios,
        seeds=args.seeds, router=args.router, placement=args.placement,
        lookahead=args.lookahead, overlap_moves=not args.serial_moves,
        workers=args.workers, params=params, **extra)


def cmd_sweep_movement(args) -> int:
    spec = _sweep_spec(args, benchmark=("random",), movement_pcts=args.movement_pcts)
    _write(args, _table(sweep_movement(spec), MOVEMENT_COLUMNS, args.format))
    return 0


def cmd_sweep_traps(args) -> int:
    spec = _sweep_spec(args, benchmark=args.algorithms, trap_counts=args.traps)
    rows, summary = sweep_traps(spec)
    _write(args, _table(rows, TRAP_COLUMNS, args.format))
    text = _table(summary, SUMMARY_COLUMNS, args.format)
    if args.summary_out:
        Path(args.summary_out).write_text(text)
    else:
        sys.stderr.write(text)
    return 0


def cmd_bench_table(args) -> int:
    rows = emit_bench_table(args.qubits)
    if args.format == "text":
        text = format_bench_table(rows)
    elif args.format == "json":
        text = json.dumps(rows, indent=1) + "\n"
    else:
        text = to_csv(rows, list(rows[0]))
    _write(args, text)
    return 0


# -- parser ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", default=str(DEFAULT_CONFIG),
                        help="device parameter file (INI); default: the calibrated config")
    common.add_argument("--out", help="output path (default: stdout)")

    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("csv", "json"), default="csv")

    gen_args = argparse.ArgumentParser(add_help=False)
    gen_args.add_argument("--kind", choices=("random", "qft", "qaoa", "draper", "cuccaro"))
    gen_args.add_argument("--qubits", type=int, default=8)
    gen_args.add_argument("--movement-pct", type=float, default=0.0)
    gen_args.add_argument("--seed", type=int, default=0)
    gen_args.add_argument("--qaoa-order", choices=("qft", "round_robin"), default="qft")

    routing = argparse.ArgumentParser(add_help=False)
    routing.add_argument("--router", choices=("naive", "greedy"), default="greedy")
    routing.add_argument("--placement", choices=("sta", "paired"), default="sta")
    routing.add_argument("--lookahead", type=int, default=20)
    routing.add_argument("--serial-moves", action="store_true",
                         help="naive router: serialize all movement instead of overlapping it")

    parser = argparse.ArgumentParser(prog="qccdlab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", parents=[common, gen_args], help="write a benchmark circuit")
    p.set_defaults(func=cmd_gen, kind="random")

    for name, func, helptext in (("compile", cmd_compile, "emit a validated schedule dump"),
                                 ("run", cmd_run, "compile and report fidelity")):
        parents = [common, gen_args, routing] + ([fmt] if name == "run" else [])
        p = sub.add_parser(name, parents=parents, help=helptext)
        p.add_argument("circuit", nargs="?", help="circuit file ('-' for stdin); "
                       "omit to generate one with --kind")
        p.add_argument("--traps", type=int, help="linear device with this many traps")
        p.add_argument("--capacity", type=int,
                       help="ions per trap (default: ceil(n/traps) + 1)")
        if name == "run":
            p.add_argument("--coherence", choices=("global", "idle"), default="global")
        p.set_defaults(func=func)

    sweep = argparse.ArgumentParser(add_help=False)
    sweep.add_argument("--T2", type=_floats, default=None, help="comma list, ms")
    sweep.add_argument("--swap-ratios", type=_floats, default=None)
    sweep.add_argument("--seeds", type=_ints, default=(0,))
    sweep.add_argument("--lookahead", type=int, default=20)
    sweep.add_argument("--serial-moves", action="store_true")
    sweep.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("sweep-movement", parents=[common, fmt, sweep],
                       help="fidelity vs movement percentage, random benchmarks")
    p.add_argument("--qubits", type=_ints, default=(8, 20, 40))
    p.add_argument("--movement-pcts", type=_pcts, default=_pcts("0:100:10"))
    p.add_argument("--router", choices=("naive", "greedy"), default="naive")
    p.add_argument("--placement", choices=("sta", "paired"), default="paired")
    p.set_defaults(func=cmd_sweep_movement)

    p = sub.add_parser("sweep-traps", parents=[common, fmt, sweep],
                       help="fidelity vs trap count, structured algorithms")
    p.add_argument("--algorithms", type=lambda s: tuple(s.split(",")),
                   default=("cuccaro", "draper", "qaoa", "qft"))
    p.add_argument("--qubits", type=_ints, default=(20, 40, 50))
    p.add_argument("--traps", type=_ints, default=None,
                   help="comma list (default: 2 .. n/2)")
    p.add_argument("--router", choices=("naive", "greedy"), default="greedy")
    p.add_argument("--placement", choices=("sta", "paired"), default="sta")
    p.add_argument("--summary-out", help="summary table path (default: stderr)")
    p.set_defaults(func=cmd_sweep_traps)

    p = sub.add_parser("bench-table", parents=[common], help="benchmark statistics table")
    p.add_argument("--qubits", type=int, default=40)
    p.add_argument("--format", choices=("text", "csv", "json"), default="text")
    p.set_defaults(func=cmd_bench_table)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValidationFailure as exc:
        print(f"validation failed: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except RoutingError as exc:
        print(f"routing failed: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (ValueError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
