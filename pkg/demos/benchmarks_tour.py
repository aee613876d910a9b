"""
A tour of the benchmark circuits
================================

Gate counts, depths and how often qubits change partners, for the
structured algorithms and for the synthetic random benchmark.

Run with ``python demos/benchmarks_tour.py``.
"""
import numpy as np

from qccdlab.circuit import asap_layering, stats
from qccdlab.experiments import emit_bench_table, format_bench_table
from qccdlab.generators import BenchSpec, cuccaro, qft, random_parallel

# The 40-qubit statistics table
print(format_bench_table(emit_bench_table(40)))

# QFT layers grow, then shrink: a diamond of parallelism
lay = asap_layering(qft(12))
widths = np.array([len(layer) for layer in lay.layers])
print("qft(12) layer widths:", widths)

# The ripple-carry adder is almost a chain
widths = np.array([len(layer) for layer in asap_layering(cuccaro(12)).layers])
print("cuccaro(12) mean layer width: %.2f" % widths.mean())

# %%
# The random benchmark: every qubit busy in every timestep, with a knob
# for how many of the pairs get reshuffled between steps.
pcts = np.arange(0, 101, 10)
measured = np.array([stats(random_parallel(BenchSpec(20, p, 0))).movement_percentage
                     for p in pcts])
for p, m in zip(pcts, measured):
    print(f"requested {p:3d}%  measured {m:5.1f}%")

# Only whole pairs rotate, so the measured value moves in steps of 100 / (n/2)
print("distinct levels:", np.unique(measured).size)
