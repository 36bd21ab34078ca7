#!/usr/bin/env python3
"""Benchmark the compiled search kernel against its pure-Python twin.

Two workloads exercise the breadth-first product search from opposite
ends: the unary counter family (two big component DFAs, long witnesses)
and compiled machine families for a fully nondeterministic rejecting
machine (many small component DFAs, exhaustive sweep of the live trace
space).  Results are identical by construction; this script reports
wall-clock medians and the speedup.

Usage: python benchmarks/engine_compare.py [--repeats N]
"""

import argparse
import statistics
import time

from dfalab import OfflineNtm, compile_linear, search_intersection
from dfalab.corpus import modular_counter_instance
from dfalab.engine import compiled_available
from dfalab.machine import INPUT_READS, MOVES, WORK_SYMBOLS


def wanderer():
    """One non-accepting state, every possible write/move at every read:
    the compiled family must sweep its entire live space to prove
    emptiness."""
    everything = {(0, w, m0, m1)
                  for w in WORK_SYMBOLS for m0 in MOVES for m1 in MOVES}
    delta = {(0, r0, r1): everything for r0 in INPUT_READS for r1 in WORK_SYMBOLS}
    return OfflineNtm(n_states=1, initial=0, accepting=(), delta=delta,
                      name="wanderer")


def timed(fn, repeats):
    times = []
    result = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - t0)
    return statistics.median(times), result


def workloads():
    for n in (128, 256, 512):
        yield f"counter k=2 n={n}", modular_counter_instance(2, n)
    machine = wanderer()
    for n, space in ((3, 2), (4, 3)):
        fam = compile_linear(machine, "0" * n, space)
        yield f"wanderer family n={n} S={space} ({fam.instance.k} DFAs)", fam.instance


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()

    if not compiled_available():
        print("compiled kernel is not built; nothing to compare")
        return 1

    header = f"{'workload':<38}{'python':>12}{'compiled':>12}{'speedup':>9}  states"
    print(header, flush=True)
    print("-" * len(header), flush=True)
    for label, instance in workloads():
        t_py, r_py = timed(
            lambda: search_intersection(instance, engine="python"), args.repeats)
        t_c, r_c = timed(
            lambda: search_intersection(instance, engine="compiled"), args.repeats)
        assert r_py.witness == r_c.witness
        assert r_py.states_explored == r_c.states_explored
        print(f"{label:<38}{t_py * 1e3:>10.1f}ms{t_c * 1e3:>10.1f}ms"
              f"{t_py / t_c:>8.1f}x  {r_c.states_explored}", flush=True)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
