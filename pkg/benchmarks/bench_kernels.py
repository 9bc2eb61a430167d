#!/usr/bin/env python3
"""Timing comparison of the compiled search core against the pure-Python
fallback on three representative workloads:

* enumerating all admissible patterns of a radius-2 ball,
* proving a witness search unsatisfiable (horizontal constancy, stage 1),
* finding a concentric witness on the full shift at stage 2.

Run as ``python3 benchmarks/bench_kernels.py``.
"""

import sys
import time

from shiftlab import _dfs_py
from shiftlab.classify import stage_data
from shiftlab.gather import PeriodSet
from shiftlab.grid import Ball
from shiftlab.kernel import MODE_ALL, MODE_COUNT, MODE_FIRST
from shiftlab.sft import ball_cells, compile_region, parse_rules

try:
    from shiftlab import _dfs
except ImportError:
    _dfs = None

HCONST = "alphabet: 0 1\nforbid: (0,0)=0 (1,0)=1\nforbid: (0,0)=1 (1,0)=0\n"
FULL = "alphabet: 0 1\n"
BUDGET = 10 ** 9


def witness_problem(rules_text, nmax):
    rules = parse_rules(rules_text)
    periods, radii = stage_data(nmax)
    outer = radii[nmax]
    cells = ball_cells(outer)
    index = {z: i for i, z in enumerate(cells)}
    milestones = []
    seen = {}
    for i in range(nmax + 1):
        for p in PeriodSet(periods[:i + 1]):
            seen.setdefault(p, radii[i])
    for p, rad in seen.items():
        ball = Ball((0, 0), rad)
        pairs = [(index[z], index[(z[0] + p.dx, z[1] + p.dy)])
                 for z in ball.cells()
                 if ball.contains((z[0] + p.dx, z[1] + p.dy))]
        milestones.append(tuple(pairs))
    return compile_region(rules, cells, milestones)


def workloads():
    rules = parse_rules("alphabet: 0 1\nforbid: (0,0)=1 (1,0)=1\n"
                        "forbid: (0,0)=1 (0,1)=1\n")
    yield ("count radius-2 ball",
           compile_region(rules, ball_cells(2)), MODE_COUNT)
    yield ("enumerate radius-2 ball",
           compile_region(rules, ball_cells(2)), MODE_ALL)
    yield ("unsat witness (stage 1)", witness_problem(HCONST, 1), MODE_FIRST)
    yield ("full-shift witness (stage 2)", witness_problem(FULL, 2), MODE_FIRST)


def timed(impl, problem, mode):
    best = None
    for _ in range(3):
        t0 = time.perf_counter()
        impl.run(problem, mode, BUDGET, 0, problem.n_syms)
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best


def main():
    if _dfs is None:
        print("compiled kernel not built; showing the fallback only",
              file=sys.stderr)
    rows = []
    for name, problem, mode in workloads():
        py = timed(_dfs_py, problem, mode)
        cy = timed(_dfs, problem, mode) if _dfs else None
        rows.append((name, py, cy))
    width = max(len(r[0]) for r in rows)
    header = f"{'workload':<{width}}  {'python':>10}  {'cython':>10}  {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for name, py, cy in rows:
        if cy is None:
            print(f"{name:<{width}}  {py * 1e3:>8.2f}ms  {'-':>10}  {'-':>8}")
        else:
            print(f"{name:<{width}}  {py * 1e3:>8.2f}ms  {cy * 1e3:>8.2f}ms  "
                  f"{py / cy:>7.1f}x")


if __name__ == "__main__":
    main()
