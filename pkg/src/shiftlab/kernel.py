"""Search-core selection and the shared problem representation.

The hot inner loop of admissible-pattern search is a depth-first
enumeration over cell assignments.  It exists twice: a Cython extension
(``shiftlab._dfs``) and a pure-Python fallback (``shiftlab._dfs_py``) with
identical semantics.  The compiled one is chosen at import when present;
set ``SHIFTLAB_PURE_KERNEL=1`` to force the fallback.

All wrappers partition the search by the symbol of cell 0 and process the
partitions in canonical order (possibly on worker threads), so results and
budget accounting do not depend on the worker count.
"""

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .errors import BudgetExceededError

if os.environ.get("SHIFTLAB_PURE_KERNEL"):
    from . import _dfs_py as _impl
    BACKEND = "python"
else:
    try:
        from . import _dfs as _impl
        BACKEND = "cython"
    except ImportError:
        from . import _dfs_py as _impl
        BACKEND = "python"

MODE_COUNT = 0
MODE_FIRST = 1
MODE_ALL = 2

DEFAULT_NODE_BUDGET = 10 ** 8


@dataclass
class Problem:
    """Flattened constraint arrays consumed by both search cores.

    Forbidden placements and milestone constraints are grouped by their
    trigger cell: the largest cell index they involve.  ``checks`` holds
    (cells, symbols) placements that reject a branch when fully matched;
    ``milestones`` holds tuples of index pairs of which at least one must
    differ once decided.
    """

    n_cells: int
    n_syms: int
    chk_ptr: list = field(default_factory=list)
    chk_item_ptr: list = field(default_factory=list)
    chk_cells: list = field(default_factory=list)
    chk_syms: list = field(default_factory=list)
    ms_ptr: list = field(default_factory=list)
    ms_pair_ptr: list = field(default_factory=list)
    ms_a: list = field(default_factory=list)
    ms_b: list = field(default_factory=list)


def build_problem(n_cells, n_syms, checks, milestones=None):
    """checks: list of (cells tuple, syms tuple); milestones: list of tuples
    of (ia, ib) index pairs.  Trigger cells are derived here."""
    by_cell = [[] for _ in range(n_cells)]
    for cells, syms in checks:
        by_cell[max(cells)].append((cells, syms))
    ms_by_cell = [[] for _ in range(n_cells)]
    for pairs in (milestones or []):
        trigger = max(max(a, b) for a, b in pairs)
        ms_by_cell[trigger].append(pairs)

    pr = Problem(n_cells=n_cells, n_syms=n_syms)
    pr.chk_ptr.append(0)
    pr.chk_item_ptr.append(0)
    for k in range(n_cells):
        for cells, syms in by_cell[k]:
            pr.chk_cells.extend(cells)
            pr.chk_syms.extend(syms)
            pr.chk_item_ptr.append(len(pr.chk_cells))
        pr.chk_ptr.append(len(pr.chk_item_ptr) - 1)
    pr.ms_ptr.append(0)
    pr.ms_pair_ptr.append(0)
    for k in range(n_cells):
        for pairs in ms_by_cell[k]:
            for a, b in pairs:
                pr.ms_a.append(a)
                pr.ms_b.append(b)
            pr.ms_pair_ptr.append(len(pr.ms_a))
        pr.ms_ptr.append(len(pr.ms_pair_ptr) - 1)
    return pr


def _partitions(problem, jobs):
    return [(s, s + 1) for s in range(problem.n_syms)]


def _run_partitions(problem, mode, budget, jobs):
    """Run one search per first-cell symbol; merge in canonical order.
    The node budget applies to each partition separately."""
    if problem.n_cells == 0:
        return [1 if mode == MODE_COUNT else ()]
    parts = _partitions(problem, jobs)
    if jobs <= 1:
        return [_impl.run(problem, mode, budget, lo, hi) for lo, hi in parts]
    results = [None] * len(parts)
    errors = [None] * len(parts)

    def work(i):
        lo, hi = parts[i]
        try:
            results[i] = _impl.run(problem, mode, budget, lo, hi)
        except BudgetExceededError as exc:
            errors[i] = exc

    with ThreadPoolExecutor(max_workers=jobs) as pool:
        list(pool.map(work, range(len(parts))))
    for exc in errors:
        if exc is not None:
            raise exc
    return results


def count(problem, budget=DEFAULT_NODE_BUDGET, jobs=1):
    if problem.n_cells == 0:
        return 1
    return sum(_run_partitions(problem, MODE_COUNT, budget, jobs))


def first(problem, budget=DEFAULT_NODE_BUDGET, jobs=1):
    """First admissible assignment in canonical order, or None.  With
    jobs == 1 later partitions are not explored once one succeeds; parallel
    runs reproduce that outcome by ignoring whatever later partitions did."""
    if problem.n_cells == 0:
        return ()
    if jobs <= 1:
        for lo, hi in _partitions(problem, jobs):
            got = _impl.run(problem, MODE_FIRST, budget, lo, hi)
            if got is not None:
                return got
        return None
    parts = _partitions(problem, jobs)
    results = [None] * len(parts)
    errors = [None] * len(parts)

    def work(i):
        lo, hi = parts[i]
        try:
            results[i] = _impl.run(problem, MODE_FIRST, budget, lo, hi)
        except BudgetExceededError as exc:
            errors[i] = exc

    with ThreadPoolExecutor(max_workers=jobs) as pool:
        list(pool.map(work, range(len(parts))))
    for i in range(len(parts)):
        if errors[i] is not None:
            raise errors[i]
        if results[i] is not None:
            return results[i]
    return None


def all_solutions(problem, budget=DEFAULT_NODE_BUDGET, jobs=1):
    if problem.n_cells == 0:
        return [()]
    merged = []
    for part in _run_partitions(problem, MODE_ALL, budget, jobs):
        merged.extend(part)
    return merged
