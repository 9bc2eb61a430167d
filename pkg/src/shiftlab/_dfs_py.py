"""Pure-Python depth-first search core.

Fallback used when the compiled extension is unavailable.  Traversal order,
budget accounting and results are identical to the compiled version.
"""

from .errors import BudgetExceededError

MODE_COUNT = 0
MODE_FIRST = 1
MODE_ALL = 2


def run(problem, mode, budget, lo, hi):
    """Depth-first enumeration over cell assignments.

    Cells are assigned in index order, symbols in ascending order; cell 0 is
    restricted to [lo, hi).  A completed forbidden-placement match rejects a
    branch; so does a fully decided milestone constraint none of whose cell
    pairs differ.  Every symbol trial counts against `budget`.
    """
    n = problem.n_cells
    n_syms = problem.n_syms
    chk_ptr = problem.chk_ptr
    chk_item_ptr = problem.chk_item_ptr
    chk_cells = problem.chk_cells
    chk_syms = problem.chk_syms
    ms_ptr = problem.ms_ptr
    ms_pair_ptr = problem.ms_pair_ptr
    ms_a = problem.ms_a
    ms_b = problem.ms_b

    count = 0
    solutions = []
    sym = [-1] * n
    nodes = 0
    k = 0
    while k >= 0:
        s = sym[k] + 1
        if k == 0:
            s = max(s, lo)
            top = hi
        else:
            top = n_syms
        ok = False
        while s < top:
            nodes += 1
            if nodes > budget:
                raise BudgetExceededError("node-budget", budget, "search core")
            sym[k] = s
            if _ok(k, sym, chk_ptr, chk_item_ptr, chk_cells, chk_syms,
                   ms_ptr, ms_pair_ptr, ms_a, ms_b):
                ok = True
                break
            s += 1
        if not ok:
            sym[k] = -1
            k -= 1
            continue
        if k == n - 1:
            if mode == MODE_FIRST:
                return tuple(sym)
            if mode == MODE_ALL:
                solutions.append(tuple(sym))
            else:
                count += 1
            # stay at k; the next loop pass advances this cell's symbol
        else:
            k += 1
    if mode == MODE_COUNT:
        return count
    if mode == MODE_ALL:
        return solutions
    return None


def _ok(k, sym, chk_ptr, chk_item_ptr, chk_cells, chk_syms,
        ms_ptr, ms_pair_ptr, ms_a, ms_b):
    for c in range(chk_ptr[k], chk_ptr[k + 1]):
        match = True
        for t in range(chk_item_ptr[c], chk_item_ptr[c + 1]):
            if sym[chk_cells[t]] != chk_syms[t]:
                match = False
                break
        if match:
            return False
    for m in range(ms_ptr[k], ms_ptr[k + 1]):
        satisfied = False
        for t in range(ms_pair_ptr[m], ms_pair_ptr[m + 1]):
            if sym[ms_a[t]] != sym[ms_b[t]]:
                satisfied = True
                break
        if not satisfied:
            return False
    return True
