# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled depth-first search core.

Semantics mirror _dfs_py.run exactly: same traversal order, same budget
accounting, same results.
"""

from cpython cimport array
import array

from .errors import BudgetExceededError

MODE_COUNT = 0
MODE_FIRST = 1
MODE_ALL = 2


def run(problem, int mode, long long budget, int lo, int hi):
    cdef int n = problem.n_cells
    cdef int n_syms = problem.n_syms

    cdef array.array chk_ptr_a = array.array('i', problem.chk_ptr)
    cdef array.array chk_item_ptr_a = array.array('i', problem.chk_item_ptr)
    cdef array.array chk_cells_a = array.array('i', problem.chk_cells)
    cdef array.array chk_syms_a = array.array('i', problem.chk_syms)
    cdef array.array ms_ptr_a = array.array('i', problem.ms_ptr)
    cdef array.array ms_pair_ptr_a = array.array('i', problem.ms_pair_ptr)
    cdef array.array ms_a_a = array.array('i', problem.ms_a)
    cdef array.array ms_b_a = array.array('i', problem.ms_b)

    cdef int[::1] chk_ptr = chk_ptr_a
    cdef int[::1] chk_item_ptr = chk_item_ptr_a
    cdef int[::1] chk_cells = chk_cells_a
    cdef int[::1] chk_syms = chk_syms_a
    cdef int[::1] ms_ptr = ms_ptr_a
    cdef int[::1] ms_pair_ptr = ms_pair_ptr_a
    cdef int[::1] ms_a = ms_a_a
    cdef int[::1] ms_b = ms_b_a

    cdef array.array sym_a = array.array('i', [-1] * n)
    cdef int[::1] sym = sym_a

    cdef long long count = 0
    cdef long long nodes = 0
    cdef int k = 0, s, top, ok
    solutions = []

    while k >= 0:
        s = sym[k] + 1
        if k == 0:
            if s < lo:
                s = lo
            top = hi
        else:
            top = n_syms
        ok = 0
        while s < top:
            nodes += 1
            if nodes > budget:
                raise BudgetExceededError("node-budget", budget, "search core")
            sym[k] = s
            if _ok(k, sym, chk_ptr, chk_item_ptr, chk_cells, chk_syms,
                   ms_ptr, ms_pair_ptr, ms_a, ms_b):
                ok = 1
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
        else:
            k += 1
    if mode == MODE_COUNT:
        return count
    if mode == MODE_ALL:
        return solutions
    return None


cdef inline int _ok(int k, int[::1] sym,
                    int[::1] chk_ptr, int[::1] chk_item_ptr,
                    int[::1] chk_cells, int[::1] chk_syms,
                    int[::1] ms_ptr, int[::1] ms_pair_ptr,
                    int[::1] ms_a, int[::1] ms_b):
    cdef int c, m, t, match, satisfied
    for c in range(chk_ptr[k], chk_ptr[k + 1]):
        match = 1
        for t in range(chk_item_ptr[c], chk_item_ptr[c + 1]):
            if sym[chk_cells[t]] != chk_syms[t]:
                match = 0
                break
        if match:
            return 0
    for m in range(ms_ptr[k], ms_ptr[k + 1]):
        satisfied = 0
        for t in range(ms_pair_ptr[m], ms_pair_ptr[m + 1]):
            if sym[ms_a[t]] != sym[ms_b[t]]:
                satisfied = 1
                break
        if not satisfied:
            return 0
    return 1
