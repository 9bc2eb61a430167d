import random

import pytest

from corpus import random_domino_rules
from shiftlab.errors import PreconditionError
from shiftlab.grid import PeriodVector
from shiftlab.sft import load_rules
from shiftlab.strip import (automaton_nonempty, enumerate_tori, find_cycle,
                            slice_fiber, torus_is_admissible,
                            two_periodic_search, unslice)

P10 = PeriodVector(1, 0)
P01 = PeriodVector(0, 1)
P11 = PeriodVector(1, 1)
P20 = PeriodVector(2, 0)


def test_slice_full_shift(full_shift_rules):
    auto = slice_fiber(full_shift_rules, P10)
    assert len(auto.bands) == 2
    assert auto.succ == ((0, 1), (0, 1))
    assert automaton_nonempty(auto)


def test_slice_single_tile(data_dir):
    rules = load_rules(data_dir / "single_tile.wang")
    auto = slice_fiber(rules, P10)
    assert len(auto.bands) == 1
    assert auto.succ == ((0,),)


def test_slice_empty_wang(mismatched_wang_rules):
    auto = slice_fiber(mismatched_wang_rules, P10)
    assert not automaton_nonempty(auto)


def _walk_language(auto, length):
    words = set()

    def extend(v, word):
        if len(word) == length:
            words.add(tuple(word))
            return
        for w in auto.succ[v]:
            extend(w, word + [auto.bands[w][-auto.width:]])

    for v in range(len(auto.bands)):
        extend(v, [auto.bands[v][-auto.width:]])
    return words


def test_slice_hconst_rowwise_full_shift(hconst_rules, full_shift_rules):
    # the (1,0) fiber of horizontal constancy is the binary full shift on rows
    a = slice_fiber(hconst_rules, P10)
    b = slice_fiber(full_shift_rules, P10)
    for n in range(1, 5):
        assert _walk_language(a, n) == _walk_language(b, n)


def test_automaton_nonempty_selfloop_and_dag(full_shift_rules):
    auto = slice_fiber(full_shift_rules, P10)
    assert automaton_nonempty(auto)
    from shiftlab.strip import StripAutomaton
    dag = StripAutomaton(period=P10, width=1, shear=0, transposed=False,
                         alphabet=("0", "1"), bands=((0,), (1,)),
                         succ=((1,), ()), height=1)
    assert not automaton_nonempty(dag)


def test_unslice_single_tile(data_dir):
    rules = load_rules(data_dir / "single_tile.wang")
    auto = slice_fiber(rules, P10)
    torus = unslice(auto, [0])
    assert torus.p == P10 and torus.q == P01
    assert torus.symbol_at((3, -5)) == torus.symbol_at((0, 0))
    assert torus_is_admissible(rules, torus)


def test_unslice_stripes(full_shift_rules):
    auto = slice_fiber(full_shift_rules, P10)
    cycle = find_cycle(auto)
    torus = unslice(auto, [0, 1])
    assert torus.q == PeriodVector(0, 2)
    assert torus.symbol_at((0, 0)) != torus.symbol_at((0, 1))
    assert torus.symbol_at((5, 0)) == torus.symbol_at((0, 0))
    assert cycle is not None


def test_unslice_rejects_noncycle(full_shift_rules):
    auto = slice_fiber(full_shift_rules, P10)
    with pytest.raises(PreconditionError):
        unslice(auto, [])


def test_roundtrip_cycle_rows():
    rng = random.Random(73)
    done = 0
    while done < 30:
        rules = random_domino_rules(rng)
        p = rng.choice((P10, P20, P11))
        auto = slice_fiber(rules, p)
        cycle = find_cycle(auto)
        if cycle is None:
            continue
        torus = unslice(auto, cycle)
        # read the sliced rows straight off the torus
        w = auto.width
        for j, v in enumerate(cycle):
            row = tuple(auto.alphabet[s] for s in auto.bands[v][:w])
            got = tuple(torus.symbol_at((i, j)) for i in range(w))
            assert got == row
        done += 1


def test_shift_commutation():
    rng = random.Random(79)
    done = 0
    while done < 20:
        rules = random_domino_rules(rng)
        auto = slice_fiber(rules, P10)
        cycle = find_cycle(auto)
        if cycle is None:
            continue
        torus = unslice(auto, cycle)

        def sliced(config_at, j):
            return tuple(config_at((i, j)) for i in range(auto.width))

        shifted = lambda z: torus.symbol_at((z[0], z[1] + 1))
        for j in range(-3, 4):
            assert sliced(shifted, j) == sliced(torus.symbol_at, j + 1)
        done += 1


def test_two_periodic_search_single_tile(data_dir):
    rules = load_rules(data_dir / "single_tile.wang")
    torus = two_periodic_search(rules, P10, 1)
    assert torus is not None and torus.area == 1


def test_two_periodic_search_empty(mismatched_wang_rules):
    assert two_periodic_search(mismatched_wang_rules, P10, 4) is None


def test_vertical_period_slices_by_transpose(hconst_rules):
    auto = slice_fiber(hconst_rules, P01)
    assert auto.transposed
    assert automaton_nonempty(auto)
    cycle = find_cycle(auto)
    torus = unslice(auto, cycle)
    assert torus_is_admissible(hconst_rules, torus)
    # a point of the vertical fiber is horizontally constant and (0,1)-periodic
    assert torus.symbol_at((0, 0)) == torus.symbol_at((4, 0))
    assert torus.symbol_at((0, 0)) == torus.symbol_at((0, 1))


def test_overlap_of_fibers_is_finite(hconst_rules):
    tori = enumerate_tori(hconst_rules, P10, P01)
    assert len(tori) == 2
    for t in tori:
        assert torus_is_admissible(hconst_rules, t)


def test_negative_period_same_fiber(full_shift_rules):
    a = slice_fiber(full_shift_rules, PeriodVector(-1, 0))
    b = slice_fiber(full_shift_rules, P10)
    assert a.bands == b.bands and a.succ == b.succ


def test_export_text(full_shift_rules):
    auto = slice_fiber(full_shift_rules, P10)
    lines = auto.export_text().splitlines()
    assert len(lines) == len(auto.bands)
    assert lines[0].split("\t") == ["0", "0", "0 1"]


def test_sheared_slice_matches_bruteforce(hconst_rules):
    # a shear stretches folded placements beyond the interaction radius
    p = PeriodVector(1, 2)
    auto = slice_fiber(hconst_rules, p)
    assert auto.height >= 2
    assert automaton_nonempty(auto) \
        == (two_periodic_search(hconst_rules, p, max(1, len(auto.bands)))
            is not None)
    cycle = find_cycle(auto)
    torus = unslice(auto, cycle)
    assert torus_is_admissible(hconst_rules, torus)
