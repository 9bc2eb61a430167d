import random

import pytest

from corpus import random_domino_rules
from shiftlab.classify import (aperiodic_semidecide, classify,
                               enumerate_periods, periodic_search, stage_data)
from shiftlab.errors import PreconditionError
from shiftlab.gather import PeriodSet
from shiftlab.grid import Pattern, PeriodVector
from shiftlab.sft import load_rules
from shiftlab.strip import (automaton_nonempty, extension_decide,
                            slice_fiber, two_periodic_search)

P10 = PeriodVector(1, 0)
P01 = PeriodVector(0, 1)


def test_enumeration_order():
    assert [str(p) for p in enumerate_periods(count=6)] \
        == ["(0,1)", "(1,0)", "(1,-1)", "(1,1)", "(0,2)", "(2,0)"]
    assert [str(p) for p in enumerate_periods(max_norm=1)] \
        == ["(0,1)", "(1,0)", "(1,-1)", "(1,1)"]


def test_stage_radii():
    periods, radii = stage_data(1)
    assert [str(p) for p in periods] == ["(0,1)", "(1,0)"]
    assert radii == [1, 5]


def test_semidecide_one_symbol(one_symbol_rules):
    v = aperiodic_semidecide(one_symbol_rules, 2)
    assert v.kind == "no-aperiodic-point" and v.step == 1


def test_semidecide_hconst(hconst_rules):
    v = aperiodic_semidecide(hconst_rules, 2)
    assert v.kind == "no-aperiodic-point"
    assert v.step == 1
    assert v.prefix_radii == (1, 5)
    assert P10 in v.prefix_periods


def test_semidecide_full_shift(full_shift_rules):
    v = aperiodic_semidecide(full_shift_rules, 2)
    assert v.kind == "aperiodic-evidence"
    assert v.max_step == 2
    assert sorted(v.witnesses) == [1, 2]


def test_semidecide_empty(mismatched_wang_rules):
    v = aperiodic_semidecide(mismatched_wang_rules, 2)
    assert v.kind == "empty"


def test_semidecide_radius_cap(full_shift_rules):
    v = aperiodic_semidecide(full_shift_rules, 2, radius_cap=3)
    assert v.kind == "budget-exhausted" and v.budget_kind == "radius-cap"


def test_semidecide_budget_independence(hconst_rules):
    a = aperiodic_semidecide(hconst_rules, 2, node_budget=10 ** 6)
    b = aperiodic_semidecide(hconst_rules, 2, node_budget=10 ** 8)
    assert a == b


def test_periodic_search_single_tile(data_dir):
    rules = load_rules(data_dir / "single_tile.wang")
    torus = periodic_search(rules)
    assert torus is not None and torus.area == 1


def test_periodic_search_empty(mismatched_wang_rules):
    assert periodic_search(mismatched_wang_rules, budget=4) is None


def test_periodic_search_checkerboard(data_dir):
    rules = load_rules(data_dir / "checkerboard.wang")
    torus = periodic_search(rules)
    assert torus is not None and torus.area == 2


def test_classify_one_symbol(one_symbol_rules):
    r = classify(one_symbol_rules, nmax=2)
    assert r.kind == "all-points-periodic"
    assert P10 in set(r.cover.periods)
    assert r.overlaps and all(len(t) == 1 for t in r.overlaps.values())
    assert r.cover.certified


def test_classify_hconst(hconst_rules):
    r = classify(hconst_rules, nmax=2)
    assert r.kind == "all-points-periodic"
    assert P10 in set(r.cover.periods)
    for p in r.cover.periods:
        # certificates are genuine cycles of the fiber automata
        auto = r.fiber_automata[p]
        cyc = r.cover.certificates[p]
        for t, v in enumerate(cyc):
            assert cyc[(t + 1) % len(cyc)] in auto.succ[v]


def test_classify_empty(mismatched_wang_rules):
    r = classify(mismatched_wang_rules, nmax=1)
    assert r.kind == "empty"


def test_classify_full_shift(full_shift_rules):
    r = classify(full_shift_rules, nmax=2)
    assert r.kind == "aperiodic-evidence"
    assert r.periodic_witness is not None


def test_soundness_on_forced_period(hconst_rules):
    # horizontal constancy forces (1,0): halting step covers its norm and
    # every torus the periodic search can find has (1,0) as a period
    v = aperiodic_semidecide(hconst_rules, 2)
    assert P10.norm <= v.step
    torus = periodic_search(hconst_rules)
    for z in [(0, 0), (1, 2), (-3, 1)]:
        assert torus.symbol_at(z) == torus.symbol_at((z[0] + 1, z[1]))


def test_witnesses_reverify(full_shift_rules):
    from shiftlab.classify import verify_witness
    from shiftlab.gather import PeriodSet
    v = aperiodic_semidecide(full_shift_rules, 2)
    periods, radii = stage_data(2)
    for n, wit in v.witnesses.items():
        prefixes = [(PeriodSet(periods[:i + 1]), radii[i]) for i in range(n + 1)]
        verify_witness(full_shift_rules, wit, prefixes)


def test_extension_decide_requires_certificate(hconst_rules):
    w = Pattern({(0, 0): "0"})
    with pytest.raises(PreconditionError):
        extension_decide(hconst_rules, PeriodSet([P10]), w)


def test_extension_decide_examples(hconst_rules, one_symbol_rules):
    cover_h = classify(hconst_rules, nmax=2).cover
    assert extension_decide(hconst_rules, cover_h, Pattern({(0, 0): "0"}))
    assert not extension_decide(hconst_rules, cover_h,
                                Pattern({(0, 0): "0", (1, 0): "1"}))
    assert extension_decide(hconst_rules, cover_h,
                            Pattern({(0, 0): "0", (0, 1): "1"}))
    cover_1 = classify(one_symbol_rules, nmax=2).cover
    assert extension_decide(one_symbol_rules, cover_1,
                            Pattern({(0, 0): "a", (2, 3): "a"}))


def test_extension_decide_larger_window(hconst_rules):
    cover = classify(hconst_rules, nmax=2).cover
    w = Pattern({(x, y): ("0" if y % 2 == 0 else "1")
                 for x in range(3) for y in range(3)})
    assert extension_decide(hconst_rules, cover, w)
    w_bad = Pattern({(0, 0): "0", (1, 1): "1", (2, 0): "1"})
    assert not extension_decide(hconst_rules, cover, w_bad)


def test_cover_implies_linear_log_counts(hconst_rules):
    # a certified cover bounds pattern growth: log-counts stay linear in n
    from shiftlab.analysis import complexity_series
    cover = classify(hconst_rules, nmax=2).cover
    series = complexity_series(hconst_rules, range(1, 6), cover=cover.periods)
    assert all(row.within_bound for row in series.rows)


def test_automaton_agrees_with_bruteforce_quick():
    rng = random.Random(83)
    done = 0
    while done < 25:
        rules = random_domino_rules(rng)
        p = rng.choice((P10, PeriodVector(2, 0), PeriodVector(1, 1)))
        auto = slice_fiber(rules, p)
        nonempty = automaton_nonempty(auto)
        hmax = max(1, len(auto.bands))
        found = two_periodic_search(rules, p, hmax) is not None
        assert nonempty == found
        done += 1
