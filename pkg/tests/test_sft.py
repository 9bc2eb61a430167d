import itertools
import random

import pytest

from corpus import random_domino_rules
from shiftlab.errors import BudgetExceededError, ParseError
from shiftlab.gather import PeriodSet
from shiftlab.grid import Ball, Pattern, PeriodVector
from shiftlab.sft import (RuleSet, WangTileSet, compile_wang,
                          count_admissible_square,
                          count_admissible_square_naive, enumerate_admissible,
                          has_concentric_witness, load_rules, parse_rules,
                          pattern_is_admissible)

P10 = PeriodVector(1, 0)
P01 = PeriodVector(0, 1)


def test_compile_wang_single_matching_tile():
    rules = compile_wang(WangTileSet((("c", "c", "c", "c"),)))
    assert rules.forbidden == ()


def test_compile_wang_mismatched_pair_is_empty(mismatched_wang_rules):
    assert len(mismatched_wang_rules.forbidden) == 8
    assert count_admissible_square(mismatched_wang_rules, 2) == 0


def test_compile_wang_forbidden_count():
    # fully distinct colors per side: every one of the 2*t^2 seams mismatches
    tiles = WangTileSet(tuple((f"n{i}", f"e{i}", f"s{i}", f"w{i}")
                              for i in range(3)))
    rules = compile_wang(tiles)
    assert len(rules.forbidden) == 2 * 9


def test_compile_wang_seams_never_mismatch(data_dir):
    rules = load_rules(data_dir / "checkerboard.wang")
    tiles = (("0", "0", "1", "1"), ("1", "1", "0", "0"))
    for ap in enumerate_admissible(rules, 1):
        pat = ap.pattern
        for (x, y) in pat.shape:
            t = tiles[int(pat.at((x, y)))]
            if (x + 1, y) in pat.shape:
                u = tiles[int(pat.at((x + 1, y)))]
                assert t[1] == u[3]
            if (x, y + 1) in pat.shape:
                u = tiles[int(pat.at((x, y + 1)))]
                assert t[0] == u[2]


def test_parse_rules_roundtrip(data_dir):
    rules = load_rules(data_dir / "hconst.rules")
    assert rules.alphabet == ("0", "1")
    assert len(rules.forbidden) == 2
    assert rules.interaction_radius == 1


def test_parse_rules_reports_line_numbers():
    with pytest.raises(ParseError) as err:
        parse_rules("alphabet: a b\nforbid: (0,0)=a (oops)\n", "bad.rules")
    assert err.value.line == 2


def test_parse_rules_unknown_directive():
    with pytest.raises(ParseError) as err:
        parse_rules("alphabet: a\nfrobnicate: 1\n")
    assert err.value.line == 2


def test_parse_rules_wang_exclusive():
    with pytest.raises(ParseError):
        parse_rules("alphabet: a\nwang: a a a a\n")


def test_enumerate_single_symbol():
    rules = RuleSet(("a",), ())
    assert len(list(enumerate_admissible(rules, 1))) == 1


def test_enumerate_full_shift_radius1(full_shift_rules):
    assert len(list(enumerate_admissible(full_shift_rules, 1))) == 512


def test_enumerate_hconst_radius2(hconst_rules):
    pats = list(enumerate_admissible(hconst_rules, 2))
    assert len(pats) == 32
    for ap in pats:
        rows = {}
        for (x, y), sym in ap.pattern.items():
            rows.setdefault(y, set()).add(sym)
        assert all(len(s) == 1 for s in rows.values())


def test_enumerate_budget_error(full_shift_rules):
    with pytest.raises(BudgetExceededError):
        list(enumerate_admissible(full_shift_rules, 2, budget=100))


def test_enumeration_matches_naive_filter():
    rng = random.Random(47)
    for _ in range(50):
        rules = random_domino_rules(rng)
        cells = list(Ball((0, 0), 1).cells())
        naive = []
        for combo in itertools.product(rules.alphabet, repeat=len(cells)):
            pat = Pattern(dict(zip(cells, combo)))
            if pattern_is_admissible(rules, pat):
                naive.append(pat)
        fast = [ap.pattern for ap in enumerate_admissible(rules, 1)]
        assert fast == naive


def test_enumeration_deterministic_order(full_shift_rules):
    a = [ap.pattern for ap in enumerate_admissible(full_shift_rules, 1)]
    b = [ap.pattern for ap in enumerate_admissible(full_shift_rules, 1)]
    assert a == b


def test_witness_one_symbol_none():
    rules = RuleSet(("a",), ())
    got = has_concentric_witness(rules, [(PeriodSet([P10]), 1)])
    assert got is None


def test_witness_full_shift_found(full_shift_rules):
    got = has_concentric_witness(full_shift_rules, [(PeriodSet([P10]), 1)])
    assert got is not None
    pat = got.pattern
    assert any(pat.at(z) != pat.at((z[0] + 1, z[1]))
               for z in Ball((0, 0), 1).cells()
               if (z[0] + 1, z[1]) in pat)


def test_witness_hconst_horizontal_blocked(hconst_rules):
    got = has_concentric_witness(
        hconst_rules, [(PeriodSet([P01]), 1), (PeriodSet([P01, P10]), 5)])
    assert got is None


def test_count_examples(full_shift_rules, hconst_rules):
    one = RuleSet(("a",), ())
    assert all(count_admissible_square(one, n) == 1 for n in range(1, 5))
    assert [count_admissible_square(full_shift_rules, n) for n in (1, 2, 3)] \
        == [2, 16, 512]
    assert [count_admissible_square(hconst_rules, n) for n in range(1, 7)] \
        == [2, 4, 8, 16, 32, 64]


def test_count_matches_bruteforce():
    rng = random.Random(53)
    for _ in range(50):
        rules = random_domino_rules(rng)
        for n in (1, 2, 3):
            assert count_admissible_square(rules, n) \
                == count_admissible_square_naive(rules, n)


def _witness_naive(rules, prefixes):
    outer = prefixes[-1][1]
    for ap in enumerate_admissible(rules, outer):
        ok = True
        for ps, rad in prefixes:
            ball = Ball((0, 0), rad)
            for p in ps:
                if not any(ball.contains((z[0] + p.dx, z[1] + p.dy))
                           and ap.pattern.at(z)
                           != ap.pattern.at((z[0] + p.dx, z[1] + p.dy))
                           for z in ball.cells()):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return ap
    return None


def test_witness_search_matches_naive():
    rng = random.Random(57)
    prefixes = [(PeriodSet([P01]), 1), (PeriodSet([P01, P10]), 2)]
    for _ in range(40):
        rules = random_domino_rules(rng)
        fast = has_concentric_witness(rules, prefixes)
        slow = _witness_naive(rules, prefixes)
        assert (fast is None) == (slow is None)
        if fast is not None:
            assert fast.pattern == slow.pattern  # same enumeration order
