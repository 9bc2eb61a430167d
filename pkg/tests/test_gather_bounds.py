import random

import pytest

from corpus import config_avoiding_some
from shiftlab.errors import PreconditionError
from shiftlab.gather import (BoundTable, PeriodSet, concentric_radius,
                             concentric_radius_for_norm, gather_ball,
                             gather_displacement, gather_pair, lcm_reduce,
                             pair_bound)
from shiftlab.grid import Ball, PeriodVector, colinear

P10 = PeriodVector(1, 0)
P01 = PeriodVector(0, 1)
P11 = PeriodVector(1, 1)


def test_lcm_reduce_merges_colinear():
    got = lcm_reduce([P10, PeriodVector(2, 0), P01])
    assert got.periods == (P01, PeriodVector(2, 0))


def test_lcm_reduce_colinear_multiples():
    got = lcm_reduce([PeriodVector(2, 0), PeriodVector(3, 0)])
    assert got.periods == (PeriodVector(6, 0),)


def test_lcm_reduce_identity_on_noncolinear():
    got = lcm_reduce([P11, P01])
    assert got.periods == (P01, P11)


def test_lcm_reduce_sign_classes():
    got = lcm_reduce([PeriodVector(dx, dy)
                      for dx in (-1, 0, 1) for dy in (-1, 0, 1)
                      if (dx, dy) != (0, 0)])
    assert got.periods == (P01, P10, PeriodVector(1, -1), P11)


def test_lcm_reduce_divisibility():
    rng = random.Random(7)
    for _ in range(100):
        periods = []
        for _ in range(rng.randint(1, 5)):
            while True:
                d = (rng.randint(-4, 4), rng.randint(-4, 4))
                if d != (0, 0):
                    break
            periods.append(PeriodVector(*d))
        reduced = lcm_reduce(periods)
        for i, a in enumerate(reduced):
            for b in reduced.periods[i + 1:]:
                assert not colinear(a, b)
        for p in periods:
            owners = [q for q in reduced if colinear(p, q)]
            assert len(owners) == 1
            q = owners[0]
            # q is an integral multiple of p
            if p.dx != 0:
                k, rem = divmod(q.dx, p.dx)
            else:
                k, rem = divmod(q.dy, p.dy)
            assert rem == 0 and p.scaled(k) in (q, -q)


def test_gather_displacement_base_case():
    assert gather_displacement([P01], 7) == 7


def test_gather_displacement_two_elements_is_pair_bound():
    for r in (0, 1, 3, 6):
        assert gather_displacement([P10, P01], r) == pair_bound(P01, P10, r)


def test_gather_displacement_at_least_r():
    rng = random.Random(11)
    for _ in range(50):
        ps = PeriodSet([P10, P01, P11])
        r = rng.randint(0, 6)
        assert gather_displacement(ps, r) >= r


def test_pair_bound_rejects_colinear():
    with pytest.raises(PreconditionError):
        pair_bound(P10, PeriodVector(3, 0), 2)


def test_pair_bound_monotone_in_r():
    rng = random.Random(13)
    done = 0
    while done < 100:
        a = PeriodVector(rng.randint(-3, 3) or 1, rng.randint(-3, 3))
        b = PeriodVector(rng.randint(-3, 3), rng.randint(-3, 3) or 1)
        if colinear(a, b):
            continue
        assert pair_bound(a, b, 5) >= pair_bound(a, b, 0)
        assert pair_bound(a, b, 6) >= pair_bound(a, b, 5)
        done += 1


def _coincident_center_inputs(rng, p_first, p_last):
    """Configs with a common cell witnessing both periods (centers at r=0)."""
    while True:
        x, _ = config_avoiding_some(rng, min_periods=1,
                                    pool=(p_first, p_last))
        if not (x.avoids(p_first) and x.avoids(p_last)):
            continue
        from shiftlab.grid import is_avoidance
        for z in x.domain_cells():
            if is_avoidance(x, z, p_first) and is_avoidance(x, z, p_last):
                return x, z


def test_pair_bound_contract_coincident_centers():
    rng = random.Random(17)
    bound = pair_bound(P10, P01, 0)
    for _ in range(500):
        x, z = _coincident_center_inputs(rng, P10, P01)
        from shiftlab.grid import Avoidance
        ball_a = Ball(z, P10.norm)
        ball_b = Ball(z, P01.norm)
        out_ball, avmap = gather_pair(x, ball_a, {P10: Avoidance(z, P10)},
                                      ball_b, {P01: Avoidance(z, P01)},
                                      P10, P01)
        moved = max(abs(out_ball.center[0] - z[0]), abs(out_ball.center[1] - z[1]))
        assert moved <= bound


def test_pair_bound_contract_spread_centers():
    rng = random.Random(19)
    r = 3
    bound = pair_bound(P10, P11, r)
    runs = 0
    while runs < 500:
        x, _ = config_avoiding_some(rng, pool=(P10, P11))
        if not (x.avoids(P10) and x.avoids(P11)):
            continue
        ball_a, map_a = gather_ball(x, [P10])
        ball_b, map_b = gather_ball(x, [P11])
        z = ball_a.center
        gap = max(abs(ball_b.center[0] - z[0]), abs(ball_b.center[1] - z[1]))
        if gap > r:
            continue
        out_ball, _ = gather_pair(x, ball_a, map_a, ball_b, map_b, P10, P11)
        moved = max(abs(out_ball.center[0] - z[0]), abs(out_ball.center[1] - z[1]))
        assert moved <= bound
        runs += 1


def test_concentric_radius_examples():
    assert concentric_radius([P01]) == 1
    assert concentric_radius([P10, P01]) == 5
    # unfolded: ||p0|| + displacement({p0}, S) + S with S = 2
    assert concentric_radius([P10, P01]) == 1 + gather_displacement([P01], 2) + 2


def test_concentric_radius_strictly_increasing():
    ps = [P10, P01, P11]
    ordered = PeriodSet(ps)
    values = [concentric_radius(ordered.prefix(i)) for i in range(3)]
    assert values[0] < values[1] < values[2]


def test_norm_radius_identity_and_growth():
    table = BoundTable()
    g1 = concentric_radius_for_norm(1, table)
    assert g1 == concentric_radius(
        lcm_reduce([PeriodVector(dx, dy)
                    for dx in (-1, 0, 1) for dy in (-1, 0, 1)
                    if (dx, dy) != (0, 0)]), table)
    assert g1 >= 1
    with pytest.warns(UserWarning):
        g3 = concentric_radius_for_norm(3, table)
    with pytest.warns(UserWarning):
        g4 = concentric_radius_for_norm(4, table)
    g2 = concentric_radius_for_norm(2, table)
    assert g1 <= g2 <= g3 <= g4
    assert g2 >= 2 and g3 >= 3 and g4 >= 4
