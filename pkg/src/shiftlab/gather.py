"""Avoidance gathering.

A configuration that avoids a set of periods must exhibit, for every avoided
period, a witnessing pair of differing cells.  The functions here relocate
such witnesses into small balls:

* ``lcm_reduce``     -- collapse colinear periods to a single common multiple,
* ``pair_bound``     -- how far the merge of two witness balls can move,
* ``gather_displacement`` -- the same bound iterated over a whole period set,
* ``concentric_radius``   -- radii of nested balls that hold witnesses for
  every prefix of a period set around one common center,
* ``gather_pair`` / ``gather_ball`` / ``gather_near`` / ``concentric`` --
  the constructive algorithms realizing those bounds on actual
  configurations, with every returned witness re-verified.

Returned avoidances always lie with *both* endpoints inside the stated
ball; this is what makes witness maps survive the translation steps.
"""

from math import gcd

import warnings

from .errors import InternalCheckError, PreconditionError
from .grid import (Avoidance, Ball, PeriodVector, canonical_key, colinear,
                   is_avoidance, normalize_sign)


class PeriodSet:
    """An ordered, duplicate-free set of periods in canonical order."""

    __slots__ = ("periods",)

    def __init__(self, periods):
        seen = []
        for p in sorted(set(periods), key=canonical_key):
            seen.append(p)
        if not seen:
            raise PreconditionError("period set must be nonempty")
        object.__setattr__(self, "periods", tuple(seen))

    def __iter__(self):
        return iter(self.periods)

    def __len__(self):
        return len(self.periods)

    def __getitem__(self, i):
        return self.periods[i]

    def __eq__(self, other):
        return isinstance(other, PeriodSet) and self.periods == other.periods

    def __hash__(self):
        return hash(self.periods)

    def __repr__(self):
        return "PeriodSet(" + " ".join(map(str, self.periods)) + ")"

    @property
    def norm_sum(self):
        return sum(p.norm for p in self.periods)

    def prefix(self, i):
        """First i+1 periods as a new set."""
        return PeriodSet(self.periods[:i + 1])

    def require_noncolinear(self):
        ps = self.periods
        for i in range(len(ps)):
            for j in range(i + 1, len(ps)):
                if colinear(ps[i], ps[j]):
                    raise PreconditionError(
                        f"periods {ps[i]} and {ps[j]} are colinear")
        return self


def _primitive(p: PeriodVector):
    g = gcd(abs(p.dx), abs(p.dy))
    return normalize_sign(PeriodVector(p.dx // g, p.dy // g)), g


def lcm_reduce(periods) -> PeriodSet:
    """Replace each colinearity class by the shortest vector every class
    member divides integrally, sign-normalized to be lexicographically
    positive.  The result is pairwise non-colinear."""
    ps = PeriodSet(periods)
    classes = {}
    for p in ps:
        prim, k = _primitive(p)
        m = classes.get(prim, 1)
        classes[prim] = m * k // gcd(m, k)
    return PeriodSet(prim.scaled(m) for prim, m in classes.items())


def _halfround(num, den):
    """floor(num/den + 1/2), exactly, for a rational with nonzero den."""
    if den < 0:
        num, den = -num, -den
    return (2 * num + den) // (2 * den)


def _box_shift_norm(x0, x1, y0, y1, vx, vy):
    # max sup-norm of e + v over the box [x0,x1] x [y0,y1]
    mx = max(abs(x0 + vx), abs(x1 + vx))
    my = max(abs(y0 + vy), abs(y1 + vy))
    return max(mx, my)


# above this radius pair_bound switches from the exact scan to a closed-form
# overestimate; both are sound and the switch preserves monotonicity in r
_EXACT_SCAN_LIMIT = 48

# warn when concentric_radius_for_norm is asked for a norm this large; the
# reduced period sets and the resulting radii grow very fast
NORM_RADIUS_WARN_ABOVE = 2


class BoundTable:
    """Memo store for the displacement and radius bounds."""

    def __init__(self):
        self.pair = {}
        self.displacement = {}
        self.radius = {}

    def clear(self):
        self.pair.clear()
        self.displacement.clear()
        self.radius.clear()


_TABLE = BoundTable()


def _steps(p_first: PeriodVector, p_last: PeriodVector, d):
    """Translation counts (i for the p_last walk, j for the p_first walk)
    that bring two centers at offset d = center_b - center_a as close as the
    non-colinearity allows."""
    det = p_last.dx * p_first.dy - p_last.dy * p_first.dx
    i = _halfround(d[0] * p_first.dy - d[1] * p_first.dx, det)
    j = _halfround(-(p_last.dx * d[1] - p_last.dy * d[0]), det)
    return i, j


def pair_bound(p_first: PeriodVector, p_last: PeriodVector, r: int,
               table: BoundTable = None) -> int:
    """Upper bound on the distance of the merged witness ball's center from
    any point z containing both input centers within distance r.

    For small r this maximizes the exact outcome of the deterministic
    translation counts used by gather_pair over all center offsets; for
    large r a closed-form overestimate is used.  Monotone nondecreasing in
    r, and always >= r."""
    if r < 0:
        raise PreconditionError("radius must be nonnegative")
    if colinear(p_first, p_last):
        raise PreconditionError(
            f"periods {p_first} and {p_last} are colinear")
    table = table or _TABLE
    key = (p_first, p_last, r)
    got = table.pair.get(key)
    if got is not None:
        return got
    if r > _EXACT_SCAN_LIMIT:
        det = abs(p_last.dx * p_first.dy - p_last.dy * p_first.dx)
        i_max = _halfround(2 * r * (abs(p_first.dx) + abs(p_first.dy)), det)
        j_max = _halfround(2 * r * (abs(p_last.dx) + abs(p_last.dy)), det)
        best = r + max(i_max * p_last.norm, j_max * p_first.norm)
    else:
        best = r
        for dx in range(-2 * r, 2 * r + 1):
            for dy in range(-2 * r, 2 * r + 1):
                i, j = _steps(p_first, p_last, (dx, dy))
                a_val = _box_shift_norm(
                    max(-r, -r - dx), min(r, r - dx),
                    max(-r, -r - dy), min(r, r - dy),
                    i * p_last.dx, i * p_last.dy)
                b_val = _box_shift_norm(
                    max(-r, -r + dx), min(r, r + dx),
                    max(-r, -r + dy), min(r, r + dy),
                    j * p_first.dx, j * p_first.dy)
                best = max(best, a_val, b_val)
    table.pair[key] = best
    return best


def gather_displacement(periods, r: int, table: BoundTable = None) -> int:
    """Recursive displacement bound for re-gathering a pairwise non-colinear
    period set whose witnesses all sit in a ball of radius r: a singleton
    stays put (bound r); otherwise merge the bounds for the set without its
    first and without its last element."""
    ps = PeriodSet(periods).require_noncolinear()
    table = table or _TABLE
    key = (ps.periods, r)
    got = table.displacement.get(key)
    if got is not None:
        return got
    if len(ps) == 1:
        val = r
    else:
        inner = max(
            gather_displacement(ps.periods[:-1], r, table),
            gather_displacement(ps.periods[1:], r, table),
        )
        val = pair_bound(ps[0], ps[len(ps) - 1], inner, table)
    table.displacement[key] = val
    return val


def concentric_radius(periods, table: BoundTable = None) -> int:
    """Radius of the ball that holds witnesses for every period of the set
    around the common center produced by ``concentric``.  Defined by the
    recursion over canonical prefixes; strictly increasing along them.
    Colinear members are allowed (they are collapsed prefix by prefix)."""
    ps = PeriodSet(periods)
    table = table or _TABLE
    got = table.radius.get(ps.periods)
    if got is not None:
        return got
    if len(ps) == 1:
        val = ps[0].norm
    else:
        prev = concentric_radius(ps.periods[:-1], table)
        reduced_prev = lcm_reduce(ps.periods[:-1])
        reduced_cur = lcm_reduce(ps.periods)
        s = reduced_cur.norm_sum
        val = prev + gather_displacement(reduced_prev, s, table) + s
    table.radius[ps.periods] = val
    return val


def concentric_radius_for_norm(n: int, table: BoundTable = None) -> int:
    """concentric_radius of the reduced set of all periods of norm <= n."""
    if n < 1:
        raise PreconditionError("norm bound must be >= 1")
    if n > NORM_RADIUS_WARN_ABOVE:
        warnings.warn(
            f"concentric_radius_for_norm({n}): reduced period set is large; "
            "the radius grows superpolynomially", stacklevel=2)
    vectors = [PeriodVector(dx, dy)
               for dx in range(-n, n + 1) for dy in range(-n, n + 1)
               if (dx, dy) != (0, 0)]
    return concentric_radius(lcm_reduce(vectors), table)


def _verify_map(x, ball, avmap, where):
    for p, av in avmap.items():
        if av.p != p:
            raise PreconditionError(f"{where}: map key {p} holds witness for {av.p}")
        if not is_avoidance(x, av.z, p):
            raise PreconditionError(f"{where}: claimed avoidance of {p} at {av.z} fails")
        if not ball.contains_pair(av):
            raise PreconditionError(f"{where}: avoidance of {p} not inside ball")


def _translate_map(avmap, vx, vy):
    return {p: Avoidance((av.z[0] + vx, av.z[1] + vy), p)
            for p, av in avmap.items()}


def _walk(x, ball, avmap, step: PeriodVector, count: int):
    """Translate a witness ball by `count` copies of `step`, comparing
    contents after each move.  Returns either ("moved", ball, map) after a
    clean walk, or ("found", ball, avoidance, map) when some move uncovers
    an avoidance of `step` itself."""
    sgn = 1 if count >= 0 else -1
    vec = PeriodVector(step.dx * sgn, step.dy * sgn)
    cur = ball
    cur_map = avmap
    for _ in range(abs(count)):
        diff = None
        for w in cur.cells():
            if x.symbol_at(w) != x.symbol_at(vec.shift(w)):
                diff = w
                break
        if diff is not None:
            if sgn > 0:
                found = Avoidance(diff, step)
            else:
                found = Avoidance(vec.shift(diff), step)
            out_ball = Ball(cur.center, cur.radius + step.norm)
            return "found", out_ball, found, cur_map
        cur = Ball(vec.shift(cur.center), cur.radius)
        cur_map = _translate_map(cur_map, vec.dx, vec.dy)
    return "moved", cur, None, cur_map


def gather_pair(x, ball_a, avoid_a, ball_b, avoid_b,
                p_first: PeriodVector, p_last: PeriodVector):
    """Merge two witness balls into one holding witnesses for every period.

    ball_a must carry verified avoidances of all periods except p_last,
    ball_b of all except p_first.  Both balls are walked toward each other
    (ball_a in steps of p_last, ball_b in steps of p_first); a content
    change during a walk hands over the missing witness directly, otherwise
    the translated balls end up close enough to be enclosed together.
    Every returned avoidance is re-verified.
    """
    if colinear(p_first, p_last):
        raise PreconditionError("gather_pair needs non-colinear periods")
    all_p = set(avoid_a) | {p_last}
    if set(avoid_b) | {p_first} != all_p or p_last in avoid_a or p_first in avoid_b:
        raise PreconditionError("witness maps do not cover the expected periods")
    _verify_map(x, ball_a, avoid_a, "gather_pair/a")
    _verify_map(x, ball_b, avoid_b, "gather_pair/b")

    d = (ball_b.center[0] - ball_a.center[0],
         ball_b.center[1] - ball_a.center[1])
    i_steps, j_steps = _steps(p_first, p_last, d)

    state, cur_a, found, map_a = _walk(x, ball_a, avoid_a, p_last, i_steps)
    if state == "found":
        out = dict(map_a)
        out[p_last] = found
        _check_result(x, cur_a, out, all_p)
        return cur_a, out

    state, cur_b, found, map_b = _walk(x, ball_b, avoid_b, p_first, j_steps)
    if state == "found":
        out = dict(map_b)
        out[p_first] = found
        _check_result(x, cur_b, out, all_p)
        return cur_b, out

    gap = max(abs(cur_a.center[0] - cur_b.center[0]),
              abs(cur_a.center[1] - cur_b.center[1]))
    if 2 * gap > p_first.norm + p_last.norm:
        raise InternalCheckError("translated centers did not meet")
    final = Ball(cur_b.center, max(cur_b.radius, cur_a.radius + gap))
    out = dict(map_b)
    out.update(map_a)
    out[p_last] = map_b[p_last]
    _check_result(x, final, out, all_p)
    return final, out


def _check_result(x, ball, avmap, expected):
    if set(avmap) != expected:
        raise InternalCheckError("gathered map does not cover the period set")
    for p, av in avmap.items():
        if not is_avoidance(x, av.z, p) or not ball.contains_pair(av):
            raise InternalCheckError(f"gathered avoidance of {p} fails verification")


def _require_avoids(x, ps: PeriodSet):
    for p in ps:
        if not x.avoids(p):
            raise PreconditionError(f"period {p} is not avoided by the configuration")


def gather_ball(x, periods):
    """A ball of radius at most the norm-sum of the (pairwise non-colinear)
    period set, containing a verified avoidance of every period."""
    ps = PeriodSet(periods).require_noncolinear()
    _require_avoids(x, ps)
    ball, avmap = _gather(x, ps.periods)
    if ball.radius > ps.norm_sum:
        raise InternalCheckError("gathered ball exceeds the norm-sum radius")
    return ball, avmap


def _gather(x, periods):
    if len(periods) == 1:
        p = periods[0]
        av = x.find_avoidance(p)
        return Ball(av.z, p.norm), {p: av}
    ball_a, map_a = _gather(x, periods[:-1])
    ball_b, map_b = _gather(x, periods[1:])
    return gather_pair(x, ball_a, map_a, ball_b, map_b,
                       periods[0], periods[-1])


def _find_pair_in(x, ball, p):
    for z in ball.cells():
        if ball.contains((z[0] + p.dx, z[1] + p.dy)) and is_avoidance(x, z, p):
            return Avoidance(z, p)
    return None


def gather_near(x, periods, known: Ball):
    """Like gather_ball, but anchored: witnesses for every period are known
    to sit inside `known`, and the output ball's center stays within
    gather_displacement(periods, known.radius) of known.center."""
    ps = PeriodSet(periods).require_noncolinear()
    for p in ps:
        if _find_pair_in(x, known, p) is None:
            raise PreconditionError(f"no avoidance of {p} inside the known ball")
    ball, avmap = _gather_near(x, ps.periods, known)
    bound = gather_displacement(ps, known.radius)
    moved = max(abs(ball.center[0] - known.center[0]),
                abs(ball.center[1] - known.center[1]))
    if moved > bound:
        raise InternalCheckError("gather_near moved farther than its bound")
    return ball, avmap


def _gather_near(x, periods, known):
    if len(periods) == 1:
        p = periods[0]
        av = _find_pair_in(x, known, p)
        return Ball(av.z, p.norm), {p: av}
    ball_a, map_a = _gather_near(x, periods[:-1], known)
    ball_b, map_b = _gather_near(x, periods[1:], known)
    return gather_pair(x, ball_a, map_a, ball_b, map_b,
                       periods[0], periods[-1])


def avoidance_from_multiple(x, av: Avoidance, q: PeriodVector) -> Avoidance:
    """Given a verified avoidance of an integer multiple M*q, return an
    avoidance of q among the intermediate pairs (z + m*q, z + (m+1)*q); all
    of them lie on the segment between the endpoints of the input pair."""
    p = av.p
    if q.dx != 0:
        m_total, rem = divmod(p.dx, q.dx)
    else:
        m_total, rem = divmod(p.dy, q.dy)
    if rem != 0 or q.scaled(m_total) != p or m_total < 1:
        raise PreconditionError(f"{p} is not a positive multiple of {q}")
    for m in range(m_total):
        z = (av.z[0] + m * q.dx, av.z[1] + m * q.dy)
        if is_avoidance(x, z, q):
            return Avoidance(z, q)
    raise InternalCheckError("multiple avoidance produced no base avoidance")


def concentric(x, periods, seed: Ball):
    """Organize witnesses in nested balls around one center.

    `seed` must contain verified avoidances of every period of the reduced
    set (as produced by gather_ball on lcm_reduce(periods)).  Returns the
    common center z' and, for every canonical prefix of the period set, the
    ball B(z', concentric_radius(prefix)) together with a verified
    avoidance of each prefix member inside it.
    """
    ps = PeriodSet(periods)
    n = len(ps) - 1
    reduced_full = lcm_reduce(ps)
    if seed.radius > reduced_full.norm_sum:
        raise PreconditionError("seed ball larger than the reduced norm-sum")
    for q in reduced_full:
        if _find_pair_in(x, seed, q) is None:
            raise PreconditionError(f"seed ball lacks an avoidance of {q}")

    # Walk prefixes downward, re-gathering into ever smaller balls.  Each
    # smaller reduced set is witnessed inside the current ball: a member
    # missing from the current reduced set has an integer multiple there,
    # and avoidance_from_multiple turns the multiple's witness pair into one
    # for the base on the segment between its endpoints, hence in the same
    # ball.  gather_near's scan therefore always succeeds.
    cur = seed
    for i in range(n, 0, -1):
        cur, _ = gather_near(x, lcm_reduce(ps.periods[:i]), cur)
    center = cur.center

    out = []
    for i in range(n + 1):
        radius = concentric_radius(ps.prefix(i))
        ball = Ball(center, radius)
        avmap = {}
        for p in ps.prefix(i):
            av = _find_pair_in(x, ball, p)
            if av is None:
                raise InternalCheckError(
                    f"prefix ball of radius {radius} lacks an avoidance of {p}")
            avmap[p] = av
        out.append((i, ball, avmap))

    moved = max(abs(center[0] - seed.center[0]),
                abs(center[1] - seed.center[1]))
    if moved > concentric_radius(ps):
        raise InternalCheckError("concentric center moved farther than its bound")
    return center, out
