"""Pattern-count growth and a 3D family with unboundedly large smallest
periods.

``complexity_series`` measures log-count growth of square patterns; for a
subshift covered by finitely many periods the count is controlled by the
cells determining a periodic pattern, giving a linear log-count bound that
the series can check against a supplied cover.

``counterexample_window`` builds finite windows of a 3D configuration
family: one vertical line of 1s along z, and a plane of horizontal lines
along x at distance n, the lines repeating with z-step exactly n.  Its
smallest period is (0,0,n), so the family's smallest periods grow without
bound while the local structure never changes.
"""

import math
from dataclasses import dataclass

from .errors import PreconditionError
from .grid import Window3D
from .sft import count_admissible_square


@dataclass(frozen=True)
class ComplexityRow:
    n: int
    count: int
    log2_count: float
    ratio: float  # log2(count) / n^2
    cover_bound: float = None
    within_bound: bool = None


@dataclass(frozen=True)
class ComplexitySeries:
    rows: tuple

    def counts(self):
        return [r.count for r in self.rows]


def complexity_series(rules, ns, cover=None, **kwargs) -> ComplexitySeries:
    """Exact square-pattern counts for each n, with the normalized log-count
    ratio.  With a period cover, each row also checks the determining-cells
    bound log2(count) <= sum_p(|dx|+|dy|) * n * log2(|alphabet|)."""
    ns = list(ns)
    if any(b <= a for a, b in zip(ns, ns[1:])):
        raise PreconditionError("sample sizes must be strictly increasing")
    weight = None
    if cover is not None:
        weight = sum(abs(p.dx) + abs(p.dy) for p in cover)
    rows = []
    for n in ns:
        count = count_admissible_square(rules, n, **kwargs)
        if count <= 0:
            log2 = float("-inf")
        else:
            log2 = _log2_exact(count)
        ratio = log2 / (n * n)
        bound = None
        ok = None
        if weight is not None:
            bound = weight * n * math.log2(len(rules.alphabet))
            ok = log2 <= bound + 1e-9
        rows.append(ComplexityRow(n=n, count=count, log2_count=log2,
                                  ratio=ratio, cover_bound=bound, within_bound=ok))
    return ComplexitySeries(rows=tuple(rows))


def _log2_exact(count):
    # big ints overflow float conversion; split off the bit length first
    bits = count.bit_length()
    if bits <= 500:
        return math.log2(count)
    shift = bits - 500
    return shift + math.log2(count >> shift)


def counterexample_window(n: int, side: int) -> Window3D:
    """Window [-side, side]^3 of the line-and-plane configuration: cells
    (0, 0, z) are 1 for all z (the vertical line), cells (x, -n, z) are 1
    for z = 0 mod n (the plane of horizontal lines), everything else 0."""
    if n < 1:
        raise PreconditionError("n must be >= 1")
    if side < 3 * n:
        raise PreconditionError("side must be at least 3n to show the structure")
    w = Window3D(side)
    for z in range(-side, side + 1):
        w.set((0, 0, z), 1)
        if z % n == 0:
            for x in range(-side, side + 1):
                w.set((x, -n, z), 1)
    return w


def window_structure_ok(w: Window3D, n: int) -> bool:
    """Local-rule check of a window: 1s form full lines along x or z only,
    at most one z-line, and the x-lines repeat with z-step exactly n."""
    s = w.side
    z_lines = set()
    x_lines = set()
    for (x, y, z) in w.cells():
        if w[(x, y, z)] != 1:
            continue
        on_z = all(w[(x, y, zz)] == 1 for zz in range(-s, s + 1))
        on_x = all(w[(xx, y, z)] == 1 for xx in range(-s, s + 1))
        if not on_z and not on_x:
            return False
        if on_z and not on_x:
            z_lines.add((x, y))
        if on_x:
            x_lines.add((y, z))
    if len(z_lines) > 1:
        return False
    if x_lines:
        ys = {y for y, _ in x_lines}
        if len(ys) > 1:
            return False
        zs = sorted(z for _, z in x_lines)
        if len(zs) > 1:
            steps = {b - a for a, b in zip(zs, zs[1:])}
            if steps != {n}:
                return False
    return True


def _vectors_3d(max_norm):
    out = []
    for dx in range(-max_norm, max_norm + 1):
        for dy in range(-max_norm, max_norm + 1):
            for dz in range(-max_norm, max_norm + 1):
                q = (dx, dy, dz)
                if q == (0, 0, 0):
                    continue
                if max(abs(dx), abs(dy), abs(dz)) <= max_norm:
                    out.append(q)
    out.sort(key=lambda q: (max(abs(c) for c in q), sum(abs(c) for c in q), q))
    return out


@dataclass(frozen=True)
class MinPeriodReport:
    n: int
    side: int
    target_is_period: bool        # no in-window avoidance of (0,0,n)
    avoided: dict                 # q -> witness base cell
    inconclusive: tuple           # q with no in-window avoidance found
    structure_ok: bool
    matches_generator: bool


def verify_min_period(w: Window3D, n: int) -> MinPeriodReport:
    """Scan every vector strictly shorter than n for an in-window avoidance
    and confirm (0, 0, n) has none.  Vectors whose avoidances would fall
    outside the window are reported inconclusive, not as errors."""
    if n < 1:
        raise PreconditionError("n must be >= 1")
    s = w.side
    avoided = {}
    inconclusive = []
    for q in _vectors_3d(n - 1) if n > 1 else []:
        base = _find_avoidance_3d(w, q)
        if base is None:
            inconclusive.append(q)
        else:
            avoided[q] = base
    target_ok = _find_avoidance_3d(w, (0, 0, n)) is None
    structure = window_structure_ok(w, n)
    has_ones = any(w[c] == 1 for c in w.cells())
    matches = structure and has_ones and target_ok and not inconclusive
    return MinPeriodReport(n=n, side=s, target_is_period=target_ok,
                           avoided=avoided, inconclusive=tuple(inconclusive),
                           structure_ok=structure, matches_generator=matches)


def _find_avoidance_3d(w, q):
    s = w.side
    for z in range(-s, s + 1):
        if not -s <= z + q[2] <= s:
            continue
        for y in range(-s, s + 1):
            if not -s <= y + q[1] <= s:
                continue
            for x in range(-s, s + 1):
                if not -s <= x + q[0] <= s:
                    continue
                if w[(x, y, z)] != w[(x + q[0], y + q[1], z + q[2])]:
                    return (x, y, z)
    return None
