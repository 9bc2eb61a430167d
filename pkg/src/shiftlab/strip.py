"""Slicing a periodic fiber of a 2D SFT into a one-dimensional SFT.

A configuration with period p = (p0, p1), p0 > 0, is determined by its
values on the strip of columns [0, p0); reading that strip row by row gives
a sequence over the alphabet of width-p0 rows.  The set of such sequences
is a 1D SFT presented here as a band automaton: vertices are admissible
stacks of consecutive rows, edges extend a stack by one row.  Bi-infinite
walks correspond exactly to the period-p configurations.

Periods colinear with (0,1) are handled by exchanging the coordinate roles
before slicing (an extension of the column construction; the fiber is the
same).
"""

from dataclasses import dataclass, field

from . import kernel
from .errors import (BudgetExceededError, InternalCheckError,
                     PreconditionError)
from .grid import Pattern, PeriodicConfig, PeriodVector

DEFAULT_BAND_CAP = 50_000


@dataclass(frozen=True)
class StripAutomaton:
    """Band-graph presentation of the sliced fiber.

    Bands are assignments of a width x height block of the strip, stored as
    tuples of symbol indices (row-major, height rows of width symbols).
    Edge u -> v means v's first height-1 rows equal u's last ones and their
    union contains no forbidden pattern under the period wraparound.
    """

    period: PeriodVector       # the original, unnormalized period
    width: int                 # p0 after normalization
    shear: int                 # p1 after normalization
    transposed: bool
    alphabet: tuple
    bands: tuple               # tuple of band tuples
    succ: tuple                # per band, sorted tuple of successor indices
    height: int

    def band_rows(self, i):
        b = self.bands[i]
        w = self.width
        return [b[r * w:(r + 1) * w] for r in range(self.height)]

    @property
    def n_edges(self):
        return sum(len(s) for s in self.succ)

    def export_text(self):
        """Plain adjacency dump: band id, emitted row, successor ids."""
        lines = []
        for i in range(len(self.bands)):
            row = ",".join(self.alphabet[s]
                           for s in self.bands[i][-self.width:])
            succs = " ".join(str(j) for j in self.succ[i])
            lines.append(f"{i}\t{row}\t{succs}")
        return "\n".join(lines) + "\n"


def _transpose_rules(rules):
    from .sft import RuleSet
    flipped = tuple(Pattern({(dy, dx): sym for (dx, dy), sym in pat.items()})
                    for pat in rules.forbidden)
    return RuleSet(rules.alphabet, flipped)


def _normalize(rules, p: PeriodVector):
    transposed = False
    if p.dx == 0:
        transposed = True
        rules = _transpose_rules(rules)
        q = PeriodVector(p.dy, 0)
    else:
        q = p
    if q.dx < 0:
        q = -q
    return rules, q, transposed


def _reduced_placements(rules, width, shear):
    """Each forbidden pattern at each anchor column, folded into the strip.
    Cells (i, j) and (i + width, j + shear) are identified.  Placements
    whose folded cells collide with conflicting symbols can never occur and
    are dropped; consistent collisions are merged."""
    placements = []
    for pat in rules.forbidden:
        items = sorted(pat.items())
        for i0 in range(width):
            folded = {}
            ok = True
            for (dx, dy), sym in items:
                col = i0 + dx
                wraps = col // width
                cell = (col - wraps * width, dy - wraps * shear)
                idx = rules.symbol_index(sym)
                if folded.get(cell, idx) != idx:
                    ok = False
                    break
                folded[cell] = idx
            if not ok:
                continue
            rows = [c[1] for c in folded]
            lo = min(rows)
            placements.append({(c, r - lo): s for (c, r), s in folded.items()})
    return placements


def slice_fiber(rules, p: PeriodVector, band_cap=DEFAULT_BAND_CAP,
                budget=kernel.DEFAULT_NODE_BUDGET) -> StripAutomaton:
    """Automaton whose bi-infinite walks are the period-p points of the SFT."""
    norm_rules, q, transposed = _normalize(rules, p)
    width, shear = q.dx, q.dy
    placements = _reduced_placements(norm_rules, width, shear)
    spans = [max(r for _, r in pl) for pl in placements] or [0]
    height = max(1, max(spans))

    in_band = []   # span <= height-1: checked inside every band position
    on_edge = []   # span == height: checked on the (height+1)-row union
    for pl in placements:
        span = max(r for _, r in pl)
        if span <= height - 1:
            in_band.append(pl)
        else:
            on_edge.append(pl)

    n_syms = len(norm_rules.alphabet)
    cells = [(c, r) for r in range(height) for c in range(width)]
    index = {z: i for i, z in enumerate(cells)}
    checks = []
    for pl in in_band:
        span = max(r for _, r in pl)
        for off in range(height - span):
            placed = sorted((index[(c, r + off)], s) for (c, r), s in pl.items())
            checks.append((tuple(i for i, _ in placed), tuple(s for _, s in placed)))
    problem = kernel.build_problem(len(cells), n_syms, checks)
    bands = [tuple(sol) for sol in kernel.all_solutions(problem, budget)]
    if len(bands) > band_cap:
        raise BudgetExceededError("band-cap", band_cap, "slice_fiber")

    w = width
    by_prefix = {}
    for j, band in enumerate(bands):
        by_prefix.setdefault(band[:w * (height - 1)] if height > 1 else (), []).append(j)

    succ = []
    for band in bands:
        overlap = band[w:] if height > 1 else ()
        nxt = []
        for j in by_prefix.get(overlap, []):
            union = band + bands[j][w * (height - 1):]
            if _union_ok(union, on_edge, w):
                nxt.append(j)
        succ.append(tuple(nxt))
    return StripAutomaton(period=p, width=width, shear=shear,
                          transposed=transposed, alphabet=norm_rules.alphabet,
                          bands=tuple(bands), succ=tuple(succ), height=height)


def _union_ok(union, on_edge, width):
    for pl in on_edge:
        if all(union[r * width + c] == s for (c, r), s in pl.items()):
            return False
    return True


def find_cycle(a: StripAutomaton):
    """Some cycle of the band graph as a vertex list, or None.  Iterative
    depth-first search with a gray/black coloring; deterministic."""
    color = [0] * len(a.bands)  # 0 white, 1 on stack, 2 done
    for root in range(len(a.bands)):
        if color[root]:
            continue
        stack = [(root, iter(a.succ[root]))]
        path = [root]
        color[root] = 1
        while stack:
            node, it = stack[-1]
            advanced = False
            for nxt in it:
                if color[nxt] == 1:
                    return path[path.index(nxt):]
                if color[nxt] == 0:
                    color[nxt] = 1
                    stack.append((nxt, iter(a.succ[nxt])))
                    path.append(nxt)
                    advanced = True
                    break
            if not advanced:
                color[node] = 2
                stack.pop()
                path.pop()
    return None


def automaton_nonempty(a: StripAutomaton) -> bool:
    """True iff the automaton carries a bi-infinite walk, i.e. has a cycle."""
    return find_cycle(a) is not None


@dataclass(frozen=True)
class TorusConfig:
    """A 2-periodic configuration on the lattice spanned by two periods."""

    p: PeriodVector
    q: PeriodVector
    config: PeriodicConfig = field(compare=False)

    def symbol_at(self, z):
        return self.config.symbol_at(z)

    @property
    def area(self):
        return abs(self.p.dx * self.q.dy - self.p.dy * self.q.dx)


def unslice(a: StripAutomaton, cycle, p: PeriodVector = None) -> TorusConfig:
    """Stack the rows of a band cycle into the 2-periodic configuration with
    periods p and (0, len(cycle)); verified locally admissible before return."""
    if p is None:
        p = a.period
    if not cycle:
        raise PreconditionError("cycle must be nonempty")
    for t, v in enumerate(cycle):
        nxt = cycle[(t + 1) % len(cycle)]
        if nxt not in a.succ[v]:
            raise PreconditionError(f"not a cycle: no edge {v} -> {nxt}")
    w, h = a.width, len(cycle)
    cells = {}
    for j, v in enumerate(cycle):
        row = a.bands[v][:w]
        for i in range(w):
            cells[(i, j)] = a.alphabet[row[i]]
    gen1 = (w, a.shear)
    gen2 = (0, h)
    if a.transposed:
        cells = {(y, x): s for (x, y), s in cells.items()}
        gen1 = (gen1[1], gen1[0])
        gen2 = (gen2[1], gen2[0])
        q = PeriodVector(h, 0)
    else:
        q = PeriodVector(0, h)
    config = PeriodicConfig.fully_periodic(a.alphabet, gen1, gen2, cells)
    return TorusConfig(p=p, q=q, config=config)


def torus_is_admissible(rules, torus: TorusConfig) -> bool:
    """Independent verifier: scan every forbidden placement anchored in the
    fundamental domain inflated by the interaction radius."""
    gens = torus.config.lattice_generators()
    (a, s), (_, c) = gens
    infl = rules.interaction_radius + 1
    for pat in rules.forbidden:
        items = sorted(pat.items())
        for y in range(-infl, c + infl):
            for x in range(-infl, a + infl):
                if all(torus.symbol_at((x + dx, y + dy)) == sym
                       for (dx, dy), sym in items):
                    return False
    return True


def _ensure_admissible(rules, torus):
    if not torus_is_admissible(rules, torus):
        raise InternalCheckError("constructed torus fails admissibility")
    return torus


def unslice_verified(rules, a: StripAutomaton, cycle) -> TorusConfig:
    return _ensure_admissible(rules, unslice(a, cycle))


def _lattice_reduce(p: PeriodVector, q: PeriodVector):
    """Fold a plane cell into the fundamental domain of <p, q>."""
    from .grid import _hnf_basis, _reduce
    basis = _hnf_basis((p.dx, p.dy), (q.dx, q.dy))
    return basis, _reduce


def _torus_problem(rules, p, q, milestone_pairs=None):
    basis, reduce_fn = _lattice_reduce(p, q)
    a, s, c = basis
    cells = [(x, y) for y in range(c) for x in range(a)]
    index = {z: i for i, z in enumerate(cells)}
    checks = set()
    for pat in rules.forbidden:
        items = sorted(pat.items())
        for anchor in cells:
            folded = {}
            ok = True
            for (dx, dy), sym in items:
                cell = reduce_fn(basis, (anchor[0] + dx, anchor[1] + dy))
                idx = rules.symbol_index(sym)
                if folded.get(cell, idx) != idx:
                    ok = False
                    break
                folded[cell] = idx
            if ok:
                placed = sorted((index[z], sym) for z, sym in folded.items())
                checks.add((tuple(i for i, _ in placed),
                            tuple(sym for _, sym in placed)))
    problem = kernel.build_problem(len(cells), len(rules.alphabet),
                                   sorted(checks), milestone_pairs)
    return problem, cells


def _torus_from_solution(rules, p, q, cells, solution):
    assignment = {z: rules.alphabet[sym] for z, sym in zip(cells, solution)}
    config = PeriodicConfig.fully_periodic(rules.alphabet, (p.dx, p.dy),
                                           (q.dx, q.dy), assignment)
    return TorusConfig(p=p, q=q, config=config)


def two_periodic_search(rules, p: PeriodVector, hmax: int,
                        budget=kernel.DEFAULT_NODE_BUDGET):
    """Exhaustive search for a locally admissible torus with periods p and
    (0, h) for some h <= hmax; first hit wins.  Brute-force counterpart of
    cycle detection on the sliced automaton."""
    if hmax < 1:
        raise PreconditionError("hmax must be >= 1")
    if p.dx == 0:
        raise PreconditionError("vertical periods have no (0,h) companion")
    for h in range(1, hmax + 1):
        q = PeriodVector(0, h)
        problem, cells = _torus_problem(rules, p, q)
        got = kernel.first(problem, budget)
        if got is not None:
            return _ensure_admissible(rules, _torus_from_solution(rules, p, q, cells, got))
    return None


def enumerate_tori(rules, p: PeriodVector, q: PeriodVector,
                   budget=kernel.DEFAULT_NODE_BUDGET):
    """All locally admissible configurations on the lattice <p, q>; the
    overlap of two periodic fibers is finite and this lists it."""
    problem, cells = _torus_problem(rules, p, q)
    out = []
    for sol in kernel.all_solutions(problem, budget):
        out.append(_ensure_admissible(rules, _torus_from_solution(rules, p, q, cells, sol)))
    return out


def _essential_vertices(a: StripAutomaton):
    """Vertices with an infinite future and past: iteratively strip vertices
    lacking successors or predecessors."""
    n = len(a.bands)
    alive = set(range(n))
    changed = True
    while changed:
        changed = False
        preds = {v: set() for v in alive}
        for u in alive:
            for v in a.succ[u]:
                if v in alive:
                    preds[v].add(u)
        for v in sorted(alive):
            has_succ = any(w in alive for w in a.succ[v])
            if not has_succ or not preds[v]:
                alive.discard(v)
                changed = True
    return alive


def extension_decide(rules, cover, w: Pattern) -> bool:
    """Does the finite pattern w occur in some point of the subshift?

    Sound only when `cover` is a certified finite period cover (every point
    of the subshift has some period in it); the pattern occurs iff it
    occurs in some fiber, which is a walk-reachability check through the
    fiber's band graph.
    """
    if not getattr(cover, "certified", False):
        raise PreconditionError("extension_decide needs a certified period cover")
    for _, sym in w.items():
        if sym not in rules.alphabet:
            raise PreconditionError(f"pattern symbol {sym!r} not in alphabet")
    for p in cover.periods:
        a = slice_fiber(rules, p)
        alive = _essential_vertices(a)
        if not alive:
            continue
        items = list(w.items())
        if a.transposed:
            items = [((y, x), sym) for (x, y), sym in items]
        if _fits_some_walk(a, alive, items):
            return True
    return False


def _fits_some_walk(a: StripAutomaton, alive, items):
    width, shear = a.width, a.shear
    for i0 in range(width):
        folded = {}
        ok = True
        for (dx, dy), sym in items:
            col = i0 + dx
            wraps = col // width
            cell = (col - wraps * width, dy - wraps * shear)
            idx = a.alphabet.index(sym)
            if folded.get(cell, idx) != idx:
                ok = False
                break
            folded[cell] = idx
        if not ok:
            continue
        if not folded:
            return True  # empty pattern occurs wherever the fiber is nonempty
        rows = [r for _, r in folded]
        r0, r1 = min(rows), max(rows)

        def matches(band_id, pos):
            band = a.bands[band_id]
            for (c, r), s in folded.items():
                rel = r - pos
                if 0 <= rel < a.height and band[rel * width + c] != s:
                    return False
            return True

        start = r0 - a.height + 1
        states = {v for v in alive if matches(v, start)}
        pos = start
        while states and pos < r1:
            pos += 1
            states = {v for u in states for v in a.succ[u]
                      if v in alive and matches(v, pos)}
        if states:
            return True
    return False
