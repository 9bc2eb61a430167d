"""SFT presentations (forbidden patterns, Wang tiles), the rule file
format, and bounded enumeration of locally admissible patterns.

A pattern is *locally admissible* when no forbidden pattern fits fully
inside its shape; that does not imply it extends to a configuration of the
subshift, which is exactly the approximation the semi-algorithm in
``classify`` relies on.
"""

import re
from dataclasses import dataclass

from . import kernel
from .errors import BudgetExceededError, ParseError, PreconditionError
from .grid import Ball, Pattern, canonical_key

DEFAULT_STATE_CAP = 200_000


@dataclass(frozen=True)
class RuleSet:
    """Alphabet plus finitely many forbidden patterns."""

    alphabet: tuple
    forbidden: tuple

    def __post_init__(self):
        if not self.alphabet:
            raise PreconditionError("alphabet must be nonempty")
        if len(set(self.alphabet)) != len(self.alphabet):
            raise PreconditionError("alphabet symbols must be distinct")
        for pat in self.forbidden:
            if not pat.shape:
                raise PreconditionError("forbidden pattern with empty shape")
            for _, sym in pat.items():
                if sym not in self.alphabet:
                    raise PreconditionError(f"forbidden pattern uses unknown symbol {sym!r}")

    @property
    def interaction_radius(self):
        """Largest sup-norm diameter of a forbidden shape."""
        best = 0
        for pat in self.forbidden:
            cells = list(pat.shape)
            for i, a in enumerate(cells):
                for b in cells[i + 1:]:
                    best = max(best, abs(a[0] - b[0]), abs(a[1] - b[1]))
        return best

    def symbol_index(self, sym):
        return self.alphabet.index(sym)


@dataclass(frozen=True)
class WangTileSet:
    """Unit squares with colored borders, as (north, east, south, west)."""

    tiles: tuple

    def __post_init__(self):
        if not self.tiles:
            raise PreconditionError("tile set must be nonempty")
        for t in self.tiles:
            if len(t) != 4:
                raise PreconditionError("a Wang tile needs exactly 4 colors")


def compile_wang(tiles: WangTileSet) -> RuleSet:
    """Domino rules equivalent to edge-matching: a tile pair is forbidden
    horizontally when east/west colors differ, vertically when north/south
    colors differ.  The alphabet is the tile indices."""
    alphabet = tuple(str(i) for i in range(len(tiles.tiles)))
    forbidden = []
    for i, t in enumerate(tiles.tiles):
        for j, u in enumerate(tiles.tiles):
            if t[1] != u[3]:
                forbidden.append(Pattern({(0, 0): alphabet[i], (1, 0): alphabet[j]}))
            if t[0] != u[2]:
                forbidden.append(Pattern({(0, 0): alphabet[i], (0, 1): alphabet[j]}))
    return RuleSet(alphabet, tuple(forbidden))


_CELL_RE = re.compile(r"^\((-?\d+),(-?\d+)\)=(\S+)$")


def parse_rules(text, path="<rules>") -> RuleSet:
    """Parse the line-oriented rule format.

    ``alphabet: a b c`` declares symbols; ``forbid: (dx,dy)=sym ...`` adds
    one forbidden pattern per line; ``wang: n e s w`` adds one tile per
    line and is mutually exclusive with alphabet/forbid.  ``#`` starts a
    comment.  Errors carry line numbers.
    """
    alphabet = None
    forbidden = []
    tiles = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise ParseError(path, lineno, "expected 'directive: ...'")
        directive, _, rest = line.partition(":")
        directive = directive.strip()
        tokens = rest.split()
        if directive == "alphabet":
            if tiles:
                raise ParseError(path, lineno, "alphabet not allowed in a wang file")
            if alphabet is not None:
                raise ParseError(path, lineno, "duplicate alphabet line")
            if not tokens:
                raise ParseError(path, lineno, "empty alphabet")
            alphabet = tuple(tokens)
        elif directive == "forbid":
            if tiles:
                raise ParseError(path, lineno, "forbid and wang lines cannot mix")
            cells = {}
            if not tokens:
                raise ParseError(path, lineno, "empty forbidden pattern")
            for tok in tokens:
                m = _CELL_RE.match(tok)
                if not m:
                    raise ParseError(path, lineno, f"bad cell token {tok!r}")
                z = (int(m.group(1)), int(m.group(2)))
                if z in cells:
                    raise ParseError(path, lineno, f"duplicate cell {z}")
                cells[z] = m.group(3)
            forbidden.append((lineno, Pattern(cells)))
        elif directive == "wang":
            if alphabet is not None or forbidden:
                raise ParseError(path, lineno, "forbid and wang lines cannot mix")
            if len(tokens) != 4:
                raise ParseError(path, lineno, "a wang line needs 4 colors")
            tiles.append(tuple(tokens))
        else:
            raise ParseError(path, lineno, f"unknown directive {directive!r}")
    if tiles:
        return compile_wang(WangTileSet(tuple(tiles)))
    if alphabet is None:
        raise ParseError(path, 0, "missing alphabet line")
    for lineno, pat in forbidden:
        for _, sym in pat.items():
            if sym not in alphabet:
                raise ParseError(path, lineno, f"symbol {sym!r} not in alphabet")
    return RuleSet(alphabet, tuple(p for _, p in forbidden))


def load_rules(path) -> RuleSet:
    with open(path, encoding="utf-8") as fh:
        return parse_rules(fh.read(), str(path))


def ball_cells(radius):
    """Cells of the origin-centered ball in row-major order."""
    return list(Ball((0, 0), radius).cells())


def compile_region(rules: RuleSet, cells, milestones=None):
    """Build a kernel problem over an explicit cell list: every placement
    of every forbidden pattern that fits inside the region becomes a
    rejection check."""
    index = {z: i for i, z in enumerate(cells)}
    checks = []
    for pat in rules.forbidden:
        offs = _rebased_offsets(pat)
        for anchor in cells:
            placed_cells = []
            placed_syms = []
            ok = True
            for (dx, dy), sym in offs:
                z = (anchor[0] + dx, anchor[1] + dy)
                i = index.get(z)
                if i is None:
                    ok = False
                    break
                placed_cells.append(i)
                placed_syms.append(rules.symbol_index(sym))
            if ok:
                checks.append((tuple(placed_cells), tuple(placed_syms)))
    return kernel.build_problem(len(cells), len(rules.alphabet), checks, milestones)


def _rebased_offsets(pat):
    """Pattern cells translated so the first cell sits at the origin; the
    anchor of every placement is then itself a placed cell, so anchors can
    range over the region."""
    offs = sorted(pat.shape)
    bx, by = offs[0]
    return [((dx - bx, dy - by), pat.at((dx, dy))) for dx, dy in offs]


@dataclass(frozen=True)
class AdmissiblePattern:
    """A ball-shaped pattern certified free of forbidden sub-patterns."""

    pattern: Pattern
    radius: int


def _to_pattern(rules, cells, assignment):
    return Pattern({z: rules.alphabet[s] for z, s in zip(cells, assignment)})


def enumerate_admissible(rules: RuleSet, radius: int,
                         budget=kernel.DEFAULT_NODE_BUDGET, jobs=1):
    """Yield every locally admissible assignment of the radius ball exactly
    once, in lexicographic row-major order.  Backtracking with forward
    checks against the forbidden placements that fit the filled region; a
    node-count budget turns blowups into explicit errors."""
    cells = ball_cells(radius)
    problem = compile_region(rules, cells)
    for assignment in kernel.all_solutions(problem, budget, jobs):
        yield AdmissiblePattern(_to_pattern(rules, cells, assignment), radius)


def any_admissible(rules: RuleSet, radius: int,
                   budget=kernel.DEFAULT_NODE_BUDGET, jobs=1) -> bool:
    cells = ball_cells(radius)
    problem = compile_region(rules, cells)
    return kernel.first(problem, budget, jobs) is not None


def pattern_is_admissible(rules: RuleSet, pattern: Pattern) -> bool:
    """Independent re-check: no forbidden pattern fits fully inside."""
    shape = pattern.shape
    for pat in rules.forbidden:
        offs = _rebased_offsets(pat)
        for anchor in shape:
            if all((anchor[0] + dx, anchor[1] + dy) in shape
                   and pattern.at((anchor[0] + dx, anchor[1] + dy)) == sym
                   for (dx, dy), sym in offs):
                return False
    return True


def has_concentric_witness(rules: RuleSet, prefixes,
                           budget=kernel.DEFAULT_NODE_BUDGET, jobs=1):
    """Search the admissible patterns on the outermost ball for one that
    contains, for every (period set, radius) prefix, an avoidance of each
    of its periods with both endpoints inside that prefix's ball.  Returns
    the first such pattern in enumeration order, or None."""
    if not prefixes:
        raise PreconditionError("need at least one prefix")
    radii = [r for _, r in prefixes]
    if any(b < a for a, b in zip(radii, radii[1:])):
        raise PreconditionError("prefix radii must be ascending")
    outer = radii[-1]
    cells = ball_cells(outer)
    index = {z: i for i, z in enumerate(cells)}

    tight = {}
    for ps, rad in prefixes:
        for p in ps:
            tight.setdefault(p, rad)
    milestones = []
    for p in sorted(tight, key=canonical_key):
        rad = tight[p]
        ball = Ball((0, 0), rad)
        pairs = []
        for z in ball.cells():
            other = (z[0] + p.dx, z[1] + p.dy)
            if ball.contains(other):
                pairs.append((index[z], index[other]))
        if not pairs:
            return None  # no placement of this period fits: unsatisfiable
        milestones.append(tuple(pairs))

    problem = compile_region(rules, cells, milestones)
    got = kernel.first(problem, budget, jobs)
    if got is None:
        return None
    return AdmissiblePattern(_to_pattern(rules, cells, got), outer)


def _admissible_rows(rules, n, budget, jobs=1):
    cells = [(x, 0) for x in range(n)]
    problem = compile_region(rules, cells)
    return kernel.all_solutions(problem, budget, jobs)


def count_admissible_square(rules: RuleSet, n: int,
                            budget=kernel.DEFAULT_NODE_BUDGET,
                            state_cap=DEFAULT_STATE_CAP, jobs=1) -> int:
    """Exact count of locally admissible assignments of [0, n-1]^2 by a
    row-by-row transfer method.  The state is the window of trailing rows
    deep enough to cover every forbidden pattern's vertical extent."""
    if n < 1:
        raise PreconditionError("square side must be positive")
    rows = _admissible_rows(rules, n, budget, jobs)
    v_ext = 0
    tall = []  # (vertical extent, [(col offset, row back, sym idx), ...])
    for pat in rules.forbidden:
        ys = [dy for _, dy in pat.shape]
        ext = max(ys) - min(ys)
        v_ext = max(v_ext, ext)
        if ext >= 1:
            top = max(ys)
            cells = [(dx, top - dy, rules.symbol_index(pat.at((dx, dy))))
                     for dx, dy in sorted(pat.shape)]
            xs = [dx for dx, _, _ in cells]
            lo = min(xs)
            tall.append((ext, [(dx - lo, back, s) for dx, back, s in cells],
                         max(xs) - lo))
    if v_ext == 0:
        return len(rows) ** n
    if not rows:
        return 0

    dp = {(): 1}
    for _ in range(n):
        ndp = {}
        for state in sorted(dp):
            cnt = dp[state]
            for row in rows:
                window = state + (row,)
                if not _window_ok(window, tall, n):
                    continue
                key = window[-v_ext:]
                ndp[key] = ndp.get(key, 0) + cnt
        if len(ndp) > state_cap:
            raise BudgetExceededError("state-budget", state_cap,
                                      "count_admissible_square")
        dp = ndp
    return sum(dp.values())


def _window_ok(window, tall, n):
    depth = len(window)
    for ext, cells, width in tall:
        if ext >= depth:
            continue
        for x0 in range(n - width):
            if all(window[depth - 1 - back][x0 + dx] == s
                   for dx, back, s in cells):
                return False
    return True


def count_admissible_square_naive(rules: RuleSet, n: int,
                                  budget=kernel.DEFAULT_NODE_BUDGET) -> int:
    """Brute-force oracle for the transfer method (small n only)."""
    cells = [(x, y) for y in range(n) for x in range(n)]
    problem = compile_region(rules, cells)
    return kernel.count(problem, budget)
