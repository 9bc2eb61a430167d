"""Lattice primitives: period vectors, balls, patterns, and finitely
described two-dimensional configurations (plus a small 3D window type).

Coordinates are plain ``(x, y)`` integer tuples.  All types here are
immutable after construction and every operation is a pure function, so
values can be shared freely between workers.
"""

from dataclasses import dataclass

import numpy as np

from .errors import PreconditionError

Cell = tuple  # (x, y)


@dataclass(frozen=True)
class PeriodVector:
    """A nonzero integer vector, measured with the uniform (sup) norm."""

    dx: int
    dy: int

    def __post_init__(self):
        if self.dx == 0 and self.dy == 0:
            raise PreconditionError("period vector must be nonzero")

    @property
    def norm(self):
        return max(abs(self.dx), abs(self.dy))

    def shift(self, z):
        return (z[0] + self.dx, z[1] + self.dy)

    def __neg__(self):
        return PeriodVector(-self.dx, -self.dy)

    def scaled(self, k):
        return PeriodVector(self.dx * k, self.dy * k)

    def __str__(self):
        return f"({self.dx},{self.dy})"


def norm(p: PeriodVector) -> int:
    """Uniform norm max(|dx|, |dy|) of a period vector."""
    return p.norm


def canonical_key(p: PeriodVector):
    """Sort key fixing the enumeration order of periods everywhere:
    ascending uniform norm, then coordinate sum |dx|+|dy|, then (dx, dy)."""
    return (p.norm, abs(p.dx) + abs(p.dy), p.dx, p.dy)


def colinear(p: PeriodVector, q: PeriodVector) -> bool:
    return p.dx * q.dy - p.dy * q.dx == 0


def normalize_sign(p: PeriodVector) -> PeriodVector:
    """Representative of {p, -p} that is lexicographically positive:
    dx > 0, or dx == 0 and dy > 0."""
    if p.dx > 0 or (p.dx == 0 and p.dy > 0):
        return p
    return -p


@dataclass(frozen=True)
class Avoidance:
    """A witness pair (z, z+p) whose symbols differ in some configuration."""

    z: Cell
    p: PeriodVector

    @property
    def other(self):
        return self.p.shift(self.z)


@dataclass(frozen=True)
class Ball:
    """Sup-norm ball: z is a member iff ||z - center|| <= radius."""

    center: Cell
    radius: int

    def __post_init__(self):
        if self.radius < 0:
            raise PreconditionError("ball radius must be nonnegative")

    def contains(self, z) -> bool:
        return (abs(z[0] - self.center[0]) <= self.radius
                and abs(z[1] - self.center[1]) <= self.radius)

    def contains_pair(self, av: Avoidance) -> bool:
        return self.contains(av.z) and self.contains(av.other)

    def cells(self):
        """All member cells in row-major order (y ascending, then x)."""
        cx, cy = self.center
        r = self.radius
        for y in range(cy - r, cy + r + 1):
            for x in range(cx - r, cx + r + 1):
                yield (x, y)


class Pattern:
    """A coloring of a finite set of cells."""

    __slots__ = ("_cells",)

    def __init__(self, cells):
        self._cells = dict(cells)
        if not all(isinstance(s, str) for s in self._cells.values()):
            raise PreconditionError("pattern symbols must be strings")

    @property
    def shape(self):
        return frozenset(self._cells)

    def at(self, z):
        return self._cells[z]

    def get(self, z, default=None):
        return self._cells.get(z, default)

    def items(self):
        """Cell/symbol pairs sorted row-major."""
        return sorted(self._cells.items(), key=lambda kv: (kv[0][1], kv[0][0]))

    def __len__(self):
        return len(self._cells)

    def __contains__(self, z):
        return z in self._cells

    def __eq__(self, other):
        return isinstance(other, Pattern) and self._cells == other._cells

    def __repr__(self):
        body = " ".join(f"({x},{y})={s}" for (x, y), s in self.items())
        return f"Pattern[{body}]"


def _ext_gcd(a, b):
    """Returns (g, x, y) with g = a*x + b*y and g = gcd(a, b) >= 0."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def _hnf_basis(u, v):
    """Basis ((a, s), (0, c)) of the lattice spanned by integer vectors u, v,
    with a > 0, c > 0 and 0 <= s < c.  Fundamental domain [0,a) x [0,c)."""
    det = u[0] * v[1] - u[1] * v[0]
    if det == 0:
        raise PreconditionError("lattice generators are colinear")
    a, x0, y0 = _ext_gcd(u[0], v[0])
    if a == 0:
        # both generators vertical would force det == 0, handled above
        raise PreconditionError("degenerate lattice basis")
    s = x0 * u[1] + y0 * v[1]
    c = abs(det) // a
    s %= c
    return a, s, c


class PeriodicConfig:
    """A finitely described configuration of the plane.

    Two descriptions are supported: fully periodic (two independent lattice
    generators plus a fundamental-domain assignment) and a constant
    background with a finite perturbation.  Symbol lookup is total.
    """

    __slots__ = ("alphabet", "_basis", "_cells", "_background", "_bumps")

    def __init__(self, alphabet, basis, cells, background, bumps):
        self.alphabet = tuple(alphabet)
        self._basis = basis
        self._cells = cells
        self._background = background
        self._bumps = bumps

    @classmethod
    def fully_periodic(cls, alphabet, gen1, gen2, cells):
        """Configuration with lattice <gen1, gen2> and the given fundamental
        assignment.  Cell keys may be arbitrary representatives; they must
        reduce to distinct classes covering the whole fundamental domain."""
        g1 = (gen1.dx, gen1.dy) if isinstance(gen1, PeriodVector) else tuple(gen1)
        g2 = (gen2.dx, gen2.dy) if isinstance(gen2, PeriodVector) else tuple(gen2)
        basis = _hnf_basis(g1, g2)
        a, s, c = basis
        reduced = {}
        for z, sym in cells.items():
            key = _reduce(basis, z)
            if key in reduced and reduced[key] != sym:
                raise PreconditionError(f"conflicting symbols for lattice class of {z}")
            reduced[key] = sym
        want = a * c
        if len(reduced) != want:
            raise PreconditionError(
                f"fundamental domain needs {want} cells, got {len(reduced)}")
        alphabet = tuple(alphabet)
        if not set(reduced.values()) <= set(alphabet):
            raise PreconditionError("cell symbol outside alphabet")
        return cls(alphabet, basis, reduced, None, None)

    @classmethod
    def constant(cls, alphabet, sym):
        return cls.perturbed(alphabet, sym, {})

    @classmethod
    def perturbed(cls, alphabet, background, bumps):
        """Constant background with finitely many overridden cells."""
        alphabet = tuple(alphabet)
        if background not in alphabet:
            raise PreconditionError("background symbol outside alphabet")
        bumps = {tuple(z): s for z, s in bumps.items()}
        if not set(bumps.values()) <= set(alphabet):
            raise PreconditionError("perturbation symbol outside alphabet")
        return cls(alphabet, None, None, background, bumps)

    @property
    def is_periodic(self):
        return self._basis is not None

    def lattice_generators(self):
        """Normalized generators, or None for a perturbed configuration."""
        if self._basis is None:
            return None
        a, s, c = self._basis
        return ((a, s), (0, c))

    def symbol_at(self, z):
        if self._basis is not None:
            return self._cells[_reduce(self._basis, z)]
        return self._bumps.get(tuple(z), self._background)

    def domain_cells(self):
        """Cells that determine the configuration, sorted row-major."""
        if self._basis is not None:
            a, s, c = self._basis
            return [(x, y) for y in range(c) for x in range(a)]
        return sorted(self._bumps, key=lambda z: (z[1], z[0]))

    def avoids(self, p: PeriodVector) -> bool:
        return self.find_avoidance(p) is not None

    def find_avoidance(self, p: PeriodVector):
        """First avoidance of p in a canonical scan, or None.  The scan is
        exact: for periodic configs one fundamental domain suffices, for
        perturbed configs the support inflated by p does."""
        for z in self._avoidance_candidates(p):
            if is_avoidance(self, z, p):
                return Avoidance(z, p)
        return None

    def _avoidance_candidates(self, p):
        if self._basis is not None:
            return self.domain_cells()
        cand = set()
        for z in self._bumps:
            cand.add(z)
            cand.add((z[0] - p.dx, z[1] - p.dy))
        return sorted(cand, key=lambda z: (z[1], z[0]))


def _reduce(basis, z):
    a, s, c = basis
    k = z[0] // a
    x = z[0] - k * a
    y = z[1] - k * s
    return (x, y % c)


def symbol_at(x: PeriodicConfig, z) -> str:
    return x.symbol_at(z)


def is_avoidance(x: PeriodicConfig, z, p: PeriodVector) -> bool:
    """True iff the symbols of x at z and z+p differ."""
    return x.symbol_at(z) != x.symbol_at(p.shift(z))


def scan_avoidances(x: PeriodicConfig, ball: Ball, periods):
    """Brute-force oracle: for each period, every avoidance based in the
    ball, in row-major order.  Keys follow the canonical period order."""
    out = {}
    for p in sorted(set(periods), key=canonical_key):
        out[p] = [Avoidance(z, p) for z in ball.cells() if is_avoidance(x, z, p)]
    return out


class Window3D:
    """A 0/1 assignment of the cube [-side, side]^3."""

    __slots__ = ("side", "data")

    def __init__(self, side, data=None):
        if side < 1:
            raise PreconditionError("window side must be positive")
        self.side = side
        n = 2 * side + 1
        if data is None:
            data = np.zeros((n, n, n), dtype=np.int8)
        if data.shape != (n, n, n):
            raise PreconditionError("window data has wrong shape")
        self.data = data

    def in_bounds(self, q):
        s = self.side
        return all(-s <= c <= s for c in q)

    def __getitem__(self, q):
        s = self.side
        return int(self.data[q[0] + s, q[1] + s, q[2] + s])

    def set(self, q, v):
        s = self.side
        self.data[q[0] + s, q[1] + s, q[2] + s] = v

    def cells(self):
        s = self.side
        for z in range(-s, s + 1):
            for y in range(-s, s + 1):
                for x in range(-s, s + 1):
                    yield (x, y, z)

    def to_text(self):
        """One text block per z-layer, rows of 0/1 with y increasing downward."""
        s = self.side
        blocks = []
        for z in range(-s, s + 1):
            rows = ["".join(str(self[(x, y, z)]) for x in range(-s, s + 1))
                    for y in range(-s, s + 1)]
            blocks.append(f"z={z}\n" + "\n".join(rows))
        return "\n\n".join(blocks) + "\n"
