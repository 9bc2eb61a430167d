"""Aperiodicity semi-decision, periodic-point search, and the classifier.

The semi-algorithm walks prefixes of a fixed enumeration of periods.  For
the prefix ending at stage n it asks whether some locally admissible
pattern on the outermost concentric ball exhibits avoidances for every
sub-prefix inside that sub-prefix's ball.  If a point of the subshift
avoids the whole prefix, the gathering machinery guarantees such a pattern
exists; so when none does, every point of the subshift is periodic with
some period of the prefix, and the run halts with a certificate.  If
witnesses keep appearing the search runs forever in principle and stops
here at nmax with the evidence collected.

Only one representative of {p, -p} is ever enumerated: a configuration
avoids p iff it avoids -p.
"""

from dataclasses import dataclass, field

from . import kernel, sft
from .errors import BudgetExceededError, InternalCheckError
from .gather import BoundTable, PeriodSet, concentric_radius
from .grid import Ball, PeriodVector, canonical_key, colinear
from .kernel import DEFAULT_NODE_BUDGET
from .strip import (_torus_from_solution, _torus_problem, enumerate_tori,
                    find_cycle, slice_fiber)

DEFAULT_RADIUS_CAP = 64
DEFAULT_AREA_BUDGET = 12


def enumerate_periods(count=None, max_norm=None):
    """Canonical enumeration of sign-normalized periods: layer by layer in
    the uniform norm, within a layer by coordinate sum then (dx, dy)."""
    out = []
    m = 1
    while True:
        if max_norm is not None and m > max_norm:
            break
        layer = [PeriodVector(dx, dy)
                 for dx in range(-m, m + 1) for dy in range(-m, m + 1)
                 if max(abs(dx), abs(dy)) == m and (dx > 0 or (dx == 0 and dy > 0))]
        for p in sorted(layer, key=canonical_key):
            out.append(p)
            if count is not None and len(out) == count:
                return out
        if max_norm is None and count is None:
            raise ValueError("unbounded enumeration needs a limit")
        m += 1
    return out


@dataclass(frozen=True)
class NoAperiodicPoint:
    """The stage-n witness search came up empty: every point of the subshift
    is periodic with some period of the failing prefix."""

    step: int
    prefix_periods: tuple
    prefix_radii: tuple

    kind = "no-aperiodic-point"


@dataclass(frozen=True)
class AperiodicEvidence:
    """Every stage up to nmax produced a verified concentric witness."""

    max_step: int
    witnesses: dict = field(compare=False)  # stage -> AdmissiblePattern

    kind = "aperiodic-evidence"


@dataclass(frozen=True)
class EmptyShift:
    """No locally admissible pattern exists on the stage's ball at all."""

    radius: int

    kind = "empty"


@dataclass(frozen=True)
class BudgetExhausted:
    stage: int
    budget_kind: str

    kind = "budget-exhausted"


def stage_data(nmax, table: BoundTable = None):
    """Periods p_0..p_nmax and the concentric radii of their prefixes."""
    periods = enumerate_periods(count=nmax + 1)
    radii = [concentric_radius(PeriodSet(periods[:i + 1]), table)
             for i in range(nmax + 1)]
    return periods, radii


def verify_witness(rules, witness, prefixes):
    """Re-check a claimed witness: local admissibility plus, for every
    prefix, an in-ball avoidance pair of each of its periods."""
    if not sft.pattern_is_admissible(rules, witness.pattern):
        raise InternalCheckError("witness pattern is not admissible")
    pat = witness.pattern
    for ps, rad in prefixes:
        ball = Ball((0, 0), rad)
        for p in ps:
            if not any(ball.contains((z[0] + p.dx, z[1] + p.dy))
                       and pat.at(z) != pat.at((z[0] + p.dx, z[1] + p.dy))
                       for z in ball.cells()):
                raise InternalCheckError(
                    f"witness lacks an avoidance of {p} within radius {rad}")


def aperiodic_semidecide(rules, nmax, radius_cap=DEFAULT_RADIUS_CAP,
                         node_budget=DEFAULT_NODE_BUDGET, jobs=1,
                         table: BoundTable = None):
    """Run stages n = 1..nmax.  Halts with NoAperiodicPoint at the first
    stage whose combined witness search is unsatisfiable, with EmptyShift
    when not even an unconstrained admissible pattern exists, and reports
    AperiodicEvidence when every stage produced a verified witness."""
    if nmax < 1:
        raise ValueError("nmax must be >= 1")
    periods, radii = stage_data(nmax, table)
    witnesses = {}
    for n in range(1, nmax + 1):
        if radii[n] > radius_cap:
            return BudgetExhausted(stage=n, budget_kind="radius-cap")
        prefixes = [(PeriodSet(periods[:i + 1]), radii[i]) for i in range(n + 1)]
        try:
            witness = sft.has_concentric_witness(rules, prefixes,
                                                 budget=node_budget, jobs=jobs)
        except BudgetExceededError as exc:
            return BudgetExhausted(stage=n, budget_kind=exc.kind)
        if witness is None:
            try:
                nonempty = sft.any_admissible(rules, radii[n], budget=node_budget,
                                              jobs=jobs)
            except BudgetExceededError as exc:
                return BudgetExhausted(stage=n, budget_kind=exc.kind)
            if not nonempty:
                return EmptyShift(radius=radii[n])
            return NoAperiodicPoint(step=n,
                                    prefix_periods=tuple(periods[:n + 1]),
                                    prefix_radii=tuple(radii[:n + 1]))
        verify_witness(rules, witness, prefixes)
        witnesses[n] = witness
    return AperiodicEvidence(max_step=nmax, witnesses=witnesses)


def periodic_search(rules, budget=DEFAULT_AREA_BUDGET,
                    node_budget=DEFAULT_NODE_BUDGET):
    """Search for any 2-periodic point: candidate lattices <(a,b),(0,h)> in
    increasing fundamental-domain area (then a, then b), first admissible
    torus wins.  Returns None when the area budget is exhausted."""
    if budget < 1:
        raise ValueError("area budget must be >= 1")
    for area in range(1, budget + 1):
        for a in range(1, area + 1):
            if area % a:
                continue
            h = area // a
            for b in range(h):
                p = PeriodVector(a, b)
                q = PeriodVector(0, h)
                problem, cells = _torus_problem(rules, p, q)
                got = kernel.first(problem, node_budget)
                if got is not None:
                    return _torus_from_solution(rules, p, q, cells, got)
    return None


@dataclass(frozen=True)
class PeriodCover:
    """Certified finite period cover: every point of the subshift is
    periodic with some cover period, each fiber witnessed nonempty by a
    band-graph cycle."""

    periods: PeriodSet
    certificates: dict = field(compare=False)  # period -> cycle vertex list
    halting_step: int = 0

    certified = True


@dataclass(frozen=True)
class Classification:
    kind: str  # empty | all-points-periodic | aperiodic-evidence | unknown
    verdict: object
    cover: object = None
    fiber_automata: dict = field(default=None, compare=False)
    overlaps: dict = field(default=None, compare=False)
    periodic_witness: object = None


def classify(rules, nmax=2, budget=DEFAULT_AREA_BUDGET,
             radius_cap=DEFAULT_RADIUS_CAP, node_budget=DEFAULT_NODE_BUDGET,
             jobs=1):
    """Combine the semi-decision with the periodic search.

    On halting, the cover collects every period of norm up to the halting
    step whose fiber automaton has a cycle; the fibers' disjoint union is
    the almost conjugate 1D presentation, with the finite pairwise overlaps
    enumerated explicitly.
    """
    verdict = aperiodic_semidecide(rules, nmax, radius_cap=radius_cap,
                                   node_budget=node_budget, jobs=jobs)
    if verdict.kind == "empty":
        return Classification(kind="empty", verdict=verdict)
    if verdict.kind == "budget-exhausted":
        return Classification(kind="unknown", verdict=verdict)

    witness_torus = periodic_search(rules, budget=budget, node_budget=node_budget)
    if verdict.kind == "aperiodic-evidence":
        return Classification(kind="aperiodic-evidence", verdict=verdict,
                              periodic_witness=witness_torus)

    automata = {}
    certificates = {}
    for p in enumerate_periods(max_norm=verdict.step):
        auto = slice_fiber(rules, p)
        cycle = find_cycle(auto)
        if cycle is not None:
            automata[p] = auto
            certificates[p] = cycle
    cover = PeriodCover(periods=PeriodSet(certificates),
                        certificates=certificates,
                        halting_step=verdict.step)
    overlaps = {}
    cover_list = list(cover.periods)
    for i, p in enumerate(cover_list):
        for q in cover_list[i + 1:]:
            if colinear(p, q):
                continue
            overlaps[(p, q)] = enumerate_tori(rules, p, q, budget=node_budget)
    return Classification(kind="all-points-periodic", verdict=verdict,
                          cover=cover, fiber_automata=automata,
                          overlaps=overlaps, periodic_witness=witness_torus)
