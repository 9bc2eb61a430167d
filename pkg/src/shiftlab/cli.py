"""Command-line front end.

Commands: classify, gather, slice, entropy, counterexample.  Two output
formats: a human-readable report (default) and a machine-readable
line format selected by ``--format lines``.

Machine-line format: the first line is the version tag ``shiftlab-v1``;
every following line is one tab-separated record whose first field names
the record type.  Field order per record type is fixed (see README).
Output is byte-identical across runs and worker counts.

Exit status: 0 for any completed verdict, 2 when a feasibility budget was
exhausted, 1 for input errors.
"""

import argparse
import re
import sys
from dataclasses import dataclass

from . import analysis, classify as classify_mod, gather as gather_mod
from .errors import (BudgetExceededError, ParseError, PreconditionError,
                     ShiftLabError)
from .gather import PeriodSet, lcm_reduce
from .grid import PeriodicConfig, PeriodVector
from .kernel import DEFAULT_NODE_BUDGET
from .sft import load_rules
from .strip import find_cycle, slice_fiber


@dataclass
class RunConfig:
    command: str
    rules_path: str = None
    config_path: str = None
    periods: tuple = ()
    nmax: int = 2
    budget: int = classify_mod.DEFAULT_AREA_BUDGET
    radius_cap: int = classify_mod.DEFAULT_RADIUS_CAP
    node_budget: int = DEFAULT_NODE_BUDGET
    jobs: int = 1
    fmt: str = "report"
    seed: int = 0
    period: PeriodVector = None
    ns: tuple = ()
    side: int = None
    n: int = None


class _Out:
    def __init__(self, fmt, stream):
        self.fmt = fmt
        self.stream = stream
        if fmt == "lines":
            print("shiftlab-v1", file=stream)

    def line(self, *fields):
        print("\t".join(str(f) for f in fields), file=self.stream)

    def text(self, msg):
        print(msg, file=self.stream)


def _parse_period(token):
    m = re.match(r"^\(?(-?\d+),(-?\d+)\)?$", token)
    if not m:
        raise PreconditionError(f"bad period {token!r}; expected dx,dy")
    return PeriodVector(int(m.group(1)), int(m.group(2)))


def _parse_range(token):
    m = re.match(r"^(\d+)\.\.(\d+)$", token)
    if m:
        lo, hi = int(m.group(1)), int(m.group(2))
        if lo < 1 or hi < lo:
            raise PreconditionError(f"bad range {token!r}")
        return tuple(range(lo, hi + 1))
    if token.isdigit() and int(token) >= 1:
        return (int(token),)
    raise PreconditionError(f"bad range {token!r}; expected N or LO..HI")


def load_periodic_config(path) -> PeriodicConfig:
    """Config file format: one ``lattice: (a,b) (c,d)`` line plus one
    ``cell: (x,y)=sym`` line per fundamental-domain cell."""
    gens = None
    cells = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            directive, _, rest = line.partition(":")
            directive = directive.strip()
            tokens = rest.split()
            if directive == "lattice":
                if gens is not None:
                    raise ParseError(path, lineno, "duplicate lattice line")
                if len(tokens) != 2:
                    raise ParseError(path, lineno, "lattice needs two generators")
                try:
                    gens = tuple(_parse_period(t) for t in tokens)
                except PreconditionError as exc:
                    raise ParseError(path, lineno, str(exc))
            elif directive == "cell":
                for tok in tokens:
                    m = re.match(r"^\((-?\d+),(-?\d+)\)=(\S+)$", tok)
                    if not m:
                        raise ParseError(path, lineno, f"bad cell token {tok!r}")
                    cells[(int(m.group(1)), int(m.group(2)))] = m.group(3)
            else:
                raise ParseError(path, lineno, f"unknown directive {directive!r}")
    if gens is None:
        raise ParseError(path, 0, "missing lattice line")
    if not cells:
        raise ParseError(path, 0, "missing cell lines")
    alphabet = tuple(sorted(set(cells.values())))
    try:
        return PeriodicConfig.fully_periodic(alphabet, gens[0], gens[1], cells)
    except PreconditionError as exc:
        raise ParseError(path, 0, str(exc))


def _fmt_period(p):
    return f"({p.dx},{p.dy})"


def cmd_classify(cfg, out):
    rules = load_rules(cfg.rules_path)
    result = classify_mod.classify(rules, nmax=cfg.nmax, budget=cfg.budget,
                                   radius_cap=cfg.radius_cap,
                                   node_budget=cfg.node_budget, jobs=cfg.jobs)
    v = result.verdict
    if cfg.fmt == "lines":
        out.line("verdict", result.kind)
        if v.kind == "no-aperiodic-point":
            out.line("halting-step", v.step)
            for p, r in zip(v.prefix_periods, v.prefix_radii):
                out.line("prefix", _fmt_period(p), f"radius={r}")
        elif v.kind == "aperiodic-evidence":
            out.line("max-step", v.max_step)
            for n in sorted(v.witnesses):
                out.line("witness", f"step={n}", f"radius={v.witnesses[n].radius}")
        elif v.kind == "empty":
            out.line("empty-radius", v.radius)
        else:
            out.line("stage", v.stage, f"kind={v.budget_kind}")
        if result.cover is not None:
            for p in result.cover.periods:
                auto = result.fiber_automata[p]
                cyc = result.cover.certificates[p]
                out.line("cover", _fmt_period(p), f"bands={len(auto.bands)}",
                         f"edges={auto.n_edges}", f"cycle={len(cyc)}")
            for (p, q), tori in result.overlaps.items():
                out.line("overlap", _fmt_period(p), _fmt_period(q),
                         f"count={len(tori)}")
        if result.periodic_witness is not None:
            t = result.periodic_witness
            out.line("periodic-witness", _fmt_period(t.p), _fmt_period(t.q),
                     f"area={t.area}")
    else:
        out.text(f"verdict: {result.kind}")
        if v.kind == "no-aperiodic-point":
            out.text(f"halting step: {v.step}")
            radii = " ".join(str(r) for r in v.prefix_radii)
            names = " ".join(_fmt_period(p) for p in v.prefix_periods)
            out.text(f"failing prefix: {names}")
            out.text(f"prefix radii: {radii}")
        elif v.kind == "aperiodic-evidence":
            out.text(f"witnesses verified for every stage up to n={v.max_step}")
        elif v.kind == "empty":
            out.text(f"no admissible pattern on the radius-{v.radius} ball")
        else:
            out.text(f"budget exhausted at stage {v.stage} ({v.budget_kind})")
        if result.cover is not None:
            names = " ".join(_fmt_period(p) for p in result.cover.periods)
            out.text(f"cover: {names}")
            for (p, q), tori in result.overlaps.items():
                out.text(f"overlap {_fmt_period(p)} and {_fmt_period(q)}: "
                         f"{len(tori)} configurations")
        if result.periodic_witness is not None:
            t = result.periodic_witness
            out.text(f"periodic point found: periods {_fmt_period(t.p)} "
                     f"{_fmt_period(t.q)} (area {t.area})")
    return 2 if result.kind == "unknown" else 0


def cmd_gather(cfg, out):
    config = load_periodic_config(cfg.config_path)
    periods = PeriodSet(cfg.periods)
    reduced = lcm_reduce(periods)
    ball, avmap = gather_mod.gather_ball(config, reduced)
    center, prefix_data = gather_mod.concentric(config, periods, ball)
    if cfg.fmt == "lines":
        out.line("gather-ball", f"center=({ball.center[0]},{ball.center[1]})",
                 f"radius={ball.radius}", f"bound={reduced.norm_sum}")
        for p in reduced:
            av = avmap[p]
            out.line("avoidance", _fmt_period(p),
                     f"base=({av.z[0]},{av.z[1]})")
        out.line("concentric-center", f"({center[0]},{center[1]})")
        for i, pball, pmap in prefix_data:
            out.line("prefix", i, f"radius={pball.radius}",
                     *(f"{_fmt_period(p)}@({av.z[0]},{av.z[1]})"
                       for p, av in sorted(pmap.items(),
                                           key=lambda kv: str(kv[0]))))
    else:
        out.text(f"gather ball: center ({ball.center[0]},{ball.center[1]}) "
                 f"radius {ball.radius} (bound {reduced.norm_sum})")
        for p in reduced:
            av = avmap[p]
            out.text(f"  avoidance of {_fmt_period(p)} at ({av.z[0]},{av.z[1]})")
        out.text(f"concentric center: ({center[0]},{center[1]})")
        for i, pball, pmap in prefix_data:
            body = ", ".join(f"{_fmt_period(p)} at ({av.z[0]},{av.z[1]})"
                             for p, av in sorted(pmap.items(),
                                                 key=lambda kv: str(kv[0])))
            out.text(f"  prefix {i}: radius {pball.radius}: {body}")
    return 0


def cmd_slice(cfg, out):
    rules = load_rules(cfg.rules_path)
    auto = slice_fiber(rules, cfg.period)
    cycle = find_cycle(auto)
    nonempty = cycle is not None
    if cfg.fmt == "lines":
        out.line("slice", _fmt_period(cfg.period), f"bands={len(auto.bands)}",
                 f"edges={auto.n_edges}", f"height={auto.height}",
                 f"nonempty={'true' if nonempty else 'false'}")
        if nonempty:
            out.line("cycle", *cycle)
    else:
        out.text(f"period {_fmt_period(cfg.period)}: bands={len(auto.bands)} "
                 f"edges={auto.n_edges} height={auto.height}")
        out.text(f"nonempty: {'true' if nonempty else 'false'}")
        if nonempty:
            out.text("cycle: " + " ".join(str(v) for v in cycle))
    return 0


def cmd_entropy(cfg, out):
    rules = load_rules(cfg.rules_path)
    cover = PeriodSet(cfg.periods) if cfg.periods else None
    series = analysis.complexity_series(rules, cfg.ns, cover=cover,
                                        jobs=cfg.jobs)
    for row in series.rows:
        fields = [f"n={row.n}", f"count={row.count}",
                  f"log2={row.log2_count:.6f}", f"ratio={row.ratio:.6f}"]
        if row.within_bound is not None:
            fields.append(f"bound={row.cover_bound:.6f}")
            fields.append(f"within-bound={'true' if row.within_bound else 'false'}")
        if cfg.fmt == "lines":
            out.line("entropy", *fields)
        else:
            out.text(" ".join(fields))
    return 0


def cmd_counterexample(cfg, out):
    w = analysis.counterexample_window(cfg.n, cfg.side)
    report = analysis.verify_min_period(w, cfg.n)
    if cfg.fmt == "lines":
        out.line("counterexample", f"n={cfg.n}", f"side={cfg.side}")
        out.line("min-z-period", f"(0,0,{cfg.n})",
                 f"confirmed={'true' if report.target_is_period else 'false'}")
        for q in sorted(report.avoided, key=lambda q: (max(map(abs, q)), q)):
            base = report.avoided[q]
            out.line("avoided", f"({q[0]},{q[1]},{q[2]})",
                     f"base=({base[0]},{base[1]},{base[2]})")
        for q in report.inconclusive:
            out.line("inconclusive", f"({q[0]},{q[1]},{q[2]})")
        out.line("structure-ok", "true" if report.structure_ok else "false")
    else:
        out.text(f"n={cfg.n} side={cfg.side}")
        out.text(f"min z-period in window: (0,0,{cfg.n})"
                 + (" (confirmed)" if report.target_is_period else " (FAILED)"))
        out.text(f"shorter vectors avoided: {len(report.avoided)}, "
                 f"inconclusive: {len(report.inconclusive)}")
        out.text(f"structure ok: {'true' if report.structure_ok else 'false'}")
    return 0


def _build_parser():
    ap = argparse.ArgumentParser(prog="shiftlab",
                                 description="2D subshift-of-finite-type toolkit")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=["report", "lines"], default="report")
        p.add_argument("--jobs", type=int, default=1)
        p.add_argument("--seed", type=int, default=0,
                       help="reserved for scripted harnesses; commands are deterministic")
        p.add_argument("--node-budget", type=int, default=DEFAULT_NODE_BUDGET)

    p = sub.add_parser("classify", help="aperiodicity semi-decision + periodic search")
    p.add_argument("rules")
    p.add_argument("--nmax", type=int, default=2)
    p.add_argument("--budget", type=int, default=classify_mod.DEFAULT_AREA_BUDGET,
                   help="fundamental-domain area cap of the periodic search")
    p.add_argument("--radius-cap", type=int, default=classify_mod.DEFAULT_RADIUS_CAP)
    common(p)

    p = sub.add_parser("gather", help="gather avoidances of a periodic configuration")
    p.add_argument("config")
    p.add_argument("--periods", nargs="+", required=True, metavar="DX,DY")
    common(p)

    p = sub.add_parser("slice", help="slice a periodic fiber to a band automaton")
    p.add_argument("rules")
    p.add_argument("--period", required=True, metavar="DX,DY")
    common(p)

    p = sub.add_parser("entropy", help="square-pattern counts and growth ratio")
    p.add_argument("rules")
    p.add_argument("--n", required=True, metavar="LO..HI")
    p.add_argument("--cover", nargs="*", default=[], metavar="DX,DY")
    common(p)

    p = sub.add_parser("counterexample",
                       help="3D window with smallest period (0,0,n)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--side", type=int, required=True)
    common(p)
    return ap


def _to_config(args):
    cfg = RunConfig(command=args.command)
    cfg.fmt = args.format
    cfg.jobs = args.jobs
    cfg.seed = args.seed
    cfg.node_budget = args.node_budget
    if args.command == "classify":
        cfg.rules_path = args.rules
        cfg.nmax = args.nmax
        cfg.budget = args.budget
        cfg.radius_cap = args.radius_cap
    elif args.command == "gather":
        cfg.config_path = args.config
        cfg.periods = tuple(_parse_period(t) for t in args.periods)
    elif args.command == "slice":
        cfg.rules_path = args.rules
        cfg.period = _parse_period(args.period)
    elif args.command == "entropy":
        cfg.rules_path = args.rules
        cfg.ns = _parse_range(args.n)
        cfg.periods = tuple(_parse_period(t) for t in args.cover)
    elif args.command == "counterexample":
        cfg.n = args.n
        cfg.side = args.side
    for name in ("nmax", "budget", "node_budget", "jobs"):
        if getattr(cfg, name) is not None and getattr(cfg, name) < 1:
            raise PreconditionError(f"{name} must be positive")
    return cfg


_COMMANDS = {
    "classify": cmd_classify,
    "gather": cmd_gather,
    "slice": cmd_slice,
    "entropy": cmd_entropy,
    "counterexample": cmd_counterexample,
}


def main(argv=None):
    ap = _build_parser()
    args = ap.parse_args(argv)
    try:
        cfg = _to_config(args)
        out = _Out(cfg.fmt, sys.stdout)
        return _COMMANDS[cfg.command](cfg, out)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except BudgetExceededError as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return 2
    except (PreconditionError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ShiftLabError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
