"""Command-line entry point: ``peakspr <verb> ...``.

Exit status is 0 on success, 1 when a check fails and 2 on a parse or usage
error.
"""

from __future__ import annotations

import argparse
import sys
from collections import Counter
from pathlib import Path
from typing import Sequence

from . import geometry as geo
from .errors import ParseError, PeakSprError
from .io import QuiverSource, label, read_source
from .poset import Poset
from .quiver import validate_alien_set
from .report import Record, fmt_charge, fmt_number, fmt_set, render
from .spaces import CombPeakSpace, enumerate_indecomposables, proper_subobjects, sincere_subposets
from .stability import is_mu_stable, is_theta_stable, make_slope, theta_of

OK, FAILED, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _csv_ints(text: str, n: int, what: str) -> tuple[int, ...]:
    try:
        vals = tuple(int(t) for t in text.split(","))
    except ValueError:
        raise UsageError(f"--{what} must be comma-separated integers") from None
    if len(vals) != n:
        raise UsageError(f"--{what} has {len(vals)} entries for {n} points")
    return vals


def _ordered(p: Poset, xs) -> tuple:
    return tuple(sorted(xs, key=p.idx))


def _write(text: str, path: str | None) -> None:
    if path:
        Path(path).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _need_quiver(src, verb: str) -> QuiverSource:
    if not isinstance(src, QuiverSource):
        raise UsageError(f"'{verb}' needs a quiver file (quiver/arrow/alien lines)")
    return src


# ---------------------------------------------------------------- verbs


def cmd_validate(args) -> int:
    src = read_source(args.input)
    status = OK
    if isinstance(src, QuiverSource):
        v = validate_alien_set(src.quiver, src.aliens)
        if v:
            print(f"alien-set\tok\t{len(src.aliens)} arrow(s)")
        else:
            print(f"alien-set\tfailed\t" + "; ".join(f"({c}) {m}" for c, m in v.violations))
            return FAILED
    p = src.poset()
    if not p.is_connected():
        print("type-A\tfailed\tnot connected")
        return FAILED
    t = p.type_a
    if t.ok:
        print(f"type-A\tok\t{len(p)} points, {len(p.max_points)} peaks")
    else:
        print(f"type-A\tfailed\t{t.pattern} at {fmt_set(t.witness)}")
        status = FAILED
    return status


def cmd_indecomposables(args) -> int:
    p = read_source(args.input).poset()
    for u in enumerate_indecomposables(p):
        print(fmt_set(u.sorted_support()))
    return OK


def cmd_subspaces(args) -> int:
    p = read_source(args.input).poset()
    want = frozenset(label(t) for t in args.support.split(","))
    match = [u for u in enumerate_indecomposables(p) if u.support == want]
    if not match:
        print(f"no indecomposable has support {fmt_set(_ordered(p, want) if want <= set(p.points) else sorted(want, key=str))}",
              file=sys.stderr)
        return FAILED
    subs = sorted((_ordered(p, s) for _, s in proper_subobjects(match[0])), key=lambda t: [p.idx(x) for x in t])
    for s in subs:
        print(fmt_set(s))
    return OK


def _bilinear_records(p: Poset, objs: list[CombPeakSpace], args) -> tuple[list[Record], list[list[float]]]:
    theta = _csv_ints(args.theta, len(p), "theta") if args.theta else None
    kappa = _csv_ints(args.kappa, len(p), "kappa") if args.kappa else None
    recs, margins = [], []
    for u in objs:
        if kappa is not None:
            slope = make_slope(p, theta, kappa)
            v = is_mu_stable(u, slope)
            weight = f"mu={fmt_number(v.total)}"
            vals = [r.value - v.total for r in v.values]
        else:
            w = theta if theta is not None else theta_of(u)
            v = is_theta_stable(u, w)
            weight = ",".join(map(str, w))
            vals = [r.value for r in v.values]
        wit = tuple(f"{fmt_set(_ordered(p, r.support))}={fmt_number(r.value)}" for r in v.values)
        if kappa is None and v.total != 0:
            wit = (f"U={fmt_number(v.total)}",) + wit
        recs.append(Record(u.sorted_support(), u.dimv, weight, v.status, wit))
        margins.append([float(x) for x in vals])
    return recs, margins


def _sincere_shape(p: Poset):
    for s in sincere_subposets(p):
        if len(s.points) == len(p):
            return s
    raise UsageError("--m needs a poset that is a single sincere fence")


def _geometric_records(src, p: Poset, objs, args) -> tuple[list[Record], list[list[float]]]:
    recs, margins = [], []
    if args.m is not None:
        shape = _sincere_shape(p)
        check = lambda u: geo.phi_m_stability_check(shape, u, args.m)  # noqa: E731
        sign = 1
    else:
        q = _need_quiver(src, "stability --method geometric")
        poly = geo.build_polygon(q.quiver)
        check = lambda u: geo.phi_stability_check(poly, u)  # noqa: E731
        sign = -1
    for u in objs:
        v = check(u)
        wit = tuple(f"{fmt_set(_ordered(p, r.support))}={fmt_charge(r.charge)}" for r in v.records)
        recs.append(Record(u.sorted_support(), u.dimv, fmt_charge(v.charge), v.status, wit))
        # flip so that a stable object has all margins below zero in both schemes
        margins.append([-float(sign * r.cross) for r in v.records])
    return recs, margins


def cmd_stability(args) -> int:
    if args.method == "geometric" and (args.theta or args.kappa):
        raise UsageError("--theta/--kappa apply to the bilinear method only")
    if args.method == "bilinear" and args.m is not None:
        raise UsageError("--m applies to the geometric method only")
    if args.kappa and not args.theta:
        raise UsageError("--kappa needs --theta")
    if args.m is not None and args.m < 1:
        raise UsageError("--m must be at least 1")
    src = read_source(args.input)
    p = src.poset()
    objs = enumerate_indecomposables(p)
    if args.method == "bilinear":
        recs, margins = _bilinear_records(p, objs, args)
    else:
        recs, margins = _geometric_records(src, p, objs, args)
    _write(render(recs, args.format), args.output)
    if args.plot:
        from .render import margin_figure

        title = f"{args.method} stability" + (f", m={args.m}" if args.m is not None else "")
        margin_figure([fmt_set(r.support) for r in recs], margins, title, args.plot)
    counts = Counter(r.verdict for r in recs)
    print("summary\t" + "\t".join(f"{k}={counts[k]}" for k in sorted(counts)), file=sys.stderr)
    return OK if all(r.verdict in ("stable", "boundary") for r in recs) else FAILED


def cmd_polygon(args) -> int:
    src = _need_quiver(read_source(args.input), "polygon")
    q = src.quiver
    classes = geo.classify(q, src.aliens, args.reading)
    lines = ["segment\tmodule\tsuitable\tstar\tfrozen_by\tsp"]
    for g, c in sorted(classes.items()):
        a, b = geo.functor_F(g)
        frozen = ",".join(f"{s}->{t}" for s, t in c.frozen_by) or "-"
        lines.append(f"{g}\tM({a},{b})\t{int(c.suitable)}\t{int(c.star)}\t{frozen}\t{int(c.sp)}")
    _write("\n".join(lines) + "\n", args.output)
    if args.svg:
        from .render import polygon_figure

        polygon_figure(geo.build_polygon(q), classes, args.svg)
    return OK


def cmd_ar_quiver(args) -> int:
    from .render import to_dot

    src = _need_quiver(read_source(args.input), "ar-quiver")
    if args.full:
        graph = geo.translation_quiver(geo.build_polygon(src.quiver))
        validate = validate_alien_set(src.quiver, src.aliens)
        if not validate:
            raise PeakSprError(f"condition ({validate.condition}): {validate.message}")
    else:
        graph = geo.ar_quiver_sp(src.quiver, src.aliens)
    text = to_dot(graph)
    if args.dot:
        Path(args.dot).write_text(text, encoding="utf-8")
        print(f"nodes\t{len(graph.nodes)}\narrows\t{len(graph.arrows)}\ntranslations\t{len(graph.translation)}")
    else:
        sys.stdout.write(text)
    return OK


def cmd_verify(args) -> int:
    from .sweeps import poset_sweep, quiver_sweep

    if args.max_points < 1 or args.jobs < 1:
        raise UsageError("--max-points and --jobs must be positive")
    posets = poset_sweep(args.max_points, args.jobs)
    quivers = quiver_sweep(args.max_points, args.jobs)
    out = ["check\tsize\tcases\tobjects\tfailures"]
    bad = 0
    for n in range(1, args.max_points + 1):
        rs = [r for r in posets if len(r.key) == n]
        fails = sum(len(r.failures) for r in rs)
        bad += fails
        out.append(f"theta-lift\t{n}\t{len(rs)}\t{sum(r.objects for r in rs)}\t{fails}")
    for n in range(1, args.max_points + 1):
        rs = [r for r in quivers if len(r.word) + 1 == n]
        angle = Counter()
        for r in rs:
            angle += r.angle
        unstable = sum(v for k, v in angle.items() if k != "stable")
        mism = sum(not r.bijection for r in rs)
        bad += unstable + mism
        out.append(f"segment-bijection\t{n}\t{len(rs)}\t{sum(r.objects for r in rs)}\t{mism}")
        out.append(f"segment-angle\t{n}\t{len(rs)}\t{sum(r.objects for r in rs)}\t{unstable}")
    if args.list:
        for r in posets:
            out.append(f"poset\t{len(r.key)}\t{','.join(map(str, r.key))}\t{r.objects}\t{len(r.failures)}")
    _write("\n".join(out) + "\n", args.output)
    return OK if bad == 0 else FAILED


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="peakspr", description="Peak posets of type A: objects, subobjects and stability.")
    sub = ap.add_subparsers(dest="verb", required=True)

    def with_input(name, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("input", help="poset or quiver file")
        return sp

    sp = with_input("validate", "check the type A conditions and the alien set")
    sp.set_defaults(func=cmd_validate)

    sp = with_input("indecomposables", "list supports of the indecomposable objects")
    sp.set_defaults(func=cmd_indecomposables)

    sp = with_input("subspaces", "proper subobject supports of one indecomposable")
    sp.add_argument("support", help="comma-separated points, e.g. 1,2,3")
    sp.set_defaults(func=cmd_subspaces)

    sp = with_input("stability", "stability verdict for every indecomposable")
    sp.add_argument("--method", choices=("bilinear", "geometric"), default="bilinear")
    sp.add_argument("--m", type=int, help="shift for the sincere-fence charge Z_m")
    sp.add_argument("--theta", help="weight, comma-separated in file point order")
    sp.add_argument("--kappa", help="slope denominator, comma-separated")
    sp.add_argument("--format", choices=("tsv", "json"), default="tsv")
    sp.add_argument("-o", "--output", help="report file (default stdout)")
    sp.add_argument("--plot", help="figure of subobject margins (.png, .svg or .pdf)")
    sp.set_defaults(func=cmd_stability)

    sp = with_input("polygon", "segment classification of the polygon model")
    sp.add_argument("--svg", help="write the polygon drawing here")
    sp.add_argument("--reading", choices=("bounded", "literal"), default="bounded",
                    help="how principal subchains are read")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_polygon)

    sp = with_input("ar-quiver", "graph of sp-segments and sp-pivots in DOT")
    sp.add_argument("--dot", help="write DOT here instead of stdout")
    sp.add_argument("--full", action="store_true", help="use every segment and plain pivots")
    sp.set_defaults(func=cmd_ar_quiver)

    sp = sub.add_parser("verify", help="exhaustive sweeps over small posets and quivers")
    sp.add_argument("--max-points", type=int, default=6)
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--list", action="store_true", help="also list every poset by canonical key")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_verify)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as e:
        where = f"{args.input}:{e.line}: " if e.line else f"{args.input}: "
        print(f"parse error: {where}{e.message}", file=sys.stderr)
        return USAGE
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return USAGE
    except FileNotFoundError as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE
    except PeakSprError as e:
        print(f"failed: {e}", file=sys.stderr)
        return FAILED


if __name__ == "__main__":
    sys.exit(main())
