"""Command-line interface: ``python -m rightangled <command> ...``."""

import argparse
import json
import sys

from . import pipeline
from .bounds import applicable_bounds_from_faces
from .combinatorics import CombPolyhedron, PolyClass
from .enumeration import EnumerationBudget, enumerate_candidates
from .errors import ParseError, RightAngledError
from .exchange import dumps_text, read_graphs, write_graphs
from .gluing import chain_glue, double_compact, double_ideal
from .lobachevsky import v3, v8
from .realization import realize
from .volume import compact_decomposition, ideal_decomposition, volume


def _class_arg(p, required=True):
    p.add_argument("--class", dest="klass", choices=["ideal", "compact"], required=required)


def _cache(args):
    return pipeline.RealizationCache(args.cache) if getattr(args, "cache", None) else None


def _polyhedra(path, fmt, klass=None):
    return [CombPolyhedron.from_skeleton(rs, klass) for rs in read_graphs(path, fmt)]


def _write(path, text):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="\n") as fh:
            fh.write(text)


def cmd_enumerate(args):
    budget = EnumerationBudget(args.klass, args.max_v, 1, args.min_v)
    graphs = [P.skeleton for P in enumerate_candidates(budget)]
    if args.out in (None, "-"):
        if args.format == "binary":
            raise SystemExit("binary output needs --out FILE")
        sys.stdout.write(dumps_text(graphs))
    else:
        write_graphs(args.out, graphs, args.format)
    print(f"{len(graphs)} candidates", file=sys.stderr)
    return 0


def cmd_realize(args):
    cache = _cache(args)
    out = []
    code = 0
    for P in _polyhedra(args.infile, args.format, args.klass):
        m = pipeline.measure(P, cache, args.seed)
        out.append(m.to_dict())
        if not m.ok:
            code = pipeline.EXIT_REALIZATION_FAILURE
    _write(args.out, json.dumps(out, indent=1) + "\n")
    return code


def cmd_volume(args):
    if args.constants:
        print(f"v8 {v8():.15f}")
        print(f"v3 {v3():.15f}")
        if not args.infile:
            return 0
    if not args.infile:
        raise SystemExit("volume needs --in FILE (or --constants)")
    dumps = []
    for P in _polyhedra(args.infile, args.format, args.klass):
        R = realize(P, seed=args.seed)
        vol = volume(R)
        print(f"{P.vertex_count} {vol:.15f}")
        if args.dump_decomposition:
            dec = ideal_decomposition(R) if P.klass is PolyClass.IDEAL else compact_decomposition(R)
            dumps.append(dec.to_dict())
    if args.dump_decomposition:
        _write(args.dump_decomposition, json.dumps(dumps, indent=1) + "\n")
    return 0


def _parse_faces(spec):
    """``3:8,4:2`` (size:count) or a plain list ``3,3,4``."""
    sizes = []
    for part in spec.split(","):
        part = part.strip()
        if not part:
            continue
        if ":" in part:
            k, c = part.split(":")
            sizes += [int(k)] * int(c)
        else:
            sizes.append(int(part))
    return sizes


def cmd_bounds(args):
    sizes = _parse_faces(args.faces) if args.faces else []
    bounds = applicable_bounds_from_faces(args.klass, args.v, sizes)
    if args.json:
        print(json.dumps([b.to_dict() for b in bounds], indent=1))
        return 0
    print(f"{'kind':<26} {'value':>20}  strict  hypothesis")
    for b in bounds:
        print(f"{b.kind.value:<26} {b.value:>20.15f}  {'yes' if b.strict else 'no ':<6}  {b.hypothesis}")
    return 0


def cmd_glue(args):
    (P,) = _polyhedra(args.infile, args.format, args.klass)[:1]
    if args.chain is not None:
        if args.face2 is None:
            raise SystemExit("--chain needs --face2")
        res = chain_glue(P, args.face, args.face2, args.chain)
    elif P.klass is PolyClass.IDEAL:
        res = double_ideal(P, args.face)
    else:
        res = double_compact(P, args.face)
    record = {
        "V": res.polyhedron.vertex_count,
        "vertex_count_check": res.vertex_count_check,
        "volume_factor": res.volume_factor,
        "merged_faces": [list(x) for x in res.merged_faces],
    }
    copies = res.volume_factor
    V = P.vertex_count
    # per copy of the input: the new label of each vertex, or null if erased
    record["relabel"] = [[res.relabel.get((c, v)) for v in range(V)] for c in range(copies)]
    graph = dumps_text([res.polyhedron.skeleton])
    text = json.dumps(record) + "\n"
    if args.out in (None, "-"):
        sys.stdout.write(graph)
        sys.stderr.write(text)
    else:
        _write(args.out, graph)
        sys.stdout.write(text)
    return 0


def _census(args):
    return pipeline.census(args.klass, args.max_v, args.min_v, args.jobs, _cache(args), args.seed)


def _failures(ms):
    code = 0
    for m in ms:
        if not m.ok:
            print(f"realization failed for {m.code}: {m.error}", file=sys.stderr)
            code = max(code, pipeline.EXIT_REALIZATION_FAILURE)
        elif m.violations:
            print(f"BOUND VIOLATION for {m.code}: {m.violations}", file=sys.stderr)
            return pipeline.EXIT_BOUND_VIOLATION
    return code


def cmd_census(args):
    rows, ms = _census(args)
    _write(args.out, pipeline.census_csv(rows))
    if args.json:
        detail = {
            "polyhedra": [m.to_dict() for m in ms],
            "coincidences": [list(c) for c in pipeline.volume_coincidences(ms)],
        }
        with open(args.json, "w", newline="\n") as fh:
            json.dump(detail, fh, indent=1)
            fh.write("\n")
    return _failures(ms)


def cmd_figure(args):
    _, ms = _census(args)
    fig = pipeline.figure_data(args.klass, ms, args.max_v, args.min_v)
    _write(args.out, pipeline.figure_csv(fig))
    return _failures(ms)


def cmd_check(args):
    graphs = read_graphs(args.file, args.format)
    reports = []
    code = 0
    for rs in graphs:
        rep, c = pipeline.check_polyhedron(rs, args.klass, _cache(args), args.seed)
        reports.append(rep)
        # a bound violation outranks a realization failure
        if c == pipeline.EXIT_BOUND_VIOLATION or (c and code != pipeline.EXIT_BOUND_VIOLATION):
            code = c
    out = reports[0] if len(reports) == 1 else reports
    _write(args.out, json.dumps(out, indent=1) + "\n")
    return code


def build_parser():
    parser = argparse.ArgumentParser(prog="rightangled", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def io_opts(p, infile=True):
        if infile:
            p.add_argument("--in", dest="infile", required=True)
        p.add_argument("--format", choices=["auto", "text", "binary"], default="auto")
        p.add_argument("--seed", type=int, default=None)

    p = sub.add_parser("enumerate", help="write candidate maps in the exchange format")
    _class_arg(p)
    p.add_argument("--max-v", type=int, required=True)
    p.add_argument("--min-v", type=int, default=0)
    p.add_argument("--out")
    p.add_argument("--format", choices=["text", "binary"], default="text")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("realize", help="realize maps and print their records")
    io_opts(p)
    _class_arg(p, required=False)
    p.add_argument("--cache")
    p.add_argument("--out")
    p.set_defaults(func=cmd_realize)

    p = sub.add_parser("volume", help="print volumes at 15 decimals")
    p.add_argument("--in", dest="infile")
    p.add_argument("--format", choices=["auto", "text", "binary"], default="auto")
    p.add_argument("--seed", type=int, default=None)
    _class_arg(p, required=False)
    p.add_argument("--constants", action="store_true", help="print v8 and v3")
    p.add_argument("--dump-decomposition", metavar="FILE")
    p.set_defaults(func=cmd_volume)

    p = sub.add_parser("bounds", help="bounds applicable to V and a face multiset")
    _class_arg(p)
    p.add_argument("--v", type=int, required=True)
    p.add_argument("--faces", help="face sizes as 'k:count,...' or 'n1,n2,...'")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("glue", help="double along a face or build a chain")
    io_opts(p)
    _class_arg(p, required=False)
    p.add_argument("--face", type=int, required=True)
    p.add_argument("--face2", type=int)
    p.add_argument("--chain", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_glue)

    for name, func, help_ in (("census", cmd_census, "table of counts and volume ranges"),
                              ("figure", cmd_figure, "volume dots and bound lines")):
        p = sub.add_parser(name, help=help_)
        _class_arg(p)
        p.add_argument("--max-v", type=int, required=True)
        p.add_argument("--min-v", type=int, default=0)
        p.add_argument("--jobs", type=int, default=1)
        p.add_argument("--cache")
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--out")
        if name == "census":
            p.add_argument("--json", metavar="FILE", help="per-polyhedron details")
        p.set_defaults(func=func)

    p = sub.add_parser("check", help="full report for polyhedra in a file")
    p.add_argument("file")
    p.add_argument("--format", choices=["auto", "text", "binary"], default="auto")
    _class_arg(p, required=False)
    p.add_argument("--cache")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out")
    p.set_defaults(func=cmd_check)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 1
    except RightAngledError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
