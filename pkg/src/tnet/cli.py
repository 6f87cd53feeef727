"""Command-line front end.

Exit codes: 0 success / valid, 1 invalid result, 2 bad input or parse
error, 3 construction or computation error (its name goes to stderr).
"""

import argparse
import json
import os
import sys
import time
from fractions import Fraction

from . import applications, dims, formats, generators, geometry, nets
from .errors import BadInput, ParseError, TNetError
from .numbers import as_fraction, format_fraction
from .tuples import build_spanning_cycle

METHODS = ("random", "det", "direct", "trivial", "lc", "vc1", "exact", "frames", "rects")
FAMILIES = ("halfplane", "disk", "rect", "frame", "segment")


def _say(args, *parts):
    if not args.quiet:
        print(*parts)


def _fraction(text):
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    return value


# ---------------------------------------------------------------------------
# instances
# ---------------------------------------------------------------------------


def generate(kind, n=None, side=None, family=None, edges=None, density=0.3, seed=0,
             input_path=None):
    """Returns ``(points or None, hypergraph)`` for a generator kind."""
    if kind == "grid":
        if not side or side < 1:
            raise BadInput("grid needs --side >= 1")
        pts = geometry.grid(side)
    elif kind == "staircase":
        pts = geometry.staircase(n or 8)
    elif kind == "random-uniform":
        if not n or n < 1:
            raise BadInput("random-uniform needs --n >= 1")
        if family is None:
            return None, generators.random_hypergraph(n, edges or 4 * n, seed, density)
        pts = geometry.random_points(n, seed)
    elif kind == "interval":
        if not n or n < 1:
            raise BadInput("interval needs --n >= 1")
        return None, generators.interval_hypergraph(n)
    elif kind == "file":
        if not input_path:
            raise BadInput("file needs --input")
        pts = formats.loads_pts(formats.read_text(input_path))
    else:
        raise BadInput(f"unknown generator {kind!r}")
    if family is None:
        raise BadInput(f"{kind} needs --family")
    return pts, geometry.instance(pts, family).hyper


def parse_instance(text, seed=0):
    """Instance from a file path or a ``kind:arg:...`` generator string.

    Generator strings: ``grid:SIDE:FAMILY``, ``staircase:N:FAMILY``,
    ``interval:N``, ``random:N:EDGES``, ``points:N:FAMILY``.
    """
    if os.path.exists(text):
        if text.endswith(".pts"):
            raise BadInput("a .pts instance needs a family; use points via gen first")
        return None, formats.loads_hg(formats.read_text(text))[0]
    parts = text.split(":")
    kind = parts[0]
    try:
        if kind == "grid":
            return generate("grid", side=int(parts[1]), family=parts[2])
        if kind == "staircase":
            return generate("staircase", n=int(parts[1]), family=parts[2])
        if kind == "interval":
            return generate("interval", n=int(parts[1]))
        if kind == "random":
            return generate("random-uniform", n=int(parts[1]), edges=int(parts[2]), seed=seed)
        if kind == "points":
            return generate("random-uniform", n=int(parts[1]), family=parts[2], seed=seed)
    except (IndexError, ValueError):
        raise BadInput(f"malformed instance string {text!r}") from None
    raise BadInput(f"no such file or generator: {text!r}")


def _load_input(path, family):
    text = formats.read_text(path)
    if path.endswith(".pts"):
        pts = formats.loads_pts(text)
        return pts, (geometry.instance(pts, family).hyper if family else None)
    return None, formats.loads_hg(text)[0]


# ---------------------------------------------------------------------------
# constructions
# ---------------------------------------------------------------------------


def run_method(method, H, eps, t, d=None, seed=0, pts=None, oversample=1.0):
    """Dispatch one construction; returns ``(family, verify hypergraph)``."""
    if method in ("frames", "rects"):
        if pts is None:
            raise BadInput(f"{method} needs a .pts input")
        if t != 2:
            raise BadInput(f"{method} builds 2-nets; use -t 2")
        if method == "frames":
            inst = geometry.instance(pts, "frame")
            return geometry.frames_eps2net(pts, eps, inst), inst.hyper
        inst = geometry.instance(pts, "rect")
        return geometry.rectangles_eps2net(pts, eps, seed, inst), inst.hyper
    if H is None:
        raise BadInput("this method needs a hypergraph; pass --family with a .pts input")
    G = H if H.dedup else H.deduplicated()
    if method == "random":
        return nets.random_net(G, eps, t, seed, oversample, d), G
    if method == "det":
        if t != 1:
            raise BadInput("det builds eps-nets; use -t 1 (or the direct method)")
        if d is None:
            raise BadInput("det needs -d")
        return nets.det_eps_net(G, eps, d), G
    if method == "direct":
        if d is None:
            d = dims.t_vc_dimension(G, t)
        return nets.direct_eps_t_net(G, eps, t, d), G
    if method == "trivial":
        return nets.trivial_eps_t_net(G, eps, t), G
    if method == "lc":
        return nets.lc_eps_t_net(G, eps, t, seed, d), G
    if method == "vc1":
        return nets.vc1_eps_t_net(G, eps, t), G
    if method == "exact":
        return nets.min_net_exact(G, eps, t), G
    raise BadInput(f"unknown method {method!r}")


def cmd_gen(args):
    pts, H = generate(args.kind, n=args.n, side=args.side, family=args.family,
                      edges=args.edges, density=args.density, seed=args.seed,
                      input_path=args.input)
    stem = args.output or args.kind
    if stem.endswith(".hg") or stem.endswith(".pts"):
        stem = stem.rsplit(".", 1)[0]
    if pts is not None:
        formats.write_text(stem + ".pts", formats.dumps_pts(pts))
    cycle = None
    if args.cycle:
        cycle = build_spanning_cycle(H if H.dedup else H.deduplicated(), args.seed)
    formats.write_text(stem + ".hg", formats.dumps_hg(H, cycle))
    _say(args, f"n={H.n} edges={H.m} distinct={len(set(H.edges))} -> {stem}.hg")
    return 0


def cmd_construct(args):
    pts, H = _load_input(args.input, args.family)
    start = time.perf_counter()
    fam, G = run_method(args.method, H, args.eps, args.t, args.d, args.seed, pts,
                        args.oversample)
    elapsed = (time.perf_counter() - start) * 1000.0
    report = nets.verify_net(G, args.eps, fam.t, fam)
    report.runtime_ms = elapsed
    out = args.output or os.path.splitext(args.input)[0] + ".net"
    formats.write_text(out, formats.dumps_net(fam, args.eps))
    row = formats.report_row(os.path.basename(args.input), args.method, report, True)
    if args.csv:
        new = not os.path.exists(args.csv)
        with open(args.csv, "a", encoding="utf-8", newline="") as fh:
            text = formats.csv_text([row], formats.REPORT_FIELDS)
            fh.write(text if new else text.split("\n", 1)[1])
    if not args.quiet:
        sys.stdout.write(formats.csv_text([row], formats.REPORT_FIELDS))
    if not report.valid:
        print(f"uncovered heavy edge {report.witness}", file=sys.stderr)
        return 0 if args.allow_invalid else 1
    return 0


def cmd_verify(args):
    H = formats.loads_hg(formats.read_text(args.hg))[0]
    fam, eps_file = formats.loads_net(formats.read_text(args.net), H.n)
    eps = args.eps if args.eps is not None else eps_file
    t = args.t if args.t is not None else fam.t
    report = nets.verify_net(H, eps, t, fam)
    if report.valid:
        _say(args, f"valid: {fam.size} members cover every heavy edge")
        return 0
    print(f"invalid: heavy edge {report.witness} "
          f"{{{' '.join(map(str, H.edge_members(report.witness)))}}} is uncovered")
    return 0 if args.allow_invalid else 1


def cmd_dims(args):
    H = formats.loads_hg(formats.read_text(args.hg))[0]
    ts = sorted(set(args.t or [2]))
    rep = dims.dimension_report(H, ts, args.m_max)
    text = json.dumps(rep.as_dict(), indent=None if args.quiet else 2, sort_keys=True)
    if args.output:
        formats.write_text(args.output, text + "\n")
    print(text)
    return 0


def cmd_turan(args):
    r = applications.check_turan_identity(args.n, args.k, args.t)
    row = [r.n, r.k, r.t, r.turan_number, r.min_net_size, str(r.identity_holds).lower()]
    sys.stdout.write(formats.csv_text([row], ("n", "k", "t", "turan", "min_net", "identity")))
    return 0 if r.identity_holds else 1


def cmd_color(args):
    H = formats.loads_hg(formats.read_text(args.hg))[0]
    col = applications.rainbow_pair_coloring(H, args.eps, args.seed)
    ok = applications.verify_rainbow(H, args.eps, col)
    if args.output:
        rows = []
        for pair, c in sorted(col.colors.items()):
            u, v = (pair & -pair).bit_length() - 1, pair.bit_length() - 1
            rows.append([u, v, c])
        formats.write_text(args.output, formats.csv_text(rows, ("u", "v", "color")))
    _say(args, f"num_colors={col.num_colors} rainbow={'yes' if ok else 'no'}")
    return 0 if ok or args.allow_invalid else 1


EXPERIMENT_FIELDS = ("instance", "n", "edges", "method", "eps", "t", "size", "valid",
                     "runtime_ms", "error")


def run_experiment(instances, methods, eps_list, t_list, seed=0, d=None, timing=False):
    """Rows of the cross product, in input order; errors become an ``error`` cell."""
    rows = []
    for inst in instances:
        pts, H = parse_instance(inst, seed)
        for method in methods:
            for eps in eps_list:
                for t in t_list:
                    base = [inst, H.n, H.m, method, format_fraction(eps), t]
                    start = time.perf_counter()
                    try:
                        fam, G = run_method(method, H, eps, t, d, seed, pts)
                        rep = nets.verify_net(G, eps, t, fam)
                        ms = (time.perf_counter() - start) * 1000.0
                        rows.append(base + [fam.size, str(rep.valid).lower(),
                                            f"{ms:.3f}" if timing else "", ""])
                    except TNetError as err:
                        rows.append(base + ["", "", "", type(err).__name__])
    return rows


def cmd_experiment(args):
    sweep = {}
    if args.spec:
        sweep = json.loads(formats.read_text(args.spec))
    instances = args.instance or sweep.get("instances", [])
    methods = args.methods or sweep.get("methods", [])
    eps_list = args.eps or [as_fraction(str(e)) for e in sweep.get("eps", [])]
    t_list = args.t or sweep.get("t", [])
    seed = sweep.get("seed", 0) if args.seed == 0 else args.seed
    if not (instances and methods and eps_list and t_list):
        raise BadInput("experiment needs instances, methods, eps and t lists")
    for m in methods:
        if m not in METHODS:
            raise BadInput(f"unknown method {m!r}")
    rows = run_experiment(instances, methods, eps_list, t_list, seed,
                          args.d, args.timing)
    text = formats.csv_text(rows, EXPERIMENT_FIELDS)
    if args.output:
        formats.write_text(args.output, text)
    if not args.quiet or not args.output:
        sys.stdout.write(text)
    return 0


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _globals(parser, suppress):
    default = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--seed", type=int, default=default(0), help="random seed")
    parser.add_argument("--output", "-o", default=default(None), help="output path")
    parser.add_argument("--allow-invalid", action="store_true", default=default(False),
                        help="exit 0 even when the result is invalid")
    parser.add_argument("--quiet", "-q", action="store_true", default=default(False))


def build_parser():
    p = argparse.ArgumentParser(prog="tnet", description="eps-t-net constructions and checks")
    _globals(p, False)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, **kw):
        sp = sub.add_parser(name, **kw)
        _globals(sp, True)
        return sp

    g = add("gen", help="generate an instance")
    g.add_argument("kind", choices=("grid", "random-uniform", "staircase", "interval", "file"))
    g.add_argument("--n", type=int)
    g.add_argument("--side", type=int)
    g.add_argument("--family", choices=FAMILIES)
    g.add_argument("--edges", type=int, help="edge count for abstract random instances")
    g.add_argument("--density", type=float, default=0.3)
    g.add_argument("--input", help=".pts file for kind 'file'")
    g.add_argument("--cycle", action="store_true", help="append a low-crossing cycle line")
    g.set_defaults(func=cmd_gen)

    c = add("construct", help="build a net")
    c.add_argument("input", help=".hg file, or .pts for frames/rects")
    c.add_argument("--method", required=True, choices=METHODS)
    c.add_argument("--eps", required=True, type=_fraction)
    c.add_argument("-t", type=int, default=None)
    c.add_argument("-d", type=int, default=None)
    c.add_argument("--family", choices=FAMILIES, help="compile a .pts input with this family")
    c.add_argument("--oversample", type=float, default=1.0)
    c.add_argument("--csv", help="append the report row to this CSV file")
    c.set_defaults(func=cmd_construct)

    v = add("verify", help="check a net")
    v.add_argument("hg")
    v.add_argument("net")
    v.add_argument("--eps", type=_fraction)
    v.add_argument("-t", type=int)
    v.set_defaults(func=cmd_verify)

    dm = add("dims", help="dimension report")
    dm.add_argument("hg")
    dm.add_argument("-t", type=int, action="append", help="t-VC values to compute")
    dm.add_argument("--m-max", type=int, default=None, help="fit the dual shatter function")
    dm.set_defaults(func=cmd_dims)

    tu = add("turan", help="Turan number against the minimum net")
    tu.add_argument("-n", type=int, required=True)
    tu.add_argument("-k", type=int, required=True)
    tu.add_argument("-t", type=int, required=True)
    tu.set_defaults(func=cmd_turan)

    co = add("color", help="rainbow pair coloring")
    co.add_argument("hg")
    co.add_argument("--eps", required=True, type=_fraction)
    co.set_defaults(func=cmd_color)

    ex = add("experiment", help="sweep methods x eps x t over instances")
    ex.add_argument("--spec", help="JSON file with instances, methods, eps, t, seed")
    ex.add_argument("--instance", action="append", help="file or generator string")
    ex.add_argument("--methods", nargs="+")
    ex.add_argument("--eps", nargs="+", type=_fraction)
    ex.add_argument("-t", nargs="+", type=int)
    ex.add_argument("-d", type=int, default=None)
    ex.add_argument("--timing", action="store_true", help="fill runtime_ms (not reproducible)")
    ex.set_defaults(func=cmd_experiment)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "command", None) == "construct" and args.t is None:
        args.t = 2 if args.method in ("frames", "rects") else 1
    try:
        return args.func(args)
    except (ParseError, BadInput, OSError) as err:
        print(f"{type(err).__name__}: {err}", file=sys.stderr)
        return 2
    except TNetError as err:
        print(f"{type(err).__name__}: {err}", file=sys.stderr)
        return 3
    except ValueError as err:
        print(f"BadInput: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
