"""Text formats: hypergraphs (.hg), point sets (.pts), nets (.net), report CSV.

All are line-oriented UTF-8 with ``#`` comments:

    .hg    n <count> / e <idx> ... / optional cycle <idx> ...
    .pts   p <x> <y>        (rationals such as 3 or -1/4)
    .net   t <size> eps <value> / s <idx> ...
"""

import csv
import io
from fractions import Fraction

from .errors import ParseError
from .hypergraph import Hypergraph, mask_of, members
from .nets import TSubsetFamily
from .numbers import format_fraction


def _lines(text):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def _indices(tokens, lineno, limit=None):
    try:
        idx = [int(x) for x in tokens]
    except ValueError:
        raise ParseError(f"line {lineno}: non-integer index") from None
    if any(b <= a for a, b in zip(idx, idx[1:])):
        raise ParseError(f"line {lineno}: indices must be strictly increasing")
    if idx and (idx[0] < 0 or (limit is not None and idx[-1] >= limit)):
        raise ParseError(f"line {lineno}: index out of range")
    return idx


def dumps_hg(H, cycle=None):
    out = [f"n {H.n}"]
    for e in H.edges:
        out.append(" ".join(["e"] + [str(v) for v in members(e)]))
    if cycle is not None:
        out.append(" ".join(["cycle"] + [str(v) for v in cycle.order]))
    return "\n".join(out) + "\n"


def loads_hg(text):
    """Returns ``(hypergraph, cycle_order or None)``."""
    n = None
    edges, cycle = [], None
    for lineno, tok in _lines(text):
        head = tok[0]
        if head == "n":
            if n is not None or len(tok) != 2:
                raise ParseError(f"line {lineno}: malformed vertex count")
            try:
                n = int(tok[1])
            except ValueError:
                raise ParseError(f"line {lineno}: malformed vertex count") from None
            if n < 0:
                raise ParseError(f"line {lineno}: negative vertex count")
        elif n is None:
            raise ParseError(f"line {lineno}: the first line must be 'n <count>'")
        elif head == "e":
            edges.append(mask_of(_indices(tok[1:], lineno, n)))
        elif head == "cycle":
            order = [int(x) for x in tok[1:]] if all(x.lstrip("-").isdigit() for x in tok[1:]) else None
            if order is None or sorted(order) != list(range(n)):
                raise ParseError(f"line {lineno}: cycle must be a permutation of the vertices")
            cycle = tuple(order)
        else:
            raise ParseError(f"line {lineno}: unknown record {head!r}")
    if n is None:
        raise ParseError("missing 'n <count>' line")
    return Hypergraph(n, tuple(edges)), cycle


def dumps_pts(pts):
    return "".join(f"p {format_fraction(x)} {format_fraction(y)}\n" for x, y in pts.points)


def loads_pts(text):
    from .geometry import PointSet

    out = []
    for lineno, tok in _lines(text):
        if tok[0] != "p" or len(tok) != 3:
            raise ParseError(f"line {lineno}: expected 'p <x> <y>'")
        try:
            out.append((Fraction(tok[1]), Fraction(tok[2])))
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"line {lineno}: malformed coordinate") from None
    try:
        return PointSet(tuple(out))
    except ValueError as err:
        raise ParseError(str(err)) from None


def dumps_net(S, eps):
    out = [f"t {S.t} eps {format_fraction(eps)}"]
    for s in S.members:
        out.append(" ".join(["s"] + [str(v) for v in members(s)]))
    return "\n".join(out) + "\n"


def loads_net(text, n=None):
    """Returns ``(family, eps)``."""
    header = None
    fam = []
    for lineno, tok in _lines(text):
        if header is None:
            if len(tok) != 4 or tok[0] != "t" or tok[2] != "eps":
                raise ParseError(f"line {lineno}: expected 't <size> eps <value>'")
            try:
                t = int(tok[1])
                eps = Fraction(tok[3])
            except (ValueError, ZeroDivisionError):
                raise ParseError(f"line {lineno}: malformed header") from None
            if t < 1:
                raise ParseError(f"line {lineno}: tuple size must be positive")
            header = (t, eps)
            continue
        if tok[0] != "s":
            raise ParseError(f"line {lineno}: unknown record {tok[0]!r}")
        idx = _indices(tok[1:], lineno, n)
        if len(idx) != header[0]:
            raise ParseError(f"line {lineno}: member does not have {header[0]} vertices")
        fam.append(mask_of(idx))
    if header is None:
        raise ParseError("missing 't <size> eps <value>' header")
    return TSubsetFamily(header[0], tuple(fam)), header[1]


REPORT_FIELDS = ("instance", "method", "eps", "t", "size", "valid", "runtime_ms")


def report_row(instance, method, report, timing=True):
    ms = "" if report.runtime_ms is None or not timing else f"{report.runtime_ms:.3f}"
    return [instance, method, format_fraction(report.eps), report.t, report.size,
            str(bool(report.valid)).lower(), ms]


def csv_text(rows, header):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def read_text(path):
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def write_text(path, text):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
