"""Planar point sets, canonical range families, and geometric eps-2-nets.

Coordinates are exact rationals. A canonical family keeps one range per
distinct point subset it realizes, so compiling it gives a deduplicated
hypergraph over the points.
"""

from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import ceil, comb, lcm, log2

import numpy as np

from .errors import BadInput, TooFewPoints, TooLarge
from .exact import hitting_set
from .hypergraph import Hypergraph, heavy_edges, heavy_threshold, mask_of, members
from .nets import TSubsetFamily, hitting_net, verify_net
from .numbers import as_fraction

KINDS = ("halfplane", "disk", "axis_rect", "frame", "axis_segment")
ALIASES = {"rect": "axis_rect", "segment": "axis_segment", "halfplane": "halfplane",
           "disk": "disk", "frame": "frame", "axis_rect": "axis_rect",
           "axis_segment": "axis_segment"}
RECT_GUARD = 500
DISK_GUARD = 300
WORK_BUDGET = 50_000_000


@dataclass(frozen=True)
class PointSet:
    points: tuple

    def __post_init__(self):
        pts = tuple((as_fraction(x), as_fraction(y)) for x, y in self.points)
        if len(set(pts)) != len(pts):
            raise BadInput("points must be pairwise distinct")
        object.__setattr__(self, "points", pts)

    def __len__(self):
        return len(self.points)

    @property
    def xs(self):
        return [p[0] for p in self.points]

    @property
    def ys(self):
        return [p[1] for p in self.points]


@dataclass(frozen=True)
class RangeFamily:
    kind: str
    ranges: tuple
    masks: tuple

    def __len__(self):
        return len(self.ranges)


@dataclass(frozen=True)
class GeometricInstance:
    points: PointSet
    family: RangeFamily
    hyper: Hypergraph
    range_map: tuple


def _kind(kind):
    try:
        return ALIASES[kind]
    except KeyError:
        raise BadInput(f"unknown range family {kind!r}") from None


def _bits_to_int(flags):
    packed = np.packbits(np.asarray(flags, dtype=np.uint8), bitorder="little")
    return int.from_bytes(packed.tobytes(), "little")


def _integer_coords(pts):
    """Coordinates scaled by a common denominator to Python ints."""
    den = 1
    for x, y in pts.points:
        den = lcm(den, x.denominator, y.denominator)
    return [int(x * den) for x in pts.xs], [int(y * den) for y in pts.ys]


class _Collector:
    def __init__(self):
        self.seen = {}

    def add(self, mask, params):
        if mask not in self.seen:
            self.seen[mask] = params

    def family(self, kind):
        items = sorted(self.seen.items(), key=lambda kv: (kv[0].bit_count(), kv[0]))
        return RangeFamily(kind, tuple(p for _, p in items), tuple(m for m, _ in items))


# ---------------------------------------------------------------------------
# halfplanes
# ---------------------------------------------------------------------------


def _halfplanes(pts, col):
    n = len(pts)
    col.add(0, ("none",))
    col.add((1 << n) - 1, ("all",))
    if n == 1:
        return
    X, Y = _integer_coords(pts)
    X = np.array(X, dtype=object) if max(map(abs, X + Y)) > 2 ** 30 else np.array(X, dtype=np.int64)
    Y = np.array(Y, dtype=X.dtype)
    for i in range(n):
        for j in range(i + 1, n):
            dx, dy = X[j] - X[i], Y[j] - Y[i]
            cross = dx * (Y - Y[i]) - dy * (X - X[i])
            on = np.flatnonzero(cross == 0)
            # each line is handled once, from its two lowest-indexed points
            if on[0] != i or on[1] != j:
                continue
            left = _bits_to_int(cross > 0)
            right = _bits_to_int(cross < 0)
            proj = dx * (X[on] - X[i]) + dy * (Y[on] - Y[i])
            line = [int(on[q]) for q in np.argsort(proj, kind="stable")]
            prefix = [0]
            for v in line:
                prefix.append(prefix[-1] | (1 << v))
            full = prefix[-1]
            for p in range(len(line) + 1):
                head, tail = prefix[p], full ^ prefix[p]
                col.add(left | head, ("hp", i, j, "left", "prefix", p))
                col.add(left | tail, ("hp", i, j, "left", "suffix", p))
                col.add(right | head, ("hp", i, j, "right", "prefix", p))
                col.add(right | tail, ("hp", i, j, "right", "suffix", p))


def _halfplane_mask(pts, params):
    n = len(pts)
    if params[0] == "none":
        return 0
    if params[0] == "all":
        return (1 << n) - 1
    _, i, j, side, part, p = params
    (xi, yi), (xj, yj) = pts.points[i], pts.points[j]
    dx, dy = xj - xi, yj - yi
    line, mask = [], 0
    for v, (x, y) in enumerate(pts.points):
        c = dx * (y - yi) - dy * (x - xi)
        if c == 0:
            line.append((dx * (x - xi) + dy * (y - yi), v))
        elif (c > 0) == (side == "left"):
            mask |= 1 << v
    line.sort()
    chosen = line[:p] if part == "prefix" else line[p:]
    return mask | mask_of(v for _, v in chosen)


# ---------------------------------------------------------------------------
# axis-parallel rectangles, frames and segments
# ---------------------------------------------------------------------------


def _axis_masks(values):
    """Distinct sorted values and, per value, the mask of points having it."""
    uniq = sorted(set(values))
    pos = {v: k for k, v in enumerate(uniq)}
    at = [0] * len(uniq)
    for idx, v in enumerate(values):
        at[pos[v]] |= 1 << idx
    return uniq, at


def _range_masks(at):
    """between[a][b] = mask of points with value index in [a, b]."""
    u = len(at)
    out = [[0] * u for _ in range(u)]
    for a in range(u):
        acc = 0
        for b in range(a, u):
            acc |= at[b]
            out[a][b] = acc
    return out


def _rects(pts, col):
    xs, xat = _axis_masks(pts.xs)
    ys, yat = _axis_masks(pts.ys)
    work = (len(xs) * (len(xs) + 1) // 2) * (len(ys) * (len(ys) + 1) // 2)
    if work > WORK_BUDGET:
        raise TooLarge(f"{work} candidate rectangles exceeds the work budget")
    xr, yr = _range_masks(xat), _range_masks(yat)
    col.add(0, ("none",))
    for a in range(len(xs)):
        for b in range(a, len(xs)):
            xm = xr[a][b]
            for c in range(len(ys)):
                row = yr[c]
                for d in range(c, len(ys)):
                    m = xm & row[d]
                    if m and m not in col.seen:
                        col.seen[m] = ("rect", xs[a], xs[b], ys[c], ys[d])


def _offsets(uniq):
    """Candidate frame coordinates: every value, and a point just past each one.

    With delta half the smallest gap, v + delta separates v from its
    successor; min - delta lies before everything.
    """
    if len(uniq) > 1:
        delta = min(b - a for a, b in zip(uniq, uniq[1:])) / 2
    else:
        delta = Fraction(1, 2)
    coords = [uniq[0] - delta]
    for v in uniq:
        coords.extend([v, v + delta])
    return coords


def _frames(pts, col):
    xs, xat = _axis_masks(pts.xs)
    ys, yat = _axis_masks(pts.ys)
    cx, cy = _offsets(xs), _offsets(ys)
    work = comb(len(cx), 2) * comb(len(cy), 2)
    if work > WORK_BUDGET:
        raise TooLarge(f"{work} candidate frames exceeds the work budget")

    def tables(coords, uniq, at):
        # line mask at each coordinate, and mask of values within [c1, c2]
        line = []
        for c in coords:
            k = bisect_left(uniq, c)
            line.append(at[k] if k < len(uniq) and uniq[k] == c else 0)
        prefix = [0]
        for m in at:
            prefix.append(prefix[-1] | m)
        lo = [bisect_left(uniq, c) for c in coords]
        hi = [bisect_left(uniq, c) + (1 if line[q] else 0) for q, c in enumerate(coords)]
        return line, prefix, lo, hi

    xline, xpre, xlo, xhi = tables(cx, xs, xat)
    yline, ypre, ylo, yhi = tables(cy, ys, yat)
    col.add(0, ("none",))
    ny = len(cy)
    yband = {}
    for c in range(ny):
        for d in range(c + 1, ny):
            yband[c, d] = (ypre[yhi[d]] & ~ypre[ylo[c]], yline[c] | yline[d])
    for a in range(len(cx)):
        for b in range(a + 1, len(cx)):
            xband = xpre[xhi[b]] & ~xpre[xlo[a]]
            sides = xline[a] | xline[b]
            if not (xband or sides):
                continue
            for (c, d), (yb, tops) in yband.items():
                m = (sides & yb) | (tops & xband)
                if m not in col.seen:
                    col.seen[m] = ("frame", cx[a], cx[b], cy[c], cy[d])


def _segments(pts, col):
    n = len(pts)
    col.add(0, ("none",))
    for v in range(n):
        col.add(1 << v, ("seg", v, v))
    for axis in (0, 1):
        lines = {}
        for v, p in enumerate(pts.points):
            lines.setdefault(p[1 - axis], []).append((p[axis], v))
        for run in lines.values():
            run.sort()
            order = [v for _, v in run]
            for a in range(len(order)):
                m = 1 << order[a]
                for b in range(a + 1, len(order)):
                    m |= 1 << order[b]
                    col.add(m, ("seg", order[a], order[b]))


# ---------------------------------------------------------------------------
# disks
# ---------------------------------------------------------------------------


def _disk_through(X, Y, p, q):
    """Masks of closed disks with p and q on the boundary, swept along the bisector.

    Center c(s) = mid + (s / 2) * perp. Point x lies inside iff
    a_x + s * b_x <= 0, so membership only changes at s = -a_x / b_x.
    """
    mx2, my2 = X[p] + X[q], Y[p] + Y[q]  # doubled midpoint
    px, py = -(Y[q] - Y[p]), X[q] - X[p]
    const, pos, neg = 0, [], []
    for v in range(len(X)):
        # 4 (|c - x|^2 - |c - p|^2) in doubled coordinates
        a = (mx2 - 2 * X[v]) ** 2 + (my2 - 2 * Y[v]) ** 2 - (mx2 - 2 * X[p]) ** 2 - (my2 - 2 * Y[p]) ** 2
        b = 4 * (px * (X[p] - X[v]) + py * (Y[p] - Y[v]))
        if b == 0:
            if a <= 0:
                const |= 1 << v
        elif b > 0:
            pos.append((Fraction(-a, b), v))
        else:
            neg.append((Fraction(-a, b), v))
    crit = sorted({s for s, _ in pos} | {s for s, _ in neg})
    probes = []
    if crit:
        probes.append(crit[0] - 1)
        for k, s in enumerate(crit):
            probes.append(s)
            probes.append((s + crit[k + 1]) / 2 if k + 1 < len(crit) else s + 1)
    else:
        probes.append(Fraction(0))
    for s in probes:
        m = const
        for sx, v in pos:
            if s <= sx:
                m |= 1 << v
        for sx, v in neg:
            if s >= sx:
                m |= 1 << v
        # center in the original scale: (mid + s * perp) / den, see _disk_params
        yield m, s


def _disks(pts, col):
    n = len(pts)
    if n ** 4 > WORK_BUDGET * 100:
        raise TooLarge("disk enumeration is out of reach")
    col.add(0, ("none",))
    for v in range(n):
        col.add(1 << v, ("disk1", v))
    X, Y = _integer_coords(pts)
    for p, q in combinations(range(n), 2):
        for m, s in _disk_through(X, Y, p, q):
            col.add(m, ("disk2", p, q, s))


def _disk_params(pts, params):
    """(center_x, center_y, radius_squared) in the original coordinates."""
    if params[0] == "disk1":
        x, y = pts.points[params[1]]
        return x, y, Fraction(0)
    _, p, q, s = params
    (xp, yp), (xq, yq) = pts.points[p], pts.points[q]
    # the sweep moves the center by s/2 perpendiculars (see _disk_through)
    cx = (xp + xq) / 2 - s / 2 * (yq - yp)
    cy = (yp + yq) / 2 + s / 2 * (xq - xp)
    return cx, cy, (cx - xp) ** 2 + (cy - yp) ** 2


# ---------------------------------------------------------------------------
# public API
# ---------------------------------------------------------------------------


def canonical_ranges(pts, kind):
    kind = _kind(kind)
    n = len(pts)
    if kind in ("axis_rect", "frame") and n > RECT_GUARD:
        raise TooLarge(f"{kind} enumeration limited to {RECT_GUARD} points")
    if kind == "disk" and n > DISK_GUARD:
        raise TooLarge(f"disk enumeration limited to {DISK_GUARD} points")
    col = _Collector()
    {"halfplane": _halfplanes, "axis_rect": _rects, "frame": _frames,
     "axis_segment": _segments, "disk": _disks}[kind](pts, col)
    return col.family(kind)


def realize(pts, kind, params):
    """Point subset cut out by one range, recomputed from its parameters."""
    kind = _kind(kind)
    if params[0] == "none":
        return 0
    if kind == "halfplane":
        return _halfplane_mask(pts, params)
    if kind == "axis_segment":
        _, a, b = params
        (xa, ya), (xb, yb) = pts.points[a], pts.points[b]
        x1, x2, y1, y2 = min(xa, xb), max(xa, xb), min(ya, yb), max(ya, yb)
        return mask_of(v for v, (x, y) in enumerate(pts.points)
                       if x1 <= x <= x2 and y1 <= y <= y2)
    if kind == "disk":
        cx, cy, r2 = _disk_params(pts, params)
        return mask_of(v for v, (x, y) in enumerate(pts.points)
                       if (x - cx) ** 2 + (y - cy) ** 2 <= r2)
    _, x1, x2, y1, y2 = params
    inside = [x1 <= x <= x2 and y1 <= y <= y2 for x, y in pts.points]
    if kind == "axis_rect":
        return mask_of(v for v, ok in enumerate(inside) if ok)
    return mask_of(v for v, (x, y) in enumerate(pts.points)
                   if inside[v] and (x in (x1, x2) or y in (y1, y2)))


def compile(pts, fam):
    """Hypergraph over the points whose edges are the family's distinct subsets."""
    edges, rmap, seen = [], [], set()
    for m, params in zip(fam.masks, fam.ranges):
        if m not in seen:
            seen.add(m)
            edges.append(m)
            rmap.append(params)
    return GeometricInstance(pts, fam, Hypergraph(len(pts), tuple(edges)), tuple(rmap))


def instance(pts, kind):
    return compile(pts, canonical_ranges(pts, kind))


def grid(side, side_y=None):
    side_y = side if side_y is None else side_y
    return PointSet(tuple((x, y) for y in range(side_y) for x in range(side)))


def staircase(n):
    """Two descending diagonals of n/2 points each, in the two off quadrants."""
    if n % 2 or n < 4:
        raise BadInput("staircase needs an even n >= 4")
    m = n // 2
    a = [(1 - Fraction(k, m), -Fraction(k, m)) for k in range(1, m + 1)]
    b = [(-Fraction(k, m), 1 - Fraction(k, m)) for k in range(1, m + 1)]
    return PointSet(tuple(a + b))


def staircase_cross_pairs(n):
    m = n // 2
    return [(1 << i) | (1 << (m + j)) for i in range(m) for j in range(m)]


def random_points(n, seed=0, lattice=None):
    """n distinct points; integer lattice coordinates when ``lattice`` is given."""
    rng = np.random.default_rng(seed)
    side = lattice if lattice else max(4 * n, 16)
    if side * side < n:
        raise BadInput("lattice too small for n distinct points")
    seen, out = set(), []
    while len(out) < n:
        p = (int(rng.integers(side)), int(rng.integers(side)))
        if p not in seen:
            seen.add(p)
            out.append(p)
    return PointSet(tuple(out))


# ---------------------------------------------------------------------------
# frames
# ---------------------------------------------------------------------------


def _frame_sides(pts, params):
    """Masks of the four sides of a frame, each a run along one axis-parallel line."""
    _, x1, x2, y1, y2 = params
    sides = [0, 0, 0, 0]
    for v, (x, y) in enumerate(pts.points):
        if y1 <= y <= y2:
            if x == x1:
                sides[0] |= 1 << v
            if x == x2:
                sides[1] |= 1 << v
        if x1 <= x <= x2:
            if y == y1:
                sides[2] |= 1 << v
            if y == y2:
                sides[3] |= 1 << v
    return sides


def _line_key(pts, side_mask, vertical):
    v = members(side_mask)[0]
    return ("v", pts.points[v][0]) if vertical else ("h", pts.points[v][1])


def frames_eps2net(pts, eps, inst=None):
    """Adjacent pairs along axis-parallel lines meeting every heavy frame.

    Each heavy frame has a side holding at least a quarter of its points;
    those side runs are collected per line and stabbed with the fewest
    consecutive pairs, greedily by right end.
    """
    e = as_fraction(eps)
    n = len(pts)
    if not 0 < e <= 1:
        raise BadInput("eps must lie in (0, 1]")
    if n < 5 / e:
        raise TooFewPoints(f"need at least 5/eps = {float(5 / e):g} points, got {n}")
    inst = inst or instance(pts, "frame")
    runs = {}
    for i in heavy_edges(inst.hyper, e):
        sides = _frame_sides(pts, inst.range_map[i])
        best = max(range(4), key=lambda s: (sides[s].bit_count(), -s))
        run = sides[best]
        if run.bit_count() < 2:
            continue
        runs.setdefault(_line_key(pts, run, best < 2), set()).add(run)
    fam = set()
    for key, line_runs in sorted(runs.items()):
        vertical = key[0] == "v"
        verts = [v for v, p in enumerate(pts.points) if p[0 if vertical else 1] == key[1]]
        verts.sort(key=lambda v: pts.points[v][1 if vertical else 0])
        pos = {v: k for k, v in enumerate(verts)}
        spans = sorted((max(pos[v] for v in members(r)), min(pos[v] for v in members(r)))
                       for r in line_runs)
        last = -1
        for b, a in spans:
            # the pair (last - 1, last) already lies inside [a, b]
            if last >= 0 and a <= last - 1:
                continue
            fam.add((1 << verts[b - 1]) | (1 << verts[b]))
            last = b
    return TSubsetFamily(2, tuple(fam), {"method": "frames", "eps": e})


# ---------------------------------------------------------------------------
# axis-parallel rectangles
# ---------------------------------------------------------------------------


def _layers(heavy, n, depth=3):
    """Vertex set meeting every heavy edge at least ``depth`` times (when it can)."""
    K = 0
    sizes = []
    for level in range(depth):
        need = [h & ~K for h in heavy if (h & K).bit_count() <= level and h & ~K]
        if level == 0:
            need = list(heavy)
        chosen, _ = hitting_net(need, n)
        sizes.append(len(chosen))
        K |= mask_of(chosen)
    return K, sizes


def _admissible(lo, hi, count, top, h):
    """Lengths in rank units realising exactly ``count`` consecutive ranks.

    Returns the interval [low, high) (high may be None for unbounded) of
    rank-space lengths, scaled by 1/h; boundary-touching ranges may grow.
    """
    low = Fraction(count - 1)
    high = None if lo == 0 or hi == top else Fraction(count + 1)
    return low / h, (None if high is None else high / h)


def _class_constraints(kx, ky, h):
    """Minimal point sets of K inside rank boxes of aspect ratio h with >= 2 points."""
    k = len(kx)
    ux, uy = max(kx) + 1, max(ky) + 1
    col_at = [0] * ux
    row_at = [0] * uy
    for j in range(k):
        col_at[kx[j]] |= 1 << j
        row_at[ky[j]] |= 1 << j
    xr, yr = _range_masks(col_at), _range_masks(row_at)
    out = set()
    for i1 in range(ux):
        for i2 in range(i1, ux):
            xm = xr[i1][i2]
            if not xm:
                continue
            ax, bx = _admissible(i1, i2, i2 - i1 + 1, ux - 1, 1)
            for j1 in range(uy):
                for j2 in range(j1, uy):
                    m = xm & yr[j1][j2]
                    if m.bit_count() < 2:
                        continue
                    ay, by = _admissible(j1, j2, j2 - j1 + 1, uy - 1, h)
                    lo = max(ax, ay)
                    ends = [v for v in (bx, by) if v is not None]
                    if not ends or lo < min(ends):
                        out.add(m)
                        break
    minimal = []
    for m in sorted(out, key=lambda x: (x.bit_count(), x)):
        if not any(o & m == o for o in minimal):
            minimal.append(m)
    return minimal


def _dense_rank(values):
    uniq = sorted(set(values))
    pos = {v: k for k, v in enumerate(uniq)}
    return [pos[v] for v in values]


def rectangles_eps2net(pts, eps, seed=0, inst=None):
    """eps-2-net for axis-parallel rectangles via aspect-ratio classes.

    K meets every heavy rectangle three times. In rank coordinates on K,
    a rectangle with aspect ratio between 2^i and 2^(i+1) is the union of
    two rectangles of ratio 2^i, one of which holds two points of K; so
    2-nets of each class over subsets of K with two points suffice.
    """
    e = as_fraction(eps)
    n = len(pts)
    if e * n <= 1:
        raise TooFewPoints("need eps * n > 1")
    inst = inst or instance(pts, "axis_rect")
    heavy = sorted({inst.hyper.edges[i] for i in heavy_edges(inst.hyper, e)})
    # heavy rectangles with two points (possible when eps * n < 3) are
    # their own net members; the layered argument handles the rest
    fam = {h for h in heavy if h.bit_count() == 2}
    heavy = [h for h in heavy if h.bit_count() >= 3]
    classes = 0
    sizes = []
    if heavy:
        K, sizes = _layers(heavy, n)
        kv = members(K)
        kx = _dense_rank([pts.points[v][0] for v in kv])
        ky = _dense_rank([pts.points[v][1] for v in kv])
        span = ceil(log2(max(len(kv), 2))) + 1
        pairs = list(combinations(range(len(kv)), 2))
        pidx = {p: q for q, p in enumerate(pairs)}
        for i in range(-span, span + 1):
            h = Fraction(2) ** i
            cons = _class_constraints(kx, ky, h)
            if not cons:
                continue
            classes += 1
            encoded = []
            for m in cons:
                c = 0
                for p in combinations(members(m), 2):
                    c |= 1 << pidx[p]
                encoded.append(c)
            chosen, _ = hitting_set(sorted(set(encoded)), len(pairs), node_budget=50_000)
            for q in chosen:
                a, b = pairs[q]
                fam.add((1 << kv[a]) | (1 << kv[b]))
    out = TSubsetFamily(2, tuple(fam), {"method": "rects", "eps": e, "seed": seed,
                                        "layer_sizes": sizes, "classes": classes})
    report = verify_net(inst.hyper, e, 2, out)
    out.provenance["valid"] = report.valid
    return out


__all__ = [
    "PointSet", "RangeFamily", "GeometricInstance", "canonical_ranges", "realize",
    "compile", "instance", "grid", "staircase", "staircase_cross_pairs",
    "random_points", "frames_eps2net", "rectangles_eps2net", "KINDS",
    "heavy_threshold",
]
