"""Polygon model of a type A quiver with alien arrows.

Vertices of the polygon are 0..N for a quiver on N vertices. Upper vertices
sit above the horizontal line, lower ones below; walking the boundary
clockwise from 0 visits the upper vertices left to right, then N, then the
lower vertices right to left. R is that clockwise step.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .errors import BoundaryAngle, InvalidAlien, NotSincere, NotSpSegment
from .poset import Poset
from .quiver import AlienSet, QuiverA, poset_of_quiver, validate_alien_set
from .spaces import CombPeakSpace, SincereShape, proper_subobjects

Point = tuple[Fraction, Fraction]


@dataclass(frozen=True, order=True)
class LineSegment:
    i: int
    j: int

    def __post_init__(self):
        if not self.i < self.j:
            raise ValueError(f"segment needs i < j, got ({self.i}, {self.j})")

    def __str__(self) -> str:
        return f"γ({self.i},{self.j})"

    @property
    def support(self) -> range:
        """Quiver vertices of the interval module i+1..j."""
        return range(self.i + 1, self.j + 1)


def seg(i: int, j: int) -> LineSegment:
    return LineSegment(i, j)


def hump(n_vertices: int, k: int) -> Fraction:
    """Height of polygon vertex k; concave in k so every vertex is extreme."""
    return Fraction(k * (n_vertices + 1 - k))


@dataclass(frozen=True, eq=False)
class PolygonModel:
    quiver: QuiverA
    upper: tuple[int, ...]
    lower: tuple[int, ...]
    boundary: tuple[int, ...]
    coords: Mapping[int, Point] = field(repr=False)

    @property
    def top(self) -> int:
        return self.quiver.n

    @cached_property
    def R(self) -> dict[int, int]:
        b = self.boundary
        return {b[k]: b[(k + 1) % len(b)] for k in range(len(b))}

    @cached_property
    def Rinv(self) -> dict[int, int]:
        return {v: k for k, v in self.R.items()}

    @property
    def segments(self) -> list[LineSegment]:
        return [LineSegment(i, j) for i, j in combinations(range(self.top + 1), 2)]

    def orbit_back(self, v: int) -> list[int]:
        """v, R^-1(v), R^-2(v), ... once round the boundary."""
        out = [v]
        while True:
            w = self.Rinv[out[-1]]
            if w == v:
                return out
            out.append(w)


def build_polygon(q: QuiverA, coords: Mapping[int, Point] | None = None) -> PolygonModel:
    upper = tuple(q.upper)
    lower = tuple(q.lower)
    boundary = (0,) + upper + (q.n,) + tuple(reversed(lower))
    if coords is None:
        coords = {0: (Fraction(0), Fraction(0)), q.n: (Fraction(q.n), Fraction(0))}
        for k in upper:
            coords[k] = (Fraction(k), hump(q.n, k))
        for k in lower:
            coords[k] = (Fraction(k), -hump(q.n, k))
    return PolygonModel(q, upper, lower, boundary, dict(coords))


def cross(a: Point, b: Point) -> Fraction:
    return a[0] * b[1] - a[1] * b[0]


def sub(a: Point, b: Point) -> Point:
    return (a[0] - b[0], a[1] - b[1])


def is_strictly_convex(p: PolygonModel) -> bool:
    """Every boundary turn is a strict clockwise turn."""
    b = p.boundary
    pts = [p.coords[v] for v in b]
    n = len(pts)
    if n < 3:
        return True
    for k in range(n):
        a, o, c = pts[k - 1], pts[k], pts[(k + 1) % n]
        if cross(sub(o, a), sub(c, o)) >= 0:
            return False
    return True


def pivots(g: LineSegment, p: PolygonModel) -> list[LineSegment]:
    out = []
    j2 = p.Rinv[g.j]
    if g.i < j2:
        out.append(LineSegment(g.i, j2))
    i2 = p.Rinv[g.i]
    if i2 < g.j:
        out.append(LineSegment(i2, g.j))
    return out


@dataclass(frozen=True)
class TranslationQuiverGraph:
    nodes: tuple[LineSegment, ...]
    arrows: tuple[tuple[LineSegment, LineSegment], ...]
    translation: Mapping[LineSegment, LineSegment]
    meshes: tuple[tuple[LineSegment, LineSegment, LineSegment, LineSegment], ...] = ()
    via: Mapping[tuple[LineSegment, LineSegment], tuple[LineSegment, ...]] = field(default_factory=dict)

    def successors(self, g: LineSegment) -> list[LineSegment]:
        return [b for a, b in self.arrows if a == g]


def translation_quiver(p: PolygonModel) -> TranslationQuiverGraph:
    nodes = tuple(p.segments)
    arrows = tuple((g, h) for g in nodes for h in pivots(g, p))
    trans = {}
    for g in nodes:
        a, b = p.R[g.i], p.R[g.j]
        if a < b:
            trans[g] = LineSegment(a, b)
    return TranslationQuiverGraph(nodes, arrows, trans)


def functor_F(g: LineSegment) -> tuple[int, int]:
    return g.i + 1, g.j


# ---------------------------------------------------------------- classification


def suitable_segments(p: PolygonModel) -> list[LineSegment]:
    up = set(p.upper) | {0}
    low = set(p.lower) | {p.top}
    out = []
    for i in range(p.top):
        if (i in up and i + 1 in low) or (i + 1 in up and i in low):
            out.append(LineSegment(i, i + 1))
    return out


def bi_fan(g: LineSegment, p: PolygonModel) -> set[LineSegment]:
    lefts = [g.i] + [x for x in p.orbit_back(g.i)[1:] if x < g.i]
    rights = [g.j] + [y for y in p.orbit_back(g.j)[1:] if y > g.j]
    return {LineSegment(x, y) for x in lefts for y in rights}


def _subchains(chain: list[int], contiguous: bool) -> list[list[int]]:
    if contiguous:
        return [chain[a:b] for a in range(len(chain)) for b in range(a + 2, len(chain) + 1)]
    return [list(c) for k in range(2, len(chain) + 1) for c in combinations(chain, k)]


def principal_subchains(p: PolygonModel, reading: str = "bounded") -> tuple[list[list[int]], list[list[int]]]:
    """Principal subchains of C (lower plus N) and D (upper plus 0).

    reading="literal" takes every subchain and honours the escape clauses
    (max C' = N, min D' = 0 when no bounding suitable segment exists).
    reading="bounded" asks for runs of the chain bounded by suitable segments
    on both sides; this reproduces the standard example.
    """
    suit = suitable_segments(p)
    starts = {g.i for g in suit}
    ends = {g.j for g in suit}
    literal = reading == "literal"
    if reading not in ("literal", "bounded"):
        raise ValueError(f"unknown reading {reading!r}")
    C = sorted(set(p.lower) | {p.top})
    D = sorted(set(p.upper) | {0})
    c_out, d_out = [], []
    for cc in _subchains(C, not literal):
        e = [x for x in cc if x in ends]
        s = [x for x in cc if x in starts]
        if len(e) != 1 or e[0] != cc[0]:
            continue
        if len(s) > 1:
            continue
        if s and s[0] == cc[-1] or not s and literal and cc[-1] == p.top:
            c_out.append(cc)
    for dd in _subchains(D, not literal):
        s = [x for x in dd if x in starts]
        e = [x for x in dd if x in ends]
        if len(s) != 1 or s[0] != dd[-1]:
            continue
        if len(e) > 1:
            continue
        if e and e[0] == dd[0] or not e and literal and dd[0] == 0:
            d_out.append(dd)
    return c_out, d_out


def underline_segments(p: PolygonModel, reading: str = "bounded") -> set[LineSegment]:
    cs, ds = principal_subchains(p, reading)
    out = set()
    for g in p.segments:
        if any(g.i in cc[:-1] for cc in cs) or any(g.j in dd[1:] for dd in ds):
            out.add(g)
    return out


def overline_segments(p: PolygonModel) -> set[LineSegment]:
    low = set(p.lower) | {p.top}
    out = set()
    for g in suitable_segments(p):
        if g.j in low:
            out |= bi_fan(g, p)
    return out


def star_segments(p: PolygonModel, reading: str = "bounded") -> set[LineSegment]:
    return overline_segments(p) - underline_segments(p, reading)


def sink_between(q: QuiverA, a: int, b: int) -> int:
    lo, hi = sorted((a, b))
    inner = [v for v in q.sinks if lo < v < hi]
    if len(inner) != 1:
        raise InvalidAlien(f"no unique sink strictly between {a} and {b}")
    return inner[0]


def frozen_segments(alpha: tuple[int, int], p: PolygonModel) -> set[LineSegment]:
    src, tgt = alpha  # j2 -> j1
    i = sink_between(p.quiver, src, tgt)
    out = set()
    for g in p.segments:
        if tgt < src:
            if g.j >= src and tgt <= g.i < i:
                out.add(g)
        elif g.i < src and i <= g.j < tgt:
            out.add(g)
    return out


def _check_alien(q: QuiverA, f) -> tuple:
    f = tuple(f)
    v = validate_alien_set(q, f)
    if not v:
        raise InvalidAlien(f"condition ({v.condition}): {v.message}")
    return f


@dataclass(frozen=True)
class SegmentClass:
    suitable: bool
    star: bool
    frozen_by: tuple[tuple[int, int], ...]
    sp: bool


def classify(q: QuiverA, f: AlienSet | Iterable = (), reading: str = "bounded") -> dict[LineSegment, SegmentClass]:
    f = _check_alien(q, f)
    p = build_polygon(q)
    suit = set(suitable_segments(p))
    star = star_segments(p, reading)
    frozen = {a: frozen_segments(a, p) for a in f}
    out = {}
    for g in p.segments:
        by = tuple(a for a in f if g in frozen[a])
        out[g] = SegmentClass(g in suit, g in star, by, g in star and not by)
    return out


def sp_segments(q: QuiverA, f: AlienSet | Iterable = (), reading: str = "bounded") -> set[LineSegment]:
    f = _check_alien(q, f)
    p = build_polygon(q)
    out = star_segments(p, reading)
    for a in f:
        out -= frozen_segments(a, p)
    return out


def _sp_pivot_targets(g: LineSegment, p: PolygonModel, sp: set[LineSegment]) -> list[tuple[LineSegment, tuple]]:
    """Compose pivots moving one endpoint until an sp-segment is reached."""
    found = []
    for side in ("j", "i"):
        s, m = g.i, g.j
        passed = []
        for _ in range(p.top + 1):
            if side == "j":
                m = p.Rinv[m]
            else:
                s = p.Rinv[s]
            if not s < m:
                break
            h = LineSegment(s, m)
            if h in sp:
                found.append((h, tuple(passed)))
                break
            passed.append(h)
    return found


def ar_quiver_sp(q: QuiverA, f: AlienSet | Iterable = ()) -> TranslationQuiverGraph:
    sp = sp_segments(q, f)
    p = build_polygon(q)
    nodes = tuple(sorted(sp))
    arrows = []
    via = {}
    for g in nodes:
        for h, passed in _sp_pivot_targets(g, p, sp):
            assert not any(x in sp for x in passed)
            arrows.append((g, h))
            via[(g, h)] = passed
    arrow_set = set(arrows)
    meshes = []
    trans = {}
    for g in nodes:
        outs = [h for a, h in arrows if a == g]
        for h1 in outs:
            for h2 in outs:
                # h1 moved the left end, h2 the right end
                if not (h1.j == g.j and h1.i != g.i and h2.i == g.i and h2.j != g.j):
                    continue
                if h1.i >= h2.j:
                    continue
                end = LineSegment(h1.i, h2.j)
                if end in sp and (h1, end) in arrow_set and (h2, end) in arrow_set:
                    meshes.append((g, h1, h2, end))
                    trans[end] = g
    return TranslationQuiverGraph(nodes, tuple(arrows), trans, tuple(meshes), via)


def functor_Omega(g: LineSegment, q: QuiverA, f: AlienSet | Iterable = (), poset: Poset | None = None) -> CombPeakSpace:
    f = tuple(f)
    if g not in sp_segments(q, f):
        raise NotSpSegment(f"{g} is not an sp-segment")
    if poset is None:
        poset = poset_of_quiver(q, f)
    return CombPeakSpace(poset, frozenset(g.support))


# ---------------------------------------------------------------- algebraic checks on Q


def interval_socle(q: QuiverA, a: int, b: int) -> list[int]:
    """Vertices v of [a, b] with no arrow v -> w inside [a, b]."""
    out = []
    for v in range(a, b + 1):
        if v < b and q.points_right(v):
            continue
        if v > a and not q.points_right(v - 1):
            continue
        out.append(v)
    return out


def is_socle_projective(q: QuiverA, a: int, b: int) -> bool:
    """soc M(a, b) is projective iff each of its simple summands sits at a sink."""
    sinks = set(q.sinks)
    return all(v in sinks for v in interval_socle(q, a, b))


# ---------------------------------------------------------------- central charges

Charge = tuple[Fraction, Fraction]  # (re, im)


def central_charge(g: LineSegment, p: PolygonModel) -> Charge:
    return sub(p.coords[g.j], p.coords[g.i])


def vertex_charges(p: PolygonModel) -> dict[int, Charge]:
    """Charge of the simple at quiver vertex k; segments telescope into these."""
    return {k: sub(p.coords[k], p.coords[k - 1]) for k in p.quiver.vertices}


def charge_of_support(p: PolygonModel, support: Iterable[int]) -> Charge:
    zk = vertex_charges(p)
    re = sum((zk[k][0] for k in support), Fraction(0))
    im = sum((zk[k][1] for k in support), Fraction(0))
    return re, im


@dataclass(frozen=True)
class CentralChargeCfg:
    scheme: str = "GeneralConvex"  # or SincerePrime
    m: int = 2

    def __post_init__(self):
        if self.scheme not in ("GeneralConvex", "SincerePrime"):
            raise ValueError(f"unknown scheme {self.scheme!r}")
        if self.m < 1:
            raise ValueError("m must be at least 1")


def _check_shape(shape: SincereShape) -> None:
    sizes = {"S1": (shape.r, shape.r - 1), "S2": (shape.r, shape.r), "S3": (shape.r, shape.r + 1)}
    if shape.kind not in sizes or shape.r < 1 or (len(shape.z_points), len(shape.x_points)) != sizes[shape.kind]:
        raise NotSincere(f"not a sincere fence: {shape}")


def sincere_weights(shape: SincereShape) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """w and kappa of the sincere object, aligned with shape.points (fence order)."""
    _check_shape(shape)
    r = shape.r
    w: dict = {}
    k: dict = {}
    for i, z in enumerate(shape.z_points, start=1):
        k[z] = 1
        if shape.kind == "S1":
            # a lone point has b(1, e) = 1; the end rule only applies for r >= 2
            w[z] = 1 if r == 1 else 0 if i in (1, r) else -1
        elif shape.kind == "S2":
            w[z] = 0 if i == 1 else -1
        else:
            w[z] = -1
    last = len(shape.x_points) - 1
    for j, x in enumerate(shape.x_points):
        w[x] = 1
        if shape.kind == "S1":
            k[x] = -1
        elif shape.kind == "S2":
            k[x] = 0 if j == last else -1
        else:
            k[x] = 0 if j in (0, last) else -1
    pts = shape.points
    return tuple(w[x] for x in pts), tuple(k[x] for x in pts)


def grouped(shape: SincereShape, vec: Sequence) -> tuple:
    """Reorder a fence-ordered vector as maxima first, then minima."""
    pos = {x: n for n, x in enumerate(shape.points)}
    return tuple(vec[pos[z]] for z in shape.z_points) + tuple(vec[pos[x]] for x in shape.x_points)


def z_m(shape: SincereShape, support: Iterable, m: int) -> Charge:
    """Z_m of the thin object supported on `support` (points of the shape)."""
    if m < 1:
        raise ValueError("m must be at least 1")
    w, k = sincere_weights(shape)
    pos = {x: n for n, x in enumerate(shape.points)}
    support = list(support)
    for x in support:
        if x not in pos:
            raise NotSincere(f"{x!r} is not a point of the shape")
    re = sum(w[pos[x]] + m for x in support)
    im = sum(k[pos[x]] + m for x in support)
    return Fraction(re), Fraction(im)


def build_polygon_prime(shape: SincereShape, m: int) -> dict[int, Point]:
    """Vertex k of P' for k = 0..n, k counting points along the fence.

    S1 and S2 use the closed coordinate formulas; S3 reflects the polygon of
    the S1 fence with one more maximum across y = x.
    """
    _check_shape(shape)
    if m < 1:
        raise ValueError("m must be at least 1")
    if shape.kind == "S3":
        other = build_polygon_prime(SincereShape.standard("S1", shape.r + 1), m)
        return {k: (y, x) for k, (x, y) in other.items()}
    w, kap = sincere_weights(shape)
    pos = {x: n for n, x in enumerate(shape.points)}

    def wz(i):
        return w[pos[shape.z_points[i - 1]]], kap[pos[shape.z_points[i - 1]]]

    def wx(j):
        if j == 0:
            return 0, 0
        return w[pos[shape.x_points[j - 1]]], kap[pos[shape.x_points[j - 1]]]

    out = {0: (Fraction(0), Fraction(0))}
    for i in range(1, len(shape.z_points) + 1):
        a = sum(wz(j)[0] + wx(j - 1)[0] for j in range(1, i + 1))
        b = sum(wz(j)[1] + wx(j - 1)[1] for j in range(1, i + 1))
        out[2 * i - 1] = (Fraction((2 * i - 1) * m + a), Fraction((2 * i - 1) * m + b))
    for i in range(1, len(shape.x_points) + 1):
        a = sum(wz(j)[0] + wx(j)[0] for j in range(1, i + 1))
        b = sum(wz(j)[1] + wx(j)[1] for j in range(1, i + 1))
        out[2 * i] = (Fraction(2 * i * m + a), Fraction(2 * i * m + b))
    return dict(sorted(out.items()))


# ---------------------------------------------------------------- angle verdicts


@dataclass(frozen=True)
class AngleRecord:
    peaks: frozenset
    support: frozenset
    charge: Charge
    cross: Fraction


@dataclass(frozen=True)
class AngleVerdict:
    status: str  # stable | semistable | unstable | boundary
    charge: Charge
    records: tuple[AngleRecord, ...]
    witness: AngleRecord | None = None

    @property
    def stable(self) -> bool:
        return self.status == "stable"


def _angle_verdict(u: CombPeakSpace, charge_of, sign: int, on_boundary) -> AngleVerdict:
    """sign=-1: subobjects must turn clockwise from Z(U); sign=+1: anticlockwise."""
    total = charge_of(u.support)
    recs = []
    for peaks, support in proper_subobjects(u):
        c = charge_of(support)
        recs.append(AngleRecord(peaks, support, c, cross(total, c)))
    recs = tuple(recs)
    bad = [r for r in recs if on_boundary(r.charge)]
    if on_boundary(total) or bad:
        return AngleVerdict("boundary", total, recs, bad[0] if bad else None)
    worst = [r for r in recs if sign * r.cross <= 0]
    if not worst:
        return AngleVerdict("stable", total, recs)
    strict = [r for r in worst if sign * r.cross < 0]
    if strict:
        return AngleVerdict("unstable", total, recs, strict[0])
    return AngleVerdict("semistable", total, recs, worst[0])


def phi_stability_check(p: PolygonModel, u: CombPeakSpace) -> AngleVerdict:
    """Every proper subobject's segment charge must point strictly clockwise of Z(U).

    Charges have positive real part, so the clockwise test is the angle
    comparison in (-pi/2, pi/2).
    """
    return _angle_verdict(u, lambda s: charge_of_support(p, s), -1, lambda c: c[0] <= 0)


def phi_m_stability_check(shape: SincereShape, u: CombPeakSpace, m: int) -> AngleVerdict:
    """phi_m = (pi/2 - arg Z_m)/pi, so subobjects need a strictly larger argument."""
    return _angle_verdict(u, lambda s: z_m(shape, s, m), 1, lambda c: c[0] == 0 or c[1] == 0)


def require_interior(v: AngleVerdict) -> AngleVerdict:
    if v.status == "boundary":
        r = v.witness
        raise BoundaryAngle(r.support if r else frozenset(), r.charge if r else v.charge)
    return v
