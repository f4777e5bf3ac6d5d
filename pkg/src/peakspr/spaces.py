"""Peak spaces: an explicit rational model and a support-only model.

ExplicitPeakSpace keeps honest bases inside U = sum of U_z over maximal z and
is slow but trustworthy. CombPeakSpace records only the support, which is
all an indecomposable carries when the poset is of type A.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import linalg as la
from .errors import InvariantViolated, NotTypeA, ShapeMismatch
from .poset import Poset, bits, build_poset


@dataclass(frozen=True)
class Verdict:
    ok: bool
    message: str = ""

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True, eq=False)
class ExplicitPeakSpace:
    poset: Poset
    ambient: Mapping  # maximal point -> dim U_z
    bases: Mapping  # point -> list of column vectors in the ambient space

    @property
    def total_dim(self) -> int:
        return sum(self.ambient.get(z, 0) for z in self.poset.max_points)

    def block(self, z) -> range:
        start = 0
        for y in self.poset.max_points:
            d = self.ambient.get(y, 0)
            if y == z:
                return range(start, start + d)
            start += d
        raise ShapeMismatch(f"{z!r} is not maximal")

    def basis(self, x) -> list[la.Vector]:
        return list(self.bases.get(x, []))

    def dim(self, x) -> int:
        return la.rank(self.basis(x))

    @property
    def dimv(self) -> tuple[int, ...]:
        return tuple(self.dim(x) for x in self.poset.points)

    @property
    def support(self) -> frozenset:
        return frozenset(x for x in self.poset.points if self.dim(x))

    def project(self, y, v: la.Vector) -> la.Vector:
        """pi_y: keep the blocks of maximal points above y."""
        p = self.poset
        keep = [False] * self.total_dim
        for z in p.max_points:
            if p.leq(y, z):
                for i in self.block(z):
                    keep[i] = True
        return tuple(c if k else Fraction(0) for c, k in zip(v, keep))

    def summand(self, z) -> list[la.Vector]:
        n = self.total_dim
        out = []
        for i in self.block(z):
            e = [Fraction(0)] * n
            e[i] = Fraction(1)
            out.append(tuple(e))
        return out


def _check_shapes(u: ExplicitPeakSpace) -> None:
    n = u.total_dim
    for x, cols in u.bases.items():
        u.poset.idx(x)
        for c in cols:
            if len(c) != n:
                raise ShapeMismatch(f"basis vector of length {len(c)} at {x!r}, ambient has dimension {n}")
    for z in u.ambient:
        if z not in u.poset.max_points:
            raise ShapeMismatch(f"ambient summand at non-maximal {z!r}")


def check_peak_space(u: ExplicitPeakSpace) -> Verdict:
    _check_shapes(u)
    p = u.poset
    for x in p.points:
        cols = u.basis(x)
        if la.rank(cols) != len(cols):
            return Verdict(False, f"basis at {x!r} is not independent")
        for z in p.max_points:
            if p.leq(x, z):
                continue
            for c in cols:
                if any(c[i] for i in u.block(z)):
                    return Verdict(False, f"U_{x} has a nonzero {z}-component but {x} is not below {z}")
    for z in p.max_points:
        if la.basis(u.basis(z)) != la.basis(u.summand(z)):
            return Verdict(False, f"U_{z} is not the {z}-th ambient summand")
    for x in p.points:
        for y in p.points:
            if x != y and p.leq(x, y):
                image = [u.project(y, c) for c in u.basis(x)]
                if not la.contains(u.basis(y), image):
                    return Verdict(False, f"pi_{y}(U_{x}) is not contained in U_{y}")
    return Verdict(True)


def _embed_admissible(u: ExplicitPeakSpace, k: Mapping) -> tuple[list[la.Vector], dict]:
    """K as ambient columns (block by block) plus its per-summand dimensions."""
    n = u.total_dim
    cols: list[la.Vector] = []
    dims = {}
    for z in u.poset.max_points:
        local = la.basis(k.get(z, []))
        blk = u.block(z)
        for c in local:
            if len(c) != len(blk):
                raise ShapeMismatch(f"K_{z} lives in a space of dimension {len(blk)}")
            v = [Fraction(0)] * n
            for i, val in zip(blk, c):
                v[i] = val
            cols.append(tuple(v))
        if local:
            dims[z] = len(local)
    return cols, dims


def full_choice(u: ExplicitPeakSpace, maxima: Iterable) -> dict:
    """K_z = U_z for z in `maxima`, zero elsewhere."""
    out = {}
    for z in maxima:
        d = u.ambient.get(z, 0)
        out[z] = [tuple(Fraction(int(i == j)) for j in range(d)) for i in range(d)]
    return out


def restrict_to_admissible(u: ExplicitPeakSpace, k: Mapping) -> ExplicitPeakSpace:
    """U_K with (U_K)_x = U_x & K, re-coordinatised inside K itself."""
    _check_shapes(u)
    kcols, dims = _embed_admissible(u, k)
    bases = {}
    for x in u.poset.points:
        sols = la.intersect_coefficients(la.basis(u.basis(x)), kcols, u.total_dim)
        coords = la.basis([t for _, t in sols])
        if coords:
            bases[x] = coords
    return ExplicitPeakSpace(u.poset, dims, bases)


def quotient_dims(u: ExplicitPeakSpace, k: Mapping) -> tuple[int, ...]:
    sub = restrict_to_admissible(u, k)
    return tuple(a - b for a, b in zip(u.dimv, sub.dimv))


def coordinate_vector(u: ExplicitPeakSpace) -> tuple[int, ...]:
    p = u.poset
    out = []
    for x in p.points:
        ux = u.basis(x)
        if x in p.max_points:
            out.append(la.rank(ux))
            continue
        image = [u.project(x, c) for y in p.points if p.lt(y, x) for c in u.basis(y)]
        if not la.contains(ux, image):
            raise InvariantViolated(f"images from below escape U_{x}")
        out.append(la.rank(ux) - la.rank(image))
    return tuple(out)


# ---------------------------------------------------------------- sincere shapes


@dataclass(frozen=True)
class SincereShape:
    """A fence. S1 starts and ends at maximal points, S2 ends at a minimal
    point on the right, S3 has minimal points at both ends.

    x_points runs x1..x_{r-1} (S1), x1..x_r (S2) or x0..x_r (S3); x_i lies
    below z_i and z_{i+1}.
    """

    kind: str
    r: int
    z_points: tuple
    x_points: tuple

    @property
    def points(self) -> tuple:
        zs, xs = self.z_points, self.x_points
        if self.kind == "S3":
            out = [xs[0]]
            for z, x in zip(zs, xs[1:]):
                out += [z, x]
            return tuple(out)
        out = []
        for i, z in enumerate(zs):
            out.append(z)
            if i < len(xs):
                out.append(xs[i])
        return tuple(out)

    @property
    def relations(self) -> list[tuple]:
        """Pairs (x, z) with x below z, read off the fence."""
        seq = self.points
        out = []
        for a, b in zip(seq, seq[1:]):
            out.append((b, a) if a in self.z_points else (a, b))
        return out

    def poset(self) -> Poset:
        return build_poset(self.points, self.relations)

    @staticmethod
    def standard(kind: str, r: int) -> "SincereShape":
        """Shape on labels 1..n numbered along the fence."""
        if kind == "S1":
            n = 2 * r - 1
            seq = list(range(1, n + 1))
            return SincereShape(kind, r, tuple(seq[0::2]), tuple(seq[1::2]))
        if kind == "S2":
            seq = list(range(1, 2 * r + 1))
            return SincereShape(kind, r, tuple(seq[0::2]), tuple(seq[1::2]))
        if kind == "S3":
            seq = list(range(1, 2 * r + 2))
            return SincereShape(kind, r, tuple(seq[1::2]), tuple(seq[0::2]))
        raise ValueError(f"unknown shape kind {kind!r}")

    @staticmethod
    def from_fence(seq: Sequence, maxima: set) -> "SincereShape":
        seq = list(seq)
        starts_z = seq[0] in maxima
        ends_z = seq[-1] in maxima
        if not starts_z and ends_z:
            seq.reverse()
            starts_z, ends_z = True, False
        zs = tuple(x for x in seq if x in maxima)
        xs = tuple(x for x in seq if x not in maxima)
        kind = "S1" if starts_z and ends_z else "S2" if starts_z else "S3"
        return SincereShape(kind, len(zs), zs, xs)


def _fences(p: Poset) -> list[list[int]]:
    """Index sequences of every induced fence whose tops are maximal in p."""
    mx = p.max_mask
    seen: set[int] = set()
    out: list[list[int]] = []

    def record(path: list[int]):
        m = 0
        for i in path:
            m |= 1 << i
        if m not in seen:
            seen.add(m)
            out.append(list(path))

    def grow(path: list[int], zs: int, xs: int):
        last = path[-1]
        if mx >> last & 1:
            cands = p.down[last] & ~(1 << last)
            for x in bits(cands):
                if (p.down[x] | p.up[x]) & xs:
                    continue
                if p.up[x] & zs & ~(1 << last):
                    continue
                path.append(x)
                record(path)
                grow(path, zs, xs | (1 << x))
                path.pop()
        else:
            cands = p.up[last] & mx & ~zs
            for z in bits(cands):
                if p.down[z] & xs & ~(1 << last):
                    continue
                path.append(z)
                record(path)
                grow(path, zs | (1 << z), xs)
                path.pop()

    for z in bits(mx):
        record([z])
        grow([z], 1 << z, 0)
    for x in bits(p.full_mask & ~mx):
        grow([x], 0, 1 << x)
    return out


def sincere_subposets(p: Poset) -> list[SincereShape]:
    if not p.type_a:
        raise NotTypeA(f"{p.type_a.pattern} at {p.type_a.witness}")
    return _shapes(p)


def _shapes(p: Poset) -> list[SincereShape]:
    maxima = set(p.max_points)
    shapes = []
    for seq in _fences(p):
        shape = SincereShape.from_fence([p.points[i] for i in seq], maxima)
        shapes.append(_canonical(shape, p))
    shapes.sort(key=lambda s: sorted(p.idx(x) for x in s.points))
    return shapes


def _canonical(shape: SincereShape, p: Poset) -> SincereShape:
    """Read symmetric fences (S1, S3) from the end with the smaller index."""
    if shape.kind == "S2" or len(shape.points) == 1:
        return shape
    seq = shape.points
    if p.idx(seq[-1]) < p.idx(seq[0]):
        return SincereShape(shape.kind, shape.r, shape.z_points[::-1], shape.x_points[::-1])
    return shape


def sincere_rep(s: SincereShape) -> ExplicitPeakSpace:
    sp = s.poset()
    r = len(s.z_points)
    ambient = {z: 1 for z in s.z_points}
    bases = {}
    for i, z in enumerate(s.z_points):
        bases[z] = [tuple(Fraction(int(j == i)) for j in range(r))]
    for x in s.x_points:
        bases[x] = [tuple(Fraction(int(sp.lt(x, z))) for z in s.z_points)]
    # sp.max_points follows fence order, which matches s.z_points
    return ExplicitPeakSpace(sp, ambient, bases)


def lift_T(s: SincereShape, u: ExplicitPeakSpace, p: Poset) -> ExplicitPeakSpace:
    """Extend u from the peak-subposet s to p (zero outside the down-set of max s)."""
    zs = set(s.z_points)
    ambient = {z: u.ambient.get(z, 0) for z in p.max_points if z in zs and u.ambient.get(z, 0)}
    lifted = ExplicitPeakSpace(p, ambient, {})
    n = lifted.total_dim

    def embed(v: la.Vector) -> la.Vector:
        out = [Fraction(0)] * n
        for z in u.poset.max_points:
            for i, j in zip(u.block(z), lifted.block(z) if z in ambient else []):
                out[j] = v[i]
        return tuple(out)

    s_points = set(s.points)
    reach = p.down_mask(p.mask(zs))
    bases = {}
    for x in p.points:
        if x in zs:
            cols = [embed(c) for c in u.basis(x)]
        elif not reach >> p.idx(x) & 1:
            continue
        else:
            cols = [lifted.project(x, embed(c)) for y in s_points if p.leq(y, x) for c in u.basis(y)]
        cols = la.basis(cols)
        if cols:
            bases[x] = cols
    out = ExplicitPeakSpace(p, ambient, bases)
    v = check_peak_space(out)
    if not v:
        raise InvariantViolated(v.message)
    return out


# ---------------------------------------------------------------- support model


@dataclass(frozen=True, eq=False)
class CombPeakSpace:
    poset: Poset
    support: frozenset
    csupp: frozenset | None = None
    shape: SincereShape | None = field(default=None, compare=False)

    @property
    def dimv(self) -> tuple[int, ...]:
        return tuple(int(x in self.support) for x in self.poset.points)

    @property
    def mask(self) -> int:
        return self.poset.mask(self.support)

    @property
    def peaks(self) -> tuple:
        return tuple(z for z in self.poset.max_points if z in self.support)

    def sorted_support(self) -> tuple:
        return tuple(sorted(self.support, key=self.poset.idx))

    def __repr__(self) -> str:
        return f"CombPeakSpace(support={list(self.sorted_support())})"


def materialize(u: CombPeakSpace) -> ExplicitPeakSpace:
    """Explicit model of a support: U_x spanned by the sum of e_z over peaks above x."""
    p = u.poset
    peaks = u.peaks
    ambient = {z: 1 for z in peaks}
    bases = {}
    for x in u.support:
        bases[x] = [tuple(Fraction(int(p.leq(x, z))) for z in peaks)]
    return ExplicitPeakSpace(p, ambient, bases)


def enumerate_indecomposables(p: Poset) -> list[CombPeakSpace]:
    out = {}
    for shape in sincere_subposets(p):
        lifted = lift_T(shape, sincere_rep(shape), p)
        if any(d > 1 for d in lifted.dimv):
            raise InvariantViolated(f"lift of {shape.points} has a point of dimension > 1")
        key = frozenset(shape.points)
        if key not in out:
            out[key] = CombPeakSpace(p, lifted.support, key, shape)
    return sorted(out.values(), key=lambda u: sorted(p.idx(x) for x in u.support))


def peak_subsets(u: CombPeakSpace) -> list[int]:
    """Masks of the nonempty proper subsets of Supp u & max p, in numeric order."""
    p = u.poset
    m = u.mask & p.max_mask
    out = []
    sub = (m - 1) & m
    while sub:
        out.append(sub)
        sub = (sub - 1) & m
    out.reverse()
    return out


def subobject_mask(u: CombPeakSpace, peaks: int) -> int:
    """Support of U_{K_I} for I = peaks (a mask of maximal points in the support)."""
    p = u.poset
    rest = u.mask & p.max_mask & ~peaks
    return p.down_mask(peaks) & ~p.down_mask(rest) & u.mask


def proper_subobjects(u: CombPeakSpace) -> list[tuple[frozenset, frozenset]]:
    """Pairs (I, Supp U_{K_I}) over nonempty proper I."""
    p = u.poset
    if not p.type_a:
        raise NotTypeA(f"{p.type_a.pattern} at {p.type_a.witness}")
    return [(frozenset(p.labels(i)), frozenset(p.labels(subobject_mask(u, i)))) for i in peak_subsets(u)]


def proper_subspaces_typeA(u: CombPeakSpace) -> list[frozenset]:
    return [s for _, s in proper_subobjects(u)]
