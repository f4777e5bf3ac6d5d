"""Finite posets stored as bitmasks, incidence matrices and the bilinear form.

A point's down-mask has bit j set when points[j] precedes it (reflexively).
Most consumers only touch labels; masks are there to keep the exhaustive
sweeps cheap.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Hashable, Iterable, Mapping, Sequence

from .errors import CycleDetected, DimensionMismatch, NotConnected, UnknownLabel

Label = Hashable


def bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


@dataclass(frozen=True, eq=False)
class Poset:
    points: tuple
    down: tuple[int, ...]
    index: dict = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "index", {x: i for i, x in enumerate(self.points)})

    def __len__(self) -> int:
        return len(self.points)

    def __repr__(self) -> str:
        return f"Poset(points={list(self.points)}, covers={sorted(self.covers, key=str)})"

    @cached_property
    def up(self) -> tuple[int, ...]:
        n = len(self.points)
        up = [0] * n
        for i, d in enumerate(self.down):
            for j in bits(d):
                up[j] |= 1 << i
        return tuple(up)

    @cached_property
    def full_mask(self) -> int:
        return (1 << len(self.points)) - 1

    @cached_property
    def max_mask(self) -> int:
        return sum(1 << i for i, u in enumerate(self.up) if u == 1 << i)

    @cached_property
    def min_mask(self) -> int:
        return sum(1 << i for i, d in enumerate(self.down) if d == 1 << i)

    @property
    def max_points(self) -> tuple:
        return self.labels(self.max_mask)

    @property
    def min_points(self) -> tuple:
        return self.labels(self.min_mask)

    @cached_property
    def cover_pairs(self) -> tuple[tuple[int, int], ...]:
        """Index pairs (a, b) with b covering a."""
        out = []
        for b, d in enumerate(self.down):
            strict = d & ~(1 << b)
            for a in bits(strict):
                between = strict & self.up[a] & ~(1 << a)
                if not between:
                    out.append((a, b))
        return tuple(sorted(out))

    @property
    def covers(self) -> frozenset:
        return frozenset((self.points[a], self.points[b]) for a, b in self.cover_pairs)

    @cached_property
    def linear_extension(self) -> tuple:
        """Topological order, taking the earliest available point each step."""
        placed = 0
        order = []
        while len(order) < len(self.points):
            for i, d in enumerate(self.down):
                if not placed >> i & 1 and d & ~(1 << i) & ~placed == 0:
                    order.append(self.points[i])
                    placed |= 1 << i
                    break
        return tuple(order)

    @property
    def leq_matrix(self) -> list[list[bool]]:
        n = len(self.points)
        return [[bool(self.down[j] >> i & 1) for j in range(n)] for i in range(n)]

    def idx(self, label) -> int:
        try:
            return self.index[label]
        except KeyError:
            raise UnknownLabel(f"unknown point {label!r}") from None

    def mask(self, labels: Iterable) -> int:
        m = 0
        for x in labels:
            m |= 1 << self.idx(x)
        return m

    def labels(self, mask: int) -> tuple:
        return tuple(self.points[i] for i in bits(mask))

    def leq(self, a, b) -> bool:
        return bool(self.down[self.idx(b)] >> self.idx(a) & 1)

    def lt(self, a, b) -> bool:
        return a != b and self.leq(a, b)

    def down_mask(self, mask: int) -> int:
        out = 0
        for i in bits(mask):
            out |= self.down[i]
        return out

    def up_mask(self, mask: int) -> int:
        out = 0
        for i in bits(mask):
            out |= self.up[i]
        return out

    def down_set(self, labels: Iterable) -> frozenset:
        return frozenset(self.labels(self.down_mask(self.mask(labels))))

    def comparable(self, i: int, j: int) -> bool:
        return bool((self.down[i] | self.up[i]) >> j & 1)

    def is_connected(self, mask: int | None = None) -> bool:
        if mask is None:
            mask = self.full_mask
        if not mask:
            return True
        seen = mask & -mask
        frontier = seen
        while frontier:
            nxt = 0
            for i in bits(frontier):
                nxt |= (self.down[i] | self.up[i]) & mask
            frontier = nxt & ~seen
            seen |= nxt
        return seen == mask

    def submask_max(self, mask: int) -> int:
        """Maximal elements of the full subposet on mask."""
        return sum(1 << i for i in bits(mask) if self.up[i] & mask == 1 << i)

    def subposet(self, labels: Sequence) -> "Poset":
        """Full subposet on `labels`, keeping the given order of points."""
        idx = [self.idx(x) for x in labels]
        pos = {i: k for k, i in enumerate(idx)}
        down = []
        for i in idx:
            m = 0
            for j in bits(self.down[i]):
                if j in pos:
                    m |= 1 << pos[j]
            down.append(m)
        return Poset(tuple(labels), tuple(down))

    def relabel(self, mapping: Mapping) -> "Poset":
        return Poset(tuple(mapping[x] for x in self.points), self.down)

    def reorder(self, order: Sequence) -> "Poset":
        return self.subposet(order)

    @cached_property
    def type_a(self) -> "TypeAVerdict":
        return is_type_A(self)


def _closure(n: int, edges: Sequence[tuple[int, int]]) -> list[int] | list:
    """Reflexive-transitive closure as down-masks, or a cycle as index list."""
    succ = [[] for _ in range(n)]
    for a, b in edges:
        succ[a].append(b)
    state = [0] * n  # 0 new, 1 on stack, 2 done
    order: list[int] = []
    parent = [-1] * n
    for root in range(n):
        if state[root]:
            continue
        stack = [(root, iter(succ[root]))]
        state[root] = 1
        while stack:
            v, it = stack[-1]
            for w in it:
                if state[w] == 0:
                    state[w] = 1
                    parent[w] = v
                    stack.append((w, iter(succ[w])))
                    break
                if state[w] == 1:
                    cyc = [v]
                    while cyc[-1] != w:
                        cyc.append(parent[cyc[-1]])
                    cyc.reverse()
                    return ("cycle", cyc + [w])
            else:
                state[v] = 2
                order.append(v)
                stack.pop()
    # order is reverse topological (sinks first); fill up-masks then flip.
    upm = [0] * n
    for v in order:
        m = 1 << v
        for w in succ[v]:
            m |= upm[w]
        upm[v] = m
    down = [0] * n
    for v in range(n):
        for w in bits(upm[v]):
            down[w] |= 1 << v
    return down


def build_poset(points: Sequence, covers: Iterable[tuple]) -> Poset:
    """Poset generated by pairs (a, b) meaning a < b (b covers a)."""
    points = tuple(points)
    if len(set(points)) != len(points):
        raise ValueError("point labels must be distinct")
    index = {x: i for i, x in enumerate(points)}
    edges = []
    for a, b in covers:
        if a not in index or b not in index:
            bad = a if a not in index else b
            raise UnknownLabel(f"unknown point {bad!r}")
        edges.append((index[a], index[b]))
    down = _closure(len(points), edges)
    if isinstance(down, tuple):
        raise CycleDetected([points[i] for i in down[1]])
    return Poset(points, tuple(down))


# ---------------------------------------------------------------- incidence


@dataclass(frozen=True)
class IncidenceMatrix:
    order: tuple
    entries: tuple[tuple[int, ...], ...]
    inverse: tuple[tuple[int, ...], ...]

    @property
    def inverseEntries(self):
        return self.inverse


def mobius(p: Poset) -> list[list[int]]:
    """Inverse of the incidence matrix, indexed like p.points.

    Back-substitution along a linear extension: m[x][t] = -sum m[x][y] over
    x <= y < t.
    """
    n = len(p)
    order = [p.idx(x) for x in p.linear_extension]
    m = [[0] * n for _ in range(n)]
    for x in range(n):
        m[x][x] = 1
        above = p.up[x]
        for t in order:
            if t == x or not above >> t & 1:
                continue
            s = 0
            for y in bits(p.down[t] & above & ~(1 << t)):
                s += m[x][y]
            m[x][t] = -s
    return m


def incidence_matrix(p: Poset, order: Sequence | None = None) -> IncidenceMatrix:
    """C with c[x][t] = 1 iff x <= t, plus its exact integer inverse."""
    order = tuple(p.linear_extension if order is None else order)
    if sorted(map(p.idx, order)) != list(range(len(p))):
        raise DimensionMismatch("order must list every point exactly once")
    ids = [p.idx(x) for x in order]
    mu = mobius(p)
    c = tuple(tuple(int(p.down[t] >> x & 1) for t in ids) for x in ids)
    inv = tuple(tuple(mu[x][t] for t in ids) for x in ids)
    return IncidenceMatrix(order, c, inv)


def _as_vector(p: Poset, v) -> list[int]:
    if isinstance(v, Mapping):
        out = [0] * len(p)
        for k, x in v.items():
            out[p.idx(k)] = x
        return out
    v = list(v)
    if len(v) != len(p):
        raise DimensionMismatch(f"vector of length {len(v)} for a poset with {len(p)} points")
    return v


def bilinear_form(p: Poset, a, b) -> int:
    """a . C^-1 . b^T, vectors indexed by p.points (or dicts keyed by label)."""
    a = _as_vector(p, a)
    b = _as_vector(p, b)
    mu = mobius(p)
    return sum(a[x] * sum(mu[x][t] * b[t] for t in range(len(p)) if mu[x][t]) for x in range(len(p)) if a[x])


def unit(p: Poset, x) -> list[int]:
    v = [0] * len(p)
    v[p.idx(x)] = 1
    return v


# ---------------------------------------------------------------- type A


@dataclass(frozen=True)
class TypeAVerdict:
    ok: bool
    pattern: str | None = None
    witness: tuple = ()

    def __bool__(self) -> bool:
        return self.ok


def is_peak_subposet(p: Poset, subset: Iterable) -> bool:
    m = p.mask(subset)
    return p.submask_max(m) & ~p.max_mask == 0


def _antichain3(p: Poset, mask: int) -> tuple[int, int, int] | None:
    for a, b, c in combinations(bits(mask), 3):
        if not (p.comparable(a, b) or p.comparable(a, c) or p.comparable(b, c)):
            return a, b, c
    return None


def _find_crown(p: Poset) -> list[int] | None:
    """Induced crown z1 x1 z2 x2 ... zk xk (k >= 2) with every z maximal in p.

    x_i lies below z_i and z_{i+1} (indices mod k) and below no other z of the
    crown; the x's form an antichain.
    """
    maxima = bits(p.max_mask)
    n = len(p)

    def below(x: int, z: int) -> bool:
        return x != z and p.down[z] >> x & 1

    def extend(path_z: list[int], path_x: list[int]):
        z_last = path_z[-1]
        z_first = path_z[0]
        zs = 0
        for z in path_z:
            zs |= 1 << z
        for x in bits(p.down[z_last] & ~(1 << z_last)):
            if any(p.comparable(x, y) for y in path_x):
                continue
            # x may sit below z_last and (when closing) z_first only
            hits = p.up[x] & zs
            if hits & ~((1 << z_last) | (1 << z_first)):
                continue
            if len(path_z) >= 2 and hits == (1 << z_last) | (1 << z_first):
                return path_z, path_x + [x]
            if hits != 1 << z_last:
                continue
            if 2 * (len(path_z) + 1) > n:
                continue
            for z in maxima:
                if z <= z_first or zs >> z & 1 or not below(x, z):
                    continue
                # earlier x's must not sit below the new z
                if any(below(y, z) for y in path_x):
                    continue
                found = extend(path_z + [z], path_x + [x])
                if found:
                    return found
        return None

    for z in maxima:
        found = extend([z], [])
        if found:
            zs, xs = found
            out = []
            for a, b in zip(zs, xs):
                out += [a, b]
            return out
    return None


def is_type_A(p: Poset) -> TypeAVerdict:
    if not p.is_connected():
        raise NotConnected("type A recognition needs a connected poset")
    mx = p.max_mask
    for x in range(len(p)):
        tops = bits(p.up[x] & mx & ~(1 << x))
        if len(tops) >= 3:
            return TypeAVerdict(False, "R3", p.labels((1 << x) | sum(1 << z for z in tops[:3])))
        if len(tops) >= 2:
            lower = p.down[x] & ~(1 << x)
            if lower:
                b = bits(lower)[0]
                return TypeAVerdict(False, "R2", p.labels((1 << b) | (1 << x) | (1 << tops[0]) | (1 << tops[1])))
    for z in bits(mx):
        trio = _antichain3(p, p.down[z] & ~(1 << z))
        if trio:
            return TypeAVerdict(False, "R1", p.labels((1 << z) | sum(1 << t for t in trio)))
    crown = _find_crown(p)
    if crown:
        k = len(crown) // 2
        return TypeAVerdict(False, f"R4,{k - 2}", tuple(p.points[i] for i in crown))
    return TypeAVerdict(True)
