"""Exhaustive generation of finite posets up to isomorphism.

A poset is stored as the tuple of its reflexive down-set masks. Every poset
on n+1 points arises from one on n points by adding a new maximal point over
an order ideal, so growing level by level and keeping one canonical
representative per class lists each isomorphism type once.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator, Sequence

from .poset import Poset, bits

Downs = tuple[int, ...]


def _ups(downs: Sequence[int]) -> list[int]:
    n = len(downs)
    ups = [0] * n
    for y in range(n):
        for x in bits(downs[y]):
            ups[x] |= 1 << y
    return ups


def _rank(sigs: list) -> list[int]:
    order = {s: k for k, s in enumerate(sorted(set(sigs)))}
    return [order[s] for s in sigs]


def _refine(colors: list[int], below: list[list[int]], above: list[list[int]]) -> list[int]:
    while True:
        sigs = [
            (colors[v], tuple(sorted(colors[u] for u in below[v])), tuple(sorted(colors[u] for u in above[v])))
            for v in range(len(colors))
        ]
        new = _rank(sigs)
        if len(set(new)) == len(set(colors)):
            return new
        colors = new


def canonical_form(downs: Sequence[int]) -> Downs:
    """Smallest relabelled down-mask tuple over an individualisation-refinement search.

    Points with equal strict up- and down-sets are swapped by an automorphism,
    so only one of them is individualised per cell.
    """
    n = len(downs)
    ups = _ups(downs)
    strict_down = [downs[v] & ~(1 << v) for v in range(n)]
    strict_up = [ups[v] & ~(1 << v) for v in range(n)]
    below = [list(bits(m)) for m in strict_down]
    above = [list(bits(m)) for m in strict_up]
    start = _rank([(len(below[v]), len(above[v])) for v in range(n)])
    best: list[Downs | None] = [None]

    def key_of(colors: list[int]) -> Downs:
        new = {v: colors[v] for v in range(n)}
        out = [0] * n
        for v in range(n):
            m = 0
            for u in bits(downs[v]):
                m |= 1 << new[u]
            out[new[v]] = m
        return tuple(out)

    def search(colors: list[int]):
        colors = _refine(colors, below, above)
        if len(set(colors)) == n:
            k = key_of(colors)
            if best[0] is None or k < best[0]:
                best[0] = k
            return
        sizes: dict[int, list[int]] = {}
        for v, c in enumerate(colors):
            sizes.setdefault(c, []).append(v)
        cell = min((c for c, vs in sizes.items() if len(vs) > 1))
        seen = set()
        for v in sizes[cell]:
            twin = (strict_down[v], strict_up[v])
            if twin in seen:
                continue
            seen.add(twin)
            search(_rank([(c, 0 if u == v else 1) if c == cell else (c, 0) for u, c in enumerate(colors)]))

    search(start)
    return best[0]


def ideals(downs: Sequence[int]) -> Iterator[int]:
    """Down-closed subsets, as masks."""
    n = len(downs)
    for m in range(1 << n):
        if all(downs[v] & ~m == 0 for v in bits(m)):
            yield m


def extend(downs: Downs) -> set[Downs]:
    n = len(downs)
    return {canonical_form(downs + (ideal | 1 << n,)) for ideal in ideals(downs)}


@lru_cache(maxsize=None)
def posets_of_size(n: int) -> tuple[Downs, ...]:
    """All posets on n points up to isomorphism, canonical and sorted."""
    if n == 0:
        return ((),)
    out: set[Downs] = set()
    for d in posets_of_size(n - 1):
        out |= extend(d)
    return tuple(sorted(out))


def to_poset(downs: Downs) -> Poset:
    return Poset(tuple(range(1, len(downs) + 1)), tuple(downs))


def connected_posets(n: int) -> list[Downs]:
    return [d for d in posets_of_size(n) if to_poset(d).is_connected()]


def type_a_posets(max_points: int) -> list[Downs]:
    """Connected type A posets with 1..max_points points."""
    out = []
    for n in range(1, max_points + 1):
        out += [d for d in connected_posets(n) if to_poset(d).type_a]
    return out
