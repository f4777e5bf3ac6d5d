"""Exhaustive checks over all small type A posets and all small (Q, F)."""

from __future__ import annotations

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .generate import to_poset, type_a_posets
from .geometry import build_polygon, phi_stability_check, sp_segments
from .quiver import QuiverA, all_quivers, alien_sets, poset_of_quiver
from .spaces import enumerate_indecomposables
from .stability import is_theta_stable, theta_of


@dataclass
class PosetResult:
    key: tuple
    objects: int
    failures: list = field(default_factory=list)


def check_poset(downs: tuple) -> PosetResult:
    """Every indecomposable must be stable for the weight lifted from its coordinate support."""
    p = to_poset(downs)
    res = PosetResult(downs, 0)
    for u in enumerate_indecomposables(p):
        res.objects += 1
        v = is_theta_stable(u, theta_of(u))
        if not v.stable:
            res.failures.append((u.sorted_support(), v.status, v.witness))
    return res


def _run(fn, items, jobs: int):
    if jobs <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(fn, items, chunksize=8))


def poset_sweep(max_points: int, jobs: int = 1) -> list[PosetResult]:
    items = type_a_posets(max_points)
    return sorted(_run(check_poset, items, jobs), key=lambda r: (len(r.key), r.key))


@dataclass
class QuiverResult:
    word: str
    aliens: tuple
    objects: int
    bijection: bool
    angle: Counter


def check_quiver(item: tuple[str, tuple]) -> QuiverResult:
    word, f = item
    q = QuiverA.from_string(word)
    p = poset_of_quiver(q, f)
    poly = build_polygon(q)
    objs = enumerate_indecomposables(p)
    alg = sorted(u.sorted_support() for u in objs)
    geo = sorted(tuple(g.support) for g in sp_segments(q, f))
    angle = Counter(phi_stability_check(poly, u).status for u in objs)
    return QuiverResult(word, f, len(objs), alg == geo, angle)


def quiver_items(max_vertices: int) -> list[tuple[str, tuple]]:
    out = []
    for k in range(1, max_vertices + 1):
        for q in all_quivers(k):
            out += [(q.word, f.arrows) for f in alien_sets(q)]
    return out


def quiver_sweep(max_vertices: int, jobs: int = 1) -> list[QuiverResult]:
    return _run(check_quiver, quiver_items(max_vertices), jobs)
