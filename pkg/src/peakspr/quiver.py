"""Linearly oriented type A quivers and their alien arrows."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence

from .errors import InvalidAlien
from .poset import Poset, build_poset


@dataclass(frozen=True)
class QuiverA:
    """Vertices 1..n; right[k] is True when the edge {k+1, k+2} points right."""

    n: int
    right: tuple[bool, ...]

    def __post_init__(self):
        if self.n < 1 or len(self.right) != self.n - 1:
            raise ValueError(f"a quiver on {self.n} vertices needs {self.n - 1} edge orientations")

    @classmethod
    def from_arrows(cls, n: int, arrows: Iterable[tuple[int, int]]) -> "QuiverA":
        edge: dict[int, bool] = {}
        for s, t in arrows:
            if abs(s - t) != 1 or not (1 <= s <= n and 1 <= t <= n):
                raise ValueError(f"arrow {s}->{t} is not an edge of the path on {n} vertices")
            k = min(s, t)
            if k in edge:
                raise ValueError(f"edge {{{k},{k + 1}}} oriented twice")
            edge[k] = t > s
        missing = [k for k in range(1, n) if k not in edge]
        if missing:
            raise ValueError(f"edge {{{missing[0]},{missing[0] + 1}}} has no arrow")
        return cls(n, tuple(edge[k] for k in range(1, n)))

    @classmethod
    def from_string(cls, word: str) -> "QuiverA":
        """'RLRR' style: one letter per edge."""
        return cls(len(word) + 1, tuple(c == "R" for c in word.upper()))

    @property
    def word(self) -> str:
        return "".join("R" if r else "L" for r in self.right)

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    @property
    def arrows(self) -> list[tuple[int, int]]:
        return [(k, k + 1) if r else (k + 1, k) for k, r in enumerate(self.right, start=1)]

    def points_right(self, k: int) -> bool:
        """Orientation of the edge {k, k+1}."""
        return self.right[k - 1]

    @property
    def sinks(self) -> list[int]:
        return [v for v in self.vertices if all(s != v for s, _ in self.arrows)]

    @property
    def sources(self) -> list[int]:
        return [v for v in self.vertices if all(t != v for _, t in self.arrows)]

    @property
    def upper(self) -> list[int]:
        return [k for k in range(1, self.n) if self.right[k - 1]]

    @property
    def lower(self) -> list[int]:
        return [k for k in range(1, self.n) if not self.right[k - 1]]

    def injective_support(self, sink: int) -> set[int]:
        """Vertices with a path to `sink`."""
        out = {sink}
        k = sink - 1
        while k >= 1 and self.right[k - 1]:
            out.add(k)
            k -= 1
        k = sink + 1
        while k <= self.n and not self.right[k - 2]:
            out.add(k)
            k += 1
        return out


def all_quivers(n: int) -> list[QuiverA]:
    return [QuiverA(n, tuple(r)) for r in product((True, False), repeat=n - 1)]


@dataclass(frozen=True)
class AlienSet:
    arrows: tuple[tuple[int, int], ...] = ()

    def __iter__(self):
        return iter(self.arrows)

    def __len__(self) -> int:
        return len(self.arrows)


@dataclass(frozen=True)
class AlienVerdict:
    """Outcome of the alien-set checks.

    `condition` names the first violated condition in the order a, b, c, d;
    `violations` lists every violated condition with its message.
    """

    ok: bool
    condition: str | None = None
    arrow: tuple[int, int] | None = None
    message: str = ""
    violations: tuple[tuple[str, str], ...] = ()

    def __bool__(self) -> bool:
        return self.ok


def _reach(n: int, edges: Sequence[tuple[int, int]]) -> list[int]:
    """reach[v] = bitmask of vertices reachable from v (reflexive); [] on a cycle."""
    succ = {v: [] for v in range(1, n + 1)}
    for s, t in edges:
        succ[s].append(t)
    reach = {}
    state = {}

    def visit(v):
        if state.get(v) == 1:
            return False
        if state.get(v) == 2:
            return True
        state[v] = 1
        m = 1 << v
        for w in succ[v]:
            if not visit(w):
                return False
            m |= reach[w]
        reach[v] = m
        state[v] = 2
        return True

    for v in range(1, n + 1):
        if not visit(v):
            return []
    return [0] + [reach[v] for v in range(1, n + 1)]


def _count_paths(n: int, edges: Sequence[tuple[int, int]], s: int, t: int) -> int:
    succ = {v: [] for v in range(1, n + 1)}
    for a, b in edges:
        succ[a].append(b)
    memo: dict[int, int] = {}

    def count(v):
        if v == t:
            return 1
        if v not in memo:
            memo[v] = sum(count(w) for w in succ[v])
        return memo[v]

    return count(s)


def check_alien_arrow(q: QuiverA, arrow: tuple[int, int]) -> AlienVerdict:
    """Conditions (a) and (b), which concern a single arrow."""
    s, t = arrow
    if not (1 <= s <= q.n and 1 <= t <= q.n) or s == t:
        return AlienVerdict(False, "a", arrow, f"{s}->{t} does not join two distinct vertices")
    if not any({s, t} <= q.injective_support(z) for z in q.sinks):
        return AlienVerdict(False, "a", arrow, f"{s} and {t} share no injective support")
    if t in q.sources and t not in (1, q.n):
        return AlienVerdict(False, "b", arrow, f"target {t} is an inner source")
    return AlienVerdict(True)


def validate_alien_set(q: QuiverA, f: AlienSet | Iterable[tuple[int, int]]) -> AlienVerdict:
    f = tuple(f)
    found: list[tuple[str, tuple[int, int] | None, str]] = []
    for arrow in f:
        v = check_alien_arrow(q, arrow)
        if not v:
            found.append((v.condition, arrow, v.message))
    edges = q.arrows + list(f)
    acyclic = bool(_reach(q.n, edges))
    if acyclic:
        if len(set(f)) != len(f):
            found.append(("c", None, "repeated alien arrow"))
        for arrow in f:
            if _count_paths(q.n, edges, *arrow) != 1:
                found.append(("c", arrow, f"{arrow[0]}->{arrow[1]} is not the only path"))
    else:
        found.append(("d", None, "Q^F has an oriented cycle"))
    if not found:
        return AlienVerdict(True)
    found.sort(key=lambda item: item[0])
    cond, arrow, msg = found[0]
    return AlienVerdict(False, cond, arrow, msg, tuple((c, m) for c, _, m in found))


def poset_of_quiver(q: QuiverA, f: AlienSet | Iterable[tuple[int, int]] = ()) -> Poset:
    """x <= y iff Q^F has a path from x to y. Points are the ints 1..n."""
    f = tuple(f)
    v = validate_alien_set(q, f)
    if not v:
        raise InvalidAlien(f"condition ({v.condition}): {v.message}")
    return build_poset(list(q.vertices), q.arrows + list(f))


def alien_candidates(q: QuiverA) -> list[tuple[int, int]]:
    """Arrows satisfying (a) and (b) that also avoid an immediate clash with Q."""
    reach = _reach(q.n, q.arrows)
    out = []
    for s in q.vertices:
        for t in q.vertices:
            if s == t or reach[s] >> t & 1 or reach[t] >> s & 1:
                continue
            if check_alien_arrow(q, (s, t)):
                out.append((s, t))
    return out


def alien_sets(q: QuiverA) -> list[AlienSet]:
    """Every valid alien set of q, found by backtracking over candidate arrows.

    Violations of (c) and (d) persist when arrows are added, so a failing
    partial set prunes its whole branch.
    """
    cands = alien_candidates(q)
    found: list[AlienSet] = []

    def grow(start: int, chosen: list[tuple[int, int]]):
        found.append(AlienSet(tuple(chosen)))
        for k in range(start, len(cands)):
            trial = chosen + [cands[k]]
            if validate_alien_set(q, trial):
                grow(k + 1, trial)

    grow(0, [])
    return found
