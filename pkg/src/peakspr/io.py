"""Text formats for posets and quivers with alien arrows.

Poset files list ``point <label>`` lines followed by ``cover <a> <b>`` lines
(b covers a). Quiver files start with ``quiver <n>`` and then give
``arrow <i> <j>`` for each edge and ``alien <s> <t>`` for each alien arrow.
``#`` starts a comment.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .errors import ParseError
from .poset import Poset, build_poset
from .quiver import QuiverA, poset_of_quiver


@dataclass(frozen=True)
class PosetSource:
    points: tuple
    covers: tuple

    def poset(self) -> Poset:
        return build_poset(self.points, self.covers)


@dataclass(frozen=True)
class QuiverSource:
    quiver: QuiverA
    aliens: tuple[tuple[int, int], ...]

    def poset(self) -> Poset:
        return poset_of_quiver(self.quiver, self.aliens)


def label(tok: str):
    return int(tok) if tok.lstrip("-").isdigit() else tok


def _int(tok: str, line: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"expected an integer, got {tok!r}", line) from None


def parse_text(text: str) -> PosetSource | QuiverSource:
    rows = []
    for n, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].split()
        if body:
            rows.append((n, body[0], body[1:]))
    if not rows:
        raise ParseError("empty input", 1)
    if rows[0][1] == "quiver":
        return _parse_quiver(rows)
    return _parse_poset(rows)


def _arity(line: int, word: str, args: list, k: int) -> None:
    if len(args) != k:
        raise ParseError(f"'{word}' takes {k} argument(s), got {len(args)}", line)


def _parse_poset(rows) -> PosetSource:
    points: list = []
    covers: list = []
    seen = set()
    for line, word, args in rows:
        if word == "point":
            _arity(line, word, args, 1)
            x = label(args[0])
            if x in seen:
                raise ParseError(f"point {x!r} declared twice", line)
            if covers:
                raise ParseError("point lines must precede cover lines", line)
            seen.add(x)
            points.append(x)
        elif word == "cover":
            _arity(line, word, args, 2)
            a, b = label(args[0]), label(args[1])
            for x in (a, b):
                if x not in seen:
                    raise ParseError(f"cover uses undeclared point {x!r}", line)
            if a == b:
                raise ParseError(f"point {a!r} cannot cover itself", line)
            covers.append((a, b))
        else:
            raise ParseError(f"unknown directive {word!r} in a poset file", line)
    if not points:
        raise ParseError("no points declared", rows[0][0])
    return PosetSource(tuple(points), tuple(covers))


def _parse_quiver(rows) -> QuiverSource:
    line, _, args = rows[0]
    _arity(line, "quiver", args, 1)
    n = _int(args[0], line)
    if n < 1:
        raise ParseError("a quiver needs at least one vertex", line)
    edges: dict[int, tuple[int, int, int]] = {}
    aliens = []
    for line, word, args in rows[1:]:
        if word not in ("arrow", "alien"):
            raise ParseError(f"unknown directive {word!r} in a quiver file", line)
        _arity(line, word, args, 2)
        s, t = _int(args[0], line), _int(args[1], line)
        if not (1 <= s <= n and 1 <= t <= n):
            raise ParseError(f"vertex out of range 1..{n}", line)
        if word == "arrow":
            if abs(s - t) != 1:
                raise ParseError(f"arrow {s} {t} does not join neighbours", line)
            k = min(s, t)
            if k in edges:
                raise ParseError(f"edge {{{k},{k + 1}}} already oriented on line {edges[k][2]}", line)
            edges[k] = (s, t, line)
        else:
            aliens.append((s, t))
    missing = [k for k in range(1, n) if k not in edges]
    if missing:
        raise ParseError(f"edge {{{missing[0]},{missing[0] + 1}}} has no arrow", rows[-1][0])
    q = QuiverA.from_arrows(n, [(s, t) for s, t, _ in edges.values()])
    return QuiverSource(q, tuple(aliens))


def read_source(path: str | Path) -> PosetSource | QuiverSource:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except UnicodeDecodeError as e:
        raise ParseError(f"not UTF-8: {e}", None) from None
    return parse_text(text)


def format_poset(p: Poset) -> str:
    lines = [f"point {x}" for x in p.points]
    lines += [f"cover {p.points[a]} {p.points[b]}" for a, b in p.cover_pairs]
    return "\n".join(lines) + "\n"


def format_quiver(q: QuiverA, aliens=()) -> str:
    lines = [f"quiver {q.n}"] + [f"arrow {s} {t}" for s, t in q.arrows]
    lines += [f"alien {s} {t}" for s, t in aliens]
    return "\n".join(lines) + "\n"
