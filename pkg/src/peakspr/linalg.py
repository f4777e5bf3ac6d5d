"""Exact rational linear algebra on small dense matrices.

Vectors are tuples of Fraction; a subspace is held as a list of column
vectors spanning it. Everything here is Gaussian elimination over Q.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Vector = tuple[Fraction, ...]


def vec(values: Iterable) -> Vector:
    return tuple(Fraction(v) for v in values)


def zero(n: int) -> Vector:
    return (Fraction(0),) * n


def add(a: Vector, b: Vector) -> Vector:
    return tuple(x + y for x, y in zip(a, b))


def rref(rows: Sequence[Sequence[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form. Returns (nonzero rows, pivot columns)."""
    m = [list(map(Fraction, r)) for r in rows]
    if not m:
        return [], []
    n_cols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        if p != 1:
            m[r] = [x / p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(vectors: Sequence[Vector]) -> int:
    if not vectors:
        return 0
    return len(rref(vectors)[1])


def basis(vectors: Sequence[Vector]) -> list[Vector]:
    """A canonical basis (rref rows) of the span of `vectors`."""
    if not vectors:
        return []
    rows, _ = rref(vectors)
    return [tuple(r) for r in rows]


def contains(space: Sequence[Vector], vectors: Sequence[Vector]) -> bool:
    """True iff every vector lies in span(space)."""
    if not vectors:
        return True
    return rank(list(space) + list(vectors)) == rank(space)


def nullspace(rows: Sequence[Sequence[Fraction]], n_cols: int) -> list[Vector]:
    """Basis of {x : rows . x = 0}."""
    red, pivots = rref(rows) if rows else ([], [])
    free = [c for c in range(n_cols) if c not in pivots]
    out = []
    for f in free:
        x = [Fraction(0)] * n_cols
        x[f] = Fraction(1)
        for row, pc in zip(red, pivots):
            x[pc] = -row[f]
        out.append(tuple(x))
    return out


def intersect_coefficients(a: Sequence[Vector], b: Sequence[Vector], dim: int) -> list[tuple[Vector, Vector]]:
    """Solve a.s = b.t; returns pairs (s, t) spanning the solution space.

    `a` and `b` are lists of columns in a `dim`-dimensional space. When both
    lists are independent the images a.s run over a basis of the intersection.
    """
    k, l = len(a), len(b)
    if k == 0 or l == 0:
        return []
    rows = [[a[j][i] for j in range(k)] + [-b[j][i] for j in range(l)] for i in range(dim)]
    return [(sol[:k], sol[k:]) for sol in nullspace(rows, k + l)]


def combine(columns: Sequence[Vector], coeffs: Sequence[Fraction], dim: int) -> Vector:
    out = [Fraction(0)] * dim
    for col, c in zip(columns, coeffs):
        if c:
            for i, x in enumerate(col):
                out[i] += c * x
    return tuple(out)


def intersect(a: Sequence[Vector], b: Sequence[Vector], dim: int) -> list[Vector]:
    """Basis of span(a) & span(b)."""
    a = basis(a)
    return basis([combine(a, s, dim) for s, _ in intersect_coefficients(a, basis(b), dim)])


def int_matmul(x: Sequence[Sequence[int]], y: Sequence[Sequence[int]]) -> list[list[int]]:
    cols = list(zip(*y))
    return [[sum(p * q for p, q in zip(row, col)) for col in cols] for row in x]
