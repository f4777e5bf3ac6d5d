"""Weights, slopes and the verdicts and filtrations they induce.

Weights are integer tuples aligned with ``poset.points``. Subobjects of an
indecomposable are indexed by subsets I of its peaks (see
spaces.subobject_mask), so filtrations are chains of such subsets.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import KappaNotPositive, NotSemistable, NotTypeA, ShapeMismatch
from .poset import Poset, bits, mobius
from .spaces import CombPeakSpace, coordinate_vector, materialize, peak_subsets, subobject_mask

Weight = tuple[int, ...]


def as_weight(p: Poset, w) -> Weight:
    if isinstance(w, Mapping):
        out = [0] * len(p)
        for k, v in w.items():
            out[p.idx(k)] = v
        return tuple(out)
    w = tuple(w)
    if len(w) != len(p):
        raise ShapeMismatch(f"weight of length {len(w)} for a poset with {len(p)} points")
    return w


def evaluate(w: Sequence[int], mask: int) -> int:
    """w(U) for the support-only object with the given point mask."""
    return sum(w[i] for i in bits(mask))


def evaluate_dims(w: Sequence[int], dims: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(w, dims))


def total_dimension(p: Poset) -> Weight:
    return (1,) * len(p)


def sincere_theta(s: Poset) -> Weight:
    """theta_x = b(1, e_x) - b(e_x, 1) on a sincere poset: column sum minus row sum of C^-1."""
    mu = mobius(s)
    n = len(s)
    return tuple(sum(mu[y][x] for y in range(n)) - sum(mu[x][t] for t in range(n)) for x in range(n))


def coordinate_support(u: CombPeakSpace) -> frozenset:
    if u.csupp is not None:
        return u.csupp
    cdn = coordinate_vector(materialize(u))
    return frozenset(x for x, c in zip(u.poset.points, cdn) if c)


def lift_weight(w: Sequence[int], s: Poset, p: Poset) -> Weight:
    """Zero extension of a weight on the subposet s."""
    out = [0] * len(p)
    for x, v in zip(s.points, w):
        out[p.idx(x)] = v
    return tuple(out)


def restrict_weight(w: Sequence[int], p: Poset, s: Poset) -> Weight:
    return tuple(w[p.idx(x)] for x in s.points)


def theta_of(u: CombPeakSpace) -> Weight:
    p = u.poset
    if not p.type_a:
        raise NotTypeA(f"{p.type_a.pattern} at {p.type_a.witness}")
    cs = coordinate_support(u)
    s = p.subposet(sorted(cs, key=p.idx))
    return lift_weight(sincere_theta(s), s, p)


@dataclass(frozen=True)
class SubValue:
    peaks: frozenset
    support: frozenset
    value: object


@dataclass(frozen=True)
class StabilityVerdict:
    status: str  # stable | semistable | unstable
    total: object
    values: tuple[SubValue, ...]
    witness: SubValue | None = None

    @property
    def stable(self) -> bool:
        return self.status == "stable"

    @property
    def semistable(self) -> bool:
        return self.status in ("stable", "semistable")


def _subs(u: CombPeakSpace) -> list[tuple[int, int]]:
    p = u.poset
    if not p.type_a:
        raise NotTypeA(f"{p.type_a.pattern} at {p.type_a.witness}")
    return [(i, subobject_mask(u, i)) for i in peak_subsets(u)]


def _verdict(u: CombPeakSpace, total, pairs, values, zero_total: bool) -> StabilityVerdict:
    p = u.poset
    recs = tuple(SubValue(frozenset(p.labels(i)), frozenset(p.labels(m)), v) for (i, m), v in zip(pairs, values))
    worst = max(recs, key=lambda r: r.value) if recs else None
    if zero_total and all(r.value < 0 for r in recs):
        return StabilityVerdict("stable", total, recs)
    if zero_total and all(r.value <= 0 for r in recs):
        return StabilityVerdict("semistable", total, recs, worst)
    return StabilityVerdict("unstable", total, recs, worst)


def is_theta_stable(u: CombPeakSpace, w) -> StabilityVerdict:
    w = as_weight(u.poset, w)
    pairs = _subs(u)
    total = evaluate(w, u.mask)
    values = [evaluate(w, m) for _, m in pairs]
    return _verdict(u, total, pairs, values, total == 0)


@dataclass(frozen=True)
class Slope:
    theta: Weight
    kappa: Weight

    def value(self, mask: int) -> Fraction:
        k = evaluate(self.kappa, mask)
        return Fraction(evaluate(self.theta, mask), k)


def make_slope(p: Poset, theta, kappa=None) -> Slope:
    return Slope(as_weight(p, theta), as_weight(p, kappa) if kappa is not None else total_dimension(p))


def _positive(s: Slope, p: Poset, mask: int) -> None:
    k = evaluate(s.kappa, mask)
    if k <= 0:
        raise KappaNotPositive(frozenset(p.labels(mask)), k)


def is_mu_stable(u: CombPeakSpace, s: Slope) -> StabilityVerdict:
    p = u.poset
    pairs = _subs(u)
    _positive(s, p, u.mask)
    for _, m in pairs:
        _positive(s, p, m)
    mu = s.value(u.mask)
    # compare mu(sub) - mu(u) against 0 so the shared verdict logic applies
    values = [s.value(m) - mu for _, m in pairs]
    v = _verdict(u, mu, pairs, values, True)
    recs = tuple(SubValue(r.peaks, r.support, r.value + mu) for r in v.values)
    witness = SubValue(v.witness.peaks, v.witness.support, v.witness.value + mu) if v.witness else None
    return StabilityVerdict(v.status, mu, recs, witness)


def theta_hat(u: CombPeakSpace, s: Slope) -> Weight:
    """kappa(U) theta - theta(U) kappa, which vanishes on U."""
    k = evaluate(s.kappa, u.mask)
    t = evaluate(s.theta, u.mask)
    return tuple(k * a - t * b for a, b in zip(s.theta, s.kappa))


def extend_positive(w, v_dims, p: Poset, p_tilde: Poset, new_point) -> Weight:
    """Weight on p_tilde = p + new_point built from a positively stable weight on p."""
    if set(p_tilde.points) != set(p.points) | {new_point} or new_point in p.points:
        raise ShapeMismatch("p_tilde must be p plus exactly the new point")
    w = as_weight(p, w)
    dims = as_weight(p_tilde, v_dims)
    out = [0] * len(p_tilde)
    for x, v in zip(p.points, w):
        out[p_tilde.idx(x)] = v
    if new_point in p_tilde.max_points:
        return tuple(out)
    d_new = dims[p_tilde.idx(new_point)]
    d_top = sum(dims[p_tilde.idx(z)] for z in p_tilde.max_points)
    factor = d_new * d_top + 1
    out = [factor * v for v in out]
    for z in p_tilde.max_points:
        out[p_tilde.idx(z)] -= d_new
    out[p_tilde.idx(new_point)] = d_top
    return tuple(out)


# ---------------------------------------------------------------- filtrations


@dataclass(frozen=True)
class Filtration:
    subsets: tuple[frozenset, ...]  # I^0 = {} up to I^h = all peaks
    layer_dims: tuple[tuple[int, ...], ...]
    layer_slopes: tuple[Fraction, ...]


def sub_mask(u: CombPeakSpace, peaks: int) -> int:
    """Support of U_{K_I}, including the two improper cases."""
    full = u.mask & u.poset.max_mask
    if peaks == 0:
        return 0
    if peaks == full:
        return u.mask
    return subobject_mask(u, peaks)


def _supersets(full: int, base: int) -> list[int]:
    free = full & ~base
    out = []
    sub = free
    while sub:
        out.append(base | sub)
        sub = (sub - 1) & free
    return out


def _layer(u: CombPeakSpace, s: Slope, lo: int, hi: int) -> tuple[int, Fraction, int]:
    m = sub_mask(u, hi) & ~sub_mask(u, lo)
    _positive(s, u.poset, m)
    return m, s.value(m), evaluate(s.kappa, m)


def _as_filtration(u: CombPeakSpace, s: Slope, chain: list[int]) -> Filtration:
    p = u.poset
    dims, slopes = [], []
    for lo, hi in zip(chain, chain[1:]):
        m, mu, _ = _layer(u, s, lo, hi)
        dims.append(tuple(int(m >> i & 1) for i in range(len(p))))
        slopes.append(mu)
    return Filtration(tuple(frozenset(p.labels(c)) for c in chain), tuple(dims), tuple(slopes))


def hn_filtration(u: CombPeakSpace, s: Slope) -> Filtration:
    """Repeatedly split off the maximal destabilising subobject of the quotient."""
    full = u.mask & u.poset.max_mask
    _positive(s, u.poset, u.mask)
    chain = [0]
    while chain[-1] != full:
        best = None
        for j in _supersets(full, chain[-1]):
            _, mu, k = _layer(u, s, chain[-1], j)
            key = (mu, k, bin(j).count("1"), -j)
            if best is None or key > best[0]:
                best = (key, j)
        chain.append(best[1])
    return _as_filtration(u, s, chain)


def jh_filtration(u: CombPeakSpace, s: Slope) -> Filtration:
    """Greedy chain of smallest equal-slope steps; each layer is then stable."""
    if not is_mu_stable(u, s).semistable:
        raise NotSemistable(f"{sorted(u.support, key=str)} is not semistable")
    full = u.mask & u.poset.max_mask
    mu = s.value(u.mask)
    chain = [0]
    while chain[-1] != full:
        cands = [j for j in _supersets(full, chain[-1]) if _layer(u, s, chain[-1], j)[1] == mu]
        chain.append(min(cands, key=lambda j: (bin(j).count("1"), j)))
    return _as_filtration(u, s, chain)
