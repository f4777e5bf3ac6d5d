from fractions import Fraction

import pytest

from oracles import interval_module_socle, sinks_of
from peakspr.errors import BoundaryAngle, InvalidAlien, NotSincere, NotSpSegment
from peakspr.geometry import (
    bi_fan,
    build_polygon,
    build_polygon_prime,
    central_charge,
    charge_of_support,
    classify,
    frozen_segments,
    functor_F,
    functor_Omega,
    grouped,
    is_strictly_convex,
    phi_m_stability_check,
    phi_stability_check,
    pivots,
    principal_subchains,
    require_interior,
    seg,
    sincere_weights,
    sp_segments,
    ar_quiver_sp,
    star_segments,
    suitable_segments,
    translation_quiver,
    underline_segments,
    z_m,
)
from peakspr.poset import bilinear_form
from peakspr.quiver import QuiverA, alien_sets, all_quivers, poset_of_quiver
from peakspr.spaces import CombPeakSpace, SincereShape, enumerate_indecomposables

from conftest import E1_ALIENS, E1_WORD


def segs(*pairs):
    return {seg(i, j) for i, j in pairs}


@pytest.fixture
def poly():
    return build_polygon(QuiverA.from_string(E1_WORD))


def test_barred_sets_and_count(poly):
    assert poly.upper == (1, 3, 4, 6) and poly.lower == (2, 5)
    assert len(poly.segments) == 28 == len(translation_quiver(poly).nodes)


def test_all_right_quiver():
    p = build_polygon(QuiverA.from_string("RRRR"))
    assert p.upper == (1, 2, 3, 4) and p.lower == ()
    assert suitable_segments(p) == [seg(4, 5)]


def test_default_coordinates_convex():
    for k in range(1, 9):
        for q in all_quivers(k):
            assert is_strictly_convex(build_polygon(q)), q.word


def test_pivots(poly):
    assert poly.Rinv[2] == 5
    assert seg(1, 5) in pivots(seg(1, 2), poly)
    # R^-1(1) = 0 and R^-1(0) = 2: neither candidate keeps i < j
    assert pivots(seg(0, 1), poly) == []


def test_translation_defined_iff_order_kept(poly):
    tq = translation_quiver(poly)
    for g in tq.nodes:
        a, b = poly.R[g.i], poly.R[g.j]
        assert (g in tq.translation) == (a < b)
    assert set(tq.arrows) == {(g, h) for g in tq.nodes for h in pivots(g, poly)}


def test_functor_F():
    assert functor_F(seg(0, 7)) == (1, 7)
    assert functor_F(seg(1, 2)) == (2, 2)
    assert functor_F(seg(1, 5)) == (2, 5)


def test_suitable(poly):
    assert set(suitable_segments(poly)) == segs((1, 2), (2, 3), (4, 5), (5, 6), (6, 7))


def test_suitable_map_to_simple_projective_or_injective():
    for k in range(2, 8):
        for q in all_quivers(k):
            for g in suitable_segments(build_polygon(q)):
                v = g.j
                assert v in q.sinks or v in q.sources


def test_bi_fans(poly):
    assert bi_fan(seg(1, 2), poly) == segs(
        (1, 2), (1, 5), (1, 7), (1, 6), (1, 4), (1, 3), (0, 2), (0, 5), (0, 7), (0, 6), (0, 4), (0, 3)
    )
    assert bi_fan(seg(4, 5), poly) == segs(
        (4, 5), (4, 7), (4, 6), (3, 5), (3, 7), (3, 6), (1, 5), (1, 7), (1, 6), (0, 5), (0, 7), (0, 6), (2, 5), (2, 7), (2, 6)
    )
    assert bi_fan(seg(6, 7), poly) == segs((6, 7), (4, 7), (3, 7), (1, 7), (0, 7), (2, 7), (5, 7))


def test_underline(poly):
    cs, ds = principal_subchains(poly)
    assert cs == [] and ds == [[3, 4]]
    assert underline_segments(poly) == segs((0, 4), (1, 4), (2, 4), (3, 4))


def test_underline_literal_reading(poly):
    cs, ds = principal_subchains(poly, "literal")
    assert sorted(ds) == [[0, 1], [0, 4], [3, 4]]
    assert underline_segments(poly, "literal") == underline_segments(poly) | {seg(0, 1)}


def test_underline_empty_without_subchains():
    assert underline_segments(build_polygon(QuiverA.from_string("RL"))) == set()


def test_star_basics(poly):
    star = star_segments(poly)
    assert not star & underline_segments(poly)
    for g in suitable_segments(poly):
        if g.j in poly.lower or g.j == poly.top:
            assert g in star


def test_frozen_alpha(poly):
    assert frozen_segments((3, 1), poly) == segs((1, 3), (1, 4), (1, 5), (1, 6), (1, 7))


def test_frozen_beta_by_formula(poly):
    # case (a) with j1=4, j2=6, sink 5: m >= 6 and 4 <= s < 5
    assert frozen_segments((6, 4), poly) == segs((4, 6), (4, 7))


def test_frozen_needs_sink_between(poly):
    with pytest.raises(InvalidAlien):
        frozen_segments((4, 3), poly)


def _star_vs_socle(k, reading):
    bad = 0
    for q in all_quivers(k):
        p = build_polygon(q)
        star = star_segments(p, reading)
        sinks = sinks_of(q.n, q.arrows)
        for g in p.segments:
            a, b = functor_F(g)
            sp = interval_module_socle(q.arrows, a, b) <= sinks
            bad += (g in star) != sp
    return bad


@pytest.mark.parametrize("k", range(1, 7))
def test_star_matches_socle_oracle(k):
    assert _star_vs_socle(k, "bounded") == 0


def test_literal_reading_also_matches_socle_oracle():
    assert _star_vs_socle(6, "literal") == 0


def test_underline_never_socle_projective():
    for q in all_quivers(6):
        p = build_polygon(q)
        sinks = sinks_of(q.n, q.arrows)
        for g in underline_segments(p, "literal"):
            assert not interval_module_socle(q.arrows, *functor_F(g)) <= sinks


def test_sp_example_count_and_formula(poly):
    q = QuiverA.from_string(E1_WORD)
    sp = sp_segments(q, E1_ALIENS)
    assert len(sp) == 15
    union = bi_fan(seg(1, 2), poly) | bi_fan(seg(4, 5), poly) | bi_fan(seg(6, 7), poly)
    rest = union - underline_segments(poly) - frozen_segments((3, 1), poly) - frozen_segments((6, 4), poly)
    assert sp == rest
    assert sp_segments(q) == star_segments(poly)


def test_classify_consistent():
    q = QuiverA.from_string(E1_WORD)
    for g, c in classify(q, E1_ALIENS).items():
        assert c.sp == (c.star and not c.frozen_by)


def test_omega_example(e1):
    q = QuiverA.from_string(E1_WORD)
    sp = sp_segments(q, E1_ALIENS)
    got = {functor_Omega(g, q, E1_ALIENS, e1).support for g in sp}
    assert got == {u.support for u in enumerate_indecomposables(e1)}
    assert functor_Omega(seg(1, 2), q, E1_ALIENS).support == {2}
    with pytest.raises(NotSpSegment):
        functor_Omega(seg(1, 3), q, E1_ALIENS)


def test_omega_bijection_small():
    for k in range(1, 7):
        for q in all_quivers(k):
            for f in alien_sets(q):
                p = poset_of_quiver(q, f)
                sp = sp_segments(q, f)
                supports = sorted(tuple(sorted(g.support)) for g in sp)
                ref = sorted(tuple(sorted(u.support)) for u in enumerate_indecomposables(p))
                assert supports == ref, (q.word, f)


def test_frozen_supports_are_not_objects():
    for k in range(3, 7):
        for q in all_quivers(k):
            for f in alien_sets(q):
                if not f:
                    continue
                objs = {u.support for u in enumerate_indecomposables(poset_of_quiver(q, f))}
                for g, c in classify(q, f).items():
                    if c.star and c.frozen_by:
                        assert frozenset(g.support) not in objs


FIGURE_AR = [
    ((1, 2), (1, 2, 3, 4, 5)),
    ((1, 2, 3, 4, 5), (1, 2, 3, 4, 5, 6, 7)),
    ((1, 2, 3, 4, 5), (3, 4, 5)),
    ((1, 2, 3, 4, 5, 6), (1, 2, 3)),
    ((1, 2, 3, 4, 5, 6), (3, 4, 5, 6)),
    ((1, 2, 3, 4, 5, 6, 7), (1, 2, 3, 4, 5, 6)),
    ((1, 2, 3, 4, 5, 6, 7), (3, 4, 5, 6, 7)),
    ((2,), (1, 2)),
    ((3, 4, 5), (3, 4, 5, 6, 7)),
    ((3, 4, 5, 6, 7), (3, 4, 5, 6)),
    ((3, 4, 5, 6, 7), (6, 7)),
    ((4, 5), (4, 5, 6, 7)),
    ((4, 5), (1, 2, 3, 4, 5)),
    ((4, 5, 6), (1, 2, 3, 4, 5, 6)),
    ((4, 5, 6, 7), (4, 5, 6)),
    ((4, 5, 6, 7), (1, 2, 3, 4, 5, 6, 7)),
    ((5,), (4, 5)),
    ((7,), (4, 5, 6, 7)),
]


def test_sp_quiver_matches_figure():
    g = ar_quiver_sp(QuiverA.from_string(E1_WORD), E1_ALIENS)
    assert len(g.nodes) == 15
    got = sorted((tuple(a.support), tuple(b.support)) for a, b in g.arrows)
    assert got == sorted(FIGURE_AR)
    assert len(g.meshes) == 4 == len(g.translation)
    sp = set(g.nodes)
    for passed in g.via.values():
        assert not sp & set(passed)


def test_sp_quiver_single_node():
    g = ar_quiver_sp(QuiverA.from_string(""))
    assert len(g.nodes) == 1 and not g.arrows


# ---------------------------------------------------------------- charges


def test_telescoping(poly):
    for g in poly.segments:
        assert central_charge(g, poly) == charge_of_support(poly, g.support)


def test_boundary_edges_point_right(poly):
    for g in poly.segments:
        assert central_charge(g, poly)[0] > 0


def test_general_convex_stability_example(e1):
    q = QuiverA.from_string(E1_WORD)
    p = build_polygon(q)
    for u in enumerate_indecomposables(e1):
        assert phi_stability_check(p, u).stable


def _fence_bilinear(shape):
    p = shape.poset()
    one = [1] * len(p)
    unit = lambda i: [int(k == i) for k in range(len(p))]  # noqa: E731
    order = [p.idx(x) for x in shape.points]
    w = tuple(bilinear_form(p, one, unit(i)) for i in order)
    k = tuple(bilinear_form(p, unit(i), one) for i in order)
    return w, k


def test_weights_s1_3():
    s = SincereShape.standard("S1", 3)
    w, k = sincere_weights(s)
    assert (w, k) == ((0, 1, -1, 1, 0), (1, -1, 1, -1, 1))
    assert grouped(s, w) == (0, -1, 0, 1, 1)
    assert grouped(s, k) == (1, 1, 1, -1, -1)


@pytest.mark.parametrize("kind", ["S1", "S2", "S3"])
def test_weights_match_bilinear(kind):
    for r in range(1, 6):
        s = SincereShape.standard(kind, r)
        assert sincere_weights(s) == _fence_bilinear(s), (kind, r)


def test_weights_single_point():
    # b(e, e) = 1 on a lone peak
    assert sincere_weights(SincereShape.standard("S1", 1)) == ((1,), (1,))


def test_z_m_examples():
    s = SincereShape.standard("S1", 3)
    pts = s.points
    assert z_m(s, pts[1:5], 1) == (5, 4)
    assert z_m(s, pts[:1], 1) == (1, 2)
    assert z_m(s, pts[2:4], 1) == (2, 2)
    assert z_m(s, pts[:1], 2) == (2, 3)


def test_z_m_rejects_bad_m():
    with pytest.raises(ValueError):
        z_m(SincereShape.standard("S1", 2), [], 0)


def test_not_sincere_rejected():
    s = SincereShape.standard("S1", 3)
    bad = SincereShape("S2", 3, s.z_points, s.x_points)
    with pytest.raises(NotSincere):
        sincere_weights(bad)


def test_prime_polygon_s1_3():
    got = build_polygon_prime(SincereShape.standard("S1", 3), 2)
    assert got == {0: (0, 0), 1: (2, 3), 2: (5, 4), 3: (6, 7), 4: (9, 8), 5: (11, 11)}


@pytest.mark.parametrize("kind", ["S1", "S2", "S3"])
def test_prime_vertices_are_prefix_sums(kind):
    for r in range(1, 6):
        s = SincereShape.standard(kind, r)
        for m in (1, 2, 3):
            verts = build_polygon_prime(s, m)
            for k in range(len(s.points) + 1):
                assert verts[k] == z_m(s, s.points[:k], m), (kind, r, m, k)


def test_s3_is_reflected_s1():
    for r in range(1, 5):
        a = build_polygon_prime(SincereShape.standard("S3", r), 2)
        b = build_polygon_prime(SincereShape.standard("S1", r + 1), 2)
        assert a == {k: (y, x) for k, (x, y) in b.items()}


def test_prime_charges_in_open_quadrant():
    for kind in ("S1", "S2", "S3"):
        for r in range(1, 6):
            s = SincereShape.standard(kind, r)
            for m in (2, 3):
                v = build_polygon_prime(s, m)
                xs = [v[k][0] for k in sorted(v)]
                assert all(a < b for a, b in zip(xs, xs[1:]))
                for x in s.points:
                    re, im = z_m(s, [x], m)
                    assert re > 0 and im > 0


def test_phi_m_boundary_at_m1():
    s = SincereShape.standard("S1", 3)
    u = CombPeakSpace(s.poset(), frozenset(s.points))
    v = phi_m_stability_check(s, u, 1)
    assert v.status == "boundary"
    with pytest.raises(BoundaryAngle):
        require_interior(v)


def test_phi_m_s1_3_stable():
    s = SincereShape.standard("S1", 3)
    u = CombPeakSpace(s.poset(), frozenset(s.points))
    for m in (2, 3):
        assert phi_m_stability_check(s, u, m).stable


def test_phi_m_parallel_subobject():
    # S2(3): an interior (x, z) pair has Z_m = (2m, 2m), parallel to the whole
    s = SincereShape.standard("S2", 3)
    sub = s.points[1:3]
    assert z_m(s, sub, 2) == (Fraction(4), Fraction(4))
