"""Automorphism representations: evaluation, composition, classification,
axes, translations, minimal sets, serialization."""

import random

import pytest

from treescale import (
    DegenerateAxisError,
    Elliptic,
    End,
    Hyperbolic,
    Inversion,
    InversionAut,
    NotHyperbolicError,
    OrientedEdge,
    PortraitAut,
    RepresentationError,
    ROOT,
    SPINE_NEG,
    SPINE_POS,
    TreeParams,
    Vertex,
    aut_from_json,
    aut_to_json,
    axis_window,
    build_translation,
    classify,
    compose,
    compose_all,
    equal_on_ball,
    identity,
    invert,
    min_set_in_ball,
    motion_profile,
    power,
    rigid_map,
    spine_shift,
    translates_along,
    translation_length,
)
from treescale.tree_core import canonical_json, distance, path_between
from treescale.sampling import (
    random_automorphism,
    random_elliptic,
    random_end,
    random_hyperbolic,
    random_inversion,
    random_portrait,
    random_vertex,
)


def test_identity_and_spine_trivial(t3):
    e = identity(t3)
    v = Vertex((2, 1))
    assert e.apply(v) == v
    assert spine_shift(t3, 2).apply(ROOT) == Vertex((1, 1))
    assert spine_shift(t3, -1).apply(ROOT) == Vertex((0,))
    assert spine_shift(t3, 2).apply(Vertex((0, 2))) == Vertex((1, 2))


def test_spine_shift_parity_constraint(t23):
    with pytest.raises(RepresentationError):
        spine_shift(t23, 1)
    spine_shift(t23, 2)
    with pytest.raises(RepresentationError):
        spine_shift(t23, 0)


def test_inversion_only_homogeneous(t3, t23):
    edge = OrientedEdge(ROOT, Vertex((1,)))
    inv = InversionAut(t3, edge)
    assert inv.apply(ROOT) == Vertex((1,))
    assert inv.apply(Vertex((1,))) == ROOT
    assert inv.apply(inv.apply(Vertex((2, 1, 2)))) == Vertex((2, 1, 2))
    with pytest.raises(RepresentationError):
        InversionAut(t23, edge)


def test_rigid_map_carrier(t3):
    g = rigid_map(t3, [ROOT], [Vertex((2, 1))])
    assert g.apply(ROOT) == Vertex((2, 1))
    h = g.invert()
    assert h.apply(Vertex((2, 1))) == ROOT
    for v in t3.ball(4):
        assert h.apply(g.apply(v)) == v


def test_rigid_map_parity_checked(t23):
    with pytest.raises(RepresentationError):
        rigid_map(t23, [ROOT], [Vertex((1,))])
    rigid_map(t23, [ROOT], [Vertex((1, 1))])


def test_isometry_sweep(t3, t23, rng):
    for params in (t3, t23):
        for _ in range(500):
            g = random_automorphism(rng, params)
            u = random_vertex(rng, params, 5)
            v = random_vertex(rng, params, 5)
            assert distance(g.apply(u), g.apply(v)) == distance(u, v)


def test_compose_contract(t3, rng):
    for _ in range(100):
        g = random_automorphism(rng, t3)
        h = random_automorphism(rng, t3)
        v = random_vertex(rng, t3, 5)
        assert compose(g, h).apply(v) == g.apply(h.apply(v))


def test_compose_identity_and_inverse_pointwise(t3, rng):
    for _ in range(20):
        g = random_automorphism(rng, t3)
        assert equal_on_ball(compose(g, identity(t3)), g, 6)
        assert equal_on_ball(compose(g, invert(g)), identity(t3), 6)
        assert equal_on_ball(compose(invert(g), g), identity(t3), 6)


def test_associativity_pointwise(t3, rng):
    for _ in range(20):
        g, h, k = (random_automorphism(rng, t3) for _ in range(3))
        assert equal_on_ball(compose(compose(g, h), k), compose(g, compose(h, k)), 6)


def test_invert_trivial(t3):
    assert invert(identity(t3)).to_json() == {"type": "identity"}
    assert invert(spine_shift(t3, 2)).to_json() == {"type": "spineShift", "shift": -2}


def test_invert_swaps_ends(t3, rng):
    for _ in range(200):
        g = random_hyperbolic(rng, t3)
        t = classify(g)
        ti = classify(invert(g))
        assert isinstance(t, Hyperbolic) and isinstance(ti, Hyperbolic)
        assert ti.length == t.length
        assert ti.attracting == t.repelling
        assert ti.repelling == t.attracting


def test_classify_trivial_cases(t3):
    assert classify(identity(t3)) == Elliptic(ROOT)
    t = classify(spine_shift(t3, 2))
    assert t == Hyperbolic(2, ROOT, SPINE_POS, SPINE_NEG)
    swap = PortraitAut(t3, 1, {(): {0: 0, 1: 2, 2: 1}})
    assert classify(swap) == Elliptic(ROOT)
    inv = InversionAut(t3, OrientedEdge(Vertex((1,)), Vertex((1, 2))))
    t = classify(inv)
    assert isinstance(t, Inversion)
    assert t.edge.unordered_key() == frozenset({(1,), (1, 2)})


def test_classify_vs_coherence_lemma_oracle(t3, t23, rng):
    for params in (t3, t23):
        for _ in range(150):
            g = random_automorphism(rng, params)
            hyperbolic = motion_profile(g).is_hyperbolic
            g2root = g.apply(g.apply(ROOT))
            oracle = False
            for e in path_between(ROOT, g2root).edges():
                for edge in (e, e.reverse()):
                    ge = OrientedEdge(g.apply(edge.origin), g.apply(edge.terminus))
                    if ge != edge and params.coherent(edge, ge):
                        oracle = True
            assert hyperbolic == oracle


def test_classify_profile_certificate(t3, rng):
    # D2 <= D1 for every non-hyperbolic sample, D2 - D1 = length otherwise
    for _ in range(150):
        g = random_automorphism(rng, t3)
        d1 = distance(ROOT, g.apply(ROOT))
        d2 = distance(ROOT, g.apply(g.apply(ROOT)))
        if motion_profile(g).is_hyperbolic:
            assert d2 - d1 == translation_length(g) > 0
        else:
            assert d2 <= d1


def test_axis_window_contract(t3, rng):
    g = spine_shift(t3, 2)
    window = axis_window(g, 1)
    assert window[0] == Vertex((0, 1)) and window[-1] == Vertex((1, 1))
    for _ in range(50):
        g = random_hyperbolic(rng, t3)
        ell = translation_length(g)
        for w in axis_window(g, 2):
            assert distance(w, g.apply(w)) == ell
    with pytest.raises(NotHyperbolicError):
        axis_window(identity(t3), 1)


def test_axis_window_conjugation_equivariance(t3, rng):
    # u maps the axis of g onto the axis of u g u^-1, with equal length
    for _ in range(40):
        g = random_hyperbolic(rng, t3, max_step=3)
        u = random_automorphism(rng, t3)
        h = compose_all(t3, [u, g, invert(u)])
        ell = translation_length(g)
        assert translation_length(h) == ell
        for w in axis_window(g, 2):
            assert distance(u.apply(w), h.apply(u.apply(w))) == ell


def test_anchor_is_projection_of_root(t3, rng):
    for _ in range(60):
        g = random_hyperbolic(rng, t3)
        m = motion_profile(g)
        d1 = distance(ROOT, g.apply(ROOT))
        assert distance(m.anchor, g.apply(m.anchor)) == m.length
        assert distance(ROOT, m.anchor) == (d1 - m.length) // 2


def test_build_translation_contract(t3, t23, rng):
    g = build_translation(t3, SPINE_NEG, SPINE_POS, 2)
    assert equal_on_ball(g, spine_shift(t3, 2), 6)
    for params in (t3, t23):
        for _ in range(100):
            w1 = random_end(rng, params)
            w2 = random_end(rng, params)
            if w1 == w2:
                continue
            step = 2
            g = build_translation(params, w1, w2, step)
            t = classify(g)
            assert t.length == step
            assert t.attracting == w2
            assert t.repelling == w1
    with pytest.raises(DegenerateAxisError):
        build_translation(t3, SPINE_POS, SPINE_POS, 2)
    with pytest.raises(RepresentationError):
        build_translation(t23, SPINE_NEG, SPINE_POS, 3)


def test_geodesic_between_ends_lies_on_axis(t3, rng):
    from treescale.tree_core import line_vertex

    for _ in range(40):
        w1 = random_end(rng, t3)
        w2 = random_end(rng, t3)
        if w1 == w2:
            continue
        g = build_translation(t3, w1, w2, 2)
        for pos in range(-3, 4):
            v = line_vertex(t3, w1, w2, pos)
            assert distance(v, g.apply(v)) == 2


def test_translates_along(t3, rng):
    g = spine_shift(t3, 2)
    toward = OrientedEdge(ROOT, Vertex((1,)))
    assert translates_along(g, toward)
    assert not translates_along(g, toward.reverse())
    with pytest.raises(NotHyperbolicError):
        translates_along(identity(t3), toward)
    for _ in range(30):
        h = random_hyperbolic(rng, t3)
        window = axis_window(h, 1)
        edges = window.edges()
        hits = sum(
            1
            for e in edges
            for o in (e, e.reverse())
            if translates_along(h, o)
        )
        # exactly the forward orientation of every axis edge qualifies
        assert hits == len(edges)


def test_min_set_examples(t3):
    everything = min_set_in_ball(identity(t3), 2)
    assert len(everything.vertices) == len(t3.ball(2))
    spine = min_set_in_ball(spine_shift(t3, 2), 3)
    assert spine.vertices == frozenset(
        {Vertex((0, 1, 1)), Vertex((0, 1)), Vertex((0,)), ROOT,
         Vertex((1,)), Vertex((1, 1)), Vertex((1, 1, 1))}
    )
    inv = InversionAut(t3, OrientedEdge(ROOT, Vertex((1,))))
    m = min_set_in_ball(inv, 2)
    assert m.vertices == frozenset()
    assert m.midpoints == frozenset({frozenset({(), (1,)})})


def test_min_set_midpoint_intersection(t3):
    # an inversion's midpoint meets the minimal set of anything fixing
    # both endpoints of the inverted edge
    inv = InversionAut(t3, OrientedEdge(ROOT, Vertex((1,))))
    keep = PortraitAut(t3, 2, {(1,): {1: 2, 2: 1}})
    assert min_set_in_ball(inv, 2).intersects(min_set_in_ball(keep, 2))
    away = PortraitAut(t3, 1, {(): {0: 2, 1: 1, 2: 0}})
    assert min_set_in_ball(inv, 2).intersects(min_set_in_ball(away, 2))


def test_portrait_validation(t3):
    with pytest.raises(RepresentationError):
        PortraitAut(t3, 1, {(): {0: 0, 1: 1, 2: 2, 3: 3}})
    with pytest.raises(RepresentationError):
        PortraitAut(t3, 1, {(1,): {1: 1, 2: 2}})  # at support depth
    with pytest.raises(RepresentationError):
        PortraitAut(t3, 2, {(1,): {1: 1, 2: 1}})  # not a bijection


def test_portrait_inverse_and_depth(t3, rng):
    for _ in range(50):
        p = random_portrait(rng, t3, depth=3)
        pi = p.invert()
        assert isinstance(pi, PortraitAut)
        for v in t3.ball(4):
            assert pi.apply(p.apply(v)) == v
        # identity continuation beyond the support depth
        deep = Vertex((2, 1, 1, 2, 1))
        assert p.apply(deep).address[3:] == deep.address[3:]


def test_end_images_exact(t3, rng):
    for _ in range(100):
        g = random_automorphism(rng, t3)
        w = random_end(rng, t3)
        img = g.end_image(w)
        t3.validate_end(img)
        # the image end's ray letters must match images of deep ray vertices
        deep = g.apply(w.ray_vertex(30))
        n = min(len(deep.address), 24)
        assert tuple(img.letter(i) for i in range(n)) == deep.address[:n]
        assert invert(g).end_image(img) == w


def test_apply_validates_addresses(t3):
    with pytest.raises(Exception):
        spine_shift(t3, 2).apply(Vertex((9,)))


def test_serialization_bit_exact(t3, t23, rng):
    for params in (t3, t23):
        for _ in range(80):
            g = random_automorphism(rng, params)
            blob = canonical_json(aut_to_json(g))
            back = aut_from_json(params, aut_to_json(g))
            assert canonical_json(aut_to_json(back)) == blob
            v = random_vertex(rng, params, 4)
            assert back.apply(v) == g.apply(v)


def test_serialization_all_tags(t3):
    samples = [
        identity(t3),
        spine_shift(t3, -3),
        PortraitAut(t3, 2, {(): {0: 1, 1: 0, 2: 2}, (2,): {1: 2, 2: 1}}),
        InversionAut(t3, OrientedEdge(Vertex((1,)), Vertex((1, 1)))),
        rigid_map(t3, [ROOT, Vertex((1,))], [Vertex((2,)), Vertex((2, 1))]),
        build_translation(t3, End((), (2,)), SPINE_POS, 1),
    ]
    samples.append(compose_all(t3, samples[1:3]))
    for g in samples:
        data = aut_to_json(g)
        back = aut_from_json(t3, data)
        assert aut_to_json(back) == data
        assert equal_on_ball(g, back, 4)


def test_power_matches_iterated_compose(t3, rng):
    g = random_automorphism(rng, t3)
    assert equal_on_ball(power(g, 3), compose(g, compose(g, g)), 5)
    assert equal_on_ball(power(g, -2), invert(compose(g, g)), 5)
    assert equal_on_ball(power(g, 0), identity(t3), 5)


def test_mixed_params_rejected(t3, t23):
    with pytest.raises(RepresentationError):
        compose(identity(t3), identity(t23))


def test_elliptic_midpoint_and_inversion_edge(t3, rng):
    # exercise the D2 <= D1 branches: conjugated rotations and inversions
    for _ in range(60):
        g = random_elliptic(rng, t3)
        t = classify(g)
        assert isinstance(t, Elliptic)
        assert g.apply(t.fixed_vertex) == t.fixed_vertex
    for _ in range(60):
        g = random_inversion(rng, t3)
        t = classify(g)
        assert isinstance(t, Inversion)
        u, w = t.edge.origin, t.edge.terminus
        assert g.apply(u) == w and g.apply(w) == u
