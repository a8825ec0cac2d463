"""Tree geometry: distances, paths, coherence, ends, rays."""

import random

import pytest
from hypothesis import given, settings, strategies as st

from treescale import (
    AddressError,
    End,
    OrientedEdge,
    ROOT,
    Segment,
    SPINE_NEG,
    SPINE_POS,
    TreeParams,
    Vertex,
)
from treescale.tree_core import (
    canonical_json,
    distance,
    end_from_json,
    end_to_json,
    lcp_len_ends,
    params_from_json,
    params_to_json,
    path_between,
    vertex_from_json,
    vertex_to_json,
)
from treescale.sampling import random_end, random_vertex

from conftest import bfs_distances, bfs_path


def test_distance_trivial(t3):
    assert t3.distance(ROOT, ROOT) == 0
    assert t3.distance(Vertex((1, 1)), Vertex((1, 2))) == 2


def test_distance_matches_bfs_oracle(t3, t23, rng):
    checked = 0
    for params in (t3, t23):
        ball = params.ball(6)
        for _ in range(50):
            u = rng.choice(ball)
            per_u = bfs_distances(params, 6, u)
            for _ in range(5):
                v = rng.choice([w for w in ball if w.address in per_u])
                assert params.distance(u, v) == per_u[v.address]
                checked += 1
    assert checked == 500


def test_distance_symmetry_and_zero(t3, rng):
    ball = t3.ball(5)
    for _ in range(200):
        u, v = rng.choice(ball), rng.choice(ball)
        assert distance(u, v) == distance(v, u)
        assert (distance(u, v) == 0) == (u == v)


def test_triangle_equality_along_concatenated_geodesics(t3, rng):
    ball = t3.ball(5)
    for _ in range(200):
        u, v = rng.choice(ball), rng.choice(ball)
        path = path_between(u, v)
        for i, w in enumerate(path):
            assert distance(u, w) + distance(w, v) == distance(u, v)
            assert distance(u, w) == i


def test_invalid_addresses_rejected(t3, t23):
    with pytest.raises(AddressError):
        t3.distance(Vertex((3,)), ROOT)
    with pytest.raises(AddressError):
        t3.distance(Vertex((1, 0)), ROOT)
    with pytest.raises(AddressError):
        t23.validate_vertex(Vertex((1, 4)))
    t23.validate_vertex(Vertex((1, 3)))


def test_path_between_trivial(t3):
    assert list(path_between(ROOT, ROOT)) == [ROOT]
    assert list(path_between(Vertex((1,)), Vertex((2,)))) == [
        Vertex((1,)),
        ROOT,
        Vertex((2,)),
    ]


def test_path_length_matches_distance(t3, rng):
    ball = t3.ball(5)
    for _ in range(200):
        u, v = rng.choice(ball), rng.choice(ball)
        assert len(path_between(u, v)) - 1 == distance(u, v)
        assert path_between(u, v)[0] == u
        assert path_between(u, v)[-1] == v


def test_segment_validation():
    with pytest.raises(AddressError):
        Segment((ROOT, Vertex((1, 1))))
    with pytest.raises(AddressError):
        Segment((ROOT, Vertex((1,)), ROOT))


def test_parity_alternates_along_paths(t23, rng):
    ball = t23.ball(5)
    for _ in range(100):
        u, v = rng.choice(ball), rng.choice(ball)
        path = path_between(u, v)
        for a, b in zip(path, path[1:]):
            assert a.parity != b.parity
        assert t23.valency(u) == (3 if u.parity == 0 else 4)


def test_coherent_examples(t3):
    a, b, c = ROOT, Vertex((1,)), Vertex((1, 1))
    e = OrientedEdge(a, b)
    f = OrientedEdge(b, c)
    assert t3.coherent(e, f)  # consecutive on a geodesic
    head_on = OrientedEdge(c, b)
    assert not t3.coherent(e, head_on)  # d(a,c)=2 but d(b,b)=0
    assert not t3.coherent(e, e.reverse())  # convention


def test_coherent_transitive_along_geodesic(t3, rng):
    ball = t3.ball(6)
    for _ in range(200):
        u, v = rng.choice(ball), rng.choice(ball)
        if distance(u, v) < 3:
            continue
        edges = path_between(u, v).edges()
        trio = rng.sample(range(len(edges)), 3)
        trio.sort()
        e1, e2, e3 = (edges[i] for i in trio)
        assert t3.coherent(e1, e2) and t3.coherent(e2, e3) and t3.coherent(e1, e3)


def test_end_canonical_form():
    assert End((1, 1), (1,)) == SPINE_POS
    assert End((), (1, 1)) == End((), (1,))
    assert End((1,), (2, 1)) == End((), (1, 2))
    assert End((0,), (1,)) == SPINE_NEG
    assert SPINE_NEG != SPINE_POS


@settings(max_examples=200, deadline=None)
@given(
    prefix=st.lists(st.integers(1, 2), max_size=4),
    period=st.lists(st.integers(1, 2), min_size=1, max_size=4),
    unroll=st.integers(0, 3),
    rotate=st.integers(0, 3),
)
def test_end_canonicalization_idempotent_and_complete(prefix, period, unroll, rotate):
    base = End(tuple(prefix), tuple(period))
    # same infinite sequence, different presentation
    shifted_prefix = tuple(base.letter(i) for i in range(len(prefix) + unroll))
    k = (len(prefix) + unroll - len(base.prefix)) % len(base.period)
    rotated = base.period[k:] + base.period[:k]
    again = End(shifted_prefix, rotated * (rotate + 1))
    assert again == base
    # canonical form is a fixed point
    assert End(base.prefix, base.period) == base


def test_end_equality_matches_letterwise_equality(t3, rng):
    ends = [random_end(rng, t3) for _ in range(40)]
    for a in ends:
        for b in ends:
            same_letters = all(a.letter(i) == b.letter(i) for i in range(24))
            assert (a == b) == same_letters
    for a in ends:
        for b in ends:
            if a != b:
                n = lcp_len_ends(a, b)
                assert a.letter(n) != b.letter(n)
                assert all(a.letter(i) == b.letter(i) for i in range(n))


def test_end_validation(t23):
    t23.validate_end(End((), (1, 3)))
    with pytest.raises(AddressError):
        t23.validate_end(End((), (3,)))  # 3 lands at even parity too
    with pytest.raises(AddressError):
        t23.validate_end(End((), (3, 1)))  # 3 at even depth
    # absorption can realign an odd-looking presentation into a valid one
    assert End((1,), (3, 1)) == End((), (1, 3))
    t23.validate_end(End((1,), (3, 1)))
    with pytest.raises(AddressError):
        End((), ())


def test_ray_to_end_examples(t3):
    import itertools

    ray = list(itertools.islice(t3.ray_to_end(ROOT, SPINE_POS), 4))
    assert ray == [ROOT, Vertex((1,)), Vertex((1, 1)), Vertex((1, 1, 1))]
    ray = list(itertools.islice(t3.ray_to_end(Vertex((2,)), SPINE_POS), 4))
    assert ray == [Vertex((2,)), ROOT, Vertex((1,)), Vertex((1, 1))]


def test_ray_departure_matches_bfs_oracle(t3, rng):
    import itertools

    for _ in range(200):
        v = random_vertex(rng, t3, 3)
        end = random_end(rng, t3, max_prefix=3, max_period=2)
        # deep finite stand-in for the end, beyond the ball containing v
        deep = end.ray_vertex(9)
        oracle = bfs_path(t3, 10, v, deep)
        departure = t3.departure_edge(v, end)
        assert departure.origin == v
        assert departure.terminus == oracle[1]
        ray = list(itertools.islice(t3.ray_to_end(v, end), 6))
        assert ray == oracle[:6]
        for a, b in zip(ray, ray[1:]):
            assert distance(a, b) == 1


def test_ray_is_eventually_periodic_in_labels(t3, rng):
    import itertools

    for _ in range(50):
        v = random_vertex(rng, t3, 3)
        end = random_end(rng, t3)
        ray = list(itertools.islice(t3.ray_to_end(v, end), 20))
        plen = len(end.period)
        labels = [b.address[-1] for a, b in zip(ray, ray[1:]) if b.depth == a.depth + 1]
        tail = labels[-2 * plen :]
        assert tail[:plen] == tail[plen:]


def test_tree_params_validation():
    with pytest.raises(AddressError):
        TreeParams(1, 2)
    with pytest.raises(AddressError):
        TreeParams(2, 2, k=2)
    assert TreeParams(2, 3).k == 1


def test_json_round_trips(t23, rng):
    for _ in range(50):
        v = random_vertex(rng, t23, 4)
        assert vertex_from_json(vertex_to_json(v)) == v
        e = random_end(rng, t23)
        assert end_from_json(end_to_json(e)) == e
    assert params_from_json(params_to_json(t23)) == t23
    blob = canonical_json(end_to_json(SPINE_NEG))
    assert canonical_json(end_to_json(end_from_json(end_to_json(SPINE_NEG)))) == blob
