"""Shared fixtures and independent oracles.

The oracles here are deliberately naive: breadth-first search for
distances and literal enumeration of ball embeddings for coset indices.
They know nothing about the closed forms they are used to check.
"""

from __future__ import annotations

import random

import pytest

from treescale import ROOT, TreeParams, Vertex


@pytest.fixture
def t3():
    """The 3-regular tree (q = 2)."""
    return TreeParams(2, 2)


@pytest.fixture
def t23():
    """The (3, 4)-biregular tree (qE, qO) = (2, 3)."""
    return TreeParams(2, 3)


@pytest.fixture
def rng():
    return random.Random(20260810)


def bfs_distances(params: TreeParams, radius: int, source: Vertex) -> dict:
    """Plain breadth-first distances on the ball graph."""
    inside = {v.address for v in params.ball(radius)}
    dist = {source.address: 0}
    frontier = [source]
    while frontier:
        nxt = []
        for v in frontier:
            for n in params.neighbors(v):
                if n.address in inside and n.address not in dist:
                    dist[n.address] = dist[v.address] + 1
                    nxt.append(n)
        frontier = nxt
    return dist


def bfs_path(params: TreeParams, radius: int, source: Vertex, target: Vertex):
    """First shortest path found by BFS; None outside the ball."""
    inside = {v.address for v in params.ball(radius)}
    prev = {source.address: None}
    frontier = [source]
    while frontier:
        nxt = []
        for v in frontier:
            for n in params.neighbors(v):
                if n.address in inside and n.address not in prev:
                    prev[n.address] = v
                    nxt.append(n)
        frontier = nxt
    if target.address not in prev:
        return None
    path = [target]
    while prev[path[-1].address] is not None:
        path.append(prev[path[-1].address])
    return list(reversed(path))


def enumerate_index_oracle(params: TreeParams, g, center: Vertex, radius: int) -> int:
    """[gVg^-1 : gVg^-1 \\cap V] by literal enumeration.

    Enumerates every adjacency-preserving injective map of the convex hull
    of the two balls that fixes g.B(center, radius) pointwise, and counts
    the distinct restrictions to B(center, radius).  Independent of the
    falling-factorial computation in treescale.scale.
    """
    from treescale.tree_core import distance, path_between

    c1 = g.apply(center)
    fixed = {v.address for v in params.ball(radius, c1)}
    hull = list(
        dict.fromkeys(
            params.ball(radius, c1) + list(path_between(c1, center)) + params.ball(radius, center)
        )
    )
    hull.sort(key=lambda v: distance(c1, v))
    parent = {}
    for v in hull[1:]:
        parent[v.address] = path_between(v, c1)[1]
    targets = params.ball(radius, center)
    restrictions = set()

    def rec(i, images):
        if i == len(hull):
            restrictions.add(tuple(images[t.address].address for t in targets))
            return
        v = hull[i]
        p = parent[v.address]
        pi = images[p.address]
        used = {img.address for img in images.values()}
        for n in params.neighbors(pi):
            if n.address in used:
                continue
            if v.address in fixed and n != v:
                continue
            if v.address not in fixed and n.address in fixed:
                continue
            images[v.address] = n
            rec(i + 1, images)
            del images[v.address]

    rec(1, {c1.address: c1})
    return len(restrictions)
