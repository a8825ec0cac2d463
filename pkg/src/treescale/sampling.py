"""Seeded random generators for vertices, ends, automorphisms and
semigroup members.  Everything takes an explicit random.Random so
campaigns and tests stay reproducible."""

from __future__ import annotations

import random

from .automorphism import (
    Automorphism,
    CompositeAut,
    IdentityAut,
    InversionAut,
    PortraitAut,
    RigidMapAut,
    SpineShiftAut,
    build_translation,
    compose,
    compose_all,
)
from .semigroups import (
    DirectedVertex,
    EdgeMidpointFixator,
    EndMinus,
    EndPlus,
    SemigroupSpec,
    VertexFixator,
    end_through,
)
from .tree_core import ROOT, End, OrientedEdge, TreeParams, Vertex


def random_vertex(rng: random.Random, params: TreeParams, max_depth: int) -> Vertex:
    depth = rng.randrange(max_depth + 1)
    addr = []
    for i in range(depth):
        if i == 0:
            addr.append(rng.randrange(0, params.qE + 1))
        else:
            addr.append(rng.randrange(1, params.branching(i % 2) + 1))
    return Vertex(tuple(addr))


def random_end(
    rng: random.Random, params: TreeParams, max_prefix: int = 3, max_period: int = 3
) -> End:
    prefix = random_vertex(rng, params, max_prefix).address
    plen = rng.randrange(1, max_period + 1)
    if plen % 2 and not params.homogeneous:
        lo_q = min(params.qE, params.qO)
        period = tuple(rng.randrange(1, lo_q + 1) for _ in range(plen))
    else:
        period = tuple(
            rng.randrange(1, params.branching((len(prefix) + i) % 2) + 1)
            for i in range(plen)
        )
    return params.validate_end(End(prefix, period))


def _random_perm(rng: random.Random, labels, fixed: int | None = None) -> dict[int, int]:
    labels = list(labels)
    movable = [x for x in labels if x != fixed]
    images = movable[:]
    rng.shuffle(images)
    perm = dict(zip(movable, images))
    if fixed is not None:
        perm[fixed] = fixed
    return perm


def random_portrait(
    rng: random.Random,
    params: TreeParams,
    depth: int = 2,
    identity_above: int = 0,
    fix_ray: End | None = None,
    density: float = 0.7,
) -> PortraitAut:
    """Random portrait of the given support depth.  Permutations at depth
    below identity_above stay trivial (giving ball-fixator elements) and
    the ray to fix_ray, when given, is fixed letter by letter."""
    perms = {}
    for v in params.ball(max(depth - 1, 0)):
        if v.depth < identity_above or v.depth >= depth:
            continue
        keep = None
        if fix_ray is not None and v.address == tuple(
            fix_ray.letter(i) for i in range(v.depth)
        ):
            keep = fix_ray.letter(v.depth)
        if keep is None and rng.random() > density:
            continue
        perms[v.address] = _random_perm(rng, params.descending_labels(v), keep)
    return PortraitAut(params, depth, perms)


def random_ball_fixator_element(
    rng: random.Random, params: TreeParams, radius: int, depth: int | None = None
) -> PortraitAut:
    """A random element of the pointwise fixator of B(root, radius)."""
    return random_portrait(
        rng, params, depth=depth or radius + 2, identity_above=radius
    )


def random_step(rng: random.Random, params: TreeParams, max_step: int = 4) -> int:
    if params.homogeneous:
        return rng.randrange(1, max_step + 1)
    return 2 * rng.randrange(1, max_step // 2 + 1)


def random_hyperbolic(
    rng: random.Random, params: TreeParams, max_step: int = 4
) -> Automorphism:
    while True:
        rep = random_end(rng, params)
        att = random_end(rng, params)
        if rep != att:
            return build_translation(params, rep, att, random_step(rng, params, max_step))


def carrier_to_vertex(params: TreeParams, v: Vertex) -> Automorphism:
    """A rigid automorphism taking the root to v (v of even depth on a
    biregular tree)."""
    if v == ROOT:
        return IdentityAut(params)
    return RigidMapAut(params, (ROOT,), (v,))


def random_even_vertex(rng: random.Random, params: TreeParams, max_depth: int) -> Vertex:
    while True:
        v = random_vertex(rng, params, max_depth)
        if params.homogeneous or v.depth % 2 == 0:
            return v


def random_elliptic(
    rng: random.Random, params: TreeParams, max_depth: int = 3
) -> Automorphism:
    v = random_even_vertex(rng, params, max_depth)
    p = random_portrait(rng, params, depth=rng.randrange(1, 4))
    if v == ROOT:
        return p
    c = carrier_to_vertex(params, v)
    return compose_all(params, [c, p, c.invert()])


def random_inversion(rng: random.Random, params: TreeParams, max_depth: int = 3) -> InversionAut:
    v = random_vertex(rng, params, max_depth)
    lab = rng.choice(list(params.descending_labels(v)))
    return InversionAut(params, OrientedEdge(v, params.neighbor(v, lab)))


def random_automorphism(
    rng: random.Random, params: TreeParams, max_word: int = 4
) -> Automorphism:
    """A random word over the atom kinds (inversions only when available)."""
    kinds = ["portrait", "shift", "translation", "elliptic"]
    if params.homogeneous:
        kinds.append("inversion")
    word = []
    for _ in range(rng.randrange(1, max_word + 1)):
        kind = rng.choice(kinds)
        if kind == "portrait":
            word.append(random_portrait(rng, params, depth=rng.randrange(1, 4)))
        elif kind == "shift":
            word.append(SpineShiftAut(params, random_step(rng, params) * rng.choice((1, -1))))
        elif kind == "translation":
            g = random_hyperbolic(rng, params)
            word.append(g if rng.random() < 0.5 else g.invert())
        elif kind == "elliptic":
            word.append(random_elliptic(rng, params))
        else:
            word.append(random_inversion(rng, params))
    return compose_all(params, word) if len(word) > 1 else word[0]


def elliptic_at_vertex(
    rng: random.Random,
    params: TreeParams,
    v: Vertex,
    label_perm: dict[int, int] | None = None,
) -> Automorphism:
    """An elliptic automorphism fixing v whose induced permutation of the
    incident-edge labels at v is label_perm (random when omitted)."""
    if label_perm is None:
        label_perm = _random_perm(rng, params.local_labels(v))
    if v == ROOT:
        return PortraitAut(params, 1, {(): dict(label_perm)})
    c = carrier_to_vertex(params, v)
    beta = {
        a: params.label_of_neighbor(v, c.apply(params.neighbor(ROOT, a)))
        for a in params.local_labels(ROOT)
    }
    beta_inv = {b: a for a, b in beta.items()}
    pi = {a: beta_inv[label_perm[beta[a]]] for a in beta}
    base = PortraitAut(params, 1, {(): pi})
    return compose_all(params, [c, base, c.invert()])


def random_label_perm_preserving(
    rng: random.Random, labels, invariant: frozenset[int]
) -> dict[int, int]:
    """A random permutation of labels mapping the invariant set to itself."""
    inside = sorted(invariant)
    outside = sorted(set(labels) - invariant)
    perm = {}
    images = inside[:]
    rng.shuffle(images)
    perm.update(zip(inside, images))
    images = outside[:]
    rng.shuffle(images)
    perm.update(zip(outside, images))
    return perm


def random_member(
    rng: random.Random, params: TreeParams, spec: SemigroupSpec, max_step: int = 4
) -> Automorphism:
    """A random element of the given maximal semigroup."""
    if isinstance(spec, VertexFixator):
        return elliptic_at_vertex(rng, params, spec.vertex)
    if isinstance(spec, EdgeMidpointFixator):
        u, w = spec.edge.origin, spec.edge.terminus
        lab = params.label_of_neighbor(u, w)
        keep = elliptic_at_vertex(
            rng, params, u,
            random_label_perm_preserving(rng, params.local_labels(u), frozenset([lab])),
        )
        if rng.random() < 0.5:
            return compose(keep, InversionAut(params, spec.edge))
        return keep
    if isinstance(spec, DirectedVertex):
        v, labels = spec.vertex, spec.labels
        if rng.random() < 0.5:
            perm = random_label_perm_preserving(rng, params.local_labels(v), labels)
            return elliptic_at_vertex(rng, params, v, perm)
        arrive = rng.choice(sorted(labels))
        depart = rng.choice(sorted(set(params.local_labels(v)) - labels))
        rep = end_through(params, v, arrive)
        att = end_through(params, v, depart)
        return build_translation(params, rep, att, random_step(rng, params, max_step))
    if isinstance(spec, (EndPlus, EndMinus)):
        end = spec.end
        if rng.random() < 0.5:
            return random_portrait(rng, params, depth=3, fix_ray=end)
        while True:
            other = random_end(rng, params)
            if other != end:
                break
        step = random_step(rng, params, max_step)
        if isinstance(spec, EndPlus):
            return build_translation(params, other, end, step)
        return build_translation(params, end, other, step)
    raise ValueError(f"unknown spec {spec!r}")


def random_spec(
    rng: random.Random, params: TreeParams, kinds: tuple[str, ...] | None = None
) -> SemigroupSpec:
    if kinds is None:
        kinds = ("vertex", "directed", "endPlus", "endMinus") + (
            ("edge",) if params.homogeneous else ()
        )
    kind = rng.choice(list(kinds))
    if kind == "vertex":
        return VertexFixator(random_even_vertex(rng, params, 2))
    if kind == "edge":
        v = random_vertex(rng, params, 2)
        lab = rng.choice(list(params.descending_labels(v)))
        return EdgeMidpointFixator(OrientedEdge(v, params.neighbor(v, lab)))
    if kind == "directed":
        v = random_even_vertex(rng, params, 2)
        all_labels = list(params.local_labels(v))
        size = rng.randrange(1, len(all_labels))
        return DirectedVertex(v, frozenset(rng.sample(all_labels, size)))
    end = random_end(rng, params)
    return EndPlus(end) if kind == "endPlus" else EndMinus(end)


def random_elliptic_fixing_ray(
    rng: random.Random, params: TreeParams, end: End, depth: int = 3
) -> Automorphism:
    return random_portrait(rng, params, depth=depth, fix_ray=end)


def shifted_ray_elliptic(
    rng: random.Random, params: TreeParams, shift: int, depth: int = 2
) -> Automorphism:
    """An elliptic element fixing a ray toward the spine's attracting end
    whose fixed set stays at least `shift` away from the root: a portrait
    fixing the positive spine but moving the whole negative branch,
    conjugated by a spine translation."""
    labels = list(params.descending_labels(ROOT))
    swap = rng.choice([x for x in labels if x not in (0, 1)])
    root_perm = {x: x for x in labels}
    root_perm[0], root_perm[swap] = swap, 0
    perms: dict[tuple[int, ...], dict[int, int]] = {(): root_perm}
    for k in range(1, depth):
        v = Vertex((1,) * k)
        perms[v.address] = _random_perm(rng, params.descending_labels(v), fixed=1)
    p = PortraitAut(params, depth, perms)
    t = SpineShiftAut(params, shift)
    return compose_all(params, [t, p, t.invert()])
