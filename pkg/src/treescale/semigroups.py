"""Maximal scale-multiplicative semigroups and the family classifier.

The four maximal types are the fixator of an inverted edge's midpoint,
the fixator of a vertex, the directed-vertex semigroups G_(v,I) (elliptic
elements fixing v and stabilizing the in-edge set I, hyperbolic elements
translating in through I and out through the complementary out-edges I*),
and the end semigroups G_w+/G_w- of elements fixing an end that is
attracting (resp. repelling) for their hyperbolic members.

``classify_family`` follows the classification proof's decision order on
a finite window: empty intersection of minimal sets -> end case; an edge
inversion -> midpoint fixator; all elliptic -> vertex fixator; otherwise
a directed vertex.  Window exhaustion reports inconclusive rather than
guessing.
"""

from __future__ import annotations

from dataclasses import dataclass

from .automorphism import (
    Automorphism,
    AxisTranslationAut,
    _axis_end_of,
    axis_labels_at,
    build_translation,
    min_set_in_ball,
    motion_profile,
)
from .errors import AddressError, InconclusiveError, InternalConsistencyError
from .scale import scale
from .tree_core import (
    End,
    OrientedEdge,
    TreeParams,
    Vertex,
    distance,
    edge_from_json,
    edge_to_json,
    end_from_json,
    end_to_json,
    vertex_from_json,
    vertex_to_json,
)


@dataclass(frozen=True)
class EdgeMidpointFixator:
    edge: OrientedEdge


@dataclass(frozen=True)
class VertexFixator:
    vertex: Vertex


@dataclass(frozen=True)
class DirectedVertex:
    vertex: Vertex
    labels: frozenset[int]  # in-edge labels I; I* is always derived

    def __init__(self, vertex: Vertex, labels):
        object.__setattr__(self, "vertex", vertex)
        object.__setattr__(self, "labels", frozenset(int(x) for x in labels))


@dataclass(frozen=True)
class EndPlus:
    end: End


@dataclass(frozen=True)
class EndMinus:
    end: End


SemigroupSpec = EdgeMidpointFixator | VertexFixator | DirectedVertex | EndPlus | EndMinus


def validate_spec(params: TreeParams, spec: SemigroupSpec) -> SemigroupSpec:
    if isinstance(spec, EdgeMidpointFixator):
        if not params.homogeneous:
            raise AddressError("a biregular tree has no inverted edges")
        params.validate_edge(spec.edge)
    elif isinstance(spec, VertexFixator):
        params.validate_vertex(spec.vertex)
    elif isinstance(spec, DirectedVertex):
        params.validate_vertex(spec.vertex)
        all_labels = set(params.local_labels(spec.vertex))
        if not spec.labels or not spec.labels < all_labels:
            raise AddressError("I must be a nonempty proper subset of E(v)")
    elif isinstance(spec, (EndPlus, EndMinus)):
        params.validate_end(spec.end)
    else:
        raise AddressError(f"unknown spec {spec!r}")
    return spec


def _label_action(g: Automorphism, v: Vertex) -> dict[int, int]:
    """The permutation induced on the incident-edge labels at a fixed
    vertex v."""
    params = g.params
    return {
        a: params.label_of_neighbor(v, g.apply(params.neighbor(v, a)))
        for a in params.local_labels(v)
    }


def contains(spec: SemigroupSpec, g: Automorphism) -> bool:
    """Exact membership of g in the semigroup described by spec."""
    params = g.params
    validate_spec(params, spec)
    if isinstance(spec, VertexFixator):
        return g.apply(spec.vertex) == spec.vertex
    if isinstance(spec, EdgeMidpointFixator):
        u, w = spec.edge.origin, spec.edge.terminus
        gu, gw = g.apply(u), g.apply(w)
        return (gu, gw) in ((u, w), (w, u))
    m = motion_profile(g)
    if isinstance(spec, DirectedVertex):
        v, labels = spec.vertex, spec.labels
        if m.kind == "inversion":
            return False
        if m.kind == "elliptic":
            if g.apply(v) != v:
                return False
            act = _label_action(g, v)
            return {act[a] for a in labels} == labels
        if distance(v, g.apply(v)) != m.length:
            return False  # v not on the axis
        arrive, depart = axis_labels_at(g, v)
        return arrive in labels and depart not in labels
    if isinstance(spec, EndPlus):
        if m.is_hyperbolic:
            return _axis_end_of(g, m.anchor, m.length) == spec.end
        return g.end_image(spec.end) == spec.end
    if isinstance(spec, EndMinus):
        if m.is_hyperbolic:
            return _axis_end_of(g.invert(), m.anchor, m.length) == spec.end
        return g.end_image(spec.end) == spec.end
    raise AddressError(f"unknown spec {spec!r}")


# ---------------------------------------------------------------------
# multiplicativity
# ---------------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    left: int
    right: int
    product_scale: int
    expected: int

    @property
    def sign(self) -> str:
        return "<" if self.product_scale < self.expected else ">"


@dataclass(frozen=True)
class MultiplicativityReport:
    verdict: bool
    violations: tuple[Violation, ...]

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "violations": [
                {
                    "left": v.left,
                    "right": v.right,
                    "productScale": str(v.product_scale),
                    "expected": str(v.expected),
                    "sign": v.sign,
                }
                for v in self.violations
            ],
        }


def pairwise_multiplicative(family: list[Automorphism]) -> MultiplicativityReport:
    """Check s(gh) = s(g)s(h) over all ordered pairs, squares included."""
    from .automorphism import compose

    scales = [scale(g) for g in family]
    violations = []
    for i, g in enumerate(family):
        for j, h in enumerate(family):
            got = scale(compose(g, h))
            expected = scales[i] * scales[j]
            if got != expected:
                violations.append(Violation(i, j, got, expected))
    return MultiplicativityReport(not violations, tuple(violations))


# ---------------------------------------------------------------------
# the family classifier
# ---------------------------------------------------------------------


def classify_family(
    family: list[Automorphism], window_radius: int = 5
) -> SemigroupSpec | MultiplicativityReport:
    """Classify a finite multiplicative family into a containing maximal
    semigroup, following the proof order of the classification theorem.

    Returns the rejection report when the family is not multiplicative;
    raises InconclusiveError when the window is exhausted undecided.
    """
    if not family:
        raise AddressError("empty family")
    report = pairwise_multiplicative(family)
    if not report.verdict:
        return report
    params = family[0].params
    motions = [motion_profile(g) for g in family]
    windows = [min_set_in_ball(g, window_radius) for g in family]
    common_v = frozenset.intersection(*(w.vertices for w in windows))
    common_m = frozenset.intersection(*(w.midpoints for w in windows))

    if not common_v and not common_m:
        return _classify_end_case(family, motions, window_radius)

    for g, m in zip(family, motions):
        if m.kind == "inversion":
            edge = m.edge
            others = EdgeMidpointFixator(edge)
            if all(contains(others, h) for h in family):
                return others
            raise InconclusiveError(
                "inversion present but its edge is not family-invariant",
                radius=window_radius,
            )

    if all(m.kind == "elliptic" for m in motions):
        if not common_v:
            raise InternalConsistencyError(
                "elliptic family with midpoint-only intersection"
            )
        v = min(common_v, key=Vertex.sort_key)
        return VertexFixator(v)

    for v in sorted(common_v, key=Vertex.sort_key):
        spec = _directed_vertex_at(params, family, motions, v)
        if spec is not None:
            return spec
    raise InconclusiveError(
        "no common vertex supports a directed-vertex semigroup",
        radius=window_radius,
    )


def _directed_vertex_at(params, family, motions, v) -> DirectedVertex | None:
    arrivals: set[int] = set()
    departures: set[int] = set()
    for g, m in zip(family, motions):
        if m.is_hyperbolic:
            if distance(v, g.apply(v)) != m.length:
                return None
            a, d = axis_labels_at(g, v)
            arrivals.add(a)
            departures.add(d)
    if not arrivals:
        return None
    # Orbit-close the arrival set under the elliptic members so they
    # stabilize it; the ambient semigroup forces this closure.
    actions = [
        _label_action(g, v)
        for g, m in zip(family, motions)
        if m.kind == "elliptic"
    ]
    if any(g.apply(v) != v for g, m in zip(family, motions) if m.kind == "elliptic"):
        return None
    labels = set(arrivals)
    grew = True
    while grew:
        grew = False
        for act in actions:
            extra = {act[a] for a in labels} - labels
            if extra:
                labels |= extra
                grew = True
    if labels & departures or len(labels) >= len(list(params.local_labels(v))):
        return None
    spec = DirectedVertex(v, labels)
    if all(contains(spec, g) for g in family):
        return spec
    return None


def _classify_end_case(family, motions, window_radius):
    hyper = [
        (g, m) for g, m in zip(family, motions) if m.is_hyperbolic
    ]
    if not hyper:
        raise InconclusiveError(
            "no common minimal point in the window and no hyperbolic member "
            "to name a candidate end",
            radius=window_radius,
        )
    g0, m0 = hyper[0]
    att = _axis_end_of(g0, m0.anchor, m0.length)
    rep = _axis_end_of(g0.invert(), m0.anchor, m0.length)
    for end, make in ((att, EndPlus), (rep, EndMinus)):
        spec = make(end)
        if all(contains(spec, g) for g in family):
            return spec
    raise InconclusiveError(
        "window intersection empty but no shared end verified",
        radius=window_radius,
    )


def classify_family_all(
    family: list[Automorphism], window_radius: int = 5
) -> list[SemigroupSpec]:
    """Companion mode: every containing spec found within the window (a
    multiplicative family may lie in several maximal semigroups)."""
    report = pairwise_multiplicative(family)
    if not report.verdict:
        return []
    params = family[0].params
    motions = [motion_profile(g) for g in family]
    windows = [min_set_in_ball(g, window_radius) for g in family]
    common_v = frozenset.intersection(*(w.vertices for w in windows))
    common_m = frozenset.intersection(*(w.midpoints for w in windows))
    found: list[SemigroupSpec] = []

    def consider(cand: SemigroupSpec):
        if cand not in found and all(contains(cand, g) for g in family):
            found.append(cand)

    for v in sorted(common_v, key=Vertex.sort_key):
        consider(VertexFixator(v))
        spec = _directed_vertex_at(params, family, motions, v)
        if spec is not None and spec not in found:
            found.append(spec)
    if params.homogeneous:
        for key in sorted(common_m, key=sorted):
            a, b = sorted(key)
            consider(EdgeMidpointFixator(OrientedEdge(Vertex(a), Vertex(b))))
    for g, m in zip(family, motions):
        if m.is_hyperbolic:
            att = _axis_end_of(g, m.anchor, m.length)
            rep = _axis_end_of(g.invert(), m.anchor, m.length)
            consider(EndPlus(att))
            consider(EndMinus(rep))
            break
    return found


# ---------------------------------------------------------------------
# involution and intersections
# ---------------------------------------------------------------------


def invert_spec(params: TreeParams, spec: SemigroupSpec) -> SemigroupSpec:
    """Image of the semigroup under the inverse involution."""
    validate_spec(params, spec)
    if isinstance(spec, EndPlus):
        return EndMinus(spec.end)
    if isinstance(spec, EndMinus):
        return EndPlus(spec.end)
    if isinstance(spec, DirectedVertex):
        complement = frozenset(params.local_labels(spec.vertex)) - spec.labels
        return DirectedVertex(spec.vertex, complement)
    return spec


def end_through(params: TreeParams, v: Vertex, label: int) -> End:
    """A canonical eventually periodic end whose ray from v departs along
    the given local label."""
    n = params.neighbor(v, label)
    if n.depth > v.depth:
        return End(n.address, (1,))
    c = min(x for x in params.descending_labels(n) if x != v.address[-1])
    return End(n.address + (c,), (1,))


def u_basis_contains(params: TreeParams, v: Vertex, labels, w: End) -> bool:
    """Whether the end w lies in the basic open set U_(v,I): the ray
    [v, w) must depart through an out-edge of I*."""
    spec = validate_spec(params, DirectedVertex(v, labels))
    dep = params.departure_edge(v, w)
    return params.label_of_neighbor(v, dep.terminus) not in spec.labels


def intersection_hyperbolic_witness(
    params: TreeParams, a: SemigroupSpec, b: SemigroupSpec
) -> Automorphism | None:
    """A hyperbolic automorphism in both semigroups, or None when the
    intersection provably contains no hyperbolic element."""
    validate_spec(params, a)
    validate_spec(params, b)
    if isinstance(a, (VertexFixator, EdgeMidpointFixator)) or isinstance(
        b, (VertexFixator, EdgeMidpointFixator)
    ):
        return None  # fixators contain no hyperbolic elements
    if isinstance(b, DirectedVertex) and not isinstance(a, DirectedVertex):
        a, b = b, a
    if isinstance(b, EndPlus) and isinstance(a, EndMinus):
        a, b = b, a

    witness: Automorphism | None = None
    if isinstance(a, EndPlus) and isinstance(b, EndPlus):
        if a.end == b.end:
            witness = build_translation(params, _other_end(params, a.end), a.end, 2)
    elif isinstance(a, EndMinus) and isinstance(b, EndMinus):
        if a.end == b.end:
            witness = build_translation(params, a.end, _other_end(params, a.end), 2)
    elif isinstance(a, EndPlus) and isinstance(b, EndMinus):
        if a.end != b.end:
            witness = build_translation(params, b.end, a.end, 2)
    elif isinstance(a, DirectedVertex):
        witness = _directed_witness(params, a, b)
    if witness is not None and not (contains(a, witness) and contains(b, witness)):
        raise InternalConsistencyError("constructed witness fails membership")
    return witness


def _other_end(params: TreeParams, w: End) -> End:
    label = min(x for x in params.descending_labels(Vertex()) if x != w.letter(0))
    return End((label,), (1,))


def _directed_witness(params, a: DirectedVertex, b) -> Automorphism | None:
    v, labels = a.vertex, a.labels
    out_labels = sorted(set(params.local_labels(v)) - labels)
    if isinstance(b, EndPlus):
        dep = params.label_of_neighbor(v, params.departure_edge(v, b.end).terminus)
        if dep in labels:
            return None
        rep = end_through(params, v, min(labels))
        return build_translation(params, rep, b.end, 2)
    if isinstance(b, EndMinus):
        dep = params.label_of_neighbor(v, params.departure_edge(v, b.end).terminus)
        if dep not in labels:
            return None
        att = end_through(params, v, min(x for x in out_labels))
        return build_translation(params, b.end, att, 2)
    if isinstance(b, DirectedVertex):
        w, jlabels = b.vertex, b.labels
        if v == w:
            shared_in = sorted(labels & jlabels)
            shared_out = sorted(
                set(params.local_labels(v)) - labels - jlabels
            )
            if not shared_in or not shared_out:
                return None
            rep = end_through(params, v, shared_in[0])
            att = end_through(params, v, shared_out[0])
            return build_translation(params, rep, att, 2)
        tv = params.label_of_neighbor(v, params.path_between(v, w)[1])
        tw = params.label_of_neighbor(w, params.path_between(w, v)[1])
        jout = sorted(set(params.local_labels(w)) - jlabels)
        if tv not in labels and tw in jlabels:
            rep = end_through(params, v, min(labels))
            att = end_through(params, w, min(x for x in jout if x != tw))
            return build_translation(params, rep, att, 2)
        if tw not in jlabels and tv in labels:
            rep = end_through(params, w, min(jlabels))
            att = end_through(params, v, min(x for x in sorted(set(params.local_labels(v)) - labels) if x != tv))
            return build_translation(params, rep, att, 2)
        return None
    raise AddressError(f"unsupported pair {a!r}, {b!r}")


# ---------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------


def spec_to_json(spec: SemigroupSpec) -> dict:
    if isinstance(spec, EdgeMidpointFixator):
        return {"type": "edgeMidpointFixator", "edge": edge_to_json(spec.edge)}
    if isinstance(spec, VertexFixator):
        return {"type": "vertexFixator", "vertex": vertex_to_json(spec.vertex)}
    if isinstance(spec, DirectedVertex):
        return {
            "type": "directedVertex",
            "vertex": vertex_to_json(spec.vertex),
            "labels": sorted(spec.labels),
        }
    if isinstance(spec, EndPlus):
        return {"type": "endPlus", "end": end_to_json(spec.end)}
    if isinstance(spec, EndMinus):
        return {"type": "endMinus", "end": end_to_json(spec.end)}
    raise AddressError(f"unknown spec {spec!r}")


def spec_from_json(data: dict) -> SemigroupSpec:
    tag = data["type"]
    if tag == "edgeMidpointFixator":
        return EdgeMidpointFixator(edge_from_json(data["edge"]))
    if tag == "vertexFixator":
        return VertexFixator(vertex_from_json(data["vertex"]))
    if tag == "directedVertex":
        return DirectedVertex(vertex_from_json(data["vertex"]), data["labels"])
    if tag == "endPlus":
        return EndPlus(end_from_json(data["end"]))
    if tag == "endMinus":
        return EndMinus(end_from_json(data["end"]))
    raise AddressError(f"unknown spec tag {tag!r}")
