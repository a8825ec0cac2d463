"""Finite, exactly evaluable representations of tree automorphisms.

Every automorphism here is *eventually rigid*: outside a computable finite
active region it copies address letters verbatim, so the image of any
vertex and of any eventually periodic end is exactly computable.  The
atoms are

* ``IdentityAut``
* ``PortraitAut`` -- root-fixing, local label permutations down to a
  stored support depth, identity continuation beyond;
* ``AxisTranslationAut`` -- translation along the geodesic between two
  eventually periodic ends, rigid off the axis (``SpineShiftAut`` is the
  special case of the standard spine through the root);
* ``RigidMapAut`` -- the rigid automorphism carrying one finite geodesic
  onto another (``InversionAut`` is the special case swapping the two
  vertices of an edge);
* ``CompositeAut`` -- a word of atoms.

Rigid extension works by carrying a label bijection along the walk from
the active region to the target vertex: at each step the forced labels
(edges whose images are already determined) map as forced, every other
label maps to itself where possible, and the leftovers are matched in
sorted order.  The same rule applied to the reversed data yields the
inverse map, so every atom has a concrete inverse atom.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import (
    AddressError,
    DegenerateAxisError,
    InternalConsistencyError,
    NotHyperbolicError,
    RepresentationError,
)
from .tree_core import (
    ROOT,
    Address,
    End,
    OrientedEdge,
    Segment,
    SPINE_NEG,
    SPINE_POS,
    TreeParams,
    Vertex,
    distance,
    edge_from_json,
    edge_to_json,
    end_from_json,
    end_to_json,
    lcp_len_end_vertex,
    lcp_len_ends,
    path_between,
    vertex_from_json,
    vertex_to_json,
)


def _fixup(labels: Iterable[int], forced: Mapping[int, int]) -> dict[int, int]:
    """Total label bijection extending `forced`: identity wherever
    possible, leftovers matched in sorted order."""
    labels = list(labels)
    out = dict(forced)
    used = set(forced.values())
    free_tgt = {b for b in labels if b not in used}
    leftover_src = []
    for a in labels:
        if a in out:
            continue
        if a in free_tgt:
            out[a] = a
            free_tgt.remove(a)
        else:
            leftover_src.append(a)
    for a, b in zip(sorted(leftover_src), sorted(free_tgt)):
        out[a] = b
    return out


def _walk_image(
    params: TreeParams,
    src_anchor: Vertex,
    dst_anchor: Vertex,
    forced: Mapping[int, int],
    target: Vertex,
) -> Vertex:
    """Image of `target` under the rigid extension of src_anchor ->
    dst_anchor with the given forced label pairs at the anchor."""
    cur_s, cur_d = src_anchor, dst_anchor
    beta = _fixup(params.local_labels(cur_s), forced)
    for nxt in path_between(src_anchor, target)[1:]:
        lab = params.label_of_neighbor(cur_s, nxt)
        nxt_d = params.neighbor(cur_d, beta[lab])
        back_s = params.label_of_neighbor(nxt, cur_s)
        back_d = params.label_of_neighbor(nxt_d, cur_d)
        beta = _fixup(params.local_labels(nxt), {back_s: back_d})
        cur_s, cur_d = nxt, nxt_d
    return cur_d


class Automorphism:
    """Common interface of all representations."""

    params: TreeParams

    def apply(self, v: Vertex) -> Vertex:
        raise NotImplementedError

    def invert(self) -> "Automorphism":
        raise NotImplementedError

    def end_image(self, w: End) -> End:
        raise NotImplementedError

    def rigid_bound(self) -> int:
        """A depth beyond which this map's active region certainly ends.
        Used only to size search windows; soundness never depends on it."""
        raise NotImplementedError

    def word(self) -> tuple["Automorphism", ...]:
        return (self,)

    def to_json(self) -> dict:
        raise NotImplementedError

    def __call__(self, v: Vertex) -> Vertex:
        return self.apply(v)


def _generic_end_image(g: Automorphism, w: End, n0: int) -> End:
    """Image of an end, given a sound off-structure index n0: for every
    n >= n0 the walk from the active region to the ray vertex r_{n+1}
    extends the walk to r_n by one descending step.  The first verbatim
    increment is detected, after which all increments copy letters; the
    image address is then the image prefix followed by the same period."""
    period = w.period
    length = len(period)
    start = max(n0, len(w.prefix))
    y = g.apply(w.ray_vertex(start))
    n = start
    limit = start + y.depth + length + 8
    while n < limit:
        y_next = g.apply(w.ray_vertex(n + 1))
        if y_next.address == y.address + (w.letter(n),):
            k = n + ((len(w.prefix) - n) % length)
            if k < n:
                k += length
            return End(g.apply(w.ray_vertex(k)).address, period)
        y = y_next
        n += 1
    raise InternalConsistencyError(
        f"no rigid increment found for {g!r} on {w!r} within depth {limit}"
    )


# ---------------------------------------------------------------------
# atoms
# ---------------------------------------------------------------------


@dataclass(frozen=True)
class IdentityAut(Automorphism):
    params: TreeParams

    def apply(self, v: Vertex) -> Vertex:
        return self.params.validate_vertex(v)

    def invert(self) -> "IdentityAut":
        return self

    def end_image(self, w: End) -> End:
        return w

    def rigid_bound(self) -> int:
        return 0

    def word(self) -> tuple[Automorphism, ...]:
        return ()

    def to_json(self) -> dict:
        return {"type": "identity"}


class PortraitAut(Automorphism):
    """Root-fixing automorphism given by local permutations of descending
    labels at every vertex of depth < depth; identity beyond."""

    def __init__(
        self,
        params: TreeParams,
        depth: int,
        perms: Mapping[Address, Mapping[int, int]],
    ):
        if depth < 0:
            raise RepresentationError("support depth must be >= 0")
        self.params = params
        self.depth = depth
        table: dict[Address, tuple[tuple[int, int], ...]] = {}
        for addr, perm in perms.items():
            v = params.validate_vertex(Vertex(addr))
            if v.depth >= depth:
                raise RepresentationError(
                    f"permutation at {v!r} lies at or below the support depth"
                )
            labels = list(params.descending_labels(v))
            if sorted(perm.keys()) != labels or sorted(perm.values()) != labels:
                raise RepresentationError(f"not a descending-label bijection at {v!r}")
            items = tuple(sorted((int(a), int(b)) for a, b in perm.items()))
            if any(a != b for a, b in items):
                table[v.address] = items
        self._table = table

    def _perm(self, addr: Address) -> dict[int, int] | None:
        items = self._table.get(addr)
        return dict(items) if items is not None else None

    def apply(self, v: Vertex) -> Vertex:
        self.params.validate_vertex(v)
        out = []
        for i, c in enumerate(v.address):
            perm = self._perm(v.address[:i])
            out.append(perm[c] if perm else c)
        return Vertex(tuple(out))

    def invert(self) -> "PortraitAut":
        inv: dict[Address, dict[int, int]] = {}
        for addr, items in self._table.items():
            img = self.apply(Vertex(addr))
            inv[img.address] = {b: a for a, b in items}
        return PortraitAut(self.params, self.depth, inv)

    def end_image(self, w: End) -> End:
        return _generic_end_image(self, w, self.depth)

    def rigid_bound(self) -> int:
        return self.depth

    def to_json(self) -> dict:
        return {
            "type": "portrait",
            "depth": self.depth,
            "perms": [
                {"vertex": list(addr), "perm": [[a, b] for a, b in items]}
                for addr, items in sorted(self._table.items())
            ],
        }

    def __eq__(self, other):
        return (
            isinstance(other, PortraitAut)
            and self.params == other.params
            and self.depth == other.depth
            and self._table == other._table
        )

    def __hash__(self):
        return hash((self.params, self.depth, tuple(sorted(self._table.items()))))

    def __repr__(self):
        return f"PortraitAut(depth={self.depth}, support={len(self._table)})"


class AxisTranslationAut(Automorphism):
    """Translation by `step` along the geodesic from `repelling` to
    `attracting`, rigid off the axis.  Positive steps move toward the
    attracting end."""

    def __init__(self, params: TreeParams, repelling: End, attracting: End, step: int):
        if repelling == attracting:
            raise DegenerateAxisError("translation axis needs two distinct ends")
        if step == 0:
            raise RepresentationError("translation step must be nonzero")
        if step % 2 != 0 and not params.homogeneous:
            raise RepresentationError(
                "odd translation steps do not preserve the bipartition"
            )
        params.validate_end(repelling)
        params.validate_end(attracting)
        self.params = params
        self.repelling = repelling
        self.attracting = attracting
        self.step = step
        self._summit_depth = lcp_len_ends(repelling, attracting)

    def _axis_vertex(self, t: int) -> Vertex:
        d = self._summit_depth
        if t >= 0:
            return Vertex(tuple(self.attracting.letter(i) for i in range(d + t)))
        return Vertex(tuple(self.repelling.letter(i) for i in range(d - t)))

    def _project(self, v: Vertex) -> int:
        d = self._summit_depth
        na = lcp_len_end_vertex(self.repelling, v)
        nb = lcp_len_end_vertex(self.attracting, v)
        if na > d and na >= nb:
            return -(na - d)
        if nb > d:
            return nb - d
        return 0

    def apply(self, v: Vertex) -> Vertex:
        self.params.validate_vertex(v)
        t = self._project(v)
        src = self._axis_vertex(t)
        dst = self._axis_vertex(t + self.step)
        forced = {}
        for delta in (-1, 1):
            ls = self.params.label_of_neighbor(src, self._axis_vertex(t + delta))
            ld = self.params.label_of_neighbor(
                dst, self._axis_vertex(t + self.step + delta)
            )
            forced[ls] = ld
        return _walk_image(self.params, src, dst, forced, v)

    def invert(self) -> "AxisTranslationAut":
        return type(self)._inverted(self)

    @staticmethod
    def _inverted(a: "AxisTranslationAut") -> "AxisTranslationAut":
        if isinstance(a, SpineShiftAut):
            return SpineShiftAut(a.params, -a.step)
        return AxisTranslationAut(a.params, a.repelling, a.attracting, -a.step)

    def end_image(self, w: End) -> End:
        if w == self.repelling or w == self.attracting:
            return w
        n0 = max(
            self._summit_depth,
            lcp_len_ends(self.repelling, w),
            lcp_len_ends(self.attracting, w),
        ) + 1
        return _generic_end_image(self, w, n0)

    def rigid_bound(self) -> int:
        ends = (self.repelling, self.attracting)
        return (
            self._summit_depth
            + sum(len(e.prefix) + len(e.period) for e in ends)
            + abs(self.step)
            + 4
        )

    def to_json(self) -> dict:
        return {
            "type": "axisTranslation",
            "repelling": end_to_json(self.repelling),
            "attracting": end_to_json(self.attracting),
            "step": self.step,
        }

    def __eq__(self, other):
        return (
            isinstance(other, AxisTranslationAut)
            and self.params == other.params
            and self.repelling == other.repelling
            and self.attracting == other.attracting
            and self.step == other.step
        )

    def __hash__(self):
        return hash((self.params, self.repelling, self.attracting, self.step))

    def __repr__(self):
        return (
            f"AxisTranslationAut({self.repelling!r} -> {self.attracting!r}, "
            f"step={self.step})"
        )


class SpineShiftAut(AxisTranslationAut):
    """Translation by m along the standard spine through the root."""

    def __init__(self, params: TreeParams, shift: int):
        super().__init__(params, SPINE_NEG, SPINE_POS, shift)

    def to_json(self) -> dict:
        return {"type": "spineShift", "shift": self.step}

    def __repr__(self):
        return f"SpineShiftAut({self.step})"


class RigidMapAut(Automorphism):
    """The rigid automorphism carrying src_path onto dst_path vertex by
    vertex.  Paths must be geodesics of equal length; on a biregular tree
    corresponding vertices must share parity."""

    def __init__(
        self,
        params: TreeParams,
        src_path: Sequence[Vertex],
        dst_path: Sequence[Vertex],
    ):
        src = Segment(tuple(src_path))
        dst = Segment(tuple(dst_path))
        if len(src) != len(dst):
            raise RepresentationError("path lengths differ")
        for v in itertools.chain(src, dst):
            params.validate_vertex(v)
        if not params.homogeneous:
            for a, b in zip(src, dst):
                if a.parity != b.parity:
                    raise RepresentationError(
                        f"parity mismatch {a!r} -> {b!r} on a biregular tree"
                    )
        self.params = params
        self.src_path = src
        self.dst_path = dst

    def apply(self, v: Vertex) -> Vertex:
        self.params.validate_vertex(v)
        j = min(
            range(len(self.src_path)),
            key=lambda i: distance(v, self.src_path[i]),
        )
        forced = {}
        for delta in (-1, 1):
            if 0 <= j + delta < len(self.src_path):
                ls = self.params.label_of_neighbor(
                    self.src_path[j], self.src_path[j + delta]
                )
                ld = self.params.label_of_neighbor(
                    self.dst_path[j], self.dst_path[j + delta]
                )
                forced[ls] = ld
        return _walk_image(self.params, self.src_path[j], self.dst_path[j], forced, v)

    def invert(self) -> "RigidMapAut":
        return RigidMapAut(self.params, self.dst_path.vertices, self.src_path.vertices)

    def end_image(self, w: End) -> End:
        n0 = max(v.depth for v in self.src_path) + 1
        return _generic_end_image(self, w, n0)

    def rigid_bound(self) -> int:
        return (
            max(v.depth for v in itertools.chain(self.src_path, self.dst_path)) + 2
        )

    def to_json(self) -> dict:
        return {
            "type": "rigidMap",
            "src": [vertex_to_json(v) for v in self.src_path],
            "dst": [vertex_to_json(v) for v in self.dst_path],
        }

    def __eq__(self, other):
        return (
            isinstance(other, RigidMapAut)
            and self.params == other.params
            and self.src_path == other.src_path
            and self.dst_path == other.dst_path
        )

    def __hash__(self):
        return hash((self.params, self.src_path.vertices, self.dst_path.vertices))

    def __repr__(self):
        return f"RigidMapAut({self.src_path.vertices} -> {self.dst_path.vertices})"


class InversionAut(Automorphism):
    """Inversion of a single edge; only homogeneous trees admit one."""

    def __init__(self, params: TreeParams, edge: OrientedEdge):
        if not params.homogeneous:
            raise RepresentationError("a biregular tree admits no edge inversions")
        params.validate_edge(edge)
        self.params = params
        self.edge = edge
        self._rm = RigidMapAut(
            params, (edge.origin, edge.terminus), (edge.terminus, edge.origin)
        )

    def apply(self, v: Vertex) -> Vertex:
        return self._rm.apply(v)

    def invert(self) -> "InversionAut":
        return self

    def end_image(self, w: End) -> End:
        return self._rm.end_image(w)

    def rigid_bound(self) -> int:
        return self._rm.rigid_bound()

    def to_json(self) -> dict:
        return {"type": "inversion", "edge": edge_to_json(self.edge)}

    def __eq__(self, other):
        return (
            isinstance(other, InversionAut)
            and self.params == other.params
            and self.edge == other.edge
        )

    def __hash__(self):
        return hash((self.params, self.edge))

    def __repr__(self):
        return f"InversionAut({self.edge!r})"


class CompositeAut(Automorphism):
    """A word of atoms; word[0] is applied last."""

    def __init__(self, params: TreeParams, word: Sequence[Automorphism]):
        flat: list[Automorphism] = []
        for g in word:
            if g.params != params:
                raise RepresentationError("mixed tree parameters in a word")
            flat.extend(g.word())
        self.params = params
        self._word = tuple(flat)

    def word(self) -> tuple[Automorphism, ...]:
        return self._word

    def apply(self, v: Vertex) -> Vertex:
        for g in reversed(self._word):
            v = g.apply(v)
        return self.params.validate_vertex(v)

    def invert(self) -> "CompositeAut":
        return CompositeAut(self.params, tuple(g.invert() for g in reversed(self._word)))

    def end_image(self, w: End) -> End:
        for g in reversed(self._word):
            w = g.end_image(w)
        return w

    def rigid_bound(self) -> int:
        return sum(g.rigid_bound() for g in self._word) + 2

    def to_json(self) -> dict:
        return {"type": "composite", "word": [g.to_json() for g in self._word]}

    def __eq__(self, other):
        return (
            isinstance(other, CompositeAut)
            and self.params == other.params
            and self._word == other._word
        )

    def __hash__(self):
        return hash((self.params, self._word))

    def __repr__(self):
        return f"CompositeAut(len={len(self._word)})"


# ---------------------------------------------------------------------
# constructors and word operations
# ---------------------------------------------------------------------


def identity(params: TreeParams) -> IdentityAut:
    return IdentityAut(params)


def portrait(params: TreeParams, depth: int, perms: Mapping) -> PortraitAut:
    return PortraitAut(params, depth, {tuple(k): dict(v) for k, v in perms.items()})


def spine_shift(params: TreeParams, shift: int) -> SpineShiftAut:
    return SpineShiftAut(params, shift)


def inversion(params: TreeParams, edge: OrientedEdge) -> InversionAut:
    return InversionAut(params, edge)


def rigid_map(params: TreeParams, src: Sequence[Vertex], dst: Sequence[Vertex]) -> RigidMapAut:
    return RigidMapAut(params, src, dst)


def compose(g: Automorphism, h: Automorphism) -> Automorphism:
    """Function composition: apply(compose(g, h), v) == apply(g, apply(h, v))."""
    if g.params != h.params:
        raise RepresentationError("cannot compose over different tree parameters")
    word = g.word() + h.word()
    if not word:
        return IdentityAut(g.params)
    if len(word) == 1:
        return word[0]
    return CompositeAut(g.params, word)


def compose_all(params: TreeParams, word: Sequence[Automorphism]) -> Automorphism:
    out: Automorphism = IdentityAut(params)
    for g in word:
        out = compose(out, g)
    return out


def invert(g: Automorphism) -> Automorphism:
    return g.invert()


def apply(g: Automorphism, v: Vertex) -> Vertex:
    return g.apply(v)


def power(g: Automorphism, n: int) -> Automorphism:
    if n == 0:
        return IdentityAut(g.params)
    base = g if n > 0 else g.invert()
    return compose_all(g.params, [base] * abs(n))


def equal_on_ball(g: Automorphism, h: Automorphism, radius: int) -> bool:
    return all(g.apply(v) == h.apply(v) for v in g.params.ball(radius))


def build_translation(params: TreeParams, w1: End, w2: End, step: int) -> Automorphism:
    """A hyperbolic automorphism with repelling end w1, attracting end w2
    and translation length `step`."""
    if step < 1:
        raise RepresentationError("translation step must be >= 1")
    return AxisTranslationAut(params, w1, w2, step)


# ---------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------


@dataclass(frozen=True)
class Elliptic:
    fixed_vertex: Vertex


@dataclass(frozen=True)
class Inversion:
    edge: OrientedEdge


@dataclass(frozen=True)
class Hyperbolic:
    length: int
    axis_anchor: Vertex
    attracting: End
    repelling: End


AutType = Elliptic | Inversion | Hyperbolic


@dataclass(frozen=True)
class Motion:
    """Cheap classification: kind, translation length, and a witness
    point (fixed vertex / inverted edge / axis anchor)."""

    kind: str  # "elliptic" | "inversion" | "hyperbolic"
    length: int
    anchor: Vertex | None = None
    edge: OrientedEdge | None = None

    @property
    def is_hyperbolic(self) -> bool:
        return self.kind == "hyperbolic"


def motion_profile(g: Automorphism) -> Motion:
    """Classify by comparing d(v, g.v) with d(v, g^2.v) at the root:
    strictly larger means hyperbolic with the difference as translation
    length; otherwise the midpoint (even case) must be fixed or the middle
    edge (odd case) must be swapped."""
    v = ROOT
    gv = g.apply(v)
    d1 = distance(v, gv)
    if d1 == 0:
        return Motion("elliptic", 0, anchor=v)
    ggv = g.apply(gv)
    d2 = distance(v, ggv)
    if d2 > d1:
        length = d2 - d1
        if (d1 - length) % 2 != 0:
            raise InternalConsistencyError("odd axis-distance excess")
        anchor = path_between(v, gv)[(d1 - length) // 2]
        return Motion("hyperbolic", length, anchor=anchor)
    path = path_between(v, gv)
    if d1 % 2 == 0:
        mid = path[d1 // 2]
        if g.apply(mid) != mid:
            raise InternalConsistencyError(
                f"displacement profile promised a fixed midpoint at {mid!r}"
            )
        return Motion("elliptic", 0, anchor=mid)
    a, b = path[(d1 - 1) // 2], path[(d1 + 1) // 2]
    if not (g.apply(a) == b and g.apply(b) == a):
        raise InternalConsistencyError(
            f"displacement profile promised an inverted edge {a!r}-{b!r}"
        )
    edge = OrientedEdge(a, b) if a.sort_key() < b.sort_key() else OrientedEdge(b, a)
    return Motion("inversion", 0, edge=edge)


def translation_length(g: Automorphism) -> int:
    return motion_profile(g).length


def _axis_end_of(g: Automorphism, anchor: Vertex, length: int) -> End:
    """The attracting end of hyperbolic g, by marching the axis until the
    appended letters become periodic and certifying the candidate exactly
    (the end must be g-fixed and its ray from the anchor must pass through
    g.anchor)."""
    params = g.params
    window = g.rigid_bound() + anchor.depth + 8 * (length + 4)
    for _ in range(4):
        verts = [anchor]
        cur = anchor
        while len(verts) < window + 2:
            nxt = g.apply(cur)
            verts.extend(path_between(cur, nxt)[1:])
            cur = nxt
        start = 0
        for i in range(len(verts) - 1):
            if verts[i + 1].depth != verts[i].depth + 1:
                start = i + 1
        letters = [w.address[-1] for w in verts[start + 1 :]]
        for plen in range(1, max(2, len(letters) // 3)):
            bad = [
                i for i in range(len(letters) - plen) if letters[i] != letters[i + plen]
            ]
            offset = max(bad) + 1 if bad else 0
            if offset + 3 * plen > len(letters):
                continue
            cand = End(
                verts[start + offset].address, tuple(letters[offset : offset + plen])
            )
            if g.end_image(cand) == cand and _ray_passes(
                params, anchor, cand, length, g.apply(anchor)
            ):
                return cand
        window *= 2
    raise InternalConsistencyError(f"axis end extraction failed for {g!r}")


def _ray_passes(
    params: TreeParams, start: Vertex, w: End, steps: int, expected: Vertex
) -> bool:
    ray = params.ray_to_end(start, w)
    vert = next(ray)
    for _ in range(steps):
        vert = next(ray)
    return vert == expected


def classify(g: Automorphism) -> AutType:
    """Full classification including axis data for hyperbolic elements."""
    m = motion_profile(g)
    if m.kind == "elliptic":
        return Elliptic(m.anchor)
    if m.kind == "inversion":
        return Inversion(m.edge)
    attracting = _axis_end_of(g, m.anchor, m.length)
    repelling = _axis_end_of(g.invert(), m.anchor, m.length)
    if attracting == repelling:
        raise InternalConsistencyError("axis ends coincide")
    return Hyperbolic(m.length, m.anchor, attracting, repelling)


def axis_window(g: Automorphism, n: int) -> Segment:
    """Axis vertices from g^-n(anchor) to g^n(anchor)."""
    if n < 1:
        raise NotHyperbolicError("window size must be >= 1")
    m = motion_profile(g)
    if not m.is_hyperbolic:
        raise NotHyperbolicError("axis_window needs a hyperbolic automorphism")
    fwd = bwd = m.anchor
    ginv = g.invert()
    for _ in range(n):
        fwd = g.apply(fwd)
        bwd = ginv.apply(bwd)
    return path_between(bwd, fwd)


def translates_along(g: Automorphism, e: OrientedEdge) -> bool:
    """True when g is hyperbolic and translates along the oriented edge e:
    the image edge is coherent with e, differs from it, and the crossed
    distance condition d(o(e), g.t(e)) = d(t(e), g.o(e)) + 2 holds."""
    if not motion_profile(g).is_hyperbolic:
        raise NotHyperbolicError("translates_along needs a hyperbolic automorphism")
    params = g.params
    ge = OrientedEdge(g.apply(e.origin), g.apply(e.terminus))
    if ge == e or not params.coherent(e, ge):
        return False
    return distance(e.origin, ge.terminus) == distance(e.terminus, ge.origin) + 2


def axis_labels_at(g: Automorphism, v: Vertex) -> tuple[int, int]:
    """For hyperbolic g with v on its axis: the local labels at v of the
    arriving (from g^-1.v) and departing (toward g.v) axis edges."""
    params = g.params
    arrive = path_between(v, g.invert().apply(v))[1]
    depart = path_between(v, g.apply(v))[1]
    return params.label_of_neighbor(v, arrive), params.label_of_neighbor(v, depart)


# ---------------------------------------------------------------------
# minimal sets
# ---------------------------------------------------------------------


@dataclass(frozen=True)
class MinSetWindow:
    """min(g) intersected with a ball: vertices moved exactly the
    translation length, plus midpoints of contained edges (the inverted
    edge's midpoint is the entire minimal set of an edge inversion)."""

    vertices: frozenset[Vertex]
    midpoints: frozenset[frozenset[Address]]
    radius: int
    length: int

    def intersects(self, other: "MinSetWindow") -> bool:
        return bool(self.vertices & other.vertices) or bool(
            self.midpoints & other.midpoints
        )


def min_set_in_ball(g: Automorphism, radius: int) -> MinSetWindow:
    if radius < 0:
        raise AddressError("radius must be >= 0")
    params = g.params
    m = motion_profile(g)
    if m.kind == "inversion":
        key = m.edge.unordered_key()
        inside = all(v.depth <= radius for v in (m.edge.origin, m.edge.terminus))
        return MinSetWindow(
            frozenset(), frozenset([key]) if inside else frozenset(), radius, 0
        )
    verts = frozenset(
        v for v in params.ball(radius) if distance(v, g.apply(v)) == m.length
    )
    mids = set()
    for v in verts:
        for lab in params.local_labels(v):
            n = params.neighbor(v, lab)
            if n in verts:
                mids.add(frozenset((v.address, n.address)))
    return MinSetWindow(verts, frozenset(mids), radius, m.length)


# ---------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------


def aut_to_json(g: Automorphism) -> dict:
    return g.to_json()


def aut_from_json(params: TreeParams, data: dict) -> Automorphism:
    tag = data["type"]
    if tag == "identity":
        return IdentityAut(params)
    if tag == "portrait":
        perms = {
            tuple(entry["vertex"]): {int(a): int(b) for a, b in entry["perm"]}
            for entry in data["perms"]
        }
        return PortraitAut(params, int(data["depth"]), perms)
    if tag == "spineShift":
        return SpineShiftAut(params, int(data["shift"]))
    if tag == "axisTranslation":
        return AxisTranslationAut(
            params,
            end_from_json(data["repelling"]),
            end_from_json(data["attracting"]),
            int(data["step"]),
        )
    if tag == "inversion":
        return InversionAut(params, edge_from_json(data["edge"]))
    if tag == "rigidMap":
        return RigidMapAut(
            params,
            [vertex_from_json(v) for v in data["src"]],
            [vertex_from_json(v) for v in data["dst"]],
        )
    if tag == "composite":
        return CompositeAut(params, [aut_from_json(params, w) for w in data["word"]])
    if tag == "hnn":
        from . import hnn

        return hnn.hnn_atom_from_json(params, data)
    raise RepresentationError(f"unknown automorphism tag {tag!r}")
