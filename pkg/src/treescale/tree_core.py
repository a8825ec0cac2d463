"""Exact model of the semi-homogeneous (biregular) tree.

Vertices are finite label addresses read from a fixed base vertex (the
root).  The first letter selects one of the root's ``qE + 1`` edges and is
drawn from ``{0..qE}``; every later letter is a *descending* label drawn
from ``{1..q}`` where ``q`` is the branching number at the current parity
(label ``0`` is reserved for the edge back toward the root).  Addresses
are therefore automatically backtrack-free and the graph distance between
two vertices is ``|u| + |v| - 2*lcp(u, v)``.

Boundary points (ends) are restricted to eventually periodic addresses,
which keeps equality decidable and every construction in the package
exact.  All values are immutable; every operation is pure.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from math import gcd
from typing import Iterator, Sequence

from .errors import AddressError

Address = tuple[int, ...]


def _as_address(labels: Sequence[int]) -> Address:
    return tuple(int(x) for x in labels)


@dataclass(frozen=True, order=True)
class Vertex:
    """A tree vertex, identified by its edge-label address from the root."""

    address: Address = ()

    def __init__(self, address: Sequence[int] = ()):
        object.__setattr__(self, "address", _as_address(address))

    @property
    def depth(self) -> int:
        return len(self.address)

    @property
    def parity(self) -> int:
        """0 at even depth (branching qE), 1 at odd depth (branching qO)."""
        return len(self.address) % 2

    @property
    def is_root(self) -> bool:
        return not self.address

    def parent(self) -> "Vertex":
        if self.is_root:
            raise AddressError("the root has no parent")
        return Vertex(self.address[:-1])

    def child(self, label: int) -> "Vertex":
        return Vertex(self.address + (label,))

    def sort_key(self) -> tuple[int, Address]:
        """Canonical ordering: nearest to root first, then address order."""
        return (len(self.address), self.address)

    def __repr__(self) -> str:
        return f"Vertex({list(self.address)})"


ROOT = Vertex(())


@dataclass(frozen=True)
class OrientedEdge:
    """An oriented edge (origin, terminus) between adjacent vertices."""

    origin: Vertex
    terminus: Vertex

    def __post_init__(self):
        if distance(self.origin, self.terminus) != 1:
            raise AddressError(
                f"not adjacent: {self.origin!r} -> {self.terminus!r}"
            )

    def reverse(self) -> "OrientedEdge":
        return OrientedEdge(self.terminus, self.origin)

    def unordered_key(self) -> frozenset[Address]:
        """The underlying unordered edge {e, reverse(e)}."""
        return frozenset((self.origin.address, self.terminus.address))

    def __repr__(self) -> str:
        return f"Edge({list(self.origin.address)} -> {list(self.terminus.address)})"


def lcp_len(a: Sequence[int], b: Sequence[int]) -> int:
    n = 0
    for x, y in zip(a, b):
        if x != y:
            break
        n += 1
    return n


def distance(u: Vertex, v: Vertex) -> int:
    """Graph distance via the longest-common-prefix formula."""
    n = lcp_len(u.address, v.address)
    return (len(u.address) - n) + (len(v.address) - n)


def path_between(u: Vertex, v: Vertex) -> "Segment":
    """The unique geodesic from u to v, inclusive of both endpoints."""
    n = lcp_len(u.address, v.address)
    up = [Vertex(u.address[:k]) for k in range(len(u.address), n, -1)]
    down = [Vertex(v.address[:k]) for k in range(n, len(v.address) + 1)]
    return Segment(tuple(up + down))


@dataclass(frozen=True)
class Segment:
    """A finite geodesic: consecutive vertices adjacent, no repeats."""

    vertices: tuple[Vertex, ...]

    def __post_init__(self):
        if not self.vertices:
            raise AddressError("a segment needs at least one vertex")
        seen = set()
        for w in self.vertices:
            if w.address in seen:
                raise AddressError("segment repeats a vertex")
            seen.add(w.address)
        for a, b in zip(self.vertices, self.vertices[1:]):
            if distance(a, b) != 1:
                raise AddressError("segment vertices are not consecutive")

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self) -> Iterator[Vertex]:
        return iter(self.vertices)

    def __getitem__(self, i):
        return self.vertices[i]

    def edges(self) -> tuple[OrientedEdge, ...]:
        return tuple(
            OrientedEdge(a, b) for a, b in zip(self.vertices, self.vertices[1:])
        )


def _primitive_root(word: Address) -> Address:
    """Shortest word w with word = w^k."""
    n = len(word)
    for d in range(1, n + 1):
        if n % d == 0 and word == word[: d] * (n // d):
            return word[:d]
    return word


@dataclass(frozen=True)
class End:
    """An eventually periodic boundary point, stored in canonical form.

    The infinite address is prefix followed by period repeated forever.
    Canonicalization reduces the period to its primitive root and then
    absorbs trailing prefix letters into period rotations until the prefix
    is shortest; the result is unique, so ends compare by field equality.
    """

    prefix: Address
    period: Address

    def __init__(self, prefix: Sequence[int], period: Sequence[int]):
        p = _as_address(prefix)
        w = _as_address(period)
        if not w:
            raise AddressError("an end needs a nonempty period")
        w = _primitive_root(w)
        while p and p[-1] == w[-1]:
            p = p[:-1]
            w = w[-1:] + w[:-1]
        object.__setattr__(self, "prefix", p)
        object.__setattr__(self, "period", w)

    def letter(self, i: int) -> int:
        """The i-th letter of the infinite address."""
        if i < len(self.prefix):
            return self.prefix[i]
        return self.period[(i - len(self.prefix)) % len(self.period)]

    def ray_vertex(self, depth: int) -> Vertex:
        """The vertex of the root ray at the given depth."""
        return Vertex(tuple(self.letter(i) for i in range(depth)))

    def __repr__(self) -> str:
        return f"End({list(self.prefix)}, {list(self.period)})"


def lcp_len_ends(a: End, b: End) -> int | None:
    """Length of the common prefix of two ends; None when they are equal."""
    if a == b:
        return None
    bound = max(len(a.prefix), len(b.prefix)) + 2 * _lcm(len(a.period), len(b.period)) + 2
    for i in range(bound):
        if a.letter(i) != b.letter(i):
            return i
    raise AddressError("distinct ends agree beyond the periodicity bound")


def lcp_len_end_vertex(a: End, v: Vertex) -> int:
    n = 0
    for i, x in enumerate(v.address):
        if a.letter(i) != x:
            break
        n += 1
    return n


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


# The two ends of the standard spine through the root.
SPINE_NEG = End((0,), (1,))
SPINE_POS = End((), (1,))


@dataclass(frozen=True)
class TreeParams:
    """The biregular tree T(qE, qO): even-parity vertices have valency
    qE + 1, odd-parity vertices qO + 1.  The edge-subdivision parameter k
    is fixed to 1 (the tree is assumed semi-homogeneous already)."""

    qE: int
    qO: int
    k: int = field(default=1)

    def __post_init__(self):
        if self.qE < 2 or self.qO < 2:
            raise AddressError("branching numbers must be at least 2")
        if self.k != 1:
            raise AddressError("edge-subdivision parameter k must be 1")

    @property
    def homogeneous(self) -> bool:
        return self.qE == self.qO

    def branching(self, parity: int) -> int:
        return self.qE if parity % 2 == 0 else self.qO

    def valency(self, v: Vertex) -> int:
        return self.branching(v.parity) + 1

    # -- validation ---------------------------------------------------

    def validate_vertex(self, v: Vertex) -> Vertex:
        addr = v.address
        if addr:
            if not 0 <= addr[0] <= self.qE:
                raise AddressError(f"bad first label {addr[0]} in {v!r}")
            for i, c in enumerate(addr[1:], start=1):
                if not 1 <= c <= self.branching(i % 2):
                    raise AddressError(f"bad label {c} at depth {i} in {v!r}")
        return v

    def validate_edge(self, e: OrientedEdge) -> OrientedEdge:
        self.validate_vertex(e.origin)
        self.validate_vertex(e.terminus)
        return e

    def validate_end(self, w: End) -> End:
        self.validate_vertex(Vertex(w.prefix))
        base = len(w.prefix)
        span = len(w.period) if len(w.period) % 2 == 0 else 2 * len(w.period)
        for j in range(span):
            i = base + j
            c = w.period[j % len(w.period)]
            if not 1 <= c <= self.branching(i % 2):
                raise AddressError(f"period label {c} invalid at depth {i} in {w!r}")
        return w

    # -- local structure ----------------------------------------------

    def descending_labels(self, v: Vertex) -> range:
        """Labels of edges leading away from the root at v."""
        if v.is_root:
            return range(0, self.qE + 1)
        return range(1, self.branching(v.parity) + 1)

    def local_labels(self, v: Vertex) -> range:
        """All incident-edge labels at v: 0 is the parent edge at a
        non-root vertex; at the root every label is a child edge."""
        return range(0, self.branching(v.parity) + 1)

    def neighbor(self, v: Vertex, label: int) -> Vertex:
        if label not in self.local_labels(v):
            raise AddressError(f"label {label} out of range at {v!r}")
        if label == 0 and not v.is_root:
            return v.parent()
        return v.child(label)

    def neighbors(self, v: Vertex) -> list[Vertex]:
        return [self.neighbor(v, a) for a in self.local_labels(v)]

    def label_of_neighbor(self, v: Vertex, n: Vertex) -> int:
        """The local label at v of the edge toward the adjacent vertex n."""
        if n.depth == v.depth - 1:
            return 0
        if n.depth == v.depth + 1 and n.address[: v.depth] == v.address:
            return n.address[-1]
        raise AddressError(f"{n!r} is not adjacent to {v!r}")

    # -- metric operations ---------------------------------------------

    def distance(self, u: Vertex, v: Vertex) -> int:
        self.validate_vertex(u)
        self.validate_vertex(v)
        return distance(u, v)

    def path_between(self, u: Vertex, v: Vertex) -> Segment:
        self.validate_vertex(u)
        self.validate_vertex(v)
        return path_between(u, v)

    def coherent(self, e: OrientedEdge, f: OrientedEdge) -> bool:
        """Equal origin and terminus distances; reverse pairs are declared
        incoherent by convention (required by axis detection)."""
        self.validate_edge(e)
        self.validate_edge(f)
        if f == e.reverse():
            return False
        return distance(e.origin, f.origin) == distance(e.terminus, f.terminus)

    def ray_to_end(self, v: Vertex, w: End) -> Iterator[Vertex]:
        """Lazy geodesic ray from v into the end class w."""
        self.validate_vertex(v)
        self.validate_end(w)
        n = lcp_len_end_vertex(w, v)
        cur = v
        for k in range(len(v.address), n, -1):
            yield cur
            cur = cur.parent()
        for depth in itertools.count(n):
            yield cur
            cur = cur.child(w.letter(depth))

    def departure_edge(self, v: Vertex, w: End) -> OrientedEdge:
        """First edge of the ray [v, w)."""
        ray = self.ray_to_end(v, w)
        a = next(ray)
        b = next(ray)
        return OrientedEdge(a, b)

    # -- finite windows -------------------------------------------------

    def ball(self, radius: int, center: Vertex = ROOT) -> list[Vertex]:
        """Vertices within the given radius of center, breadth-first and
        deterministically ordered."""
        self.validate_vertex(center)
        out = [center]
        frontier = [(center, None)]
        for _ in range(radius):
            nxt = []
            for v, came_from in frontier:
                for n in self.neighbors(v):
                    if came_from is not None and n == came_from:
                        continue
                    out.append(n)
                    nxt.append((n, v))
            frontier = nxt
        return out

    def ball_edges(self, radius: int, center: Vertex = ROOT) -> list[OrientedEdge]:
        """One oriented edge per unordered edge of the ball, parent first."""
        out = []
        for v in self.ball(radius, center):
            if v != center:
                far = distance(center, v)
                near = self.neighbor(v, self._label_toward(v, center))
                if distance(center, near) < far:
                    out.append(OrientedEdge(near, v))
        return out

    def _label_toward(self, v: Vertex, target: Vertex) -> int:
        if v == target:
            raise AddressError("no direction from a vertex to itself")
        nxt = path_between(v, target)[1]
        return self.label_of_neighbor(v, nxt)


# -- geodesics between ends -------------------------------------------


def line_summit(params: TreeParams, a: End, b: End) -> Vertex:
    """The vertex of the geodesic ]a, b[ nearest the root."""
    n = lcp_len_ends(a, b)
    if n is None:
        raise AddressError("no geodesic between equal ends")
    return Vertex(tuple(a.letter(i) for i in range(n)))


def line_vertex(params: TreeParams, a: End, b: End, t: int) -> Vertex:
    """Vertex at signed position t on ]a, b[: position 0 is the summit,
    positive positions run toward b, negative toward a."""
    summit = line_summit(params, a, b)
    d = len(summit.address)
    if t >= 0:
        return Vertex(tuple(b.letter(i) for i in range(d)) + tuple(b.letter(d + i) for i in range(t)))
    return Vertex(summit.address + tuple(a.letter(d + i) for i in range(-t)))


def project_to_line(params: TreeParams, a: End, b: End, v: Vertex) -> tuple[Vertex, int]:
    """Projection of v onto ]a, b[ with its signed position."""
    summit = line_summit(params, a, b)
    d = len(summit.address)
    na = lcp_len_end_vertex(a, v)
    nb = lcp_len_end_vertex(b, v)
    if na > d and na >= nb:
        return Vertex(v.address[:na]), -(na - d)
    if nb > d:
        return Vertex(v.address[:nb]), nb - d
    return summit, 0


# -- JSON serialization ------------------------------------------------


def vertex_to_json(v: Vertex) -> list[int]:
    return list(v.address)


def vertex_from_json(data) -> Vertex:
    return Vertex(tuple(data))


def edge_to_json(e: OrientedEdge) -> dict:
    return {"origin": vertex_to_json(e.origin), "terminus": vertex_to_json(e.terminus)}


def edge_from_json(data) -> OrientedEdge:
    return OrientedEdge(vertex_from_json(data["origin"]), vertex_from_json(data["terminus"]))


def end_to_json(w: End) -> dict:
    return {"prefix": list(w.prefix), "period": list(w.period)}


def end_from_json(data) -> End:
    return End(tuple(data["prefix"]), tuple(data["period"]))


def params_to_json(p: TreeParams) -> dict:
    return {"qE": p.qE, "qO": p.qO}


def params_from_json(data) -> TreeParams:
    return TreeParams(int(data["qE"]), int(data["qO"]))


def canonical_json(obj) -> str:
    """Stable byte-for-byte JSON encoding used everywhere reports must be
    deterministic."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))
