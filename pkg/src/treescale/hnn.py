"""The shift model H x_alpha Z and its action on a homogeneous tree.

H is the group of finitely supported maps Z -> Z/q under addition and
alpha shifts indices: alpha(f)(i) = f(i+1).  The compact open subgroup V
consists of the maps supported on the non-negative indices, so
alpha(V) > V and the scale of (h, n) is q^n for n >= 0 and 1 otherwise.

The tree action uses horocyclic coordinates.  A vertex of T_{q+1} is the
coset f + V_k where V_k is the subgroup supported on [k, oo); the coset
is stored as (k, digits of f below k).  The group acts by

    (h, n) . (f + V_k) = (h + alpha^n(f)) + V_{k-n},

a genuine action on cosets, and the distinguished fixed end is the
standard spine end of the address chart.  The generator (0, 1) is a
hyperbolic translation with that end attracting; H acts by elliptic
coefficient additions along horospheres.
"""

from __future__ import annotations

from dataclasses import dataclass

from .automorphism import Automorphism, classify, Hyperbolic, motion_profile
from .errors import RepresentationError
from .tree_core import End, SPINE_NEG, SPINE_POS, TreeParams, Vertex, lcp_len_ends

Coeffs = tuple[tuple[int, int], ...]


def _normalize(q: int, items) -> Coeffs:
    acc: dict[int, int] = {}
    for i, v in items:
        acc[int(i)] = (acc.get(int(i), 0) + int(v)) % q
    return tuple(sorted((i, v) for i, v in acc.items() if v))


@dataclass(frozen=True)
class HnnElement:
    """(h, n) with h a finitely supported map Z -> Z/q and n the shift."""

    q: int
    coeffs: Coeffs
    n: int

    def __init__(self, q: int, coeffs, n: int):
        if q < 2:
            raise RepresentationError("q must be at least 2")
        object.__setattr__(self, "q", int(q))
        items = coeffs.items() if isinstance(coeffs, dict) else coeffs
        object.__setattr__(self, "coeffs", _normalize(q, items))
        object.__setattr__(self, "n", int(n))

    def coeff(self, i: int) -> int:
        for j, v in self.coeffs:
            if j == i:
                return v
        return 0


def hnn_identity(q: int) -> HnnElement:
    return HnnElement(q, (), 0)


def hnn_multiply(a: HnnElement, b: HnnElement) -> HnnElement:
    """(g, m)(h, n) = (g + alpha^m(h), m + n)."""
    if a.q != b.q:
        raise RepresentationError("mixed moduli")
    shifted = [(i - a.n, v) for i, v in b.coeffs]
    return HnnElement(a.q, tuple(a.coeffs) + tuple(shifted), a.n + b.n)


def hnn_invert(a: HnnElement) -> HnnElement:
    return HnnElement(a.q, [(i + a.n, -v) for i, v in a.coeffs], -a.n)


def hnn_scale(x: HnnElement) -> int:
    """q^n for n >= 0, else 1; independent of the coefficient part."""
    return x.q ** x.n if x.n >= 0 else 1


def hnn_index_count(q: int, n: int, extra_window: int = 2) -> int:
    """[alpha^n(V) : alpha^n(V) \\cap V] by honest coset counting.

    Elements of alpha^n(V) supported on a finite window are enumerated and
    grouped by their values on the negative indices, which characterize
    the cosets of the intersection.
    """
    import itertools

    lo = -n  # lowest support index allowed in alpha^n(V)
    positions = list(range(lo, max(0, lo) + extra_window))
    keys = set()
    for values in itertools.product(range(q), repeat=len(positions)):
        key = tuple(v for p, v in zip(positions, values) if p < 0)
        keys.add(key)
    return len(keys)


def hnn_maximal_membership(x: HnnElement) -> str:
    """Which of the two maximal multiplicative semigroups contains x."""
    if x.n == 0:
        return "Both"
    return "SPlus" if x.n > 0 else "SMinus"


# ---------------------------------------------------------------------
# tree action
# ---------------------------------------------------------------------


def _spine_vertex_k(k: int) -> Vertex:
    # coset coordinate k <-> spine position -k of the address chart
    if k <= 0:
        return Vertex((1,) * (-k))
    return Vertex((0,) + (1,) * (k - 1))


class HnnAut(Automorphism):
    """The tree automorphism of an HNN element, exactly evaluable."""

    def __init__(self, params: TreeParams, element: HnnElement):
        if not params.homogeneous:
            raise RepresentationError("the shift model needs a homogeneous tree")
        if params.qE != element.q:
            raise RepresentationError(
                f"element modulus {element.q} differs from branching {params.qE}"
            )
        self.params = params
        self.element = element

    # chart: address <-> (k, digits below k)

    def _chart(self, v: Vertex) -> tuple[int, dict[int, int]]:
        addr = v.address
        if addr and addr[0] == 0:
            follow = 1
            while follow < len(addr) and addr[follow] == 1:
                follow += 1
            k_spine = follow
        else:
            follow = 0
            while follow < len(addr) and addr[follow] == 1:
                follow += 1
            k_spine = -follow
        letters = addr[follow:]
        digits = {
            k_spine + i: c - 1 for i, c in enumerate(letters) if c != 1
        }
        return k_spine + len(letters), digits

    def _unchart(self, k: int, digits: dict[int, int]) -> Vertex:
        if not digits:
            return _spine_vertex_k(k)
        bottom = min(digits)
        spine = _spine_vertex_k(bottom)
        letters = tuple(digits.get(i, 0) + 1 for i in range(bottom, k))
        return Vertex(spine.address + letters)

    def apply(self, v: Vertex) -> Vertex:
        self.params.validate_vertex(v)
        q, n = self.element.q, self.element.n
        k, digits = self._chart(v)
        k2 = k - n
        shifted = {i - n: val for i, val in digits.items()}
        for i, val in self.element.coeffs:
            if i < k2:
                shifted[i] = (shifted.get(i, 0) + val) % q
        shifted = {i: val for i, val in shifted.items() if val}
        return self._unchart(k2, shifted)

    def invert(self) -> "HnnAut":
        return HnnAut(self.params, hnn_invert(self.element))

    def end_image(self, w: End) -> End:
        if w == SPINE_POS:
            return SPINE_POS
        from .automorphism import _generic_end_image

        return _generic_end_image(self, w, self._structure_bound(w))

    def _structure_bound(self, w: End | None = None) -> int:
        supp = max((abs(i) for i, _ in self.element.coeffs), default=0)
        bound = supp + abs(self.element.n) + 4
        if w is not None:
            for spine_end in (SPINE_POS, SPINE_NEG):
                d = lcp_len_ends(spine_end, w)
                bound += d if d is not None else 0
            bound += len(w.prefix)
        return bound

    def rigid_bound(self) -> int:
        return self._structure_bound()

    def to_json(self) -> dict:
        return {
            "type": "hnn",
            "q": self.element.q,
            "n": self.element.n,
            "coeffs": {str(i): v for i, v in self.element.coeffs},
        }

    def __eq__(self, other):
        return (
            isinstance(other, HnnAut)
            and self.params == other.params
            and self.element == other.element
        )

    def __hash__(self):
        return hash((self.params, self.element))

    def __repr__(self):
        return f"HnnAut({self.element})"


def hnn_to_tree(x: HnnElement) -> HnnAut:
    """The action of x on T_{q+1} in horocyclic coordinates."""
    return HnnAut(TreeParams(x.q, x.q), x)


def hnn_atom_from_json(params: TreeParams, data: dict) -> HnnAut:
    coeffs = [(int(i), int(v)) for i, v in data["coeffs"].items()]
    return HnnAut(params, HnnElement(int(data["q"]), coeffs, int(data["n"])))


def hnn_tree_scale(x: HnnElement) -> int:
    """Scale of x read off its tree action, taken in the end-stabilizing
    group: q^length when the distinguished end is attracting, else 1
    (elliptic elements and translations away from the end normalize a
    compact open subgroup there)."""
    g = hnn_to_tree(x)
    m = motion_profile(g)
    if not m.is_hyperbolic:
        return 1
    t = classify(g)
    assert isinstance(t, Hyperbolic)
    return x.q ** t.length if t.attracting == SPINE_POS else 1


# -- serialization of elements -----------------------------------------


def hnn_element_to_json(x: HnnElement) -> dict:
    return {"coeffs": {str(i): v for i, v in x.coeffs}, "n": x.n, "q": x.q}


def hnn_element_from_json(data) -> HnnElement:
    coeffs = [(int(i), int(v)) for i, v in data.get("coeffs", {}).items()]
    return HnnElement(int(data["q"]), coeffs, int(data["n"]))
