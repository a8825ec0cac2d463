"""The scale function on tree automorphisms, exactly.

``scale`` evaluates the closed form: 1 on elliptic elements and edge
inversions, and the product of the branching numbers over the segment
]w, g.w] for an axis vertex w otherwise (equivalently (qE*qO)^(l/2) for
even translation length l, q^l on a homogeneous tree).

``scale_bruteforce_index`` is the independent oracle.  For the pointwise
fixator V of a ball B(c, r) it counts the distinct restrictions to
B(c, r) of tree automorphisms fixing g.B(c, r) pointwise, which equals
the coset index [gVg^-1 : gVg^-1 \\cap V].  The count is an exact product
of falling factorials over the convex hull of the two balls: rooting the
hull toward the fixed ball, each vertex contributes the number of
injective placements of its free children into its unblocked neighbor
slots.  Everything is arbitrary-precision integer arithmetic; no floats.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .automorphism import Automorphism, motion_profile
from .errors import AddressError, OracleBudgetError
from .tree_core import Vertex, distance, path_between


@dataclass(frozen=True)
class BallFixatorSpec:
    """The compact open subgroup fixing B(center, radius) pointwise."""

    center: Vertex
    radius: int

    def __post_init__(self):
        if self.radius < 0:
            raise AddressError("ball radius must be >= 0")


@dataclass(frozen=True)
class OracleBudget:
    """Hard limits for the brute-force oracle; exceeding them raises
    OracleBudgetError rather than approximating."""

    max_branching: int = 3
    max_radius: int = 3
    max_displacement: int = 4


DEFAULT_BUDGET = OracleBudget()


def scale(g: Automorphism) -> int:
    """Scale of g in the full automorphism group of its tree."""
    m = motion_profile(g)
    if not m.is_hyperbolic:
        return 1
    out = 1
    for v in path_between(m.anchor, g.apply(m.anchor))[1:]:
        out *= g.params.branching(v.parity)
    return out


def _falling(n: int, k: int) -> int:
    out = 1
    for i in range(k):
        out *= n - i
    return out


def scale_bruteforce_index(
    g: Automorphism,
    fixator: BallFixatorSpec,
    budget: OracleBudget = DEFAULT_BUDGET,
) -> int:
    """[gVg^-1 : gVg^-1 \\cap V] for V the ball fixator, by exact counting."""
    params = g.params
    params.validate_vertex(fixator.center)
    if max(params.qE, params.qO) > budget.max_branching:
        raise OracleBudgetError(
            f"branching {params.qE},{params.qO} exceeds budget {budget.max_branching}"
        )
    if fixator.radius > budget.max_radius:
        raise OracleBudgetError(
            f"radius {fixator.radius} exceeds budget {budget.max_radius}"
        )
    c2 = fixator.center
    c1 = g.apply(c2)
    if distance(c1, c2) > budget.max_displacement:
        raise OracleBudgetError(
            f"displacement {distance(c1, c2)} exceeds budget {budget.max_displacement}"
        )
    r = fixator.radius
    fixed = {v.address for v in params.ball(r, c1)}
    hull = dict.fromkeys(
        params.ball(r, c1) + list(path_between(c1, c2)) + params.ball(r, c2)
    )

    # Children of each hull vertex, rooted toward the fixed ball's center.
    children: dict[Vertex, list[Vertex]] = {}
    for x in hull:
        if x.address in fixed:
            continue
        parent = path_between(x, c1)[1]
        children.setdefault(parent, []).append(x)

    index = 1
    for u, kids in children.items():
        if u.address in fixed:
            blocked = sum(1 for n in params.neighbors(u) if n.address in fixed)
        else:
            blocked = 1
        free = params.valency(u) - blocked
        index *= _falling(free, len(kids))
    return index


def is_minimizing(
    fixator: BallFixatorSpec,
    g: Automorphism,
    budget: OracleBudget = DEFAULT_BUDGET,
) -> bool:
    """Whether the ball fixator attains the scale of g."""
    return scale_bruteforce_index(g, fixator, budget) == scale(g)


def modular(g: Automorphism) -> Fraction:
    """Modular function value scale(g) / scale(g^-1); exact rational."""
    return Fraction(scale(g), scale(g.invert()))
