"""Deterministic randomized campaigns verifying the package's laws.

Each campaign draws its per-trial randomness from a counter-mode hash of
(seed, trialIndex), so serial and parallel runs agree and every failure
is replayable from its trial index alone.  Inconclusive outcomes (window
or oracle budget exhausted) are counted separately and never folded into
pass or fail.  Report bytes are deterministic for identical configs; wall
time is tracked on the side and excluded from the canonical encoding.
"""

from __future__ import annotations

import hashlib
import random
import time
from dataclasses import dataclass, field

from . import hnn as hnn_mod
from .automorphism import (
    OrientedEdge,
    aut_to_json,
    build_translation,
    compose,
    compose_all,
    min_set_in_ball,
    motion_profile,
    power,
    spine_shift,
    translation_length,
)
from .errors import InconclusiveError, OracleBudgetError, TreeScaleError
from .sampling import (
    elliptic_at_vertex,
    random_automorphism,
    random_ball_fixator_element,
    random_end,
    random_even_vertex,
    random_hyperbolic,
    random_inversion,
    random_label_perm_preserving,
    random_member,
    random_portrait,
    random_spec,
    random_step,
    random_vertex,
)
from .scale import (
    BallFixatorSpec,
    DEFAULT_BUDGET,
    OracleBudget,
    is_minimizing,
    scale,
    scale_bruteforce_index,
)
from .semigroups import (
    DirectedVertex,
    EdgeMidpointFixator,
    EndMinus,
    EndPlus,
    VertexFixator,
    classify_family,
    contains,
    end_through,
    intersection_hyperbolic_witness,
    invert_spec,
    spec_to_json,
    u_basis_contains,
)
from .tree_core import (
    ROOT,
    TreeParams,
    Vertex,
    canonical_json,
    distance,
    end_to_json,
    params_from_json,
    params_to_json,
    path_between,
    vertex_to_json,
)

CAMPAIGN_IDS = (
    "LENGTH_ADD_DISJOINT",
    "LENGTH_ADD_COHERENT",
    "LENGTH_SUB_INCOHERENT",
    "AXIS_DETECT",
    "MINSET_INTERSECT",
    "ELLIPTIC_STRUCTURE",
    "POWER_LAW",
    "DOUBLE_COSET",
    "GENERATED_SEMIGROUP",
    "INVOLUTION",
    "SEMIGROUP_CLOSURE",
    "DISTINCT_I",
    "SCALE_FORMULA_VS_ORACLE",
    "HNN_DICHOTOMY",
    "BASIS_TOPOLOGY",
)


@dataclass(frozen=True)
class CampaignConfig:
    campaign_id: str
    params: TreeParams
    trials: int
    seed: int
    window_radius: int = 5
    oracle_budget: OracleBudget = field(default_factory=OracleBudget)

    def __post_init__(self):
        if self.trials < 1:
            raise TreeScaleError("trials must be >= 1")
        if self.campaign_id not in CAMPAIGN_IDS:
            raise TreeScaleError(f"unknown campaign id {self.campaign_id!r}")


@dataclass(frozen=True)
class CampaignReport:
    campaign_id: str
    params: TreeParams
    trials: int
    seed: int
    window_radius: int
    pass_count: int
    fail_count: int
    inconclusive_count: int
    failures: tuple[dict, ...]
    wall_time: float

    def to_json(self) -> dict:
        """Canonical report; wall time deliberately excluded so identical
        configs produce identical bytes."""
        return {
            "campaignId": self.campaign_id,
            "treeParams": params_to_json(self.params),
            "trials": self.trials,
            "seed": self.seed,
            "windowRadius": self.window_radius,
            "passCount": self.pass_count,
            "failCount": self.fail_count,
            "inconclusiveCount": self.inconclusive_count,
            "failures": list(self.failures),
        }

    def to_bytes(self) -> bytes:
        return canonical_json(self.to_json()).encode()


def trial_rng(seed: int, index: int) -> random.Random:
    digest = hashlib.sha256(f"{seed}:{index}".encode()).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


def run_campaign(cfg: CampaignConfig) -> CampaignReport:
    fn = _CAMPAIGNS[cfg.campaign_id]
    t0 = time.monotonic()
    passed = failed = inconclusive = 0
    failures = []
    for index in range(cfg.trials):
        rng = trial_rng(cfg.seed, index)
        try:
            ok, payload = fn(cfg, rng)
        except (InconclusiveError, OracleBudgetError):
            inconclusive += 1
            continue
        if ok:
            passed += 1
        else:
            failed += 1
            payload = dict(payload or {})
            payload["trialIndex"] = index
            payload["seed"] = cfg.seed
            failures.append(payload)
    return CampaignReport(
        cfg.campaign_id,
        cfg.params,
        cfg.trials,
        cfg.seed,
        cfg.window_radius,
        passed,
        failed,
        inconclusive,
        tuple(failures),
        time.monotonic() - t0,
    )


def replay_failure(cfg: CampaignConfig, failure: dict) -> bool:
    """Re-run the failing trial from its serialized (seed, index) pair;
    True when the failure reproduces."""
    rng = trial_rng(failure["seed"], failure["trialIndex"])
    ok, _ = _CAMPAIGNS[cfg.campaign_id](cfg, rng)
    return not ok


# ---------------------------------------------------------------------
# constructions shared by the product-length campaigns
# ---------------------------------------------------------------------


def _descend(rng, params, v: Vertex, steps: int) -> Vertex:
    for _ in range(steps):
        lab = rng.choice(list(params.descending_labels(v)))
        v = params.neighbor(v, lab)
    return v


def _two_departures(rng, params, v: Vertex, banned: set[int]) -> tuple[int, int]:
    pool = [x for x in params.descending_labels(v) if x not in banned]
    a = rng.choice(pool)
    b = rng.choice(pool)
    return a, b


def _disjoint_axis_pair(rng, cfg):
    params = cfg.params
    b1, b2 = rng.sample(range(cfg.params.qE + 1), 2)
    x1 = _descend(rng, params, Vertex((b1,)), rng.randrange(0, 3))
    x2 = _descend(rng, params, Vertex((b2,)), rng.randrange(0, 3))
    t = []
    for x in (x1, x2):
        labels = list(params.descending_labels(x))
        a, b = rng.sample(labels, 2)
        rep = end_through(params, x, a)
        att = end_through(params, x, b)
        t.append(build_translation(params, rep, att, random_step(rng, params)))
    return t[0], t[1], distance(x1, x2)


def _overlapping_pair(rng, cfg, same_direction: bool):
    params = cfg.params
    x = random_vertex(rng, params, 2)
    y = _descend(rng, params, x, rng.randrange(1, 4))
    toward_y = path_between(x, y)[1]
    banned = {params.label_of_neighbor(x, toward_y)}
    a1, a2 = _two_departures(rng, params, x, banned)
    rep1 = end_through(params, x, a1)
    rep2 = end_through(params, x, a2)
    b1, b2 = _two_departures(rng, params, y, set())
    att1 = end_through(params, y, b1)
    att2 = end_through(params, y, b2)
    s1 = random_step(rng, params)
    s2 = random_step(rng, params)
    t1 = build_translation(params, rep1, att1, s1)
    if same_direction:
        t2 = build_translation(params, rep2, att2, s2)
    else:
        t2 = build_translation(params, att2, rep2, s2)
    return t1, t2, s1, s2, path_between(x, y)


def _length_payload(t1, t2, extra):
    data = {"t1": aut_to_json(t1), "t2": aut_to_json(t2)}
    data.update(extra)
    return data


def _trial_length_add_disjoint(cfg, rng):
    t1, t2, bridge = _disjoint_axis_pair(rng, cfg)
    got = translation_length(compose(t2, t1))
    want = translation_length(t1) + translation_length(t2) + 2 * bridge
    if got == want:
        return True, None
    return False, _length_payload(t1, t2, {"bridge": bridge, "got": got, "want": want})


def _trial_length_add_coherent(cfg, rng):
    t1, t2, s1, s2, overlap = _overlapping_pair(rng, cfg, same_direction=True)
    prod = compose(t2, t1)
    got = translation_length(prod)
    if got != s1 + s2:
        return False, _length_payload(t1, t2, {"got": got, "want": s1 + s2})
    for w in overlap:
        if distance(w, prod.apply(w)) != got:
            return False, _length_payload(
                t1, t2, {"overlapVertexOffAxis": vertex_to_json(w)}
            )
    return True, None


def _trial_length_sub_incoherent(cfg, rng):
    t1, t2, s1, s2, _ = _overlapping_pair(rng, cfg, same_direction=False)
    got = translation_length(compose(t2, t1))
    if got <= s1 + s2 - 2:
        return True, None
    return False, _length_payload(t1, t2, {"got": got, "bound": s1 + s2 - 2})


def _trial_axis_detect(cfg, rng):
    params = cfg.params
    g = random_automorphism(rng, params)
    verdict = motion_profile(g).is_hyperbolic
    g2root = g.apply(g.apply(ROOT))
    oracle = False
    for e in path_between(ROOT, g2root).edges():
        for edge in (e, e.reverse()):
            ge = OrientedEdge(g.apply(edge.origin), g.apply(edge.terminus))
            if ge != edge and params.coherent(edge, ge):
                oracle = True
                break
        if oracle:
            break
    if verdict == oracle:
        return True, None
    return False, {"aut": aut_to_json(g), "profile": verdict, "oracle": oracle}


def _trial_minset_intersect(cfg, rng):
    params = cfg.params
    spec = None
    while spec is None or not isinstance(spec, DirectedVertex):
        spec = random_spec(rng, params, kinds=("directed",))
    g = random_member(rng, params, spec)
    h = random_member(rng, params, spec)
    a = min_set_in_ball(g, cfg.window_radius)
    b = min_set_in_ball(h, cfg.window_radius)
    if a.intersects(b):
        return True, None
    return False, {"g": aut_to_json(g), "h": aut_to_json(h), "spec": spec_to_json(spec)}


def _trial_elliptic_structure(cfg, rng):
    params = cfg.params
    kind = rng.choice(["vertex", "edge", "end"] if params.homogeneous else ["vertex", "end"])
    if kind == "vertex":
        v = random_even_vertex(rng, params, 2)
        gens = [elliptic_at_vertex(rng, params, v) for _ in range(2)]
    elif kind == "edge":
        inv = random_inversion(rng, params, 2)
        u, w = inv.edge.origin, inv.edge.terminus
        lab = params.label_of_neighbor(u, w)
        keep = elliptic_at_vertex(
            rng, params, u,
            random_label_perm_preserving(rng, params.local_labels(u), frozenset([lab])),
        )
        gens = [inv, keep]
    else:
        end = random_end(rng, params)
        gens = [random_portrait(rng, params, depth=3, fix_ray=end) for _ in range(2)]
    family = list(gens) + [compose(a, b) for a in gens for b in gens]
    spec = classify_family(family, cfg.window_radius)
    if isinstance(spec, (VertexFixator, EdgeMidpointFixator, EndPlus, EndMinus)):
        return True, None
    return False, {
        "family": [aut_to_json(g) for g in family],
        "result": spec if isinstance(spec, dict) else repr(spec),
    }


def _trial_power_law(cfg, rng):
    g = random_automorphism(rng, cfg.params)
    s = scale(g)
    for n in range(1, 5):
        if scale(power(g, n)) != s**n:
            return False, {"aut": aut_to_json(g), "n": n, "scale": str(s)}
    return True, None


def _double_coset_sample(cfg, rng, reps: int):
    """A random element of (VxV)^reps for x a spine translation and V the
    radius-1 ball fixator at the root (minimizing for x)."""
    params = cfg.params
    step = random_step(rng, params, 2)
    x = spine_shift(params, step)
    fix = BallFixatorSpec(ROOT, 1)
    if not is_minimizing(fix, x, cfg.oracle_budget):
        raise InconclusiveError("chosen fixator is not minimizing")
    word = [random_ball_fixator_element(rng, params, 1)]
    for _ in range(reps):
        word.append(x)
        word.append(random_ball_fixator_element(rng, params, 1))
    return x, compose_all(params, word)


def _trial_double_coset(cfg, rng):
    n = rng.randrange(1, 4)
    x, y = _double_coset_sample(cfg, rng, n)
    if scale(y) == scale(x) ** n:
        return True, None
    return False, {
        "x": aut_to_json(x),
        "y": aut_to_json(y),
        "n": n,
        "scaleY": str(scale(y)),
        "expected": str(scale(x) ** n),
    }


def _trial_generated_semigroup(cfg, rng):
    m = rng.randrange(1, 3)
    n = rng.randrange(1, 3)
    _, y = _double_coset_sample(cfg, rng, m)
    _, z = _double_coset_sample(cfg, rng, n)
    if scale(compose(y, z)) == scale(y) * scale(z):
        return True, None
    return False, {"y": aut_to_json(y), "z": aut_to_json(z)}


def _trial_involution(cfg, rng):
    params = cfg.params
    spec = random_spec(rng, params)
    if rng.random() < 0.5:
        g = random_member(rng, params, spec)
    else:
        g = random_automorphism(rng, params)
    lhs = contains(spec, g)
    rhs = contains(invert_spec(params, spec), g.invert())
    if lhs == rhs:
        return True, None
    return False, {"spec": spec_to_json(spec), "aut": aut_to_json(g)}


def _trial_semigroup_closure(cfg, rng):
    params = cfg.params
    spec = random_spec(rng, params)
    g = random_member(rng, params, spec)
    h = random_member(rng, params, spec)
    gh = compose(g, h)
    if contains(spec, gh) and scale(gh) == scale(g) * scale(h):
        return True, None
    return False, {
        "spec": spec_to_json(spec),
        "g": aut_to_json(g),
        "h": aut_to_json(h),
    }


def _trial_distinct_i(cfg, rng):
    params = cfg.params
    v = random_even_vertex(rng, params, 2)
    labels = list(params.local_labels(v))
    i_set = frozenset(rng.sample(labels, rng.randrange(1, len(labels))))
    j_set = i_set
    while j_set == i_set:
        j_set = frozenset(rng.sample(labels, rng.randrange(1, len(labels))))
    if i_set - j_set:
        pick, other = i_set, j_set
    else:
        pick, other = j_set, i_set
    a = min(pick - other)
    depart = min(set(labels) - pick)
    g = build_translation(
        params,
        end_through(params, v, a),
        end_through(params, v, depart),
        random_step(rng, params, 2),
    )
    in_pick = contains(DirectedVertex(v, pick), g)
    in_other = contains(DirectedVertex(v, other), g)
    if in_pick and not in_other:
        return True, None
    return False, {
        "vertex": vertex_to_json(v),
        "I": sorted(i_set),
        "J": sorted(j_set),
        "aut": aut_to_json(g),
    }


def _trial_scale_formula_vs_oracle(cfg, rng):
    # The radius-1 fixator at an axis vertex of branching 2 is minimizing;
    # larger radii (and centers of branching >= 3, where the star
    # contributes q! instead of q) over-fix and inflate the index.
    params = cfg.params
    g = random_hyperbolic(rng, params, max_step=4)
    anchor = motion_profile(g).anchor
    if params.branching(anchor.parity) != 2:
        anchor = path_between(anchor, g.apply(anchor))[1]
    fix = BallFixatorSpec(anchor, 1)
    formula = scale(g)
    oracle = scale_bruteforce_index(g, fix, cfg.oracle_budget)
    if formula == oracle:
        return True, None
    return False, {
        "aut": aut_to_json(g),
        "center": vertex_to_json(fix.center),
        "radius": fix.radius,
        "formula": str(formula),
        "oracle": str(oracle),
    }


def _trial_hnn_dichotomy(cfg, rng):
    q = rng.choice([2, 3])
    def rand_elem():
        coeffs = [
            (rng.randrange(-3, 4), rng.randrange(1, q))
            for _ in range(rng.randrange(0, 3))
        ]
        return hnn_mod.HnnElement(q, coeffs, rng.randrange(-4, 5))

    a, b = rand_elem(), rand_elem()
    prod = hnn_mod.hnn_multiply(a, b)
    lhs = hnn_mod.hnn_scale(prod)
    rhs = hnn_mod.hnn_scale(a) * hnn_mod.hnn_scale(b)
    opposite = (a.n > 0 > b.n) or (a.n < 0 < b.n)
    ok = (lhs < rhs) if opposite else (lhs == rhs)
    if ok:
        return True, None
    return False, {
        "a": hnn_mod.hnn_element_to_json(a),
        "b": hnn_mod.hnn_element_to_json(b),
        "productScale": str(lhs),
        "factorScales": str(rhs),
    }


def _trial_basis_topology(cfg, rng):
    params = cfg.params
    v = random_even_vertex(rng, params, 2)
    labels = list(params.local_labels(v))
    i_set = frozenset(rng.sample(labels, rng.randrange(1, len(labels))))
    end = random_end(rng, params)
    member = u_basis_contains(params, v, i_set, end)
    witness = intersection_hyperbolic_witness(
        params, DirectedVertex(v, i_set), EndPlus(end)
    )
    if member != (witness is not None):
        return False, {
            "vertex": vertex_to_json(v),
            "labels": sorted(i_set),
            "end": end_to_json(end),
            "uBasis": member,
            "witness": None if witness is None else aut_to_json(witness),
        }
    # monotonicity spot check: enlarging I can only shrink U_(v,I)
    if len(i_set) < len(labels) - 1:
        bigger = i_set | {min(set(labels) - i_set)}
        if len(bigger) < len(labels):
            if u_basis_contains(params, v, bigger, end) and not member:
                return False, {
                    "vertex": vertex_to_json(v),
                    "labels": sorted(i_set),
                    "monotonicity": sorted(bigger),
                }
    return True, None


_CAMPAIGNS = {
    "LENGTH_ADD_DISJOINT": _trial_length_add_disjoint,
    "LENGTH_ADD_COHERENT": _trial_length_add_coherent,
    "LENGTH_SUB_INCOHERENT": _trial_length_sub_incoherent,
    "AXIS_DETECT": _trial_axis_detect,
    "MINSET_INTERSECT": _trial_minset_intersect,
    "ELLIPTIC_STRUCTURE": _trial_elliptic_structure,
    "POWER_LAW": _trial_power_law,
    "DOUBLE_COSET": _trial_double_coset,
    "GENERATED_SEMIGROUP": _trial_generated_semigroup,
    "INVOLUTION": _trial_involution,
    "SEMIGROUP_CLOSURE": _trial_semigroup_closure,
    "DISTINCT_I": _trial_distinct_i,
    "SCALE_FORMULA_VS_ORACLE": _trial_scale_formula_vs_oracle,
    "HNN_DICHOTOMY": _trial_hnn_dichotomy,
    "BASIS_TOPOLOGY": _trial_basis_topology,
}


def config_from_json(data: dict) -> CampaignConfig:
    return CampaignConfig(
        campaign_id=data["campaignId"],
        params=params_from_json(data["treeParams"]),
        trials=int(data["trials"]),
        seed=int(data["seed"]),
        window_radius=int(data.get("windowRadius", 5)),
        oracle_budget=OracleBudget(
            *(data.get("oracleBudget", (3, 3, 4)))
        )
        if not isinstance(data.get("oracleBudget"), dict)
        else OracleBudget(**data["oracleBudget"]),
    )


def config_to_json(cfg: CampaignConfig) -> dict:
    return {
        "campaignId": cfg.campaign_id,
        "treeParams": params_to_json(cfg.params),
        "trials": cfg.trials,
        "seed": cfg.seed,
        "windowRadius": cfg.window_radius,
        "oracleBudget": [
            cfg.oracle_budget.max_branching,
            cfg.oracle_budget.max_radius,
            cfg.oracle_budget.max_displacement,
        ],
    }
