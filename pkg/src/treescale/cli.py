"""Command-line interface.

Automorphisms, specs and ends are passed as JSON, inline or as a file
path (an argument starting with '{' or '[' is parsed inline).  All
numeric output is exact; scale values print as decimal strings.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import hnn as hnn_mod
from .automorphism import (
    Elliptic,
    Hyperbolic,
    Inversion,
    aut_from_json,
    aut_to_json,
    axis_window,
    classify,
    min_set_in_ball,
    motion_profile,
)
from .dot import export_dot
from .errors import InconclusiveError, TreeScaleError
from .harness import CampaignConfig, config_from_json, run_campaign
from .scale import BallFixatorSpec, OracleBudget, scale, scale_bruteforce_index
from .semigroups import (
    DirectedVertex,
    EndPlus,
    MultiplicativityReport,
    classify_family,
    classify_family_all,
    contains,
    intersection_hyperbolic_witness,
    spec_from_json,
    spec_to_json,
    u_basis_contains,
)
from .tree_core import (
    TreeParams,
    Vertex,
    canonical_json,
    end_from_json,
    end_to_json,
    vertex_to_json,
)

DEFAULT_SEED_ENV = "TREESCALE_SEED"


def _parse_tree(text: str) -> TreeParams:
    parts = [int(x) for x in text.split(",")]
    if len(parts) == 1:
        return TreeParams(parts[0], parts[0])
    if len(parts) == 2:
        return TreeParams(parts[0], parts[1])
    raise TreeScaleError(f"bad tree spec {text!r}; use 'q' or 'qE,qO'")


def _load_json(text: str):
    text = text.strip()
    if text == "-":
        return json.load(sys.stdin)
    if text.startswith("{") or text.startswith("["):
        return json.loads(text)
    with open(text) as fh:
        return json.load(fh)


def _emit(data) -> None:
    print(canonical_json(data))


def _classify_json(params, g) -> dict:
    t = classify(g)
    if isinstance(t, Elliptic):
        return {"type": "elliptic", "fixedVertex": vertex_to_json(t.fixed_vertex)}
    if isinstance(t, Inversion):
        return {
            "type": "inversion",
            "edge": {
                "origin": vertex_to_json(t.edge.origin),
                "terminus": vertex_to_json(t.edge.terminus),
            },
        }
    assert isinstance(t, Hyperbolic)
    return {
        "type": "hyperbolic",
        "length": t.length,
        "axisAnchor": vertex_to_json(t.axis_anchor),
        "attracting": end_to_json(t.attracting),
        "repelling": end_to_json(t.repelling),
    }


def _cmd_classify(args) -> int:
    params = _parse_tree(args.tree)
    g = aut_from_json(params, _load_json(args.aut))
    _emit(_classify_json(params, g))
    return 0


def _cmd_scale(args) -> int:
    params = _parse_tree(args.tree)
    g = aut_from_json(params, _load_json(args.aut))
    value = scale(g)
    out = {"scale": str(value)}
    if args.oracle:
        center = Vertex(tuple(_load_json(args.center))) if args.center else motion_profile(g).anchor
        fix = BallFixatorSpec(center, args.radius)
        index = scale_bruteforce_index(g, fix, OracleBudget())
        out.update(
            {
                "oracleIndex": str(index),
                "match": index == value,
                "center": vertex_to_json(center),
                "radius": args.radius,
            }
        )
    _emit(out)
    return 0


def _cmd_membership(args) -> int:
    params = _parse_tree(args.tree)
    spec = spec_from_json(_load_json(args.spec))
    g = aut_from_json(params, _load_json(args.aut))
    _emit({"contains": contains(spec, g), "spec": spec_to_json(spec)})
    return 0


def _cmd_classify_family(args) -> int:
    params = _parse_tree(args.tree)
    family = [aut_from_json(params, d) for d in _load_json(args.family)]
    if args.all:
        specs = classify_family_all(family, args.window)
        _emit({"result": "specs", "specs": [spec_to_json(s) for s in specs]})
        return 0
    try:
        outcome = classify_family(family, args.window)
    except InconclusiveError as exc:
        _emit({"result": "inconclusive", "radius": exc.radius})
        return 2
    if isinstance(outcome, MultiplicativityReport):
        _emit({"result": "rejected", "report": outcome.to_json()})
        return 1
    _emit({"result": "spec", "spec": spec_to_json(outcome)})
    return 0


def _cmd_basis(args) -> int:
    params = _parse_tree(args.tree)
    v = Vertex(tuple(_load_json(args.vertex)))
    labels = frozenset(int(x) for x in args.labels.split(","))
    end = end_from_json(_load_json(args.end))
    member = u_basis_contains(params, v, labels, end)
    witness = intersection_hyperbolic_witness(
        params, DirectedVertex(v, labels), EndPlus(end)
    )
    _emit(
        {
            "contains": member,
            "witness": None if witness is None else aut_to_json(witness),
        }
    )
    return 0


def _cmd_hnn(args) -> int:
    if args.hnn_cmd == "scale":
        x = hnn_mod.hnn_element_from_json(_load_json(args.elem))
        _emit({"scale": str(hnn_mod.hnn_scale(x))})
        return 0
    if args.hnn_cmd == "act":
        x = hnn_mod.hnn_element_from_json(_load_json(args.elem))
        g = hnn_mod.hnn_to_tree(x)
        v = Vertex(tuple(_load_json(args.vertex)))
        _emit({"image": vertex_to_json(g.apply(v))})
        return 0
    # sweep: scale agreement and the mixed-sign dichotomy on a seeded sample
    import random as _random

    rng = _random.Random(args.seed)
    q = args.q
    agree = dichotomy = 0
    for _ in range(args.samples):
        coeffs = [
            (rng.randrange(-3, 4), rng.randrange(1, q))
            for _ in range(rng.randrange(0, 3))
        ]
        x = hnn_mod.HnnElement(q, coeffs, rng.randrange(-4, 5))
        if hnn_mod.hnn_tree_scale(x) == hnn_mod.hnn_scale(x):
            agree += 1
        y = hnn_mod.HnnElement(q, [], rng.randrange(-4, 5))
        prod = hnn_mod.hnn_multiply(x, y)
        lhs = hnn_mod.hnn_scale(prod)
        rhs = hnn_mod.hnn_scale(x) * hnn_mod.hnn_scale(y)
        opposite = (x.n > 0 > y.n) or (x.n < 0 < y.n)
        if (lhs < rhs) if opposite else (lhs == rhs):
            dichotomy += 1
    _emit(
        {
            "samples": args.samples,
            "treeScaleAgreement": agree,
            "dichotomyHolds": dichotomy,
        }
    )
    return 0 if agree == dichotomy == args.samples else 1


def _cmd_campaign(args) -> int:
    if args.config:
        cfg = config_from_json(_load_json(args.config))
    else:
        seed = args.seed
        if seed is None:
            seed = int(os.environ.get(DEFAULT_SEED_ENV, "0"))
        cfg = CampaignConfig(
            campaign_id=args.id,
            params=_parse_tree(args.tree),
            trials=args.trials,
            seed=seed,
            window_radius=args.window,
        )
    report = run_campaign(cfg)
    text = canonical_json(report.to_json())
    if args.report:
        with open(args.report, "w") as fh:
            fh.write(text + "\n")
    print(text)
    print(f"wall_time_s={report.wall_time:.3f}", file=sys.stderr)
    return 1 if report.fail_count > 0 else 0


def _cmd_export_dot(args) -> int:
    params = _parse_tree(args.tree)
    annotations = []
    for text in args.axis or ():
        g = aut_from_json(params, _load_json(text))
        annotations.append(axis_window(g, args.axis_periods))
    for text in args.minset or ():
        g = aut_from_json(params, _load_json(text))
        annotations.append(min_set_in_ball(g, args.depth))
    sys.stdout.write(export_dot(params, args.depth, annotations))
    return 0


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="treescale")
    sub = top.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("classify", help="classify an automorphism")
    p.add_argument("--tree", required=True)
    p.add_argument("--aut", required=True)
    p.set_defaults(fn=_cmd_classify)

    p = sub.add_parser("scale", help="scale of an automorphism")
    p.add_argument("--tree", required=True)
    p.add_argument("--aut", required=True)
    p.add_argument("--oracle", action="store_true")
    p.add_argument("--center", default=None, help="oracle ball center (JSON address)")
    p.add_argument("--radius", type=int, default=1)
    p.set_defaults(fn=_cmd_scale)

    p = sub.add_parser("membership", help="semigroup membership")
    p.add_argument("--tree", required=True)
    p.add_argument("--spec", required=True)
    p.add_argument("--aut", required=True)
    p.set_defaults(fn=_cmd_membership)

    p = sub.add_parser("classify-family", help="classify a finite family")
    p.add_argument("--tree", required=True)
    p.add_argument("--in", dest="family", required=True)
    p.add_argument("--all", action="store_true")
    p.add_argument("--window", type=int, default=5)
    p.set_defaults(fn=_cmd_classify_family)

    p = sub.add_parser("basis", help="U_(v,I) membership of an end")
    p.add_argument("--tree", required=True)
    p.add_argument("--vertex", required=True)
    p.add_argument("--labels", required=True, help="comma-separated in-edge labels")
    p.add_argument("--end", required=True)
    p.set_defaults(fn=_cmd_basis)

    p = sub.add_parser("hnn", help="shift-model operations")
    hs = p.add_subparsers(dest="hnn_cmd", required=True)
    q = hs.add_parser("scale")
    q.add_argument("--elem", required=True)
    q = hs.add_parser("act")
    q.add_argument("--elem", required=True)
    q.add_argument("--vertex", required=True)
    q = hs.add_parser("sweep")
    q.add_argument("--q", type=int, default=2)
    q.add_argument("--samples", type=int, default=100)
    q.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=_cmd_hnn)

    p = sub.add_parser("campaign", help="run a verification campaign")
    p.add_argument("id", nargs="?", default=None)
    p.add_argument("--tree", default="2")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--window", type=int, default=5)
    p.add_argument("--config", default=None, help="JSON config file")
    p.add_argument("--report", default=None, help="write the report here too")
    p.set_defaults(fn=_cmd_campaign)

    p = sub.add_parser("export-dot", help="DOT drawing of a ball")
    p.add_argument("--tree", required=True)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--axis", action="append", help="annotate this automorphism's axis")
    p.add_argument("--axis-periods", type=int, default=1)
    p.add_argument("--minset", action="append", help="annotate this automorphism's minimal set")
    p.set_defaults(fn=_cmd_export_dot)

    return top


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "cmd", None) == "campaign" and not args.config and not args.id:
        print("campaign id or --config required", file=sys.stderr)
        return 2
    try:
        return args.fn(args)
    except TreeScaleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
