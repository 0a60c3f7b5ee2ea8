"""Command line front end: ``kwatchman <command> INSTANCE [options]``.

Exit codes: 0 success, 2 invalid input, 3 infeasible or too large,
4 a produced or supplied report failed verification.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
import time
from fractions import Fraction

from . import errors
from .cuts import essential_cuts, touches_all_cuts, visibility_cuts
from .dp import reevaluate_l2, solve_exact_l1, solve_fptas_l1
from .general import compute_r_min, solve_fptas_l2, solve_variable_k
from .geometry import L1, L2, Tour, as_number, as_point, segment_inside
from .instance import (
    Instance, dumps_instance, encode_point, jsonable, load_instance, load_json, parse_instance,
)
from .oracles import brute_force_l1, brute_force_l2_discretized, random_orthogonal_polygon
from .quota import AREA_SLACK, solve_quota_k
from .render import render_svg
from .visibility import route_visible_area

EXIT_OK, EXIT_INPUT, EXIT_INFEASIBLE, EXIT_VERIFY = 0, 2, 3, 4

_INPUT_ERRORS = (errors.InvalidPolygon, errors.PointOutside, errors.SegmentOutside,
                 errors.NotOrthogonal, errors.QuotaOutOfRange, ValueError, TypeError,
                 FileNotFoundError, json.JSONDecodeError)
_INFEASIBLE = (errors.Infeasible, errors.TooLarge, errors.ResourceCap)


class VerificationError(Exception):
    pass


# ------------------------------------------------------------------ reports

def build_report(inst: Instance, sol, mode: str, k: int, eps, wall: float) -> dict:
    P, s = inst.polygon, inst.start
    cert = dict(sol.certificates)
    cert.setdefault("m", len(essential_cuts(P, s)))
    return {
        "mode": mode,
        "metric": sol.metric,
        "k": k,
        "epsilon": jsonable(eps),
        "instance": json.loads(dumps_instance(inst)),
        "tours": [
            {"vertices": [encode_point(p) for p in t.points], "length": float(t.length)}
            for t in sol.tours
        ],
        "max_length": float(sol.max_length),
        "certificates": jsonable(cert),
        "wall_time": round(wall, 6),
    }


def verify_report(doc: dict) -> list[str]:
    """Re-check a report from scratch; returns the violated invariants."""
    problems = []
    inst = parse_instance(doc["instance"])
    P, s = inst.polygon, inst.start
    metric = doc.get("metric", L2)
    tours = []
    for i, t in enumerate(doc["tours"]):
        pts = tuple(as_point(p) for p in t["vertices"])
        tour = Tour(pts, metric)
        tours.append(tour)
        if pts[0] != s or pts[-1] != s:
            problems.append(f"tour {i} is not anchored at the start point")
        if any(not segment_inside(P, a, b) for a, b in zip(pts, pts[1:])):
            problems.append(f"tour {i} leaves the polygon")
        if not math.isclose(float(tour.length), float(t["length"]), rel_tol=1e-9, abs_tol=1e-9):
            problems.append(f"tour {i} length {t['length']} does not match recomputed {float(tour.length)}")
    if len(tours) != doc["k"]:
        problems.append(f"expected {doc['k']} tours, found {len(tours)}")
    worst = max((float(t.length) for t in tours), default=0.0)
    if not math.isclose(worst, float(doc["max_length"]), rel_tol=1e-9, abs_tol=1e-9):
        problems.append("max_length does not match the longest tour")
    if doc["mode"] == "quota":
        A = as_number(doc["certificates"]["quota"])
        seen = route_visible_area(P, tours)
        if seen < A * (1 - Fraction(AREA_SLACK)):
            problems.append(f"quota not met: area {float(seen)} < {float(A)}")
    elif not touches_all_cuts(essential_cuts(P, s), tours):
        problems.append("some essential cut is not touched by any tour")
    return problems


# ---------------------------------------------------------------- commands

def _instance(args) -> Instance:
    return load_instance(args.instance)


def _emit(text: str, out):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_cuts(args) -> int:
    inst = _instance(args)
    P, s = inst.polygon, inst.start
    allc = visibility_cuts(P, s)
    ess = essential_cuts(P, s)
    print(f"{len(allc)} visibility cuts, {len(ess)} essential cuts")
    for c in allc:
        a, b = c.chord
        tag = "essential" if any(e.chord == c.chord for e in ess) else "dominated"
        print(f"  {tag:9s} reflex {a} -> {b}")
    return EXIT_OK


def cmd_solve(args) -> int:
    inst = _instance(args)
    P, s = inst.polygon, inst.start
    d = inst.defaults
    k = args.k if args.k is not None else int(d.get("k", 1))
    eps = as_number(args.epsilon if args.epsilon is not None else d.get("epsilon", "0.5"))
    metric = args.metric or d.get("metric", L1 if args.mode in ("exact", "fptas") else L2)
    t0 = time.perf_counter()
    if args.mode == "exact":
        sol = solve_exact_l1(P, s, k)
    elif args.mode == "fptas":
        sol = solve_fptas_l1(P, s, k, eps)
    elif args.mode == "fptas-l2":
        sol = solve_fptas_l2(P, s, k, eps)
    elif args.mode == "approx":
        sol = solve_variable_k(P, s, k, eps)
    else:
        frac = args.quota_frac if args.quota_frac is not None else d.get("quota_frac")
        area = args.quota_area if args.quota_area is not None else d.get("quota_area")
        if frac is None and area is None:
            raise ValueError("quota mode needs --quota-frac or --quota-area")
        sol = solve_quota_k(P, s, k, area, eps, frac=frac)
    if metric == L2 and sol.metric == L1:
        sol = reevaluate_l2(sol)
    wall = time.perf_counter() - t0
    if args.mode in ("fptas-l2", "approx", "quota"):
        sol.certificates.setdefault("r_min", compute_r_min(P, s))
    report = build_report(inst, sol, args.mode, k, eps, wall)
    problems = verify_report(json.loads(json.dumps(report)))
    if problems:
        for p in problems:
            print(f"verification failed: {p}", file=sys.stderr)
        return EXIT_VERIFY
    _emit(json.dumps(report, indent=2) + "\n", args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    doc = load_json(args.report)
    problems = verify_report(doc)
    for p in problems:
        print(f"FAIL {p}")
    if problems:
        return EXIT_VERIFY
    print("report verified")
    return EXIT_OK


def cmd_oracle(args) -> int:
    inst = _instance(args)
    if args.mode == "l1":
        res = brute_force_l1(inst.polygon, inst.start, args.k)
    else:
        res = brute_force_l2_discretized(inst.polygon, inst.start, args.k, as_number(args.pitch))
    print(json.dumps(jsonable({"max_length": res.max_length, "assignment": list(res.assignment),
                               "method": res.method, "resolution": res.resolution}), indent=2))
    return EXIT_OK


def cmd_gen(args) -> int:
    P, s = random_orthogonal_polygon(args.n, args.seed)
    _emit(dumps_instance(Instance(P, s)) + "\n", args.out)
    return EXIT_OK


def cmd_render(args) -> int:
    inst = _instance(args)
    tours = []
    if args.report:
        doc = load_json(args.report)
        tours = [[as_point(p) for p in t["vertices"]] for t in doc["tours"]]
    with open(args.svg, "w") as fh:
        fh.write(render_svg(inst.polygon, inst.start, tours))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="kwatchman", description="Anchored k-watchman route solvers.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cuts", help="list visibility and essential cuts")
    p.add_argument("instance")
    p.set_defaults(func=cmd_cuts)

    p = sub.add_parser("solve", help="compute k routes and print a JSON report")
    p.add_argument("instance")
    p.add_argument("--mode", choices=["exact", "fptas", "fptas-l2", "approx", "quota"], default="exact")
    p.add_argument("--k", type=int)
    p.add_argument("--epsilon")
    p.add_argument("--quota-frac")
    p.add_argument("--quota-area")
    p.add_argument("--metric", choices=[L1, L2])
    p.add_argument("--out")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="re-check a solve report")
    p.add_argument("report")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="brute-force reference value")
    p.add_argument("instance")
    p.add_argument("--mode", choices=["l1", "l2"], default="l1")
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--pitch", default="1/4")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("gen", help="random orthogonal instance")
    p.add_argument("--n", type=int, default=12)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("render", help="draw an instance (and routes) as SVG")
    p.add_argument("instance")
    p.add_argument("--svg", required=True)
    p.add_argument("--report")
    p.set_defaults(func=cmd_render)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _INFEASIBLE as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except _INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (KeyError, VerificationError) as exc:
        print(f"error: malformed report ({exc})", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
