"""``ordspace`` command line.

Subcommands: compare, dist, census, converge, atlas, check.

``--group``, ``--order`` and ``--elt`` take either inline JSON or a path to a
JSON file.  Every JSON document written carries ``"schema": 1`` and the seed.
Exit codes: 0 ok, 1 a check or census failed, 2 malformed input,
3 resource limit (ball too large).  Errors go to stderr as one line starting
with ``error:``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import random
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .affine import EXPANDING
from .groups import (
    BallTooLargeError,
    Sol,
    Tararin,
    WreathZZ,
    element_from_json,
    element_to_json,
    group_from_json,
    group_to_json,
)
from .lospace import (
    affine_conjugate_sequence,
    agreement,
    convergence_check,
    dist,
    is_biinvariant_on_ball,
    is_conradian_on_ball,
    tararin_conjugation_orbits,
    wreath_orbit_sequence,
)
from .orders import (
    AFFINE_BRANCHES,
    affine_branch_endpoints,
    SolAffine,
    SolConrad,
    Tie,
    WreathLexTop,
    Z2Line,
    canonical_json,
    enumerate_tararin,
    order_from_json,
    order_to_json,
    sign_of,
    sol_biorders,
    validate_order,
)
from .qfield import QuadExt
from .realization import wreath_nesting_tree
from .sampling import random_sol_affine, random_sol_conrad

SCHEMA = 1
MAX_RADIUS = 8
MAX_TARARIN_M = 10
DEFAULT_T = ((2, 1), (1, 1))


class UsageError(ValueError):
    pass


# ---------------------------------------------------------------------------
# input


def _load_json(text: str, what: str):
    if text is None:
        raise UsageError(f"--{what} is required")
    s = text.strip()
    if not s.startswith(("{", "[")):
        try:
            s = Path(text).read_text()
        except OSError as exc:
            raise UsageError(f"cannot read --{what} file {text!r}: {exc.strerror}") from exc
    try:
        return json.loads(s)
    except json.JSONDecodeError as exc:
        raise UsageError(f"--{what} is not valid JSON: {exc.msg} at position {exc.pos}") from exc


def _group(args):
    if args.group is None:
        return Sol(DEFAULT_T)
    data = _load_json(args.group, "group")
    if not isinstance(data, dict):
        raise UsageError("--group must be a JSON object")
    return group_from_json(data)


def _order(text, G=None):
    data = _load_json(text, "order")
    if not isinstance(data, dict):
        raise UsageError("--order must be a JSON object")
    O = order_from_json(data)
    if G is not None:
        v = validate_order(G, O)
        if not v.ok:
            raise UsageError(f"invalid order for {G.name}: {v.message}")
    return O


def _radius(args, default):
    r = default if args.radius is None else args.radius
    if not 0 <= r <= MAX_RADIUS:
        raise UsageError(f"--radius must be in 0..{MAX_RADIUS}, got {r}")
    return r


# ---------------------------------------------------------------------------
# output


def _scalar(x) -> dict:
    """Exact form plus a 30-digit decimal."""
    if isinstance(x, QuadExt):
        return {"exact": str(x), "decimal": x.to_decimal(30), **x.to_json()}
    x = Fraction(x)
    return {"exact": str(x), "decimal": QuadExt.rational(x, 5).to_decimal(30)}


class Output:
    """Collects a JSON payload plus a table; renders in the requested format."""

    def __init__(self, args, command: str):
        self.args = args
        self.payload = {"schema": SCHEMA, "command": command, "seed": args.seed}
        self.header: list[str] = []
        self.rows: list[list] = []
        self.summary: list[str] = []

    def render(self) -> str:
        fmt = self.args.format
        if fmt == "json":
            return json.dumps(self.payload, indent=2, sort_keys=True) + "\n"
        if fmt == "csv":
            buf = io.StringIO()
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(self.header)
            w.writerows(self.rows)
            return buf.getvalue()
        lines = list(self.summary)
        if self.header:
            cells = [self.header] + [[str(c) for c in row] for row in self.rows]
            widths = [max(len(r[i]) for r in cells) for i in range(len(self.header))]
            fmt_row = lambda r: "  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip()
            if lines:
                lines.append("")
            lines.append(fmt_row(cells[0]))
            lines.append("  ".join("-" * w for w in widths))
            lines.extend(fmt_row(r) for r in cells[1:])
        lines.append(f"seed: {self.args.seed}")
        return "\n".join(lines) + "\n"

    def write(self):
        text = self.render()
        if self.args.out:
            try:
                Path(self.args.out).write_text(text)
            except OSError as exc:
                raise UsageError(f"cannot write {self.args.out!r}: {exc.strerror}") from exc
        else:
            sys.stdout.write(text)


def _sign_str(s: int) -> str:
    return {1: "+1", -1: "-1", 0: "0"}[s]


def _order_str(O) -> str:
    return canonical_json(O)


# ---------------------------------------------------------------------------
# commands


def cmd_compare(args) -> int:
    G = _group(args)
    O = _order(args.order[0] if args.order else None, G)
    g = element_from_json(_load_json(args.elt, "elt"), G)
    s = sign_of(G, O, g)
    if args.format == "table" and not args.out:
        print(_sign_str(s))
        return 0
    out = Output(args, "compare")
    out.payload.update(group=group_to_json(G), order=order_to_json(O), element=element_to_json(g), sign=s)
    out.header = ["element", "sign"]
    out.rows = [[json.dumps(element_to_json(g), sort_keys=True), _sign_str(s)]]
    out.write()
    return 0


def cmd_dist(args) -> int:
    G = _group(args)
    if not args.order or len(args.order) != 2:
        raise UsageError("dist needs exactly two --order arguments")
    O1, O2 = (_order(t, G) for t in args.order)
    r = _radius(args, 5)
    rep = agreement(G, O1, O2, r)
    d = dist(G, O1, O2, r)
    out = Output(args, "dist")
    out.payload.update(
        group=group_to_json(G),
        orders=[order_to_json(O1), order_to_json(O2)],
        r_max=r,
        agreement=rep.to_json(),
        dist={"value": str(d.value), "exact": d.exact, "display": str(d)},
        convention="n = largest radius of full agreement, dist = 2^-(n+1)",
    )
    out.summary = [f"r_max: {r}", f"agreement: {rep.describe()}", f"dist: {d}"]
    if rep.first_disagreement is not None:
        w = rep.first_disagreement
        out.summary.append(
            f"witness: {json.dumps(element_to_json(w.element), sort_keys=True)} "
            f"({_sign_str(w.expected)} vs {_sign_str(w.actual)})"
        )
    out.header = ["r_max", "agreement_radius", "exact", "dist"]
    out.rows = [[r, rep.agreement_radius, rep.exact, str(d)]]
    out.write()
    return 0


def _census_tararin(args, out, m) -> bool:
    if not 1 <= m <= MAX_TARARIN_M:
        raise UsageError(f"m must be in 1..{MAX_TARARIN_M}, got {m}")
    r = _radius(args, 4)
    G = Tararin(m)
    specs = enumerate_tararin(m)
    orbits = tararin_conjugation_orbits(m)
    orbit_of = {O: i for i, orb in enumerate(orbits) for O in orb}
    results = [is_conradian_on_ball(G, O, r) for O in specs]
    out.header = ["eps", "orbit", "conradian"]
    out.rows = [
        ["".join("+" if e > 0 else "-" for e in O.eps), orbit_of[O], "pass" if c.passed else "FAIL"]
        for O, c in zip(specs, results)
    ]
    all_conradian = all(results)
    ok = len(specs) == 2**m and len(set(specs)) == 2**m and len(orbits) == 2 and all_conradian
    out.payload.update(
        group=group_to_json(G),
        radius=r,
        orderings=len(specs),
        expected_orderings=2**m,
        orbits=[[order_to_json(O) for O in orb] for orb in orbits],
        expected_orbits=2,
        conradian=[c.to_json() for c in results],
        ok=ok,
    )
    tail = f"all Conradian at r={r}" if all_conradian else f"NOT all Conradian at r={r}"
    out.summary = [f"{len(specs)} orderings, {len(orbits)} conjugation orbits, {tail}"]
    return ok


def _census_sol(args, out, G: Sol) -> bool:
    r = _radius(args, 4)
    specs = sol_biorders(G.T)
    results = [is_biinvariant_on_ball(G, O, r) for O in specs]
    rng = random.Random(args.seed)
    samples = []
    for _ in range(args.sample):
        for O in (random_sol_conrad(rng, G), random_sol_affine(rng, G)):
            samples.append((O, is_biinvariant_on_ball(G, O, r)))
    out.header = ["order", "kind", "biinvariant", "witness"]
    out.rows = [[_order_str(O), "bi-order", "pass" if c else "FAIL", ""] for O, c in zip(specs, results)]
    for O, c in samples:
        w = "" if c.witness is None else json.dumps([element_to_json(x) for x in c.witness.element])
        out.rows.append([_order_str(O), "sample", "pass" if c else "fail", w])
    all_bi = all(results)
    samples_fail = all(not c for _, c in samples)
    ok = len(specs) == 8 and len(set(specs)) == 8 and all_bi and samples_fail
    out.payload.update(
        group=group_to_json(G),
        radius=r,
        biorders=[{"order": order_to_json(O), "check": c.to_json()} for O, c in zip(specs, results)],
        expected_biorders=8,
        samples=[{"order": order_to_json(O), "check": c.to_json()} for O, c in samples],
        ok=ok,
    )
    tail = f"all bi-invariant at r={r}" if all_bi else f"NOT all bi-invariant at r={r}"
    out.summary = [f"{len(specs)} bi-orderings, {tail}"]
    if samples:
        n_fail = sum(1 for _, c in samples if not c)
        out.summary.append(f"{n_fail}/{len(samples)} sampled non-bi-orders fail with a witness")
    return ok


def cmd_census(args) -> int:
    out = Output(args, "census")
    if args.m is not None:
        ok = _census_tararin(args, out, args.m)
    else:
        G = _group(args)
        if isinstance(G, Tararin):
            ok = _census_tararin(args, out, G.m)
        elif isinstance(G, Sol):
            ok = _census_sol(args, out, G)
        else:
            raise UsageError(f"census is defined for tararin and sol groups, not {G.name}")
    out.write()
    return 0 if ok else 1


def cmd_converge(args) -> int:
    G = _group(args)
    out = Output(args, "converge")
    terms = args.terms
    if not 1 <= terms <= 10:
        raise UsageError(f"--terms must be in 1..10, got {terms}")
    if isinstance(G, WreathZZ):
        target = _order(args.order[0], G) if args.order else WreathLexTop(1)
        if not isinstance(target, WreathLexTop):
            raise UsageError("wreath convergence targets a wreath_lextop order")
        ms = list(range(4, 4 + terms))
        seq = wreath_orbit_sequence(ms, target.t_sign)
        if target.orientation != 1:
            from .orders import flip

            seq = [flip(O) for O in seq]
        schedule = [m - 2 for m in ms]
        params = [{"m": m} for m in ms]
    elif isinstance(G, Sol):
        target = _order(args.order[0], G) if args.order else SolAffine(EXPANDING, 1, 0, 1)
        if not isinstance(target, SolAffine) or target.stab_sign is None:
            raise UsageError("SOL convergence targets a sol_affine order with stab_sign set")
        ks = list(range(1, 1 + terms))
        seq = affine_conjugate_sequence(G, target, ks)
        schedule = [max(0, min(k - 1, MAX_RADIUS)) for k in ks]
        params = [{"k": k, "basepoint": _scalar(O.basepoint)} for k, O in zip(ks, seq)]
    else:
        raise UsageError(f"converge is defined for sol and wreath groups, not {G.name}")
    rep = convergence_check(G, target, seq, schedule)
    out.payload.update(
        group=group_to_json(G),
        target=order_to_json(target),
        sequence=[order_to_json(O) for O in seq],
        parameters=params,
        r_schedule=schedule,
        report=rep.to_json(),
        passed=rep.passed,
    )
    out.header = ["term", "parameter", "required_radius", "agreement", "ok", "distinct_witness"]
    for p, t in zip(params, rep.terms):
        key = "m" if "m" in p else "k"
        w = "" if t.distinct_witness is None else json.dumps(element_to_json(t.distinct_witness.element))
        out.rows.append([t.index, f"{key}={p[key]}", t.required_radius, t.agreement.describe(), t.agreement_ok, w])
    out.summary = [
        f"target: {_order_str(target)}",
        f"agreement schedule met: {rep.agreement_ok}; distinct witnesses: {rep.all_distinct}",
    ]
    out.write()
    return 0 if rep.passed else 1


# -- atlas


def _circle_directions(density: int) -> list[tuple[int, int]]:
    """Primitive integer directions on the square of half-width ``density``."""
    if density == 0:
        return []
    pts = []
    n = density
    for i in range(-n, n):
        pts += [(n, i), (-i, n), (-n, -i), (i, -n)]
    prim = sorted({(x, y) for x, y in pts if math.gcd(x, y) == 1}, key=lambda p: math.atan2(p[1], p[0]))
    return prim


def _angle(u) -> str:
    x = float(Fraction(u[0]) if not isinstance(u[0], QuadExt) else u[0].to_decimal(20))
    y = float(Fraction(u[1]) if not isinstance(u[1], QuadExt) else u[1].to_decimal(20))
    return f"{math.atan2(y, x):.12f}"


def _basepoints(density: int) -> list[Fraction]:
    if density == 0:
        return []
    return sorted({Fraction(i, density) for i in range(-2 * density, 2 * density + 1)})


def sol_atlas(G: Sol, density: int) -> dict:
    biorders = sol_biorders(G.T)
    bi_lines = {O.z2 for O in biorders}
    circles = []
    for t_sign in (1, -1):
        points = []
        for d in _circle_directions(density):
            c = (-d[1], d[0])
            g = math.gcd(*c)
            c = (c[0] // g, c[1] // g)
            orders = [SolConrad(Z2Line(d, Tie(c, s)), t_sign) for s in (1, -1)]
            points.append(
                {"covector": [str(x) for x in d], "angle": _angle(d), "rational": True, "doubled": True,
                 "biorder": False, "orders": [order_to_json(O) for O in orders]}
            )
        for L in sorted(bi_lines, key=lambda L: _angle(L.u)):
            points.append(
                {"covector": [_scalar(x)["exact"] for x in L.u], "angle": _angle(L.u), "rational": False,
                 "doubled": False, "biorder": True, "orders": [order_to_json(SolConrad(L, t_sign))]}
            )
        points.sort(key=lambda p: float(p["angle"]))
        circles.append({"t_sign": t_sign, "points": points})
    branches = []
    endpoint_set = set()
    for choice, orientation in AFFINE_BRANCHES:
        lo, hi = affine_branch_endpoints(G.T, choice, orientation)
        endpoint_set |= {lo, hi}
        pts = [
            {"basepoint": _scalar(x), "order": order_to_json(SolAffine(choice, orientation, x, s))}
            for x in _basepoints(density)
            for s in (1, -1)
        ]
        branches.append(
            {"lambda_choice": choice, "orientation": orientation,
             "endpoints": {"-inf": order_to_json(lo), "+inf": order_to_json(hi)}, "points": pts}
        )
    return {
        "conradian_circles": circles,
        "affine_branches": branches,
        "biorders": [order_to_json(O) for O in biorders],
        "counts": {
            "conradian_circles": len(circles),
            "affine_branches": len(branches),
            "endpoints_per_branch": 2,
            "distinct_endpoints": len(endpoint_set),
            "biorders": len(biorders),
        },
    }


def cmd_atlas(args) -> int:
    G = _group(args)
    out = Output(args, "atlas")
    if args.density < 0:
        raise UsageError("--density must be >= 0")
    if not 1 <= args.depth <= 32:
        raise UsageError("--depth must be in 1..32")
    if isinstance(G, WreathZZ):
        tree = wreath_nesting_tree(args.depth)
        out.payload.update(group=group_to_json(G), wreath_nesting=tree)
        out.header = ["level", "element", "block_level"]
        node, lvl = tree["tree"], 0
        while node:
            out.rows.append([lvl, json.dumps(node["element"], sort_keys=True), node["block"]["fixed_above"]])
            node, lvl = node.get("child"), lvl + 1
        out.summary = [f"wreath nesting tree, depth {args.depth}"]
        out.write()
        return 0
    if not isinstance(G, Sol):
        raise UsageError(f"atlas is defined for sol and wreath groups, not {G.name}")
    atlas = sol_atlas(G, args.density)
    atlas["wreath_nesting"] = wreath_nesting_tree(args.depth)
    out.payload.update(group=group_to_json(G), density=args.density, **atlas)
    out.header = ["kind", "branch", "parameter", "decimal", "order"]
    for c in atlas["conradian_circles"]:
        for p in c["points"]:
            for o in p["orders"]:
                out.rows.append(
                    ["circle", f"t_sign={c['t_sign']}", "(" + ", ".join(p["covector"]) + ")", p["angle"],
                     json.dumps(o, sort_keys=True, separators=(",", ":"))]
                )
    for b in atlas["affine_branches"]:
        name = f"{b['lambda_choice']}/{b['orientation']:+d}"
        for k in ("-inf", "+inf"):
            out.rows.append(["endpoint", name, k, "", json.dumps(b["endpoints"][k], sort_keys=True, separators=(",", ":"))])
        for p in b["points"]:
            out.rows.append(["affine", name, p["basepoint"]["exact"], p["basepoint"]["decimal"],
                             json.dumps(p["order"], sort_keys=True, separators=(",", ":"))])
    cnt = atlas["counts"]
    out.summary = [
        f"{cnt['conradian_circles']} Conradian circles, {cnt['affine_branches']} affine branches "
        f"x {cnt['endpoints_per_branch']} endpoint bi-orders ({cnt['distinct_endpoints']} distinct), "
        f"{cnt['biorders']} bi-orders"
    ]
    out.write()
    return 0


def cmd_check(args) -> int:
    G = _group(args)
    if not args.order:
        raise UsageError("--order is required")
    O = _order(args.order[0], G)
    r = _radius(args, 4)
    con = is_conradian_on_ball(G, O, r)
    bi = is_biinvariant_on_ball(G, O, r)
    out = Output(args, "check")
    out.payload.update(group=group_to_json(G), order=order_to_json(O), radius=r,
                       conradian=con.to_json(), biinvariant=bi.to_json())
    out.header = ["check", "result", "pairs", "witness"]
    for name, c in (("conradian", con), ("biinvariant", bi)):
        w = "" if c.witness is None else json.dumps([element_to_json(x) for x in c.witness.element])
        out.rows.append([name, "pass" if c else "fail", c.pairs_checked, w])
    out.summary = [f"order: {_order_str(O)}", f"radius: {r}"]
    out.write()
    return 0


# ---------------------------------------------------------------------------
# entry point


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--group", help="group JSON (inline or path); default SOL with T=[[2,1],[1,1]]")
    common.add_argument("--order", action="append", help="order spec JSON (inline or path); repeat for dist")
    common.add_argument("--radius", type=int, help="ball radius / r_max")
    common.add_argument("--format", choices=("table", "json", "csv"), default="table")
    common.add_argument("--seed", type=int, default=0, help="seed for sampled checks (recorded in output)")
    common.add_argument("--out", help="write output to this file instead of stdout")

    p = _Parser(prog="ordspace", description="Left-orderings of solvable groups, exactly.")
    p.add_argument("--version", action="version", version=f"ordspace {__version__}")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    s = sub.add_parser("compare", parents=[common], help="sign of an element")
    s.add_argument("--elt", help="element JSON, e.g. '{\"v\":[1,0],\"n\":0}'")
    s.set_defaults(func=cmd_compare)

    s = sub.add_parser("dist", parents=[common], help="agreement radius and distance of two orders")
    s.set_defaults(func=cmd_dist)

    s = sub.add_parser("census", parents=[common], help="Tararin or SOL bi-order census")
    s.add_argument("-m", type=int, help="Tararin rank (overrides --group)")
    s.add_argument("--sample", type=int, default=5, help="sampled non-bi-orders per kind (SOL)")
    s.set_defaults(func=cmd_census)

    s = sub.add_parser("converge", parents=[common], help="convergence of conjugates / orbit orders")
    s.add_argument("--terms", type=int, default=5)
    s.set_defaults(func=cmd_converge)

    s = sub.add_parser("atlas", parents=[common], help="plot data for LO(SOL) and wreath nesting")
    s.add_argument("--density", type=int, default=2)
    s.add_argument("--depth", type=int, default=4)
    s.set_defaults(func=cmd_atlas)

    s = sub.add_parser("check", parents=[common], help="Conradian and bi-invariance ball checks")
    s.set_defaults(func=cmd_check)
    return p


def _one_line(exc) -> str:
    return " ".join(str(exc).split()) or type(exc).__name__


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except BallTooLargeError as exc:
        print(f"error: resource: {_one_line(exc)}", file=sys.stderr)
        return 3
    except (UsageError, ValueError, TypeError, KeyError, IndexError) as exc:
        print(f"error: input: {_one_line(exc)}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
