"""Command-line surface for the plane-map toolkit.

Every subcommand produces a RunReport: a command echo plus a list of
named checks, each pass / fail / skipped-budget.  The JSON rendering is
deterministic (no timing, stable ordering) so golden tests can compare
bytes; the human rendering appends elapsed time.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .curves import (MilnorResult, PreconditionError, classify_low_degree_curve,
                     distinguish_by_milnor, milnor_at_origin)
from .groebner import ComputationBudget, ResourceBudgetExceeded
from .maps import (PlaneAutomorphism, PolyMap, branch_ideal, compose,
                   critical_ideal, integral_relation_check, is_proper,
                   jacobian_power_factorization, make_family,
                   topological_degree, verify_branch)
from .parser import PolyParseError, format_map, format_poly, parse_map, parse_poly
from .polyring import MultiPoly, substitute
from .refgroups import (basic_invariants, claimed_branch, classes_of_degree,
                        default_table4_rows, enumerate_group, fingerprint,
                        parse_group_spec, quotient_map, verify_presentation,
                        verify_table4_row)

PASS = "pass"
FAIL = "fail"
SKIPPED = "skipped-budget"


@dataclass
class Check:
    name: str
    status: str
    details: dict = dc_field(default_factory=dict)


@dataclass
class RunReport:
    command: list
    checks: list
    tier: str | None = None
    elapsed: float = 0.0

    @property
    def exit_code(self) -> int:
        return 1 if any(c.status == FAIL for c in self.checks) else 0

    def to_json(self) -> str:
        doc = {
            "schema": 1,
            "command": self.command,
            "tier": self.tier,
            "checks": [{"name": c.name, "status": c.status,
                        "details": c.details} for c in self.checks],
        }
        return json.dumps(doc, indent=2)

    def to_text(self) -> str:
        lines = []
        for c in self.checks:
            detail = ", ".join(f"{k}={v}" for k, v in c.details.items())
            lines.append(f"{c.name}: {c.status}" + (f"  ({detail})" if detail else ""))
        lines.append(f"elapsed: {self.elapsed:.2f}s")
        return "\n".join(lines)


def _render_map(f: PolyMap) -> str:
    return format_map(f.f1, f.f2)


def _target_poly_text(p: MultiPoly) -> str:
    # branch output lives on the target plane; print it in x, y
    if p.vars == ("s", "t"):
        p = p.rename(("x", "y"))
    return format_poly(p)


def _read_map(text: str) -> PolyMap:
    f1, f2 = parse_map(text)
    return PolyMap(f1, f2)


def _budget(args) -> ComputationBudget | None:
    limit = getattr(args, "budget", None)
    if limit is None:
        env = os.environ.get("POLYMAP_BUDGET")
        if env:
            limit = int(env)
    if limit is None:
        return None
    return ComputationBudget(max_pair_reductions=limit)


# ---------------------------------------------------------------------------
# subcommand handlers; each returns (tier, [Check])

def _cmd_proper(args):
    f = _read_map(args.map)
    ok = is_proper(f, _budget(args))
    return None, [Check("proper", PASS,
                        {"map": _render_map(f),
                         "result": "proper" if ok else "not proper"})]


def _cmd_degree(args):
    f = _read_map(args.map)
    try:
        d = topological_degree(f, seed=args.seed, budget=_budget(args))
    except ResourceBudgetExceeded:
        return None, [Check("degree", SKIPPED, {"map": _render_map(f)})]
    return None, [Check("degree", PASS,
                        {"map": _render_map(f), "degree": d})]


def _cmd_branch(args):
    f = _read_map(args.map)
    if args.claimed is None:
        try:
            gens = branch_ideal(f, _budget(args))
        except ResourceBudgetExceeded:
            return None, [Check("branch", SKIPPED, {"map": _render_map(f)})]
        return None, [Check("branch", PASS,
                            {"map": _render_map(f),
                             "generators": [_target_poly_text(g) for g in gens]})]
    claim = parse_poly(args.claimed)
    check = verify_branch(f, claim, run_elimination=True, budget=_budget(args))
    if not (check.substitution_divisible and check.claimed_squarefree):
        status = FAIL
    elif check.elimination_status == "skipped-budget":
        status = SKIPPED
    else:
        status = PASS if check.elimination_status == "pass" else FAIL
    return None, [Check("branch-claim", status,
                        {"map": _render_map(f), "claimed": format_poly(claim),
                         **check.tier_report()})]


def _cmd_milnor(args):
    F = parse_poly(args.poly)
    if args.at:
        parts = args.at.split(",")
        if len(parts) != 2:
            raise ValueError("--at expects two comma-separated rationals")
        a, b = (Fraction(p.strip()) for p in parts)
        x = MultiPoly.variable("x", F.vars, F.field)
        y = MultiPoly.variable("y", F.vars, F.field)
        F = substitute(F, {"x": x + a, "y": y + b})
    result = milnor_at_origin(F)
    value = result.value if result.isolated else "infinite"
    return None, [Check("milnor", PASS,
                        {"curve": format_poly(F), "milnor": value,
                         "isolated": result.isolated})]


def _cmd_distinguish(args):
    f = _read_map(args.first)
    g = _read_map(args.second)
    cert = distinguish_by_milnor(f, g, budget=_budget(args))
    if cert is None:
        details = {"certificate": None, "result": "inconclusive"}
    else:
        details = {"certificate": {"milnor_first": cert.milnor_first,
                                   "milnor_second": cert.milnor_second},
                   "result": "not equivalent"}
    return None, [Check("distinguish", PASS, details)]


def _cmd_family(args):
    params = {}
    for key in ("d", "n", "m"):
        value = getattr(args, key)
        if value is not None:
            params[key] = value
    for key in ("p", "q"):
        value = getattr(args, key)
        if value is not None:
            params[key] = parse_poly(value)
    f = make_family(args.name, **params)
    details = {"map": _render_map(f),
               "jacobian": format_poly(critical_ideal(f)),
               "proper": is_proper(f, _budget(args))}
    return None, [Check(f"family:{args.name}", PASS, details)]


def _cmd_group(args):
    record = parse_group_spec(args.spec)
    checks = []
    base = {"group": record.label, "order": record.expected_order,
            "degrees": list(record.degrees), "conductor": record.conductor}
    if record.gap_label:
        base["gap_label"] = record.gap_label
    if args.fingerprint:
        fp = fingerprint(enumerate_group(record))
        ok = fp["order"] == record.expected_order
        checks.append(Check("fingerprint", PASS if ok else FAIL,
                            {**base, **fp,
                             "order_histogram": {str(k): v for k, v in
                                                 fp["order_histogram"].items()}}))
    if args.invariants:
        p1, p2 = basic_invariants(record)
        checks.append(Check("invariants", PASS,
                            {**base, "phi1": format_poly(p1),
                             "phi2": format_poly(p2)}))
    if args.quotient:
        f = quotient_map(record)
        checks.append(Check("quotient", PASS,
                            {**base, "map": _render_map(f),
                             "claimed_branch": format_poly(claimed_branch(record))}))
    if args.verify:
        els = enumerate_group(record)
        ok = len(els) == record.expected_order
        details = {**base, "enumerated": len(els)}
        if record.kind == "exceptional":
            pres_ok = verify_presentation(record)
            details["presentation"] = pres_ok
            ok = ok and pres_ok
        checks.append(Check("verify", PASS if ok else FAIL, details))
    if not checks:
        checks.append(Check("group", PASS, base))
    return None, checks


def _cmd_classes(args):
    records = classes_of_degree(args.degree)
    return None, [Check("classes", PASS,
                        {"degree": args.degree,
                         "count": len(records),
                         "groups": [r.label for r in records]})]


def _row_identifier(record) -> str:
    kind = record.kind
    if kind == "cyclic":
        return f"f_{record.params[0]}"
    if kind == "product":
        return "f_{%d,%d}" % record.params
    if kind == "imprimitive":
        return "f_{%d,%d,2}" % record.params
    return f"f~{record.params[0]}"


def _cmd_verify_table4(args):
    budget = _budget(args)
    checks = []
    for record in default_table4_rows():
        report = verify_table4_row(record, tier=args.tier, budget=budget)
        tiers = report["tiers"]
        if not report["ok"]:
            status = FAIL
        elif args.tier == "full" and tiers["elimination"] == "skipped-budget":
            status = SKIPPED
        else:
            status = PASS
        checks.append(Check(_row_identifier(record), status,
                            {"group": record.label, **tiers}))
    return args.tier, checks


def _theorem_a_checks(d: int, budget):
    checks = []
    f = make_family("pinch", d=d)
    split = jacobian_power_factorization(f, d)
    expect_h2 = parse_poly(f"(2 - {d})*x*y + x - ({d} - 1)*y")
    x = MultiPoly.variable("x", ("x", "y"))
    ok = (split is not None and split[0] == x
          and split[1] == expect_h2)
    checks.append(Check(f"jacobian-split(d={d})", PASS if ok else FAIL,
                        {} if split is None else
                        {"h1": format_poly(split[0]), "h2": format_poly(split[1])}))
    relx = parse_poly(f"u^{d} - s*u^{d-1} + t*u + t", variables=("u", "s", "t"))
    rely = parse_poly(f"u*(s - u)^{d-1} - t*(1 + u)^{d-1}",
                      variables=("u", "s", "t"))
    xv = MultiPoly.variable("x", ("x", "y"))
    yv = MultiPoly.variable("y", ("x", "y"))
    ok_x = integral_relation_check(f, xv, relx)
    ok_y = integral_relation_check(f, yv, rely)
    checks.append(Check(f"integral-relations(d={d})",
                        PASS if ok_x and ok_y else FAIL,
                        {"x_relation": ok_x, "y_relation": ok_y}))
    kind = classify_low_degree_curve(expect_h2)
    checks.append(Check(f"critical-components(d={d})",
                        PASS if kind == "conic-two-points-at-infinity" else FAIL,
                        {"h2_class": kind,
                         "h1_class": classify_low_degree_curve(x)}))
    return checks


def _cmd_verify_theorem_a(args):
    budget = _budget(args)
    checks = []
    ds = [args.d] if args.d else [3, 4, 5]
    for d in ds:
        checks.extend(_theorem_a_checks(d, budget))
    # the degree-2 remark: conjugating (x, y^2) into the family shape
    half = Fraction(1, 2)
    phi1 = PlaneAutomorphism.linear(half, half, half, -half)
    phi2 = PlaneAutomorphism(
        (parse_poly("x^2 + 2*x - y"), parse_poly("x^2 - y")),
        (parse_poly("1/2*x - 1/2*y"),
         parse_poly("1/4*x^2 - 1/2*x*y + 1/4*y^2 - y")))
    composed = compose(make_family("power", d=2), pre=phi1, post=phi2)
    expect = PolyMap(parse_poly("x + y + x*y"), parse_poly("x*y"))
    checks.append(Check("degree-2-remark", PASS if composed == expect else FAIL,
                        {"composite": _render_map(composed)}))
    return None, checks


def _cmd_verify_theorem_b(args):
    budget = _budget(args)
    d = args.d
    checks = []
    values = {}
    for n in range(1, args.n_max + 1):
        f = make_family("shifted_power", d=d, n=n)
        J = critical_ideal(f)
        mu = milnor_at_origin(J)
        values[n] = mu.value
        expected = (d - 2) * (n - 1)
        checks.append(Check(f"milnor(d={d},n={n})",
                            PASS if mu.value == expected else FAIL,
                            {"milnor": mu.value, "expected": expected}))
    for n in range(2, args.n_max + 1):
        for m in range(n + 1, args.n_max + 1):
            f = make_family("shifted_power", d=d, n=n)
            g = make_family("shifted_power", d=d, n=m)
            cert = distinguish_by_milnor(f, g, budget=budget)
            checks.append(Check(f"distinguish(d={d},n={n},m={m})",
                                PASS if cert is not None else FAIL,
                                {} if cert is None else
                                {"milnor_first": cert.milnor_first,
                                 "milnor_second": cert.milnor_second}))
    return None, checks


# ---------------------------------------------------------------------------
# argument plumbing

def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="polymap",
        description="Proper polynomial self-maps of the plane: properness, "
                    "degree, branch loci, Milnor numbers, and the reflection "
                    "group catalog.")
    top.add_argument("--json", action="store_true", help="emit a JSON report")
    sub = top.add_subparsers(dest="command", metavar="command")

    def common(p, budget=True, seed=False):
        # accepted after the subcommand too; SUPPRESS keeps a pre-subcommand
        # --json from being clobbered by the subparser default
        p.add_argument("--json", action="store_true",
                       default=argparse.SUPPRESS, help=argparse.SUPPRESS)
        if budget:
            p.add_argument("--budget", type=int, default=None,
                           help="bound on Groebner pair reductions")
        if seed:
            p.add_argument("--seed", type=int, default=0,
                           help="seed for random point draws")

    p = sub.add_parser("proper", help="decide properness of a map")
    p.add_argument("map")
    common(p)
    p.set_defaults(handler=_cmd_proper)

    p = sub.add_parser("degree", help="topological degree of a proper map")
    p.add_argument("map")
    common(p, seed=True)
    p.set_defaults(handler=_cmd_degree)

    p = sub.add_parser("branch", help="branch locus generators of a map")
    p.add_argument("map")
    p.add_argument("--claimed", default=None,
                   help="verify this claimed branch curve instead")
    common(p)
    p.set_defaults(handler=_cmd_branch)

    p = sub.add_parser("milnor", help="Milnor number of a curve at a point")
    p.add_argument("poly")
    p.add_argument("--at", default=None, metavar="a,b",
                   help="evaluate at (a, b) instead of the origin")
    common(p, budget=False)
    p.set_defaults(handler=_cmd_milnor)

    p = sub.add_parser("distinguish",
                       help="non-equivalence certificate from Milnor numbers")
    p.add_argument("first")
    p.add_argument("second")
    common(p)
    p.set_defaults(handler=_cmd_distinguish)

    p = sub.add_parser("family", help="build a named family map")
    p.add_argument("name")
    p.add_argument("--d", type=int, default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--p", default=None, help="polynomial parameter")
    p.add_argument("--q", default=None, help="polynomial parameter")
    common(p)
    p.set_defaults(handler=_cmd_family)

    p = sub.add_parser("group", help="inspect a reflection-group catalog entry")
    p.add_argument("spec", help="e.g. G4, G(6,2,2), Z_5, Z_2xZ_3")
    p.add_argument("--fingerprint", action="store_true")
    p.add_argument("--invariants", action="store_true")
    p.add_argument("--quotient", action="store_true")
    p.add_argument("--verify", action="store_true")
    common(p, budget=False)
    p.set_defaults(handler=_cmd_group)

    p = sub.add_parser("classes", help="equivalence classes of a given degree")
    p.add_argument("--degree", type=int, required=True)
    common(p, budget=False)
    p.set_defaults(handler=_cmd_classes)

    p = sub.add_parser("verify-table4",
                       help="check the claimed branch curves of the catalog")
    p.add_argument("--tier", choices=("divisibility", "full"),
                   default="divisibility")
    common(p)
    p.set_defaults(handler=_cmd_verify_table4)

    p = sub.add_parser("verify-theorem-a",
                       help="pinch-family structure checks")
    p.add_argument("--d", type=int, default=None)
    common(p)
    p.set_defaults(handler=_cmd_verify_theorem_a)

    p = sub.add_parser("verify-theorem-b",
                       help="Milnor-number separation of the shifted powers")
    p.add_argument("--d", type=int, default=3)
    p.add_argument("--n-max", type=int, default=4)
    common(p)
    p.set_defaults(handler=_cmd_verify_theorem_b)

    return top


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = _build_parser()
    args = parser.parse_args(argv)
    if not getattr(args, "handler", None):
        parser.print_usage(sys.stderr)
        return 2
    started = time.time()
    try:
        tier, checks = args.handler(args)
    except (PolyParseError, PreconditionError, ValueError, ArithmeticError,
            RuntimeError) as exc:
        print(f"polymap: {exc}", file=sys.stderr)
        return 1
    report = RunReport(command=["polymap"] + argv, checks=checks, tier=tier,
                       elapsed=time.time() - started)
    print(report.to_json() if args.json else report.to_text())
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
