"""Command-line front end.

Space syntax is family:param:param with rationals as a/b and `inf` for
infinity, e.g. `lp:3/2`, `slobo:11/5:2`, `besov:2:4:inf`.  Domains are
`cube:d`, `ball:d[:radius]`, `space:d`, or `seq`.  Exit codes for decide:
0 Feasible, 10 Infeasible, 11 Borderline, 12 Undetermined; usage errors 64.
"""

from __future__ import annotations

import argparse
import itertools
import os
import sys
from fractions import Fraction
from typing import List, Optional

from . import __version__
from .decider import STATUS_EXIT_CODES, decide, decide_bounded_target
from .irkbs import SeriesSpec, check_applicability, cosine_series, split_series
from .norms import NormFunctional, QuadratureConfig
from .packing import brute_force_packing, exponent_fit, greedy_packing
from .rademacher import scan
from .report import Report
from .spaces import (DomainSpec, SpaceSpec, ball, besov, c_infinity,
                     coherent_closure, continuous_bounded, cube, holder,
                     lebesgue_lp, mixed_sobolev, sequence_lp, slobodeckij,
                     sobolev, sup_space, triebel_lizorkin, whole_space)
from .xrational import INF, ExtRational, xr

USAGE_EXIT = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.exit(USAGE_EXIT, f"{self.prog}: error: {message}\n")


def _parse_number(text: str) -> ExtRational:
    if text == "inf":
        return INF
    return xr(Fraction(text))


def parse_domain(text: str) -> DomainSpec:
    parts = text.split(":")
    kind = parts[0]
    if kind == "seq":
        from .spaces import SEQUENCE_INDEX
        return SEQUENCE_INDEX
    if kind not in ("cube", "ball", "space") or len(parts) < 2:
        raise ValueError(f"bad domain {text!r}; use cube:d, ball:d[:r], space:d, seq")
    d = int(parts[1])
    if kind == "cube":
        return cube(d)
    if kind == "space":
        return whole_space(d)
    radius = Fraction(parts[2]) if len(parts) > 2 else Fraction(1)
    return ball(d, radius)


def parse_space(text: str, domain: Optional[DomainSpec]) -> SpaceSpec:
    parts = text.split(":")
    fam = parts[0]
    # mixsob carries a multi-index block that is not a plain number
    args = [] if fam == "mixsob" else [_parse_number(p) for p in parts[1:]]

    def dom() -> DomainSpec:
        if domain is None:
            raise ValueError(f"space {text!r} needs --domain")
        return domain

    if fam == "lp":
        return sequence_lp(args[0])
    if fam == "lebesgue":
        return lebesgue_lp(args[0], dom())
    if fam == "holder":
        return holder(args[0], dom())
    if fam == "sobolev":
        return sobolev(args[0], args[1], dom())
    if fam == "slobo":
        return slobodeckij(args[0], args[1], dom())
    if fam == "besov":
        return besov(args[0], args[1], args[2], dom())
    if fam == "tl":
        return triebel_lizorkin(args[0], args[1], args[2], dom())
    if fam == "mixsob":
        # mixsob:p:a1,a2;b1,b2;...  multi-indices separated by ';'
        p = _parse_number(parts[1])
        idx = [tuple(int(c) for c in grp.split(",")) for grp in parts[2].split(";")]
        closed = coherent_closure(idx, len(idx[0]))
        return mixed_sobolev(closed, p, dom())
    if fam == "sup":
        return sup_space(dom())
    if fam == "c0":
        return continuous_bounded(dom())
    if fam == "cinf":
        return c_infinity(dom())
    raise ValueError(f"unknown space family {fam!r}")


def _quadrature_from(args) -> QuadratureConfig:
    profile = {}
    env = os.environ.get("RKHS_SANDWICH_QUADRATURE", "")
    for item in filter(None, env.split(",")):
        key, _, val = item.partition("=")
        profile[key.strip()] = val.strip()
    resolution = int(profile.get("resolution", 64))
    tolerance = float(profile.get("tolerance", 1e-5))
    mc = int(profile.get("mc_samples", 64))
    if getattr(args, "tolerance", None):
        tolerance = float(args.tolerance)
    if getattr(args, "mc_samples", None):
        mc = int(args.mc_samples)
    return QuadratureConfig(resolution=resolution, tolerance=tolerance,
                            mc_samples=mc)


def _verdict_payload(verdict) -> dict:
    payload = {"status": verdict.status, "rule": verdict.rule}
    if verdict.witness is not None:
        payload["witness_chain"] = [s.label() for s in verdict.witness.links]
        if verdict.witness.u_interval is not None:
            payload["u_interval"] = str(verdict.witness.u_interval)
    if verdict.obstruction is not None:
        rec = verdict.obstruction
        payload["obstruction"] = {
            "construction": rec.construction,
            "mode": rec.mode,
            "predicted_exponent": str(rec.predicted_exponent),
            "violated": str(rec.violated),
        }
    if verdict.reason:
        payload["reason"] = verdict.reason
    return payload


def cmd_decide(args) -> int:
    domain = parse_domain(args.domain) if args.domain else None
    E = parse_space(args.source, domain)
    if args.to in ("sup", "c0"):
        target_kind = "sup" if args.to == "sup" else "continuous-bounded"
        verdict = decide_bounded_target(E, target_kind)
    else:
        F = parse_space(args.to, domain)
        verdict = decide(E, F)
    report = Report.build("decide",
                          {"from": args.source, "to": args.to,
                           "domain": args.domain},
                          _verdict_payload(verdict),
                          rules=[verdict.rule] if verdict.rule else [])
    print(report.to_json(), end="")
    return STATUS_EXIT_CODES[verdict.status]


def cmd_scan(args) -> int:
    domain = parse_domain(args.domain) if args.domain else None
    E = parse_space(args.source, domain)
    if args.to in ("sup", "c0"):
        verdict = decide_bounded_target(E, "sup" if args.to == "sup"
                                        else "continuous-bounded")
    else:
        verdict = decide(E, parse_space(args.to, domain))
    if verdict.obstruction is None:
        print(f"error: verdict is {verdict.status}; scans need an Infeasible "
              "pair with an obstruction recipe", file=sys.stderr)
        return 2
    deltas = [Fraction(x) for x in args.deltas.split(",")]
    config = _quadrature_from(args)
    e_fun, f_fun = _scan_functionals(verdict.obstruction, E)
    series = scan(verdict.obstruction, e_fun, f_fun, deltas, domain=domain,
                  seed=args.seed, config=config)
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write(series.to_csv())
    payload = {
        "points": [{"delta": d, "n": n, "ratio": r} for d, n, r in series.points],
        "fitted_slope": series.fitted_slope,
        "residual": series.residual,
        "mode": series.mode,
        "log_axis": series.log_axis,
        "predicted_exponent": str(verdict.obstruction.predicted_exponent),
    }
    report = Report.build("scan",
                          {"from": args.source, "to": args.to,
                           "domain": args.domain, "deltas": args.deltas},
                          payload, rules=[verdict.rule], seed=args.seed,
                          quadrature=config)
    print(report.to_json(), end="")
    return 0


def _scan_functionals(recipe, E: SpaceSpec):
    c = recipe.construction
    if c == "hoelder-tent-bumps":
        return (NormFunctional("hoelder", holder_exponent=float(recipe.params["alpha"])),
                NormFunctional("sup"))
    if c == "smooth-scaled-bumps":
        return NormFunctional("sup"), NormFunctional("sup")
    return None, None  # sequence / indicator recipes are closed-form


def cmd_table(args) -> int:
    values = [_parse_number(v) for v in args.values.split(",")]
    if len(values) ** 2 > 10_000:
        print("error: refusing a table with more than 10^4 cells", file=sys.stderr)
        return 2
    domain = parse_domain(args.domain) if args.domain else None
    cells = []
    for a, b in itertools.product(values, repeat=2):
        try:
            if args.kind == "lp":
                if a > b:
                    continue
                verdict = decide(sequence_lp(a), sequence_lp(b))
            elif args.kind == "lebesgue":
                if b > a:
                    continue
                dom = domain or cube(1)
                verdict = decide(lebesgue_lp(a, dom), lebesgue_lp(b, dom))
            elif args.kind == "slobodeckij":
                dom = domain or cube(2)
                if not a > b:
                    continue
                verdict = decide(slobodeckij(a, 2, dom), slobodeckij(b, 2, dom))
            else:
                print(f"error: unknown table kind {args.kind!r}", file=sys.stderr)
                return 2
        except ValueError:
            continue
        cells.append({"row": str(a), "col": str(b), "status": verdict.status,
                      "rule": verdict.rule})
    report = Report.build("table", {"kind": args.kind, "values": args.values,
                                    "domain": args.domain},
                          {"cells": cells})
    print(report.to_json(), end="")
    return 0


def cmd_packing(args) -> int:
    domain = parse_domain(args.domain)
    alpha = Fraction(args.alpha)
    deltas = [Fraction(x) for x in args.deltas.split(",")]
    counts = []
    for dl in deltas:
        result = (brute_force_packing if args.brute_force else greedy_packing)(
            domain, dl, alpha)
        counts.append({"delta": str(dl), "count": result.count,
                       "exact": result.exact})
    payload = {"counts": counts}
    if len(deltas) >= 3:
        payload["fitted_exponent"] = exponent_fit(domain, deltas, alpha)
    report = Report.build("packing", {"domain": args.domain, "alpha": args.alpha,
                                      "deltas": args.deltas}, payload)
    print(report.to_json(), end="")
    return 0


def cmd_irkbs(args) -> int:
    if args.series == "cos":
        spec = cosine_series()
    else:
        coeffs = tuple(Fraction(c) for c in args.series.split(","))
        spec = SeriesSpec(coeffs)
    rho = None if args.measure_class == "all" or args.domain_radius in (None, "inf") \
        else Fraction(args.domain_radius)
    spec = SeriesSpec(spec.coefficients, rho)
    report_obj = check_applicability(
        spec, "all-finite-signed" if args.measure_class in (None, "all")
        else "user-restricted")
    plus, minus = split_series(spec)
    payload = {
        "sigma_plus": [str(c) for c in plus],
        "sigma_minus": [str(c) for c in minus],
        "radius_plus": {"value": report_obj.radius_plus.value,
                        "method": report_obj.radius_plus.method},
        "radius_minus": {"value": report_obj.radius_minus.value,
                         "method": report_obj.radius_minus.method},
        "psi_bounded_on_domain": report_obj.psi_bounded_on_domain,
        "lemma_applicable": report_obj.lemma_applicable,
        "required_integrability": report_obj.required_integrability,
        "diagonal_bound": report_obj.diagonal_bound,
    }
    report = Report.build("irkbs", {"series": args.series,
                                    "domain_radius": args.domain_radius,
                                    "measure_class": args.measure_class}, payload)
    print(report.to_json(), end="")
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="rkhs-sandwich",
                     description="Decide whether an intermediate RKHS exists "
                                 "between two function spaces, and probe the "
                                 "verdicts numerically.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("decide", help="one-shot feasibility query")
    p.add_argument("--from", dest="source", required=True)
    p.add_argument("--to", required=True)
    p.add_argument("--domain")
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("scan", help="blow-up scan for an Infeasible pair")
    p.add_argument("--from", dest="source", required=True)
    p.add_argument("--to", required=True)
    p.add_argument("--domain")
    p.add_argument("--deltas", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--csv")
    p.add_argument("--mc-samples", type=int)
    p.add_argument("--tolerance")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("table", help="decision matrix over a parameter grid")
    p.add_argument("--kind", required=True, choices=["lp", "lebesgue", "slobodeckij"])
    p.add_argument("--values", required=True)
    p.add_argument("--domain")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("packing", help="greedy packing counts and exponent fit")
    p.add_argument("--domain", required=True)
    p.add_argument("--deltas", required=True)
    p.add_argument("--alpha", default="1")
    p.add_argument("--brute-force", action="store_true")
    p.set_defaults(func=cmd_packing)

    p = sub.add_parser("irkbs", help="positive-decomposition applicability check")
    p.add_argument("--series", required=True,
                   help="'cos' or a comma list of rational coefficients")
    p.add_argument("--domain-radius")
    p.add_argument("--measure-class", choices=["all", "restricted"])
    p.set_defaults(func=cmd_irkbs)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_EXIT


if __name__ == "__main__":
    sys.exit(main())
