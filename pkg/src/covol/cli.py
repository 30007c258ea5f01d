"""Command-line interface.

Exit codes: 0 success, 1 a check failed (witness JSON on stdout), 2 bad input
(message on stderr).
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from typing import Sequence

from . import catalog, certify, macaulay, multidegree as md, survey as sv, toric
from .perm import BoundExceeded, Permutation
from .poly import MultiPoly, default_names, double_names, flip_signs, from_json_obj, poly_from_string, to_json_obj
from .schubert import IncomparablePair, richardson, schubert, skew_schubert


class InputError(Exception):
    pass


class CheckFailed(Exception):
    def __init__(self, witness: dict):
        super().__init__("check failed")
        self.witness = witness


def _emit(obj) -> None:
    print(json.dumps(obj, sort_keys=True))


def _read_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def _natural_key(name: str):
    return [int(p) if p.isdigit() else p for p in re.split(r"(\d+)", name)]


def _parse_poly(text: str, names: str | None) -> tuple[MultiPoly, list[str]]:
    """A polynomial from JSON text, ``@file`` or an expression in named variables."""
    if text.startswith("@"):
        try:
            with open(text[1:]) as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read {text[1:]}: {exc.strerror}") from exc
    text = text.strip()
    if text.startswith("{"):
        return from_json_obj(json.loads(text))
    if names:
        vars_ = [v.strip() for v in names.split(",") if v.strip()]
    else:
        vars_ = sorted(set(re.findall(r"[A-Za-z_]\w*", text)), key=_natural_key)
    if not vars_:
        vars_ = ["t1"]
    return poly_from_string(text, vars_), vars_


def _perm(text: str) -> Permutation:
    try:
        return Permutation.parse(text)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def _print_poly(poly: MultiPoly, names, as_json: bool) -> None:
    if as_json:
        _emit(to_json_obj(poly, names))
    else:
        print(poly.to_string(names))


def cmd_schubert(args) -> int:
    w = _perm(args.perm)
    poly = schubert(w, double=args.double)
    _print_poly(poly, double_names(w.size) if args.double else default_names(w.size), args.json)
    return 0


def cmd_richardson(args) -> int:
    w, u = _perm(args.w), _perm(args.u)
    if w.size != u.size:
        raise InputError("permutations must have the same size")
    try:
        if args.normal_form:
            poly = skew_schubert(w, u)
        else:
            poly = richardson(w, u, double=args.double)
    except IncomparablePair as exc:
        raise InputError(str(exc)) from exc
    _print_poly(poly, double_names(w.size) if args.double and not args.normal_form else default_names(w.size), args.json)
    return 0


def _checks(spec: str) -> list[str]:
    if spec == "all":
        return list(certify.CHECKS)
    names = [c.strip() for c in spec.split(",") if c.strip()]
    bad = [c for c in names if c not in certify.CHECKS]
    if bad:
        raise InputError(f"unknown checks {bad}; choose from {', '.join(certify.CHECKS)} or all")
    return names


def cmd_certify(args) -> int:
    poly, names = _parse_poly(args.poly, args.vars)
    if args.flip:
        unknown = [v for v in args.flip.split(",") if v not in names]
        if unknown:
            raise InputError(f"cannot flip unknown variables {unknown}")
        idx = [names.index(v) for v in args.flip.split(",")]
        poly = flip_signs(poly, idx)
    checks = _checks(args.check)
    report = certify.certify_report(poly, checks)
    out = {"poly": poly.to_string(names), "vars": names, "report": report.to_json()}
    if not report.passed(checks):
        raise CheckFailed(out)
    _emit(out)
    return 0


def _ring_and_ideal(args):
    grading = md.GradingSpec.from_json(_read_json(args.ring))
    ideal = md.MonomialIdeal.from_json(_read_json(args.ideal), grading.nvars)
    return grading, ideal


def cmd_multidegree(args) -> int:
    grading, ideal = _ring_and_ideal(args)
    names = default_names(grading.p)
    if args.direct:
        poly = md.multidegree_direct(ideal, grading)
    elif args.twisted:
        q = args.q if args.q is not None else grading.q
        if q is None:
            raise InputError("--twisted needs a split: give --q or a \"q\" field in the grading")
        poly = md.multidegree_twisted(ideal, grading, q)
    else:
        poly = md.multidegree(ideal, grading)
    if args.json:
        _emit({"multidegree": to_json_obj(poly, names), "codim": md.codim(ideal),
               "k_polynomial": to_json_obj(md.k_polynomial(ideal, grading), names) if grading.is_positive() else None})
    else:
        print(poly.to_string(names))
    return 0


def cmd_standardize(args) -> int:
    grading, ideal = _ring_and_ideal(args)
    new_ideal, new_grading, blocks = md.standardize_with_blocks(ideal, grading)
    _emit({"ring": new_grading.to_json(), "ideal": new_ideal.to_json(), "blocks": blocks})
    return 0


def _presentation(args) -> macaulay.Presentation:
    if args.builtin:
        if args.builtin not in catalog.BUILTIN:
            raise InputError(f"unknown builtin {args.builtin!r}; choose from {', '.join(catalog.BUILTIN)}")
        return catalog.BUILTIN[args.builtin]()
    if not args.presentation:
        raise InputError("give --presentation FILE or --builtin NAME")
    return macaulay.presentation_from_json(_read_json(args.presentation))


def _y_names(p: macaulay.Presentation) -> list[str]:
    return [re.sub(r"^x", "y", n) if n.startswith("x") else "y_" + n for n in p.names]


def cmd_dualgen(args) -> int:
    p = _presentation(args)
    if p.positive_monomial is None:
        raise InputError("the presentation needs a positive_monomial to orient the degree map")
    flat = macaulay.check_flat(p.ring)
    if not flat:
        raise CheckFailed({"check": "flat", **flat.witness})
    rho = macaulay.derive_degree_map(p.ring, p.positive_monomial)
    _print_poly(macaulay.dual_generator(p.ring, rho), _y_names(p), args.json)
    return 0


def _degrees(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise InputError(f"bad degree list {text!r}") from exc


def _at(path: str) -> str:
    return path if path.startswith("@") else "@" + path


def cmd_annihilator(args) -> int:
    G, names = _parse_poly(_at(args.dual), args.vars)
    degs = _degrees(args.degrees) if args.degrees else (1,) * G.nvars
    if len(degs) != G.nvars:
        raise InputError(f"{len(degs)} degrees given for {G.nvars} variables")
    gens = macaulay.annihilator(G, degs, args.through)
    xnames = [re.sub(r"^y", "x", n) for n in names]
    if args.json:
        _emit({"vars": xnames, "gens": [to_json_obj(g, xnames) for g in gens]})
    else:
        for g in gens:
            print(g.to_string(xnames))
    return 0


def cmd_verify(args) -> int:
    p = _presentation(args)
    G, _ = _parse_poly(_at(args.dual), ",".join(_y_names(p)))
    if G.nvars != p.ring.nvars:
        raise InputError(f"dual polynomial has {G.nvars} variables, presentation has {p.ring.nvars}")
    result = {}
    flat = macaulay.check_flat(p.ring)
    result["flat"] = bool(flat)
    if not flat:
        raise CheckFailed({"check": "flat", **flat.witness})
    pair = macaulay.verify_inverse_pair(p.ring, G)
    result["inverse_pair"] = bool(pair)
    if not pair:
        raise CheckFailed({"check": "inverse_pair", **pair.witness})
    if p.positive_monomial is not None:
        rho = macaulay.derive_degree_map(p.ring, p.positive_monomial)
        poincare = macaulay.check_poincare(p.ring, rho)
        result["poincare"] = bool(poincare)
        if not poincare:
            raise CheckFailed({"check": "poincare", **poincare.witness})
    _emit(result)
    return 0


BUILTIN_FANS = {
    "p1": toric.projective_line,
    "p2": toric.projective_plane,
    "p3": toric.projective_space_3,
    "p1xp1xp1": toric.p1_cubed,
}


def _fan(spec: str) -> toric.Fan:
    if spec in BUILTIN_FANS:
        return BUILTIN_FANS[spec]()
    m = re.fullmatch(r"hirzebruch:(-?\d+)", spec)
    if m:
        return toric.hirzebruch(int(m.group(1)))
    return toric.Fan.from_json(_read_json(spec))


def _divisors(text: str | None, fan: toric.Fan):
    if not text:
        return None
    out = []
    for chunk in text.split(";"):
        vec = tuple(int(x) for x in chunk.split(","))
        if len(vec) != fan.nrays:
            raise InputError(f"divisor {list(vec)} needs {fan.nrays} coefficients")
        out.append(vec)
    return out


def _reduced(text: str | None, fan: toric.Fan):
    if not text:
        return None
    idx = [int(x) - 1 for x in text.split(",")]
    if any(not 0 <= i < fan.nrays for i in idx):
        raise InputError(f"ray indices must lie in 1..{fan.nrays}")
    return idx


def cmd_toric(args) -> int:
    fan = _fan(args.fan)
    divisors = _divisors(args.divisors, fan)
    reduced = _reduced(args.reduced, fan)
    if reduced is not None:
        divisors = [toric.unit_divisor(fan, i) for i in reduced]
        names = [f"y{i + 1}" for i in reduced]
    else:
        names = default_names(len(divisors) if divisors else fan.nrays, "y")
    if args.action == "presentation":
        p = toric.reduced_presentation(fan, reduced) if reduced is not None else toric.jd_presentation(fan)
        _emit(macaulay.presentation_to_json(p))
        return 0
    if divisors is not None:
        for D in divisors:
            v = toric.nef_verdict(fan, D)
            if not v and (args.action == "mixedvol" or args.route == "mixed"):
                raise CheckFailed({"check": "nef", "divisor": list(D), **v.witness})
    if args.action == "dualgen":
        if args.route == "mixed":
            g = toric.toric_dual_generator(fan, divisors or [toric.unit_divisor(fan, i) for i in range(fan.nrays)])
        else:
            g = toric.intersection_dual_generator(fan, divisors)
        _print_poly(g, names, args.json)
    elif args.action == "volume":
        _print_poly(toric.volume_polynomial(fan, divisors, route=args.route), names, args.json)
    elif args.action == "mixedvol":
        divisors = divisors or [toric.unit_divisor(fan, i) for i in range(fan.nrays)]
        polys = [toric.divisor_polytope(fan, D) for D in divisors]
        mv = toric.mixed_volumes(polys, fan.dim)
        _emit({"alpha_order": names, "mixed_volumes": [{"alpha": list(a), "mv": str(v)} for a, v in sorted(mv.items(), reverse=True)],
               "polytopes": [p.to_json() for p in polys]})
    return 0


def cmd_survey(args) -> int:
    families = args.families.split(",") if args.families else list(sv.FAMILIES)
    checks = _checks(args.checks)
    try:
        records = sv.survey(args.n, families, checks, args.out, args.jobs, args.resume, args.timings)
    except sv.SurveyFailure as exc:
        raise CheckFailed(exc.record) from exc
    if not args.out:
        for rec in records:
            print(json.dumps(rec, sort_keys=True, separators=(",", ":")))
    else:
        explored = [r for r in records if not r["asserted"]]
        print(json.dumps({
            "records": len(records),
            "out": args.out,
            "exploration_failures": sum(1 for r in explored if r["report"] and any(
                r["report"].get(c) is False for c in checks)),
        }, sort_keys=True))
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="covol", description="Schubert, Richardson, multidegree and Macaulay dual computations with log-concavity certificates.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("schubert", help="(double) Schubert polynomial of a permutation")
    p.add_argument("--perm", required=True)
    p.add_argument("--double", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_schubert)

    p = sub.add_parser("richardson", help="Richardson polynomial R_{w/u}")
    p.add_argument("--w", required=True)
    p.add_argument("--u", required=True)
    p.add_argument("--double", action="store_true")
    p.add_argument("--normal-form", action="store_true", help="reduce modulo the elementary symmetric ideal")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_richardson)

    p = sub.add_parser("certify", help="run log-concavity checks on a polynomial")
    p.add_argument("--poly", required=True, help="expression, JSON object, or @file")
    p.add_argument("--vars", help="comma-separated variable order")
    p.add_argument("--check", default="all", help="comma list of checks, or all")
    p.add_argument("--flip", help="comma-separated variables to negate first")
    p.set_defaults(func=cmd_certify)

    for name, fn, text in (("multidegree", cmd_multidegree, "multidegree of a monomial ideal"),
                           ("standardize", cmd_standardize, "standardize a positive grading")):
        p = sub.add_parser(name, help=text)
        p.add_argument("--ring", required=True, help="grading JSON")
        p.add_argument("--ideal", required=True, help="ideal JSON")
        if name == "multidegree":
            p.add_argument("--twisted", action="store_true", help="twisted positive grading via the flip")
            p.add_argument("--q", type=int, help="number of nonnegative coordinates")
            p.add_argument("--direct", action="store_true", help="Laurent series route, any grading")
            p.add_argument("--json", action="store_true")
        p.set_defaults(func=fn)

    p = sub.add_parser("dualgen", help="Macaulay dual generator of a presentation")
    p.add_argument("--presentation")
    p.add_argument("--builtin", help=f"one of {', '.join(catalog.BUILTIN)}")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_dualgen)

    p = sub.add_parser("annihilator", help="annihilator ideal of an inverse polynomial")
    p.add_argument("--dual", required=True, help="file with a polynomial (JSON or expression)")
    p.add_argument("--degrees", help="comma-separated variable degrees (default all 1)")
    p.add_argument("--vars", help="comma-separated variable order of the inverse polynomial")
    p.add_argument("--through", type=int)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_annihilator)

    p = sub.add_parser("verify", help="check a presentation against an inverse polynomial")
    p.add_argument("--presentation")
    p.add_argument("--builtin")
    p.add_argument("--dual", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("toric", help="toric presentations, dual generators and volumes")
    p.add_argument("--fan", required=True, help="fan JSON, or p1, p2, p3, p1xp1xp1, hirzebruch:R")
    p.add_argument("action", choices=["presentation", "dualgen", "volume", "mixedvol"])
    p.add_argument("--divisors", help="semicolon-separated coefficient vectors")
    p.add_argument("--reduced", help="comma-separated ray indices (1-based)")
    p.add_argument("--route", choices=["degree_map", "mixed"], default="degree_map")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_toric)

    p = sub.add_parser("survey", help="certify all comparable pairs of S_n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--families", help=f"comma list from {', '.join(sv.FAMILIES)}")
    p.add_argument("--checks", default=",".join(sv.DEFAULT_CHECKS))
    p.add_argument("--out", help="JSONL output path")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--resume", action="store_true")
    p.add_argument("--timings", action="store_true", help="record wall time (output no longer reproducible)")
    p.set_defaults(func=cmd_survey)
    return ap


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except CheckFailed as exc:
        _emit(exc.witness)
        return 1
    except (InputError, BoundExceeded, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"covol {args.command}: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())
