"""Command-line front end: ``poissonfield <subcommand> --flag EXPR [--mode q|qt] [--json]``.

Exit codes: 0 decided (or computed), 1 decided negative, 2 unsupported or
unresolved, 3 input error.  Every expression in JSON output is printed by
the canonical printer and parses back to the same value.
"""

import argparse
import json
import math
import sys

from .arith import RatFunc2
from .bracket import PoissonField, bracket, jacobiator
from .classify import classify_flag
from .errors import InputError, UnsupportedError
from .flagbounds import BoundedElement, bounds_certified, build_infinite_flag, dpb_upper_for_flag
from .isomaut import (
    WITNESS_KINDS,
    aut_family1_structure,
    aut_family2,
    aut_group,
    dixmier_report,
    embed_decide,
    iso_decide,
    monic_family2,
    subfield_witness,
)
from .logderiv import SplitPoly, solve_inverse_logderiv
from .parse import parse
from .unipoly import UniPoly
from .valuation import height, is_flabby, mono_val, recognize, w_level

OK, NO, UNSUPPORTED, BAD_INPUT = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(BAD_INPUT, f"{self.prog}: error: {message}\n")


def _text(arg):
    return sys.stdin.read().strip() if arg == "-" else arg


def _field(args, text=None):
    text = _text(args.flag if text is None else text)
    if text is None:
        raise InputError("--flag is required")
    return PoissonField.from_text(text, args.mode)


def _expr(v):
    return str(RatFunc2(v))


def _num(v):
    if v is None:
        return None
    if v == math.inf:
        return "+inf"
    if v == -math.inf:
        return "-inf"
    return v


def _scalars(text, mode):
    if text is None or text == "":
        return ()
    return tuple(parse(s, mode) for s in text.split(","))


def _poly(text, mode):
    # the polynomial indeterminate is t over Q and x over Q(t)
    v = "t" if mode == "q" else "x"
    p = UniPoly.from_ratfunc(parse(_text(text), "qt"), v)
    return UniPoly(p.coeffs, "x")


def _poly_str(p, mode):
    s = str(p.to_ratfunc())
    return s.replace("x", "t") if mode == "q" else s


def _map_json(m):
    return {"x": _expr(m.X), "y": _expr(m.Y)}


def _witness_json(w):
    if w is None:
        return None
    return {
        "generators": [_expr(g) for g in w.generators],
        "target_flag": _expr(w.target_flag),
        "verified": w.verified,
        "note": w.note,
    }


# subcommands: each returns (exit code, human text, json payload) ----------
def cmd_bracket(args):
    K = _field(args)
    g, h = (parse(_text(e), args.mode) for e in args.exprs)
    b = bracket(K, g, h)
    return OK, _expr(b), {"bracket": _expr(b)}


def cmd_jacobi(args):
    K = _field(args)
    a, b, c = (parse(_text(e), args.mode) for e in args.exprs)
    j = jacobiator(K.flag, a, b, c)
    return (OK if not j else NO), _expr(j), {"jacobiator": _expr(j), "zero": not j}


def cmd_classify(args):
    K = _field(args)
    c = classify_flag(K)
    u, v = c.cov.forward
    payload = {
        "type": c.type.name,
        "description": str(c.type),
        "resolved": c.resolved,
        "verified": c.verified,
        "generators": [_expr(u), _expr(v)],
        "steps": list(c.steps),
    }
    for attr in ("n", "q"):
        if hasattr(c.type, attr):
            val = getattr(c.type, attr)
            payload[attr] = val if attr == "n" else _expr(val)
    text = f"{c.type} verified={str(c.verified).lower()} generators=({_expr(u)}, {_expr(v)})"
    return (OK if c.resolved and c.verified else UNSUPPORTED), text, payload


def cmd_iso(args):
    K1, K2 = _field(args), _field(args, args.other)
    r = iso_decide(K1, K2)
    payload = {"isomorphic": r.isomorphic, "method": r.method}
    lines = [f"isomorphic={str(r.isomorphic).lower()} ({r.method})"]
    if r.isomorphic and r.method == "affine search":
        payload["maps"] = [_map_json(m.field_map()) for m in r.witness]
        lines.append(f"map: {r.witness[0]}")
    elif r.isomorphic and isinstance(r.witness, list):
        payload["parameters"] = [{"a": _expr(e.a), "b": _expr(e.b), "e": e.e} for e in r.witness]
        lines.append("parameters: " + ", ".join(str(e) for e in r.witness))
    return (OK if r.isomorphic else NO), "\n".join(lines), payload


def _factored(K):
    if K.factored is None:
        raise InputError("flag is not syntactically a product of linear forms and monomials")
    return K.factored


def cmd_aut(args):
    K = _field(args)
    rec = recognize(K)
    if rec.family == "flabby":
        G = aut_group(_factored(K))
        elems = [g.field_map() for g in G.finite_part]
        payload = {"kind": "finite", "order": G.order, "elements": [_map_json(m) for m in elems], "notes": list(G.notes)}
        text = f"order={G.order}\n" + "\n".join(str(g) for g in G.finite_part)
        return OK, text, payload
    if rec.family == "canonical" and rec.data.name == "K1n0" and rec.data.n >= 2:
        G = aut_family1_structure(rec.data.n)
        payload = {"kind": "extension", "order": "+inf", "exact_sequence": G.exact_sequence,
                   "rational_points": G.rational_points, "notes": list(G.notes)}
        return OK, G.exact_sequence, payload
    m = monic_family2(K.flag)
    if m is not None and m[0].degree >= 2:
        roots = _scalars(args.roots, args.mode) or None
        G = aut_family2(m[0], roots)
        payload = {
            "kind": "extension",
            "order": "+inf",
            "exact_sequence": G.exact_sequence,
            "finite_quotient": [_map_json(f) for f in G.finite_part],
            "normalized_p": _poly_str(m[0], "qt"),
            "notes": list(G.notes),
        }
        return OK, G.exact_sequence, payload
    raise UnsupportedError("aut covers flabby products of linear forms, p(x)xy with deg p >= 2 and x^(n+1)y with n >= 2")


def cmd_embed(args):
    c1, c2 = classify_flag(_field(args)), classify_flag(_field(args, args.other))
    r = embed_decide(c1.type, c2.type)
    payload = {"embeds": r.embeds, "source": str(c1.type), "target": str(c2.type),
               "witness": _witness_json(r.witness), "reason": r.reason}
    text = f"{c1.type} -> {c2.type}: {'yes' if r.embeds else 'no'}"
    if r.witness is not None:
        text += f" via ({', '.join(_expr(g) for g in r.witness.generators)})"
    elif r.reason:
        text += f" ({r.reason})"
    return (OK if r.embeds else NO), text, payload


def cmd_valuation(args):
    try:
        nu = tuple(int(s) for s in args.nu.split(","))
    except ValueError:
        raise InputError("--nu takes two integers z1,z2") from None
    if len(nu) != 2:
        raise InputError("--nu takes two integers z1,z2")
    payload = {"nu": list(nu)}
    parts = []
    if args.flag is not None:
        K = _field(args)
        w = w_level(nu, K.flag)
        payload["w_level"] = _num(w)
        parts.append(f"w={_num(w)}")
    if args.element is not None:
        v = mono_val(nu, parse(_text(args.element), args.mode))
        payload["value"] = _num(v)
        parts.append(f"nu={_num(v)}")
    if not parts:
        raise InputError("give --flag and/or an element")
    return OK, " ".join(parts), payload


def cmd_flag_height(args):
    r = height(_field(args))
    payload = {
        "fht": _num(r.flag_height),
        "vht1": _num(r.valuation_height1),
        "witness": None if r.witness is None else {"nu": list(r.witness[0]), "w": r.witness[1]},
        "vht1_lower_bound": r.vht1_lower_bound,
        "cohereditary": r.cohereditary,
        "theorem": r.theorem,
    }
    return OK, r.summary(), payload


def cmd_flabby(args):
    K = _field(args)
    r = is_flabby(_factored(K))
    payload = {"flabby": r.flabby, "failing_index": r.failing_index}
    text = "flabby" if r.flabby else f"not flabby (factor {r.failing_index} has too few independent partners)"
    return (OK if r.flabby else NO), text, payload


def cmd_logderiv(args):
    if args.roots is not None:
        f = SplitPoly(parse(args.gamma, args.mode), _scalars(args.roots, args.mode))
    elif args.poly is not None:
        f = SplitPoly.from_unipoly(_poly(args.poly, args.mode))
        if f is None:
            raise UnsupportedError("polynomial does not split into distinct rational roots; pass --roots")
    else:
        raise InputError("give --poly or --roots")
    s = solve_inverse_logderiv(f)
    if s is None:
        return NO, "none", {"solution": None, "f": str(f)}
    exps = [{"root": _expr(a), "exponent": z} for a, z in s.factors]
    return OK, str(s), {"solution": str(s), "f": str(f), "factors": exps}


def _bounded(args):
    return BoundedElement(parse(_text(args.u), args.mode), _scalars(args.a, args.mode), _scalars(args.b, args.mode))


def cmd_ddb(args):
    if args.flag is not None:
        n = dpb_upper_for_flag(parse(_text(args.flag), args.mode), args.mode)
        return OK, f"dpb<={n}", {"dpb_upper": n}
    if args.u is None or args.b is None:
        raise InputError("give --flag, or --u with --b (and optionally --a)")
    h = _bounded(args)
    b = bounds_certified(h)
    payload = {"h": _expr(h.h()), "dpb_lower": b.dpb_lower, "ddb": b.ddb_exact, "dpb": b.dpb_exact, "fdb": b.fdb_exact,
               "frame_form": None if b.frame_form is None else _expr(b.frame_form)}
    text = f"dpb>={b.dpb_lower}"
    if b.ddb_exact is not None:
        text = f"ddb={b.ddb_exact} dpb={b.dpb_exact} fdb={b.fdb_exact}"
    return OK, text, payload


def cmd_build_infinite_flag(args):
    cert = build_infinite_flag(_bounded(args), _poly(args.f, args.mode))
    r = height(cert.field(args.mode))
    payload = {"flag": _expr(cert.flag), "w": cert.w_threshold, "fht": _num(r.flag_height),
               "vht1_lower_bound": r.vht1_lower_bound, "notes": list(cert.notes)}
    return OK, f"{_expr(cert.flag)}\n{r.summary()}", payload


def cmd_dixmier(args):
    r = dixmier_report(_field(args))
    payload = {"dixmier": r.dixmier, "reason": r.reason, "certificate": _witness_json(r.certificate)}
    verdict = {True: "true", False: "false", None: "unknown"}[r.dixmier]
    text = f"dixmier={verdict} ({r.reason})"
    if r.certificate is not None:
        text += f"\nendomorphism image: ({', '.join(_expr(g) for g in r.certificate.generators)})"
    code = {True: OK, False: NO, None: UNSUPPORTED}[r.dixmier]
    return code, text, payload


def cmd_subfield_witness(args):
    params = {}
    for item in args.params:
        key, sep, value = item.partition("=")
        if not sep:
            raise InputError(f"parameter {item!r} is not key=value")
        params[key] = _text(value)
    w = subfield_witness(args.kind, params)
    text = f"({', '.join(_expr(g) for g in w.generators)}) flag {_expr(w.target_flag)} verified={str(w.verified).lower()}"
    return (OK if w.verified else NO), text, _witness_json(w)


COMMANDS = {
    "bracket": cmd_bracket,
    "jacobi": cmd_jacobi,
    "classify": cmd_classify,
    "iso": cmd_iso,
    "aut": cmd_aut,
    "embed": cmd_embed,
    "valuation": cmd_valuation,
    "flag-height": cmd_flag_height,
    "flabby": cmd_flabby,
    "logderiv": cmd_logderiv,
    "ddb": cmd_ddb,
    "build-infinite-flag": cmd_build_infinite_flag,
    "dixmier": cmd_dixmier,
    "subfield-witness": cmd_subfield_witness,
}


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--mode", choices=("q", "qt"), default="q", help="scalars Q or Q(t)")
    common.add_argument("--json", action="store_true", help="print a JSON object")
    flag = _Parser(add_help=False)
    flag.add_argument("--flag", help="flag expression, or - to read stdin")
    h = _Parser(add_help=False)
    h.add_argument("--u", help="the element u of h = prod(u - a) / prod(u - b)")
    h.add_argument("--a", default="", help="comma-separated numerator shifts")
    h.add_argument("--b", help="comma-separated denominator shifts, b_0 first")

    p = _Parser(prog="poissonfield", description="Exact computations in Poisson fields K{f} on k(x, y).")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sp = sub.add_parser("bracket", parents=[common, flag], help="{g, h} in K{f}")
    sp.add_argument("exprs", nargs=2)
    sp = sub.add_parser("jacobi", parents=[common, flag], help="jacobiator of three elements")
    sp.add_argument("exprs", nargs=3)
    sub.add_parser("classify", parents=[common, flag], help="reduce to Weyl, K_q or K_1n0")
    for name, what in (("iso", "isomorphism"), ("embed", "embedding")):
        sp = sub.add_parser(name, parents=[common, flag], help=f"decide {what} of K{{flag}} and K{{other}}")
        sp.add_argument("--other", required=True, help="second flag expression")
    sp = sub.add_parser("aut", parents=[common, flag], help="automorphism group")
    sp.add_argument("--roots", help="comma-separated roots of p for p(x)xy in Q(t) mode")
    sp = sub.add_parser("valuation", parents=[common, flag], help="monomial valuation and w-level")
    sp.add_argument("--nu", required=True, help="z1,z2; write --nu=-1,-1 for negative values")
    sp.add_argument("element", nargs="?")
    sub.add_parser("flag-height", parents=[common, flag], help="flag height and 1-valuation height")
    sub.add_parser("flabby", parents=[common, flag], help="flabbiness of a product of linear forms")
    sp = sub.add_parser("logderiv", parents=[common], help="solve s'/s = 1/f")
    sp.add_argument("--poly", help="f as a polynomial in t (in x for Q(t) mode)")
    sp.add_argument("--roots", help="comma-separated distinct roots of f")
    sp.add_argument("--gamma", default="1", help="leading coefficient when --roots is used")
    sp = sub.add_parser("ddb", parents=[common, h], help="denominator bounds")
    sp.add_argument("--flag", help="bound dpb from above for this flag instead")
    sp = sub.add_parser("build-infinite-flag", parents=[common, h], help="x y f(h) with its certificate")
    sp.add_argument("--f", required=True, help="f in t (in x for Q(t) mode), degree >= 2")
    sub.add_parser("dixmier", parents=[common, flag], help="Dixmier property")
    sp = sub.add_parser("subfield-witness", parents=[common], help="generators of a standard subfield")
    sp.add_argument("kind", choices=WITNESS_KINDS)
    sp.add_argument("params", nargs="*", help="key=value (values are expressions)")
    return p


def run(argv=None, out=None, err=None):
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    args = build_parser().parse_args(argv)
    try:
        code, text, payload = COMMANDS[args.command](args)
    except (InputError, ValueError, ZeroDivisionError) as e:
        code, text, payload = BAD_INPUT, f"input error: {e}", {"error": getattr(e, "code", "InputError"), "message": str(e)}
    except UnsupportedError as e:
        code, text, payload = UNSUPPORTED, f"unsupported: {e}", {"error": getattr(e, "code", "Unsupported"), "message": str(e)}
    if args.json:
        payload = {"command": args.command, "exit_code": code, **payload}
        print(json.dumps(payload, sort_keys=True), file=out)
    else:
        print(text, file=out if code in (OK, NO) else err)
    return code


def main(argv=None):
    try:
        return run(argv)
    except SystemExit as e:
        return e.code


if __name__ == "__main__":
    sys.exit(main())
