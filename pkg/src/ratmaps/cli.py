"""Command-line front end: every decision procedure, text or JSON output.

Exit codes: 0 when the decision was computed (whatever the verdict),
1 for a precondition violation, 2 for a parse error, 3 for an internal
assertion, meaning a theorem-backed identity failed and the result cannot
be trusted.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import gordan_noether as gn
from . import homog, integrality, subfield
from .errors import InternalCheckError, ParseError, PreconditionError
from .expressions import (
    elaborate,
    elaborate_map,
    elaborate_poly,
    elaborate_poly_tuple,
    parse,
    parse_scalar,
    x_ring_for,
)
from .fields import QQ, PrimeField
from .polyring import (
    PolyRing,
    RatMap,
    gcd_many,
    jacobian,
    primitive_part,
)


def _field_from_flag(text: str):
    if text == "q":
        return QQ
    if text.startswith("fp:"):
        return PrimeField(int(text[3:]))
    raise argparse.ArgumentTypeError(f"unknown field {text!r} (use q or fp:P)")


def _exprs(args, expected=None):
    texts = list(args.exprs)
    if args.infile:
        with open(args.infile) as fh:
            texts.extend(line.strip() for line in fh if line.strip())
    if expected is not None and len(texts) != expected:
        raise ParseError(f"expected {expected} expression(s), got {len(texts)}", 0)
    if not texts:
        raise ParseError("no input expressions", 0)
    return texts


def _x_context(args, texts, minimum=1):
    trees = [parse(t) for t in texts]
    ring = x_ring_for(trees, args.field, minimum)
    return trees, ring


def _y1_ring(args):
    return PolyRing(args.field, ("y1",))


def _y12_ring(args):
    return PolyRing(args.field, ("y1", "y2"))


def _square_map(args, text: str) -> RatMap:
    """Elaborate a map, padding the ring so it is square.

    A tuple with more components than named variables gets dummy trailing
    variables absent from every component, so that tuples like the
    three-component core over (x1, x2) keep the square-map interface.
    """
    from .expressions import TupleExpr

    tree = parse(text)
    m = len(tree.items) if isinstance(tree, TupleExpr) else 1
    ring = x_ring_for([tree], args.field, minimum=m)
    return elaborate_map(tree, ring)


def _reduced_pair(text: str, args) -> integrality.ReducedPair:
    parts = text.split(";")
    if len(parts) != 2:
        raise ParseError("--g expects 'f1;f2'", 0)
    ring = _y1_ring(args)
    f1 = elaborate_poly(parse(parts[0]), ring)
    f2 = elaborate_poly(parse(parts[1]), ring)
    return integrality.ReducedPair(f1, f2)


def _scalar(text, args):
    return parse_scalar(text, args.field)


# -- handlers -----------------------------------------------------------------


def cmd_gcd(args):
    trees, ring = _x_context(args, _exprs(args))
    polys = []
    for t in trees:
        polys.extend(elaborate_poly_tuple(t, ring))
    return {"gcd": str(gcd_many(polys))}


def cmd_primpart(args):
    trees, ring = _x_context(args, _exprs(args, 1))
    h = elaborate_map(trees[0], ring)
    g, core = primitive_part(h)
    return {"g": str(g), "core": [str(c) for c in core]}


def cmd_jacobian(args):
    trees, ring = _x_context(args, _exprs(args, 1))
    h = elaborate_map(trees[0], ring)
    return {"jacobian": [[str(e) for e in row] for row in jacobian(h)]}


def cmd_homogenize(args):
    ring = _y1_ring(args)
    polys = elaborate_poly_tuple(parse(_exprs(args, 1)[0]), ring)
    degs = [int(p.total_degree()) for p in polys if not p.is_zero()]
    s = args.s if args.s is not None else (max(degs) if degs else 0)
    f = homog.UniTuple(polys, s)
    h = homog.homogenize(f)
    return {"h": [str(p) for p in h.polys], "s": h.degree}


def cmd_dehomogenize(args):
    ring = _y12_ring(args)
    polys = elaborate_poly_tuple(parse(_exprs(args, 1)[0]), ring)
    degs = {int(p.total_degree()) for p in polys if not p.is_zero()}
    if len(degs) != 1:
        raise ParseError("components must be homogeneous of one degree", 0)
    h = homog.HomogTuple(polys, degs.pop())
    f = homog.dehomogenize(h)
    return {"f": [str(p) for p in f.polys], "bound": f.bound}


def cmd_divisor_transport(args):
    text = _exprs(args, 1)[0]
    if args.inverse:
        ring = _y12_ring(args)
        g = elaborate_poly(parse(text), ring)
        return {"result": str(homog.divisor_transport_inverse(g))}
    ring = _y1_ring(args)
    g = elaborate_poly(parse(text), ring)
    return {"result": str(homog.divisor_transport(g))}


def cmd_trdeg(args):
    trees, ring = _x_context(args, _exprs(args, 1))
    h = elaborate_map(trees[0], ring)
    if args.field.characteristic == 0:
        return {"trdeg": subfield.trdeg_rank(h, with_t=args.with_t), "certified": True}
    search = subfield.trdeg_bounded_dependence(h, args.with_t, args.bound)
    return {"trdeg": search.value, "certified": False, "note": search.note}


def cmd_gcd_subst(args):
    texts = _exprs(args)
    if args.mode == "uni":
        if len(texts) != 2:
            raise ParseError("gcd-subst uni expects FTUPLE and P", 0)
        fs = elaborate_poly_tuple(parse(texts[0]), _y1_ring(args))
        trees, ring = _x_context(args, texts[1:])
        p = elaborate_poly(trees[0], ring)
        return {"gcd_substituted": str(subfield.gcd_subst_uni(fs, p))}
    if len(texts) != 3:
        raise ParseError("gcd-subst homog expects HTUPLE, P and Q", 0)
    hs = elaborate_poly_tuple(parse(texts[0]), _y12_ring(args))
    trees, ring = _x_context(args, texts[1:])
    p = elaborate_poly(trees[0], ring)
    q = elaborate_poly(trees[1], ring)
    return {"gcd_substituted": str(subfield.gcd_subst_homog(hs, p, q))}


def cmd_mobius_equiv(args):
    trees, ring = _x_context(args, _exprs(args, 4))
    p, q, ps, qs = (elaborate_poly(t, ring) for t in trees)
    t = subfield.mobius_equiv(p, q, ps, qs)
    if t is None:
        return {"equivalent": False, "matrix": None}
    return {
        "equivalent": True,
        "matrix": [[str(t.t11), str(t.t12)], [str(t.t21), str(t.t22)]],
    }


def cmd_unit_combo(args):
    trees, ring = _x_context(args, _exprs(args, 2))
    p, q = (elaborate_poly(t, ring) for t in trees)
    combo = subfield.unit_combination(p, q)
    if combo is None:
        return {"exists": False}
    return {"exists": True, "lambda": str(combo[0]), "mu": str(combo[1])}


def cmd_enother(args):
    trees, ring = _x_context(args, _exprs(args, 2))
    p, q = (elaborate_poly(t, ring) for t in trees)
    return subfield.enother_chain(p, q).to_dict()


def cmd_member_kp(args):
    trees, ring = _x_context(args, _exprs(args, 2))
    r, p = (elaborate_poly(t, ring) for t in trees)
    f = subfield.member_Kp(r, p)
    if f is None:
        return {"member": False}
    return {"member": True, "witness": str(f)}


def cmd_member_kpq(args):
    trees, ring = _x_context(args, _exprs(args, 3))
    r = elaborate(trees[0], ring)
    p = elaborate_poly(trees[1], ring)
    q = elaborate_poly(trees[2], ring)
    out = subfield.member_Kpq(r, p, q, args.bound)
    if out is None:
        return {"found": False, "bound": args.bound}
    return {"found": True, "f1": str(out[0]), "f2": str(out[1]), "bound": args.bound}


def cmd_luroth_gen(args):
    texts = _exprs(args)
    ring = PolyRing(args.field, ("x1",))
    rs = [elaborate(parse(t), ring) for t in texts]
    p, q = subfield.luroth_generator_1var(rs)
    return {"p": str(p), "q": str(q)}


def _load_witness_file(path):
    with open(path) as fh:
        return json.load(fh)


def _parse_h_tuple(text: str, args):
    if text.strip() == "0":
        return None
    polys = elaborate_poly_tuple(parse(text), _y12_ring(args))
    degs = {int(c.total_degree()) for c in polys if not c.is_zero()}
    if len(degs) != 1:
        raise ParseError("witness h must be homogeneous of one degree", 0)
    return homog.HomogTuple(polys, degs.pop())


def cmd_hmgrk2_verify(args):
    h_tree = parse(_exprs(args, 1)[0])
    data = _load_witness_file(args.witness)
    xtrees = [h_tree, parse(data["p"]), parse(data["q"]), parse(data["g"])]
    ring = x_ring_for(xtrees, args.field)
    h_map = elaborate_map(h_tree, ring)
    p = elaborate_poly(xtrees[1], ring)
    q = elaborate_poly(xtrees[2], ring)
    g = elaborate(xtrees[3], ring)
    h_tuple = _parse_h_tuple(data.get("h", "0"), args)
    w = subfield.LurothWitness(g, h_tuple, p, q)
    return subfield.hmgrk2_verify(h_map, w).to_dict()


def cmd_valuation(args):
    ring = _y1_ring(args)
    g = elaborate_poly(parse(_exprs(args, 1)[0]), ring)
    if args.theta == "inf":
        point = integrality.ProjPoint.infinity()
    else:
        point = integrality.ProjPoint.finite(_scalar(args.theta, args))
    v = integrality.valuation(g, point)
    return {"valuation": "inf" if v == float("inf") else int(v)}


def cmd_integral(args):
    trees, ring = _x_context(args, _exprs(args, 2))
    p, q = (elaborate_poly(t, ring) for t in trees)
    g = _reduced_pair(args.g, args)
    res = integrality.integral_over_Kg(p, q, g)
    return res.to_dict()


def cmd_integral_set(args):
    trees, ring = _x_context(args, _exprs(args, 2))
    p, q = (elaborate_poly(t, ring) for t in trees)
    gs = [_reduced_pair(g, args) for g in args.g]
    idx = integrality.integral_over_KG(p, q, gs)
    return {"index": idx, "found": idx is not None}


def cmd_regen_integral(args):
    trees, ring = _x_context(args, _exprs(args, 2))
    p, q = (elaborate_poly(t, ring) for t in trees)
    g = _reduced_pair(args.g, args)
    out = integrality.regenerate_integral(p, q, g)
    if out is None:
        return {"found": False}
    return {"found": True, "pstar": str(out[0]), "qstar": str(out[1])}


def cmd_pqtrans(args):
    trees, ring = _x_context(args, _exprs(args, 2))
    p, q = (elaborate_poly(t, ring) for t in trees)
    g = _reduced_pair(args.g, args)
    eps = _scalar(args.eps, args) if args.eps is not None else None
    theta = _scalar(args.theta, args) if args.theta is not None else None
    ps, qs, gs = integrality.pqtrans(p, q, g, args.mode, eps=eps, theta=theta)
    return {
        "pstar": str(ps),
        "qstar": str(qs),
        "f1star": str(gs.f1),
        "f2star": str(gs.f2),
    }


def cmd_qt_check(args):
    h = _square_map(args, _exprs(args, 1)[0])
    return {
        "qt_condition": gn.qt_condition(h),
        "jh_dot_h_zero": gn.classical_gn_condition(h),
    }


def cmd_gn_classify(args):
    from .expressions import TupleExpr

    h_tree = parse(_exprs(args, 1)[0])
    entries = []
    if args.witness:
        data = _load_witness_file(args.witness)
        entries = [data] if isinstance(data, dict) else list(data)
    xtrees = [h_tree]
    parsed = []
    for entry in entries:
        trio = (parse(entry["p"]), parse(entry["q"]), parse(entry["g"]))
        parsed.append(trio)
        xtrees.extend(trio)
    m = len(h_tree.items) if isinstance(h_tree, TupleExpr) else 1
    ring = x_ring_for(xtrees, args.field, minimum=m)
    h = elaborate_map(h_tree, ring)
    witnesses = []
    for entry, (pt, qt, gt) in zip(entries, parsed):
        kind = entry["kind"]
        p = elaborate_poly(pt, ring)
        q = elaborate_poly(qt, ring)
        g = elaborate(gt, ring)
        h_tuple = None
        f_tuple = None
        if kind == "cond3":
            h_tuple = _parse_h_tuple(entry.get("h", "0"), args)
        else:
            f_tuple = elaborate_poly_tuple(parse(entry["f"]), _y1_ring(args))
        witnesses.append(gn.GNWitness(kind, g, p, q, h=h_tuple, f=f_tuple))
    return gn.gn_classify(h, witnesses).to_dict()


def cmd_translation_check(args):
    h = _square_map(args, _exprs(args, 1)[0])
    return {"invariant": gn.translation_invariance(h)}


def cmd_nilpotent_check(args):
    h = _square_map(args, _exprs(args, 1)[0])
    return {"nilpotent": gn.nilpotent_jacobian(h)}


def cmd_bivariate_core(args):
    from .expressions import TupleExpr

    tree = parse(_exprs(args, 1)[0])
    m = len(tree.items) if isinstance(tree, TupleExpr) else 1
    ring = x_ring_for([tree], args.field, minimum=m)
    core = elaborate_poly_tuple(tree, ring)
    return {"zero": gn.bivariate_core_check(core)}


def cmd_span_bound(args):
    h = _square_map(args, _exprs(args, 1)[0])
    return gn.constant_span_bound(h).to_dict()


# -- wiring -------------------------------------------------------------------

_COMMANDS = [
    ("gcd", cmd_gcd, "gcd of a tuple of polynomials"),
    ("primpart", cmd_primpart, "primitive part decomposition H = g*core"),
    ("jacobian", cmd_jacobian, "Jacobian matrix of a rational map"),
    ("homogenize", cmd_homogenize, "y2^s f(y1/y2) for a univariate tuple"),
    ("dehomogenize", cmd_dehomogenize, "h(y1, 1) for a homogeneous tuple"),
    ("divisor-transport", cmd_divisor_transport, "transport a divisor across homogenization"),
    ("trdeg", cmd_trdeg, "transcendence degree of K(H) or K(tH)"),
    ("gcd-subst", cmd_gcd_subst, "gcd commutes with substitution"),
    ("mobius-equiv", cmd_mobius_equiv, "GL2 matrix linking two generator pairs"),
    ("unit-combo", cmd_unit_combo, "lambda*p + mu*q = 1 over K"),
    ("enother", cmd_enother, "unit-combination chain for K(p/q)"),
    ("member-kp", cmd_member_kp, "decide r in K[p]"),
    ("member-kpq", cmd_member_kpq, "bounded search for r in K(p/q)"),
    ("luroth-gen", cmd_luroth_gen, "single-variable field generator"),
    ("hmgrk2-verify", cmd_hmgrk2_verify, "verify a decomposition witness H = g*h(p,q)"),
    ("valuation", cmd_valuation, "vanishing order at a projective point"),
    ("integral", cmd_integral, "is p/q integral over K[g]"),
    ("integral-set", cmd_integral_set, "is p/q integral over K[G]"),
    ("regen-integral", cmd_regen_integral, "equivalent generator integral over K[g]"),
    ("pqtrans", cmd_pqtrans, "shift/invert generator transformation"),
    ("qt-check", cmd_qt_check, "JH.H = tr JH.H and JH.H = 0"),
    ("gn-classify", cmd_gn_classify, "full classification report"),
    ("translation-check", cmd_translation_check, "H(x + tH) = H"),
    ("nilpotent-check", cmd_nilpotent_check, "is JH nilpotent"),
    ("bivariate-core", cmd_bivariate_core, "J(core).core(y) = 0 check"),
    ("span-bound", cmd_span_bound, "constant-vector span against n - rk J(core)"),
]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ratmaps",
        description="Exact computations with rational maps of transcendence degree at most 2.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, handler, help_text in _COMMANDS:
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(handler=handler)
        p.add_argument("exprs", nargs="*", help="input expressions")
        p.add_argument("--in", dest="infile", default=None, help="read expressions from FILE")
        p.add_argument(
            "--field",
            type=_field_from_flag,
            default=QQ,
            help="coefficient field: q (default) or fp:P",
        )
        p.add_argument("--json", action="store_true", help="emit JSON")
        p.add_argument("--bound", type=int, default=6, help="search bound (default 6)")
        if name == "homogenize":
            p.add_argument("--s", type=int, default=None, help="homogenization degree")
        if name == "divisor-transport":
            p.add_argument("--inverse", action="store_true")
        if name == "trdeg":
            p.add_argument("--with-t", dest="with_t", action="store_true")
        if name == "gcd-subst":
            p.add_argument("--mode", choices=("uni", "homog"), default="uni")
        if name in ("hmgrk2-verify", "gn-classify"):
            p.add_argument("--witness", default=None, help="witness JSON file")
        if name == "valuation":
            p.add_argument("--theta", required=True, help="point in K, or inf")
        if name in ("integral", "regen-integral", "pqtrans"):
            p.add_argument("--g", required=True, help="generator as 'f1;f2' in y1")
        if name == "integral-set":
            p.add_argument("--g", action="append", required=True, help="repeatable 'f1;f2'")
        if name == "pqtrans":
            p.add_argument("--mode", choices=("shift", "invert"), required=True)
            p.add_argument("--eps", default=None)
            p.add_argument("--theta", default=None)
    return parser


def _render_text(payload: dict) -> str:
    lines = []
    for key, value in payload.items():
        if isinstance(value, list) and value and isinstance(value[0], list):
            lines.append(f"{key}:")
            for row in value:
                lines.append("  [" + ", ".join(str(v) for v in row) + "]")
        elif isinstance(value, list):
            if value and isinstance(value[0], dict):
                lines.append(f"{key}:")
                for entry in value:
                    lines.append(
                        "  - " + ", ".join(f"{k}: {v}" for k, v in entry.items())
                    )
            else:
                lines.append(f"{key}: [" + ", ".join(str(v) for v in value) + "]")
        elif isinstance(value, dict):
            lines.append(f"{key}:")
            for k2, v2 in value.items():
                lines.append(f"  {k2}: {v2}")
        else:
            lines.append(f"{key}: {value}")
    return "\n".join(lines)


def _field_str(field) -> str:
    return "q" if field.characteristic == 0 else f"fp:{field.characteristic}"


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        payload = args.handler(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except InternalCheckError as exc:
        print(f"internal assertion: {exc}", file=sys.stderr)
        return 3
    except PreconditionError as exc:
        print(f"precondition violated: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 1
    envelope = {"command": args.command, "field": _field_str(args.field)}
    envelope.update(payload)
    if args.json:
        print(json.dumps(envelope, indent=2))
    else:
        print(_render_text(envelope))
    return 0


if __name__ == "__main__":
    sys.exit(main())
