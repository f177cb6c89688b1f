"""Command-line interface: ``skewcoh <subcommand> <spec.json> ...``.

Exit status is 0 on success, 1 on input errors, 2 when a verification fails.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from pathlib import Path

from .exterior import AVolElem, CertificateError, VolAssignment, avol_multiply, avol_generation_certificate
from .groups import DEFAULT_CAP, GroupError
from .hochschild import Cochain, NotCocycleError, classify, cup_via_bar, proj_H, smash_cup
from .invariants import InvarianceError, InvariantClass, class_decompose, is_invariant, mackey_cup
from .poset import PosetError, hasse_dot, quotient_poset
from .reflength import length_table
from .specio import SpecError, load_cochain, load_group, parse_cochain
from .verify import SUITES, invariant_basis, run_suite

EXIT_OK, EXIT_INPUT, EXIT_VERIFY = 0, 1, 2
DEFAULT_MAXDEG = 4


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _maxdeg(args):
    if getattr(args, "maxdeg", None) is not None:
        d = args.maxdeg
    else:
        env = os.environ.get("SKEWCOH_MAXDEG")
        try:
            d = int(env) if env else DEFAULT_MAXDEG
        except ValueError:
            raise InputError(f"SKEWCOH_MAXDEG must be an integer, got {env!r}") from None
    if d < 0:
        raise InputError("the truncation degree must be >= 0")
    return d


def _emit(text, path=None):
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def _dump(obj):
    return json.dumps(obj, indent=2) + "\n"


def _group(args):
    if args.cap < 1:
        raise InputError("--cap must be >= 1")
    G, spec = load_group(args.spec, cap=args.cap)
    return G, spec


def _csv(rows, header):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


# ---------------------------------------------------------------------------
# subcommands


def cmd_group(args):
    G, _ = _group(args)
    _emit(_dump(G.summary()), args.out)
    return EXIT_OK


def cmd_poset(args):
    G, _ = _group(args)
    P = quotient_poset(G)
    dot = hasse_dot(P)
    if args.json:
        _emit(_dump(P.to_json()), args.json)
    if args.dot:
        _emit(dot, args.dot)
    if not args.json and not args.dot:
        _emit(dot)
    return EXIT_OK


def cmd_theta(args):
    G, _ = _group(args)
    vols = VolAssignment(G)
    rows = [(G.labels[g], G.labels[h], str(vols.theta(g, h))) for g in range(G.order) for h in range(G.order)]
    _emit(_csv(rows, ["g", "h", "theta"]), args.out)
    return EXIT_OK


def cmd_avol(args):
    G, _ = _group(args)
    vols = VolAssignment(G)
    table = []
    for g in range(G.order):
        for h in range(G.order):
            p = avol_multiply(AVolElem.basis(g, G.m), AVolElem.basis(h, G.m), vols)
            entry = {"g": G.labels[g], "h": G.labels[h]}
            if p.is_zero():
                entry["product"] = None
            else:
                (k, c), = p.coeffs.items()
                entry["product"] = {"element": G.labels[k], "coeff": str(c)}
            table.append(entry)
    certs = avol_generation_certificate(G, vols)
    out = {
        "group": G.name,
        "table": table,
        "certificates": [
            {"element": G.labels[g], "factors": [G.labels[f] for f in fs], "coeff": str(c)}
            for g, (fs, c) in sorted(certs.items())
        ],
    }
    _emit(_dump(out), args.out)
    return EXIT_OK


def _cochain_report(c: Cochain):
    return {"text": repr(c), "terms": c.to_json()}


def cmd_cup(args):
    G, _ = _group(args)
    vols = VolAssignment(G)
    a = load_cochain(args.alpha, G, vols)
    b = load_cochain(args.beta, G, vols)
    s = smash_cup(a, b)
    out = {"alpha": _cochain_report(a), "beta": _cochain_report(b), "smash": _cochain_report(s)}
    if a.degree is not None and b.degree is not None and a.degree + b.degree <= G.n:
        out["bar"] = _cochain_report(cup_via_bar(a, b))
    out["classification"] = {G.labels[g]: v for g, v in sorted(classify(s).items())}
    try:
        out["normal_form"] = _cochain_report(proj_H(s).cochain)
    except NotCocycleError as exc:
        out["normal_form"] = None
        out["normal_form_error"] = str(exc)
    _emit(_dump(out), args.out)
    return EXIT_OK


def _as_invariant_parts(c: Cochain):
    """A G-invariant cochain, or components sitting at class representatives."""
    G = c.G
    if is_invariant(c, range(G.order)):
        return class_decompose(c, check=False)
    reps = set(G.class_reps)
    parts = []
    for g in c.support():
        if g not in reps:
            raise InputError(f"{G.labels[g]} is not a class representative (representatives: {', '.join(G.labels[r] for r in G.class_reps)})")
        comp = c.restrict(g)
        if not is_invariant(comp, G.centralizer(g)):
            raise InputError(f"component at {G.labels[g]} is not invariant under its centralizer")
        parts.append(InvariantClass(g, comp))
    return parts


def _parts_report(G, parts):
    acc = {}
    for p in parts:
        acc[p.class_rep] = acc[p.class_rep] + p.component if p.class_rep in acc else p.component
    return [
        {"class_rep": G.labels[g], **_cochain_report(c)} for g, c in sorted(acc.items()) if not c.is_zero()
    ]


def cmd_mackey(args):
    G, _ = _group(args)
    vols = VolAssignment(G)
    A = _as_invariant_parts(proj_H(load_cochain(args.a, G, vols)).cochain)
    B = _as_invariant_parts(proj_H(load_cochain(args.b, G, vols)).cochain)
    prod = [r for x in A for y in B for r in mackey_cup(x, y)]
    out = {"a": _parts_report(G, A), "b": _parts_report(G, B), "product": _parts_report(G, prod)}
    _emit(_dump(out), args.out)
    return EXIT_OK


def cmd_invariants(args):
    G, _ = _group(args)
    D = _maxdeg(args)
    vols = VolAssignment(G)
    basis = invariant_basis(G, G.n, D, vols)
    dims = {}
    for a, (p, d) in basis:
        key = G.labels[a.class_rep]
        dims.setdefault(key, {})
        dims[key][f"{p},{d}"] = dims[key].get(f"{p},{d}", 0) + 1
    named = [(f"b{i}", a, pd) for i, (a, pd) in enumerate(basis)]
    products = []
    pd_max = min(D, args.product_maxdeg)
    for na, a, (p, d) in named:
        for nb, b, (q, e) in named:
            if p + q > G.n or d + e > pd_max:
                continue
            res = _parts_report(G, mackey_cup(a, b))
            if res:
                products.append({"a": na, "b": nb, "product": res})
    out = {
        "group": G.name,
        "maxdeg": D,
        "dims": {G.labels[r]: dims.get(G.labels[r], {}) for r in G.class_reps},
        "basis": [{"name": na, "bidegree": list(pd), "class_rep": G.labels[a.class_rep], **_cochain_report(a.component)} for na, a, pd in named],
        "products": products,
    }
    _emit(_dump(out), args.out)
    return EXIT_OK


def cmd_reflen(args):
    G, _ = _group(args)
    T = length_table(G)
    _emit(_csv(T.rows(), ["element", "l", "codim", "equal"]), args.out)
    return EXIT_OK


def _flip(G, text):
    try:
        g, h = (s.strip() for s in text.split(","))
    except ValueError:
        raise InputError("--inject-theta-flip expects G,H (element labels or indices)") from None
    out = []
    for s in (g, h):
        if s in G.labels:
            out.append(G.labels.index(s))
        elif s.isdigit() and int(s) < G.order:
            out.append(int(s))
        else:
            raise InputError(f"unknown element {s!r}")
    return tuple(out)


def cmd_verify(args):
    G, spec = _group(args)
    D = _maxdeg(args)
    vols = VolAssignment(G)
    kw = {"maxdeg": D, "vols": vols}
    if args.suite == "cupsmash":
        kw["maxdeg"] = min(D, 2)
        ex = []
        for i, pair in enumerate(spec.get("examples", [])):
            ex.append((parse_cochain(pair["alpha"], G, vols, f"$.examples[{i}].alpha"),
                       parse_cochain(pair["beta"], G, vols, f"$.examples[{i}].beta")))
        kw["examples"] = ex
    elif args.suite in ("dims", "phiupsilon"):
        kw["maxdeg"] = min(D, 3)
    elif args.suite in ("kernel", "mackey"):
        kw["maxdeg"] = min(D, 2)
    if args.inject_theta_flip:
        if args.suite != "cocycle":
            raise InputError("--inject-theta-flip applies to the cocycle suite")
        kw["flip"] = _flip(G, args.inject_theta_flip)
    report = run_suite(args.suite, G, **kw)
    out = {"group": G.name, "suite": args.suite, "maxdeg": kw["maxdeg"], **report}
    _emit(_dump(out), args.out)
    return EXIT_OK if report["ok"] else EXIT_VERIFY


# ---------------------------------------------------------------------------


def build_parser():
    p = _Parser(prog="skewcoh", description="Products in Hochschild cohomology of S(V)#G, computed exactly.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("spec", help="group spec JSON (a path, or the stem of a bundled spec)")
        sp.add_argument("--cap", type=int, default=DEFAULT_CAP, help="maximal group order (default %(default)s)")
        sp.add_argument("--out", help="write to this file instead of stdout")
        sp.set_defaults(func=func)
        return sp

    g = sub.add_parser("group", help="group operations")
    gsub = g.add_subparsers(dest="action", required=True, parser_class=_Parser)
    gb = gsub.add_parser("build", help="close the generators and print a summary (JSON)")
    gb.add_argument("spec")
    gb.add_argument("--cap", type=int, default=DEFAULT_CAP)
    gb.add_argument("--out")
    gb.set_defaults(func=cmd_group)

    sp = add("poset", cmd_poset, "codimension poset on G/K (DOT, JSON)")
    sp.add_argument("--dot", help="DOT output file")
    sp.add_argument("--json", help="JSON output file")

    add("theta", cmd_theta, "theta table (CSV: g,h,theta)")
    add("avol", cmd_avol, "volume algebra table and generation certificates (JSON)")

    sp = add("cup", cmd_cup, "smash and bar-route products of two cochains (JSON)")
    sp.add_argument("--alpha", required=True)
    sp.add_argument("--beta", required=True)

    sp = add("mackey", cmd_mackey, "product of G-invariant classes through transfers (JSON)")
    sp.add_argument("--a", required=True)
    sp.add_argument("--b", required=True)

    sp = add("invariants", cmd_invariants, "invariant dimensions and product table (JSON)")
    sp.add_argument("--maxdeg", type=int, help="polynomial truncation degree (default $SKEWCOH_MAXDEG or 4)")
    sp.add_argument("--product-maxdeg", type=int, default=1, help="total polynomial degree of tabulated products")

    add("reflen", cmd_reflen, "reflection length vs codimension (CSV)")

    sp = add("verify", cmd_verify, "run a verification suite (exit 2 on failure)")
    sp.add_argument("--suite", required=True, choices=sorted(SUITES))
    sp.add_argument("--maxdeg", type=int, help="polynomial truncation degree (default $SKEWCOH_MAXDEG or 4)")
    sp.add_argument("--inject-theta-flip", metavar="G,H", help="perturb theta(G,H) before the cocycle suite")
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, SpecError, GroupError, InvarianceError, NotCocycleError) as exc:
        print(f"skewcoh: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"skewcoh: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (PosetError, CertificateError) as exc:
        print(f"skewcoh: verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
