"""Verification suites shared by the CLI and the test-suite.

Each suite returns a dict with at least ``ok`` (bool) and ``checked`` (count).
"""

from __future__ import annotations

from itertools import combinations, product

from .cyclotomic import CycNum
from .exterior import CertificateError, VolAssignment, avol_generation_certificate, wedge
from .hochschild import (
    Cochain,
    cup_via_bar,
    in_B,
    in_Z,
    koszul_codifferential,
    koszul_codifferential_eval,
    phi_star_upsilon_check,
    smash_cup,
    truncated_cohomology_dims,
    z_basis,
)
from .invariants import (
    InvariantClass,
    averaged_invariant_dim,
    invariant_component_basis,
    mackey_cup,
    mackey_cup_bruteforce,
    molien_dims,
)
from .polys import Poly, monomials
from .poset import PosetError, check_codims_equivalences, leq_matrix, quotient_poset
from .reflength import compare_orders_report

__all__ = ["SUITES", "run_suite", "z_basis_by_bidegree", "basis_cochains"]


def z_basis_by_bidegree(G, pmax, dmax, vols=None):
    vols = vols or VolAssignment(G)
    return {
        (p, d): [z for g in range(G.order) for z in z_basis(G, g, p, d, vols)]
        for p in range(pmax + 1)
        for d in range(dmax + 1)
    }


def basis_cochains(G, p, d):
    """x^e (x) e*_S (x) g over all monomials of degree d, p-subsets S and tags g."""
    n, m = G.n, G.m
    out = []
    for g in range(G.order):
        for S in combinations(range(n), p):
            for e in monomials(n, d):
                out.append(Cochain(G, {(g, S): Poly.monomial(e, m)}))
    return out


# ---------------------------------------------------------------------------


def suite_cocycle(G, vols=None, flip=None, **_):
    """theta: defining relation, 2-cocycle identity, and vanishing exactly off the order."""
    vols = vols or VolAssignment(G)
    N = G.order
    th = [[vols.theta(g, h) for h in range(N)] for g in range(N)]
    if flip is not None:
        g, h = flip
        th[g][h] = -th[g][h] if th[g][h] else CycNum.one(G.m)
    failures = []
    for g in range(N):
        for h in range(N):
            lhs = wedge(vols[g], vols[h])
            if lhs != vols[G.mul(g, h)].scale(th[g][h]):
                failures.append(("relation", G.labels[g], G.labels[h]))
    for g, h, k in product(range(N), repeat=3):
        if th[G.mul(g, h)][k] * th[g][h] != th[g][G.mul(h, k)] * th[h][k]:
            failures.append(("cocycle", G.labels[g], G.labels[h], G.labels[k]))
    leq = leq_matrix(G)
    for g in range(N):
        for h in range(N):
            if bool(th[g][h]) != bool(leq[g, G.mul(g, h)]):
                failures.append(("vanishing", G.labels[g], G.labels[h]))
    return {"ok": not failures, "checked": N * N * 2 + N**3, "failures": failures[:20]}


def suite_codims(G, **_):
    failures = []
    for g in G:
        for h in G:
            r = check_codims_equivalences(g, h)
            if not r["equivalent"] or r["fixed_intersection"] is False:
                failures.append((g.label, h.label))
    return {"ok": not failures, "checked": G.order**2, "failures": failures[:20]}


def suite_poset(G, **_):
    try:
        P = quotient_poset(G)
    except PosetError as exc:
        return {"ok": False, "checked": 0, "error": str(exc)}
    ok = all(P.leq[0, c] for c in range(P.size))
    # rank compatibility
    for a in range(P.size):
        for b in range(P.size):
            if P.leq[a, b] and P.codim(a) > P.codim(b):
                ok = False
    return {
        "ok": bool(ok),
        "checked": P.size**2,
        "quotient_order": P.size,
        "kernel_order": len(G.kernel_K),
        "minimal_nonidentity": [P.label(c) for c in P.minimal_nonidentity],
    }


def suite_generation(G, vols=None, **_):
    vols = vols or VolAssignment(G)
    try:
        certs = avol_generation_certificate(G, vols)
    except CertificateError as exc:
        return {"ok": False, "checked": 0, "error": str(exc)}
    refl = {g for g in range(G.order) if G.codims[g] == 1}
    degree_one = all(all(f in refl or f == 0 for f in fs) for fs, _ in certs.values())
    return {"ok": True, "checked": len(certs), "reflection_factors_only": degree_one}


def suite_reflen(G, **_):
    r = compare_orders_report(G)
    ok = all(row[1] >= row[2] for row in r["rows"])
    return {
        "ok": ok,
        "checked": len(r["rows"]),
        "all_equal": r["all_equal"],
        "witnesses": r["witnesses"],
        "minimal_are_reflections": r.get("minimal_are_reflections"),
        "absolute_order_matches": r.get("absolute_order_matches"),
    }


def suite_cupsmash(G, maxdeg=2, vols=None, examples=(), **_):
    """smash = cup via the bar complex on pairs of Z basis cocycles, each of poly degree <= maxdeg."""
    vols = vols or VolAssignment(G)
    n = G.n
    Zb = z_basis_by_bidegree(G, n, maxdeg, vols)
    failures, count = [], 0
    for (p, d), A in Zb.items():
        for (q, e), B in Zb.items():
            if p + q > n:
                continue
            for a in A:
                for b in B:
                    count += 1
                    if smash_cup(a, b) != cup_via_bar(a, b):
                        failures.append((repr(a), repr(b)))
    shown = []
    for a, b in examples:
        shown.append({"alpha": repr(a), "beta": repr(b), "smash": repr(smash_cup(a, b)), "bar": repr(cup_via_bar(a, b))})
    return {"ok": not failures, "checked": count, "failures": failures[:10], "examples": shown}


def suite_phiupsilon(G, maxdeg=1, **_):
    failures, count = [], 0
    for p in range(G.n + 1):
        for d in range(maxdeg + 1):
            for a in basis_cochains(G, p, d):
                count += 1
                if not phi_star_upsilon_check(a):
                    failures.append(repr(a))
    return {"ok": not failures, "checked": count, "failures": failures[:10]}


def suite_kernel(G, maxdeg=2, vols=None, **_):
    """d* closed form = evaluation oracle, d* d* = 0, and Z, B inside ker d*."""
    vols = vols or VolAssignment(G)
    failures, count = [], 0
    for p in range(G.n + 1):
        for d in range(maxdeg + 1):
            for a in basis_cochains(G, p, d):
                count += 1
                da = koszul_codifferential(a)
                if da != koszul_codifferential_eval(a, p):
                    failures.append(("closed-form", repr(a)))
                if koszul_codifferential(da):
                    failures.append(("square", repr(a)))
            for g in range(G.order):
                ge = G[g]
                for z in z_basis(G, g, p, d, vols):
                    count += 1
                    if koszul_codifferential(z):
                        failures.append(("Z", repr(z)))
                    # a B element: multiply by a generator of the perp ideal
                    for w in ge.perp_space.basis[:1]:
                        bz = Cochain(G, {k: f * Poly.linear(w, G.m) for k, f in z.terms.items()})
                        if not in_B(bz, g) or koszul_codifferential(bz):
                            failures.append(("B", repr(bz)))
    return {"ok": not failures, "checked": count, "failures": failures[:10]}


def suite_dims(G, maxdeg=3, **_):
    failures, count = [], 0
    table = {}
    for p in range(G.n + 1):
        for d in range(maxdeg + 1):
            for g, (formula, oracle) in truncated_cohomology_dims(G, p, d).items():
                count += 1
                table.setdefault(G.labels[g], {})[f"{p},{d}"] = formula
                if formula != oracle:
                    failures.append((G.labels[g], p, d, formula, oracle))
    return {"ok": not failures, "checked": count, "failures": failures[:10], "dims": table}


def invariant_basis(G, pmax, dmax, vols=None):
    """[(InvariantClass, (p, d))] over all class representatives and bidegrees."""
    out = []
    for g in G.class_reps:
        for p in range(pmax + 1):
            for d in range(dmax + 1):
                for c in invariant_component_basis(G, g, p, d, vols):
                    out.append((InvariantClass(g, c), (p, d)))
    return out


def _as_dict(parts):
    out = {}
    for a in parts:
        out[a.class_rep] = out[a.class_rep] + a.component if a.class_rep in out else a.component
    return {k: v for k, v in out.items() if v}


def suite_mackey(G, maxdeg=2, vols=None, **_):
    """Mackey product = assembled product on invariant basis pairs with total bidegree <= (n, maxdeg)."""
    basis = invariant_basis(G, G.n, maxdeg, vols)
    failures, count = [], 0
    for a, (p, d) in basis:
        for b, (q, e) in basis:
            if p + q > G.n or d + e > maxdeg:
                continue
            count += 1
            if _as_dict(mackey_cup(a, b)) != _as_dict(mackey_cup_bruteforce(a, b)):
                failures.append((repr(a), repr(b)))
    return {"ok": not failures, "checked": count, "failures": failures[:10]}


def suite_molien(G, maxdeg=4, subgroups=None, **_):
    subgroups = subgroups or {"G": tuple(range(G.order))}
    failures, count, table = [], 0, {}
    for name, L in subgroups.items():
        for d in range(maxdeg + 1):
            count += 1
            a, b = molien_dims(G, L, d), averaged_invariant_dim(G, L, d)
            table.setdefault(name, []).append(a)
            if a != b:
                failures.append((name, d, a, b))
    return {"ok": not failures, "checked": count, "failures": failures, "dims": table}


SUITES = {
    "cupsmash": suite_cupsmash,
    "phiupsilon": suite_phiupsilon,
    "kernel": suite_kernel,
    "dims": suite_dims,
    "cocycle": suite_cocycle,
    "codims": suite_codims,
    "poset": suite_poset,
    "generation": suite_generation,
    "reflen": suite_reflen,
    "mackey": suite_mackey,
    "molien": suite_molien,
}


def run_suite(name, G, **kw):
    return SUITES[name](G, **kw)
