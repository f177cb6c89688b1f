"""Acceptance criteria 1-14, one test per criterion.

Each test prints a single ``criterion N: PASS|FAIL ...`` line to the terminal.
Run directly (``python tests/test_acceptance.py``) for the summary alone.
"""

import sys
from math import comb

import pytest

from skewcoh.cyclotomic import CycNum
from skewcoh.exterior import ExtForm, VolAssignment
from skewcoh.hochschild import Cochain, cup_via_bar, cupformula_product, smash_cup
from skewcoh.invariants import (
    InvariantClass,
    bigraded_molien,
    determinant_vanishing_check,
    mackey_cup,
    molien_dims,
    averaged_invariant_dim,
)
from skewcoh.polys import Poly
from skewcoh.reflength import length_table
from skewcoh.specio import load_group
from skewcoh.verify import (
    suite_codims,
    suite_cocycle,
    suite_cupsmash,
    suite_dims,
    suite_generation,
    suite_mackey,
    suite_phiupsilon,
    suite_poset,
    invariant_basis,
)

TEST_GROUPS = ["elemabel", "s3c6", "s3nat", "g212", "b3", "g312", "g412", "g422"]
NONFAITHFUL = ["nonfaithful", "s3sign"]

_groups = {}


def group(name):
    if name not in _groups:
        _groups[name] = load_group(name)[0]
    return _groups[name]


@pytest.fixture
def report(capsys):
    def emit(n, ok, detail=""):
        with capsys.disabled():
            print(f"\ncriterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
        assert ok, f"criterion {n} failed: {detail}"

    return emit


def idx(G, label):
    return G.labels.index(label)


def term(G, form, g, c=1):
    return Cochain.term(G, Poly.const(G.n, G.m, c), form, idx(G, g))


def forms(G, *idx, coeff=1):
    return ExtForm.basis(G.n, G.m, *idx, coeff=coeff)


def test_criterion_01_elemabel_product(report):
    G = group("elemabel")
    a = term(G, forms(G, 2), "a1a3")
    b = term(G, forms(G, 0, 1), "a1a2")
    want = term(G, forms(G, 0, 1, 2), "a2a3")
    s, c = smash_cup(a, b), cup_via_bar(a, b)
    report(1, s == -want and c == want, f"smash = {s!r}; bar = {c!r}")


def test_criterion_02_second_product(report):
    G = group("elemabel")
    a1, a2, a12 = idx(G, "a1"), idx(G, "a2"), idx(G, "a1a2")
    vols = VolAssignment(G, {a1: forms(G, 0), a2: forms(G, 1), a12: forms(G, 0, 1)})
    a = term(G, forms(G, 0), "a1")
    b = term(G, forms(G, 2, 1), "a2")
    want = term(G, forms(G, 2, 0, 1), "a1a2", -1)
    s = smash_cup(a, b)
    # same product through the closed formula with the split (dv, vol) inputs
    one = Poly.const(G.n, G.m)
    formula = cupformula_product(one, ExtForm.one(G.n, G.m), a1, one, forms(G, 2), a2, vols)
    ok = s == want and vols.theta(a1, a2) == CycNum.one(G.m) and formula == want
    report(2, ok, f"smash = {s!r}; theta(a1,a2) = {vols.theta(a1, a2)}")


def test_criterion_03_c6s3_mackey(report):
    G = group("s3c6")
    vols = VolAssignment(G)
    g12, g123 = idx(G, "(12)"), idx(G, "(123)")
    v12 = InvariantClass(g12, Cochain.term(G, Poly.const(G.n, G.m), vols[g12], g12))
    v123 = InvariantClass(g123, Cochain.term(G, Poly.const(G.n, G.m), vols[g123], g123))
    sq = mackey_cup(v12, v12)
    ok_sq = len(sq) == 1 and sq[0].class_rep == g123 and sq[0].component == v123.component.scale(CycNum.rational(G.m, 3))
    # whole (12) x (123) and (123) x (123) components up to polynomial degree 1
    basis = invariant_basis(G, G.n, 1, vols)
    at = {g: [a for a, _ in basis if a.class_rep == g] for g in (g12, g123)}
    pairs = [(a, b) for a in at[g12] for b in at[g123]] + [(b, a) for a in at[g12] for b in at[g123]]
    pairs += [(a, b) for a in at[g123] for b in at[g123]]
    nonzero = [p for p in pairs if mackey_cup(*p)]
    detail = f"vol(12)^2 = {sq[0].component!r}" if sq else "vol(12)^2 = 0"
    report(3, ok_sq and not nonzero, f"{detail}; {len(pairs)} mixed/(123) pairs vanish")


def test_criterion_04_theta_cocycle(report):
    bad = [n for n in TEST_GROUPS if not suite_cocycle(group(n))["ok"]]
    report(4, not bad, f"{len(TEST_GROUPS)} groups, exhaustive triples" + (f"; failing {bad}" if bad else ""))


def test_criterion_05_codims(report):
    bad = [n for n in TEST_GROUPS if not suite_codims(group(n))["ok"]]
    report(5, not bad, f"{len(TEST_GROUPS)} groups, exhaustive pairs" + (f"; failing {bad}" if bad else ""))


def test_criterion_06_poset(report):
    res = {n: suite_poset(group(n)) for n in TEST_GROUPS + NONFAITHFUL}
    bad = [n for n, r in res.items() if not r["ok"]]
    kern = {n: res[n]["kernel_order"] for n in NONFAITHFUL}
    ok = not bad and all(k > 1 for k in kern.values())
    report(6, ok, f"kernel orders {kern}" + (f"; failing {bad}" if bad else ""))


def test_criterion_07_cup_equals_smash(report):
    res = {n: suite_cupsmash(group(n), maxdeg=2) for n in ["elemabel", "s3nat"]}
    ok = all(r["ok"] for r in res.values())
    report(7, ok, "; ".join(f"{n}: {r['checked']} pairs" for n, r in res.items()))


def test_criterion_08_phi_upsilon(report):
    names = [n for n in TEST_GROUPS if group(n).n <= 4]
    res = {n: suite_phiupsilon(group(n), maxdeg=3) for n in names}
    bad = [n for n, r in res.items() if not r["ok"]]
    report(8, not bad, f"{sum(r['checked'] for r in res.values())} basis cochains over {len(names)} groups")


def test_criterion_09_dims(report):
    res = {n: suite_dims(group(n), maxdeg=3) for n in ["elemabel", "s3nat"]}
    ok = all(r["ok"] for r in res.values())
    report(9, ok, "; ".join(f"{n}: {r['checked']} (g, p, d) cells" for n, r in res.items()))


def test_criterion_10_reflection_length(report):
    equal = {}
    for n in ["g212", "b3", "s4", "g312", "g412"]:
        T = length_table(group(n))
        equal[n] = all(r[3] for r in T.rows())
    G = group("g422")
    T = length_table(G)
    v = idx(G, "diag(i,i)")
    victor = G.codims[v] == 2 and T.length[v] == 3
    report(10, all(equal.values()) and victor, f"l = codim on {sorted(equal)}; G(4,2,2) diag(i,i): codim {G.codims[v]}, l {T.length[v]}")


def test_criterion_11_generation(report):
    res = {n: suite_generation(group(n)) for n in TEST_GROUPS}
    coxeter = {n: suite_generation(group(n))["reflection_factors_only"] for n in ["g212", "b3", "s4", "g312", "g412"]}
    ok = all(r["ok"] for r in res.values()) and all(coxeter.values())
    report(11, ok, f"certificates for {sum(r['checked'] for r in res.values())} elements; reflection-only on {sorted(coxeter)}")


def test_criterion_12_mackey_oracle(report):
    res = {n: suite_mackey(group(n), maxdeg=2) for n in ["s3c6", "g212"]}
    ok = all(r["ok"] for r in res.values())
    report(12, ok, "; ".join(f"{n}: {r['checked']} pairs" for n, r in res.items()))


def _c6s3_expected(G, g, p, d):
    """Invariant dimensions of the three summands listed for S3 on C^6."""
    label = G.labels[g]
    if label == "1":
        return bigraded_molien(G, tuple(range(G.order)), p, d)
    fixed = 4 if label == "(12)" else 2
    c = G.codims[g]
    return comb(fixed, p - c) * comb(fixed + d - 1, d) if p >= c else 0


def test_criterion_13_determinant(report):
    bad, survived = [], {}
    for n in TEST_GROUPS:
        G = group(n)
        for g in G.class_reps:
            ok, dims = determinant_vanishing_check(G[g], dmax=3)
            if not ok:
                bad.append((n, G.labels[g]))
            if n == "s3c6" and any(dims.values()):
                survived[G.labels[g]] = dims
    G = group("s3c6")
    vols = VolAssignment(G)
    listed = all(
        v == _c6s3_expected(G, idx(G, lab), p, d) for lab, dims in survived.items() for (p, d), v in dims.items()
    )
    # the chosen top forms are multiples of the listed ones
    g12, g123 = idx(G, "(12)"), idx(G, "(123)")
    v = [forms(G, a) - forms(G, b) for a, b in [(0, 2), (1, 3), (2, 4), (3, 5)]]
    w12, w123 = v[0] ^ v[1], v[0] ^ v[1] ^ v[2] ^ v[3]
    prop = all(len(set(x.terms) ^ set(y.terms)) == 0 and len({y.terms[k] / x.terms[k] for k in x.terms}) == 1 for x, y in [(w12, vols[g12]), (w123, vols[g123])])
    ok = not bad and sorted(survived) == ["(12)", "(123)", "1"] and listed and prop
    report(13, ok, f"det != 1 components vanish; S3 on C6 survivors {sorted(survived)}" + (f"; failing {bad}" if bad else ""))


def test_criterion_14_molien(report):
    bad, count = [], 0
    for n in ["s3c6", "g212"] + TEST_GROUPS:
        G = group(n)
        subgroups = {tuple(range(G.order))} | {tuple(G.centralizer(g)) for g in G.class_reps}
        for L in sorted(subgroups):
            for d in range(5):
                count += 1
                if molien_dims(G, L, d) != averaged_invariant_dim(G, L, d):
                    bad.append((n, len(L), d))
    report(14, not bad, f"{count} (subgroup, degree) cells" + (f"; failing {bad[:5]}" if bad else ""))


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
