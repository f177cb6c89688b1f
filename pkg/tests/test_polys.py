import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from skewcoh.cyclotomic import CycNum
from skewcoh.polys import (
    Poly,
    SkewElem,
    demazure_partial,
    monomials,
    poly_action,
    quantum_integer,
    quantum_partial,
    reduce_mod_perp,
    skew_multiply,
)


def ix(G, s):
    return G.labels.index(s)


def x(G, i, k=1):
    return Poly.var(G.n, G.m, i, k)


def test_poly_action_examples(grp):
    G = grp("elemabel")
    a1 = G[ix(G, "a1")]
    assert poly_action(a1, x(G, 0, 2)) == x(G, 0, 2)
    assert poly_action(a1, x(G, 0) * x(G, 1)) == (x(G, 0) * x(G, 1)).scale(-1)
    H = grp("s3c6")
    # basis v1, w1, v2, w2, v3, w3
    assert poly_action(H[ix(H, "(12)")], x(H, 0)) == x(H, 2)


def test_skew_examples(grp):
    G = grp("elemabel")
    a1 = ix(G, "a1")
    v1 = x(G, 0)
    got = skew_multiply(SkewElem.basis(v1, a1), SkewElem.basis(v1, 0), G)
    assert got == SkewElem.basis((v1 * v1).scale(-1), a1)
    one = Poly.const(G.n, G.m)
    y = SkewElem.basis(x(G, 2) + one, ix(G, "a2a3"))
    assert skew_multiply(SkewElem.basis(one, 0), y, G) == y
    for g in range(G.order):
        assert skew_multiply(SkewElem.basis(one, g), SkewElem.basis(one, G.inverse(g)), G) == SkewElem.basis(one, 0)


def test_quantum_partials():
    n, m = 2, 3
    eps = CycNum.zeta(3)
    v3 = Poly.var(n, m, 0, 3)
    v2 = Poly.var(n, m, 0, 2)
    assert quantum_partial(v3, 0, eps) == v2.scale(CycNum.one(m) + eps + eps * eps)
    assert quantum_partial(v3, 0, 1) == v2.scale(3)
    assert quantum_partial(Poly.var(n, m, 0) * Poly.var(n, m, 1), 0, eps) == Poly.var(n, m, 1)
    assert quantum_integer(3, eps).is_zero()


@pytest.mark.parametrize("m,k", [(2, 1), (3, 1), (4, 1), (4, 3), (6, 5), (8, 3)])
def test_quantum_partial_matches_difference_quotient(m, k):
    eps = CycNum.zeta(m, k)
    rng = random.Random(m * 10 + k)
    for d in range(5):
        for e in monomials(3, d):
            f = Poly.monomial(e, m, CycNum.rational(m, rng.randint(1, 5)))
            for i in range(3):
                assert quantum_partial(f, i, eps) == demazure_partial(f, i, eps)


def test_reduce_mod_perp_examples(grp):
    G = grp("s3c6")
    g = G[ix(G, "(12)")]
    v1, v2, v3 = x(G, 0), x(G, 2), x(G, 4)
    assert reduce_mod_perp(g, v3) == v3
    assert reduce_mod_perp(g, v1 - v2).is_zero()
    assert reduce_mod_perp(g, v1) == (v1 + v2).scale(CycNum.rational(G.m, 1) / 2)


def rand_poly(rng, n, m, deg=2, terms=4):
    f = Poly.zero(n, m)
    for _ in range(terms):
        d = rng.randint(0, deg)
        mons = monomials(n, d)
        f = f + Poly.monomial(rng.choice(mons), m, CycNum.rational(m, rng.randint(-3, 3)))
    return f


@pytest.mark.parametrize("name", ["elemabel", "s3c6", "g412", "g312", "b3"])
def test_reduce_properties(grp, name):
    G = grp(name)
    rng = random.Random(7)
    for g in G:
        f, h = rand_poly(rng, G.n, G.m), rand_poly(rng, G.n, G.m)
        assert reduce_mod_perp(g, f - poly_action(g, f)).is_zero()
        assert reduce_mod_perp(g, f * h) == reduce_mod_perp(g, f) * reduce_mod_perp(g, h)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_skew_associative(seed):
    from conftest import bundled

    G = bundled("g312")
    rng = random.Random(seed)
    a, b, c = (SkewElem.basis(rand_poly(rng, G.n, G.m, 1, 2), rng.randrange(G.order)) for _ in range(3))
    assert skew_multiply(skew_multiply(a, b, G), c, G) == skew_multiply(a, skew_multiply(b, c, G), G)


def test_action_is_a_group_action(grp):
    G = grp("g412")
    rng = random.Random(3)
    f = rand_poly(rng, G.n, G.m, 3, 5)
    for g in G:
        for h in G:
            assert poly_action(G[G.mul(g.index, h.index)], f) == poly_action(g, poly_action(h, f))
