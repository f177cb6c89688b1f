import random
from math import comb

import pytest

from skewcoh.cyclotomic import CycNum
from skewcoh.exterior import ExtForm, VolAssignment
from skewcoh.hochschild import Cochain, proj_H, smash_cup
from skewcoh.invariants import (
    InvarianceError,
    InvariantClass,
    act_on_cochain,
    averaged_invariant_dim,
    class_assemble,
    class_decompose,
    determinant_vanishing_check,
    is_invariant,
    mackey_cup,
    mackey_cup_bruteforce,
    molien_dims,
    transfer,
)
from skewcoh.polys import Poly
from skewcoh.verify import invariant_basis


def ix(G, s):
    return G.labels.index(s)


def volterm(G, vols, g, f=1):
    return Cochain.term(G, f, vols[g], g)


def test_act_on_cochain(grp):
    H = grp("s3c6")
    vols = VolAssignment(H)
    g12, g23, g123 = ix(H, "(12)"), ix(H, "(23)"), ix(H, "(123)")
    a = volterm(H, vols, g12)
    assert act_on_cochain(0, a) == a
    moved = act_on_cochain(g123, a)
    assert moved.support() == [g23]
    # a scalar multiple of vol_(23)
    c = next(iter(vols[g23].terms.items()))
    scale = moved.terms[(g23, c[0])].terms[(0,) * H.n] / c[1]
    assert moved == volterm(H, vols, g23).scale(scale)
    G = grp("elemabel")
    alpha = Cochain.term(G, Poly.var(G.n, G.m, 1), ExtForm.basis(G.n, G.m, 1), ix(G, "a1"))
    assert act_on_cochain(ix(G, "a1"), alpha) == alpha


def test_transfer_examples(grp):
    H = grp("s3c6")
    vols = VolAssignment(H)
    g12, g23, g123 = ix(H, "(12)"), ix(H, "(23)"), ix(H, "(123)")
    C3 = sorted(H.subgroup_generated([g123]))
    p = smash_cup(volterm(H, vols, g12), volterm(H, vols, g23))
    assert p.support() == [g123]
    assert transfer([0], C3, p) == p.scale(CycNum.rational(H.m, 3))
    assert transfer(C3, C3, p) == p
    with pytest.raises(InvarianceError):
        transfer(C3, range(H.order), volterm(H, vols, g12))


def test_transfer_composition(grp):
    G = grp("g412")
    vols = VolAssignment(G)
    rng = random.Random(0)
    everything = list(range(G.order))
    for _ in range(10):
        g = rng.randrange(G.order)
        a = volterm(G, vols, g, Poly.var(G.n, G.m, rng.randrange(G.n)))
        L = G.centralizer(g)
        assert transfer(L, everything, transfer([0], L, a)) == transfer([0], everything, a)


def test_class_decompose_examples(grp):
    H = grp("s3c6")
    vols = VolAssignment(H)
    g12 = ix(H, "(12)")
    f = Poly.var(H.n, H.m, 0) + Poly.var(H.n, H.m, 2) + Poly.var(H.n, H.m, 4)
    ident = Cochain.term(H, f, ExtForm.one(H.n, H.m), 0)
    (c,) = class_decompose(ident)
    assert c.class_rep == 0
    orbit = transfer(H.centralizer(g12), range(H.order), volterm(H, vols, g12))
    assert sorted(orbit.support()) == sorted(ix(H, t) for t in ("(12)", "(13)", "(23)"))
    parts = class_decompose(orbit)
    assert [p.class_rep for p in parts] == [g12]
    assert class_decompose(Cochain(H)) == []
    assert class_assemble(parts) == orbit


@pytest.mark.parametrize("name", ["s3c6", "g212", "g312"])
def test_round_trip_and_subalgebra(grp, name):
    G = grp(name)
    basis = invariant_basis(G, G.n, 1)
    rng = random.Random(3)
    for a, _ in basis:
        A = class_assemble([a])
        assert is_invariant(A, range(G.order))
        (back,) = class_decompose(A)
        assert back.class_rep == a.class_rep and back.component == a.component
    for _ in range(20):
        (a, _), (b, _) = rng.choice(basis), rng.choice(basis)
        prod = proj_H(smash_cup(class_assemble([a]), class_assemble([b]))).cochain
        assert is_invariant(prod, range(G.order))


@pytest.mark.parametrize("name", ["s3c6", "g212", "g312", "nonfaithful", "s3sign"])
def test_low_degree_invariants_on_kernel(grp, name):
    G = grp(name)
    K = set(G.kernel_K)
    for a, (p, d) in invariant_basis(G, 1, 2):
        if p <= 1:
            assert a.class_rep in K


def test_mackey_matches_bruteforce_small(grp):
    G = grp("g312")
    basis = invariant_basis(G, G.n, 1)
    for a, (p, d) in basis:
        for b, (q, e) in basis:
            if p + q <= G.n:
                got = {x.class_rep: x.component for x in mackey_cup(a, b)}
                want = {x.class_rep: x.component for x in mackey_cup_bruteforce(a, b)}
                assert {k: v for k, v in got.items() if v} == {k: v for k, v in want.items() if v}


def test_molien_examples(grp):
    G = grp("elemabel")
    for d in range(5):
        assert molien_dims(G, (0,), d) == comb(G.n + d - 1, d)
    assert molien_dims(G, (0, ix(G, "a1")), 1) == 2
    S = grp("s3nat")
    assert molien_dims(S, tuple(range(S.order)), 1) == 1
    assert averaged_invariant_dim(S, tuple(range(S.order)), 1) == 1
    # S3 natural: invariants are generated in degrees 1, 2, 3
    assert [molien_dims(S, tuple(range(S.order)), d) for d in range(5)] == [1, 1, 2, 3, 4]


def test_determinant_examples(grp):
    S = grp("s3nat")
    ok, dims = determinant_vanishing_check(S[ix(S, "(12)")], dmax=2)
    assert ok and not any(dims.values())
    ok, dims = determinant_vanishing_check(S[0], dmax=1)
    assert ok and dims[(0, 0)] == 1
    H = grp("s3c6")
    ok, dims = determinant_vanishing_check(H[ix(H, "(12)")], dmax=1)
    assert ok and dims[(2, 0)] == 1
