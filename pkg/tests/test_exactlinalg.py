import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from skewcoh.cyclotomic import CycNum
from skewcoh.exactlinalg import (
    Mat,
    annihilator,
    eigen_decomposition,
    fixed_space,
    intersection,
    perp_space,
    rref_basis,
    span_sum,
)


def vec(*xs, m=1):
    return tuple(CycNum.rational(m, x) for x in xs)


def test_rref_scaling():
    assert rref_basis([vec(2, 0, 0)]).basis == (vec(1, 0, 0),)


def test_rref_drops_zero():
    assert rref_basis([vec(1, 1, 0), vec(0, 0, 0)]).basis == (vec(1, 1, 0),)


def test_rref_full_span():
    assert rref_basis([vec(1, 0), vec(0, 1), vec(1, 1)]).is_full()


def test_fixed_and_perp_of_a1():
    g = Mat.diag([-1, 1, 1], 2)
    assert fixed_space(g) == rref_basis([vec(0, 1, 0, m=2), vec(0, 0, 1, m=2)])
    assert perp_space(g) == rref_basis([vec(1, 0, 0, m=2)])


def test_identity_fixed_everything():
    g = Mat.identity(3, 1)
    assert fixed_space(g).is_full() and perp_space(g).is_zero()


def test_fixed_space_of_transposition_on_c6(grp):
    G = grp("s3c6")
    g = G[G.labels.index("(12)")]
    # basis order v1, w1, v2, w2, v3, w3
    want = rref_basis([vec(1, 0, 1, 0, 0, 0, m=6), vec(0, 1, 0, 1, 0, 0, m=6), vec(0, 0, 0, 0, 1, 0, m=6), vec(0, 0, 0, 0, 0, 1, m=6)])
    assert g.fixed_space == want


def test_annihilators():
    W = rref_basis([vec(0, 1, 0), vec(0, 0, 1)])
    assert annihilator(W, 1) == rref_basis([vec(1, 0, 0)])
    Z = rref_basis([], 3)
    assert annihilator(Z, 1).is_full()
    # span{v1+v2}: solve a + b = 0
    A = annihilator(rref_basis([vec(1, 1)]), 1)
    assert A == rref_basis([vec(1, -1)])


def test_eigen_decompositions():
    out = eigen_decomposition(Mat.diag([-1, 1, 1], 2))
    assert [(str(l), S.basis) for l, S in out] == [("1", rref_basis([vec(0, 1, 0, m=2), vec(0, 0, 1, m=2)]).basis), ("-1", (vec(1, 0, 0, m=2),))]
    ((lam, S),) = eigen_decomposition(Mat.identity(2, 1))
    assert lam == CycNum.one(1) and S.is_full()
    swap = Mat.from_entries([[0, 1], [1, 0]], 2)
    out = dict((str(l), S) for l, S in eigen_decomposition(swap))
    assert out["1"] == rref_basis([vec(1, 1, m=2)])
    assert out["-1"] == rref_basis([vec(1, -1, m=2)])


def _apply(M, v):
    return tuple(sum((M[i, j] * v[j] for j in range(M.ncols)), CycNum.zero(M.m)) for i in range(M.nrows))


@pytest.mark.parametrize("name", ["elemabel", "s3c6", "g412", "g312", "b3"])
def test_space_invariants(grp, name):
    G = grp(name)
    for g in G:
        F, P = g.fixed_space, g.perp_space
        assert F.dim + P.dim == G.n
        assert intersection(F, P, G.m).is_zero()
        assert span_sum(F, P).is_full()
        assert annihilator(annihilator(F, G.m), G.m) == F
        for lam, S in eigen_decomposition(g.matrix, g.order):
            for v in S.basis:
                assert _apply(g.matrix, v) == tuple(lam * x for x in v)


small = st.integers(-3, 3)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(small, min_size=4, max_size=4), min_size=1, max_size=5))
def test_double_annihilator_random(rows):
    W = rref_basis([tuple(CycNum.rational(1, x) for x in r) for r in rows], 4)
    assert annihilator(annihilator(W, 1), 1) == W


def test_det_and_inverse():
    M = Mat.from_entries([[2, 1], [1, 1]], 1)
    assert M.det() == CycNum.one(1)
    assert (M @ M.inverse()).is_identity()
