import random

import numpy as np
import pytest

from skewcoh.exactlinalg import Mat
from skewcoh.groups import GroupError, build_standard_group, close_group, conjugacy_data, double_cosets, grpn


def test_elemabel_closure():
    gens = [Mat.diag([-1, 1, 1], 1), Mat.diag([1, -1, 1], 1), Mat.diag([1, 1, -1], 1)]
    assert close_group(gens).order == 8


def test_trivial_closure():
    G = close_group([Mat.identity(3, 1)])
    assert G.order == 1 and G.summary()["class_count"] == 1


def test_c6s3_order(grp):
    G = grp("s3c6")
    assert G.order == 6 and G.n == 6


def test_c6s3_classes(grp):
    G = grp("s3c6")
    assert sorted(G.labels[r] for r in G.class_reps) == ["(12)", "(123)", "1"]
    assert len(G.centralizer(G.labels.index("(12)"))) == 2
    assert len(G.centralizer(G.labels.index("(123)"))) == 3


def test_abelian_classes(grp):
    G = grp("elemabel")
    assert len(G.class_reps) == G.order
    assert all(len(G.centralizer(g)) == G.order for g in range(G.order))


def test_class_equation_g412(grp):
    G = grp("g412")
    sizes = [len(G.conjugacy_class(r)) for r in G.class_reps]
    assert sum(sizes) == 32
    # brute-force conjugation
    for r in G.class_reps:
        brute = {G.conj(h, r) for h in range(G.order)}
        assert brute == set(G.conjugacy_class(r))


def test_double_cosets_c6s3(grp):
    G = grp("s3c6")
    Z = G.centralizer(G.labels.index("(12)"))
    D = double_cosets(Z, Z, G)
    assert [G.labels[d] for d in D] == ["1", "(123)"]
    everything = tuple(range(G.order))
    assert double_cosets(everything, everything, G) == [0]
    assert sorted(double_cosets((0,), (0,), G)) == list(range(G.order))


@pytest.mark.parametrize("name", ["s3c6", "g412", "b3"])
def test_double_cosets_partition(grp, name):
    G = grp(name)
    for g in G.class_reps:
        Z = G.centralizer(g)
        D = double_cosets(Z, Z, G)
        cells = [{G.product(a, d, b) for a in Z for b in Z} for d in D]
        assert sum(len(c) for c in cells) == G.order
        assert set().union(*cells) == set(range(G.order))


def test_g422(grp):
    G = grp("g422")
    assert G.order == 16 and "diag(i,i)" in G.labels


def test_symmetric_copies_matches_c6s3(grp):
    G = build_standard_group({"kind": "symmetric", "n": 3, "copies": 2})
    assert [g.matrix for g in G] == [g.matrix for g in grp("s3c6")]


@pytest.mark.parametrize("n", [2, 3, 4])
def test_g11n_is_symmetric(n):
    from math import factorial

    assert grpn(1, 1, n).order == factorial(n)


@pytest.mark.parametrize("name", ["elemabel", "s3c6", "g412", "b3", "nonfaithful", "s3sign"])
def test_table_axioms(grp, name):
    G = grp(name)
    T = G.table
    rng = random.Random(0)
    for _ in range(300):
        a, b, c = (rng.randrange(G.order) for _ in range(3))
        assert T[T[a, b], c] == T[a, T[b, c]]
    assert np.all(T[np.arange(G.order), G.inv] == 0)
    # kernel: normal, acts trivially
    K = set(G.kernel_K)
    assert all(G.conj(h, k) in K for h in range(G.order) for k in K)
    assert all(G[k].fixed_space.is_full() for k in K)
    for r in G.class_reps:
        for x in G.conjugacy_class(r):
            assert G.codims[x] == G.codims[r] and G[x].determinant == G[r].determinant


def test_nonfaithful_kernels(grp):
    assert len(grp("nonfaithful").kernel_K) == 2
    assert len(grp("s3sign").kernel_K) == 3


def test_cap_enforced():
    with pytest.raises(GroupError):
        grpn(3, 1, 4, cap=100)


def test_bad_generators():
    with pytest.raises(GroupError):
        close_group([Mat.from_entries([[1, 1], [0, 1]], 1)], cap=50)
    with pytest.raises(GroupError):
        close_group([Mat.from_entries([[0, 0], [0, 1]], 1)])


def test_deterministic_indexing():
    a = grpn(4, 2, 2)
    b = grpn(4, 2, 2)
    assert a.labels == b.labels and np.array_equal(a.table, b.table)


def test_conjugacy_data(grp):
    G = grp("s3nat")
    classes, reps, cents = conjugacy_data(G)
    assert len(reps) == 3 and sum(len(c) for c in classes) == 6
