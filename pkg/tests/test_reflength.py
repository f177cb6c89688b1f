import pytest

from skewcoh.reflength import compare_orders_report, length_table, reflection_length, reflections_of


def ix(G, s):
    return G.labels.index(s)


def test_reflections(grp):
    assert [g.label for g in reflections_of(grp("elemabel"))] == ["a1", "a2", "a3"]
    assert reflections_of(grp("s3c6")) == []
    R = reflections_of(grp("g412"))
    # diag(z,1), diag(1,z) for z in {i,-1,-i}, and (12)diag(z,z^-1) for the four 4th roots z
    diagonal = [g for g in R if g.label.startswith("diag")]
    assert len(diagonal) == 6 and len(R) == 10


def test_lengths(grp):
    G = grp("g422")
    for s in reflections_of(G):
        assert reflection_length(s) == (1, [s.index])
    l, w = reflection_length(G[ix(G, "diag(i,i)")])
    assert l == 3 and G.product(*w) == ix(G, "diag(i,i)")
    B2 = grp("g212")
    assert reflection_length(B2[ix(B2, "diag(-1,-1)")])[0] == 2


@pytest.mark.parametrize("name,equal", [("b3", True), ("g412", True), ("g312", True), ("s4", True), ("g212", True), ("g422", False)])
def test_compare(grp, name, equal):
    r = compare_orders_report(grp(name))
    assert r["all_equal"] is equal
    if equal:
        assert r["minimal_are_reflections"] and r["absolute_order_matches"]
    else:
        assert "diag(i,i)" in r["witnesses"]


@pytest.mark.parametrize("name", ["b3", "g412", "g422", "elemabel", "g312"])
def test_length_properties(grp, name):
    G = grp(name)
    T = length_table(G)
    L = T.length
    for g in range(G.order):
        assert L[g] >= G.codims[g]
        w = T.witness(g)
        assert len(w) == L[g] and (G.product(*w) if w else 0) == g
        for h in range(G.order):
            assert L[G.mul(g, h)] <= L[g] + L[h]
