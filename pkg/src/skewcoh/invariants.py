"""Group action on cochains, transfers, and the product on the G-invariant part.

A G-invariant class is stored through its components at the chosen class
representatives: the component at g is invariant under the centralizer Z(g),
and the whole class is recovered as the sum of its G/Z(g)-translates.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from .cyclotomic import CycNum
from .exactlinalg import Mat, rref
from .exterior import ExtForm, dual_action
from .groups import double_cosets
from .hochschild import Cochain, _acted_form, h_basis, proj_H, smash_cup
from .polys import Poly, monomials, poly_action

__all__ = [
    "InvarianceError",
    "InvariantClass",
    "act_on_cochain",
    "is_invariant",
    "transfer",
    "class_decompose",
    "class_assemble",
    "mackey_cup",
    "mackey_cup_bruteforce",
    "molien_dims",
    "bigraded_molien",
    "averaged_invariant_dim",
    "invariant_component_basis",
    "invariant_component_dims",
    "determinant_vanishing_check",
]


class InvarianceError(ValueError):
    pass


def act_on_cochain(h, alpha: Cochain) -> Cochain:
    """^h(f (x) w (x) g) = ^h f (x) ^h w (x) h g h^-1."""
    G = alpha.G
    hi = h.index if hasattr(h, "index") else int(h)
    if hi == 0:
        return alpha
    he = G[hi]
    out = {}
    for (g, S), f in alpha.terms.items():
        hf = poly_action(he, f)
        cg = G.conj(hi, g)
        for T, c in _acted_form(he, S).terms.items():
            key = (cg, T)
            v = hf.scale(c)
            out[key] = out[key] + v if key in out else v
    return Cochain(G, out)


def is_invariant(alpha: Cochain, L) -> bool:
    return all(act_on_cochain(h, alpha) == alpha for h in L if h)


def transfer(J, L, alpha: Cochain, check=True) -> Cochain:
    """T^L_J(alpha) = sum over h in [L/J] of ^h alpha."""
    G = alpha.G
    if check:
        if not set(J) <= set(L):
            raise InvarianceError("J is not contained in L")
        if not is_invariant(alpha, J):
            raise InvarianceError("cochain is not invariant under J")
    out = Cochain(G)
    for h in G.left_coset_reps(L, J):
        out = out + act_on_cochain(h, alpha)
    return out


@dataclass(frozen=True)
class InvariantClass:
    class_rep: int
    component: Cochain  # tagged by class_rep only, Z(class_rep)-invariant

    @property
    def G(self):
        return self.component.G

    def bidegree(self):
        p = self.component.degree
        d = self.component.poly_degrees()
        return p, (max(d) if d else 0)

    def __repr__(self):
        return f"InvariantClass({self.G.labels[self.class_rep]}: {self.component!r})"


def class_decompose(alpha: Cochain, check=True):
    """Components of a G-invariant cochain at the class representatives."""
    G = alpha.G
    if check and not is_invariant(alpha, range(G.order)):
        raise InvarianceError("cochain is not G-invariant")
    reps = set(G.class_reps)
    out = []
    for g in alpha.support():
        if g in reps:
            out.append(InvariantClass(g, alpha.restrict(g)))
    return out


def class_assemble(parts):
    parts = list(parts)
    if not parts:
        raise ValueError("nothing to assemble")
    G = parts[0].G
    out = Cochain(G)
    for a in parts:
        out = out + transfer(G.centralizer(a.class_rep), range(G.order), a.component, check=False)
    return out


def _collect(G, cochain):
    return [InvariantClass(g, cochain.restrict(g)) for g in cochain.support()]


def mackey_choices(G, g, h):
    """[(x, y, k)] for x in the double coset representatives Z(g) \\ G / Z(h)."""
    Zg, Zh = G.centralizer(g), G.centralizer(h)
    reps = set(G.class_reps)
    out = []
    for x in double_cosets(Zg, Zh, G):
        for y in range(G.order):
            k = G.mul(G.conj(y, g), G.conj(G.mul(y, x), h))
            if k in reps:
                out.append((x, y, k))
                break
        else:  # pragma: no cover - some conjugate always lands on a representative
            raise RuntimeError("no conjugating element found")
    return out


def mackey_cup(a: InvariantClass, b: InvariantClass):
    """Product of invariant classes through double cosets and transfers."""
    G = a.G
    g, h = a.class_rep, b.class_rep
    Zg, Zh = G.centralizer(g), G.centralizer(h)
    total = Cochain(G)
    for x, y, k in mackey_choices(G, g, h):
        yx = G.mul(y, x)
        left = act_on_cochain(y, a.component)
        right = act_on_cochain(yx, b.component)
        prod = proj_H(smash_cup(left, right)).cochain
        if prod.is_zero():
            continue
        J = sorted(set(G.conjugate_subgroup(y, Zg)) & set(G.conjugate_subgroup(yx, Zh)))
        total = total + transfer(J, G.centralizer(k), prod)
    return _collect(G, total)


def mackey_cup_bruteforce(a: InvariantClass, b: InvariantClass):
    """Assemble both inputs, multiply in full, project, and decompose again."""
    A = class_assemble([a])
    B = class_assemble([b])
    prod = proj_H(smash_cup(A, B)).cochain
    return class_decompose(prod, check=True)


# ---------------------------------------------------------------------------
# invariant dimensions


def _principal_minor_sums(M: Mat):
    """e_k(eigenvalues) for k = 0..n, as sums of principal minors."""
    n, m = M.nrows, M.m
    out = [CycNum.one(m)]
    for k in range(1, n + 1):
        acc = CycNum.zero(m)
        for I in combinations(range(n), k):
            sub = Mat([[M[i, j] for j in I] for i in I], m)
            acc = acc + sub.det()
        out.append(acc)
    return out


@lru_cache(maxsize=None)
def _inverse_det_series(M: Mat, d):
    """Coefficients of 1/det(1 - tM) up to t^d."""
    e = _principal_minor_sums(M)
    m = M.m
    # det(1 - tM) = sum_k (-1)^k e_k t^k
    c = [e[k] if k % 2 == 0 else -e[k] for k in range(len(e))]
    inv = [CycNum.one(m)]
    for j in range(1, d + 1):
        acc = CycNum.zero(m)
        for k in range(1, min(j, len(c) - 1) + 1):
            acc = acc - c[k] * inv[j - k]
        inv.append(acc)
    return inv


def molien_dims(G, L, d):
    """Coefficient of t^d in (1/|L|) sum_{g in L} 1/det(1 - t g)."""
    acc = CycNum.zero(G.m)
    for g in L:
        acc = acc + _inverse_det_series(G[g].matrix, d)[d]
    val = acc / len(L)
    if not val.is_rational() or val.to_rational().denominator != 1:
        raise ArithmeticError(f"Molien coefficient {val} is not an integer")
    return int(val.to_rational())


def bigraded_molien(G, L, p, d):
    """dim (S(V)_d (x) Lambda^p V*)^L = (1/|L|) sum_g [t^d]det(1 - t g)^-1 e_p(g^-1)."""
    acc = CycNum.zero(G.m)
    for g in L:
        ge = G[g]
        s = _inverse_det_series(ge.matrix, d)[d]
        e = _principal_minor_sums(ge.inverse_matrix)[p] if p <= G.n else CycNum.zero(G.m)
        acc = acc + s * e
    val = acc / len(L)
    if not val.is_rational() or val.to_rational().denominator != 1:
        raise ArithmeticError(f"bigraded Molien coefficient {val} is not an integer")
    return int(val.to_rational())


def _vectorize(cochains):
    keys = {}
    rows = []
    for c in cochains:
        row = {}
        for (g, S), f in c.terms.items():
            for e, v in f.terms.items():
                k = keys.setdefault((g, S, e), len(keys))
                row[k] = v
        rows.append(row)
    return rows, keys


def _rank_and_basis(cochains, G):
    """Row-reduced basis of the span of cochains."""
    rows, keys = _vectorize(cochains)
    if not keys:
        return []
    inv = {i: k for k, i in keys.items()}
    zero = CycNum.zero(G.m)
    dense = [[r.get(i, zero) for i in range(len(keys))] for r in rows]
    red, _ = rref(dense, len(keys))
    out = []
    for r in red:
        terms = {}
        for i, v in enumerate(r):
            if v:
                g, S, e = inv[i]
                terms.setdefault((g, S), {})[e] = v
        out.append(Cochain(G, {k: Poly(G.n, G.m, t) for k, t in terms.items()}))
    return out


def averaged_invariant_dim(G, L, d):
    """dim S(V)_d^L by averaging monomials over L and taking the rank."""
    n, m = G.n, G.m
    scale = CycNum.rational(m, 1) / len(L)
    images = []
    for e in monomials(n, d):
        f = Poly.monomial(e, m)
        acc = Poly.zero(n, m)
        for h in L:
            acc = acc + poly_action(G[h], f)
        images.append(acc.scale(scale))
    one = ExtForm.one(n, m)
    return len(_rank_and_basis([Cochain.term(G, f, one, 0) for f in images], G))


def _reynolds(alpha, L):
    G = alpha.G
    acc = Cochain(G)
    for h in L:
        acc = acc + act_on_cochain(h, alpha)
    return acc.scale(CycNum.rational(G.m, 1) / len(L))


def invariant_component_basis(G, g, p, d, vols=None):
    """Basis of the Z(g)-invariants of H_g in bidegree (p, d)."""
    Z = G.centralizer(g)
    images = [_reynolds(b, Z) for b in h_basis(G, g, p, d, vols)]
    return _rank_and_basis([c for c in images if c], G)


def invariant_component_dims(G, g, pmax, dmax, vols=None):
    return {(p, d): len(invariant_component_basis(G, g, p, d, vols)) for p in range(pmax + 1) for d in range(dmax + 1)}


def determinant_vanishing_check(g, pmax=None, dmax=3, vols=None):
    """(ok, dims): ok is False only if det g != 1 and some invariant dimension is nonzero."""
    G = g.group
    pmax = G.n if pmax is None else pmax
    dims = invariant_component_dims(G, g.index, pmax, dmax, vols)
    if g.determinant == 1:
        return True, dims
    return all(v == 0 for v in dims.values()), dims
