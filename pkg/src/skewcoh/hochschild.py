"""Cochains S(V) (x) Lambda V* (x) CG, their products, and cohomology representatives.

A Cochain maps (g, S) to a polynomial, S a sorted tuple of dual-basis indices,
so sum f (x) e*_S (x) g is stored term by term and equality is exact.
Evaluation on basis vectors uses the determinant pairing e*_S(e_S) = 1.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, permutations
from math import comb

from .cyclotomic import CycNum
from .exactlinalg import Mat, annihilator, eigen_decomposition, rank, rref
from .exterior import ExtForm, VolAssignment, _sort_sign, dual_action, merge_sign, transform_forms, wedge, wedge_all
from .polys import (
    Poly,
    SkewElem,
    linear_substitute,
    monomials,
    poly_action,
    quantum_partial,
    reduce_mod_perp,
    skew_multiply,
)

__all__ = [
    "Cochain",
    "NotCocycleError",
    "HClass",
    "classify",
    "smash_cup",
    "proj_H",
    "koszul_codifferential",
    "koszul_codifferential_eval",
    "EigenBasis",
    "eigenbasis",
    "upsilon_eval",
    "cup_via_bar",
    "phi_star_upsilon_check",
    "truncated_cohomology_dims",
    "cupformula_product",
    "z_basis",
    "h_basis",
    "in_Z",
    "in_B",
]


class NotCocycleError(ValueError):
    pass


class Cochain:
    __slots__ = ("G", "terms")

    def __init__(self, G, terms=None):
        self.G = G
        self.terms = {k: f for k, f in (terms or {}).items() if f}

    # -- constructors -----------------------------------------------------------

    @classmethod
    def zero(cls, G):
        return cls(G)

    @classmethod
    def term(cls, G, f, form, g):
        """f (x) form (x) g; f may be a Poly or a scalar, g an index or GElem."""
        g = g.index if hasattr(g, "index") else int(g)
        if not isinstance(f, Poly):
            f = Poly.const(G.n, G.m, f)
        return cls(G, {(g, S): f.scale(c) for S, c in form.terms.items()})

    @classmethod
    def from_terms(cls, G, triples):
        out = cls(G)
        for f, form, g in triples:
            out = out + cls.term(G, f, form, g)
        return out

    # -- queries ----------------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def support(self):
        return sorted({g for g, _ in self.terms})

    def component(self, g):
        return {S: f for (h, S), f in self.terms.items() if h == g}

    def restrict(self, g):
        return Cochain(self.G, {k: f for k, f in self.terms.items() if k[0] == g})

    def degrees(self):
        return {len(S) for _, S in self.terms}

    @property
    def degree(self):
        d = self.degrees()
        if len(d) > 1:
            raise ValueError("cochain is not homogeneous")
        return d.pop() if d else 0

    def poly_degrees(self):
        out = set()
        for f in self.terms.values():
            out |= f.degrees()
        return out

    def form_of(self, g, exps):
        """The exterior form multiplying the monomial x^exps in the g-component."""
        n, m = self.G.n, self.G.m
        return ExtForm(n, m, {S: f.coeff(exps) for (h, S), f in self.terms.items() if h == g})

    def __eq__(self, other):
        return isinstance(other, Cochain) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- linear structure -------------------------------------------------------

    def __add__(self, other):
        t = dict(self.terms)
        for k, f in other.terms.items():
            t[k] = t[k] + f if k in t else f
        return Cochain(self.G, t)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        return Cochain(self.G, {k: f.scale(c) for k, f in self.terms.items()})

    def evaluate(self, idx):
        """alpha(e_{i1} ^ ... ^ e_{ip}) as a SkewElem."""
        sign, key = _sort_sign(idx)
        n, m = self.G.n, self.G.m
        if not sign:
            return SkewElem(n, m)
        comps = {g: f.scale(sign) for (g, S), f in self.terms.items() if S == key}
        return SkewElem(n, m, comps)

    def to_json(self):
        out = []
        for (g, S), f in sorted(self.terms.items()):
            out.append(
                {
                    "g": self.G.labels[g],
                    "form": [{"idx": list(S), "c": "1"}],
                    "poly": f.to_json(),
                }
            )
        return out

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for (g, S), f in sorted(self.terms.items()):
            w = "^".join(f"e{i + 1}*" for i in S) or "1"
            parts.append(f"[{f}] (x) {w} (x) {self.G.labels[g]}")
        return " + ".join(parts)


# ---------------------------------------------------------------------------
# Z and B membership


@lru_cache(maxsize=None)
def _ann_fixed_forms(g):
    # 1-forms vanishing on V^g: wedging with each kills exactly the multiples of vol_g
    return tuple(ExtForm.linear(r, g.group.m) for r in annihilator(g.fixed_space, g.group.m).basis)


def _divisible_by_vol(g, form: ExtForm):
    return all(wedge(form, phi).is_zero() for phi in _ann_fixed_forms(g))


def _monomials_of(comp):
    out = set()
    for f in comp.values():
        out.update(f.terms)
    return out


def in_Z(alpha: Cochain, g) -> bool:
    comp = alpha.component(g)
    ge = alpha.G[g]
    return all(_divisible_by_vol(ge, alpha.form_of(g, e)) for e in _monomials_of(comp))


def in_B(alpha: Cochain, g) -> bool:
    ge = alpha.G[g]
    return in_Z(alpha, g) and all(reduce_mod_perp(ge, f).is_zero() for f in alpha.component(g).values())


def classify(alpha: Cochain):
    """{g: 'in_B' | 'in_Z' | 'in_C_only'} for every tag in the support."""
    out = {}
    for g in alpha.support():
        if in_B(alpha, g):
            out[g] = "in_B"
        elif in_Z(alpha, g):
            out[g] = "in_Z"
        else:
            out[g] = "in_C_only"
    return out


# ---------------------------------------------------------------------------
# the smash product


@lru_cache(maxsize=200000)
def _acted_form(h, S):
    return dual_action(h, ExtForm(h.n, h.group.m, {S: CycNum.one(h.group.m)}))


def smash_cup(alpha: Cochain, beta: Cochain) -> Cochain:
    """(f (x) w (x) g) . (f' (x) w' (x) h) = f ^g(f') (x) w ^ ^g(w') (x) gh."""
    G = alpha.G
    out = {}
    acted = {}
    for (h, T), fb in beta.terms.items():
        for g in alpha.support():
            if (g, h, T) not in acted:
                acted[(g, h, T)] = (poly_action(G[g], fb), _acted_form(G[g], T))
    for (g, S), fa in alpha.terms.items():
        for (h, T), fb in beta.terms.items():
            gfb, gw = acted[(g, h, T)]
            gh = G.mul(g, h)
            prod = None
            for U, c in gw.terms.items():
                s = merge_sign(S, U)
                if not s:
                    continue
                key = (gh, tuple(sorted(S + U)))
                if prod is None:
                    prod = fa * gfb
                v = prod.scale(c if s > 0 else -c)
                out[key] = out[key] + v if key in out else v
    return Cochain(G, out)


# ---------------------------------------------------------------------------
# cohomology representatives


class HClass:
    """Normal form of a class in Z/B: every polynomial part lies in S(V^g).

    The underlying cochain (standard coordinates) is canonical, so equality of
    classes is equality of `cochain`.  `split(g)` re-expresses the g-part in
    coordinates adapted to V = V^g (+) perp.
    """

    __slots__ = ("cochain",)

    def __init__(self, cochain: Cochain):
        self.cochain = cochain

    @property
    def G(self):
        return self.cochain.G

    def is_zero(self):
        return self.cochain.is_zero()

    def __eq__(self, other):
        return isinstance(other, HClass) and self.cochain == other.cochain

    def __hash__(self):
        return hash(self.cochain)

    def __add__(self, other):
        return HClass(self.cochain + other.cochain)

    def scale(self, c):
        return HClass(self.cochain.scale(c))

    def split(self, g, vols: VolAssignment | None = None):
        """{(y-exponents, eta subset): coeff} with the g-part = sum coeff y^e eta ^ vol_g."""
        return split_coordinates(self.cochain, g, vols)

    def __repr__(self):
        return f"HClass({self.cochain!r})"


@lru_cache(maxsize=None)
def _split_basis(g):
    """Columns [U | W]: RREF bases of V^g and of Im(1-g), and the inverse matrix."""
    m, n = g.group.m, g.n
    U = list(g.fixed_space.basis)
    W = list(g.perp_space.basis)
    cols = U + W
    B = Mat([[cols[k][j] for k in range(n)] for j in range(n)], m)
    return B, B.inverse(), len(U)


def split_coordinates(alpha: Cochain, g, vols=None):
    G = alpha.G
    ge = G[g]
    vols = vols or VolAssignment(G)
    B, Binv, du = _split_basis(ge)
    n = G.n
    wtop = tuple(range(du, n))
    vol_b = transform_forms(B, vols[ge])
    lam = vol_b.coeff(wtop)
    out = {}
    for S, f in alpha.component(g).items():
        form_b = transform_forms(B, ExtForm(n, G.m, {S: CycNum.one(G.m)}))
        fy = linear_substitute(f, Binv)
        for T, c in form_b.terms.items():
            if T[len(T) - len(wtop) :] != wtop:
                continue
            for ye, pc in fy.terms.items():
                key = (ye, T[: len(T) - len(wtop)])
                v = pc * c / lam
                out[key] = out[key] + v if key in out else v
    res = {}
    for (ye, eta), v in out.items():
        if not v:
            continue
        if any(ye[du:]):
            raise NotCocycleError("polynomial part is not reduced modulo the perp ideal")
        res[(ye[:du], eta)] = v
    return res


def proj_H(alpha: Cochain) -> HClass:
    """Reduce each polynomial part into S(V^g); kills exactly the B-part."""
    G = alpha.G
    out = {}
    for g in alpha.support():
        if not in_Z(alpha, g):
            raise NotCocycleError(f"component at {G.labels[g]} is not in Z")
        ge = G[g]
        for (h, S), f in alpha.terms.items():
            if h == g:
                r = reduce_mod_perp(ge, f)
                if r:
                    out[(g, S)] = r
    return HClass(Cochain(G, out))


# ---------------------------------------------------------------------------
# Koszul codifferential


def _shift_poly(G, g, k):
    """x_k - ^g x_k as a linear polynomial."""
    n, m = G.n, G.m
    col = G[g].matrix.col(k)
    vec = [(CycNum.one(m) if i == k else CycNum.zero(m)) - col[i] for i in range(n)]
    return Poly.linear(vec, m)


def koszul_codifferential(alpha: Cochain) -> Cochain:
    """d*(f (x) w (x) g) = sum_k (x_k - ^g x_k) f (x) e*_k ^ w (x) g."""
    G = alpha.G
    out = {}
    shifts = {}
    for (g, S), f in alpha.terms.items():
        for k in range(G.n):
            if k in S:
                continue
            if (g, k) not in shifts:
                shifts[(g, k)] = _shift_poly(G, g, k)
            lin = shifts[(g, k)]
            if not lin:
                continue
            s = merge_sign((k,), S)
            key = (g, tuple(sorted((k,) + S)))
            v = (lin * f).scale(s)
            out[key] = out[key] + v if key in out else v
    return Cochain(G, out)


def _right_act_linear(x: SkewElem, k, G):
    """x . e_k in S(V)#G, (f (x) g) . v = f ^g(v) (x) g."""
    n, m = G.n, G.m
    out = {}
    for g, f in x.comps.items():
        out[g] = f * Poly.linear(G[g].matrix.col(k), m)
    return SkewElem(n, m, out)


def koszul_codifferential_eval(alpha: Cochain, p=None) -> Cochain:
    """d* by direct evaluation on every wedge e_{j0} ^ ... ^ e_{jp} (oracle for the closed form)."""
    G = alpha.G
    n, m = G.n, G.m
    if p is None:
        p = alpha.degree
    out = {}
    for J in combinations(range(n), p + 1):
        acc = SkewElem(n, m)
        for i, j in enumerate(J):
            rest = J[:i] + J[i + 1 :]
            val = alpha.evaluate(rest)
            left = SkewElem(n, m, {g: Poly.var(n, m, j) * f for g, f in val.comps.items()})
            term = left - _right_act_linear(val, j, G)
            acc = acc + (term if i % 2 == 0 else term.scale(-1))
        for g, f in acc.comps.items():
            out[(g, J)] = f
    return Cochain(G, out)


# ---------------------------------------------------------------------------
# the converter map and its evaluation


class EigenBasis:
    """An eigenbasis B_g (columns of B) with eigenvalues, and the coordinate changes."""

    def __init__(self, g, order=None):
        m, n = g.group.m, g.n
        vecs, eigs = [], []
        for lam, sp in eigen_decomposition(g.matrix, g.order):
            for v in sp.basis:
                vecs.append(v)
                eigs.append(lam)
        if order is not None:
            if sorted(order) != list(range(n)):
                raise ValueError("basis order must be a permutation")
            vecs = [vecs[i] for i in order]
            eigs = [eigs[i] for i in order]
        self.g = g
        self.eigenvalues = eigs
        self.B = Mat([[vecs[k][j] for k in range(n)] for j in range(n)], m)
        self.Binv = self.B.inverse()

    def to_eigen(self, f: Poly) -> Poly:
        # x_j = sum_k Binv[k, j] y_k
        return linear_substitute(f, self.Binv)

    def from_eigen(self, F: Poly) -> Poly:
        # y_k = b_k = sum_j B[j, k] x_j
        return linear_substitute(F, self.B)

    def form_to_eigen(self, w: ExtForm) -> ExtForm:
        # e*_j = sum_k B[j, k] b*_k
        return transform_forms(self.B, w)

    def partial_shifted(self, f: Poly, j) -> Poly:
        """^(s_1 ... s_{j-1}) (d_j f), all in eigen-coordinates."""
        d = quantum_partial(f, j, self.eigenvalues[j])
        if not d or j == 0:
            return d
        eps = self.eigenvalues[:j]
        out = {}
        for e, c in d.terms.items():
            for i in range(j):
                if e[i]:
                    c = c * eps[i] ** e[i]
            out[e] = c
        return Poly(f.n, f.m, out)


_bases = {}


def eigenbasis(g, order=None) -> EigenBasis:
    key = (id(g.group), g.index, tuple(order) if order is not None else None)
    b = _bases.get(key)
    if b is None:
        b = _bases[key] = EigenBasis(g, order)
    return b


def _eigen_components(alpha: Cochain, g, basis: EigenBasis):
    """The g-part of alpha as {J: F_J} with F_J in x-coordinates and J in B_g-dual indices."""
    G = alpha.G
    out = {}
    for (h, S), f in alpha.terms.items():
        if h != g:
            continue
        wb = basis.form_to_eigen(ExtForm(G.n, G.m, {S: CycNum.one(G.m)}))
        for J, c in wb.terms.items():
            v = f.scale(c)
            out[J] = out[J] + v if J in out else v
    return {J: F for J, F in out.items() if F}


def upsilon_eval(alpha: Cochain, args, orders=None, _cache=None) -> SkewElem:
    """Upsilon(alpha)(f_1 (x) ... (x) f_p) in S(V)#G.

    `orders` optionally maps a group index to a permutation of its default
    eigenbasis order.
    """
    G = alpha.G
    n, m = G.n, G.m
    p = len(args)
    degs = alpha.degrees()
    if degs and degs != {p}:
        raise ValueError(f"upsilon of a degree-{sorted(degs)} cochain takes that many arguments, got {p}")
    args = [a if isinstance(a, Poly) else Poly.const(n, m, a) for a in args]
    out = SkewElem(n, m)
    for g in alpha.support():
        basis = eigenbasis(G[g], (orders or {}).get(g))
        comps = _cache.get(("comps", g)) if _cache is not None else None
        if comps is None:
            comps = _eigen_components(alpha, g, basis)
            if _cache is not None:
                _cache[("comps", g)] = comps
        ys = [basis.to_eigen(f) for f in args]
        acc = Poly.zero(n, m)
        for J, F in comps.items():
            prod = Poly.const(n, m)
            for k, j in enumerate(J):
                d = basis.partial_shifted(ys[k], j)
                if not d:
                    prod = None
                    break
                prod = prod * d
            if prod is None:
                continue
            acc = acc + basis.from_eigen(prod) * F
        if acc:
            out = out + SkewElem(n, m, {g: acc})
    return out


def _perm_sign(perm):
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def _linear_args(G, idx):
    return [Poly.var(G.n, G.m, i) for i in idx]


def cup_via_bar(alpha: Cochain, beta: Cochain, orders=None) -> Cochain:
    """Phi*(Upsilon(alpha) cup Upsilon(beta)), evaluated on every wedge of basis vectors."""
    G = alpha.G
    n = G.n
    if alpha.is_zero() or beta.is_zero():
        return Cochain(G)
    p, q = alpha.degree, beta.degree
    if p + q > n:
        raise ValueError(f"degree overflow: {p} + {q} > {n}")
    ca, cb, ua, ub = {}, {}, {}, {}

    def ups(x, cache, ucache, idx):
        v = ucache.get(idx)
        if v is None:
            v = ucache[idx] = upsilon_eval(x, _linear_args(G, idx), orders, cache)
        return v

    out = {}
    for I in combinations(range(n), p + q):
        acc = None
        for perm in permutations(range(p + q)):
            seq = [I[i] for i in perm]
            a = ups(alpha, ca, ua, tuple(seq[:p]))
            if a.is_zero():
                continue
            b = ups(beta, cb, ub, tuple(seq[p:]))
            if b.is_zero():
                continue
            prod = skew_multiply(a, b, G)
            if _perm_sign(perm) < 0:
                prod = prod.scale(-1)
            acc = prod if acc is None else acc + prod
        if acc is not None:
            for g, f in acc.comps.items():
                out[(g, I)] = f
    return Cochain(G, out)


def phi_star_upsilon(alpha: Cochain, orders=None) -> Cochain:
    """Phi*(Upsilon(alpha)) as a cochain: alternating sum over orderings of each wedge."""
    G = alpha.G
    p = alpha.degree
    cache, ucache = {}, {}
    out = {}
    for I in combinations(range(G.n), p):
        acc = None
        for perm in permutations(range(p)):
            idx = tuple(I[i] for i in perm)
            v = ucache.get(idx)
            if v is None:
                v = ucache[idx] = upsilon_eval(alpha, _linear_args(G, idx), orders, cache)
            if v.is_zero():
                continue
            if _perm_sign(perm) < 0:
                v = v.scale(-1)
            acc = v if acc is None else acc + v
        if acc is not None:
            for g, f in acc.comps.items():
                out[(g, I)] = f
    return Cochain(G, out)


def phi_star_upsilon_check(alpha: Cochain, orders=None) -> bool:
    if alpha.is_zero():
        return True
    return phi_star_upsilon(alpha, orders) == alpha


# ---------------------------------------------------------------------------
# theta-twisted product formula on vol-split cocycles


def cupformula_product(fg, dvg, g, fh, dvh, h, vols: VolAssignment) -> Cochain:
    """(-1)^m theta(g,h) f_g f_h (x) dv_g ^ dv_h ^ vol_gh (x) gh, m = codim(g) (q - codim(h))."""
    G = vols.group
    t = vols.theta(g, h)
    if not t:
        return Cochain(G)
    cg, ch = G[g].codim, G[h].codim
    q = dvh.degree + ch if dvh else ch
    sign = -1 if (cg * (q - ch)) % 2 else 1
    gh = G.mul(g, h)
    form = wedge(wedge(dvg, dvh), vols[gh]).scale(t * sign)
    return Cochain.term(G, fg * fh, form, gh)


# ---------------------------------------------------------------------------
# bases of Z and H in a bidegree


@lru_cache(maxsize=None)
def _fixed_dual_forms(g):
    # 1-forms vanishing on perp(g): a copy of (V^g)* inside V*
    return tuple(ExtForm.linear(r, g.group.m) for r in annihilator(g.perp_space, g.group.m).basis)


def _z_forms(g, p, vols):
    c = g.codim
    if p < c:
        return []
    dual = _fixed_dual_forms(g)
    vol = vols[g]
    n, m = g.n, g.group.m
    return [wedge(wedge_all([dual[i] for i in T], n, m), vol) for T in combinations(range(len(dual)), p - c)]


def z_basis(G, g, p, d, vols=None):
    """Basis of Z in tag g, exterior degree p, polynomial degree d: monomials times eta ^ vol_g."""
    vols = vols or VolAssignment(G)
    ge = G[g]
    forms = _z_forms(ge, p, vols)
    return [Cochain.term(G, Poly.monomial(e, G.m), w, g) for e in monomials(G.n, d) for w in forms]


def h_basis(G, g, p, d, vols=None):
    """Basis of H in that bidegree: monomials in a basis of V^g times eta ^ vol_g."""
    vols = vols or VolAssignment(G)
    ge = G[g]
    forms = _z_forms(ge, p, vols)
    U = ge.fixed_space.basis
    lin = [Poly.linear(u, G.m) for u in U]
    polys = []
    for e in monomials(len(U), d):
        f = Poly.const(G.n, G.m)
        for i, k in enumerate(e):
            if k:
                f = f * lin[i] ** k
        polys.append(f)
    return [Cochain.term(G, f, w, g) for f in polys for w in forms]


# ---------------------------------------------------------------------------
# cohomology dimensions: closed form against ker/im of d*


def _sym_dim(k, d):
    if d < 0:
        return 0
    if k == 0:
        return 1 if d == 0 else 0
    return comb(k + d - 1, d)


def _dstar_matrix(G, g, p, d):
    """Matrix of d* : C^p_d(g) -> C^{p+1}_{d+1}(g) in monomial (x) wedge bases."""
    n, m = G.n, G.m
    src = [(e, S) for e in monomials(n, d) for S in combinations(range(n), p)] if d >= 0 else []
    tgt = {(e, S): i for i, (e, S) in enumerate((e, S) for e in monomials(n, d + 1) for S in combinations(range(n), p + 1))}
    cols = []
    for e, S in src:
        alpha = Cochain(G, {(g, S): Poly.monomial(e, m)})
        img = koszul_codifferential(alpha)
        col = [CycNum.zero(m)] * len(tgt)
        for (_, T), f in img.terms.items():
            for e2, c in f.terms.items():
                col[tgt[(e2, T)]] = c
        cols.append(col)
    return cols, len(src), len(tgt)


def _dstar_rank(G, g, p, d):
    if p < 0 or d < 0 or p + 1 > G.n:
        return 0
    cols, ns, _ = _dstar_matrix(G, g, p, d)
    if not ns:
        return 0
    return rank(cols)


def truncated_cohomology_dims(G, p, d, g=None):
    """{g: (closed-form dim, ker/im dim)} in bidegree (p, d); all g unless one is given."""
    out = {}
    tags = range(G.order) if g is None else [g]
    n = G.n
    for t in tags:
        ge = G[t]
        k = n - ge.codim
        formula = _sym_dim(k, d) * (comb(k, p - ge.codim) if p >= ge.codim else 0)
        if p < 0 or p > n or d < 0:
            out[t] = (formula, 0)
            continue
        dim_c = _sym_dim(n, d) * comb(n, p)
        kernel = dim_c - _dstar_rank(G, t, p, d)
        image = _dstar_rank(G, t, p - 1, d - 1)
        out[t] = (formula, kernel - image)
    return out
