"""Polynomials in S(V), the group action on them, quantum partials, and S(V)#G.

Variables x_1..x_n are the standard basis vectors of V.  A Poly maps exponent
tuples to CycNum coefficients.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations_with_replacement

from .cyclotomic import CycNum
from .exactlinalg import Mat

__all__ = [
    "Poly",
    "SkewElem",
    "monomials",
    "linear_substitute",
    "poly_action",
    "skew_multiply",
    "quantum_integer",
    "quantum_partial",
    "fixed_projector",
    "reduce_mod_perp",
    "DEFAULT_MAXDEG",
]

DEFAULT_MAXDEG = 4


def monomials(n, d):
    """Exponent tuples of total degree d, in descending lexicographic order."""
    out = []
    for combo in combinations_with_replacement(range(n), d):
        e = [0] * n
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return out


class Poly:
    __slots__ = ("n", "m", "terms")

    def __init__(self, n, m, terms=None):
        self.n = n
        self.m = m
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def zero(cls, n, m):
        return cls(n, m)

    @classmethod
    def const(cls, n, m, c=1):
        c = c if isinstance(c, CycNum) else CycNum.rational(m, c)
        return cls(n, m, {(0,) * n: c})

    @classmethod
    def var(cls, n, m, i, power=1):
        e = [0] * n
        e[i] = power
        return cls(n, m, {tuple(e): CycNum.one(m)})

    @classmethod
    def linear(cls, vec, m):
        n = len(vec)
        out = {}
        for i, c in enumerate(vec):
            if c:
                e = [0] * n
                e[i] = 1
                out[tuple(e)] = c
        return cls(n, m, out)

    @classmethod
    def monomial(cls, exps, m, c=1):
        c = c if isinstance(c, CycNum) else CycNum.rational(m, c)
        return cls(len(exps), m, {tuple(exps): c})

    # -- queries ----------------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    @property
    def degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def degrees(self):
        return {sum(e) for e in self.terms}

    def homogeneous_part(self, d):
        return Poly(self.n, self.m, {e: c for e, c in self.terms.items() if sum(e) == d})

    def coeff(self, exps):
        return self.terms.get(tuple(exps), CycNum.zero(self.m))

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.n == other.n and self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    # -- arithmetic -------------------------------------------------------------

    def __add__(self, other):
        t = dict(self.terms)
        for k, v in other.terms.items():
            t[k] = t[k] + v if k in t else v
        return Poly(self.n, self.m, t)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return Poly(self.n, self.m, {k: -v for k, v in self.terms.items()})

    def scale(self, c):
        if not c:
            return Poly(self.n, self.m)
        return Poly(self.n, self.m, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        out = {}
        for e1, a in self.terms.items():
            for e2, b in other.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                v = a * b
                out[e] = out[e] + v if e in out else v
        return Poly(self.n, self.m, out)

    def __pow__(self, k):
        acc = Poly.const(self.n, self.m)
        for _ in range(k):
            acc = acc * self
        return acc

    def to_json(self):
        return [{"exp": list(e), "c": c.to_json()} for e, c in self.sorted_terms()]

    def sorted_terms(self):
        """Graded lexicographic: higher degree first, then lexicographically larger."""
        return sorted(self.terms.items(), key=lambda kv: (-sum(kv[0]), tuple(-x for x in kv[0])))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(f"x{i + 1}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k)
            if not mono:
                parts.append(f"({c})")
            else:
                parts.append(mono if c == 1 else f"({c})*{mono}")
        return " + ".join(parts)


# ---------------------------------------------------------------------------
# linear changes of variables


@lru_cache(maxsize=100000)
def _mono_image(L: Mat, exps):
    n_out = L.nrows
    acc = Poly.const(n_out, L.m)
    for j, k in enumerate(exps):
        if k:
            acc = acc * (_column_poly(L, j) ** k)
    return acc


@lru_cache(maxsize=100000)
def _column_poly(L: Mat, j):
    return Poly.linear(L.col(j), L.m)


def linear_substitute(f: Poly, L: Mat) -> Poly:
    """Substitute x_j -> sum_i L[i, j] y_i (column j of L)."""
    out = Poly(L.nrows, L.m)
    for e, c in f.terms.items():
        out = out + _mono_image(L, e).scale(c)
    return out


def poly_action(h, f: Poly) -> Poly:
    """^h f, where ^h x_j = sum_i h_ij x_i.  `h` is a GElem or a Mat."""
    M = h if isinstance(h, Mat) else h.matrix
    if not isinstance(h, Mat) and h.codim == 0:
        return f
    return linear_substitute(f, M)


@lru_cache(maxsize=4096)
def fixed_projector(M: Mat, order: int) -> Mat:
    """Projection of V onto V^g along Im(1-g): the average of the powers of g."""
    acc = Mat.identity(M.nrows, M.m)
    P = acc
    for _ in range(order - 1):
        P = P @ M
        acc = acc + P
    return acc.scale(CycNum.rational(M.m, 1) / order)


def reduce_mod_perp(g, f: Poly) -> Poly:
    """Image of f in S(V^g) = S(V)/I(perp), written back in the x-coordinates."""
    if g.codim == 0:
        return f
    return linear_substitute(f, fixed_projector(g.matrix, g.order))


def quantum_integer(k, eps: CycNum) -> CycNum:
    acc = CycNum.zero(eps.m)
    p = CycNum.one(eps.m)
    for _ in range(k):
        acc = acc + p
        p = p * eps
    return acc


def quantum_partial(f: Poly, i: int, eps) -> Poly:
    """Lower the x_i exponent k by one and multiply by [k]_eps (coordinates as given)."""
    if not isinstance(eps, CycNum):
        eps = CycNum.rational(f.m, eps)
    out = {}
    for e, c in f.terms.items():
        k = e[i]
        if not k:
            continue
        q = quantum_integer(k, eps)
        if not q:
            continue
        e2 = e[:i] + (k - 1,) + e[i + 1 :]
        v = c * q
        out[e2] = out[e2] + v if e2 in out else v
    return Poly(f.n, f.m, out)


def demazure_partial(f: Poly, i: int, eps) -> Poly:
    """(f - ^s f) / (x_i - ^s x_i) with s = diag(1,..,eps,..,1); eps != 1 (check formula)."""
    if not isinstance(eps, CycNum):
        eps = CycNum.rational(f.m, eps)
    if eps == 1:
        raise ValueError("the difference quotient needs eps != 1")
    out = {}
    denom = (1 - eps).inverse()
    for e, c in f.terms.items():
        k = e[i]
        # f - ^s f on x^e is (1 - eps^k) x^e; then divide by (1 - eps) x_i
        num = 1 - eps**k
        if not num:
            continue
        e2 = e[:i] + (k - 1,) + e[i + 1 :]
        v = c * num * denom
        out[e2] = out[e2] + v if e2 in out else v
    return Poly(f.n, f.m, out)


# ---------------------------------------------------------------------------
# the skew group algebra


class SkewElem:
    """sum_g f_g (x) g as {index: Poly}."""

    __slots__ = ("n", "m", "comps")

    def __init__(self, n, m, comps=None):
        self.n = n
        self.m = m
        self.comps = {g: f for g, f in (comps or {}).items() if f}

    @classmethod
    def basis(cls, f: Poly, g: int):
        return cls(f.n, f.m, {g: f})

    def __add__(self, other):
        t = dict(self.comps)
        for g, f in other.comps.items():
            t[g] = t[g] + f if g in t else f
        return SkewElem(self.n, self.m, t)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return SkewElem(self.n, self.m, {g: f.scale(c) for g, f in self.comps.items()})

    def is_zero(self):
        return not self.comps

    def __eq__(self, other):
        return isinstance(other, SkewElem) and self.comps == other.comps

    def __repr__(self):
        return "SkewElem(" + ", ".join(f"[{f}]#{g}" for g, f in sorted(self.comps.items())) + ")"


def skew_multiply(x: SkewElem, y: SkewElem, G) -> SkewElem:
    """(a (x) g)(b (x) h) = a ^g(b) (x) gh."""
    out = {}
    for g, a in x.comps.items():
        for h, b in y.comps.items():
            k = G.mul(g, h)
            v = a * poly_action(G[g], b)
            out[k] = out[k] + v if k in out else v
    return SkewElem(x.n, x.m, out)
