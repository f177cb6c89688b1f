"""Exterior algebra on V*, volume forms of perp spaces, the cocycle theta and A_vol.

A form is a dict from strictly increasing index tuples S to coefficients; S
stands for e*_{s1} ^ ... ^ e*_{sk} (0-based indices).
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations

from .cyclotomic import CycNum
from .exactlinalg import Mat, annihilator

__all__ = [
    "ExtForm",
    "wedge",
    "dual_action",
    "transform_forms",
    "volume_form",
    "VolAssignment",
    "theta",
    "theta_table",
    "AVolElem",
    "avol_multiply",
    "avol_generation_certificate",
    "CertificateError",
    "merge_sign",
]


def merge_sign(S, T):
    """Sign of sorting S + T, or 0 if they share an index."""
    inv = 0
    j = 0
    for s in S:
        # count t in T with t < s
        while j < len(T) and T[j] < s:
            j += 1
        if j < len(T) and T[j] == s:
            return 0
        inv += j
    return -1 if inv & 1 else 1


def _sort_sign(idx):
    """(sign, sorted tuple) for a sequence of indices; sign 0 on repetition."""
    idx = list(idx)
    if len(set(idx)) != len(idx):
        return 0, None
    sign = 1
    for i in range(len(idx)):
        for j in range(i + 1, len(idx)):
            if idx[i] > idx[j]:
                sign = -sign
    return sign, tuple(sorted(idx))


class ExtForm:
    __slots__ = ("n", "m", "terms")

    def __init__(self, n, m, terms=None):
        self.n = n
        self.m = m
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    # -- constructors -----------------------------------------------------------

    @classmethod
    def one(cls, n, m):
        return cls(n, m, {(): CycNum.one(m)})

    @classmethod
    def zero(cls, n, m):
        return cls(n, m)

    @classmethod
    def basis(cls, n, m, *idx, coeff=1):
        """e*_{i1} ^ ... ^ e*_{ik} in the given (not necessarily sorted) order."""
        sign, key = _sort_sign(idx)
        if not sign:
            return cls(n, m)
        return cls(n, m, {key: CycNum.rational(m, coeff * sign)})

    @classmethod
    def linear(cls, vec, m):
        """The 1-form with dual-basis coordinates `vec`."""
        return cls(len(vec), m, {(i,): c for i, c in enumerate(vec) if c})

    # -- queries ----------------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def degrees(self):
        return {len(k) for k in self.terms}

    @property
    def degree(self):
        d = self.degrees()
        if len(d) > 1:
            raise ValueError("form is not homogeneous")
        return d.pop() if d else 0

    def coeff(self, key):
        return self.terms.get(tuple(key), CycNum.zero(self.m))

    def __eq__(self, other):
        if isinstance(other, ExtForm):
            return self.n == other.n and self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    # -- linear structure -------------------------------------------------------

    def __add__(self, other):
        t = dict(self.terms)
        for k, v in other.terms.items():
            t[k] = t[k] + v if k in t else v
        return ExtForm(self.n, self.m, t)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return ExtForm(self.n, self.m, {k: -v for k, v in self.terms.items()})

    def scale(self, c):
        if not c:
            return ExtForm(self.n, self.m)
        return ExtForm(self.n, self.m, {k: v * c for k, v in self.terms.items()})

    def __xor__(self, other):
        return wedge(self, other)

    def to_json(self):
        return [{"idx": list(k), "c": v.to_json()} for k, v in sorted(self.terms.items())]

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for k, v in sorted(self.terms.items(), key=lambda kv: (len(kv[0]), kv[0])):
            mono = "^".join(f"e{i + 1}*" for i in k) or "1"
            parts.append(mono if v == 1 else f"({v})*{mono}")
        return " + ".join(parts)


def wedge(a: ExtForm, b: ExtForm) -> ExtForm:
    if a.n != b.n:
        raise ValueError("forms live on different spaces")
    out = {}
    for S, x in a.terms.items():
        for T, y in b.terms.items():
            s = merge_sign(S, T)
            if not s:
                continue
            key = tuple(sorted(S + T))
            v = x * y if s > 0 else -(x * y)
            out[key] = out[key] + v if key in out else v
    return ExtForm(a.n, a.m, out)


def wedge_all(forms, n, m):
    acc = ExtForm.one(n, m)
    for f in forms:
        acc = wedge(acc, f)
    return acc


@lru_cache(maxsize=200000)
def _basis_image(A: Mat, S):
    # image of e*_S when e*_j -> sum_k A[j][k] e*_k
    n = A.nrows
    acc = ExtForm.one(n, A.m)
    for j in S:
        acc = wedge(acc, ExtForm.linear(A.rows[j], A.m))
    return acc


def transform_forms(A: Mat, a: ExtForm) -> ExtForm:
    """Apply the algebra map induced by e*_j -> sum_k A[j, k] e*_k."""
    out = ExtForm.zero(a.n, a.m)
    for S, c in a.terms.items():
        out = out + _basis_image(A, S).scale(c)
    return out


def dual_action(h, a: ExtForm) -> ExtForm:
    """(^h phi)(v) = phi(h^-1 v); on coordinates, e*_j -> sum_k (h^-1)_{jk} e*_k.

    `h` is a GElem or an invertible Mat.
    """
    if isinstance(h, Mat):
        A = h.inverse()
    else:
        if h.index == 0:
            return a
        A = h.inverse_matrix
    return transform_forms(A, a)


def volume_form(g) -> ExtForm:
    """Ordered wedge of the RREF basis of Ann(V^g); exactly 1 when g acts trivially."""
    n, m = g.n, g.group.m
    if g.codim == 0:
        return ExtForm.one(n, m)
    ann = annihilator(g.fixed_space, m)
    return wedge_all([ExtForm.linear(r, m) for r in ann.basis], n, m)


def _ratio(a: ExtForm, b: ExtForm):
    """c with a == c*b, or None if a is not a multiple of b (b nonzero)."""
    if a.is_zero():
        return CycNum.zero(b.m)
    key = next(iter(b.terms))
    c = a.coeff(key) / b.terms[key]
    if not c or b.scale(c) != a:
        return None
    return c


class VolAssignment:
    """A choice of vol_g for every element; canonical unless overridden."""

    def __init__(self, G, overrides=None):
        self.group = G
        self._vols = {}
        for g, form in (overrides or {}).items():
            idx = g.index if hasattr(g, "index") else int(g)
            self._check(G[idx], form)
            self._vols[idx] = form
        self._theta = {}

    def _check(self, g, form):
        canon = volume_form(g)
        if form.is_zero():
            raise ValueError(f"volume form for {g.label} is zero")
        if _ratio(form, canon) is None:
            raise ValueError(f"form for {g.label} is not a top form on its perp space")
        if g.codim == 0 and form != canon:
            raise ValueError("volume forms of kernel elements are fixed to 1")

    def __getitem__(self, g):
        idx = g.index if hasattr(g, "index") else int(g)
        v = self._vols.get(idx)
        if v is None:
            v = self._vols[idx] = volume_form(self.group[idx])
        return v

    def theta(self, g, h):
        key = (g, h)
        t = self._theta.get(key)
        if t is None:
            G = self.group
            w = wedge(self[g], self[h])
            t = _ratio(w, self[G.mul(g, h)])
            if t is None:
                raise ArithmeticError("vol_g ^ vol_h is not a multiple of vol_gh")
            self._theta[key] = t
        return t


def theta(g, h, vols: VolAssignment) -> CycNum:
    return vols.theta(g.index, h.index)


def theta_table(vols: VolAssignment):
    """Dense list-of-lists theta[g][h]."""
    N = vols.group.order
    return [[vols.theta(g, h) for h in range(N)] for g in range(N)]


# ---------------------------------------------------------------------------
# the volume algebra


class AVolElem:
    """sum_g c_g vol_g (x) g, stored as {index: coefficient}."""

    __slots__ = ("coeffs", "m")

    def __init__(self, coeffs, m):
        self.m = m
        self.coeffs = {g: c for g, c in coeffs.items() if c}

    @classmethod
    def basis(cls, g, m, c=1):
        return cls({g: CycNum.rational(m, c) if not isinstance(c, CycNum) else c}, m)

    def __add__(self, other):
        t = dict(self.coeffs)
        for g, c in other.coeffs.items():
            t[g] = t[g] + c if g in t else c
        return AVolElem(t, self.m)

    def scale(self, c):
        return AVolElem({g: v * c for g, v in self.coeffs.items()}, self.m)

    def __eq__(self, other):
        return isinstance(other, AVolElem) and self.coeffs == other.coeffs

    def is_zero(self):
        return not self.coeffs

    def __repr__(self):
        return "AVolElem(" + ", ".join(f"{g}: {c}" for g, c in sorted(self.coeffs.items())) + ")"


def avol_multiply(x: AVolElem, y: AVolElem, vols: VolAssignment) -> AVolElem:
    G = vols.group
    out = {}
    for g, a in x.coeffs.items():
        for h, b in y.coeffs.items():
            t = vols.theta(g, h)
            if not t:
                continue
            k = G.mul(g, h)
            v = a * b * t
            out[k] = out[k] + v if k in out else v
    return AVolElem(out, G.m)


class CertificateError(RuntimeError):
    pass


def avol_generation_certificate(G, vols: VolAssignment, poset=None):
    """For every g, factors (element indices) and c != 0 with prod(vol_f (x) f) = c vol_g (x) g.

    Factors are kernel elements and minimal-coset representatives, found by
    descending through the poset on G/K.
    """
    from .poset import quotient_poset

    P = poset if poset is not None else quotient_poset(G)
    minimal = set(P.minimal_nonidentity)

    def factor(x):
        if G.codims[x] == 0:
            return [x]
        c = int(P.coset_of[x])
        r = P.reps[c]
        k = G.mul(G.inverse(r), x)
        tail = [k] if k else []
        if c in minimal:
            return [r] + tail
        below = next(mc for mc in P.minimal_nonidentity if P.leq[mc, c])
        mr = P.reps[below]
        return [mr] + factor(G.mul(G.inverse(mr), r)) + tail

    certs = {}
    for g in range(G.order):
        fs = factor(g)
        prod = AVolElem.basis(fs[0], G.m)
        for f in fs[1:]:
            prod = avol_multiply(prod, AVolElem.basis(f, G.m), vols)
        if set(prod.coeffs) != {g}:
            raise CertificateError(f"factorization of {G.labels[g]} failed")
        certs[g] = (fs, prod.coeffs[g])
    return certs


def exterior_basis(n, k):
    return list(combinations(range(n), k))
