"""Exact linear algebra over Q(zeta_m).

Vectors are tuples of CycNum; matrices are `Mat`.  Subspaces are always kept
as a reduced row-echelon basis so that equal subspaces compare equal.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial

from .cyclotomic import CycNum

__all__ = [
    "Mat",
    "Subspace",
    "LinAlgError",
    "rref",
    "rank",
    "nullspace",
    "rref_basis",
    "kernel",
    "image",
    "fixed_space",
    "perp_space",
    "annihilator",
    "intersection",
    "span_sum",
    "eigen_decomposition",
    "solve",
]


class LinAlgError(ValueError):
    pass


class Mat:
    """Dense matrix with CycNum entries, all in one cyclotomic field."""

    __slots__ = ("rows", "m", "_key", "_mono")

    def __init__(self, rows, m=None):
        self.rows = tuple(tuple(r) for r in rows)
        if m is None:
            m = self.rows[0][0].m
        self.m = m
        self._key = None
        self._mono = False

    @classmethod
    def from_entries(cls, entries, m: int) -> Mat:
        def conv(x):
            if isinstance(x, CycNum):
                return x if x.m == m else x.embed(m)
            return CycNum.rational(m, x)

        return cls([[conv(x) for x in row] for row in entries], m)

    @classmethod
    def identity(cls, n: int, m: int) -> Mat:
        one, zero = CycNum.one(m), CycNum.zero(m)
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)], m)

    @classmethod
    def diag(cls, entries, m: int) -> Mat:
        zero = CycNum.zero(m)
        n = len(entries)
        return cls.from_entries(
            [[entries[i] if i == j else zero for j in range(n)] for i in range(n)], m
        )

    @property
    def nrows(self):
        return len(self.rows)

    @property
    def ncols(self):
        return len(self.rows[0]) if self.rows else 0

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def col(self, j):
        return tuple(r[j] for r in self.rows)

    def key(self):
        if self._key is None:
            self._key = tuple(x.c for r in self.rows for x in r)
        return self._key

    def __eq__(self, other):
        return isinstance(other, Mat) and self.m == other.m and self.key() == other.key()

    def __hash__(self):
        return hash((self.m, self.key()))

    def __matmul__(self, other):
        if isinstance(other, Mat):
            ma, mb = self.monomial(), other.monomial()
            if ma is not None and mb is not None:
                zero = CycNum.zero(self.m)
                out = [[zero] * other.ncols for _ in range(self.nrows)]
                for j, (i, b) in enumerate(mb):
                    k, a = ma[i]
                    out[k][j] = a * b
                return Mat(out, self.m)
            cols = list(zip(*other.rows))
            zero = CycNum.zero(self.m)
            out = []
            for r in self.rows:
                row = []
                for c in cols:
                    acc = zero
                    for a, b in zip(r, c):
                        if a and b:
                            acc = acc + a * b
                    row.append(acc)
                out.append(row)
            return Mat(out, self.m)
        # vector
        zero = CycNum.zero(self.m)
        out = []
        for r in self.rows:
            acc = zero
            for a, b in zip(r, other):
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        return tuple(out)

    def __add__(self, other):
        return Mat([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.m)

    def __sub__(self, other):
        return Mat([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.m)

    def __neg__(self):
        return Mat([[-a for a in r] for r in self.rows], self.m)

    def scale(self, c):
        return Mat([[a * c for a in r] for r in self.rows], self.m)

    @property
    def T(self):
        return Mat(list(zip(*self.rows)), self.m)

    def is_identity(self):
        return all(
            (x == 1) if i == j else x.is_zero()
            for i, r in enumerate(self.rows)
            for j, x in enumerate(r)
        )

    def block(self, n):
        """Top-left n x n block."""
        return Mat([r[:n] for r in self.rows[:n]], self.m)

    def det(self) -> CycNum:
        A = [list(r) for r in self.rows]
        n = len(A)
        d = CycNum.one(self.m)
        for col in range(n):
            piv = next((i for i in range(col, n) if A[i][col]), None)
            if piv is None:
                return CycNum.zero(self.m)
            if piv != col:
                A[col], A[piv] = A[piv], A[col]
                d = -d
            p = A[col][col]
            d = d * p
            inv = p.inverse()
            for i in range(col + 1, n):
                if A[i][col]:
                    t = A[i][col] * inv
                    A[i] = [x - t * y if y else x for x, y in zip(A[i], A[col])]
        return d

    def inverse(self) -> Mat:
        n = self.nrows
        one, zero = CycNum.one(self.m), CycNum.zero(self.m)
        aug = [list(r) + [one if i == j else zero for j in range(n)] for i, r in enumerate(self.rows)]
        red, piv = rref(aug, 2 * n)
        if piv[:n] != list(range(n)) or len(red) < n:
            raise LinAlgError("matrix is singular")
        return Mat([r[n:] for r in red], self.m)

    def power(self, k: int) -> Mat:
        if k < 0:
            return self.inverse().power(-k)
        result = Mat.identity(self.nrows, self.m)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def order(self, bound=None) -> int:
        """Multiplicative order; LinAlgError if it exceeds `bound`."""
        if bound is None:
            bound = self.m * factorial(self.nrows)
        cur = self
        for k in range(1, bound + 1):
            if cur.is_identity():
                return k
            cur = cur @ self
        raise LinAlgError(f"matrix has no finite order <= {bound}")

    def monomial(self):
        """For a monomial matrix, a tuple of (row, entry) per column; else None."""
        if self._mono is False:
            cols = []
            for j in range(self.ncols):
                nz = [(i, r[j]) for i, r in enumerate(self.rows) if r[j]]
                if len(nz) != 1:
                    cols = None
                    break
                cols.append(nz[0])
            self._mono = tuple(cols) if cols is not None else None
        return self._mono

    def to_json(self):
        return [[x.to_json() for x in r] for r in self.rows]

    def __repr__(self):
        return "Mat([" + ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.rows) + "])"


# ---------------------------------------------------------------------------
# row reduction


def rref(rows, ncols=None):
    """Reduced row echelon form. Returns (nonzero rows, pivot columns)."""
    A = [list(r) for r in rows]
    if not A:
        return [], []
    if ncols is None:
        ncols = len(A[0])
    pivots = []
    r = 0
    for col in range(ncols):
        piv = None
        for i in range(r, len(A)):
            if A[i][col]:
                piv = i
                break
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        p = A[r][col]
        if not p == 1:
            inv = p.inverse()
            A[r] = [x * inv if x else x for x in A[r]]
        pr = A[r]
        for i in range(len(A)):
            if i != r and A[i][col]:
                t = A[i][col]
                A[i] = [x - t * y if y else x for x, y in zip(A[i], pr)]
        pivots.append(col)
        r += 1
        if r == len(A):
            break
    return [tuple(row) for row in A[:r]], pivots


def rank(rows, ncols=None) -> int:
    return len(rref(rows, ncols)[0])


def nullspace(rows, ncols: int, m: int):
    """Basis of {x : A x = 0} for A given by rows (one vector per free column)."""
    red, piv = rref(rows, ncols) if rows else ([], [])
    one, zero = CycNum.one(m), CycNum.zero(m)
    free = [j for j in range(ncols) if j not in piv]
    basis = []
    for f in free:
        x = [zero] * ncols
        x[f] = one
        for i, pc in enumerate(piv):
            x[pc] = -red[i][f]
        basis.append(tuple(x))
    return basis


def solve(rows, rhs, ncols: int, m: int):
    """One solution x of A x = rhs, or None if inconsistent."""
    aug = [tuple(r) + (b,) for r, b in zip(rows, rhs)]
    red, piv = rref(aug, ncols + 1)
    if ncols in piv:
        return None
    x = [CycNum.zero(m)] * ncols
    for i, pc in enumerate(piv):
        x[pc] = red[i][ncols]
    return tuple(x)


@dataclass(frozen=True)
class Subspace:
    """Subspace of an n-dimensional coordinate space, canonical RREF basis."""

    ambient_dim: int
    basis: tuple = ()

    @property
    def dim(self):
        return len(self.basis)

    def __contains__(self, v):
        if not any(v):
            return True
        return rank(list(self.basis) + [tuple(v)], self.ambient_dim) == self.dim

    def contains_space(self, other: Subspace) -> bool:
        return rank(list(self.basis) + list(other.basis), self.ambient_dim) == self.dim

    def is_zero(self):
        return not self.basis

    def is_full(self):
        return self.dim == self.ambient_dim


def rref_basis(vectors, ambient_dim=None) -> Subspace:
    vectors = [tuple(v) for v in vectors]
    if ambient_dim is None:
        if not vectors:
            raise ValueError("ambient dimension needed for an empty span")
        ambient_dim = len(vectors[0])
    if any(len(v) != ambient_dim for v in vectors):
        raise ValueError("vectors of unequal length")
    red, _ = rref(vectors, ambient_dim)
    return Subspace(ambient_dim, tuple(red))


def kernel(M: Mat) -> Subspace:
    basis = nullspace(M.rows, M.ncols, M.m)
    return rref_basis(basis, M.ncols)


def image(M: Mat) -> Subspace:
    return rref_basis([M.col(j) for j in range(M.ncols)], M.nrows)


def _check_finite(g: Mat, check: bool):
    if check:
        g.order()


def fixed_space(g: Mat, check_order: bool = True) -> Subspace:
    """V^g = ker(1 - g)."""
    _check_finite(g, check_order)
    return kernel(Mat.identity(g.nrows, g.m) - g)


def perp_space(g: Mat, check_order: bool = True) -> Subspace:
    """(V^g)^perp, taken as Im(1 - g)."""
    _check_finite(g, check_order)
    return image(Mat.identity(g.nrows, g.m) - g)


def annihilator(W: Subspace, m: int) -> Subspace:
    """Functionals (dual-basis coordinates) vanishing on W."""
    n = W.ambient_dim
    if W.is_zero():
        return rref_basis(Mat.identity(n, m).rows, n)
    return rref_basis(nullspace(W.basis, n, m), n)


def span_sum(U: Subspace, W: Subspace) -> Subspace:
    return rref_basis(list(U.basis) + list(W.basis), U.ambient_dim)


def intersection(U: Subspace, W: Subspace, m: int) -> Subspace:
    # U cap W = Ann(Ann U + Ann W)
    return annihilator(span_sum(annihilator(U, m), annihilator(W, m)), m)


def eigen_decomposition(g: Mat, order: int | None = None):
    """[(eigenvalue, eigenspace)] sorted by the exponent e of eigenvalue zeta_m^e.

    Eigenspaces are images of the idempotents (1/k) sum_j lambda^-j g^j, k = ord(g).
    """
    m, n = g.m, g.nrows
    if order is None:
        order = g.order()
    if m % order:
        raise LinAlgError(f"element order {order} does not divide the modulus {m}")
    powers = [Mat.identity(n, m)]
    for _ in range(order - 1):
        powers.append(powers[-1] @ g)
    out = []
    total = 0
    for e in range(m):
        if (e * order) % m:
            continue
        lam = CycNum.zeta(m, e)
        acc = None
        for j, P in enumerate(powers):
            term = P.scale(CycNum.zeta(m, -e * j))
            acc = term if acc is None else acc + term
        acc = acc.scale(CycNum.rational(m, 1) / order)
        sp = image(acc)
        if sp.dim:
            out.append((lam, sp))
            total += sp.dim
    if total != n:
        raise LinAlgError("eigenspaces do not span V (non-semisimple input)")
    return out
