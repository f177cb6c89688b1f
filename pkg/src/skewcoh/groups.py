"""Finite matrix groups: closure from generators, classes, cosets, standard families.

Elements are discovered by breadth-first search from the identity using right
multiplication by the (sorted) generators, so element indices are reproducible.
Index 0 is always the identity.  The full multiplication table is then filled by
an integer kernel from the right-multiplication table alone.
"""

from __future__ import annotations

from functools import cached_property
from math import factorial, gcd

import numpy as np

from . import _kernels
from .cyclotomic import CycNum
from .exactlinalg import LinAlgError, Mat, fixed_space, perp_space

__all__ = [
    "GroupError",
    "GElem",
    "FiniteGroup",
    "close_group",
    "conjugacy_data",
    "double_cosets",
    "build_standard_group",
    "symmetric",
    "grpn",
    "cyclic_diag",
    "DEFAULT_CAP",
]

DEFAULT_CAP = 20000


class GroupError(ValueError):
    pass


def _lcm(a, b):
    return a * b // gcd(a, b)


class GElem:
    """A group element: its matrix on V plus lazily cached linear-algebra data."""

    def __init__(self, group, index, matrix, order):
        self.group = group
        self.index = index
        self.matrix = matrix
        self.order = order

    @property
    def n(self):
        return self.matrix.nrows

    @cached_property
    def fixed_space(self):
        return fixed_space(self.matrix, check_order=False)

    @cached_property
    def perp_space(self):
        return perp_space(self.matrix, check_order=False)

    @cached_property
    def codim(self):
        return self.perp_space.dim

    @cached_property
    def determinant(self):
        return self.matrix.det()

    @cached_property
    def inverse_matrix(self):
        return self.group[self.group.inv[self.index]].matrix

    @property
    def label(self):
        return self.group.labels[self.index]

    def __mul__(self, other):
        return self.group[self.group.mul(self.index, other.index)]

    def __eq__(self, other):
        return isinstance(other, GElem) and other.group is self.group and other.index == self.index

    def __hash__(self):
        return hash((id(self.group), self.index))

    def __repr__(self):
        return f"GElem({self.index}: {self.label})"


class FiniteGroup:
    """A finite group of invertible matrices, closed and indexed.

    `matrices` may carry hidden trailing coordinates (`acting_dim` < their size):
    group identity is decided on the full matrices, while V, fixed spaces and
    everything downstream use the top-left acting_dim block.  This is how an
    action with a nontrivial kernel is represented.
    """

    def __init__(self, matrices, table, m, acting_dim, name="", labeler=None):
        self.m = m
        self.n = acting_dim
        self.name = name
        self.full_matrices = matrices
        self.table = table
        self.order = len(matrices)
        self.inv = _kernels.inverses(table)
        self.orders = _kernels.orders(table)
        self.exponent = int(np.lcm.reduce(self.orders)) if self.order else 1
        blocks = [M if M.nrows == acting_dim else M.block(acting_dim) for M in matrices]
        self.elements = [GElem(self, i, B, int(self.orders[i])) for i, B in enumerate(blocks)]
        self._index = {M.key(): i for i, M in enumerate(matrices)}
        labeler = labeler or default_label
        self.labels = [labeler(e.matrix) for e in self.elements]
        seen = {}
        for i, lab in enumerate(self.labels):
            lab = lab or f"g{i}"
            k = seen.get(lab, 0)
            seen[lab] = k + 1
            self.labels[i] = lab if k == 0 else f"{lab}#{k}"

    # -- element access ---------------------------------------------------------

    def __len__(self):
        return self.order

    def __getitem__(self, i):
        return self.elements[i]

    def __iter__(self):
        return iter(self.elements)

    @property
    def identity(self):
        return self.elements[0]

    def index_of(self, M: Mat):
        """Index of the element with (full) matrix M; KeyError if absent."""
        if M.m != self.m:
            M = Mat.from_entries(M.rows, self.m)
        return self._index[M.key()]

    def by_label(self, label):
        return self.elements[self.labels.index(label)]

    def mul(self, a, b):
        return int(self.table[a, b])

    def product(self, *idx):
        out = 0
        for i in idx:
            out = int(self.table[out, i])
        return out

    def inverse(self, a):
        return int(self.inv[a])

    def conj(self, h, g):
        """Index of h g h^-1."""
        return int(self.table[self.table[h, g], self.inv[h]])

    # -- structure --------------------------------------------------------------

    @cached_property
    def codims(self):
        return np.array([e.codim for e in self.elements], dtype=np.int64)

    @cached_property
    def kernel_K(self):
        """Indices of elements acting trivially on V."""
        return tuple(i for i, c in enumerate(self.codims) if c == 0)

    @property
    def is_faithful(self):
        return len(self.kernel_K) == 1

    @cached_property
    def _classes(self):
        return _kernels.class_labels(self.table, self.inv)

    @property
    def class_label(self):
        return self._classes[0]

    @property
    def class_reps(self):
        return tuple(int(r) for r in self._classes[1])

    def class_rep_of(self, g):
        return self.class_reps[self.class_label[g]]

    def conjugacy_class(self, g):
        lab = self.class_label[g]
        return tuple(int(i) for i in np.nonzero(self.class_label == lab)[0])

    def centralizer(self, g):
        return tuple(int(i) for i in np.nonzero(_kernels.centralizer_mask(self.table, g))[0])

    def is_subgroup(self, S):
        S = set(S)
        if 0 not in S:
            return False
        return all(self.mul(a, b) in S for a in S for b in S)

    def subgroup_generated(self, gens):
        seen = {0}
        frontier = [0]
        gens = sorted(set(gens))
        while frontier:
            nxt = []
            for x in frontier:
                for s in gens:
                    y = self.mul(x, s)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return tuple(sorted(seen))

    def conjugate_subgroup(self, y, S):
        return tuple(sorted(self.conj(y, s) for s in S))

    def left_coset_reps(self, L, J):
        """Minimal-index representatives of the left cosets hJ inside L."""
        covered = set()
        reps = []
        for h in sorted(L):
            if h in covered:
                continue
            reps.append(h)
            covered.update(self.mul(h, j) for j in J)
        return reps

    def summary(self):
        return {
            "name": self.name,
            "order": self.order,
            "dim": self.n,
            "modulus": self.m,
            "exponent": self.exponent,
            "kernel_order": len(self.kernel_K),
            "class_count": len(self.class_reps),
            "class_reps": [self.labels[r] for r in self.class_reps],
        }

    def __repr__(self):
        return f"FiniteGroup({self.name or 'unnamed'}, order={self.order}, n={self.n}, m={self.m})"


# ---------------------------------------------------------------------------
# closure


def close_group(generators, cap=DEFAULT_CAP, acting_dim=None, name="", labeler=None):
    """Enumerate the group generated by `generators` (a list of square Mat)."""
    if not generators:
        raise GroupError("at least one generator is required")
    size = generators[0].nrows
    if any(M.nrows != size or M.ncols != size for M in generators):
        raise GroupError("generators must be square matrices of one size")
    m0 = 1
    for M in generators:
        m0 = _lcm(m0, M.m)
    gens = [M if M.m == m0 else Mat.from_entries(M.rows, m0) for M in generators]
    for M in gens:
        if not M.det():
            raise GroupError("generator is not invertible")
    uniq = {}
    for M in gens:
        uniq.setdefault(M.key(), M)
    gens = [uniq[k] for k in sorted(uniq)]

    ident = Mat.identity(size, m0)
    elems = [ident]
    index = {ident.key(): 0}
    right = []
    parent, pgen = [-1], [-1]
    pos = 0
    while pos < len(elems):
        row = []
        for s, S in enumerate(gens):
            P = elems[pos] @ S
            k = P.key()
            j = index.get(k)
            if j is None:
                if len(elems) >= cap:
                    raise GroupError(f"group order exceeds the cap {cap}")
                j = len(elems)
                index[k] = j
                elems.append(P)
                parent.append(pos)
                pgen.append(s)
            row.append(j)
        right.append(row)
        pos += 1

    table = _kernels.fill_mult_table(
        np.array(right, dtype=np.int64), np.array(parent, dtype=np.int64), np.array(pgen, dtype=np.int64)
    )
    orders = _kernels.orders(table)
    m = m0
    for o in orders:
        m = _lcm(m, int(o))
    if m != m0:
        elems = [Mat.from_entries(M.rows, m) for M in elems]
    return FiniteGroup(elems, table, m, acting_dim or size, name=name, labeler=labeler)


def conjugacy_data(G: FiniteGroup):
    """(classes, representatives, centralizers), classes listed per representative."""
    reps = G.class_reps
    classes = [G.conjugacy_class(r) for r in reps]
    cents = {r: G.centralizer(r) for r in reps}
    return classes, reps, cents


def double_cosets(L, R, G: FiniteGroup):
    """Minimal-index representatives of the double cosets L g R."""
    _, reps = _kernels.double_coset_labels(
        G.table, np.array(sorted(L), dtype=np.int64), np.array(sorted(R), dtype=np.int64)
    )
    return [int(r) for r in reps]


# ---------------------------------------------------------------------------
# element labels


def _root_str(x: CycNum):
    if x == 1:
        return "1"
    if x == -1:
        return "-1"
    k = x.root_exponent()
    if k is None:
        return f"({x})"
    d = x.m // gcd(x.m, k)
    e = k * d // x.m
    if d == 4:
        return "i" if e == 1 else "-i"
    return f"z{d}^{e}"


def _cycles(perm):
    """Cycle notation (1-based) of a permutation given as a list of images."""
    seen = set()
    out = []
    for i in range(len(perm)):
        if i in seen or perm[i] == i:
            continue
        cyc = [i]
        seen.add(i)
        j = perm[i]
        while j != i:
            cyc.append(j)
            seen.add(j)
            j = perm[j]
        out.append("(" + "".join(str(c + 1) for c in cyc) + ")" if len(perm) < 10 else "(" + ",".join(str(c + 1) for c in cyc) + ")")
    return "".join(out) or "1"


def default_label(M: Mat):
    mono = M.monomial()
    if mono is None:
        return ""
    perm = [r for r, _ in mono]
    entries = [a for _, a in mono]
    if all(a == 1 for a in entries):
        return _cycles(perm)
    d = "diag(" + ",".join(_root_str(a) for a in entries) + ")"
    if perm == list(range(len(perm))):
        return d
    return _cycles(perm) + d


def _perm_labeler(npoints, copies):
    def label(M):
        mono = M.monomial()
        if mono is None or any(not (a == 1) for _, a in mono[: npoints * copies]):
            return default_label(M)
        return _cycles([mono[i * copies][0] // copies for i in range(npoints)])

    return label


def _diag_word_labeler(orders):
    def label(M):
        word = []
        for i, o in enumerate(orders):
            k = M[i, i].root_exponent()
            e = (k * o) // M.m if k is not None else None
            if e is None:
                return default_label(M)
            if e == 1:
                word.append(f"a{i + 1}")
            elif e:
                word.append(f"a{i + 1}^{e}")
        return "".join(word) or "1"

    return label


# ---------------------------------------------------------------------------
# standard families


def symmetric(n, copies=1, trivial=0, cap=DEFAULT_CAP):
    """S_n permuting n points, acting on `copies` interleaved copies plus trivial coordinates.

    Coordinate i*copies + c is the copy-c vector attached to point i, so for
    copies=2 the basis order is v1, w1, v2, w2, ...
    """
    if n < 1 or copies < 1 or trivial < 0:
        raise GroupError("symmetric group needs n >= 1, copies >= 1, trivial >= 0")
    dim = n * copies + trivial

    def perm_matrix(sigma):
        rows = [[0] * dim for _ in range(dim)]
        for i in range(n):
            for c in range(copies):
                rows[sigma[i] * copies + c][i * copies + c] = 1
        for t in range(n * copies, dim):
            rows[t][t] = 1
        return Mat.from_entries(rows, 1)

    gens = [Mat.identity(dim, 1)]
    if n >= 2:
        gens = [perm_matrix([1, 0] + list(range(2, n))), perm_matrix(list(range(1, n)) + [0])]
    name = f"S{n}" + (f" x{copies}" if copies > 1 else "") + (f" +{trivial} trivial" if trivial else "")
    return close_group(gens, cap=cap, name=name, labeler=_perm_labeler(n, copies))


def grpn(r, p, n, cap=DEFAULT_CAP):
    """The imprimitive reflection group G(r, p, n) in its monomial representation."""
    if r < 1 or p < 1 or n < 1 or r % p:
        raise GroupError(f"invalid G(r,p,n) parameters r={r}, p={p}, n={n}")
    m = r
    one, zero = CycNum.one(m), CycNum.zero(m)

    def diag(entries):
        return Mat([[entries[i] if i == j else zero for j in range(n)] for i in range(n)], m)

    gens = []
    for i in range(n - 1):
        rows = [[one if i == j else zero for j in range(n)] for i in range(n)]
        rows[i][i] = rows[i + 1][i + 1] = zero
        rows[i][i + 1] = rows[i + 1][i] = one
        gens.append(Mat(rows, m))
    if p < r:
        gens.append(diag([CycNum.zeta(m, p)] + [one] * (n - 1)))
    if n >= 2 and r > 1:
        gens.append(diag([CycNum.zeta(m, 1), CycNum.zeta(m, -1)] + [one] * (n - 2)))
    if not gens:
        gens = [Mat.identity(n, m)]
    G = close_group(gens, cap=cap, name=f"G({r},{p},{n})")
    expected = r**n * factorial(n) // p
    if G.order != expected:
        raise GroupError(f"G({r},{p},{n}) closed to order {G.order}, expected {expected}")
    return G


def cyclic_diag(orders, cap=DEFAULT_CAP):
    """Product of cyclic groups, the i-th acting on coordinate i by a primitive root."""
    if not orders or any(o < 1 for o in orders):
        raise GroupError("cyclic_diag needs positive orders")
    m = 1
    for o in orders:
        m = _lcm(m, o)
    n = len(orders)
    gens = []
    for i, o in enumerate(orders):
        entries = [CycNum.one(m)] * n
        entries[i] = CycNum.zeta(m, m // o)
        gens.append(Mat.diag(entries, m))
    return close_group(gens, cap=cap, name="x".join(f"Z{o}" for o in orders), labeler=_diag_word_labeler(orders))


def build_standard_group(spec, cap=DEFAULT_CAP):
    """Build from a dict: {"kind": "symmetric"|"G(r,p,n)"|"cyclic_diag", ...}."""
    kind = spec.get("kind")
    try:
        if kind == "symmetric":
            return symmetric(int(spec["n"]), int(spec.get("copies", 1)), int(spec.get("trivial", 0)), cap=cap)
        if kind in ("G(r,p,n)", "grpn"):
            return grpn(int(spec["r"]), int(spec["p"]), int(spec["n"]), cap=cap)
        if kind == "cyclic_diag":
            return cyclic_diag([int(o) for o in spec["orders"]], cap=cap)
    except KeyError as exc:
        raise GroupError(f"standard group spec of kind {kind!r} is missing {exc}") from None
    except LinAlgError as exc:
        raise GroupError(str(exc)) from None
    raise GroupError(f"unknown standard group kind {kind!r}")
