"""Integer kernels over group multiplication tables.

Every kernel has two implementations with identical outputs:

* ``nb_*`` -- explicit loops compiled with ``numba.njit``;
* ``np_*`` -- vectorised pure numpy.

The dispatch names (``fill_mult_table``, ...) point at the numba versions unless
numba is missing or ``SKEWCOH_NUMBA=0`` is set in the environment.  Tables are
int64 arrays: ``T[g, h]`` is the index of ``g*h``.
"""

import os

import numpy as np

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and os.environ.get("SKEWCOH_NUMBA", "1").strip().lower() not in ("0", "false", "no", "off")


def _jit(fn):
    if HAVE_NUMBA:
        return numba.njit(cache=False)(fn)
    return fn  # pragma: no cover


# ---------------------------------------------------------------------------
# multiplication table from right multiplication by generators


def _nb_fill_mult_table(right, parent, pgen):
    n = right.shape[0]
    T = np.empty((n, n), dtype=np.int64)
    for g in range(n):
        T[g, 0] = g
        for h in range(1, n):
            T[g, h] = right[T[g, parent[h]], pgen[h]]
    return T


def np_fill_mult_table(right, parent, pgen):
    n = right.shape[0]
    T = np.empty((n, n), dtype=np.int64)
    T[:, 0] = np.arange(n)
    # h is discovered after parent[h], so columns fill in index order
    for h in range(1, n):
        T[:, h] = right[T[:, parent[h]], pgen[h]]
    return T


# ---------------------------------------------------------------------------
# inverses and orders


def _nb_inverses(T):
    n = T.shape[0]
    inv = np.empty(n, dtype=np.int64)
    for g in range(n):
        for h in range(n):
            if T[g, h] == 0:
                inv[g] = h
                break
    return inv


def np_inverses(T):
    return np.argmin(T, axis=1).astype(np.int64)


def _nb_orders(T):
    n = T.shape[0]
    out = np.empty(n, dtype=np.int64)
    for g in range(n):
        k = 1
        cur = g
        while cur != 0:
            cur = T[cur, g]
            k += 1
        out[g] = k
    return out


def np_orders(T):
    n = T.shape[0]
    idx = np.arange(n)
    out = np.zeros(n, dtype=np.int64)
    cur = idx.copy()
    k = 1
    while True:
        done = (cur == 0) & (out == 0)
        out[done] = k
        if out.all():
            return out
        cur = T[cur, idx]
        k += 1


# ---------------------------------------------------------------------------
# conjugacy classes


def _nb_class_labels(T, inv):
    n = T.shape[0]
    label = -np.ones(n, dtype=np.int64)
    reps = np.empty(n, dtype=np.int64)
    nclass = 0
    for g in range(n):
        if label[g] >= 0:
            continue
        reps[nclass] = g
        for h in range(n):
            c = T[T[h, g], inv[h]]
            label[c] = nclass
        nclass += 1
    return label, reps[:nclass].copy()


def np_class_labels(T, inv):
    n = T.shape[0]
    conj = T[T, inv[:, None]]  # conj[h, g] = h g h^-1
    label = -np.ones(n, dtype=np.int64)
    reps = []
    for g in range(n):
        if label[g] >= 0:
            continue
        label[conj[:, g]] = len(reps)
        reps.append(g)
    return label, np.array(reps, dtype=np.int64)


def _nb_centralizer_mask(T, g):
    n = T.shape[0]
    out = np.zeros(n, dtype=np.bool_)
    for h in range(n):
        out[h] = T[g, h] == T[h, g]
    return out


def np_centralizer_mask(T, g):
    return T[g, :] == T[:, g]


# ---------------------------------------------------------------------------
# double cosets L \ G / R


def _nb_double_coset_labels(T, L, R):
    n = T.shape[0]
    label = -np.ones(n, dtype=np.int64)
    reps = np.empty(n, dtype=np.int64)
    k = 0
    for g in range(n):
        if label[g] >= 0:
            continue
        reps[k] = g
        for a in L:
            lg = T[a, g]
            for b in R:
                label[T[lg, b]] = k
        k += 1
    return label, reps[:k].copy()


def np_double_coset_labels(T, L, R):
    n = T.shape[0]
    label = -np.ones(n, dtype=np.int64)
    reps = []
    for g in range(n):
        if label[g] >= 0:
            continue
        orbit = T[T[L, g][:, None], R[None, :]]
        label[orbit.ravel()] = len(reps)
        reps.append(g)
    return label, np.array(reps, dtype=np.int64)


# ---------------------------------------------------------------------------
# codimension relation and covering relation


def _nb_leq_matrix(T, inv, codim):
    n = T.shape[0]
    out = np.zeros((n, n), dtype=np.bool_)
    for g in range(n):
        gi = inv[g]
        for h in range(n):
            out[g, h] = codim[g] + codim[T[gi, h]] == codim[h]
    return out


def np_leq_matrix(T, inv, codim):
    return codim[:, None] + codim[T[inv, :]] == codim[None, :]


def _nb_covers(leq):
    n = leq.shape[0]
    out = np.zeros((n, n), dtype=np.bool_)
    for a in range(n):
        for b in range(n):
            if a == b or not leq[a, b]:
                continue
            cover = True
            for c in range(n):
                if c != a and c != b and leq[a, c] and leq[c, b]:
                    cover = False
                    break
            out[a, b] = cover
    return out


def np_covers(leq):
    n = leq.shape[0]
    strict = leq & ~np.eye(n, dtype=bool)
    s = strict.astype(np.int64)
    between = (s @ s) > 0
    return strict & ~between


def _nb_is_partial_order(leq):
    """(reflexive, antisymmetric, transitive)."""
    n = leq.shape[0]
    refl = True
    anti = True
    trans = True
    for a in range(n):
        if not leq[a, a]:
            refl = False
        for b in range(n):
            if a != b and leq[a, b] and leq[b, a]:
                anti = False
            if leq[a, b]:
                for c in range(n):
                    if leq[b, c] and not leq[a, c]:
                        trans = False
    return refl, anti, trans


def np_is_partial_order(leq):
    n = leq.shape[0]
    eye = np.eye(n, dtype=bool)
    refl = bool(np.all(np.diag(leq)))
    anti = not bool(np.any(leq & leq.T & ~eye))
    li = leq.astype(np.int64)
    trans = not bool(np.any(((li @ li) > 0) & ~leq))
    return refl, anti, trans


# ---------------------------------------------------------------------------
# breadth-first search on the Cayley graph with a generating subset


def _nb_bfs_lengths(T, gens):
    """Level-synchronous BFS from 0. Frontier sorted, neighbours in `gens` order."""
    n = T.shape[0]
    dist = -np.ones(n, dtype=np.int64)
    parent = -np.ones(n, dtype=np.int64)
    via = -np.ones(n, dtype=np.int64)
    dist[0] = 0
    frontier = np.zeros(1, dtype=np.int64)
    level = 0
    while frontier.shape[0] > 0:
        level += 1
        buf = np.empty(frontier.shape[0] * gens.shape[0], dtype=np.int64)
        k = 0
        for x in frontier:
            for s in gens:
                y = T[x, s]
                if dist[y] < 0:
                    dist[y] = level
                    parent[y] = x
                    via[y] = s
                    buf[k] = y
                    k += 1
        frontier = np.sort(buf[:k])
    return dist, parent, via


def np_bfs_lengths(T, gens):
    n = T.shape[0]
    dist = -np.ones(n, dtype=np.int64)
    parent = -np.ones(n, dtype=np.int64)
    via = -np.ones(n, dtype=np.int64)
    dist[0] = 0
    frontier = np.zeros(1, dtype=np.int64)
    level = 0
    while frontier.size:
        level += 1
        cand = T[frontier[:, None], gens[None, :]].ravel()
        src = np.repeat(frontier, gens.size)
        gen = np.tile(gens, frontier.size)
        fresh = dist[cand] < 0
        cand, src, gen = cand[fresh], src[fresh], gen[fresh]
        new, first = np.unique(cand, return_index=True)
        dist[new] = level
        parent[new] = src[first]
        via[new] = gen[first]
        frontier = new
    return dist, parent, via


# ---------------------------------------------------------------------------

if HAVE_NUMBA:
    nb_fill_mult_table = _jit(_nb_fill_mult_table)
    nb_inverses = _jit(_nb_inverses)
    nb_orders = _jit(_nb_orders)
    nb_class_labels = _jit(_nb_class_labels)
    nb_centralizer_mask = _jit(_nb_centralizer_mask)
    nb_double_coset_labels = _jit(_nb_double_coset_labels)
    nb_leq_matrix = _jit(_nb_leq_matrix)
    nb_covers = _jit(_nb_covers)
    nb_is_partial_order = _jit(_nb_is_partial_order)
    nb_bfs_lengths = _jit(_nb_bfs_lengths)
else:  # pragma: no cover
    nb_fill_mult_table = _nb_fill_mult_table
    nb_inverses = _nb_inverses
    nb_orders = _nb_orders
    nb_class_labels = _nb_class_labels
    nb_centralizer_mask = _nb_centralizer_mask
    nb_double_coset_labels = _nb_double_coset_labels
    nb_leq_matrix = _nb_leq_matrix
    nb_covers = _nb_covers
    nb_is_partial_order = _nb_is_partial_order
    nb_bfs_lengths = _nb_bfs_lengths

KERNELS = (
    "fill_mult_table",
    "inverses",
    "orders",
    "class_labels",
    "centralizer_mask",
    "double_coset_labels",
    "leq_matrix",
    "covers",
    "is_partial_order",
    "bfs_lengths",
)


def implementation(name, use_numba=None):
    """Kernel `name` from the requested backend (default: the env-selected one)."""
    if use_numba is None:
        use_numba = USE_NUMBA
    return globals()[("nb_" if use_numba else "np_") + name]


_dispatch = implementation

fill_mult_table = _dispatch("fill_mult_table")
inverses = _dispatch("inverses")
orders = _dispatch("orders")
class_labels = _dispatch("class_labels")
centralizer_mask = _dispatch("centralizer_mask")
double_coset_labels = _dispatch("double_coset_labels")
leq_matrix = _dispatch("leq_matrix")
covers = _dispatch("covers")
is_partial_order = _dispatch("is_partial_order")
bfs_lengths = _dispatch("bfs_lengths")
