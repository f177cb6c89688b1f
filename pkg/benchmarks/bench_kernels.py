"""Compare the numba and numpy backends of the integer table kernels.

    python3 benchmarks/bench_kernels.py [--group g314] [--repeat 5]

The group is built once; each kernel then runs on its multiplication table with
both backends.  Outputs are checked for equality before timings are reported.
"""

import argparse
import time
from collections import deque

import numpy as np

from skewcoh import _kernels
from skewcoh.groups import build_standard_group
from skewcoh.reflength import reflections_of

GROUPS = {
    "g314": {"kind": "G(r,p,n)", "r": 3, "p": 1, "n": 4},
    "b4": {"kind": "G(r,p,n)", "r": 2, "p": 1, "n": 4},
    "s5": {"kind": "symmetric", "n": 5},
    "g413": {"kind": "G(r,p,n)", "r": 4, "p": 1, "n": 3},
}


def spanning_tree(T, gens):
    n = T.shape[0]
    parent = np.full(n, -1, dtype=np.int64)
    pgen = np.full(n, -1, dtype=np.int64)
    seen = np.zeros(n, dtype=bool)
    seen[0] = True
    order = [0]
    q = deque([0])
    while q:
        g = q.popleft()
        for s, x in enumerate(gens):
            h = T[g, x]
            if not seen[h]:
                seen[h] = True
                parent[h], pgen[h] = g, s
                order.append(h)
                q.append(h)
    # relabel so that parents precede children, as the closure produces
    relabel = np.empty(n, dtype=np.int64)
    relabel[order] = np.arange(n)
    right = relabel[T[np.ix_(order, gens)]]
    par = np.array([-1] + [relabel[parent[h]] for h in order[1:]], dtype=np.int64)
    pg = np.array([-1] + [pgen[h] for h in order[1:]], dtype=np.int64)
    return right, par, pg


def cases(G):
    T = G.table
    inv = _kernels.inverses(T)
    refl = np.array([s.index for s in reflections_of(G)], dtype=np.int64)
    codim = np.array(G.codims, dtype=np.int64)
    right, par, pg = spanning_tree(T, refl)
    leq = _kernels.leq_matrix(T, inv, codim)
    Z = np.flatnonzero(_kernels.centralizer_mask(T, int(refl[0]))).astype(np.int64)
    return {
        "fill_mult_table": (right, par, pg),
        "inverses": (T,),
        "orders": (T,),
        "class_labels": (T, inv),
        "centralizer_mask": (T, int(refl[0])),
        "double_coset_labels": (T, Z, Z),
        "leq_matrix": (T, inv, codim),
        "covers": (leq,),
        "is_partial_order": (leq,),
        "bfs_lengths": (T, refl),
    }


def same(a, b):
    if isinstance(a, tuple):
        return all(same(x, y) for x, y in zip(a, b))
    return np.array_equal(np.asarray(a), np.asarray(b))


def best_of(fn, args, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t)
    return best


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--group", choices=sorted(GROUPS), default="g314")
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)

    t = time.perf_counter()
    G = build_standard_group(GROUPS[args.group])
    print(f"{G.name}: order {G.order}, built in {time.perf_counter() - t:.2f}s")
    print(f"{'kernel':<22}{'numba (s)':>12}{'numpy (s)':>12}{'speedup':>10}")
    for name, kargs in cases(G).items():
        nb = _kernels.implementation(name, True)
        np_ = _kernels.implementation(name, False)
        if not same(nb(*kargs), np_(*kargs)):  # also triggers compilation
            raise SystemExit(f"{name}: backends disagree")
        a, b = best_of(nb, kargs, args.repeat), best_of(np_, kargs, args.repeat)
        print(f"{name:<22}{a:>12.5f}{b:>12.5f}{b / a:>10.1f}")


if __name__ == "__main__":
    main()
