"""Reflection length and its comparison with codimension."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .poset import leq_matrix

__all__ = [
    "UnreachableError",
    "LengthTable",
    "reflections_of",
    "length_table",
    "reflection_length",
    "compare_orders_report",
]


class UnreachableError(ValueError):
    pass


def reflections_of(G):
    """Nonidentity elements fixing a hyperplane pointwise (codim 1), in index order."""
    return [g for g in G if g.codim == 1]


@dataclass
class LengthTable:
    group: object
    reflections: list  # element indices
    length: np.ndarray  # -1 where unreachable
    parent: np.ndarray
    via: np.ndarray

    def witness(self, g):
        """Reflections s_1..s_l (indices) with s_1 ... s_l = g."""
        if self.length[g] < 0:
            raise UnreachableError(f"{self.group.labels[g]} is not a product of reflections")
        out = []
        while g:
            out.append(int(self.via[g]))
            g = int(self.parent[g])
        return out[::-1]

    def rows(self):
        G = self.group
        for g in range(G.order):
            yield G.labels[g], int(self.length[g]), int(G.codims[g]), bool(self.length[g] == G.codims[g])


_tables = {}


def length_table(G, use_numba=None) -> LengthTable:
    key = (id(G), use_numba)
    t = _tables.get(key)
    if t is None:
        refl = np.array([s.index for s in reflections_of(G)], dtype=np.int64)
        bfs = _kernels.bfs_lengths if use_numba is None else _kernels.implementation("bfs_lengths", use_numba)
        dist, parent, via = bfs(G.table, refl)
        t = _tables[key] = LengthTable(G, [int(r) for r in refl], dist, parent, via)
    return t


def reflection_length(g):
    """(l(g), witness) by breadth-first search over all reflections."""
    T = length_table(g.group)
    w = T.witness(g.index)
    return len(w), w


def compare_orders_report(G):
    """Per element (label, l, codim, equal); all_equal; and, when it holds, the poset checks."""
    T = length_table(G)
    rows = list(T.rows())
    all_equal = all(r[3] for r in rows)
    report = {"group": G.name, "rows": rows, "all_equal": all_equal, "witnesses": []}
    report["witnesses"] = [r[0] for r in rows if not r[3]]
    if all_equal:
        leq = leq_matrix(G)
        minimal = sorted(h for h in range(1, G.order) if all(not leq[x, h] for x in range(1, G.order) if x != h))
        report["minimal_are_reflections"] = minimal == sorted(T.reflections)
        L = T.length
        abs_leq = L[:, None] + L[G.table[G.inv, :]] == L[None, :]
        report["absolute_order_matches"] = bool(np.array_equal(abs_leq, leq))
    return report
