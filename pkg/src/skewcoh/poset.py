"""The codimension relation g <= h and the partial order it induces on G/K."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .exactlinalg import intersection, span_sum

__all__ = [
    "PosetError",
    "leq",
    "leq_matrix",
    "check_codims_equivalences",
    "PosetOnQuotient",
    "quotient_poset",
    "hasse_dot",
]


class PosetError(RuntimeError):
    pass


def leq(g, h) -> bool:
    """codim V^g + codim V^(g^-1 h) == codim V^h."""
    G = g.group
    return g.codim + G[G.mul(G.inverse(g.index), h.index)].codim == h.codim


def leq_matrix(G):
    return _kernels.leq_matrix(G.table, G.inv, G.codims)


def check_codims_equivalences(g, h):
    """Truth values of the four equivalent conditions on the pair (g, h).

    (i)   perp(g) and perp(h) intersect trivially
    (ii)  V^g + V^h = V
    (iii) codim V^g + codim V^h = codim V^(gh)
    (iv)  perp(g) + perp(h) = perp(gh), as a direct sum
    When they hold, also checks V^g cap V^h = V^(gh).
    """
    G = g.group
    m, n = G.m, G.n
    gh = G[G.mul(g.index, h.index)]
    Pg, Ph, Pgh = g.perp_space, h.perp_space, gh.perp_space
    c1 = intersection(Pg, Ph, m).is_zero()
    c2 = span_sum(g.fixed_space, h.fixed_space).dim == n
    c3 = g.codim + h.codim == gh.codim
    c4 = c1 and span_sum(Pg, Ph) == Pgh
    report = {"i": c1, "ii": c2, "iii": c3, "iv": c4}
    report["equivalent"] = len({c1, c2, c3, c4}) == 1
    if c1 and c2 and c3 and c4:
        report["fixed_intersection"] = intersection(g.fixed_space, h.fixed_space, m) == gh.fixed_space
    else:
        report["fixed_intersection"] = None
    return report


@dataclass
class PosetOnQuotient:
    group: object
    cosets: list  # list of tuples of element indices, identity coset first
    reps: list  # minimal index in each coset
    coset_of: np.ndarray
    leq: np.ndarray  # boolean, on cosets
    covers: np.ndarray
    minimal_nonidentity: list  # coset numbers

    @property
    def size(self):
        return len(self.cosets)

    def codim(self, c):
        return int(self.group.codims[self.reps[c]])

    def label(self, c):
        return self.group.labels[self.reps[c]]

    def to_json(self):
        return {
            "cosets": [[self.group.labels[i] for i in c] for c in self.cosets],
            "representatives": [self.label(c) for c in range(self.size)],
            "codims": [self.codim(c) for c in range(self.size)],
            "covers": [[self.label(a), self.label(b)] for a, b in zip(*np.nonzero(self.covers))],
            "minimal_nonidentity": [self.label(c) for c in self.minimal_nonidentity],
        }


def quotient_poset(G) -> PosetOnQuotient:
    K = G.kernel_K
    coset_of = -np.ones(G.order, dtype=np.int64)
    cosets, reps = [], []
    for g in range(G.order):
        if coset_of[g] >= 0:
            continue
        members = sorted({G.mul(g, k) for k in K})
        coset_of[members] = len(cosets)
        cosets.append(tuple(members))
        reps.append(g)

    full = leq_matrix(G)
    # the relation must not depend on the chosen coset representatives
    labels = coset_of
    q = len(cosets)
    rel = np.zeros((q, q), dtype=bool)
    rep_arr = np.array(reps)
    rel[:, :] = full[np.ix_(rep_arr, rep_arr)]
    lifted = rel[labels[:, None], labels[None, :]]
    if not np.array_equal(lifted, full):
        raise PosetError("relation depends on coset representatives")

    refl, anti, trans = _kernels.is_partial_order(rel)
    if not anti:
        raise PosetError("antisymmetry fails on G/K")
    if not (refl and trans):
        raise PosetError("relation on G/K is not a partial order")
    cov = _kernels.covers(rel)
    minimal = [c for c in range(1, q) if cov[0, c]]
    return PosetOnQuotient(G, cosets, reps, coset_of, rel, cov, minimal)


def hasse_dot(P: PosetOnQuotient) -> str:
    lines = ["digraph poset {", "  rankdir=BT;"]
    for c in range(P.size):
        lines.append(f'  n{c} [label="{P.label(c)}\\ncodim {P.codim(c)}"];')
    for a, b in zip(*np.nonzero(P.covers)):
        lines.append(f"  n{a} -> n{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"
