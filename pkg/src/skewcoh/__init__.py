"""Exact products in the Hochschild cohomology of S(V)#G for finite matrix groups."""

from .cyclotomic import CycNum
from .exactlinalg import Mat, Subspace
from .exterior import ExtForm, VolAssignment
from .groups import FiniteGroup, GElem, build_standard_group, close_group
from .hochschild import Cochain, HClass, cup_via_bar, proj_H, smash_cup
from .invariants import InvariantClass, mackey_cup
from .polys import Poly
from .specio import load_cochain, load_group

__all__ = [
    "CycNum",
    "Mat",
    "Subspace",
    "ExtForm",
    "VolAssignment",
    "FiniteGroup",
    "GElem",
    "build_standard_group",
    "close_group",
    "Cochain",
    "HClass",
    "smash_cup",
    "cup_via_bar",
    "proj_H",
    "InvariantClass",
    "mackey_cup",
    "Poly",
    "load_group",
    "load_cochain",
]
