"""Reading group specs and cochains from JSON.

Group spec::

    {"name": "...", "modulus": m, "generators": [matrix, ...], "acting_dim": n}
    {"name": "...", "standard": {"kind": "G(r,p,n)", "r": 4, "p": 2, "n": 2}}

Matrix entries may be integers, rational strings "p/q", CycNum objects
{"m": 4, "c": ["0", "1"]}, or roots of unity {"zeta": [d, k]} meaning zeta_d^k.

Cochain: a list of terms {"poly": ..., "form": ..., "g": label-or-index}.
A poly is a scalar or a list of {"exp": [...], "c": scalar}; a form is "vol",
or a list of {"idx": [...], "c": scalar} with 0-based indices in wedge order.
"""

from __future__ import annotations

import json
from importlib import resources
from math import gcd
from pathlib import Path

from .cyclotomic import CycNum, Q
from .exactlinalg import Mat
from .exterior import ExtForm, VolAssignment
from .groups import DEFAULT_CAP, GroupError, build_standard_group, close_group
from .hochschild import Cochain
from .polys import Poly

__all__ = ["SpecError", "load_json", "resolve_spec_path", "load_group", "group_from_spec", "parse_cochain", "bundled_specs"]


class SpecError(ValueError):
    """Malformed input; the message names the offending JSON path."""


def bundled_specs():
    root = resources.files("skewcoh") / "specs"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def resolve_spec_path(name):
    """A file path if it exists; otherwise a bundled spec with the same stem."""
    p = Path(name)
    if p.is_file():
        return p
    stem = p.name[:-5] if p.name.endswith(".json") else p.name
    bundled = resources.files("skewcoh") / "specs" / f"{stem}.json"
    if bundled.is_file():
        return bundled
    raise SpecError(f"{name}: no such file or bundled spec (bundled: {', '.join(bundled_specs())})")


def load_json(name):
    path = resolve_spec_path(name)
    try:
        return json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise SpecError(f"{name}: invalid JSON ({exc})") from None


def _lcm(a, b):
    return a * b // gcd(a, b)


def _entry_modulus(x, where):
    if isinstance(x, dict):
        if "zeta" in x:
            try:
                return int(x["zeta"][0])
            except (TypeError, ValueError, IndexError):
                raise SpecError(f"{where}.zeta: expected [d, k]") from None
        if "m" in x:
            return int(x["m"])
        raise SpecError(f"{where}: unknown entry object {x}")
    return 1


def parse_scalar(x, m, where="$"):
    try:
        if isinstance(x, dict):
            if "zeta" in x:
                d, k = (int(v) for v in x["zeta"])
                if m % d:
                    raise SpecError(f"{where}: zeta_{d} is not in the field of modulus {m}")
                return CycNum.zeta(m, k * (m // d))
            if "c" in x:
                return CycNum.from_json(x).embed(m)
            raise SpecError(f"{where}: unknown scalar object {x}")
        if isinstance(x, bool) or not isinstance(x, (int, str)):
            raise SpecError(f"{where}: expected an integer, 'p/q' string or object, got {x!r}")
        return CycNum.rational(m, Q(x))
    except (ValueError, ZeroDivisionError) as exc:
        if isinstance(exc, SpecError):
            raise
        raise SpecError(f"{where}: bad scalar {x!r} ({exc})") from None


def _parse_matrix(rows, m, where):
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise SpecError(f"{where}: expected a nonempty list of rows")
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise SpecError(f"{where}: matrix is not square")
    return Mat([[parse_scalar(x, m, f"{where}[{i}][{j}]") for j, x in enumerate(r)] for i, r in enumerate(rows)], m)


def group_from_spec(spec, cap=None, where="$"):
    if not isinstance(spec, dict):
        raise SpecError(f"{where}: a group spec must be a JSON object")
    cap = cap or int(spec.get("cap", DEFAULT_CAP))
    name = spec.get("name", "")
    try:
        if "standard" in spec:
            G = build_standard_group(spec["standard"], cap=cap)
            if name:
                G.name = name
            return G
        if "generators" not in spec:
            raise SpecError(f"{where}: needs 'generators' or 'standard'")
        gens = spec["generators"]
        if not isinstance(gens, list) or not gens:
            raise SpecError(f"{where}.generators: expected a nonempty list of matrices")
        m = int(spec.get("modulus", 1))
        for i, M in enumerate(gens):
            for r in M if isinstance(M, list) else []:
                for x in r if isinstance(r, list) else []:
                    m = _lcm(m, _entry_modulus(x, f"{where}.generators[{i}]"))
        mats = [_parse_matrix(M, m, f"{where}.generators[{i}]") for i, M in enumerate(gens)]
        acting = spec.get("acting_dim")
        if acting is not None and not (1 <= int(acting) <= mats[0].nrows):
            raise SpecError(f"{where}.acting_dim: must lie between 1 and the matrix size")
        return close_group(mats, cap=cap, acting_dim=int(acting) if acting else None, name=name)
    except GroupError as exc:
        raise SpecError(f"{where}: {exc}") from None


def load_group(name, cap=None):
    spec = load_json(name)
    return group_from_spec(spec, cap=cap), spec


def _element(G, g, where):
    if isinstance(g, int) and not isinstance(g, bool):
        if not 0 <= g < G.order:
            raise SpecError(f"{where}: element index {g} out of range")
        return g
    if isinstance(g, str):
        if g in G.labels:
            return G.labels.index(g)
        raise SpecError(f"{where}: unknown element label {g!r}")
    raise SpecError(f"{where}: expected an element label or index")


def parse_poly(x, G, where="$"):
    n, m = G.n, G.m
    if x is None:
        return Poly.const(n, m)
    if not isinstance(x, list):
        return Poly.const(n, m, parse_scalar(x, m, where))
    out = Poly.zero(n, m)
    for i, t in enumerate(x):
        w = f"{where}[{i}]"
        if not isinstance(t, dict) or "exp" not in t:
            raise SpecError(f"{w}: expected {{'exp': [...], 'c': ...}}")
        e = t["exp"]
        if not isinstance(e, list) or len(e) != n or any(not isinstance(k, int) or k < 0 for k in e):
            raise SpecError(f"{w}.exp: expected {n} nonnegative integers")
        out = out + Poly.monomial(e, m, parse_scalar(t.get("c", 1), m, f"{w}.c"))
    return out


def parse_form(x, G, g, vols, where="$"):
    n, m = G.n, G.m
    if x is None:
        return ExtForm.one(n, m)
    if x == "vol":
        return vols[g]
    if not isinstance(x, list):
        raise SpecError(f"{where}: expected 'vol' or a list of wedge terms")
    out = ExtForm.zero(n, m)
    for i, t in enumerate(x):
        w = f"{where}[{i}]"
        if not isinstance(t, dict) or "idx" not in t:
            raise SpecError(f"{w}: expected {{'idx': [...], 'c': ...}}")
        idx = t["idx"]
        if not isinstance(idx, list) or any(not isinstance(k, int) or not 0 <= k < n for k in idx):
            raise SpecError(f"{w}.idx: expected indices in 0..{n - 1}")
        c = parse_scalar(t.get("c", 1), m, f"{w}.c")
        out = out + ExtForm.basis(n, m, *idx).scale(c)
    return out


def parse_cochain(x, G, vols=None, where="$"):
    vols = vols or VolAssignment(G)
    if isinstance(x, dict) and "terms" in x:
        x, where = x["terms"], f"{where}.terms"
    if not isinstance(x, list):
        raise SpecError(f"{where}: a cochain is a list of terms")
    out = Cochain(G)
    for i, t in enumerate(x):
        w = f"{where}[{i}]"
        if not isinstance(t, dict) or "g" not in t:
            raise SpecError(f"{w}: expected an object with 'g'")
        g = _element(G, t["g"], f"{w}.g")
        f = parse_poly(t.get("poly"), G, f"{w}.poly")
        form = parse_form(t.get("form"), G, g, vols, f"{w}.form")
        out = out + Cochain.term(G, f, form, g)
    return out


def load_cochain(name, G, vols=None):
    p = Path(name)
    if not p.is_file():
        p = resolve_spec_path(name)
    try:
        data = json.loads(p.read_text())
    except json.JSONDecodeError as exc:
        raise SpecError(f"{name}: invalid JSON ({exc})") from None
    return parse_cochain(data, G, vols, where=f"{p.name}")
