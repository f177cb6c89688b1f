"""Exact arithmetic in the cyclotomic field Q(z), z a primitive m-th root of unity.

Elements are stored in the power basis 1, z, ..., z^(phi(m)-1), reduced modulo
the m-th cyclotomic polynomial, so two values are equal iff their coordinate
tuples are equal.

>>> i = CycNum.zeta(4)
>>> i * i
CycNum(4, ['-1', '0'])
>>> w = CycNum.zeta(3)
>>> 1 / (1 + w)
CycNum(3, ['0', '-1'])
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

try:
    from gmpy2 import mpq
except ImportError:  # pragma: no cover
    mpq = Fraction

__all__ = ["CycNum", "cyclotomic_poly", "euler_phi", "canonicalize", "field_arith", "Q"]


def Q(x, den=None):
    """Coerce to the rational type used for coordinates."""
    if den is not None:
        return mpq(x, den)
    if isinstance(x, str):
        x = Fraction(x.strip())
        return mpq(x.numerator, x.denominator)
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    return mpq(x)


def _divisors(m):
    return [d for d in range(1, m + 1) if m % d == 0]


def euler_phi(m: int) -> int:
    return sum(1 for k in range(1, m + 1) if gcd(k, m) == 1)


@lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_m, lowest degree first."""
    if m < 1:
        raise ValueError("modulus must be positive")
    num = [-1] + [0] * (m - 1) + [1]
    for d in _divisors(m)[:-1]:
        den = cyclotomic_poly(d)
        # exact division by a monic integer polynomial
        quo = [0] * (len(num) - len(den) + 1)
        rem = list(num)
        for k in range(len(quo) - 1, -1, -1):
            c = rem[k + len(den) - 1]
            quo[k] = c
            if c:
                for i, a in enumerate(den):
                    rem[k + i] -= c * a
        assert not any(rem), "cyclotomic division left a remainder"
        num = quo
    return tuple(num)


class _Field:
    """Per-modulus tables shared by every CycNum with that modulus."""

    def __init__(self, m):
        self.m = m
        self.poly = cyclotomic_poly(m)
        self.phi = len(self.poly) - 1
        phi = self.phi
        zero = mpq(0)
        self.zero = (zero,) * phi
        self.one = (mpq(1),) + (zero,) * (phi - 1)
        # z^k for 0 <= k < m as integer coordinate vectors
        pw = []
        v = [1] + [0] * (phi - 1)
        for _ in range(m):
            pw.append(tuple(v))
            top = v[-1]
            v = [0] + v[:-1]
            if top:
                for i in range(phi):
                    v[i] -= top * self.poly[i]
        self.powers = pw

    def reduce(self, c):
        """Reduce a coefficient list of length <= 2*phi-1 modulo Phi_m (in place)."""
        phi, poly = self.phi, self.poly
        for k in range(len(c) - 1, phi - 1, -1):
            t = c[k]
            if t:
                base = k - phi
                for i in range(phi):
                    if poly[i]:
                        c[base + i] -= t * poly[i]
        return tuple(c[:phi])


@lru_cache(maxsize=None)
def _field(m: int) -> _Field:
    return _Field(m)


_MPQ = type(mpq(0))


def _is_scalar(x):
    return isinstance(x, (int, Fraction, _MPQ))


class CycNum:
    """Immutable element of Q(zeta_m)."""

    __slots__ = ("m", "c", "rat", "_hash")

    def __init__(self, m: int, c):
        # trusted constructor: c is a canonical tuple of mpq of length phi(m)
        self.m = m
        self.c = c
        self.rat = not any(c[1:])
        self._hash = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def rational(cls, m: int, q=0) -> CycNum:
        f = _field(m)
        if f.phi == 1:
            return cls(m, (Q(q),))
        return cls(m, (Q(q),) + f.zero[1:])

    @classmethod
    def zero(cls, m: int) -> CycNum:
        return cls(m, _field(m).zero)

    @classmethod
    def one(cls, m: int) -> CycNum:
        return cls(m, _field(m).one)

    @classmethod
    def zeta(cls, m: int, k: int = 1) -> CycNum:
        """The root of unity zeta_m^k."""
        f = _field(m)
        return cls(m, tuple(mpq(a) for a in f.powers[k % m]))

    @classmethod
    def from_powers(cls, m: int, raw) -> CycNum:
        """Canonical form of sum raw[k] * zeta_m^k; raw maps int -> rational."""
        f = _field(m)
        acc = [mpq(0)] * f.phi
        for k, q in raw.items():
            q = Q(q)
            if not q:
                continue
            for i, a in enumerate(f.powers[k % m]):
                if a:
                    acc[i] += a * q
        return cls(m, tuple(acc))

    def _lift(self, x) -> CycNum:
        if isinstance(x, CycNum):
            if x.m != self.m:
                raise ValueError(f"modulus mismatch: {self.m} vs {x.m}")
            return x
        if _is_scalar(x):
            return CycNum.rational(self.m, x)
        raise TypeError(f"cannot combine CycNum with {type(x).__name__}")

    # -- queries ------------------------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.c)

    def __bool__(self):
        return any(self.c)

    def is_rational(self) -> bool:
        return self.rat

    def to_rational(self):
        if not self.rat:
            raise ValueError(f"{self} is not rational")
        return self.c[0]

    def __eq__(self, other):
        if isinstance(other, CycNum):
            return self.m == other.m and self.c == other.c
        if _is_scalar(other):
            return self.rat and self.c[0] == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.c[0]) if self.rat else hash((self.m, self.c))
        return self._hash

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other):
        if _is_scalar(other):
            if not other:
                return self
            return CycNum(self.m, (self.c[0] + other,) + self.c[1:])
        o = self._lift(other)
        return CycNum(self.m, tuple(a + b for a, b in zip(self.c, o.c)))

    __radd__ = __add__

    def __neg__(self):
        return CycNum(self.m, tuple(-a for a in self.c))

    def __sub__(self, other):
        if _is_scalar(other):
            return CycNum(self.m, (self.c[0] - other,) + self.c[1:])
        o = self._lift(other)
        return CycNum(self.m, tuple(a - b for a, b in zip(self.c, o.c)))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, q):
        if not isinstance(q, (int, _MPQ)):
            q = Q(q)
        return CycNum(self.m, tuple(a * q for a in self.c))

    def __mul__(self, other):
        if _is_scalar(other):
            return self.scale(other)
        o = self._lift(other)
        if o.rat:
            return self.scale(o.c[0])
        if self.rat:
            return o.scale(self.c[0])
        f = _field(self.m)
        phi = f.phi
        acc = [mpq(0)] * (2 * phi - 1)
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(o.c):
                    if b:
                        acc[i + j] += a * b
        return CycNum(self.m, f.reduce(acc))

    __rmul__ = __mul__

    def inverse(self) -> CycNum:
        if self.rat:
            if not self.c[0]:
                raise ZeroDivisionError("division by zero in Q(zeta)")
            return CycNum.rational(self.m, 1 / self.c[0])
        if self.is_zero():
            raise ZeroDivisionError("division by zero in Q(zeta)")
        # solve (self * y) = 1 for the coordinates of y
        f = _field(self.m)
        phi = f.phi
        cols = []
        cur = self
        z = CycNum.zeta(self.m)
        for _ in range(phi):
            cols.append(cur.c)
            cur = cur * z
        aug = [[cols[j][i] for j in range(phi)] + [mpq(1 if i == 0 else 0)] for i in range(phi)]
        for col in range(phi):
            piv = next(r for r in range(col, phi) if aug[r][col])
            aug[col], aug[piv] = aug[piv], aug[col]
            inv = 1 / aug[col][col]
            aug[col] = [x * inv for x in aug[col]]
            for r in range(phi):
                if r != col and aug[r][col]:
                    t = aug[r][col]
                    aug[r] = [x - t * y for x, y in zip(aug[r], aug[col])]
        return CycNum(self.m, tuple(aug[i][phi] for i in range(phi)))

    def __truediv__(self, other):
        if _is_scalar(other):
            if not other:
                raise ZeroDivisionError("division by zero in Q(zeta)")
            return self.scale(1 / Q(other))
        return self * self._lift(other).inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = CycNum.one(self.m)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def embed(self, new_m: int) -> CycNum:
        """Image under Q(zeta_m) -> Q(zeta_new_m), zeta_m -> zeta_new_m^(new_m/m)."""
        if new_m % self.m:
            raise ValueError(f"{self.m} does not divide {new_m}")
        if new_m == self.m:
            return self
        s = new_m // self.m
        return CycNum.from_powers(new_m, {k * s: a for k, a in enumerate(self.c) if a})

    def root_exponent(self):
        """k with self == zeta_m^k, or None if self is not an m-th root of unity."""
        f = _field(self.m)
        for k in range(self.m):
            if all(a == b for a, b in zip(self.c, f.powers[k])):
                return k
        return None

    def __complex__(self):
        import cmath

        z = cmath.exp(2j * cmath.pi / self.m)
        return sum(complex(float(a)) * z**k for k, a in enumerate(self.c))

    # -- io -----------------------------------------------------------------

    def to_json(self):
        return {"m": self.m, "c": [str(a) for a in self.c]}

    @classmethod
    def from_json(cls, obj) -> CycNum:
        m = int(obj["m"])
        coeffs = obj["c"]
        return cls.from_powers(m, {k: Q(str(a)) for k, a in enumerate(coeffs)})

    def __repr__(self):
        return f"CycNum({self.m}, {[str(a) for a in self.c]})"

    def __str__(self):
        if self.rat:
            return str(self.c[0])
        parts = []
        for k, a in enumerate(self.c):
            if not a:
                continue
            mono = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
            if not mono:
                parts.append(str(a))
            elif a == 1:
                parts.append(mono)
            elif a == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{a}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def canonicalize(m: int, raw) -> CycNum:
    """Reduce sum raw[k] * zeta_m^k to canonical coordinates."""
    return CycNum.from_powers(m, raw)


def field_arith(a: CycNum, b: CycNum, op: str) -> CycNum:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")
