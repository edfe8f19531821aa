"""Exact arithmetic in cyclotomic fields Q(zeta_e).

Canonical form: the coordinate vector in the power basis
``1, z, ..., z^(phi(e)-1)`` of ``Q(z)``, ``z = exp(2 pi i / e)``, i.e. the
remainder modulo the ``e``-th cyclotomic polynomial.  Two values with the
same conductor are equal iff their coefficient tuples are equal; values with
different conductors are compared after embedding both in the field of the
lcm conductor.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Mapping

__all__ = ["Cyclotomic", "cyclotomic_polynomial", "reduce_integer_vector"]


@lru_cache(maxsize=None)
def cyclotomic_polynomial(e: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_e, lowest degree first."""
    # Phi_e = (x^e - 1) / prod_{d | e, d < e} Phi_d
    num = [-1] + [0] * (e - 1) + [1]
    for d in range(1, e):
        if e % d == 0:
            num = _exact_div(num, list(cyclotomic_polynomial(d)))
    return tuple(num)


def _exact_div(num: list[int], den: list[int]) -> list[int]:
    num = num[:]
    q = [0] * (len(num) - len(den) + 1)
    lead = den[-1]
    for i in range(len(q) - 1, -1, -1):
        c = num[i + len(den) - 1] // lead
        q[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    if any(num[: len(den) - 1]):
        raise ArithmeticError("inexact polynomial division")
    return q


@lru_cache(maxsize=None)
def _power_table(e: int) -> tuple[tuple[int, ...], ...]:
    """Row k: coordinates of z^k (0 <= k < e) in the power basis."""
    phi = cyclotomic_polynomial(e)
    n = len(phi) - 1
    rows = []
    cur = [0] * n
    cur[0] = 1
    for _ in range(e):
        rows.append(tuple(cur))
        # multiply by z and reduce with z^n = -sum phi[i] z^i
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for i in range(n):
                cur[i] -= top * phi[i]
    return tuple(rows)


def reduce_integer_vector(vec, e: int) -> tuple[int, ...]:
    """Power-basis coordinates of ``sum vec[k] z^k`` for an integer vector of length ``e``."""
    table = _power_table(e)
    out = [0] * len(table[0])
    for k, c in enumerate(vec):
        if c:
            for i, r in enumerate(table[k]):
                if r:
                    out[i] += c * r
    return tuple(out)


def _rational(c):
    c = Fraction(c)
    return c.numerator if c.denominator == 1 else c


@lru_cache(maxsize=None)
def _complex_powers(e: int) -> tuple[complex, ...]:
    return tuple(cmath.exp(2j * cmath.pi * k / e) for k in range(e))


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


class Cyclotomic:
    """An element of ``Q(zeta_conductor)`` in canonical power-basis form."""

    __slots__ = ("conductor", "coeffs", "_hash")

    def __init__(self, conductor: int, coeffs: Iterable):
        self.conductor = conductor
        # integers stay unboxed; they compare and hash like the equal Fraction
        self.coeffs = tuple(c if type(c) is int else _rational(c) for c in coeffs)
        if len(self.coeffs) != len(_power_table(conductor)[0]):
            raise ValueError("coefficient vector length must be phi(conductor)")
        self._hash = None

    # -- constructors ----------------------------------------------------------

    @classmethod
    def rational(cls, q, conductor: int = 1) -> "Cyclotomic":
        n = len(_power_table(conductor)[0])
        return cls(conductor, [Fraction(q)] + [0] * (n - 1))

    @classmethod
    def zero(cls, conductor: int = 1) -> "Cyclotomic":
        return cls.rational(0, conductor)

    @classmethod
    def one(cls, conductor: int = 1) -> "Cyclotomic":
        return cls.rational(1, conductor)

    @classmethod
    def root_of_unity(cls, k: int, conductor: int) -> "Cyclotomic":
        """``z^k`` with ``z = exp(2 pi i / conductor)``."""
        return cls(conductor, _power_table(conductor)[k % conductor])

    @classmethod
    def from_exponents(cls, conductor: int, terms: Mapping[int, object] | Iterable[tuple[int, object]]) -> "Cyclotomic":
        """``sum c_k z^k`` from a map (or pairs) exponent -> rational coefficient."""
        table = _power_table(conductor)
        out = [0] * len(table[0])
        items = terms.items() if isinstance(terms, Mapping) else terms
        for k, c in items:
            if not c:
                continue
            row = table[k % conductor]
            for i, r in enumerate(row):
                if r:
                    out[i] += c * r
        return cls(conductor, out)

    # -- structure -------------------------------------------------------------

    def lift(self, conductor: int) -> "Cyclotomic":
        """The same number written over a multiple of the conductor."""
        if conductor == self.conductor:
            return self
        if conductor % self.conductor:
            raise ValueError(f"{conductor} is not a multiple of {self.conductor}")
        step = conductor // self.conductor
        return Cyclotomic.from_exponents(conductor, ((i * step, c) for i, c in enumerate(self.coeffs) if c))

    def _common(self, other: "Cyclotomic") -> tuple["Cyclotomic", "Cyclotomic"]:
        if self.conductor == other.conductor:
            return self, other
        m = _lcm(self.conductor, other.conductor)
        return self.lift(m), other.lift(m)

    @staticmethod
    def _coerce(x, conductor: int) -> "Cyclotomic":
        if isinstance(x, Cyclotomic):
            return x
        if isinstance(x, (int, Fraction)):
            return Cyclotomic.rational(x, conductor)
        raise TypeError(f"cannot coerce {type(x).__name__} to Cyclotomic")

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def is_integer(self) -> bool:
        return self.is_rational() and self.coeffs[0].denominator == 1

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self.coeffs[0])

    # -- arithmetic ------------------------------------------------------------

    def __add__(self, other):
        try:
            other = self._coerce(other, self.conductor)
        except TypeError:
            return NotImplemented
        a, b = self._common(other)
        return Cyclotomic(a.conductor, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.conductor, [-x for x in self.coeffs])

    def __sub__(self, other):
        try:
            other = self._coerce(other, self.conductor)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Cyclotomic(self.conductor, [x * other for x in self.coeffs])
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        a, b = self._common(other)
        e = a.conductor
        acc = [0] * e
        for i, x in enumerate(a.coeffs):
            if not x:
                continue
            for j, y in enumerate(b.coeffs):
                if y:
                    acc[(i + j) % e] += x * y
        return Cyclotomic.from_exponents(e, enumerate(acc))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Cyclotomic):
            if not other.is_rational():
                return NotImplemented
            other = other.coeffs[0]
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        return Cyclotomic(self.conductor, [Fraction(x) / other for x in self.coeffs])

    def conjugate(self) -> "Cyclotomic":
        """Complex conjugation ``z -> z^-1``."""
        e = self.conductor
        return Cyclotomic.from_exponents(e, [((-i) % e, c) for i, c in enumerate(self.coeffs) if c])

    def galois(self, k: int) -> "Cyclotomic":
        """The Galois automorphism ``z -> z^k`` (``gcd(k, e) = 1``)."""
        e = self.conductor
        if gcd(k, e) != 1:
            raise ValueError(f"{k} is not a unit mod {e}")
        return Cyclotomic.from_exponents(e, [((i * k) % e, c) for i, c in enumerate(self.coeffs) if c])

    # -- comparison ------------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        a, b = self._common(other)
        return a.coeffs == b.coeffs

    def __hash__(self) -> int:
        # only meaningful among values sharing a conductor, or rationals
        if self._hash is None:
            self._hash = hash(self.coeffs[0]) if self.is_rational() else hash((self.conductor, self.coeffs))
        return self._hash

    def sort_key(self) -> tuple:
        return (self.conductor, self.coeffs)

    def to_complex(self) -> complex:
        """Approximate complex value; never used for exact decisions."""
        zp = _complex_powers(self.conductor)
        return sum(float(c) * zp[i] for i, c in enumerate(self.coeffs) if c)

    def to_json(self) -> dict:
        return {
            "conductor": self.conductor,
            "coeffs": [str(c) if c.denominator != 1 else c.numerator for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "Cyclotomic":
        return cls(int(data["conductor"]), [Fraction(c) for c in data["coeffs"]])

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
                continue
            mono = f"E({self.conductor})" + (f"^{i}" if i > 1 else "")
            if c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}*{mono}")
        if not terms:
            return "0"
        return "+".join(terms).replace("+-", "-")

    def __repr__(self) -> str:
        return f"Cyclotomic({self})"
