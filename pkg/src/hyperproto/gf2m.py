"""Arithmetic over GF(2), GF(2^m) and the polynomial ring GF(2)[x].

Polynomials over GF(2) are packed into Python integers: bit ``i`` holds the
coefficient of ``x^i``.  Field elements of GF(2^m) use the same packing for
their polynomial-basis representation, reduced modulo a fixed primitive
polynomial.

The primitive polynomial for each ``m`` is the numerically smallest primitive
polynomial of that degree (equivalently, the lexicographically smallest when
coefficients are read from ``x^m`` downwards):

    m   polynomial                          int
    1   x + 1                               3
    2   x^2 + x + 1                         7
    3   x^3 + x + 1                         11
    4   x^4 + x + 1                         19
    5   x^5 + x^2 + 1                       37
    6   x^6 + x + 1                         67
    7   x^7 + x + 1                         131
    8   x^8 + x^4 + x^3 + x^2 + 1           285
    9   x^9 + x^4 + 1                       529
    10  x^10 + x^3 + 1                      1033
    11  x^11 + x^2 + 1                      2053
    12  x^12 + x^6 + x^4 + x + 1            4179
    13  x^13 + x^4 + x^3 + x + 1            8219
    14  x^14 + x^5 + x^3 + x + 1            16427
    15  x^15 + x + 1                        32771
    16  x^16 + x^5 + x^3 + x^2 + 1          65581
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

import numpy as np

PRIMITIVE_POLYNOMIALS: dict[int, int] = {
    1: 0b11,
    2: 0b111,
    3: 0b1011,
    4: 0b10011,
    5: 0b100101,
    6: 0b1000011,
    7: 0b10000011,
    8: 0b100011101,
    9: 0b1000010001,
    10: 0b10000001001,
    11: 0b100000000101,
    12: 0b1000001010011,
    13: 0b10000000011011,
    14: 0b100000000101011,
    15: 0b1000000000000011,
    16: 0b10000000000101101,
}

MAX_M = 16


@dataclass(frozen=True)
class Poly2:
    """Polynomial over GF(2), bit ``i`` of ``bits`` is the coefficient of x^i."""

    bits: int = 0

    def __post_init__(self):
        if self.bits < 0:
            raise ValueError("polynomial bit pattern must be non-negative")

    @classmethod
    def from_coefficients(cls, coeffs: Iterable[int]) -> Poly2:
        """Build from coefficients listed lowest degree first."""
        bits = 0
        for i, c in enumerate(coeffs):
            if c & 1:
                bits |= 1 << i
        return cls(bits)

    @classmethod
    def from_exponents(cls, exponents: Iterable[int]) -> Poly2:
        bits = 0
        for e in exponents:
            bits ^= 1 << e
        return cls(bits)

    @property
    def is_zero(self) -> bool:
        return self.bits == 0

    @property
    def degree(self) -> int | None:
        """Index of the highest set bit; ``None`` for the zero polynomial."""
        if self.bits == 0:
            return None
        return self.bits.bit_length() - 1

    @property
    def coefficients(self) -> tuple[int, ...]:
        if self.bits == 0:
            return ()
        return tuple((self.bits >> i) & 1 for i in range(self.bits.bit_length()))

    def __str__(self) -> str:
        if self.bits == 0:
            return "0"
        terms = []
        for e in range(self.bits.bit_length() - 1, -1, -1):
            if (self.bits >> e) & 1:
                terms.append("1" if e == 0 else "x" if e == 1 else f"x^{e}")
        return " + ".join(terms)


def _clmul(a: int, b: int) -> int:
    out = 0
    while b:
        if b & 1:
            out ^= a
        a <<= 1
        b >>= 1
    return out


def _divmod_bits(a: int, b: int) -> tuple[int, int]:
    if b == 0:
        raise ZeroDivisionError("polynomial division by zero")
    db = b.bit_length()
    q = 0
    while a and a.bit_length() >= db:
        shift = a.bit_length() - db
        q |= 1 << shift
        a ^= b << shift
    return q, a


def poly_add(a: Poly2, b: Poly2) -> Poly2:
    return Poly2(a.bits ^ b.bits)


def poly_mul(a: Poly2, b: Poly2) -> Poly2:
    """Product in GF(2)[x]."""
    return Poly2(_clmul(a.bits, b.bits))


def poly_divmod(a: Poly2, b: Poly2) -> tuple[Poly2, Poly2]:
    q, r = _divmod_bits(a.bits, b.bits)
    return Poly2(q), Poly2(r)


def poly_gcd(a: Poly2, b: Poly2) -> Poly2:
    x, y = a.bits, b.bits
    while y:
        x, y = y, _divmod_bits(x, y)[1]
    return Poly2(x)


def poly_lcm(a: Poly2, b: Poly2) -> Poly2:
    """Least common multiple of two nonzero polynomials (always monic over GF(2))."""
    if a.is_zero or b.is_zero:
        raise ValueError("zero polynomial has no lcm")
    g = poly_gcd(a, b)
    q, r = _divmod_bits(_clmul(a.bits, b.bits), g.bits)
    assert r == 0
    return Poly2(q)


@dataclass(frozen=True, eq=False)
class FieldTable:
    """Log/antilog tables for GF(2^m) built from a primitive polynomial.

    ``antilog[i] = alpha^i`` for ``0 <= i < 2^m - 1`` and ``antilog[2^m - 1] = 1``
    closes the cycle.  ``log[0]`` is ``-1`` since zero has no logarithm.
    """

    m: int
    primitive_poly: Poly2
    log: np.ndarray
    antilog: np.ndarray

    @property
    def order(self) -> int:
        return 1 << self.m

    @property
    def n_nonzero(self) -> int:
        return (1 << self.m) - 1

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self.antilog[(self.log[a] + self.log[b]) % self.n_nonzero])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no inverse in GF(2^m)")
        return int(self.antilog[(-self.log[a]) % self.n_nonzero])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            return 1 if e == 0 else 0
        return int(self.antilog[(self.log[a] * e) % self.n_nonzero])

    def alpha_pow(self, e: int) -> int:
        return int(self.antilog[e % self.n_nonzero])

    @cached_property
    def mul_table(self) -> np.ndarray:
        """Full ``q x q`` multiplication table (q = 2^m), read-only."""
        q = self.order
        la = self.log[1:]
        t = np.zeros((q, q), dtype=np.int64)
        t[1:, 1:] = self.antilog[(la[:, None] + la[None, :]) % self.n_nonzero]
        t.setflags(write=False)
        return t

    def element(self, value: int) -> FieldElement:
        return FieldElement(value, self)


@dataclass(frozen=True)
class FieldElement:
    """Element of GF(2^m) bound to its field table."""

    value: int
    field: FieldTable

    def __post_init__(self):
        if not 0 <= self.value < self.field.order:
            raise ValueError(f"value {self.value} outside GF(2^{self.field.m})")

    def _check(self, other: FieldElement) -> None:
        if other.field is not self.field:
            raise ValueError("elements belong to different fields")

    def __add__(self, other: FieldElement) -> FieldElement:
        self._check(other)
        return FieldElement(self.value ^ other.value, self.field)

    __sub__ = __add__

    def __mul__(self, other: FieldElement) -> FieldElement:
        self._check(other)
        return FieldElement(self.field.mul(self.value, other.value), self.field)

    def __truediv__(self, other: FieldElement) -> FieldElement:
        self._check(other)
        return FieldElement(self.field.div(self.value, other.value), self.field)

    def __pow__(self, e: int) -> FieldElement:
        return FieldElement(self.field.pow(self.value, e), self.field)


@lru_cache(maxsize=None)
def build_field(m: int) -> FieldTable:
    """Build (and memoise) the log/antilog tables of GF(2^m), 1 <= m <= 16."""
    if not 1 <= m <= MAX_M:
        raise ValueError(f"m must be in [1, {MAX_M}], got {m}")
    p = PRIMITIVE_POLYNOMIALS[m]
    size = 1 << m
    n = size - 1
    log = np.full(size, -1, dtype=np.int64)
    antilog = np.zeros(size, dtype=np.int64)
    v = 1
    for i in range(n):
        antilog[i] = v
        log[v] = i
        v <<= 1
        if v & size:
            v ^= p
    if v != 1:
        raise RuntimeError(f"polynomial {p:#b} is not primitive")
    antilog[n] = 1
    log.setflags(write=False)
    antilog.setflags(write=False)
    return FieldTable(m, Poly2(p), log, antilog)


def cyclotomic_coset(s: int, m: int) -> list[int]:
    """Exponents {s * 2^i mod (2^m - 1)} in order of generation."""
    n = (1 << m) - 1
    coset = []
    e = s % n
    while e not in coset:
        coset.append(e)
        e = (e * 2) % n
    return coset


def _gf_poly_mul(a: Sequence[int], b: Sequence[int], field: FieldTable) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            out[i + j] ^= field.mul(ai, bj)
    return out


def minimal_polynomial(alpha_power: int, field: FieldTable) -> Poly2:
    """Minimal polynomial over GF(2) of alpha^alpha_power.

    Expands the product of (x - alpha^e) over the conjugacy class of the
    exponent; the coefficients land in the prime subfield.
    """
    if not 0 <= alpha_power < field.n_nonzero:
        raise ValueError(f"alpha_power must be in [0, {field.n_nonzero})")
    poly = [1]
    for e in cyclotomic_coset(alpha_power, field.m):
        poly = _gf_poly_mul(poly, [field.alpha_pow(e), 1], field)
    if any(c > 1 for c in poly):
        raise RuntimeError("minimal polynomial has coefficients outside GF(2)")
    return Poly2.from_coefficients(poly)
