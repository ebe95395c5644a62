"""Small finite fields: GF(p) for p prime and GF(2^m) in a polynomial basis.

GF(2^m) elements are integers whose bits are polynomial coefficients over
GF(2), reduced modulo a fixed irreducible polynomial (see ``GF2_MODULI``), so
every computation is bit-for-bit reproducible.
"""

from __future__ import annotations

from functools import cached_property
from math import gcd

# Primitive trinomials/pentanomials, bit i = coefficient of x^i.
GF2_MODULI = {
    1: 0b11,              # x + 1
    2: 0b111,             # x^2 + x + 1
    3: 0b1011,            # x^3 + x + 1
    4: 0b10011,           # x^4 + x + 1
    5: 0b100101,          # x^5 + x^2 + 1
    6: 0b1000011,         # x^6 + x + 1
    7: 0b10000011,        # x^7 + x + 1
    8: 0b100011101,       # x^8 + x^4 + x^3 + x^2 + 1
    9: 0b1000010001,      # x^9 + x^4 + 1
    10: 0b10000001001,    # x^10 + x^3 + 1
}


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def prime_power(q: int) -> tuple[int, int]:
    """``(p, m)`` with ``q == p**m`` for a supported field size, else ValueError."""
    if _is_prime(q):
        return q, 1
    if q > 2 and q & (q - 1) == 0:
        m = q.bit_length() - 1
        if m in GF2_MODULI:
            return 2, m
    raise ValueError(f"unsupported field size {q}: need a prime or 2^m with m <= 10")


class GF:
    """The field with ``q`` elements; elements are the integers ``0..q-1``."""

    def __init__(self, q: int):
        self.q = q
        self.p, self.m = prime_power(q)
        self.modulus = GF2_MODULI[self.m] if self.p == 2 and self.m > 1 else None

    def __repr__(self) -> str:
        return f"GF({self.q})"

    def __eq__(self, other) -> bool:
        return isinstance(other, GF) and other.q == self.q

    def __hash__(self) -> int:
        return hash(("GF", self.q))

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def one(self) -> int:
        return 1

    def elements(self) -> range:
        return range(self.q)

    def add(self, a: int, b: int) -> int:
        if self.modulus is not None:
            return a ^ b
        return (a + b) % self.q

    def neg(self, a: int) -> int:
        if self.modulus is not None:
            return a
        return (-a) % self.q

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def _polymul(self, a: int, b: int) -> int:
        r = 0
        mod = self.modulus
        top = 1 << self.m
        while b:
            if b & 1:
                r ^= a
            b >>= 1
            a <<= 1
            if a & top:
                a ^= mod
        return r

    def mul(self, a: int, b: int) -> int:
        if self.modulus is not None:
            return self._polymul(a, b)
        return (a * b) % self.q

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self.pow(a, self.q - 2)

    def frobenius(self, a: int) -> int:
        return self.pow(a, self.p)

    def mult_order(self, a: int) -> int:
        if a == 0:
            raise ValueError("0 is not a unit")
        x, k = a, 1
        while x != 1:
            x = self.mul(x, a)
            k += 1
        return k

    @cached_property
    def primitive_element(self) -> int:
        for a in range(2, self.q) if self.q > 2 else [1]:
            if self.mult_order(a) == self.q - 1:
                return a
        return 1

    @cached_property
    def log_table(self) -> dict[int, int]:
        w = self.primitive_element
        table, x = {}, 1
        for e in range(self.q - 1):
            table[x] = e
            x = self.mul(x, w)
        return table

    def __call__(self, value: int) -> "FieldElement":
        return FieldElement(self, value)


class FieldElement:
    """Operator wrapper around an element of a :class:`GF`."""

    __slots__ = ("field", "value")

    def __init__(self, field: GF, value: int):
        if field.modulus is None:
            value %= field.q
        elif not 0 <= value < field.q:
            raise ValueError(f"{value} is not an element of {field}")
        self.field = field
        self.value = value

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError("elements of different fields")
            return other.value
        if isinstance(other, int):
            return FieldElement(self.field, other).value
        return NotImplemented

    def __add__(self, other):
        return FieldElement(self.field, self.field.add(self.value, self._coerce(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub(self.value, self._coerce(other)))

    def __rsub__(self, other):
        return FieldElement(self.field, self.field.sub(self._coerce(other), self.value))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul(self.value, self._coerce(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * FieldElement(self.field, self.field.inv(self._coerce(other)))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.value, e))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.value))

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == FieldElement(self.field, other).value
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field.q, self.value))

    def __repr__(self) -> str:
        return f"{self.field}({self.value})"


def generated_subgroup_order(F: GF, elements) -> int:
    """Order of the subgroup of GF(q)* generated by the given nonzero elements."""
    logs = F.log_table
    g = F.q - 1
    for a in elements:
        g = gcd(g, logs[a])
    return (F.q - 1) // g


def field_condition(q: int) -> tuple[bool, list[int]]:
    """Check that -1, c and c-1 generate GF(q)* for every c not in {0, 1}.

    Returns ``(holds, failing)`` where ``failing`` lists the offending ``c``.
    """
    F = GF(q)
    minus_one = F.neg(1)
    failing = []
    for c in range(2, q):
        if generated_subgroup_order(F, (minus_one, c, F.sub(c, 1))) != q - 1:
            failing.append(c)
    return not failing, failing
