"""Finite fields GF(p^e) with table-driven arithmetic.

Elements are encoded as integers in ``[0, q)``: the base-p digits of the
integer are the coefficients of the representative modulo the field's
modulus, constant term least significant.  Every hot loop in the package
works on these integers and the lookup tables below; :class:`FieldElement`
is the user-facing wrapper.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property
from itertools import product
from math import gcd
from typing import Iterator

__all__ = [
    "GF",
    "FieldElement",
    "PowerClassifier",
    "make_field",
    "make_classifier",
    "is_prime",
    "prime_power",
]

# Arithmetic tables are q x q; beyond this they stop being "desk scale".
MAX_TABLE_ORDER = 4096


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, e)`` with ``q == p**e``, or raise ``ValueError``."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    p = next(k for k in range(2, q + 1) if q % k == 0)
    e, r = 0, q
    while r % p == 0:
        r //= p
        e += 1
    if r != 1:
        raise ValueError(f"{q} is not a prime power")
    return p, e


# --- arithmetic on coefficient lists over F_p (used only to build tables) ---

def _fp_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _fp_divmod(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    a = list(a)
    inv_lead = pow(b[-1], p - 2, p)
    quot = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        coef = a[-1] * inv_lead % p
        quot[shift] = coef
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - coef * bi) % p
        _fp_trim(a)
    return quot, a


def _fp_mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return out


def _fp_sub(a: list[int], b: list[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return _fp_trim(out)


def _fp_is_irreducible(f: list[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg(f)//2."""
    deg = len(f) - 1
    for k in range(1, deg // 2 + 1):
        for low in product(range(p), repeat=k):
            _, r = _fp_divmod(f, list(low) + [1], p)
            if not r:
                return False
    return True


def _smallest_irreducible(p: int, e: int) -> tuple[int, ...]:
    # Monic candidates compared from the constant term upward.
    for low in product(range(p), repeat=e):
        cand = list(low) + [1]
        if _fp_is_irreducible(cand, p):
            return tuple(cand)
    raise AssertionError("an irreducible polynomial of every degree exists")


def _fp_inverse_mod(a: list[int], modulus: list[int], p: int) -> list[int]:
    """Extended Euclid: return b with a*b == 1 mod modulus."""
    r0, r1 = list(modulus), list(a)
    s0, s1 = [], [1]
    while r1:
        quo, rem = _fp_divmod(r0, r1, p)
        r0, r1 = r1, rem
        s0, s1 = s1, _fp_sub(s0, _fp_mul(quo, s1, p), p)
    # r0 is a nonzero constant
    c = pow(r0[0], p - 2, p)
    return _fp_trim([x * c % p for x in s0])


@dataclass(frozen=True)
class GF:
    """The field F_q, q = p**e, built on a fixed monic irreducible modulus.

    ``modulus`` holds coefficients in ascending order and is empty for prime
    fields.  Use :func:`make_field` rather than calling this directly.
    """

    p: int
    e: int = 1
    modulus: tuple[int, ...] = ()
    q: int = dc_field(init=False)

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.e < 1:
            raise ValueError("exponent must be >= 1")
        if self.e == 1:
            object.__setattr__(self, "modulus", ())
        elif len(self.modulus) != self.e + 1 or self.modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree e")
        object.__setattr__(self, "q", self.p**self.e)
        if self.q > MAX_TABLE_ORDER:
            raise ValueError(f"q = {self.q} exceeds table limit {MAX_TABLE_ORDER}")

    def __repr__(self):
        if self.e == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.e}, modulus={list(self.modulus)})"

    # -- encoding ---------------------------------------------------------

    def digits(self, v: int) -> list[int]:
        """Residue vector of the element encoded by ``v``."""
        out = []
        for _ in range(self.e):
            v, r = divmod(v, self.p)
            out.append(r)
        return out

    def from_digits(self, rep) -> int:
        v = 0
        for r in reversed(list(rep)):
            v = v * self.p + r % self.p
        return v

    # -- tables -----------------------------------------------------------

    @cached_property
    def add(self) -> tuple[tuple[int, ...], ...]:
        p, q = self.p, self.q
        if self.e == 1:
            return tuple(tuple((a + b) % p for b in range(q)) for a in range(q))
        digs = [self.digits(v) for v in range(q)]
        return tuple(
            tuple(self.from_digits([x + y for x, y in zip(digs[a], digs[b])]) for b in range(q))
            for a in range(q)
        )

    @cached_property
    def mul(self) -> tuple[tuple[int, ...], ...]:
        p, q = self.p, self.q
        if self.e == 1:
            return tuple(tuple(a * b % p for b in range(q)) for a in range(q))
        mod = list(self.modulus)
        digs = [_fp_trim(self.digits(v)) for v in range(q)]
        rows = []
        for a in range(q):
            row = []
            for b in range(q):
                _, r = _fp_divmod(_fp_mul(digs[a], digs[b], p), mod, p)
                row.append(self.from_digits(r))
            rows.append(tuple(row))
        return tuple(rows)

    @cached_property
    def neg(self) -> tuple[int, ...]:
        return tuple(self.add[a].index(0) for a in range(self.q))

    @cached_property
    def sub(self) -> tuple[tuple[int, ...], ...]:
        add, neg = self.add, self.neg
        return tuple(tuple(add[a][neg[b]] for b in range(self.q)) for a in range(self.q))

    @cached_property
    def inv(self) -> tuple[int | None, ...]:
        """Multiplicative inverses (``None`` at 0), via extended Euclid."""
        p = self.p
        out: list[int | None] = [None]
        for a in range(1, self.q):
            if self.e == 1:
                out.append(_int_inverse(a, p))
            else:
                b = _fp_inverse_mod(_fp_trim(self.digits(a)), list(self.modulus), p)
                out.append(self.from_digits(b))
        return tuple(out)

    @cached_property
    def frobenius_inverse(self) -> tuple[int, ...]:
        """a -> a^(1/p), i.e. a^(p^(e-1)); the identity on prime fields."""
        k = self.p ** (self.e - 1)
        return tuple(self.power(a, k) for a in range(self.q))

    def power(self, a: int, k: int) -> int:
        mul = self.mul
        result, base = 1, a
        if k < 0:
            if a == 0:
                raise ZeroDivisionError("0 has no inverse")
            base, k = self.inv[a], -k
        while k:
            if k & 1:
                result = mul[result][base]
            base = mul[base][base]
            k >>= 1
        return result

    # -- convenience ------------------------------------------------------

    def element(self, v: int) -> FieldElement:
        return FieldElement(self, v)

    def elements(self) -> Iterator[FieldElement]:
        return (FieldElement(self, v) for v in range(self.q))

    def units(self) -> range:
        return range(1, self.q)

    def primitive_element(self) -> FieldElement:
        """Smallest code whose powers exhaust the unit group."""
        n = self.q - 1
        primes = [r for r in range(2, n + 1) if n % r == 0 and is_prime(r)]
        for g in range(1, self.q):
            if all(self.power(g, n // r) != 1 for r in primes):
                return FieldElement(self, g)
        raise AssertionError("unit group has no generator")

    def to_json(self) -> dict:
        return {"p": self.p, "e": self.e, "modulus": list(self.modulus)}

    @classmethod
    def from_json(cls, obj: dict) -> GF:
        fld = cls(int(obj["p"]), int(obj.get("e", 1)), tuple(obj.get("modulus") or ()))
        if fld.e > 1 and not _fp_is_irreducible(list(fld.modulus), fld.p):
            raise ValueError("modulus is reducible")
        return fld


def _int_inverse(a: int, p: int) -> int:
    r0, r1, s0, s1 = p, a, 0, 1
    while r1:
        k = r0 // r1
        r0, r1 = r1, r0 - k * r1
        s0, s1 = s1, s0 - k * s1
    return s0 % p


def make_field(p: int, e: int = 1) -> GF:
    """Construct GF(p^e) using the smallest monic irreducible modulus.

    Candidates are ordered lexicographically by coefficient vector with the
    constant term compared first, so the choice is reproducible.

    >>> make_field(2, 2).modulus
    (1, 1, 1)
    """
    if not isinstance(p, int) or not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if e < 1:
        raise ValueError("exponent must be >= 1")
    if e == 1:
        return GF(p)
    return GF(p, e, _smallest_irreducible(p, e))


@dataclass(frozen=True)
class FieldElement:
    field: GF
    value: int

    def __post_init__(self):
        if not 0 <= self.value < self.field.q:
            raise ValueError(f"{self.value} is not an element of {self.field}")

    @property
    def rep(self) -> list[int]:
        return self.field.digits(self.value)

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError("field mismatch")
            return other.value
        if isinstance(other, int):
            # integers embed through the prime subfield
            return self.field.from_digits([other])
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.add[self.value][b])

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.sub[self.value][b])

    def __rsub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.sub[b][self.value])

    def __neg__(self):
        return FieldElement(self.field, self.field.neg[self.value])

    def __mul__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.mul[self.value][b])

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        if b == 0:
            raise ZeroDivisionError("division by zero in finite field")
        return FieldElement(self.field, self.field.mul[self.value][self.field.inv[b]])

    def __pow__(self, k: int):
        return FieldElement(self.field, self.field.power(self.value, k))

    def inverse(self) -> FieldElement:
        if self.value == 0:
            raise ZeroDivisionError("0 has no inverse")
        return FieldElement(self.field, self.field.inv[self.value])

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value}@{self.field!r}"


@dataclass(frozen=True)
class PowerClassifier:
    """Membership table for the m-th powers in the unit group of a field."""

    field: GF
    m: int
    sigma: int
    mth_powers: frozenset[int]
    table: tuple[bool, ...] = dc_field(repr=False, compare=False)

    def is_mth_power(self, a) -> bool:
        return self.table[int(a)]


def make_classifier(field: GF, m: int) -> PowerClassifier:
    """m-th powers of F_q^x by exponentiating every unit.

    >>> sorted(make_classifier(make_field(7), 3).mth_powers)
    [1, 6]
    """
    if m < 2:
        raise ValueError("cover exponent m must be >= 2")
    powers = frozenset(field.power(a, m) for a in field.units())
    table = tuple(a in powers for a in range(field.q))
    return PowerClassifier(field, m, gcd(m, field.q - 1), powers, table)
