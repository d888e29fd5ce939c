"""Dense univariate polynomials over a :class:`~cyclic_covers.field.GF`.

Coefficients are stored ascending as tuples of encoded field elements, with
no trailing zeros; the zero polynomial is the empty tuple.  The module-level
``p*`` helpers work on raw tuples and are what the enumeration kernels call;
:class:`Polynomial` wraps them with operators and validation.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .field import GF, FieldElement

__all__ = [
    "Polynomial",
    "PowerFreeDecomposition",
    "NotPowerFree",
    "squarefree_decompose",
    "powerfree_decompose",
    "weighted_degree",
    "is_squarefree",
    "poly_gcd",
    "poly_eval",
]

Coeffs = tuple[int, ...]
ONE: Coeffs = (1,)


def trim(c: Sequence[int]) -> Coeffs:
    n = len(c)
    while n and c[n - 1] == 0:
        n -= 1
    return tuple(c[:n])


def padd(F: GF, a: Coeffs, b: Coeffs) -> Coeffs:
    if len(a) < len(b):
        a, b = b, a
    add = F.add
    out = list(a)
    for i, bi in enumerate(b):
        out[i] = add[out[i]][bi]
    return trim(out)


def psub(F: GF, a: Coeffs, b: Coeffs) -> Coeffs:
    sub = F.sub
    n = max(len(a), len(b))
    out = [sub[a[i] if i < len(a) else 0][b[i] if i < len(b) else 0] for i in range(n)]
    return trim(out)


def pscale(F: GF, a: Coeffs, s: int) -> Coeffs:
    if s == 0:
        return ()
    row = F.mul[s]
    return tuple(row[x] for x in a)


def pmul(F: GF, a: Coeffs, b: Coeffs) -> Coeffs:
    if not a or not b:
        return ()
    if len(a) == 1:
        return pscale(F, b, a[0])
    if len(b) == 1:
        return pscale(F, a, b[0])
    add, mul = F.add, F.mul
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            row = mul[ai]
            for j, bj in enumerate(b):
                out[i + j] = add[out[i + j]][row[bj]]
    return tuple(out)


def ppow(F: GF, a: Coeffs, k: int) -> Coeffs:
    out, base = ONE, a
    while k:
        if k & 1:
            out = pmul(F, out, base)
        k >>= 1
        if k:
            base = pmul(F, base, base)
    return out


def pdivmod(F: GF, a: Coeffs, b: Coeffs) -> tuple[Coeffs, Coeffs]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return (), a
    r = list(a)
    db = len(b) - 1
    quot = [0] * (len(a) - db)
    if F.e == 1:
        p = F.p
        inv_lead = F.inv[b[-1]]
        for shift in range(len(a) - len(b), -1, -1):
            top = r[shift + db]
            if top:
                coef = top * inv_lead % p
                quot[shift] = coef
                for i in range(db):
                    r[shift + i] = (r[shift + i] - coef * b[i]) % p
    else:
        sub, mul = F.sub, F.mul
        inv_lead = F.inv[b[-1]]
        for shift in range(len(a) - len(b), -1, -1):
            top = r[shift + db]
            if top:
                coef = mul[top][inv_lead]
                quot[shift] = coef
                row = mul[coef]
                for i in range(db):
                    r[shift + i] = sub[r[shift + i]][row[b[i]]]
    return tuple(quot), trim(r[:db])


def _premainder(F: GF, r: list[int], b: Sequence[int]) -> list[int]:
    """In-place remainder of r by b (both lists), trimmed."""
    db = len(b) - 1
    if F.e == 1:
        p = F.p
        inv_lead = F.inv[b[-1]]
        for shift in range(len(r) - 1 - db, -1, -1):
            top = r[shift + db]
            if top:
                coef = top * inv_lead % p
                for i in range(db):
                    r[shift + i] = (r[shift + i] - coef * b[i]) % p
    else:
        sub, mul = F.sub, F.mul
        inv_lead = F.inv[b[-1]]
        for shift in range(len(r) - 1 - db, -1, -1):
            top = r[shift + db]
            if top:
                row = mul[mul[top][inv_lead]]
                for i in range(db):
                    r[shift + i] = sub[r[shift + i]][row[b[i]]]
    del r[db:]
    while r and r[-1] == 0:
        r.pop()
    return r


def pmonic(F: GF, a: Coeffs) -> Coeffs:
    if not a or a[-1] == 1:
        return a
    return pscale(F, a, F.inv[a[-1]])


def pgcd(F: GF, a: Coeffs, b: Coeffs) -> Coeffs:
    """Monic gcd by Euclid; gcd(0, 0) is 0."""
    a, b = list(a), list(b)
    while b:
        if len(a) < len(b):
            a, b = b, a
            continue
        a, b = b, _premainder(F, a, b)
    return pmonic(F, tuple(a))


def pcoprime(F: GF, a: Coeffs, b: Coeffs) -> bool:
    if len(a) == 1 or len(b) == 1:
        return True
    return len(pgcd(F, a, b)) == 1


def pderiv(F: GF, a: Coeffs) -> Coeffs:
    mul, p = F.mul, F.p
    # i * a_i with i embedded in the prime subfield, whose codes are 0..p-1
    return trim([mul[i % p][a[i]] for i in range(1, len(a))])


def peval(F: GF, a: Coeffs, x: int) -> int:
    add, row = F.add, F.mul[x]
    acc = 0
    for c in reversed(a):
        acc = add[row[acc]][c]
    return acc


def ppth_root(F: GF, a: Coeffs) -> Coeffs:
    """h with a(x) = h(x)^p; requires a(x) = g(x^p)."""
    p, root = F.p, F.frobenius_inverse
    if any(a[i] for i in range(len(a)) if i % p):
        raise ValueError("polynomial is not a p-th power")
    return tuple(root[a[i]] for i in range(0, len(a), p))


def psqfree_parts(F: GF, a: Coeffs) -> list[tuple[Coeffs, int]]:
    """Yun's algorithm with p-th-root recursion; ``a`` monic, nonconstant ok."""
    out: list[tuple[Coeffs, int]] = []
    if len(a) <= 1:
        return out
    c = pgcd(F, a, pderiv(F, a))
    if c == ONE:
        return [(a, 1)]
    w = pdivmod(F, a, c)[0]
    i = 1
    while len(w) > 1:
        y = pgcd(F, w, c)
        z = pdivmod(F, w, y)[0]
        if len(z) > 1:
            out.append((z, i))
        w = y
        c = pdivmod(F, c, y)[0]
        i += 1
    if len(c) > 1:
        # what is left is a p-th power: every multiplicity is divisible by p
        for g, k in psqfree_parts(F, ppth_root(F, c)):
            out.append((g, k * F.p))
    return out


def pis_squarefree(F: GF, a: Coeffs) -> bool:
    if not a:
        return False
    if len(a) <= 2:
        return True
    return len(pgcd(F, a, pderiv(F, a))) == 1


def coeffs_key(a: Coeffs) -> tuple:
    """Canonical ordering key: by degree, then coefficient vector (constant first)."""
    return (len(a), a)


@dataclass(frozen=True)
class Polynomial:
    field: GF
    coeffs: Coeffs = ()

    def __post_init__(self):
        c = tuple(int(x) for x in self.coeffs)
        q = self.field.q
        if any(not 0 <= x < q for x in c):
            raise ValueError(f"coefficients must lie in [0, {q})")
        object.__setattr__(self, "coeffs", trim(c))

    @classmethod
    def x(cls, field: GF) -> Polynomial:
        return cls(field, (0, 1))

    @classmethod
    def constant(cls, field: GF, c: int) -> Polynomial:
        return cls(field, (int(c),))

    @property
    def degree(self) -> int | float:
        """Degree; ``-math.inf`` for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else -math.inf

    @property
    def leading(self) -> FieldElement:
        return FieldElement(self.field, self.coeffs[-1] if self.coeffs else 0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def monic(self) -> Polynomial:
        return Polynomial(self.field, pmonic(self.field, self.coeffs))

    def _check(self, other) -> Coeffs:
        if isinstance(other, Polynomial):
            if other.field != self.field:
                raise ValueError("field mismatch")
            return other.coeffs
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError("field mismatch")
            return trim((other.value,))
        if isinstance(other, int):
            return trim((self.field.from_digits([other]),))
        return NotImplemented

    def __add__(self, other):
        b = self._check(other)
        if b is NotImplemented:
            return b
        return Polynomial(self.field, padd(self.field, self.coeffs, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._check(other)
        if b is NotImplemented:
            return b
        return Polynomial(self.field, psub(self.field, self.coeffs, b))

    def __neg__(self):
        return Polynomial(self.field, psub(self.field, (), self.coeffs))

    def __mul__(self, other):
        b = self._check(other)
        if b is NotImplemented:
            return b
        return Polynomial(self.field, pmul(self.field, self.coeffs, b))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        return Polynomial(self.field, ppow(self.field, self.coeffs, k))

    def __divmod__(self, other):
        b = self._check(other)
        if b is NotImplemented:
            return b
        quo, rem = pdivmod(self.field, self.coeffs, b)
        return Polynomial(self.field, quo), Polynomial(self.field, rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, x) -> FieldElement:
        return poly_eval(self, x)

    def derivative(self) -> Polynomial:
        return Polynomial(self.field, pderiv(self.field, self.coeffs))

    def __lt__(self, other: Polynomial) -> bool:
        return coeffs_key(self.coeffs) < coeffs_key(other.coeffs)

    # -- text / JSON forms -------------------------------------------------

    def to_text(self) -> str:
        return ",".join(map(str, self.coeffs)) if self.coeffs else "0"

    @classmethod
    def from_text(cls, field: GF, text: str) -> Polynomial:
        text = text.strip()
        parts = [s for s in text.split(",") if s.strip()] if text else []
        return cls(field, tuple(int(s) for s in parts))

    def to_json(self) -> dict:
        return {"coeffs": list(self.coeffs)}

    @classmethod
    def from_json(cls, field: GF, obj: dict) -> Polynomial:
        return cls(field, tuple(obj["coeffs"]))

    def __repr__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if not mono:
                terms.append(str(c))
            else:
                terms.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(terms)


def poly_eval(f: Polynomial, x) -> FieldElement:
    """Horner evaluation of ``f`` at ``x``."""
    if isinstance(x, FieldElement):
        if x.field != f.field:
            raise ValueError("field mismatch")
        x = x.value
    return FieldElement(f.field, peval(f.field, f.coeffs, int(x)))


def poly_gcd(f: Polynomial, g: Polynomial) -> Polynomial:
    if f.field != g.field:
        raise ValueError("field mismatch")
    if f.is_zero() and g.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    return Polynomial(f.field, pgcd(f.field, f.coeffs, g.coeffs))


def is_squarefree(f: Polynomial) -> bool:
    """True iff gcd(f, f') = 1.  A nonconstant f with f' = 0 is never square-free."""
    return pis_squarefree(f.field, f.coeffs)


def squarefree_decompose(f: Polynomial) -> list[tuple[Polynomial, int]]:
    """Return ``[(g_i, i), ...]`` with f = lc(f) * prod g_i^i.

    The g_i are monic, square-free and pairwise coprime; only nontrivial
    layers are listed, sorted by multiplicity.
    """
    if f.is_zero():
        raise ValueError("square-free decomposition of the zero polynomial")
    F = f.field
    layers: dict[int, Coeffs] = {}
    for g, k in psqfree_parts(F, pmonic(F, f.coeffs)):
        layers[k] = pmul(F, layers.get(k, ONE), g)
    return [(Polynomial(F, layers[k]), k) for k in sorted(layers)]


@dataclass(frozen=True)
class NotPowerFree:
    """Returned (not raised) when some factor occurs with multiplicity >= n."""

    factor: Polynomial
    multiplicity: int

    def __bool__(self):
        return False


@dataclass(frozen=True)
class PowerFreeDecomposition:
    """f = a * f_1 * f_2^2 * ... * f_{n-1}^{n-1}; ``parts[j-1]`` is f_j."""

    a: FieldElement
    parts: tuple[Polynomial, ...]
    n: int

    @property
    def field(self) -> GF:
        return self.a.field

    def degrees(self) -> tuple[int, ...]:
        return tuple(len(g.coeffs) - 1 for g in self.parts)

    def reassemble(self) -> Polynomial:
        F = self.field
        acc = (self.a.value,)
        for j, g in enumerate(self.parts, start=1):
            acc = pmul(F, acc, ppow(F, g.coeffs, j))
        return Polynomial(F, acc)

    def total_degree(self) -> int:
        return sum(j * d for j, d in enumerate(self.degrees(), start=1))


def powerfree_decompose(f: Polynomial, n: int) -> PowerFreeDecomposition | NotPowerFree:
    if n < 2:
        raise ValueError("n must be >= 2")
    if f.is_zero():
        raise ValueError("the zero polynomial has no decomposition")
    F = f.field
    lead = f.coeffs[-1]
    parts = [ONE] * (n - 1)
    for g, k in psqfree_parts(F, pmonic(F, f.coeffs)):
        if k >= n:
            return NotPowerFree(Polynomial(F, g), k)
        parts[k - 1] = pmul(F, parts[k - 1], g)
    return PowerFreeDecomposition(
        FieldElement(F, lead), tuple(Polynomial(F, g) for g in parts), n
    )


def weighted_degree(decomp: PowerFreeDecomposition, c: Iterable[int]) -> int:
    """c_1 deg f_1 + ... + c_{n-1} deg f_{n-1}."""
    c = tuple(c)
    if len(c) != decomp.n - 1:
        raise ValueError(f"weight has length {len(c)}, expected {decomp.n - 1}")
    return sum(ci * di for ci, di in zip(c, decomp.degrees()))
