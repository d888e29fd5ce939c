"""Zeta function of the affine line and restricted square-free sums.

The restricted sum over monic square-free g with g(x_i) != 0 for r given
points is, in closed form,

    (1/(1 + q^-t))^r * (q^-1 + q^-t + (1 - q^-1)/(1 - q^(1-t))).

Partial sums truncated at degree D are computed either by enumerating the
square-free monics (small D) or from exact per-degree counts obtained by
inclusion-exclusion and the unique splitting g = s * b^2 with s square-free.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

from .families import squarefree_monics
from .field import GF, FieldElement
from .poly import peval

__all__ = [
    "ZetaQuery",
    "zeta_closed",
    "restricted_sqfree_closed",
    "restricted_sqfree_partial",
    "restricted_sqfree_counts",
    "tail_bound",
]

# Largest q^D for which the partial sum is enumerated rather than counted.
ENUMERATION_LIMIT = 10**5


@dataclass(frozen=True)
class ZetaQuery:
    t: int
    excluded: tuple[int, ...] = ()
    truncation: int = 0

    def __post_init__(self):
        if self.t < 2:
            raise ValueError("t must be >= 2; the series diverges at t = 1")
        pts = tuple(x.value if isinstance(x, FieldElement) else int(x) for x in self.excluded)
        if len(set(pts)) != len(pts):
            raise ValueError("excluded points must be distinct")
        if self.truncation < 0:
            raise ValueError("truncation degree must be >= 0")
        object.__setattr__(self, "excluded", pts)

    @property
    def r(self) -> int:
        return len(self.excluded)

    def check_field(self, field: GF) -> None:
        if self.r > field.q:
            raise ValueError("more excluded points than field elements")
        if any(not 0 <= x < field.q for x in self.excluded):
            raise ValueError("excluded point outside the field")


def zeta_closed(field: GF, s: int) -> Fraction:
    """sum over monic F of q^(-s deg F) = 1/(1 - q^(1-s))."""
    if s <= 1:
        raise ValueError("zeta of the affine line needs s >= 2")
    return 1 / (1 - Fraction(field.q) ** (1 - s))


def restricted_sqfree_closed(field: GF, query: ZetaQuery) -> Fraction:
    query.check_field(field)
    q, t = Fraction(field.q), query.t
    base = 1 / q + q**-t + (1 - 1 / q) / (1 - q ** (1 - t))
    return base / (1 + q**-t) ** query.r


def _monic_avoiding(q: int, r: int, k: int) -> int:
    """Monic degree-k polynomials vanishing at none of r fixed points."""
    return sum((-1) ** j * comb(r, j) * q ** (k - j) for j in range(min(k, r) + 1))


def restricted_sqfree_counts(field: GF, r: int, D: int) -> list[int]:
    """Square-free monic counts per degree 0..D avoiding r fixed points.

    Solves M(d) = sum_k SF(d - 2k) M(k), where M counts all avoiding monics.
    """
    q = field.q
    M = [_monic_avoiding(q, r, k) for k in range(D + 1)]
    sf: list[int] = []
    for d in range(D + 1):
        sf.append(M[d] - sum(sf[d - 2 * k] * M[k] for k in range(1, d // 2 + 1)))
    return sf


def _enumerated_counts(field: GF, excluded: Sequence[int], D: int) -> list[int]:
    out = []
    for k in range(D + 1):
        out.append(sum(1 for g in squarefree_monics(field, k)
                       if all(peval(field, g, x) for x in excluded)))
    return out


def restricted_sqfree_partial(field: GF, query: ZetaQuery, method: str = "auto") -> Fraction:
    """sum over square-free monic g, deg g <= D, g(x_i) != 0, of q^(-t deg g).

    ``method`` is "enumerate", "count" or "auto" (enumerate while q^D is small).
    """
    query.check_field(field)
    q, D = field.q, query.truncation
    if method == "auto":
        method = "enumerate" if q**D <= ENUMERATION_LIMIT else "count"
    if method == "enumerate":
        counts = _enumerated_counts(field, query.excluded, D)
    elif method == "count":
        counts = restricted_sqfree_counts(field, query.r, D)
    else:
        raise ValueError(f"unknown method {method!r}")
    qf = Fraction(q)
    return sum((c * qf ** (-query.t * k) for k, c in enumerate(counts)), Fraction(0))


def tail_bound(field: GF, t: int, D: int) -> Fraction:
    """Exact tail of the unrestricted series beyond degree D.

    Restricted counts never exceed unrestricted ones, so this bounds the
    truncation error for every set of excluded points.  Uses the square-free
    counts q (degree 1) and q^d (1 - 1/q) (degree d >= 2).
    """
    if t <= 1:
        raise ValueError("t must be >= 2")
    if D < 0:
        raise ValueError("D must be >= 0")
    q = Fraction(field.q)
    ratio = q ** (1 - t)
    tail = (1 - 1 / q) * ratio ** (max(D, 1) + 1) / (1 - ratio)
    if D == 0:
        tail += ratio
    return tail
