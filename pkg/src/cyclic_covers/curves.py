"""Affine cyclic covers y^m = f(x): fibers, point counts and genus."""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .field import FieldElement, PowerClassifier, make_classifier
from .poly import Coeffs, Polynomial, PowerFreeDecomposition, peval

__all__ = [
    "CurveSpec",
    "FiberProfile",
    "GenusReport",
    "InvalidCurveError",
    "make_curve",
    "fiber_size",
    "count_points",
    "fiber_profile",
    "points_from_coeffs",
    "riemann_hurwitz_rhs",
    "genus",
    "genus_weight",
]


@dataclass(frozen=True)
class CurveSpec:
    m: int
    f: Polynomial
    classifier: PowerClassifier

    def __post_init__(self):
        if self.classifier.field != self.f.field:
            raise ValueError("classifier and polynomial live over different fields")
        if self.classifier.m != self.m:
            raise ValueError("classifier built for a different exponent")


def make_curve(f: Polynomial, m: int) -> CurveSpec:
    return CurveSpec(m, f, make_classifier(f.field, m))


def _fiber_from_value(v: int, cls: PowerClassifier) -> int:
    if v == 0:
        return 1
    return cls.sigma if cls.table[v] else 0


def fiber_size(curve: CurveSpec, x) -> int:
    """#{y in F_q : y^m = f(x)}, which is 1, sigma or 0."""
    if isinstance(x, FieldElement):
        x = x.value
    return _fiber_from_value(peval(curve.f.field, curve.f.coeffs, x), curve.classifier)


def points_from_coeffs(cls: PowerClassifier, f: Coeffs) -> int:
    """Affine point count straight from a raw coefficient tuple (hot loops)."""
    F, table, sigma = cls.field, cls.table, cls.sigma
    total = 0
    for x in range(F.q):
        v = peval(F, f, x)
        if v == 0:
            total += 1
        elif table[v]:
            total += sigma
    return total


def count_points(curve: CurveSpec) -> int:
    return points_from_coeffs(curve.classifier, curve.f.coeffs)


@dataclass(frozen=True)
class FiberProfile:
    """Number of x in F_q with fiber size 0, 1 and sigma.

    When sigma = 1 the last two classes coincide; they are reported merged
    in ``k1`` with ``ksigma = 0`` (and ``k0`` is then always 0).
    """

    k0: int
    k1: int
    ksigma: int


def fiber_profile(curve: CurveSpec) -> FiberProfile:
    F, cls = curve.f.field, curve.classifier
    k = [0, 0, 0]
    for x in range(F.q):
        v = peval(F, curve.f.coeffs, x)
        if v == 0:
            k[1] += 1
        elif cls.table[v]:
            k[2 if cls.sigma > 1 else 1] += 1
        else:
            k[0] += 1
    return FiberProfile(*k)


class InvalidCurveError(ValueError):
    """The genus formula gave a negative or odd 2g: f is outside the smooth regime."""

    def __init__(self, message: str, twice_genus: int):
        super().__init__(message)
        self.twice_genus = twice_genus


@dataclass(frozen=True)
class GenusReport:
    genus: int
    valid_hypotheses: bool
    branch_data: tuple[tuple[int, int, int], ...]
    m: int
    degree: int

    def to_json(self) -> dict:
        return {
            "genus": self.genus,
            "m": self.m,
            "degree": self.degree,
            "valid_hypotheses": self.valid_hypotheses,
            "branch_data": [{"j": j, "deg": dg, "contribution": c} for j, dg, c in self.branch_data],
        }


def riemann_hurwitz_rhs(decomp: PowerFreeDecomposition, m: int) -> int:
    """-gcd(m, deg f) + sum_j deg(f_j) (m - gcd(j, m)), which equals 2g - 2 + m."""
    deg = decomp.total_degree()
    return -gcd(m, deg) + sum(dj * (m - gcd(j, m)) for j, dj in enumerate(decomp.degrees(), start=1))


def genus(decomp: PowerFreeDecomposition, m: int) -> GenusReport:
    """Genus of the smooth projective model of y^m = f(x) by Riemann-Hurwitz.

    Each root of f_j contributes m - gcd(j, m), the point at infinity
    m - gcd(m, deg f).  The formula is applied whether or not q = 1 mod m and
    gcd(m, q) = 1 hold; ``valid_hypotheses`` records whether they do.
    """
    if m < 2:
        raise ValueError("m must be >= 2")
    deg = decomp.total_degree()
    if deg == 0:
        raise ValueError("genus needs a nonconstant polynomial")
    q = decomp.field.q
    twice = riemann_hurwitz_rhs(decomp, m) + 2 - m
    if twice < 0 or twice % 2:
        raise InvalidCurveError(f"Riemann-Hurwitz gives 2g = {twice}", twice)
    rows = tuple((j, dj, dj * (m - gcd(j, m)))
                 for j, dj in enumerate(decomp.degrees(), start=1) if dj > 0)
    valid = gcd(m, q) == 1 and q % m == 1
    return GenusReport(twice // 2, valid, rows, m, deg)


def genus_weight(m: int, n: int) -> tuple[int, ...]:
    """(m - gcd(1, m), ..., m - gcd(n-1, m))."""
    if m < 2 or n < 2:
        raise ValueError("m and n must be >= 2")
    return tuple(m - gcd(j, m) for j in range(1, n))
