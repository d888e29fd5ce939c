"""Limit distributions of affine point counts and their empirical counterparts.

Every theoretical mass is a :class:`fractions.Fraction`.  A point count over
F_q is modelled as a sum of q i.i.d. fiber variables X taking the values 0, 1
and sigma = gcd(m, q - 1), with

    P(X = 0) = (1 - 1/sigma) (q - 1)/psi
    P(X = 1) = 1 - (q - 1)/psi
    P(X = sigma) = (1/sigma) (q - 1)/psi

for a family-dependent normalizer psi.  When sigma = 1 the values 1 and
sigma coincide and their masses are added.
"""
from __future__ import annotations

import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterable, Sequence

from .curves import points_from_coeffs
from .families import (
    FamilySampler,
    FamilySpec,
    UnsupportedSpec,
    ValueConstraint,
    count_constrained,
    count_family,
    enumerate_stratum,
    predicted_constrained_count,
    sample_family,
    _check_spec,
)
from .field import make_classifier
from .poly import pscale

__all__ = [
    "RVModel",
    "DistributionTable",
    "ErrorRow",
    "ErrorReport",
    "psi_for",
    "limit_rv",
    "limit_rv_for_family",
    "convolve",
    "empirical_distribution",
    "total_variation",
    "error_sweep",
]

SOURCES = ("lemma-reg", "theoremC2", "conjecture", "example-KR", "example-BDFL", "example-CWZ")


@dataclass(frozen=True)
class RVModel:
    q: int
    sigma: int
    p0: Fraction
    p1: Fraction
    psigma: Fraction
    psi: Fraction
    source: str

    def masses(self) -> dict[int, Fraction]:
        """Value -> probability, with the sigma = 1 classes merged."""
        out: dict[int, Fraction] = {}
        for v, pr in ((0, self.p0), (1, self.p1), (self.sigma, self.psigma)):
            if pr:
                out[v] = out.get(v, Fraction(0)) + pr
        return out

    def mean(self) -> Fraction:
        return sum((v * pr for v, pr in self.masses().items()), Fraction(0))


def psi_for(source: str, q: int, **params) -> Fraction:
    """Normalizer psi(q, d) for each of the known families."""
    qf = Fraction(q)
    if source == "lemma-reg":
        return Fraction(params["psi"])
    if source == "theoremC2":
        N = int(params["N"])
        if N < 2:
            raise ValueError("theoremC2 needs N >= 2")
        return (qf - 1) * (1 + 1 / qf + qf**-N + qf ** -(N + 1))
    if source == "conjecture":
        c = tuple(params["c"])
        if not c or any(ci < 1 for ci in c):
            raise ValueError("conjecture needs a weight of positive integers")
        return (qf - 1) * (1 + sum(qf**-ci for ci in c))
    if source == "example-KR":
        return (qf - 1) * (1 + 1 / qf)
    if source == "example-BDFL":
        ell = int(params["l"])
        if ell < 2:
            raise ValueError("example-BDFL needs l >= 2")
        return (qf - 1) * (1 + (ell - 1) / qf)
    if source == "example-CWZ":
        n = int(params["n"])
        if n < 2:
            raise ValueError("example-CWZ needs n >= 2")
        return (qf - 1) * sum(qf**-i for i in range(n))
    raise ValueError(f"unknown source {source!r}; expected one of {SOURCES}")


def limit_rv(source: str, q: int, m: int, **params) -> RVModel:
    """Fiber variable for ``source`` over F_q and cover exponent m."""
    if m < 2:
        raise ValueError("m must be >= 2")
    if q < 2:
        raise ValueError("q must be >= 2")
    psi = psi_for(source, q, **params)
    sigma = math.gcd(m, q - 1)
    hit = Fraction(q - 1) / psi
    if sigma != 1 and psi < q - 1:
        raise ValueError(f"psi = {psi} < q - 1 gives negative mass")
    p1 = 1 - hit
    if sigma == 1:
        return RVModel(q, 1, Fraction(0), Fraction(1), Fraction(0), psi, source)
    return RVModel(q, sigma, (1 - Fraction(1, sigma)) * hit, p1, hit / sigma, psi, source)


def limit_rv_for_family(spec: FamilySpec, m: int) -> RVModel:
    """The conjectured (proved for (1, N, N+1)) fiber variable of a family."""
    N = spec.key_weight()
    if N is not None and N >= 2:
        return limit_rv("theoremC2", spec.q, m, N=N)
    return limit_rv("conjecture", spec.q, m, c=spec.c)


@dataclass
class DistributionTable:
    """k -> exact mass (kind "exact") or integer count (kind "empirical")."""

    kind: str
    entries: dict[int, Fraction | int] = dc_field(default_factory=dict)
    total: int | None = None

    def probabilities(self) -> dict[int, Fraction]:
        if self.kind == "exact":
            return {k: Fraction(v) for k, v in self.entries.items()}
        if not self.total:
            raise ValueError("empty empirical table cannot be normalized")
        return {k: Fraction(v, self.total) for k, v in self.entries.items()}

    def mass(self) -> Fraction | int:
        return sum(self.entries.values())

    def mean(self) -> Fraction:
        return sum((k * pr for k, pr in self.probabilities().items()), Fraction(0))

    def support(self) -> list[int]:
        return sorted(k for k, v in self.entries.items() if v)

    def to_json(self) -> dict:
        rows = []
        for k in sorted(self.entries):
            v = Fraction(self.entries[k])
            rows.append({"k": k, "num": str(v.numerator), "den": str(v.denominator)})
        return {"kind": self.kind, "entries": rows, "total": self.total}

    @classmethod
    def from_json(cls, obj: dict) -> DistributionTable:
        entries: dict[int, Fraction | int] = {}
        for row in obj["entries"]:
            v = Fraction(int(row["num"]), int(row["den"]))
            entries[int(row["k"])] = v if obj["kind"] == "exact" else int(v)
        return cls(obj["kind"], entries, obj.get("total"))


def convolve(rv: RVModel, copies: int) -> DistributionTable:
    """Exact law of X_1 + ... + X_copies."""
    if copies < 0:
        raise ValueError("copies must be >= 0")
    law = {0: Fraction(1)}
    step = rv.masses()
    for _ in range(copies):
        nxt: dict[int, Fraction] = {}
        for k, a in law.items():
            for v, b in step.items():
                nxt[k + v] = nxt.get(k + v, Fraction(0)) + a * b
        law = nxt
    return DistributionTable("exact", dict(sorted(law.items())))


def _stratum_histogram(args) -> Counter:
    spec, m, profile, unsafe = args
    cls = make_classifier(spec.field, m)
    F = spec.field
    hist: Counter = Counter()
    for f in enumerate_stratum(spec, profile, unsafe):
        if spec.monic:
            hist[points_from_coeffs(cls, f)] += 1
        else:
            for u in F.units():
                hist[points_from_coeffs(cls, pscale(F, f, u))] += 1
    return hist


def empirical_distribution(spec: FamilySpec, m: int, mode: str = "exhaustive",
                           samples: int | None = None, seed: int = 0, jobs: int = 1,
                           unsafe: bool = False) -> DistributionTable:
    """Histogram of #C_f(F_q) over the family (exhaustive) or a uniform sample (mc)."""
    if mode == "exhaustive":
        _check_spec(spec, unsafe)
        tasks = [(spec, m, pr, unsafe) for pr in spec.profiles()]
        if jobs > 1 and len(tasks) > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                parts = list(pool.map(_stratum_histogram, tasks))
        else:
            parts = [_stratum_histogram(t) for t in tasks]
        hist: Counter = sum(parts, Counter())
    elif mode == "mc":
        if not samples or samples <= 0:
            raise ValueError("sample count must be positive")
        FamilySampler(spec, seed)
        cls = make_classifier(spec.field, m)
        hist = Counter(points_from_coeffs(cls, f.coeffs)
                       for f in sample_family(spec, samples, seed, jobs, unsafe))
    else:
        raise ValueError(f"unknown mode {mode!r}")
    total = sum(hist.values())
    return DistributionTable("empirical", dict(sorted(hist.items())), total)


def total_variation(a: DistributionTable, b: DistributionTable) -> Fraction:
    pa, pb = a.probabilities(), b.probabilities()
    keys = set(pa) | set(pb)
    return sum((abs(pa.get(k, Fraction(0)) - pb.get(k, Fraction(0))) for k in keys),
               Fraction(0)) / 2


@dataclass(frozen=True)
class ErrorRow:
    d: int
    count: int
    main: Fraction
    family_size: int
    scale: float  # q^(d/2) for theoremC, q^(d/n) for nfree

    @property
    def residual(self) -> Fraction:
        return self.count - self.main

    @property
    def normalized(self) -> float:
        """residual / scale (approximate)."""
        return float(self.residual) / self.scale

    @property
    def relative(self) -> Fraction:
        return self.residual / self.family_size if self.family_size else Fraction(0)

    def to_json(self) -> dict:
        res = self.residual
        return {
            "d": self.d,
            "count": self.count,
            "main": f"{self.main.numerator}/{self.main.denominator}",
            "residual": f"{res.numerator}/{res.denominator}",
            "residual_over_scale_approx": self.normalized,
            "residual_over_family": f"{self.relative.numerator}/{self.relative.denominator}",
            "family_size": self.family_size,
        }


@dataclass
class ErrorReport:
    theorem: str
    q: int
    rows: list[ErrorRow]
    skipped: list[int] = dc_field(default_factory=list)

    @property
    def max_normalized(self) -> float:
        return max((abs(r.normalized) for r in self.rows), default=0.0)

    @property
    def median_normalized(self) -> float:
        vals = sorted(abs(r.normalized) for r in self.rows)
        if not vals:
            return 0.0
        mid = len(vals) // 2
        return vals[mid] if len(vals) % 2 else (vals[mid - 1] + vals[mid]) / 2

    @property
    def trend_slope(self) -> float:
        """Least-squares slope of log_q |residual| against d (nan if unfittable)."""
        pts = [(r.d, math.log(abs(float(r.residual)))) for r in self.rows if r.residual]
        if len(pts) < 2:
            return math.nan
        xs = [x for x, _ in pts]
        ys = [y for _, y in pts]
        mx, my = sum(xs) / len(xs), sum(ys) / len(ys)
        den = sum((x - mx) ** 2 for x in xs)
        slope = sum((x - mx) * (y - my) for x, y in pts) / den
        return slope / math.log(self.q)

    def to_json(self) -> dict:
        return {
            "theorem": self.theorem,
            "rows": [r.to_json() for r in self.rows],
            "skipped": self.skipped,
            "max_abs_normalized": self.max_normalized,
            "median_abs_normalized": self.median_normalized,
            "trend_exponent": None if math.isnan(self.trend_slope) else self.trend_slope,
        }


def error_sweep(theorem: str, template: FamilySpec, vc: ValueConstraint,
                d_range: Iterable[int], jobs: int = 1, unsafe: bool = False) -> ErrorReport:
    """Exact constrained counts against the main term for each d.

    Values of d for which the family is empty or the main term is undefined
    (d < N) are listed in ``skipped``.
    """
    rows, skipped = [], []
    q = template.q
    for d in d_range:
        spec = template.with_d(d)
        if theorem == "theoremC" and spec.key_weight() is not None and d < spec.key_weight():
            skipped.append(d)
            continue
        main = predicted_constrained_count(spec, vc, theorem)
        size = count_family(spec, unsafe)
        if size == 0:
            skipped.append(d)
            continue
        count = count_constrained(spec, vc, jobs, unsafe)
        scale = q ** (d / 2) if theorem == "theoremC" else q ** (d / spec.n)
        rows.append(ErrorRow(d, count, main, size, scale))
    return ErrorReport(theorem, q, rows, skipped)
