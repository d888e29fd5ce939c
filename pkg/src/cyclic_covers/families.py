"""Weighted-degree families of n-th-power-free polynomials.

A family is the set of monic n-th-power-free f = f_1 f_2^2 ... f_{n-1}^{n-1}
whose weighted degree c_1 deg f_1 + ... + c_{n-1} deg f_{n-1} equals d; the
"hat" variant also allows every nonzero leading coefficient.

Members are produced stratum by stratum: a stratum (a degree profile) fixes
deg f_j for every j, and its members are products of cached lists of monic
square-free polynomials with a pairwise-coprimality filter.  The lists come
from a numpy sieve that strikes out multiples of g^n for every monic g,
which shares no code with the Yun decomposition in :mod:`cyclic_covers.poly`.
"""
from __future__ import annotations

import bisect
import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

import numpy as np

from .field import GF, FieldElement, make_field
from .poly import (
    ONE,
    Coeffs,
    Polynomial,
    PowerFreeDecomposition,
    pcoprime,
    pdivmod,
    peval,
    pgcd,
    pis_squarefree,
    pmul,
    ppow,
    pscale,
    psqfree_parts,
    powerfree_decompose,
    weighted_degree,
)

__all__ = [
    "Guardrails",
    "GuardrailError",
    "UnsupportedSpec",
    "FamilySpec",
    "ValueConstraint",
    "count_squarefree",
    "count_powerfree",
    "degree_profiles",
    "powerfree_mask",
    "squarefree_monics",
    "enumerate_stratum",
    "enumerate_family",
    "count_family",
    "key_bijection",
    "key_bijection_inverse",
    "pair_construction",
    "count_constrained",
    "predicted_constrained_count",
    "FamilySampler",
    "sample_family",
    "tilde_expand",
]


class GuardrailError(ValueError):
    """Request exceeds the desk-scale limits (override with ``unsafe=True``)."""


class UnsupportedSpec(ValueError):
    """The requested operation has no supported method for this family."""


@dataclass(frozen=True)
class Guardrails:
    max_q: int = 16
    max_d: int = 30
    max_samples: int = 10**7
    # largest q**k for which a sieve over all monic degree-k polynomials is built
    max_sieve: int = 2 * 10**7


LIMITS = Guardrails()


# --------------------------------------------------------------------------
# family description
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class FamilySpec:
    field: GF
    n: int
    c: tuple[int, ...]
    d: int
    monic: bool = True

    def __post_init__(self):
        object.__setattr__(self, "c", tuple(int(x) for x in self.c))
        if self.n < 2:
            raise ValueError("n must be >= 2")
        if len(self.c) != self.n - 1:
            raise ValueError(f"weight must have n - 1 = {self.n - 1} entries")
        if any(x < 1 for x in self.c):
            raise ValueError("weights must be positive")
        if self.d < 0:
            raise ValueError("weighted degree must be >= 0")

    @property
    def q(self) -> int:
        return self.field.q

    def with_d(self, d: int) -> FamilySpec:
        return FamilySpec(self.field, self.n, self.c, d, self.monic)

    def key_weight(self) -> int | None:
        """N when the family is n = 4 with weight (1, N, N+1), else None."""
        if self.n == 4 and self.c[0] == 1 and self.c[2] == self.c[1] + 1:
            return self.c[1]
        return None

    def is_degree_weight(self) -> bool:
        return self.c == tuple(range(1, self.n))

    def contains(self, f: Polynomial) -> bool:
        if f.field != self.field or f.is_zero():
            return False
        if self.monic and not f.is_monic():
            return False
        dec = powerfree_decompose(f, self.n)
        return bool(dec) and weighted_degree(dec, self.c) == self.d

    def profiles(self) -> list[tuple[int, ...]]:
        return list(degree_profiles(self.c, self.d))

    def to_json(self) -> dict:
        return {"p": self.field.p, "e": self.field.e, "n": self.n,
                "c": list(self.c), "d": self.d, "monic": self.monic}

    @classmethod
    def from_json(cls, obj: dict) -> FamilySpec:
        fld = make_field(int(obj["p"]), int(obj.get("e", 1)))
        return cls(fld, int(obj["n"]), tuple(obj["c"]), int(obj["d"]),
                   bool(obj.get("monic", True)))


@dataclass(frozen=True)
class ValueConstraint:
    """Prescribed unit values f(x_i) = a_i at distinct points."""

    points: tuple[int, ...] = ()
    values: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(int(x) for x in self.points))
        object.__setattr__(self, "values", tuple(int(a) for a in self.values))
        if len(self.points) != len(self.values):
            raise ValueError("points and values differ in length")
        if len(set(self.points)) != len(self.points):
            raise ValueError("constraint points must be distinct")
        if any(a == 0 for a in self.values):
            raise ValueError("constraint values must be units")

    @property
    def r(self) -> int:
        return len(self.points)

    def check_field(self, field: GF):
        q = field.q
        if any(not 0 <= v < q for v in self.points + self.values):
            raise ValueError(f"constraint entries must lie in [0, {q})")

    def to_json(self) -> dict:
        return {"points": list(self.points), "values": list(self.values)}

    @classmethod
    def from_json(cls, obj: dict) -> ValueConstraint:
        return cls(tuple(obj.get("points", ())), tuple(obj.get("values", ())))


# --------------------------------------------------------------------------
# closed-form counts
# --------------------------------------------------------------------------

def count_powerfree(field: GF, d: int, n: int) -> int:
    """Number of monic n-th-power-free polynomials of degree d."""
    if d < 0:
        raise ValueError("degree must be >= 0")
    if n < 2:
        raise ValueError("n must be >= 2")
    q = field.q
    if d <= n - 1:
        return q**d
    return q**d - q ** (d - (n - 1))


def count_squarefree(field: GF, d: int) -> int:
    return count_powerfree(field, d, 2)


def degree_profiles(c: Sequence[int], d: int) -> Iterator[tuple[int, ...]]:
    """All (d_1, ..., d_k) >= 0 with sum c_i d_i = d, in lexicographic order."""
    c = tuple(c)

    def rec(i: int, rest: int):
        if i == len(c) - 1:
            if rest % c[i] == 0:
                yield (rest // c[i],)
            return
        for di in range(rest // c[i] + 1):
            for tail in rec(i + 1, rest - c[i] * di):
                yield (di,) + tail

    if not c:
        if d == 0:
            yield ()
        return
    yield from rec(0, d)


# --------------------------------------------------------------------------
# sieve kernel
# --------------------------------------------------------------------------

def _low_digits(q: int, k: int) -> np.ndarray:
    """Row i holds c_0..c_{k-1} where i = sum c_j q^(k-1-j) (c_0 most significant)."""
    idx = np.arange(q**k, dtype=np.int64)
    out = np.empty((q**k, k), dtype=np.int64)
    for j in range(k - 1, -1, -1):
        idx, out[:, j] = np.divmod(idx, q)
    return out


def _check_sieve_size(q: int, k: int, unsafe: bool):
    if not unsafe and q**k > LIMITS.max_sieve:
        raise GuardrailError(f"sieve over {q}^{k} monic polynomials exceeds guardrail")


@lru_cache(maxsize=None)
def powerfree_mask(field: GF, k: int, n: int, unsafe: bool = False) -> np.ndarray:
    """Boolean array over monic degree-k polynomials: True iff n-th-power-free.

    Entry i is the polynomial whose low coefficients are the base-q digits of
    i with c_0 most significant, so ascending i is lexicographic order.
    """
    q = field.q
    _check_sieve_size(q, k, unsafe)
    mask = np.ones(q**k, dtype=bool)
    if k < n:
        return mask
    weights = q ** np.arange(k - 1, -1, -1, dtype=np.int64)
    add_t = np.array(field.add, dtype=np.int64)
    mul_t = np.array(field.mul, dtype=np.int64)
    prime = field.e == 1
    p = field.p
    for j in range(1, k // n + 1):
        kh = k - n * j
        hdig = _low_digits(q, kh)
        m = hdig.shape[0]
        for low in itertools.product(range(q), repeat=j):
            g = ppow(field, tuple(low) + (1,), n)
            res = np.zeros((m, k + 1), dtype=np.int64)
            for i in range(kh + 1):
                col = hdig[:, i] if i < kh else None
                for s, gs in enumerate(g):
                    if not gs:
                        continue
                    if prime:
                        res[:, i + s] += (col * gs) if col is not None else gs
                    elif col is not None:
                        res[:, i + s] = add_t[res[:, i + s], mul_t[col, gs]]
                    else:
                        res[:, i + s] = add_t[res[:, i + s], gs]
            if prime:
                res %= p
            mask[res[:, :k] @ weights] = False
    return mask


@lru_cache(maxsize=None)
def squarefree_monics(field: GF, k: int, unsafe: bool = False) -> tuple[Coeffs, ...]:
    """All monic square-free polynomials of degree k, lexicographically sorted."""
    if k == 0:
        return (ONE,)
    mask = powerfree_mask(field, k, 2, unsafe)
    digs = _low_digits(field.q, k)[mask]
    return tuple(tuple(row) + (1,) for row in digs.tolist())


# --------------------------------------------------------------------------
# enumeration
# --------------------------------------------------------------------------

def _check_spec(spec: FamilySpec, unsafe: bool):
    if unsafe:
        return
    if spec.q > LIMITS.max_q:
        raise GuardrailError(f"q = {spec.q} exceeds guardrail {LIMITS.max_q}")
    if spec.d > LIMITS.max_d:
        raise GuardrailError(f"d = {spec.d} exceeds guardrail {LIMITS.max_d}")


def _stratum_tuples(field: GF, profile: Sequence[int], unsafe: bool = False):
    """Yield pairwise-coprime tuples (f_1, ..., f_k) with deg f_j = profile[j-1]."""
    lists = [squarefree_monics(field, dj, unsafe) for dj in profile]
    k = len(lists)
    chosen: list[Coeffs] = [ONE] * k

    def rec(j: int):
        if j == k:
            yield tuple(chosen)
            return
        for g in lists[j]:
            if len(g) > 1 and not all(pcoprime(field, g, h) for h in chosen[:j]):
                continue
            chosen[j] = g
            yield from rec(j + 1)
        chosen[j] = ONE

    yield from rec(0)


def _assemble(field: GF, parts: Sequence[Coeffs]) -> Coeffs:
    acc = ONE
    for j, g in enumerate(parts, start=1):
        if len(g) > 1:
            acc = pmul(field, acc, ppow(field, g, j))
    return acc


def enumerate_stratum(spec: FamilySpec, profile: Sequence[int],
                      unsafe: bool = False) -> list[Coeffs]:
    """Monic members with deg f_j = profile[j-1], sorted by coefficient vector."""
    field = spec.field
    out = [_assemble(field, parts) for parts in _stratum_tuples(field, profile, unsafe)]
    out.sort()
    return out


def _stratum_job(args):
    spec, profile, unsafe = args
    return enumerate_stratum(spec, profile, unsafe)


def monic_members(spec: FamilySpec, jobs: int = 1, unsafe: bool = False) -> list[Coeffs]:
    """Raw coefficient tuples of the monic family, in canonical order."""
    _check_spec(spec, unsafe)
    profiles = spec.profiles()
    if jobs > 1 and len(profiles) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(_stratum_job, [(spec, pr, unsafe) for pr in profiles]))
    else:
        chunks = [enumerate_stratum(spec, pr, unsafe) for pr in profiles]
    return [f for chunk in chunks for f in chunk]


def enumerate_family(spec: FamilySpec, jobs: int = 1,
                     unsafe: bool = False) -> Iterator[Polynomial]:
    """Yield every member once: profile-major, lexicographic within a profile.

    For hat families each monic member is followed by its unit multiples
    2f, 3f, ... in increasing order of the unit's code.
    """
    field = spec.field
    for f in monic_members(spec, jobs, unsafe):
        if spec.monic:
            yield Polynomial(field, f)
        else:
            for u in field.units():
                yield Polynomial(field, pscale(field, f, u))


def count_family(spec: FamilySpec, unsafe: bool = False) -> int:
    """Exact size of the family.

    For n = 4 with weight (1, N, N+1) this is the stratum sum
    sum_e S(d - N e) S(e) over square-free counts S; every other family is
    counted by enumerating coprime tuples.
    """
    N = spec.key_weight()
    if N is not None:
        total = sum(count_squarefree(spec.field, spec.d - N * e) * count_squarefree(spec.field, e)
                    for e in range(spec.d // N + 1))
    else:
        _check_spec(spec, unsafe)
        total = sum(sum(1 for _ in _stratum_tuples(spec.field, pr, unsafe))
                    for pr in spec.profiles())
    return total if spec.monic else total * (spec.q - 1)


# --------------------------------------------------------------------------
# the pairing f1 f2^2 f3^3 <-> (f1 f3)(f2 f3)^2
# --------------------------------------------------------------------------

def _require_squarefree_monic(*fs: Polynomial):
    for f in fs:
        if not f.is_monic() or not pis_squarefree(f.field, f.coeffs):
            raise ValueError(f"{f!r} is not monic square-free")


def key_bijection(f1: Polynomial, f2: Polynomial, f3: Polynomial) -> tuple[Polynomial, Polynomial]:
    """(f1, f2, f3) pairwise coprime -> (f1 f3, f2 f3)."""
    _require_squarefree_monic(f1, f2, f3)
    F = f1.field
    for a, b in ((f1, f2), (f1, f3), (f2, f3)):
        if not pcoprime(F, a.coeffs, b.coeffs):
            raise ValueError("inputs are not pairwise coprime")
    return f1 * f3, f2 * f3


def key_bijection_inverse(t1: Polynomial, t2: Polynomial) -> tuple[Polynomial, Polynomial, Polynomial]:
    _require_squarefree_monic(t1, t2)
    F = t1.field
    g = pgcd(F, t1.coeffs, t2.coeffs)
    return (Polynomial(F, pdivmod(F, t1.coeffs, g)[0]),
            Polynomial(F, pdivmod(F, t2.coeffs, g)[0]),
            Polynomial(F, g))


def pair_construction(field: GF, N: int, d: int, unsafe: bool = False) -> list[Coeffs]:
    """Every t1 t2^2 with t1, t2 monic square-free and deg t1 + N deg t2 = d."""
    out = []
    for e in range(d // N + 1):
        ones = squarefree_monics(field, d - N * e, unsafe)
        for t2 in squarefree_monics(field, e, unsafe):
            sq = pmul(field, t2, t2)
            out.extend(pmul(field, t1, sq) for t1 in ones)
    return out


def tilde_expand(exponents: Sequence[int], components: dict) -> dict[tuple[int, ...], int]:
    """Check prod_i ft_i^{e_i} = prod_S f_S^{sum_{i in S} e_i} with ft_i = prod_{S ni i} f_S.

    ``components`` maps nonempty index tuples S (1-based, sorted) to square-free
    monic polynomials.  Returns the exponent of each f_S on the right side.
    """
    k = len(exponents)
    subsets = [S for size in range(1, k + 1) for S in itertools.combinations(range(1, k + 1), size)]
    comps = {tuple(sorted(S)): f for S, f in components.items()}
    unknown = set(comps) - set(subsets)
    if unknown:
        raise ValueError(f"unknown index sets {sorted(unknown)}")
    if not comps:
        raise ValueError("no components given")
    F = next(iter(comps.values())).field
    one = Polynomial(F, ONE)
    full = {S: comps.get(S, one) for S in subsets}
    _require_squarefree_monic(*full.values())
    for A, B in itertools.combinations(subsets, 2):
        if not pcoprime(F, full[A].coeffs, full[B].coeffs):
            raise ValueError(f"components {A} and {B} are not coprime")
    tildes = []
    for i in range(1, k + 1):
        acc = ONE
        for S in subsets:
            if i in S:
                acc = pmul(F, acc, full[S].coeffs)
        tildes.append(acc)
    lhs = ONE
    for t, e in zip(tildes, exponents):
        lhs = pmul(F, lhs, ppow(F, t, e))
    exps = {S: sum(exponents[i - 1] for i in S) for S in subsets}
    rhs = ONE
    for S in subsets:
        rhs = pmul(F, rhs, ppow(F, full[S].coeffs, exps[S]))
    if lhs != rhs:
        raise AssertionError("expansion identity failed")
    return exps


# --------------------------------------------------------------------------
# value constraints
# --------------------------------------------------------------------------

def _satisfies(field: GF, f: Coeffs, pts: Sequence[int], vals: Sequence[int]) -> bool:
    for x, a in zip(pts, vals):
        if peval(field, f, x) != a:
            return False
    return True


def count_constrained(spec: FamilySpec, vc: ValueConstraint, jobs: int = 1,
                      unsafe: bool = False) -> int:
    """Members f with f(x_i) = a_i for every constraint, by enumeration."""
    field = spec.field
    vc.check_field(field)
    if vc.r > field.q:
        raise ValueError("more constraint points than field elements")
    pts, vals = vc.points, vc.values
    members = monic_members(spec, jobs, unsafe)
    if spec.monic:
        return sum(1 for f in members if _satisfies(field, f, pts, vals))
    total = 0
    inv, mul = field.inv, field.mul
    for f in members:
        # u f(x_i) = a_i for all i fixes u = a_1 / f(x_1)
        if not pts:
            total += field.q - 1
            continue
        v0 = peval(field, f, pts[0])
        if v0 == 0:
            continue
        u = mul[vals[0]][inv[v0]]
        if all(mul[u][peval(field, f, x)] == a for x, a in zip(pts[1:], vals[1:])):
            total += 1
    return total


def predicted_constrained_count(spec: FamilySpec, vc: ValueConstraint, theorem: str) -> Fraction:
    """Main term of the constrained count, as an exact rational.

    ``theorem="nfree"`` needs weight (1, ..., n-1) and gives
    q^(d-r) (1 - q^(1-n)) / (1 - q^-n)^r.  ``theorem="theoremC"`` needs
    n = 4, weight (1, N, N+1), N >= 2, d >= N and gives
    q^d (1 - 1/q)(1/q + q^-N + (1 - 1/q)/(1 - q^(1-N))) / psi^r with
    psi = (q - 1)(1 + 1/q)(1 + q^-N).  Hat families scale by q - 1.
    """
    q = Fraction(spec.q)
    d, r = spec.d, vc.r
    if theorem == "nfree":
        if not spec.is_degree_weight():
            raise UnsupportedSpec("nfree main term needs weight (1, 2, ..., n-1)")
        n = spec.n
        main = q ** (d - r) * (1 - q ** (1 - n)) / (1 - q ** (-n)) ** r
    elif theorem == "theoremC":
        N = spec.key_weight()
        if N is None:
            raise UnsupportedSpec("theoremC main term needs n = 4 and weight (1, N, N+1)")
        if N < 2:
            raise UnsupportedSpec("theoremC main term needs N >= 2")
        if d < N:
            raise UnsupportedSpec("theoremC main term needs d >= N")
        density = 1 / q + q ** (-N) + (1 - 1 / q) / (1 - q ** (1 - N))
        psi = (q - 1) * (1 + 1 / q + q ** (-N) + q ** (-N - 1))
        main = q**d * (1 - 1 / q) * density / psi**r
    else:
        raise UnsupportedSpec(f"unknown theorem {theorem!r}")
    return main if spec.monic else main * (q - 1)


# --------------------------------------------------------------------------
# Monte Carlo
# --------------------------------------------------------------------------

SAMPLE_CHUNK = 4096


def stream_rng(seed: int, index: int) -> np.random.Generator:
    """Counter-based stream for (seed, index); independent of worker layout."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, index])))


class FamilySampler:
    """Uniform sampler for the two families with a provably uniform method.

    Mode "degree" (weight (1, ..., n-1)): rejection from uniform monic
    degree-d polynomials.  Mode "pair" (n = 4, weight (1, N, N+1)): draw the
    stratum e with probability proportional to S(d - N e) S(e), then a
    uniform square-free pair (t1, t2) by rejection, and emit t1 t2^2.
    """

    def __init__(self, spec: FamilySpec, seed: int = 0):
        self.spec = spec
        self.seed = int(seed)
        self.attempts = 0
        self.accepted = 0
        field = spec.field
        N = spec.key_weight()
        if N is not None:
            self.mode = "pair"
            self.N = N
            self.strata = list(range(spec.d // N + 1))
            w = [count_squarefree(field, spec.d - N * e) * count_squarefree(field, e)
                 for e in self.strata]
            self.cumulative = list(itertools.accumulate(w))
        elif spec.is_degree_weight():
            self.mode = "degree"
        else:
            raise UnsupportedSpec(f"no uniform sampler for weight {spec.c}")

    def _random_monic(self, rng: np.random.Generator, k: int) -> Coeffs:
        if k == 0:
            return ONE
        return tuple(rng.integers(0, self.spec.q, size=k).tolist()) + (1,)

    def _random_squarefree(self, rng, k: int) -> Coeffs:
        F = self.spec.field
        while True:
            self.attempts += 1
            f = self._random_monic(rng, k)
            if pis_squarefree(F, f):
                return f

    def _draw_monic(self, rng) -> Coeffs:
        spec, F = self.spec, self.spec.field
        if self.mode == "pair":
            u = int(rng.integers(0, self.cumulative[-1]))
            e = self.strata[bisect.bisect_right(self.cumulative, u)]
            t1 = self._random_squarefree(rng, spec.d - self.N * e)
            t2 = self._random_squarefree(rng, e)
            return pmul(F, t1, pmul(F, t2, t2))
        n = spec.n
        while True:
            self.attempts += 1
            f = self._random_monic(rng, spec.d)
            if n == 2:
                if pis_squarefree(F, f):
                    return f
            elif all(k < n for _, k in psqfree_parts(F, f)):
                return f

    def chunk(self, index: int, size: int) -> list[Coeffs]:
        rng = stream_rng(self.seed, index)
        F = self.spec.field
        out = []
        for _ in range(size):
            f = self._draw_monic(rng)
            if not self.spec.monic:
                f = pscale(F, f, int(rng.integers(1, F.q)))
            out.append(f)
        self.accepted += size
        return out

    def draw(self, count: int) -> list[Coeffs]:
        out: list[Coeffs] = []
        index = 0
        while len(out) < count:
            out.extend(self.chunk(index, min(SAMPLE_CHUNK, count - len(out))))
            index += 1
        return out

    @property
    def acceptance_rate(self) -> float:
        return self.accepted / self.attempts if self.attempts else math.nan


def _sample_job(args):
    spec, seed, index, size = args
    return FamilySampler(spec, seed).chunk(index, size)


def sample_family(spec: FamilySpec, count: int, seed: int = 0, jobs: int = 1,
                  unsafe: bool = False) -> list[Polynomial]:
    """``count`` independent uniform members; identical output for any ``jobs``."""
    if count <= 0:
        raise ValueError("sample count must be positive")
    if not unsafe and count > LIMITS.max_samples:
        raise GuardrailError(f"{count} samples exceeds guardrail {LIMITS.max_samples}")
    FamilySampler(spec, seed)  # validates the family before any work is dispatched
    sizes = [SAMPLE_CHUNK] * (count // SAMPLE_CHUNK)
    if count % SAMPLE_CHUNK:
        sizes.append(count % SAMPLE_CHUNK)
    tasks = [(spec, seed, i, s) for i, s in enumerate(sizes)]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(_sample_job, tasks))
    else:
        chunks = [_sample_job(t) for t in tasks]
    return [Polynomial(spec.field, f) for chunk in chunks for f in chunk]
