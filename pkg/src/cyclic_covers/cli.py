"""Command-line experiments: counts, distributions, identity checks and zeta sums.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 unsupported
request.  Output is canonical (sorted by d, then k) and carries no
timestamps, so identical flags give byte-identical output for any --jobs.
"""
from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import math
import sys
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Callable, Sequence

from .curves import InvalidCurveError, genus, genus_weight, points_from_coeffs
from .distributions import (
    convolve,
    empirical_distribution,
    limit_rv,
    limit_rv_for_family,
    total_variation,
)
from .families import (
    FamilySpec,
    GuardrailError,
    UnsupportedSpec,
    ValueConstraint,
    _assemble,
    _stratum_tuples,
    count_constrained,
    count_family,
    count_powerfree,
    degree_profiles,
    key_bijection,
    key_bijection_inverse,
    monic_members,
    pair_construction,
    powerfree_mask,
    predicted_constrained_count,
    sample_family,
    tilde_expand,
)
from .field import GF, is_prime, make_classifier, make_field, prime_power
from .poly import (
    NotPowerFree,
    Polynomial,
    PowerFreeDecomposition,
    powerfree_decompose,
    weighted_degree,
)
from .zeta import (
    ZetaQuery,
    restricted_sqfree_closed,
    restricted_sqfree_partial,
    tail_bound,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_UNSUPPORTED = 0, 1, 2, 3

SUITES = ("lemma-count", "key-bijection", "theorem-c", "zeta", "genus",
          "rv-consistency", "tilde-expand")


class UsageError(ValueError):
    pass


# --------------------------------------------------------------------------
# parsing helpers
# --------------------------------------------------------------------------

def int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def d_range(text: str) -> tuple[int, int]:
    """"7" or "4..12" -> inclusive bounds."""
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            lo, hi = int(a), int(b)
        else:
            lo = hi = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer or a..b, got {text!r}")
    if lo < 0 or hi < lo:
        raise argparse.ArgumentTypeError(f"bad degree range {text!r}")
    return lo, hi


def ratio(x: Fraction | int) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def exact(x: Fraction | int) -> dict:
    return {"exact": ratio(x), "approx": float(x)}


def resolve_field(args) -> GF:
    p, e, q = args.p, args.e, args.q
    if p is None:
        if e is not None:
            raise UsageError("--e needs --p")
        if q is None:
            raise UsageError("give --q (prime) or --p/--e")
        if not is_prime(q):
            raise UsageError(f"--q {q} is not prime; use --p and --e for prime powers")
        return make_field(q)
    e = 1 if e is None else e
    if not is_prime(p) or e < 1:
        raise UsageError(f"--p {p} --e {e} does not describe a finite field")
    if q is not None and q != p**e:
        raise UsageError(f"--q {q} disagrees with --p {p} --e {e}")
    return make_field(p, e)


def field_of_order(q: int) -> GF:
    try:
        p, e = prime_power(q)
    except ValueError:
        raise UsageError(f"{q} is not a prime power")
    return make_field(p, e)


def degrees(args) -> list[int]:
    if args.d is None:
        raise UsageError("--d is required")
    lo, hi = args.d
    if args.step < 1:
        raise UsageError("--step must be >= 1")
    return list(range(lo, hi + 1, args.step))


def family_template(args, field: GF) -> FamilySpec:
    n = args.n
    c = tuple(args.weights) if args.weights else tuple(range(1, n))
    try:
        return FamilySpec(field, n, c, 0, monic=not args.hat)
    except ValueError as exc:
        raise UsageError(str(exc))


def constraint(args) -> ValueConstraint:
    try:
        return ValueConstraint(tuple(args.points or ()), tuple(args.values or ()))
    except ValueError as exc:
        raise UsageError(str(exc))


# --------------------------------------------------------------------------
# output
# --------------------------------------------------------------------------

@dataclass
class Report:
    """A JSON document plus the flat rows used for CSV."""

    doc: dict
    header: list[str] = dc_field(default_factory=list)
    rows: list[list] = dc_field(default_factory=list)
    ok: bool = True

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return json.dumps(self.doc, indent=2, sort_keys=True) + "\n"
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.header)
        w.writerows(self.rows)
        return buf.getvalue()


def emit(report: Report, args) -> None:
    text = report.render(args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# --------------------------------------------------------------------------
# subcommands
# --------------------------------------------------------------------------

def _auto_theorem(spec: FamilySpec) -> str | None:
    N = spec.key_weight()
    if N is not None and N >= 2:
        return "theoremC"
    if spec.is_degree_weight():
        return "nfree"
    return None


def cmd_count(args) -> Report:
    F = resolve_field(args)
    template = family_template(args, F)
    vc = constraint(args)
    vc.check_field(F)
    theorem = None if args.theorem == "none" else args.theorem
    if theorem == "auto":
        theorem = _auto_theorem(template)
    rows, out = [], []
    for d in degrees(args):
        spec = template.with_d(d)
        size = count_family(spec, args.unsafe_limits)
        count = size if vc.r == 0 else count_constrained(spec, vc, args.jobs, args.unsafe_limits)
        main = None
        if theorem is not None:
            try:
                main = predicted_constrained_count(spec, vc, theorem)
            except UnsupportedSpec:
                if args.theorem != "auto":
                    raise
        entry = {"d": d, "count": count, "family_size": size}
        row = [d, count, size, "", "", "", "", ""]
        if main is not None:
            res = count - main
            scale = F.q ** (d / 2) if theorem == "theoremC" else F.q ** (d / spec.n)
            entry.update(main=exact(main), residual=exact(res), normalized=float(res) / scale)
            row[3:] = [ratio(main), float(main), ratio(res), float(res), float(res) / scale]
        out.append(entry)
        rows.append(row)
    doc = {"family": {k: v for k, v in template.to_json().items() if k != "d"},
           "constraint": vc.to_json(), "theorem": theorem, "rows": out}
    header = ["d", "count", "family_size", "main", "main_approx", "residual",
              "residual_approx", "normalized"]
    return Report(doc, header, rows)


def cmd_enumerate(args) -> Report:
    F = resolve_field(args)
    template = family_template(args, F)
    out, rows = [], []
    for d in degrees(args):
        spec = template.with_d(d)
        members = []
        for f in monic_members(spec, args.jobs, args.unsafe_limits):
            units = [1] if spec.monic else list(F.units())
            for u in units:
                g = Polynomial(F, f) if u == 1 else Polynomial(F, f) * F.element(u)
                members.append(g.to_text())
        out.append({"d": d, "count": len(members), "members": members})
        rows.extend([d, m] for m in members)
    doc = {"family": {k: v for k, v in template.to_json().items() if k != "d"}, "rows": out}
    return Report(doc, ["d", "poly"], rows)


def cmd_dist(args) -> Report:
    F = resolve_field(args)
    template = family_template(args, F)
    if args.m is None:
        raise UsageError("--m is required")
    limit = convolve(limit_rv_for_family(template, args.m), F.q)
    lim_p = limit.probabilities()
    out, rows = [], []
    for d in degrees(args):
        spec = template.with_d(d)
        emp = empirical_distribution(spec, args.m, args.mode, args.samples, args.seed,
                                     args.jobs, args.unsafe_limits)
        if not emp.total:
            out.append({"d": d, "empty": True})
            continue
        emp_p = emp.probabilities()
        tv = total_variation(emp, limit)
        table = []
        for k in sorted(set(emp_p) | set(lim_p)):
            e, l = emp_p.get(k, Fraction(0)), lim_p.get(k, Fraction(0))
            table.append({"k": k, "count": emp.entries.get(k, 0), "empirical": exact(e),
                          "limit": exact(l)})
            rows.append([d, k, emp.entries.get(k, 0), ratio(e), float(e), ratio(l), float(l),
                         ratio(tv), float(tv)])
        out.append({"d": d, "total": emp.total, "tv": exact(tv), "table": table})
    doc = {"family": {k: v for k, v in template.to_json().items() if k != "d"},
           "m": args.m, "mode": args.mode, "samples": args.samples if args.mode == "mc" else None,
           "seed": args.seed if args.mode == "mc" else None, "rows": out}
    header = ["d", "k", "count", "empirical", "empirical_approx", "limit", "limit_approx",
              "tv", "tv_approx"]
    return Report(doc, header, rows)


def cmd_sample(args) -> Report:
    F = resolve_field(args)
    template = family_template(args, F)
    if args.d is None or args.d[0] != args.d[1]:
        raise UsageError("sample needs a single --d")
    spec = template.with_d(args.d[0])
    draws = sample_family(spec, args.samples, args.seed, args.jobs, args.unsafe_limits)
    cls = make_classifier(F, args.m) if args.m else None
    rows, out = [], []
    for i, f in enumerate(draws):
        row = [i, f.to_text()]
        item = {"index": i, "poly": f.to_text()}
        if cls is not None:
            pts = points_from_coeffs(cls, f.coeffs)
            row.append(pts)
            item["points"] = pts
        rows.append(row)
        out.append(item)
    doc = {"family": spec.to_json(), "seed": args.seed, "samples": args.samples,
           "m": args.m, "rows": out}
    header = ["index", "poly"] + (["points"] if cls is not None else [])
    return Report(doc, header, rows)


def _genus_row(dec: PowerFreeDecomposition, m: int, n: int) -> dict:
    deg = dec.total_degree()
    wd = weighted_degree(dec, genus_weight(m, n))
    try:
        rep = genus(dec, m)
        twice, g, valid = 2 * rep.genus, rep.genus, rep.valid_hypotheses
    except InvalidCurveError as exc:
        twice, g, valid = exc.twice_genus, None, False
    return {"degrees": list(dec.degrees()), "deg": deg, "genus": g, "twice_genus": twice,
            "valid_hypotheses": valid, "weighted_degree": wd,
            "relation": twice - 2 + m + math.gcd(m, deg) == wd}


def _stratum_decomposition(F: GF, parts: Sequence) -> PowerFreeDecomposition:
    return PowerFreeDecomposition(F.element(1), tuple(Polynomial(F, g) for g in parts), len(parts) + 1)


def cmd_genus(args) -> Report:
    F = resolve_field(args)
    if args.m is None:
        raise UsageError("--m is required")
    m = args.m
    n = args.n if args.n else m
    if args.sweep:
        out, rows = [], []
        c = tuple(range(1, n))
        for deg in range(1, args.deg_max + 1):
            for pr in degree_profiles(c, deg):
                tuples = _stratum_tuples(F, pr, args.unsafe_limits)
                first = next(tuples, None)
                if first is None:
                    continue
                members = 1 + sum(1 for _ in tuples)
                row = _genus_row(_stratum_decomposition(F, first), m, n)
                row["members"] = members
                out.append(row)
                rows.append([deg, ";".join(map(str, pr)), members, row["genus"],
                             row["twice_genus"], row["weighted_degree"], row["relation"]])
        ok = all(r["relation"] for r in out)
        doc = {"field": F.to_json(), "m": m, "n": n, "weight": list(genus_weight(m, n)),
               "rows": out, "relation_holds": ok}
        header = ["deg", "profile", "members", "genus", "twice_genus", "weighted_degree",
                  "relation"]
        return Report(doc, header, rows, ok)
    if args.poly is None:
        raise UsageError("give --poly or --sweep")
    f = Polynomial.from_text(F, args.poly)
    dec = powerfree_decompose(f, n)
    if isinstance(dec, NotPowerFree):
        raise UsageError(f"{f!r} is not power-free for n = {n}: "
                         f"{dec.factor!r} divides it with multiplicity {dec.multiplicity}")
    rep = genus(dec, m)
    doc = {"field": F.to_json(), "poly": f.to_text(), **rep.to_json()}
    header = ["poly", "m", "degree", "genus", "valid_hypotheses"]
    return Report(doc, header, [[f.to_text(), m, rep.degree, rep.genus, rep.valid_hypotheses]])


def cmd_zeta(args) -> Report:
    F = resolve_field(args)
    pts = tuple(args.points) if args.points else tuple(range(args.r))
    lo, hi = args.D
    out, rows = [], []
    for D in range(lo, hi + 1):
        qy = ZetaQuery(args.t, pts, D)
        closed = restricted_sqfree_closed(F, qy)
        partial = restricted_sqfree_partial(F, qy)
        diff = abs(closed - partial)
        bound = tail_bound(F, args.t, D)
        out.append({"D": D, "partial": exact(partial), "closed": exact(closed),
                    "diff": exact(diff), "bound": exact(bound)})
        rows.append([D, ratio(partial), ratio(closed), ratio(diff), ratio(bound),
                     float(diff), float(bound)])
    doc = {"field": F.to_json(), "t": args.t, "excluded": list(pts), "rows": out}
    header = ["D", "partial", "closed", "diff", "bound", "diff_approx", "bound_approx"]
    return Report(doc, header, rows)


# --------------------------------------------------------------------------
# verification suites
# --------------------------------------------------------------------------

@dataclass
class SuiteResult:
    instances: int = 0
    failures: list[str] = dc_field(default_factory=list)
    notes: dict = dc_field(default_factory=dict)

    def check(self, ok: bool, label: str) -> None:
        self.instances += 1
        if not ok:
            self.failures.append(label)


def suite_lemma_count(args, res: SuiteResult) -> None:
    for q in args.q or [2, 3, 4, 5]:
        F = field_of_order(q)
        for n in args.n or [2, 3, 4]:
            for d in range(args.d_max + 1):
                sieve = int(powerfree_mask(F, d, n, args.unsafe_limits).sum())
                formula = q**d - q ** (d - n + 1) if d >= n else q**d
                res.check(sieve == formula == count_powerfree(F, d, n), f"q={q} n={n} d={d}")


def suite_key_bijection(args, res: SuiteResult) -> None:
    for q in args.q or [2, 3]:
        F = field_of_order(q)
        for N in args.N or [2, 3]:
            for d in range(args.d_max + 1):
                triples = []
                ok = True
                for pr in degree_profiles((1, N, N + 1), d):
                    for parts in _stratum_tuples(F, pr, args.unsafe_limits):
                        triples.append(_assemble(F, parts))
                        f1, f2, f3 = (Polynomial(F, g) for g in parts)
                        back = key_bijection_inverse(*key_bijection(f1, f2, f3))
                        ok = ok and back == (f1, f2, f3)
                pairs = pair_construction(F, N, d, args.unsafe_limits)
                ok = ok and sorted(triples) == sorted(pairs) and len(set(pairs)) == len(pairs)
                res.check(ok, f"q={q} N={N} d={d}")


def suite_theorem_c(args, res: SuiteResult) -> None:
    lo, hi = args.d if args.d else (4, 8)
    residuals = []
    for q in args.q or [3]:
        F = field_of_order(q)
        for N in args.N or [2]:
            for d in range(max(lo, N), hi + 1):
                spec = FamilySpec(F, 4, (1, N, N + 1), d)
                size = count_family(spec)
                enumerated = len(monic_members(spec, args.jobs, args.unsafe_limits))
                res.check(size == enumerated, f"size q={q} N={N} d={d}")
                for r in args.r if args.r is not None else [0, 1]:
                    if r > q:
                        continue
                    vc = ValueConstraint(tuple(range(r)), (1,) * r)
                    count = count_constrained(spec, vc, args.jobs, args.unsafe_limits)
                    main = predicted_constrained_count(spec, vc, "theoremC")
                    if r == 0 and N == 2 and d >= 2 * N:
                        res.check(count == main, f"r=0 exact q={q} N={N} d={d}")
                    residuals.append({"q": q, "N": N, "d": d, "r": r, "count": count,
                                      "main": ratio(main), "residual": ratio(count - main)})
    res.notes["residuals"] = residuals


def suite_zeta(args, res: SuiteResult) -> None:
    Dmax = args.D if args.D is not None else 30
    for q in args.q or [2, 3, 5]:
        F = field_of_order(q)
        for t in args.t or [2, 3]:
            for r in args.r if args.r is not None else [0, 1, 2]:
                prev = Fraction(0)
                for D in range(Dmax + 1):
                    qy = ZetaQuery(t, tuple(range(r)), D)
                    closed = restricted_sqfree_closed(F, qy)
                    partial = restricted_sqfree_partial(F, qy, "count")
                    ok = 0 <= closed - partial <= tail_bound(F, t, D) and partial >= prev
                    if q**D <= 10**4:
                        ok = ok and partial == restricted_sqfree_partial(F, qy, "enumerate")
                    prev = partial
                    res.check(ok, f"q={q} t={t} r={r} D={D}")


def _parse_triples(text: str) -> list[tuple[int, int, int]]:
    out = []
    for chunk in text.split(";"):
        vals = tuple(int(x) for x in chunk.split(","))
        if len(vals) != 3:
            raise UsageError(f"triple {chunk!r} is not m,n,q")
        out.append(vals)
    return out


def suite_genus(args, res: SuiteResult) -> None:
    triples = _parse_triples(args.triples)
    degenerate = 0
    for m, n, q in triples:
        F = field_of_order(q)
        c = tuple(range(1, n))
        for deg in range(1, args.d_max + 1):
            total = 0
            for pr in degree_profiles(c, deg):
                tuples = _stratum_tuples(F, pr, args.unsafe_limits)
                first = next(tuples, None)
                if first is None:
                    continue
                total += 1 + sum(1 for _ in tuples)
                row = _genus_row(_stratum_decomposition(F, first), m, n)
                if row["genus"] is None:
                    degenerate += 1
                ok = row["relation"]
                if m == 2 and n == 2:
                    ok = ok and row["genus"] == (deg - 1) // 2
                res.check(ok, f"m={m} n={n} q={q} profile={pr}")
            res.check(total == count_powerfree(F, deg, n), f"coverage m={m} n={n} q={q} deg={deg}")
    res.notes["degenerate_strata"] = degenerate


def suite_rv_consistency(args, res: SuiteResult) -> None:
    qs = [q for q in range(2, args.q_max + 1) if _is_prime_power(q)]
    for q in qs:
        qf = Fraction(q)
        for m in args.m_list or [2, 3, 4]:
            for N in range(2, args.N_max + 1):
                psi = (qf - 1) * (1 + 1 / qf + qf**-N + qf ** -(N + 1))
                a = limit_rv("theoremC2", q, m, N=N)
                b = limit_rv("lemma-reg", q, m, psi=psi)
                same = (a.q, a.sigma, a.p0, a.p1, a.psigma, a.psi) == (b.q, b.sigma, b.p0, b.p1, b.psigma, b.psi)
                s = math.gcd(m, q - 1)
                den = 1 + 1 / qf + qf**-N + qf ** -(N + 1)
                if s > 1:
                    table = (a.p0 == (1 - Fraction(1, s)) / den
                             and a.p1 == (1 / qf + qf**-N + qf ** -(N + 1)) / den
                             and a.psigma == Fraction(1, s) / den)
                else:
                    table = a.masses() == {1: Fraction(1)}
                res.check(same and table, f"theoremC2 q={q} m={m} N={N}")
        if q % 2:
            kr = limit_rv("example-KR", q, 2)
            den = 1 + 1 / qf
            res.check(kr.masses() == {0: Fraction(1, 2) / den, 1: (1 / qf) / den,
                                      2: Fraction(1, 2) / den}, f"KR q={q}")
        if q % 3 == 1:
            cwz = limit_rv("example-CWZ", q, 3, n=3)
            den = 1 + 1 / qf + qf**-2
            res.check(cwz.masses() == {0: Fraction(2, 3) / den, 1: (1 / qf + qf**-2) / den,
                                       3: Fraction(1, 3) / den}, f"CWZ q={q}")
            bdfl = limit_rv("example-BDFL", q, 3, l=3)
            den = 1 + 2 / qf
            res.check(bdfl.p0 == Fraction(2, 3) / den and bdfl.p1 == (2 / qf) / den
                      and bdfl.psigma == Fraction(1, 3) / den, f"BDFL q={q}")


def _is_prime_power(q: int) -> bool:
    try:
        prime_power(q)
        return True
    except ValueError:
        return False


def suite_tilde_expand(args, res: SuiteResult) -> None:
    for q in args.q or [3]:
        F = field_of_order(q)
        atoms = [Polynomial(F, (F.neg[a], 1)) for a in range(q)]
        for k in args.k or [2, 3]:
            subsets = [S for size in range(1, k + 1)
                       for S in itertools.combinations(range(1, k + 1), size)]
            exps = list(itertools.product(range(1, 4), repeat=k))
            for assign in itertools.product(range(len(subsets) + 1), repeat=len(atoms)):
                comps: dict = {}
                for atom, slot in zip(atoms, assign):
                    if slot < len(subsets):
                        S = subsets[slot]
                        comps[S] = comps[S] * atom if S in comps else atom
                if not comps:
                    continue
                for e in exps:
                    try:
                        got = tilde_expand(e, comps)
                        ok = all(got[S] == sum(e[i - 1] for i in S) for S in subsets)
                    except AssertionError:
                        ok = False
                    res.check(ok, f"q={q} k={k} assign={assign} e={e}")


SUITE_FUNCS: dict[str, Callable] = {
    "lemma-count": suite_lemma_count,
    "key-bijection": suite_key_bijection,
    "theorem-c": suite_theorem_c,
    "zeta": suite_zeta,
    "genus": suite_genus,
    "rv-consistency": suite_rv_consistency,
    "tilde-expand": suite_tilde_expand,
}


def cmd_verify(args) -> Report:
    res = SuiteResult()
    SUITE_FUNCS[args.suite](args, res)
    ok = not res.failures
    doc = {"suite": args.suite, "passed": ok, "instances": res.instances,
           "failures": res.failures, **res.notes}
    rows = [[args.suite, "pass" if ok else "fail", res.instances, len(res.failures)]]
    return Report(doc, ["suite", "status", "instances", "failures"], rows, ok)


# --------------------------------------------------------------------------
# argument parser
# --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--out", default=None, help="output path (default stdout)")
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--unsafe-limits", action="store_true",
                        help="lift the q <= 16, d <= 30, samples <= 10^7 guardrails")

    fam = argparse.ArgumentParser(add_help=False)
    fam.add_argument("--p", type=int)
    fam.add_argument("--e", type=int)
    fam.add_argument("--q", type=int, help="field order; prime only unless --p/--e agree")
    fam.add_argument("--n", type=int, default=2)
    fam.add_argument("--weights", type=int_list, help="c_1,...,c_{n-1} (default 1,...,n-1)")
    fam.add_argument("--d", type=d_range, help="weighted degree: d or a..b")
    fam.add_argument("--step", type=int, default=1)
    fam.add_argument("--m", type=int)
    fam.add_argument("--hat", action="store_true", help="drop monicity")

    ap = argparse.ArgumentParser(prog="cyclic-covers", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", parents=[common, fam], help="constrained family counts")
    p.add_argument("--points", type=int_list)
    p.add_argument("--values", type=int_list)
    p.add_argument("--theorem", choices=("auto", "theoremC", "nfree", "none"), default="auto")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("enumerate", parents=[common, fam], help="list family members")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("dist", parents=[common, fam], help="point-count distributions")
    p.add_argument("--mode", choices=("exhaustive", "mc"), default="exhaustive")
    p.add_argument("--samples", type=int, default=None)
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser("sample", parents=[common, fam], help="uniform family samples")
    p.add_argument("--samples", type=int, default=10)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("genus", parents=[common, fam], help="genus of y^m = f(x)")
    p.add_argument("--poly", help="coefficients c0,c1,... (constant term first)")
    p.add_argument("--sweep", action="store_true")
    p.add_argument("--deg-max", type=int, default=6)
    p.set_defaults(func=cmd_genus, n=None)

    p = sub.add_parser("zeta", parents=[common, fam], help="restricted square-free sums")
    p.add_argument("--t", type=int, default=2)
    p.add_argument("--r", type=int, default=0)
    p.add_argument("--points", type=int_list)
    p.add_argument("--D", type=d_range, default=(0, 10))
    p.set_defaults(func=cmd_zeta)

    p = sub.add_parser("verify", parents=[common], help="run an identity suite")
    p.add_argument("suite", choices=SUITES)
    p.add_argument("--q", type=int_list)
    p.add_argument("--n", type=int_list)
    p.add_argument("--N", type=int_list)
    p.add_argument("--t", type=int_list)
    p.add_argument("--r", type=int_list)
    p.add_argument("--k", type=int_list)
    p.add_argument("--d", type=d_range)
    p.add_argument("--D", type=int)
    p.add_argument("--d-max", type=int, default=8)
    p.add_argument("--q-max", type=int, default=25)
    p.add_argument("--N-max", type=int, default=5)
    p.add_argument("--m", dest="m_list", type=int_list)
    p.add_argument("--triples", default="2,2,5;3,3,7;4,4,5", help="m,n,q;m,n,q;...")
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse reports usage errors with status 2
        return int(exc.code or 0)
    if getattr(args, "jobs", 1) < 1:
        print("error: --jobs must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        report = args.func(args)
    except UnsupportedSpec as exc:
        print(f"unsupported: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except (UsageError, GuardrailError, ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    emit(report, args)
    return EXIT_OK if report.ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
