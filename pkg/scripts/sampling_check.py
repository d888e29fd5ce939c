"""Uniformity of the family sampler and Monte Carlo vs exhaustive histograms.

    python scripts/sampling_check.py --q 3 --N 2 --d 10 --samples 100000 --seed 2024
"""
import argparse
import json
import math
from collections import Counter
from dataclasses import asdict, dataclass

from cyclic_covers.distributions import empirical_distribution, total_variation
from cyclic_covers.families import FamilySpec, monic_members, sample_family
from cyclic_covers.field import make_field, prime_power


@dataclass
class Config:
    q: int = 3
    N: int = 2
    d: int = 10
    m: int = 2
    samples: int = 100_000
    seed: int = 2024
    jobs: int = 1


def run(cfg: Config) -> dict:
    F = make_field(*prime_power(cfg.q))
    spec = FamilySpec(F, 4, (1, cfg.N, cfg.N + 1), cfg.d)
    members = monic_members(spec, cfg.jobs)
    counts = Counter(f.coeffs for f in sample_family(spec, cfg.samples, cfg.seed, cfg.jobs))
    member_set = set(members)
    K = len(members)
    lam = cfg.samples / K
    chi2 = sum((counts.get(f, 0) - lam) ** 2 / lam for f in members)
    mc = empirical_distribution(spec, cfg.m, "mc", cfg.samples, cfg.seed, cfg.jobs)
    ex = empirical_distribution(spec, cfg.m, jobs=cfg.jobs)
    sigma = math.gcd(cfg.m, cfg.q - 1)
    return {
        "config": asdict(cfg),
        "members": K,
        "non_members_drawn": sum(v for f, v in counts.items() if f not in member_set),
        "chi2": chi2,
        "chi2_z": (chi2 - (K - 1)) / math.sqrt(2 * (K - 1)),
        "tv_mc_vs_exhaustive": float(total_variation(mc, ex)),
        "tv_limit": 0.01 + 4 * math.sqrt(cfg.q * sigma / cfg.samples),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name, default in asdict(Config()).items():
        ap.add_argument(f"--{name}", type=int, default=default)
    print(json.dumps(run(Config(**vars(ap.parse_args()))), indent=2, sort_keys=True))


if __name__ == "__main__":
    main()
