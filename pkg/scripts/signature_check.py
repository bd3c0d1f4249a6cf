"""Compare exact signature profiles and rho_0 with floating-point sampling on
random Seifert matrices."""

import argparse
import math
import random
from dataclasses import dataclass

from knotcert.seifert import SeifertMatrix, alexander, numeric_signature, rho_zero, signature_profile


@dataclass
class Config:
    matrices: int = 50
    max_genus: int = 2
    entry_bound: int = 3
    angles: int = 1000
    seed: int = 1


def random_matrix(rng: random.Random, genus: int, bound: int) -> SeifertMatrix:
    n = 2 * genus
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            m[i][j] = m[j][i] = rng.randint(-bound, bound)
    for k in range(genus):
        m[2 * k][2 * k + 1] += 1
    return SeifertMatrix(tuple(tuple(r) for r in m))


def main(cfg: Config) -> None:
    rng = random.Random(cfg.seed)
    worst = 0.0
    for _ in range(cfg.matrices):
        v = random_matrix(rng, rng.randint(1, cfg.max_genus), cfg.entry_bound)
        prof = signature_profile(v)
        samples = [numeric_signature(v, (k + 0.5) * math.pi / cfg.angles) for k in range(cfg.angles)]
        mismatch = sum(1 for k, s in enumerate(samples) if prof.value((k + 0.5) / cfg.angles) != s)
        rho = rho_zero(v)
        err = abs(float(rho) - sum(samples) / cfg.angles)
        worst = max(worst, err)
        print(f"{str(alexander(v)):40} arcs={list(prof.arc_values)!s:16} rho0={float(rho):+.9f} "
              f"quadrature err={err:.1e} mismatched angles={mismatch}")
    print(f"worst quadrature error {worst:.2e} (expected O(1/angles))")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    for name, default in vars(Config()).items():
        ap.add_argument(f"--{name.replace('_', '-')}", type=int, default=default)
    main(Config(**vars(ap.parse_args())))
