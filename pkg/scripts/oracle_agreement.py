"""Differential test of the root-based strong-coprimality engine against the
brute-force gcd oracle on random products of linear and quadratic factors."""

import argparse
import random
import time
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from knotcert.algebra import LaurentPolynomial, normalize
from knotcert.coprimality import Relation, oracle_first_failure, strongly_coprime


@dataclass
class Config:
    pairs: int = 2000
    bound: int = 10
    coeff: int = 9
    seed: int = 0


def random_factor(rng: random.Random, degree: int, coeff: int) -> LaurentPolynomial:
    while True:
        c = {e: Fraction(rng.randint(-coeff, coeff)) for e in range(degree + 1)}
        if c[0] and c[degree]:
            return LaurentPolynomial(c)


def random_product(rng: random.Random, cfg: Config) -> LaurentPolynomial:
    out = LaurentPolynomial.constant(1)
    for _ in range(rng.randint(0, 2)):
        out = out * random_factor(rng, 1, cfg.coeff)
    for _ in range(rng.randint(0, 2)):
        out = out * random_factor(rng, 2, cfg.coeff)
    if normalize(out).is_constant():
        out = out * random_factor(rng, 1, cfg.coeff)
    return out


def run(cfg: Config) -> Counter:
    rng = random.Random(cfg.seed)
    tally: Counter = Counter()
    start = time.perf_counter()
    for _ in range(cfg.pairs):
        p, q = random_product(rng, cfg), random_product(rng, cfg)
        rel = strongly_coprime(p, q).relation
        first = oracle_first_failure(p, q, cfg.bound)
        tally[(rel.value, "oracle-true" if first is None else "oracle-false")] += 1
        if rel is Relation.STRONGLY_COPRIME and first is not None:
            print(f"REFUTED: p={p}  q={q}  first failing B={first}")
    for key, n in sorted(tally.items()):
        print(f"{key[0]:>20} {key[1]:>13} {n:7d}")
    print(f"{cfg.pairs} pairs in {time.perf_counter() - start:.1f}s")
    return tally


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--pairs", type=int, default=Config.pairs)
    ap.add_argument("--bound", type=int, default=Config.bound)
    ap.add_argument("--coeff", type=int, default=Config.coeff)
    ap.add_argument("--seed", type=int, default=Config.seed)
    run(Config(**vars(ap.parse_args())))
