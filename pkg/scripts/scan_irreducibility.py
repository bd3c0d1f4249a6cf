"""Irreducibility of Delta_m and the t_* cone check over a range of twists."""

import argparse
import time
from dataclasses import dataclass

from knotcert.obstruction import irreducibility_scan, tstar_check


@dataclass
class Config:
    m_max: int = 1_000_000
    tstar_range: int = 10
    k_max: int = 50


def main(cfg: Config) -> None:
    start = time.perf_counter()
    cert = irreducibility_scan(cfg.m_max)
    print(f"irreducibility scan to {cfg.m_max}: {cert.verdict.value} "
          f"({cert.evidence['pairs_checked']} associate pairs checked, {time.perf_counter() - start:.2f}s)")
    for m in [m for k in range(1, cfg.tstar_range + 1) for m in (k, -k)]:
        c = tstar_check(m, cfg.k_max)
        growth = len(c.evidence["M_k_22"][-1])
        print(f"t_* m={m:+3d}: {c.verdict.value}  (M^{cfg.k_max})_22 has {growth} digits")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--m-max", type=int, default=Config.m_max)
    ap.add_argument("--tstar-range", type=int, default=Config.tstar_range)
    ap.add_argument("--k-max", type=int, default=Config.k_max)
    main(Config(**vars(ap.parse_args())))
