"""Time the surjectivity check for the five-line map and the construction of G.

    python scripts/bench_sigma.py --seeds 10 --rationals
"""

import argparse
import random
import statistics
import time
from dataclasses import dataclass

from instanton4 import constructions as C
from instanton4.field import Field
from instanton4.geometry import random_skew_config


@dataclass
class BenchConfig:
    seeds: int = 10
    p: int | None = 32003
    with_g: bool = True


def main(conf: BenchConfig) -> None:
    field = Field(conf.p)
    epi, g = [], []
    for seed in range(conf.seeds):
        cfg = random_skew_config(5, seed, field)
        s = C.sigma(cfg, C.random_coefficients(random.Random(seed), field))
        t = time.perf_counter()
        rep = C.sigma_is_epi(s, cfg.union_ideal())
        epi.append(time.perf_counter() - t)
        line = f"seed {seed:3d}  epi {rep.status} {epi[-1]:6.2f}s"
        if conf.with_g:
            t = time.perf_counter()
            _, grep = C.build_G(s, check_epi=False)
            g.append(time.perf_counter() - t)
            line += f"  G {grep.status} {g[-1]:6.2f}s"
        print(line)
    print(f"{field}: epi median {statistics.median(epi):.2f}s max {max(epi):.2f}s")
    if g:
        print(f"{field}: G   median {statistics.median(g):.2f}s max {max(g):.2f}s")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    ap.add_argument("--seeds", type=int, default=BenchConfig.seeds)
    g = ap.add_mutually_exclusive_group()
    g.add_argument("--p", type=int, default=32003)
    g.add_argument("--rationals", action="store_true")
    ap.add_argument("--no-g", action="store_true", help="skip building G")
    a = ap.parse_args()
    raise SystemExit(main(BenchConfig(a.seeds, None if a.rationals else a.p, not a.no_g)))
