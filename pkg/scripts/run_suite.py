"""Run every verifier over a range of seeds and tabulate pass counts.

    python scripts/run_suite.py --seeds 20 --out suite.json
"""

import argparse
import random
import time
from collections import Counter
from dataclasses import asdict, dataclass

from instanton4 import constructions as C
from instanton4.field import Field
from instanton4.geometry import random_skew_config
from instanton4.io import write_json


@dataclass
class SuiteConfig:
    seeds: int = 20
    p: int = 32003
    start: int = 0
    out: str | None = None


def run_seed(seed: int, field: Field) -> list:
    cfg = random_skew_config(5, seed, field)
    s = C.sigma(cfg, C.random_coefficients(random.Random(seed), field))
    reports = [
        C.sigma_is_epi(s, cfg.union_ideal()),
        C.check_cohomology_IY3(cfg),
        C.triple_quadric(cfg),
        C.build_G(s)[1],
    ]
    four = random_skew_config(4, seed, field)
    reports += [C.check_l1l4x_resolution(four), C.check_degeneracy(four)]
    for rep in reports:
        rep.seed = seed
    return [r.to_json() for r in reports]


def main(conf: SuiteConfig) -> int:
    field = Field(conf.p)
    passed, total, all_reports = Counter(), Counter(), []
    for seed in range(conf.start, conf.start + conf.seeds):
        t = time.perf_counter()
        reps = run_seed(seed, field)
        for r in reps:
            total[r["check"]] += 1
            passed[r["check"]] += r["status"] == "pass"
        all_reports += reps
        print(f"seed {seed:3d}: {sum(r['status'] == 'pass' for r in reps)}/{len(reps)} pass ({time.perf_counter() - t:.1f}s)")
    for name in sorted(total):
        print(f"{name:<22} {passed[name]}/{total[name]}")
    if conf.out:
        write_json(conf.out, {"config": asdict(conf), "reports": all_reports})
    return 0 if passed == total else 1


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    ap.add_argument("--seeds", type=int, default=SuiteConfig.seeds)
    ap.add_argument("--start", type=int, default=SuiteConfig.start)
    ap.add_argument("--p", type=int, default=SuiteConfig.p)
    ap.add_argument("--out", default=None)
    a = ap.parse_args()
    raise SystemExit(main(SuiteConfig(a.seeds, a.p, a.start, a.out)))
