"""Time every decider on a seeded random family and report verdict counts.

    python3 scripts/bench_deciders.py --count 200 --seed 1
"""

from __future__ import annotations

import argparse
import random
import statistics
import time
from collections import Counter, defaultdict
from dataclasses import dataclass

from ocnkit.det import (decide_det_bounded_universality, decide_det_iv_universality,
                        decide_det_universality)
from ocnkit.generators import random_deterministic, random_structurally_unambiguous, random_unary_ocn
from ocnkit.unamb import (decide_suocn_iv_universality, decide_uocn_bounded_universality,
                          decide_uocn_universality_unary)
from ocnkit.unary import (decide_bounded_universality_unary, decide_iv_universality_unary,
                          decide_universality_unary)


@dataclass
class BenchConfig:
    count: int = 200
    seed: int = 1
    max_states: int = 4
    max_norm: int = 2
    max_c0: int = 3


def families(cfg: BenchConfig):
    rng = random.Random(cfg.seed)
    unary = [random_unary_ocn(rng, cfg.max_states, cfg.max_norm) for _ in range(cfg.count)]
    det = [random_deterministic(rng, cfg.max_states + 1, 3, cfg.max_norm) for _ in range(cfg.count)]
    unamb = [random_structurally_unambiguous(rng, rng.randint(1, cfg.max_states), ("a", "b"),
                                             cfg.max_norm) for _ in range(cfg.count)]
    unamb_unary = [random_structurally_unambiguous(rng, rng.randint(1, cfg.max_states), ("a",),
                                                   cfg.max_norm) for _ in range(cfg.count)]
    c0s = [rng.randint(0, cfg.max_c0) for _ in range(cfg.count)]
    return {"unary": unary, "det": det, "unamb": unamb, "unamb-unary": unamb_unary}, c0s


DECIDERS = {
    "unary": [("universal", decide_universality_unary),
              ("iv", lambda n, s, c: decide_iv_universality_unary(n, s)),
              ("bounded", decide_bounded_universality_unary)],
    "det": [("universal", decide_det_universality),
            ("iv", lambda n, s, c: decide_det_iv_universality(n, s)),
            ("bounded", decide_det_bounded_universality)],
    "unamb": [("iv", lambda n, s, c: decide_suocn_iv_universality(n, s)),
              ("bounded", decide_uocn_bounded_universality)],
    "unamb-unary": [("universal", decide_uocn_universality_unary)],
}


def run(cfg: BenchConfig) -> None:
    nets, c0s = families(cfg)
    # the first unary call compiles the numba sweep; keep it out of the timings
    decide_universality_unary(nets["unary"][0], nets["unary"][0].initial, 0)
    print(f"{'family':12} {'problem':10} {'univ':>5} {'not':>5} {'median ms':>10} {'max ms':>9}")
    for fam, deciders in DECIDERS.items():
        for problem, fn in deciders:
            times, verdicts = [], Counter()
            for net, c0 in zip(nets[fam], c0s):
                start = time.perf_counter()
                v = fn(net, net.initial, c0)
                times.append((time.perf_counter() - start) * 1e3)
                verdicts[v.universal] += 1
            print(f"{fam:12} {problem:10} {verdicts[True]:5} {verdicts[False]:5} "
                  f"{statistics.median(times):10.2f} {max(times):9.2f}")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name, default in vars(BenchConfig()).items():
        ap.add_argument(f"--{name.replace('_', '-')}", type=int, default=default)
    cfg = BenchConfig(**vars(ap.parse_args()))
    run(cfg)


if __name__ == "__main__":
    main()
