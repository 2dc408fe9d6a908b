"""Build the reduction nets for a few machines and check both proof directions at small scale.

For a halting machine every sampled word must be accepted (A from counter
n, A' under ceiling 2n, where n exceeds the halting time); for a machine that
runs forever the witness words must be rejected.
"""

from __future__ import annotations

import argparse
import random
from dataclasses import dataclass

from ocnkit.core import accepts, accepts_bounded
from ocnkit.reductions import (alphabet_of, build_net_A, build_net_Aprime, parse_2cm, run_2cm,
                               witness_word, witness_word_bounded)

MACHINES = {
    "halt-after-inc": "inc x\nhalt\n",
    "count-to-two": "inc x\ninc x\nifz y 4 4\nhalt\n",
    "spin": "goto 1\n",
    "count-forever": "inc x\nifz x 1 3\ngoto 1\n",
}


@dataclass
class DemoConfig:
    samples: int = 200
    max_word: int = 12
    max_n: int = 4
    budget: int = 50
    seed: int = 0


def demo(name: str, text: str, cfg: DemoConfig, rng: random.Random) -> None:
    m = parse_2cm(text)
    a, ap = build_net_A(m), build_net_Aprime(m)
    trace = run_2cm(m, cfg.budget)
    print(f"{name}: {m.size} lines, A has {len(a.states)} states / {len(a.transitions)} transitions "
          f"over {len(a.alphabet)} letters")
    if trace.halted:
        n = trace.steps + 1
        sigma = alphabet_of(m)
        bad = 0
        for _ in range(cfg.samples):
            w = [rng.choice(sigma) for _ in range(rng.randint(0, cfg.max_word))]
            bad += not accepts(a, "q0", n, w) or not accepts_bounded(ap, "q0'", 0, 2 * n, w)
        print(f"  halts after {trace.steps} steps; {cfg.samples - bad}/{cfg.samples} random words "
              f"accepted from counter {n} and under ceiling {2 * n}")
    else:
        for n in range(1, cfg.max_n + 1):
            ra = accepts(a, "q0", n, witness_word(m, n))
            rb = accepts_bounded(ap, "q0'", 0, n, witness_word_bounded(m, n))
            print(f"  n={n}: witness {'accepted' if ra else 'rejected'} by A from {n}, "
                  f"bounded witness {'accepted' if rb else 'rejected'} by A' under {n}")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name, default in vars(DemoConfig()).items():
        ap.add_argument(f"--{name.replace('_', '-')}", type=int, default=default)
    ap.add_argument("--machine", help="a two-counter machine file instead of the built-in examples")
    args = vars(ap.parse_args())
    path = args.pop("machine")
    cfg = DemoConfig(**args)
    rng = random.Random(cfg.seed)
    if path:
        with open(path, encoding="utf-8") as fh:
            demo(path, fh.read(), cfg, rng)
    else:
        for name, text in MACHINES.items():
            demo(name, text, cfg, rng)


if __name__ == "__main__":
    main()
