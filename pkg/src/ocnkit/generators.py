"""Random instance families for property tests, acceptance runs and scripts."""

from __future__ import annotations

import random

from ocnkit.core import Ocn, Transition


def random_ocn(rng: random.Random, n_states: int, alphabet=("a",), norm: int = 2,
               density: float = 0.35, deterministic: bool = False,
               accept_prob: float = 0.5) -> Ocn:
    states = tuple(f"q{i}" for i in range(n_states))
    trans = []
    for p in states:
        for a in alphabet:
            if deterministic:
                if rng.random() < 0.85:
                    trans.append(Transition(p, a, rng.randint(-norm, norm), rng.choice(states)))
                continue
            for q in states:
                for _ in range(2):
                    if rng.random() < density / 2:
                        trans.append(Transition(p, a, rng.randint(-norm, norm), q))
    accepting = frozenset(q for q in states if rng.random() < accept_prob)
    return Ocn(states, tuple(alphabet), states[0], tuple(trans), accepting)


def random_unary_ocn(rng: random.Random, max_states: int = 4, max_norm: int = 2) -> Ocn:
    return random_ocn(rng, rng.randint(1, max_states), ("a",), rng.randint(0, max_norm),
                      density=rng.uniform(0.2, 0.6))


def random_deterministic(rng: random.Random, max_states: int = 5, max_letters: int = 3,
                         max_norm: int = 2) -> Ocn:
    letters = ("a", "b", "c")[: rng.randint(1, max_letters)]
    return random_ocn(rng, rng.randint(1, max_states), letters, rng.randint(0, max_norm),
                      deterministic=True, accept_prob=0.8)


def random_structurally_unambiguous(rng: random.Random, n_states: int, alphabet=("a",),
                                    norm: int = 2, tries: int = 1000,
                                    accept_prob: float = 0.5) -> Ocn:
    """Rejection-sample a net whose underlying automaton is unambiguous."""
    from ocnkit.unamb import structural_ambiguity

    for _ in range(tries):
        net = random_ocn(rng, n_states, alphabet, norm, density=rng.uniform(0.15, 0.45),
                         accept_prob=accept_prob)
        if not structural_ambiguity(net, net.initial).ambiguous:
            return net
    raise RuntimeError("no unambiguous net found")


def random_path(rng: random.Random, ocn: Ocn, c0: int, length: int) -> tuple[Transition, ...]:
    """A random walk from the initial state that stays executable from ``c0``; may stop early."""
    path, q, c = [], ocn.initial, c0
    for _ in range(length):
        options = [t for t in ocn.outgoing[q] if c + t.effect >= 0]
        if not options:
            break
        t = rng.choice(options)
        path.append(t)
        q, c = t.dst, c + t.effect
    return tuple(path)
