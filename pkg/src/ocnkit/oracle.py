"""Brute-force reference semantics used to cross-check the deciders.

Everything here favours obviousness over speed and refuses inputs above a
fixed scale, so a test suite cannot silently wander into exponential cases.
"""

from __future__ import annotations

from collections import deque
from itertools import product
from functools import lru_cache

from ocnkit.core import Ocn, OcnError, Transition


class ScaleLimit(OcnError):
    pass


def _limit(cond: bool, what: str) -> None:
    if not cond:
        raise ScaleLimit(what)


def oracle_accepts(ocn: Ocn, s0: str, c0: int, word, bound: int | None = None) -> bool:
    """Search every run on ``word`` (optionally bounded by ``bound``) for an accepting one."""
    word = ocn.check_word(word)
    _limit(len(word) <= 12, "oracle_accepts handles words of length <= 12")
    if bound is not None and c0 > bound:
        return False

    @lru_cache(maxsize=None)
    def search(i: int, q: str, c: int) -> bool:
        if i == len(word):
            return q in ocn.accepting
        for t in ocn.successors(q, word[i]):
            c2 = c + t.effect
            if c2 < 0 or (bound is not None and c2 > bound):
                continue
            if search(i + 1, t.dst, c2):
                return True
        return False

    return search(0, s0, c0)


def oracle_count_runs(ocn: Ocn, s0: str, c0: int, word) -> int:
    """Number of accepting runs on ``word``, distinguished as transition sequences."""
    word = ocn.check_word(word)
    _limit(len(word) <= 10, "oracle_count_runs handles words of length <= 10")

    @lru_cache(maxsize=None)
    def count(i: int, q: str, c: int) -> int:
        if i == len(word):
            return int(q in ocn.accepting)
        return sum(count(i + 1, t.dst, c + t.effect)
                   for t in ocn.successors(q, word[i]) if c + t.effect >= 0)

    return count(0, s0, c0)


def oracle_unary_table(ocn: Ocn, s0: str, c0: int, N: int) -> list[bool]:
    """Entry n tells whether a^n is accepted, by a plain per-length max-counter sweep."""
    if not ocn.is_unary:
        raise OcnError("oracle_unary_table needs a one-letter alphabet")
    ocn.check_state(s0)
    best = {s0: c0}
    out = []
    for _ in range(N + 1):
        out.append(any(q in ocn.accepting for q in best))
        nxt: dict[str, int] = {}
        for q, c in best.items():
            for t in ocn.outgoing[q]:
                c2 = c + t.effect
                if c2 >= 0 and c2 > nxt.get(t.dst, -1):
                    nxt[t.dst] = c2
        best = nxt
    return out


def oracle_unary_bounded_table(ocn: Ocn, s0: str, c0: int, b: int, N: int) -> list[bool]:
    """Bounded variant: bit c of ``reach[q]`` is set when (q, c) is reachable under ceiling ``b``."""
    if not ocn.is_unary:
        raise OcnError("oracle_unary_bounded_table needs a one-letter alphabet")
    ocn.check_state(s0)
    if not 0 <= c0 <= b:
        raise OcnError(f"initial counter {c0} is outside 0..{b}")
    # no run of length N climbs above c0 + N * norm
    full = (1 << (min(b, c0 + N * ocn.norm) + 1)) - 1
    reach = {s0: 1 << c0}
    out = []
    for _ in range(N + 1):
        out.append(any(q in ocn.accepting for q in reach))
        nxt: dict[str, int] = {}
        for q, bits in reach.items():
            for t in ocn.outgoing[q]:
                moved = (bits << t.effect) & full if t.effect >= 0 else bits >> -t.effect
                if moved:
                    nxt[t.dst] = nxt.get(t.dst, 0) | moved
        reach = nxt
    return out


def oracle_enumerate_simple_cycles(ocn: Ocn) -> list[tuple[Transition, ...]]:
    """All simple cycles, each rotation and each choice of parallel transition counted separately."""
    _limit(len(ocn.states) <= 6, "oracle_enumerate_simple_cycles handles at most 6 states")
    cycles = []

    def dfs(start, q, path, visited):
        for t in ocn.outgoing[q]:
            if t.dst == start:
                cycles.append(tuple(path + [t]))
            elif t.dst not in visited:
                visited.add(t.dst)
                dfs(start, t.dst, path + [t], visited)
                visited.discard(t.dst)

    for s in ocn.states:
        dfs(s, s, [], {s})
    return cycles


def oracle_first_rejected(ocn: Ocn, s0: str, c0: int, max_len: int,
                          bound: int | None = None) -> tuple[str, ...] | None:
    """Shortest word of length <= max_len outside the (bounded) language, for deterministic nets.

    Each word has at most one run, so exploring (state, counter) pairs breadth
    first visits every word's run.
    """
    if not ocn.is_deterministic:
        raise OcnError("oracle_first_rejected needs a deterministic net")
    if bound is not None and c0 > bound:
        return ()
    seen = {(s0, c0)}
    frontier = deque([(s0, c0, ())])
    while frontier:
        q, c, w = frontier.popleft()
        if q not in ocn.accepting:
            return w
        if len(w) == max_len:
            continue
        for a in ocn.alphabet:
            ts = ocn.successors(q, a)
            if not ts:
                return w + (a,)
            c2 = c + ts[0].effect
            if c2 < 0 or (bound is not None and c2 > bound):
                return w + (a,)
            if (ts[0].dst, c2) not in seen:
                seen.add((ts[0].dst, c2))
                frontier.append((ts[0].dst, c2, w + (a,)))
    return None


def oracle_nfa_rejected(nfa: Ocn, s0: str) -> tuple[str, ...] | None:
    """Shortest word rejected by the underlying automaton, by subset construction."""
    _limit(len(nfa.states) <= 12, "oracle_nfa_rejected handles at most 12 states")
    start = frozenset([s0])
    seen = {start}
    frontier = deque([(start, ())])
    while frontier:
        subset, w = frontier.popleft()
        if not subset & nfa.accepting:
            return w
        for a in nfa.alphabet:
            nxt = frozenset(t.dst for q in subset for t in nfa.successors(q, a))
            if nxt not in seen:
                seen.add(nxt)
                frontier.append((nxt, w + (a,)))
    return None


def oracle_is_ambiguous(ocn: Ocn, s0: str, c0: int, max_len: int) -> tuple[str, ...] | None:
    """First word of length <= max_len with two or more accepting runs."""
    for n in range(max_len + 1):
        for w in product(ocn.alphabet, repeat=n):
            if oracle_count_runs(ocn, s0, c0, w) >= 2:
                return w
    return None
