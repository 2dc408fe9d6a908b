"""Universality questions for nets over a one-letter alphabet.

Languages of such nets are sets of word lengths.  The deciders here split a
language into the words that have an accepting run through a pump state
(or a stable state) and a remainder, describe the first part with
eventually periodic lassos, and settle the remainder with exact sweeps.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable

from ocnkit import _sweep
from ocnkit.core import (
    Ocn,
    OcnError,
    Transition,
    Verdict,
    _require_unary,
    path_measures,
    underlying_nfa,
    unary_bounded_table,
    unary_table,
)

LCM_LIMIT = 10**6
NFA_STATE_LIMIT = 20


# ---------------------------------------------------------------------------
# bounds


@dataclass(frozen=True)
class Bounds:
    """Concrete polynomial bounds for a net with ``n_states`` states and norm ``norm``.

    Every value over-approximates the quantity it stands for; larger values
    only make tables longer.
    """

    n_states: int
    norm: int
    B1: int
    B2: int
    B3: int
    B4: int
    B5: int
    B6: int
    B7: int

    @classmethod
    def of(cls, ocn: Ocn) -> Bounds:
        q, d = len(ocn.states), ocn.norm
        b1 = 16 * (q + 1) ** 3 * (d + 1)
        b5 = q * (q * d) + (3 * q * d) * q
        b6 = b1 + (q + 1) * b5
        return cls(q, d, B1=b1, B2=b1 + q, B3=b1 + q, B4=16 * (q + 1) ** 3 + q,
                   B5=b5, B6=b6, B7=2 * b6 + b5)

    def pump_threshold(self, period: int) -> int:
        """Length after which pumping a cycle of length ``period`` covers every longer word."""
        return 2 * self.B1 + 2 * self.B1 * self.norm * period + period

    def stable_threshold(self) -> int:
        return 2 * self.B6 + 1


# ---------------------------------------------------------------------------
# lassos


@dataclass(frozen=True)
class UnaryLasso:
    """Eventually periodic set of naturals.

    ``n`` belongs to the set iff ``table[n]`` for ``n < threshold`` and
    ``table[threshold + (n - threshold) % period]`` otherwise.
    """

    threshold: int
    period: int
    table: tuple[bool, ...]

    def __post_init__(self):
        if self.threshold < 0 or self.period < 1:
            raise OcnError("a lasso needs threshold >= 0 and period >= 1")
        object.__setattr__(self, "table", tuple(bool(x) for x in self.table))
        if len(self.table) != self.threshold + self.period:
            raise OcnError("lasso table must have threshold + period entries")

    def accepts(self, n: int) -> bool:
        if n < 0:
            raise OcnError("lengths are non-negative")
        if n < self.threshold:
            return self.table[n]
        return self.table[self.threshold + (n - self.threshold) % self.period]

    @property
    def is_empty(self) -> bool:
        return not any(self.table)

    def minimized(self) -> UnaryLasso:
        """Same set with the smallest period, then the smallest threshold."""
        t, p, tab = self.threshold, self.period, self.table
        loop = tab[t:]
        for d in sorted(k for k in range(1, p + 1) if p % k == 0):
            if all(loop[i] == loop[i % d] for i in range(p)):
                p, loop = d, loop[:d]
                break
        while t > 0 and tab[t - 1] == loop[-1]:
            t -= 1
            loop = (tab[t],) + loop[:-1]
        return UnaryLasso(t, p, tab[:t] + loop)

    def __str__(self) -> str:
        bits = "".join("1" if x else "0" for x in self.table)
        return f"lasso T={self.threshold} p={self.period} table={bits}"

    @classmethod
    def parse(cls, text: str) -> UnaryLasso:
        try:
            head, t, p, tab = text.split()
            if head != "lasso" or not (t.startswith("T=") and p.startswith("p=")
                                       and tab.startswith("table=")):
                raise ValueError
            bits = tab[len("table="):]
            if set(bits) - {"0", "1"}:
                raise ValueError
            return cls(int(t[2:]), int(p[2:]), tuple(b == "1" for b in bits))
        except ValueError:
            raise OcnError(f"cannot parse lasso {text!r}") from None


def lasso_accepts(lasso: UnaryLasso, n: int) -> bool:
    return lasso.accepts(n)


def _union_coverage(lassos: list[UnaryLasso]) -> tuple[int, int, list[bool]]:
    """Threshold, period and per-residue coverage of the union of ``lassos``."""
    threshold = max((l.threshold for l in lassos), default=0)
    period = 1
    for l in lassos:
        period = math.lcm(period, l.period)
    if period > LCM_LIMIT:
        raise OcnError(f"period {period} of the lasso union exceeds {LCM_LIMIT}")
    covered = [any(l.accepts(threshold + i) for l in lassos) for i in range(period)]
    return threshold, period, covered


# ---------------------------------------------------------------------------
# pump and stable states


def _shortest_flat_cycle(ocn: Ocn, q: str, want) -> tuple[Transition, ...] | None:
    """Shortest cycle at ``q`` of length <= |Q| whose prefix effects stay >= 0 and whose effect satisfies ``want``.

    Breadth-first search over (state, running effect); the running effect of
    such a cycle never exceeds |Q| times the norm, so the space is finite.
    """
    start = (q, 0)
    parent: dict = {start: None}
    layer = [start]
    for _ in range(len(ocn.states)):
        nxt = []
        for node in layer:
            p, e = node
            for t in ocn.outgoing[p]:
                e2 = e + t.effect
                if e2 < 0:
                    continue
                if t.dst == q and want(e2):
                    cyc = [t]
                    while parent[node] is not None:
                        node, t2 = parent[node]
                        cyc.append(t2)
                    return tuple(reversed(cyc))
                child = (t.dst, e2)
                if child not in parent:
                    parent[child] = (node, t)
                    nxt.append(child)
        layer = nxt
    return None


def pump_cycles(ocn: Ocn) -> dict[str, tuple[Transition, ...]]:
    """Pump states with a shortest non-negative depth-0 cycle of length <= |Q| each."""
    _require_unary(ocn)
    out = {}
    for q in ocn.states:
        cyc = _shortest_flat_cycle(ocn, q, lambda e: e >= 0)
        if cyc is not None:
            out[q] = cyc
    return out


def pump_states(ocn: Ocn) -> frozenset[str]:
    return frozenset(pump_cycles(ocn))


def _components(ocn: Ocn) -> dict[str, frozenset[str]]:
    reach = {q: ocn.reachable(q) for q in ocn.states}
    return {q: frozenset(p for p in reach[q] if q in reach[p]) for q in ocn.states}


def negative_simple_cycle(ocn: Ocn, component: Iterable[str]) -> tuple[Transition, ...] | None:
    """A simple cycle of negative effect inside ``component``, by Bellman-Ford."""
    comp = set(component)
    edges = [t for t in ocn.transitions if t.src in comp and t.dst in comp]
    dist = {q: 0 for q in comp}
    pred: dict[str, Transition] = {}
    last = None
    for _ in range(len(comp)):
        last = None
        for t in edges:
            if dist[t.src] + t.effect < dist[t.dst]:
                dist[t.dst] = dist[t.src] + t.effect
                pred[t.dst] = t
                last = t.dst
        if last is None:
            return None
    q = last
    for _ in range(len(comp)):
        q = pred[q].src
    cyc, p = [], q
    while True:
        t = pred[p]
        cyc.append(t)
        p = t.src
        if p == q:
            break
    return tuple(reversed(cyc))


@dataclass(frozen=True)
class StableInfo:
    """Why a state is stable: a depth-0 zero cycle, or a positive one plus a negative cycle nearby."""

    zero: tuple[Transition, ...] | None
    positive: tuple[Transition, ...] | None
    negative: tuple[Transition, ...] | None


def stable_info(ocn: Ocn) -> dict[str, StableInfo]:
    _require_unary(ocn)
    comps = _components(ocn)
    neg_cache: dict[frozenset, tuple | None] = {}
    out = {}
    for q in ocn.states:
        zero = _shortest_flat_cycle(ocn, q, lambda e: e == 0)
        if zero is not None:
            out[q] = StableInfo(zero, None, None)
            continue
        pos = _shortest_flat_cycle(ocn, q, lambda e: e > 0)
        if pos is None:
            continue
        comp = comps[q]
        if comp not in neg_cache:
            neg_cache[comp] = negative_simple_cycle(ocn, comp)
        if neg_cache[comp] is not None:
            out[q] = StableInfo(None, pos, neg_cache[comp])
    return out


def stable_states(ocn: Ocn) -> frozenset[str]:
    return frozenset(stable_info(ocn))


def _shortest_path(ocn: Ocn, src: str, dst: str, inside: frozenset[str]) -> tuple[Transition, ...]:
    parent: dict[str, Transition | None] = {src: None}
    queue = deque([src])
    while queue:
        p = queue.popleft()
        if p == dst:
            break
        for t in ocn.outgoing[p]:
            if t.dst in inside and t.dst not in parent:
                parent[t.dst] = t
                queue.append(t.dst)
    path, p = [], dst
    while parent[p] is not None:
        path.append(parent[p])
        p = parent[p].src
    return tuple(reversed(path))


def zero_cycle_for(ocn: Ocn, q: str, info: StableInfo | None = None) -> tuple[Transition, ...]:
    """A cycle at the stable state ``q`` with effect 0 and small depth.

    Either the shortest depth-0 zero cycle at ``q``, or ``eta^(-d(chi)) chi^(d(eta))``
    for a positive depth-0 cycle ``eta`` at ``q`` and a negative cycle ``chi``
    that detours through a negative simple cycle of the component.
    """
    ocn.check_state(q)
    if info is None:
        info = stable_info(ocn).get(q)
    if info is None:
        raise OcnError(f"state {q!r} is not stable")
    if info.zero is not None:
        return info.zero
    eta, gamma = info.positive, info.negative
    x = gamma[0].src
    comp = _components(ocn)[q]
    tau1, tau2 = _shortest_path(ocn, q, x, comp), _shortest_path(ocn, x, q, comp)
    detour = path_measures(tau1 + tau2)[0]
    loop = path_measures(gamma)[0]
    s = detour // -loop + 1 if detour >= 0 else 0
    chi = tau1 + gamma * s + tau2
    d_eta, d_chi = path_measures(eta)[0], path_measures(chi)[0]
    return eta * (-d_chi) + chi * d_eta


# ---------------------------------------------------------------------------
# LangVia lassos


def _nfa_subset_lasso(nfa: Ocn, s0: str, via: str | None) -> UnaryLasso:
    """Exact lasso of the (via-restricted) language of a zero-effect unary net."""
    edges, n, start, acc = _sweep._product(nfa, s0, via)
    if n > 2 * NFA_STATE_LIMIT:
        raise OcnError(f"subset construction limited to {NFA_STATE_LIMIT} states")
    succ: dict[int, list[int]] = {}
    for p, q, _ in edges:
        succ.setdefault(p, []).append(q)
    seen: dict[frozenset, int] = {}
    table = []
    cur = frozenset([start])
    while cur not in seen:
        seen[cur] = len(table)
        table.append(any(acc[q] for q in cur))
        cur = frozenset(q for p in cur for q in succ.get(p, ()))
    t = seen[cur]
    return UnaryLasso(t, len(table) - t, tuple(table))


def _reperiod(lasso: UnaryLasso, period: int) -> UnaryLasso:
    """Re-express a set that is upward closed modulo ``period`` with that period."""
    t = lasso.threshold + lasso.period * period
    return UnaryLasso(t, period, tuple(lasso.accepts(n) for n in range(t + period)))


def langvia_lasso(ocn: Ocn, s0: str, c0: int, r: str, mode: str = "pump",
                  bounds: Bounds | None = None, cycle=None) -> UnaryLasso:
    """Lasso of the lengths accepted from ``(s0, c0)`` by a run visiting ``r``.

    ``mode`` picks the period: a shortest pump cycle of ``r`` (``pump``), the
    zero cycle of ``r`` (``stable``), or a pump cycle on the underlying
    automaton (``nfa``, which ignores ``c0``).
    """
    _require_unary(ocn)
    ocn.check_state(s0)
    ocn.check_state(r)
    if c0 < 0:
        raise OcnError("initial counter must be non-negative")
    bounds = bounds or Bounds.of(ocn)
    if mode in ("pump", "nfa"):
        if cycle is None:
            cycle = _shortest_flat_cycle(ocn, r, lambda e: e >= 0)
            if cycle is None:
                raise OcnError(f"state {r!r} is not a pump state")
        p = len(cycle)
        if mode == "nfa":
            return _reperiod(_nfa_subset_lasso(underlying_nfa(ocn), s0, r), p)
        t = bounds.pump_threshold(p)
    elif mode == "stable":
        if cycle is None:
            cycle = zero_cycle_for(ocn, r)
        p = len(cycle)
        t = bounds.stable_threshold()
    else:
        raise OcnError(f"unknown lasso mode {mode!r}")
    return UnaryLasso(t, p, tuple(unary_table(ocn, s0, c0, t + p - 1, via=r)))


# ---------------------------------------------------------------------------
# deciders


def word_of(ocn: Ocn, n: int) -> tuple[str, ...]:
    return (ocn.alphabet[0],) * n


def unary_nfa_universal(nfa: Ocn, s0: str) -> Verdict:
    """Universality of a zero-effect unary net by its sequence of reachable subsets."""
    _require_unary(nfa)
    nfa.check_state(s0)
    if any(t.effect for t in nfa.transitions):
        raise OcnError("unary_nfa_universal needs zero effects")
    if len(nfa.states) > NFA_STATE_LIMIT:
        raise OcnError(f"subset construction limited to {NFA_STATE_LIMIT} states")
    lasso = _nfa_subset_lasso(nfa, s0, None)
    for n, ok in enumerate(lasso.table):
        if not ok:
            return Verdict(False, word_of(nfa, n), lemma="unary-subset-sequence")
    return Verdict(True, lemma="unary-subset-sequence")


def _relevant(ocn: Ocn, s0: str, states) -> list[str]:
    live = ocn.reachable(s0) & ocn.coreachable()
    return [r for r in states if r in live]


def _negative_only_bound(ocn: Ocn, c0: int) -> int:
    """Longest accepted length of a run that never visits a pump state."""
    q = len(ocn.states)
    return q * (c0 + q * ocn.norm + 1)


def decide_universality_unary(ocn: Ocn, s0: str, c0: int) -> Verdict:
    """Is every length accepted from ``(s0, c0)``?

    Lengths with a run through a pump state form a union of lassos; the
    others are bounded in length, so an exact sweep up to a computable
    horizon finds the first rejected length whenever there is one.
    """
    _require_unary(ocn)
    ocn.check_state(s0)
    if c0 < 0:
        raise OcnError("initial counter must be non-negative")
    bounds = Bounds.of(ocn)
    cycles = pump_cycles(ocn)
    lassos = [langvia_lasso(ocn, s0, c0, r, "pump", bounds, cycles[r]).minimized()
              for r in _relevant(ocn, s0, cycles)]
    lassos = [l for l in lassos if not l.is_empty]
    threshold, period, covered = _union_coverage(lassos)
    horizon = max(threshold, _negative_only_bound(ocn, c0) + 1) + period
    table = unary_table(ocn, s0, c0, horizon)
    notes = (f"pump lassos cover lengths from {threshold} modulo {period}",)
    if all(covered) and all(table[:threshold]):
        return Verdict(True, lemma="unary-pump-residues", notes=notes)
    n = table.index(False)
    return Verdict(False, word_of(ocn, n), lemma="unary-pump-residues", notes=notes)


def decide_iv_universality_unary(ocn: Ocn, s0: str) -> Verdict:
    """Is there an initial counter from which every length is accepted?

    When there is, ``parameter`` holds one such counter.  When not, the
    witness is either rejected by the underlying automaton (hence from every
    counter) or represents a residue class whose long members are rejected
    from any fixed counter; the notes say how long.
    """
    _require_unary(ocn)
    ocn.check_state(s0)
    nfa_verdict = unary_nfa_universal(underlying_nfa(ocn), s0)
    if not nfa_verdict.universal:
        return Verdict(False, nfa_verdict.witness, lemma="iv-unary-underlying",
                       notes=("rejected by the underlying automaton, so from every initial counter",))
    cycles = pump_cycles(ocn)
    lassos = [langvia_lasso(ocn, s0, 0, r, "nfa", cycle=cycles[r]).minimized()
              for r in _relevant(ocn, s0, cycles)]
    lassos = [l for l in lassos if not l.is_empty]
    threshold, period, covered = _union_coverage(lassos)
    if not all(covered):
        n = threshold + covered.index(False)
        q = len(ocn.states)
        note = (f"lengths n = {n} mod {period} with n >= {threshold} avoid every pump state; "
                f"from counter c each such n > {q}*(c+{q * ocn.norm}+1) is rejected")
        return Verdict(False, word_of(ocn, n), lemma="iv-unary-pump-residues", notes=(note,))
    # every length below `longest` is accepted by the automaton; every
    # residue minimum of a pump lasso lies below it too
    longest = threshold + period
    counter = longest * ocn.norm
    return Verdict(True, parameter=counter, lemma="iv-unary-pump-residues",
                   notes=(f"initial counter {counter} makes every length accepted",))


def _bounded_rejection_horizon(ocn: Ocn, b: int) -> int:
    q = len(ocn.states)
    return q * q * (b + q * ocn.norm + 1) + q


def decide_bounded_universality_unary(ocn: Ocn, s0: str, c0: int) -> Verdict:
    """Is there a ceiling under which every length is accepted from ``(s0, c0)``?

    When there is, ``parameter`` holds one such ceiling.
    """
    _require_unary(ocn)
    ocn.check_state(s0)
    if c0 < 0:
        raise OcnError("initial counter must be non-negative")
    nfa_verdict = unary_nfa_universal(underlying_nfa(ocn), s0)
    if not nfa_verdict.universal:
        return Verdict(False, nfa_verdict.witness, lemma="bounded-unary-underlying",
                       notes=("rejected by the underlying automaton, so under every ceiling",))
    bounds = Bounds.of(ocn)
    info = stable_info(ocn)
    lassos = []
    for r in _relevant(ocn, s0, info):
        zeta = zero_cycle_for(ocn, r, info[r])
        lasso = langvia_lasso(ocn, s0, c0, r, "stable", bounds, zeta).minimized()
        if not lasso.is_empty:
            lassos.append(lasso)
    threshold, period, covered = _union_coverage(lassos)
    if not all(covered):
        i = covered.index(False)
        # lengths of the class avoid every stable state; under ceiling c0 a
        # member within the horizon below is rejected
        horizon = _bounded_rejection_horizon(ocn, c0) + threshold + period
        table = unary_bounded_table(ocn, s0, c0, c0, horizon)
        n = next(n for n in range(threshold + i, horizon + 1, period) if not table[n])
        note = (f"lengths n = {n} mod {period} with n >= {threshold} avoid every stable state, "
                f"so under any ceiling the long ones are rejected; {n} is rejected under ceiling {c0}")
        return Verdict(False, word_of(ocn, n), lemma="bounded-unary-stable-residues",
                       notes=(note,))
    ceiling = 2 * bounds.B6 + c0
    rest = [n for n in range(threshold) if not any(l.accepts(n) for l in lassos)]
    notes = [f"stable lassos cover lengths from {threshold} modulo {period}"]
    if rest:
        table = unary_bounded_table(ocn, s0, c0, ceiling, rest[-1])
        plain = unary_table(ocn, s0, c0, rest[-1])
        for n in rest:
            if table[n]:
                continue
            if not plain[n]:
                return Verdict(False, word_of(ocn, n), lemma="bounded-unary-remainder",
                               notes=(f"length {n} is rejected even without a ceiling",))
            wider = c0 + n * ocn.norm
            if wider > ceiling:
                notes.append(f"length {n} needs a ceiling above {2 * bounds.B6 + c0}; raised to {wider}")
                ceiling = wider
    return Verdict(True, parameter=ceiling, lemma="bounded-unary-stable-residues",
                   notes=tuple(notes))
