"""Unambiguous nets: ambiguity tests, counting universality of UFAs, counter expansion.

A net is unambiguous from a configuration if every word has at most one
accepting run, and structurally unambiguous if that already holds for its
underlying automaton (which implies it for every initial counter).
"""

from __future__ import annotations

import warnings
from collections import deque
from dataclasses import dataclass

from ocnkit.core import (
    Ocn,
    OcnError,
    Transition,
    Verdict,
    _require_unary,
    path_measures,
    path_word,
)


class AmbiguousNet(OcnError):
    def __init__(self, report: AmbiguityReport):
        super().__init__(f"net is ambiguous: {report.describe()}")
        self.report = report


@dataclass(frozen=True)
class AmbiguityReport:
    """``witness`` is ``(word, run, other_run)`` with two distinct accepting runs.

    ``verified`` is false when the search could neither confirm nor refute
    ambiguity; such nets are treated as unambiguous with a warning.
    """

    ambiguous: bool
    witness: tuple | None = None
    verified: bool = True

    def __post_init__(self):
        if self.ambiguous and self.witness is None:
            raise OcnError("an ambiguity report needs a witness")

    def describe(self) -> str:
        if not self.verified:
            return "unambiguity not verified"
        if not self.ambiguous:
            return "unambiguous"
        word, run1, run2 = self.witness
        return (f"word '{' '.join(word)}' has two accepting runs: "
                + " ; ".join(map(str, run1)) + "  vs  " + " ; ".join(map(str, run2)))

    __str__ = describe


# ---------------------------------------------------------------------------
# ambiguity


def _product_search(ocn: Ocn, start, step, accepting):
    """Breadth-first search of a product graph for a diverged accepting node.

    ``step(node, t1, t2)`` gives the successor for a pair of transitions on
    the same letter, or None.  Returns the word and both transition lists.
    """
    root = (start, False)
    parent = {root: None}
    queue = deque([root])
    while queue:
        node = queue.popleft()
        inner, diverged = node
        if diverged and accepting(inner):
            runs1, runs2 = [], []
            while parent[node] is not None:
                node, t1, t2 = parent[node]
                runs1.append(t1)
                runs2.append(t2)
            runs1.reverse()
            runs2.reverse()
            return path_word(runs1), tuple(runs1), tuple(runs2)
        p, q = inner[0], inner[1]
        for a in ocn.alphabet:
            for t1 in ocn.successors(p, a):
                for t2 in ocn.successors(q, a):
                    nxt = step(inner, t1, t2)
                    if nxt is None:
                        continue
                    child = (nxt, diverged or t1 != t2)
                    if child not in parent:
                        parent[child] = (node, t1, t2)
                        queue.append(child)
    return None


def structural_ambiguity(ocn: Ocn, s0: str) -> AmbiguityReport:
    """Ambiguity of the underlying automaton, keeping parallel transitions apart."""
    ocn.check_state(s0)
    found = _product_search(
        ocn, (s0, s0),
        lambda inner, t1, t2: (t1.dst, t2.dst),
        lambda inner: inner[0] in ocn.accepting and inner[1] in ocn.accepting,
    )
    return AmbiguityReport(True, found) if found else AmbiguityReport(False)


def is_unambiguous_nfa(nfa: Ocn, s0: str) -> AmbiguityReport:
    if any(t.effect for t in nfa.transitions):
        raise OcnError("is_unambiguous_nfa needs zero effects; use structural_ambiguity for nets")
    return structural_ambiguity(nfa, s0)


def count_runs(ocn: Ocn, s0: str, c0: int, word, bound: int | None = None) -> int:
    """Number of accepting runs on ``word``, by a counting sweep over configurations."""
    word = ocn.check_word(word)
    cur = {(s0, c0): 1}
    for a in word:
        nxt: dict = {}
        for (q, c), k in cur.items():
            for t in ocn.successors(q, a):
                c2 = c + t.effect
                if c2 < 0 or (bound is not None and c2 > bound):
                    continue
                nxt[(t.dst, c2)] = nxt.get((t.dst, c2), 0) + k
        cur = nxt
    return sum(k for (q, _), k in cur.items() if q in ocn.accepting)


def semantic_ambiguity(ocn: Ocn, s0: str, c0: int, cap: int | None = None) -> AmbiguityReport:
    """Ambiguity of the net from (s0, c0).

    Structural unambiguity settles it at once.  Otherwise pairs of runs are
    explored with counters tracked exactly up to ``cap`` and abstracted
    above it; the abstraction only adds runs, so finding nothing proves
    unambiguity, while a candidate word is confirmed by exact run counting.
    """
    if c0 < 0:
        raise OcnError("initial counter must be non-negative")
    structural = structural_ambiguity(ocn, s0)
    if not structural.ambiguous:
        return structural
    if cap is None:
        cap = c0 + 2 * len(ocn.states) * ocn.norm

    def move(c, e):
        if c is None:
            return None
        c2 = c + e
        if c2 < 0:
            return -1
        return None if c2 > cap else c2

    def step(inner, t1, t2):
        p, q, c1, c2 = inner
        n1, n2 = move(c1, t1.effect), move(c2, t2.effect)
        if n1 == -1 or n2 == -1:
            return None
        return (t1.dst, t2.dst, n1, n2)

    start_counter = c0 if c0 <= cap else None
    found = _product_search(
        ocn, (s0, s0, start_counter, start_counter), step,
        lambda inner: inner[0] in ocn.accepting and inner[1] in ocn.accepting,
    )
    if found is None:
        return AmbiguityReport(False)
    word, run1, run2 = found
    if count_runs(ocn, s0, c0, word) >= 2:
        return AmbiguityReport(True, _two_runs(ocn, s0, c0, word))
    return AmbiguityReport(False, verified=False)


def _two_runs(ocn: Ocn, s0: str, c0: int, word) -> tuple:
    """Two distinct accepting runs on ``word`` (which must have at least two)."""
    runs = []

    def search(i, q, c, path):
        if len(runs) == 2:
            return
        if i == len(word):
            if q in ocn.accepting:
                runs.append(tuple(path))
            return
        for t in ocn.successors(q, word[i]):
            if c + t.effect >= 0:
                search(i + 1, t.dst, c + t.effect, path + [t])

    search(0, s0, c0, [])
    return tuple(word), runs[0], runs[1]


def require_unambiguous(ocn: Ocn, s0: str, c0: int) -> AmbiguityReport:
    report = semantic_ambiguity(ocn, s0, c0)
    if report.ambiguous:
        raise AmbiguousNet(report)
    if not report.verified:
        warnings.warn("unambiguity of the net could not be verified; proceeding as if unambiguous",
                      stacklevel=3)
    return report


# ---------------------------------------------------------------------------
# counting universality


def _counts(ufa: Ocn, s0: str, length: int) -> list[int]:
    """a_n for n <= length: accepting runs of length n, summed over all words."""
    out = []
    vec = {s0: 1}
    for n in range(length + 1):
        out.append(sum(k for q, k in vec.items() if q in ufa.accepting))
        if n == length:
            break
        nxt: dict[str, int] = {}
        for q, k in vec.items():
            for t in ufa.outgoing[q]:
                nxt[t.dst] = nxt.get(t.dst, 0) + k
        vec = nxt
    return out


def _completions(ufa: Ocn, length: int) -> list[dict[str, int]]:
    """``table[m][q]``: accepting runs of length m starting in q."""
    table = [{q: int(q in ufa.accepting) for q in ufa.states}]
    for _ in range(length):
        prev = table[-1]
        table.append({q: sum(prev[t.dst] for t in ufa.outgoing[q]) for q in ufa.states})
    return table


def _rejected_word(ufa: Ocn, s0: str, n: int) -> tuple[str, ...]:
    """A word of length n without accepting run, given that one exists.

    Under unambiguity the accepted words of length n extending a prefix are
    counted exactly by runs, so each step picks a letter whose extensions
    are not all accepted.
    """
    sigma = len(ufa.alphabet)
    ahead = _completions(ufa, n)
    vec, word = {s0: 1}, []
    for i in range(n):
        rest = n - i - 1
        for a in ufa.alphabet:
            nxt: dict[str, int] = {}
            for q, k in vec.items():
                for t in ufa.successors(q, a):
                    nxt[t.dst] = nxt.get(t.dst, 0) + k
            if sum(k * ahead[rest][q] for q, k in nxt.items()) < sigma ** rest:
                vec = nxt
                word.append(a)
                break
        else:
            raise AssertionError("deficiency vanished; automaton is ambiguous")
    return tuple(word)


def ufa_universal_counting(ufa: Ocn, s0: str, check: bool = True) -> Verdict:
    """Universality of an unambiguous zero-effect net by counting accepting runs.

    With unambiguity, a_n counts the accepted words of length n, and the
    deficiency |Sigma|^n - a_n obeys a linear recurrence of order at most
    |Q| + 1, so it vanishes everywhere once it vanishes for n <= |Q| + 1.
    """
    ufa.check_state(s0)
    if any(t.effect for t in ufa.transitions):
        raise OcnError("ufa_universal_counting needs zero effects")
    if check:
        report = structural_ambiguity(ufa, s0)
        if report.ambiguous:
            raise AmbiguousNet(report)
    sigma = len(ufa.alphabet)
    horizon = len(ufa.states) + 1
    for n, a_n in enumerate(_counts(ufa, s0, horizon)):
        if a_n < sigma ** n:
            return Verdict(False, _rejected_word(ufa, s0, n), lemma="ufa-run-counting",
                           notes=(f"{sigma ** n - a_n} words of length {n} are rejected",))
    return Verdict(True, lemma="ufa-run-counting")


# ---------------------------------------------------------------------------
# counter expansion

OVERFLOW_COPY = "overflow-copy"
REJECT_OVER_CAP = "reject-over-cap"


def layer_name(q: str, c: int | None) -> str:
    return f"{q}@{'over' if c is None else c}"


def counter_expand(ocn: Ocn, s0: str, c0: int, cap: int, mode: str = OVERFLOW_COPY) -> tuple[Ocn, str]:
    """Finite automaton tracking the counter in its states up to ``cap``.

    A step that would push the counter above ``cap`` moves into a copy of the
    underlying automaton (``overflow-copy``) or is dropped
    (``reject-over-cap``); a step below 0 is always dropped.
    """
    ocn.check_state(s0)
    if mode not in (OVERFLOW_COPY, REJECT_OVER_CAP):
        raise OcnError(f"unknown expansion mode {mode!r}")
    if not 0 <= c0 <= cap:
        raise OcnError(f"initial counter {c0} must lie in [0, {cap}]")
    states, trans = [], []
    for q in ocn.states:
        states += [layer_name(q, c) for c in range(cap + 1)]
    if mode == OVERFLOW_COPY:
        states += [layer_name(q, None) for q in ocn.states]
    for t in ocn.transitions:
        for c in range(cap + 1):
            c2 = c + t.effect
            if c2 < 0:
                continue
            if c2 <= cap:
                trans.append(Transition(layer_name(t.src, c), t.letter, 0, layer_name(t.dst, c2)))
            elif mode == OVERFLOW_COPY:
                trans.append(Transition(layer_name(t.src, c), t.letter, 0, layer_name(t.dst, None)))
        if mode == OVERFLOW_COPY:
            trans.append(Transition(layer_name(t.src, None), t.letter, 0, layer_name(t.dst, None)))
    accepting = frozenset(s for s in states if s.rsplit("@", 1)[0] in ocn.accepting)
    start = layer_name(s0, c0)
    nfa = Ocn(tuple(states), ocn.alphabet, start, tuple(trans), accepting, name=f"{ocn.name}-expanded")
    return nfa.restrict(nfa.reachable(start)), start


# ---------------------------------------------------------------------------
# deciders


def _expanded_universality(nfa: Ocn, start: str, lemma: str, unary: bool) -> Verdict:
    """Universality of an expansion: run counting when unambiguous, layers otherwise (unary)."""
    if not structural_ambiguity(nfa, start).ambiguous:
        v = ufa_universal_counting(nfa, start, check=False)
        return Verdict(v.universal, v.witness, lemma=lemma, notes=v.notes)
    if not unary:
        raise AmbiguousNet(structural_ambiguity(nfa, start))
    # 2^|states| layers bound the lasso of subsets; the first repeat ends the search
    seen, layer, n = set(), frozenset([start]), 0
    while layer not in seen:
        if not layer & nfa.accepting:
            return Verdict(False, (nfa.alphabet[0],) * n, lemma=lemma)
        seen.add(layer)
        layer = frozenset(t.dst for q in layer for t in nfa.outgoing[q])
        n += 1
    return Verdict(True, lemma=lemma)


def decide_uocn_universality_unary(ocn: Ocn, s0: str, c0: int) -> Verdict:
    """Universality of an unambiguous unary net via its overflow-copy counter expansion."""
    _require_unary(ocn)
    if c0 < 0:
        raise OcnError("initial counter must be non-negative")
    require_unambiguous(ocn, s0, c0)
    cap = c0 + len(ocn.states) * ocn.norm
    nfa, start = counter_expand(ocn, s0, c0, cap, OVERFLOW_COPY)
    v = _expanded_universality(nfa, start, "uocn-unary-expansion", unary=True)
    return Verdict(v.universal, v.witness, lemma=v.lemma,
                   notes=v.notes + (f"counter expansion with cap {cap}",))


def structural_report(ocn: Ocn, s0: str) -> AmbiguityReport:
    report = structural_ambiguity(ocn, s0)
    if report.ambiguous:
        raise AmbiguousNet(report)
    return report


def _trim(ocn: Ocn, s0: str) -> Ocn:
    keep = ocn.reachable(s0) & ocn.coreachable()
    return ocn.with_initial(s0).restrict(keep | {s0})


def _doomed_word(net: Ocn, s0: str, c0: int, cycle) -> tuple[str, ...]:
    """Word of the unique accepting path through ``cycle``, iterated until the counter would go negative."""
    from ocnkit.det import _path_to

    tau1 = _path_to(net, s0, cycle[0].src)
    target = next(q for q in net.reachable(cycle[0].src) if q in net.accepting)
    tau2 = _path_to(net, cycle[0].src, target)
    k = max(0, (c0 + path_measures(tau1)[0]) // -path_measures(cycle)[0] + 1)
    return path_word(tau1 + cycle * k + tau2)


def suocn_iv_witness(ocn: Ocn, s0: str, c0: int) -> tuple[str, ...] | None:
    """A word rejected from (s0, c0) by a structurally unambiguous net that is not
    universal for any initial counter; None if a negative cycle is not the reason."""
    from ocnkit.unary import negative_simple_cycle

    net = _trim(ocn, s0)
    cycle = negative_simple_cycle(net, net.states)
    return None if cycle is None else _doomed_word(net, s0, c0, cycle)


def decide_suocn_iv_universality(ocn: Ocn, s0: str) -> Verdict:
    """Some initial counter makes a structurally unambiguous net universal iff the
    underlying automaton is universal and no useful negative cycle exists."""
    from ocnkit.unary import negative_simple_cycle

    structural_report(ocn, s0)
    net = _trim(ocn, s0)
    nfa = Ocn(net.states, net.alphabet, s0,
              tuple(Transition(t.src, t.letter, 0, t.dst) for t in net.transitions),
              net.accepting, name=net.name)
    v = ufa_universal_counting(nfa, s0, check=False)
    if not v.universal:
        return Verdict(False, v.witness, lemma="suocn-iv",
                       notes=("rejected by the underlying automaton, so from every initial counter",))
    cycle = negative_simple_cycle(net, net.states)
    if cycle is not None:
        return Verdict(False, _doomed_word(net, s0, 0, cycle), lemma="suocn-iv",
                       notes=("negative cycle on an accepting path; witness is for initial counter 0, "
                              "more iterations defeat larger counters",))
    counter = len(ocn.states) * ocn.norm
    return Verdict(True, parameter=counter, lemma="suocn-iv")


def decide_uocn_bounded_universality(ocn: Ocn, s0: str, c0: int) -> Verdict:
    """Bounded universality of an unambiguous net, decided on its expansion with ceiling c0 + |Q|*norm."""
    if c0 < 0:
        raise OcnError("initial counter must be non-negative")
    require_unambiguous(ocn, s0, c0)
    cap = c0 + len(ocn.states) * ocn.norm
    nfa, start = counter_expand(ocn, s0, c0, cap, REJECT_OVER_CAP)
    v = _expanded_universality(nfa, start, "uocn-bounded-expansion", unary=ocn.is_unary)
    if v.universal:
        return Verdict(True, parameter=cap, lemma=v.lemma)
    return Verdict(False, v.witness, lemma=v.lemma,
                   notes=v.notes + (f"witness is rejected under ceiling {cap}",))
