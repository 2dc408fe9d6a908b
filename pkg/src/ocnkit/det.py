"""Universality of deterministic one-counter nets via five structural conditions.

* C1: the underlying automaton accepts every word.
* C2: every word of length <= |Q| is accepted from the initial configuration.
* C3: the same under a counter ceiling.
* C4: no simple cycle has negative effect.
* C5: every simple cycle has effect 0.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field, replace

from ocnkit.core import Ocn, OcnError, Transition, Verdict, path_measures, path_word

INF = math.inf


# ---------------------------------------------------------------------------
# cycle spectrum


@dataclass(frozen=True)
class CycleSpectrum:
    """``minimum[k-1][i][j]`` / ``maximum[k-1][i][j]``: extreme effect of a walk of exactly k steps from state i to j."""

    states: tuple[str, ...]
    minimum: tuple
    maximum: tuple

    def diagonal(self, k: int, which: str = "min") -> list:
        mats = self.minimum if which == "min" else self.maximum
        m = mats[k - 1]
        return [m[i][i] for i in range(len(self.states))]

    @property
    def has_negative_cycle(self) -> bool:
        return any(v < 0 for k in range(1, len(self.states) + 1) for v in self.diagonal(k, "min"))

    @property
    def has_positive_cycle(self) -> bool:
        return any(v > 0 for k in range(1, len(self.states) + 1) for v in self.diagonal(k, "max"))


def _product(a, b, pick, worst):
    n = len(a)
    return tuple(
        tuple(pick((a[i][s] + b[s][j] for s in range(n) if a[i][s] != worst and b[s][j] != worst),
                   default=worst) for j in range(n))
        for i in range(n)
    )


def cycle_spectrum(ocn: Ocn) -> CycleSpectrum:
    """Min-plus and max-plus powers of the effect matrix up to |Q|.

    A closed walk of length <= |Q| splits into simple cycles, so a negative
    (positive) diagonal entry exposes a negative (positive) simple cycle and
    every simple cycle shows up on the diagonal of its own length.
    """
    idx = {q: i for i, q in enumerate(ocn.states)}
    n = len(idx)
    lo = [[INF] * n for _ in range(n)]
    hi = [[-INF] * n for _ in range(n)]
    for t in ocn.transitions:
        i, j = idx[t.src], idx[t.dst]
        lo[i][j] = min(lo[i][j], t.effect)
        hi[i][j] = max(hi[i][j], t.effect)
    lo1 = tuple(map(tuple, lo))
    hi1 = tuple(map(tuple, hi))
    mins, maxs = [lo1], [hi1]
    for _ in range(n - 1):
        mins.append(_product(mins[-1], lo1, min, INF))
        maxs.append(_product(maxs[-1], hi1, max, -INF))
    return CycleSpectrum(tuple(ocn.states), tuple(mins), tuple(maxs))


def _signed_cycle(ocn: Ocn, spectrum: CycleSpectrum, negative: bool) -> tuple[Transition, ...] | None:
    """A simple cycle of negative (or positive) effect, when the spectrum says one exists."""
    exists = spectrum.has_negative_cycle if negative else spectrum.has_positive_cycle
    if not exists:
        return None
    from ocnkit.unary import negative_simple_cycle

    if negative:
        return negative_simple_cycle(ocn, ocn.states)
    # a positive cycle is a negative one of the net with negated effects
    flipped = {replace(t, effect=-t.effect): t for t in ocn.transitions}
    cyc = negative_simple_cycle(replace(ocn, transitions=tuple(flipped)), ocn.states)
    return tuple(flipped[t] for t in cyc)


# ---------------------------------------------------------------------------
# conditions


@dataclass(frozen=True)
class ConditionReport:
    c1: bool
    c2: bool
    c3: bool
    c4: bool
    c5: bool
    ceiling: int
    c1_witness: tuple[str, ...] | None = None
    c2_witness: tuple[str, ...] | None = None
    c3_witness: tuple[str, ...] | None = None
    c4_cycle: tuple[Transition, ...] | None = None
    c5_cycle: tuple[Transition, ...] | None = None
    removed: tuple[str, ...] = field(default=())

    def __str__(self) -> str:
        flags = " ".join(f"C{i}={'t' if v else 'f'}"
                         for i, v in enumerate((self.c1, self.c2, self.c3, self.c4, self.c5), 1))
        lines = [flags]
        for name, word in (("C1", self.c1_witness), ("C2", self.c2_witness), ("C3", self.c3_witness)):
            if word is not None:
                lines.append(f"{name} word: {' '.join(word) or '(empty)'}")
        for name, cyc in (("C4", self.c4_cycle), ("C5", self.c5_cycle)):
            if cyc is not None:
                lines.append(f"{name} cycle: " + " ; ".join(map(str, cyc)))
        lines.append(f"C3 ceiling: {self.ceiling}")
        if self.removed:
            lines.append("unreachable states ignored: " + " ".join(self.removed))
        return "\n".join(lines)


def _require_det(ocn: Ocn) -> None:
    if not ocn.is_deterministic:
        raise OcnError("net is not deterministic: some state has two transitions on one letter")


def reachable_part(ocn: Ocn, s0: str) -> tuple[Ocn, tuple[str, ...]]:
    ocn.check_state(s0)
    keep = ocn.reachable(s0)
    removed = tuple(q for q in ocn.states if q not in keep)
    if not removed and ocn.initial == s0:
        return ocn, ()
    return ocn.with_initial(s0).restrict(keep), removed


def _dfa_rejected(ocn: Ocn, s0: str) -> tuple[str, ...] | None:
    """Shortest word rejected by the underlying automaton of a deterministic net."""
    if s0 not in ocn.accepting:
        return ()
    parent: dict[str, tuple[str, ...]] = {s0: ()}
    queue = deque([s0])
    while queue:
        q = queue.popleft()
        for a in ocn.alphabet:
            ts = ocn.successors(q, a)
            w = parent[q] + (a,)
            if not ts or ts[0].dst not in ocn.accepting:
                return w
            if ts[0].dst not in parent:
                parent[ts[0].dst] = w
                queue.append(ts[0].dst)
    return None


def _short_word_failure(ocn: Ocn, s0: str, c0: int, ceiling: int | None) -> tuple[str, ...] | None:
    """A word of length <= |Q| that is rejected from (s0, c0), optionally under ``ceiling``.

    Without a ceiling only the least counter per state matters, since a run
    that survives from a low counter survives from every higher one.  With a
    ceiling every (state, counter) pair in range is tracked.
    """
    if s0 not in ocn.accepting or (ceiling is not None and c0 > ceiling):
        return ()
    frontier: dict = {(s0, c0 if ceiling is not None else None): ((), c0)}
    for _ in range(len(ocn.states)):
        nxt: dict = {}
        for (q, _), (w, c) in frontier.items():
            for a in ocn.alphabet:
                ts = ocn.successors(q, a)
                w2 = w + (a,)
                if not ts:
                    return w2
                t = ts[0]
                c2 = c + t.effect
                if c2 < 0 or (ceiling is not None and c2 > ceiling) or t.dst not in ocn.accepting:
                    return w2
                key = (t.dst, c2 if ceiling is not None else None)
                if key not in nxt or c2 < nxt[key][1]:
                    nxt[key] = (w2, c2)
        frontier = nxt
    return None


def eval_conditions(ocn: Ocn, c0: int, b: int | None = None, s0: str | None = None) -> ConditionReport:
    """Evaluate C1-C5 on the part of ``ocn`` reachable from ``s0`` (default: its initial state).

    C3 uses the ceiling ``b``, by default ``c0 + |Q| * norm``.
    """
    _require_det(ocn)
    s0 = ocn.initial if s0 is None else s0
    if c0 < 0:
        raise OcnError("initial counter must be non-negative")
    net, removed = reachable_part(ocn, s0)
    ceiling = c0 + len(net.states) * net.norm if b is None else b
    spectrum = cycle_spectrum(net)
    w1 = _dfa_rejected(net, s0)
    w2 = _short_word_failure(net, s0, c0, None)
    w3 = _short_word_failure(net, s0, c0, ceiling)
    neg = _signed_cycle(net, spectrum, negative=True)
    nonzero = neg if neg is not None else _signed_cycle(net, spectrum, negative=False)
    return ConditionReport(
        c1=w1 is None, c2=w2 is None, c3=w3 is None, c4=neg is None, c5=nonzero is None,
        ceiling=ceiling, c1_witness=w1, c2_witness=w2, c3_witness=w3,
        c4_cycle=neg, c5_cycle=nonzero, removed=removed,
    )


# ---------------------------------------------------------------------------
# witnesses


def _path_to(ocn: Ocn, s0: str, target: str) -> tuple[Transition, ...]:
    parent: dict[str, Transition | None] = {s0: None}
    queue = deque([s0])
    while queue:
        q = queue.popleft()
        if q == target:
            break
        for t in ocn.outgoing[q]:
            if t.dst not in parent:
                parent[t.dst] = t
                queue.append(t.dst)
    if target not in parent:
        raise OcnError(f"{target!r} is not reachable from {s0!r}")
    path, q = [], target
    while parent[q] is not None:
        path.append(parent[q])
        q = parent[q].src
    return tuple(reversed(path))


def cycle_pump_word(ocn: Ocn, s0: str, cycle: tuple[Transition, ...], times: int) -> tuple[str, ...]:
    """Word of the path that reaches ``cycle`` from ``s0`` and then runs it ``times`` times."""
    return path_word(_path_to(ocn, s0, cycle[0].src) + cycle * times)


def negative_cycle_word(ocn: Ocn, s0: str, c0: int, cycle=None) -> tuple[str, ...]:
    """A word whose run from (s0, c0) dies on a negative simple cycle."""
    net, _ = reachable_part(ocn, s0)
    cycle = cycle or _signed_cycle(net, cycle_spectrum(net), negative=True)
    if cycle is None:
        raise OcnError("no negative simple cycle is reachable")
    tau = _path_to(net, s0, cycle[0].src)
    drop = -path_measures(cycle)[0]
    k = max(0, (c0 + path_measures(tau)[0]) // drop + 1)
    return path_word(tau + cycle * k)


def bounded_escape_word(ocn: Ocn, s0: str, c0: int, b: int, cycle=None) -> tuple[str, ...]:
    """A word whose run from (s0, c0) leaves [0, b] on a non-zero simple cycle."""
    net, _ = reachable_part(ocn, s0)
    spectrum = cycle_spectrum(net)
    cycle = cycle or _signed_cycle(net, spectrum, True) or _signed_cycle(net, spectrum, False)
    if cycle is None:
        raise OcnError("every reachable simple cycle has effect 0")
    effect = path_measures(cycle)[0]
    if effect < 0:
        return negative_cycle_word(net, s0, c0, cycle)
    tau = _path_to(net, s0, cycle[0].src)
    k = max(0, (b - c0 - path_measures(tau)[0]) // effect + 1)
    return path_word(tau + cycle * k)


# ---------------------------------------------------------------------------
# deciders


def _removed_note(removed) -> tuple[str, ...]:
    return ("unreachable states ignored: " + " ".join(removed),) if removed else ()


def decide_det_universality(ocn: Ocn, s0: str, c0: int) -> Verdict:
    """Universal iff no negative simple cycle (C4) and all short words are accepted (C2)."""
    rep = eval_conditions(ocn, c0, s0=s0)
    notes = _removed_note(rep.removed)
    if not rep.c2:
        return Verdict(False, rep.c2_witness, lemma="det-C2-C4", notes=notes + ("C2 fails",))
    if not rep.c4:
        w = negative_cycle_word(ocn, s0, c0, rep.c4_cycle)
        return Verdict(False, w, lemma="det-C2-C4", notes=notes + ("C4 fails",))
    return Verdict(True, lemma="det-C2-C4", notes=notes)


def decide_det_iv_universality(ocn: Ocn, s0: str) -> Verdict:
    """Some initial counter makes the net universal iff C1 and C4 hold; then |Q|*norm works."""
    rep = eval_conditions(ocn, 0, s0=s0)
    notes = _removed_note(rep.removed)
    if not rep.c1:
        return Verdict(False, rep.c1_witness, lemma="det-C1-C4",
                       notes=notes + ("C1 fails: rejected from every initial counter",))
    if not rep.c4:
        w = negative_cycle_word(ocn, s0, 0, rep.c4_cycle)
        return Verdict(False, w, lemma="det-C1-C4",
                       notes=notes + ("C4 fails: witness is for initial counter 0; "
                                      "more iterations of the cycle defeat larger counters",))
    net, _ = reachable_part(ocn, s0)
    counter = len(net.states) * net.norm
    return Verdict(True, parameter=counter, lemma="det-C1-C4", notes=notes)


def decide_det_bounded_universality(ocn: Ocn, s0: str, c0: int) -> Verdict:
    """Some ceiling makes the net universal iff C5 holds and C3 holds at ceiling c0 + |Q|*norm."""
    rep = eval_conditions(ocn, c0, s0=s0)
    notes = _removed_note(rep.removed)
    if not rep.c5:
        w = bounded_escape_word(ocn, s0, c0, rep.ceiling, rep.c5_cycle)
        return Verdict(False, w, lemma="det-C3-C5",
                       notes=notes + (f"C5 fails: witness is for ceiling {rep.ceiling}; "
                                      "more iterations of the cycle defeat larger ceilings",))
    if not rep.c3:
        return Verdict(False, rep.c3_witness, lemma="det-C3-C5",
                       notes=notes + ("C3 fails: with zero cycles this word is rejected under every ceiling",))
    return Verdict(True, parameter=rep.ceiling, lemma="det-C3-C5", notes=notes)
