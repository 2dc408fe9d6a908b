"""Cycles, nadirs and linear forms of paths.

A linear form ``tau0 g1^e1 tau1 ... gk^ek tauk`` describes a long path by a
short underlying path plus binary exponents on simple cycles.  Every
non-negative cycle in a form starts at a nadir, so it can be iterated from
any counter value.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ocnkit.core import OcnError, Transition, check_chain, path_measures, run_of_path

Cycle = tuple  # tuple[Transition, ...]


def is_cycle(path: Sequence[Transition]) -> bool:
    if not path:
        return False
    try:
        check_chain(path)
    except OcnError:
        return False
    return path[0].src == path[-1].dst


def is_simple(cycle: Sequence[Transition]) -> bool:
    """No state repeats except the shared endpoint, i.e. no proper infix is a cycle."""
    srcs = [t.src for t in cycle]
    return is_cycle(cycle) and len(set(srcs)) == len(srcs)


def nadir_of(cycle: Sequence) -> int:
    """Smallest prefix length ``d >= 1`` whose effect equals ``-depth``.

    When the depth is 0 the full length is returned, which makes cycles that
    already start at a nadir fixed points of :func:`shift_to_nadir`.
    """
    if not cycle:
        raise OcnError("empty cycle has no nadir")
    _, _, depth = path_measures(cycle)
    if depth == 0:
        return len(cycle)
    total = 0
    for d, t in enumerate(cycle, start=1):
        total += t if isinstance(t, int) else t.effect
        if total == -depth:
            return d
    raise AssertionError("unreachable")


def shift_to_nadir(cycle: Sequence) -> tuple:
    d = nadir_of(cycle)
    cycle = tuple(cycle)
    return cycle[d:] + cycle[:d]


def is_good_cycle(cycle: Sequence[Transition]) -> bool:
    effect, _, depth = path_measures(cycle)
    return is_simple(cycle) and effect >= 0 and depth == 0


@dataclass(frozen=True)
class LinearForm:
    """``taus[0] loops[0] taus[1] ... loops[k-1] taus[k]``, each loop a ``(cycle, exponent)``."""

    start: str
    taus: tuple[tuple[Transition, ...], ...]
    loops: tuple[tuple[tuple[Transition, ...], int], ...]

    def __post_init__(self):
        if len(self.taus) != len(self.loops) + 1:
            raise OcnError("a linear form alternates paths and loops, starting and ending with a path")
        if any(e < 0 for _, e in self.loops):
            raise OcnError("exponents must be non-negative")

    def segments(self):
        yield self.taus[0]
        for (cyc, e), tau in zip(self.loops, self.taus[1:]):
            yield cyc, e
            yield tau

    @property
    def underlying(self) -> tuple[Transition, ...]:
        out = list(self.taus[0])
        for (cyc, _), tau in zip(self.loops, self.taus[1:]):
            out += cyc
            out += tau
        return tuple(out)

    @property
    def underlying_length(self) -> int:
        return len(self.underlying)

    @property
    def length(self) -> int:
        return sum(map(len, self.taus)) + sum(e * len(c) for c, e in self.loops)

    def unroll(self) -> tuple[Transition, ...]:
        out = list(self.taus[0])
        for (cyc, e), tau in zip(self.loops, self.taus[1:]):
            out += cyc * e
            out += tau
        return tuple(out)

    def check(self) -> str:
        """Verify chaining; return the final state."""
        q = self.start
        for seg in self.segments():
            if isinstance(seg[-1] if seg else None, int):
                cyc, _ = seg
                if not is_cycle(cyc) or cyc[0].src != q:
                    raise OcnError(f"loop does not form a cycle at {q!r}")
                continue
            for t in seg:
                if t.src != q:
                    raise OcnError(f"path breaks at {t} (expected source {q!r})")
                q = t.dst
        return q


def format_linear_form(lf: LinearForm) -> str:
    parts = []
    for seg in lf.segments():
        if seg and isinstance(seg[-1], int):
            cyc, e = seg
            parts.append(f"cyc {len(cyc)} ^ {e}")
        else:
            parts.append(f"tau {len(seg)}")
    return " | ".join(parts)


def linear_form_executable(lf: LinearForm, c: int) -> tuple[bool, int | None]:
    """Executability from counter ``c`` without unrolling the exponents.

    For a loop with non-negative effect the first iteration is the hardest,
    for a negative one the last.
    """
    lf.check()
    for seg in lf.segments():
        if seg and isinstance(seg[-1], int):
            cyc, e = seg
            if e == 0:
                continue
            effect, _, depth = path_measures(cyc)
            before_hardest = c if effect >= 0 else c + (e - 1) * effect
            if before_hardest < depth:
                return False, None
            c += e * effect
        else:
            for t in seg:
                c += t.effect
                if c < 0:
                    return False, None
    return True, c


def to_linear_form(path: Sequence[Transition], c0: int, start: str | None = None) -> LinearForm:
    """Rewrite an executable path of a singleton-alphabet net into linear form.

    The result has the same length and endpoints, is executable from ``c0``
    and ends with a counter at least as large.  First and last occurrences of
    each state are fixed once as anchor marks; simple cycles whose interior
    avoids the marks are cut out, rotated to a nadir, and re-attached at the
    first occurrence of that nadir state (non-negative cycles) or its last
    occurrence (negative cycles).  Then, per nadir state and cycle length, all
    cut cycles are replaced by the one of largest effect and bunched.
    """
    path = tuple(path)
    if not path:
        if start is None:
            raise OcnError("an empty path needs an explicit start state")
        return LinearForm(start, ((),), ())
    if len({t.letter for t in path}) > 1:
        raise OcnError("linear forms are only built for singleton-alphabet paths")
    run_of_path(path, c0)
    states = [path[0].src] + [t.dst for t in path]
    first: dict[str, int] = {}
    last: dict[str, int] = {}
    for i, q in enumerate(states):
        first.setdefault(q, i)
        last[q] = i
    marks = set(first.values()) | set(last.values())

    # residual path: R[j] are original positions, T[j] leads from R[j] to R[j+1]
    R = list(range(len(states)))
    T = list(path)
    cut: list[tuple[Transition, ...]] = []
    while True:
        found = None
        since_mark: dict[str, int] = {}
        for j, pos in enumerate(R):
            q = states[pos]
            if pos in marks:
                since_mark = {q: j}
            elif q in since_mark:
                found = (since_mark[q], j)
                break
            else:
                since_mark[q] = j
        if found is None:
            break
        a, b = found
        cut.append(shift_to_nadir(T[a:b]))
        del T[a:b]
        del R[a + 1 : b + 1]

    # representative per (nadir state, length): largest effect, then smallest transitions
    best: dict[tuple[str, int], tuple[Transition, ...]] = {}
    counts: dict[tuple[str, int], int] = {}
    for cyc in cut:
        key = (cyc[0].src, len(cyc))
        counts[key] = counts.get(key, 0) + 1
        cur = best.get(key)
        if cur is None or (-path_measures(cyc)[0], cyc) < (-path_measures(cur)[0], cur):
            best[key] = cyc

    groups: dict[int, list[tuple[int, int, tuple, int]]] = {}
    for (q, length), cyc in best.items():
        effect = path_measures(cyc)[0]
        pos = first[q] if effect >= 0 else last[q]
        groups.setdefault(pos, []).append((effect < 0, length, cyc, counts[(q, length)]))

    taus, loops, cur_tau = [], [], []
    for j, pos in enumerate(R):
        for _, _, cyc, e in sorted(groups.get(pos, []), key=lambda g: (g[0], g[1])):
            taus.append(tuple(cur_tau))
            cur_tau = []
            loops.append((cyc, e))
        if j < len(T):
            cur_tau.append(T[j])
    taus.append(tuple(cur_tau))
    lf = LinearForm(path[0].src, tuple(taus), tuple(loops))
    return _compact(lf, c0, run_of_path(path, c0).trajectory[-1])


def _compact(lf: LinearForm, c0: int, final_min: int) -> LinearForm:
    """Fold cycles left inside path segments into an existing loop of equal length.

    A fold is kept only if the form stays executable from ``c0`` and still
    ends with a counter of at least ``final_min``, so the pass cannot break
    the guarantees of :func:`to_linear_form`.
    """
    changed = True
    while changed:
        changed = False
        for ti, tau in enumerate(lf.taus):
            for i in range(len(tau)):
                for j in range(i + 1, len(tau) + 1):
                    if tau[i].src != tau[j - 1].dst:
                        continue
                    size, effect = j - i, path_measures(tau[i:j])[0]
                    for li, (cyc, e) in enumerate(lf.loops):
                        if len(cyc) != size or path_measures(cyc)[0] < effect:
                            continue
                        taus = list(lf.taus)
                        taus[ti] = tau[:i] + tau[j:]
                        loops = list(lf.loops)
                        loops[li] = (cyc, e + 1)
                        cand = LinearForm(lf.start, tuple(taus), tuple(loops))
                        try:
                            ok, fin = linear_form_executable(cand, c0)
                        except OcnError:
                            continue
                        if ok and fin >= final_min:
                            lf, changed = cand, True
                            break
                    if changed:
                        break
                if changed:
                    break
            if changed:
                break
    return lf
