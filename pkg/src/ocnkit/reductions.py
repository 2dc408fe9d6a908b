"""Two-counter machines and the nets that encode their halting problem.

``build_net_A(m)`` is universal from some initial counter iff ``m`` halts;
``build_net_Aprime(m)`` is universal under some counter ceiling (from counter
0) iff ``m`` halts.  Words over the nets' alphabet are ``#``-separated
segments of claimed machine traces.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

from ocnkit.core import Ocn, OcnError, Transition

SEP = "#"
COUNTERS = ("x", "y")


class HaltedEarly(OcnError):
    """The machine halts before producing the requested number of trace letters."""


@dataclass(frozen=True)
class TwoCounterMachine:
    """Program over counters x and y; line numbers are 1-based.

    Commands are tuples: ``("inc", c)``, ``("dec", c)``, ``("goto", i)``,
    ``("halt",)`` and ``("ifz", c, i, j)`` for "if c = 0 goto i else goto j".
    """

    lines: tuple[tuple, ...]

    def __post_init__(self):
        n = len(self.lines)
        if n == 0:
            raise OcnError("a machine needs at least one line")
        for k, cmd in enumerate(self.lines, start=1):
            op = cmd[0]
            if op in ("inc", "dec"):
                if len(cmd) != 2 or cmd[1] not in COUNTERS:
                    raise OcnError(f"line {k}: bad command {cmd}")
                if k == n:
                    raise OcnError(f"line {k}: control falls off the end of the program")
            elif op == "goto":
                self._target(k, cmd[1:], 1)
            elif op == "ifz":
                if len(cmd) != 4 or cmd[1] not in COUNTERS:
                    raise OcnError(f"line {k}: bad command {cmd}")
                self._target(k, cmd[2:], 2)
            elif op == "halt":
                if len(cmd) != 1:
                    raise OcnError(f"line {k}: bad command {cmd}")
            else:
                raise OcnError(f"line {k}: unknown command {op!r}")

    def _target(self, k, targets, count):
        if len(targets) != count or not all(isinstance(i, int) and 1 <= i <= len(self.lines)
                                            for i in targets):
            raise OcnError(f"line {k}: jump target out of range 1..{len(self.lines)}")

    @property
    def size(self) -> int:
        return len(self.lines)

    def unguarded_decrements(self) -> list[int]:
        """Lines ``dec c`` that can be entered other than from the non-zero branch of a test on c."""
        preds: dict[int, list[tuple[int, str]]] = {1: [(0, "entry")]}
        for k, cmd in enumerate(self.lines, start=1):
            if cmd[0] in ("inc", "dec"):
                preds.setdefault(k + 1, []).append((k, "next"))
            elif cmd[0] == "goto":
                preds.setdefault(cmd[1], []).append((k, "goto"))
            elif cmd[0] == "ifz":
                preds.setdefault(cmd[2], []).append((k, "zero"))
                preds.setdefault(cmd[3], []).append((k, "positive"))
        bad = []
        for k, cmd in enumerate(self.lines, start=1):
            if cmd[0] != "dec":
                continue
            ok = all(how == "positive" and self.lines[src - 1][1] == cmd[1]
                     for src, how in preds.get(k, []))
            if not ok:
                bad.append(k)
        return bad


def parse_2cm(text: str) -> TwoCounterMachine:
    """One command per line: ``inc x``, ``dec y``, ``goto 3``, ``halt``, ``ifz x 2 5``.

    Blank lines and lines starting with ``;`` are skipped and do not count as lines.
    """
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith(";"):
            continue
        words = line.split()
        try:
            if words[0] in ("inc", "dec") and len(words) == 2:
                lines.append((words[0], words[1]))
            elif words[0] == "goto" and len(words) == 2:
                lines.append(("goto", int(words[1])))
            elif words[0] == "halt" and len(words) == 1:
                lines.append(("halt",))
            elif words[0] == "ifz" and len(words) == 4:
                lines.append(("ifz", words[1], int(words[2]), int(words[3])))
            else:
                raise ValueError
        except ValueError:
            raise OcnError(f"line {lineno}: cannot parse command {line!r}") from None
    m = TwoCounterMachine(tuple(lines))
    bad = m.unguarded_decrements()
    if bad:
        warnings.warn(f"decrements on lines {bad} are not guarded by a zero test", stacklevel=2)
    return m


def format_2cm(m: TwoCounterMachine) -> str:
    return "".join(" ".join(map(str, cmd)) + "\n" for cmd in m.lines)


# ---------------------------------------------------------------------------
# simulation


@dataclass(frozen=True)
class MachineRun:
    halted: bool
    trace: tuple[str, ...]
    x: int
    y: int

    @property
    def steps(self) -> int:
        return len(self.trace)


def run_2cm(m: TwoCounterMachine, budget: int) -> MachineRun:
    """Execute at most ``budget`` commands from line 1 with x = y = 0, one trace letter each."""
    vals = {"x": 0, "y": 0}
    line, trace = 1, []
    while len(trace) < budget:
        cmd = m.lines[line - 1]
        op = cmd[0]
        if op == "halt":
            trace.append("halt")
            return MachineRun(True, tuple(trace), vals["x"], vals["y"])
        if op == "inc":
            vals[cmd[1]] += 1
            trace.append(f"inc_{cmd[1]}")
            line += 1
        elif op == "dec":
            if vals[cmd[1]] == 0:
                raise OcnError(f"line {line}: dec {cmd[1]} with {cmd[1]} = 0")
            vals[cmd[1]] -= 1
            trace.append(f"dec_{cmd[1]}")
            line += 1
        elif op == "goto":
            trace.append(f"goto_{cmd[1]}")
            line = cmd[1]
        else:
            _, c, i, j = cmd
            if vals[c] == 0:
                trace.append(f"{c}z_{i}")
                line = i
            else:
                trace.append(f"{c}p_{j}")
                line = j
    return MachineRun(False, tuple(trace), vals["x"], vals["y"])


def trace_prefix(m: TwoCounterMachine, k: int) -> tuple[str, ...]:
    run = run_2cm(m, k)
    if len(run.trace) < k:
        raise HaltedEarly(f"machine halts after {len(run.trace)} steps, before producing {k} letters")
    return run.trace


# ---------------------------------------------------------------------------
# nets


def alphabet_of(m: TwoCounterMachine) -> tuple[str, ...]:
    letters = [SEP, "inc_x", "inc_y", "dec_x", "dec_y", "halt"]
    for i in range(1, m.size + 1):
        letters += [f"goto_{i}", f"xz_{i}", f"xp_{i}", f"yz_{i}", f"yp_{i}"]
    return tuple(letters)


def line_state(i: int) -> str:
    return "q2" if i == 1 else f"q2_{i}"


def _checker(m: TwoCounterMachine, sigma) -> list[Transition]:
    """Control-flow checker: reads a claimed trace from line 1 and goes to heaven on the first wrong letter."""
    out = []
    for k, cmd in enumerate(m.lines, start=1):
        q = line_state(k)
        op = cmd[0]
        if op in ("inc", "dec"):
            allowed = {f"{op}_{cmd[1]}": line_state(k + 1)}
        elif op == "goto":
            allowed = {f"goto_{cmd[1]}": line_state(cmd[1])}
        elif op == "ifz":
            _, c, i, j = cmd
            allowed = {f"{c}z_{i}": line_state(i), f"{c}p_{j}": line_state(j)}
        else:
            allowed = {"halt": "halted"}
        for a in sigma:
            if a == SEP:
                continue
            out.append(Transition(q, a, 0, allowed.get(a, "heaven")))
    out += [Transition("halted", a, 0, "heaven") for a in sigma if a != SEP]
    return out


def _cheat_checker(state: str, counter: str, sigma, positive: bool) -> list[Transition]:
    """Tracks ``counter`` (negated when ``positive`` is false) and may return to q0 on a false test letter."""
    sign = 1 if positive else -1
    test = f"{counter}z_" if positive else f"{counter}p_"
    out = []
    for a in sigma:
        if a in (SEP, "halt"):
            continue
        if a == f"inc_{counter}":
            out.append(Transition(state, a, sign, state))
        elif a == f"dec_{counter}":
            out.append(Transition(state, a, -sign, state))
        else:
            out.append(Transition(state, a, 0, state))
            if a.startswith(test):
                out.append(Transition(state, a, -1 if positive else 0, "q0"))
    return out


def build_net_A(m: TwoCounterMachine) -> Ocn:
    sigma = alphabet_of(m)
    body = [a for a in sigma if a != SEP]
    states = (["q0", "heaven", "q1"] + [line_state(i) for i in range(1, m.size + 1)]
              + ["halted", "q3", "q4", "q5", "q6"])
    trans = [Transition("q0", a, 0, "q0") for a in body]
    trans += [Transition("q0", SEP, 0, q) for q in ("q1", "q2", "q3", "q4", "q5", "q6")]
    trans += [Transition("heaven", a, 0, "heaven") for a in sigma]
    trans += [Transition("q1", a, -1, "q1") for a in body]
    trans.append(Transition("q1", SEP, -1, "heaven"))
    trans += _checker(m, sigma)
    trans += _cheat_checker("q3", "x", sigma, positive=True)
    trans += _cheat_checker("q4", "x", sigma, positive=False)
    trans += _cheat_checker("q5", "y", sigma, positive=True)
    trans += _cheat_checker("q6", "y", sigma, positive=False)
    return Ocn(tuple(states), sigma, "q0", tuple(trans), frozenset({"q0", "heaven", "q1"}),
               name="reduction-A")


def build_net_Aprime(m: TwoCounterMachine) -> Ocn:
    a = build_net_A(m)
    sigma = a.alphabet
    trans = list(a.transitions)
    for x in sigma:
        trans += [Transition("q0'", x, 1, "q0'"), Transition("q0'", x, 0, "q0"),
                  Transition("q7", x, -1, "q7"), Transition("q7", x, -1, "q0")]
    trans.append(Transition("q0", SEP, 0, "q7"))
    return Ocn(("q0'",) + a.states + ("q7",), sigma, "q0'", tuple(trans),
               a.accepting | {"q0'", "q7"}, name="reduction-A-prime")


# ---------------------------------------------------------------------------
# witness words


def witness_word(m: TwoCounterMachine, n: int) -> tuple[str, ...]:
    """n + 2 copies of the first n + 1 trace letters, separated by ``#``.

    For a machine that does not halt, ``build_net_A(m)`` rejects it from
    counter n.  Every separator costs at least one unit: q1 pays for a whole
    segment, and q3..q6 can only return to q0 on a test letter whose honest
    outcome lowers the counter.  With only n separators a machine that tests
    its counters lets the run reach 0 and still accept, hence the extra segment.
    """
    prefix = trace_prefix(m, n + 1)
    return (prefix + (SEP,)) * (n + 1) + prefix


def witness_word_bounded(m: TwoCounterMachine, n: int) -> tuple[str, ...]:
    """n + 2 copies of the first n + 1 trace letters, separated by ``#``.

    For a machine that does not halt, ``build_net_Aprime(m)`` rejects it under
    ceiling n.  Segments of only n letters would not do: q0' can then read
    the whole first segment and its ``#`` while raising the counter to n, and
    the remaining n separators cost one unit each through q7.
    """
    prefix = trace_prefix(m, n + 1)
    return (prefix + (SEP,)) * (n + 1) + prefix
