"""One-counter nets: data model, net file format, path measures and membership.

A net is a finite automaton whose transitions carry a letter and an integer
effect on a single counter that must stay non-negative.  Acceptance is by
reaching an accepting state.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Iterable, Sequence

from ocnkit import _sweep


class OcnError(ValueError):
    """Invalid net, word, or argument."""


class ParseError(OcnError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class NotExecutable(OcnError):
    """Raised when a path would drive the counter below zero."""

    def __init__(self, prefix: int, counter: int):
        self.prefix = prefix
        self.counter = counter
        super().__init__(f"counter drops to {counter} after prefix of length {prefix}")


@dataclass(frozen=True, order=True)
class Transition:
    src: str
    letter: str
    effect: int
    dst: str

    def __str__(self) -> str:
        return f"{self.src} -{self.letter}/{self.effect:+d}-> {self.dst}"


Path = tuple  # tuple[Transition, ...]
Word = tuple  # tuple[str, ...]


@dataclass(frozen=True)
class Ocn:
    """A one-counter net ``(Q, Sigma, delta, F, s0)``.

    ``states`` and ``alphabet`` keep declaration order so that printing is
    stable; identical transitions are collapsed on construction.
    """

    states: tuple[str, ...]
    alphabet: tuple[str, ...]
    initial: str
    transitions: tuple[Transition, ...]
    accepting: frozenset[str]
    name: str = field(default="net", compare=False)

    def __post_init__(self):
        states = tuple(self.states)
        if len(set(states)) != len(states):
            raise OcnError("duplicate state declaration")
        alphabet = tuple(self.alphabet)
        if len(set(alphabet)) != len(alphabet):
            raise OcnError("duplicate letter in alphabet")
        for a in alphabet:
            if not a or any(ch.isspace() for ch in a):
                raise OcnError(f"invalid letter {a!r}")
        sset, aset = set(states), set(alphabet)
        if self.initial not in sset:
            raise OcnError(f"initial state {self.initial!r} is not declared")
        accepting = frozenset(self.accepting)
        if not accepting <= sset:
            raise OcnError(f"accepting states {sorted(accepting - sset)} are not declared")
        seen = {}
        for t in self.transitions:
            if t.src not in sset or t.dst not in sset:
                raise OcnError(f"transition {t} uses an undeclared state")
            if t.letter not in aset:
                raise OcnError(f"transition {t} uses undeclared letter {t.letter!r}")
            if not isinstance(t.effect, int):
                raise OcnError(f"transition {t} has a non-integer effect")
            seen.setdefault(t, None)
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "accepting", accepting)
        object.__setattr__(self, "transitions", tuple(seen))

    @cached_property
    def norm(self) -> int:
        """Largest absolute transition effect (0 for a net without transitions)."""
        return max((abs(t.effect) for t in self.transitions), default=0)

    @cached_property
    def outgoing(self) -> dict[str, tuple[Transition, ...]]:
        out: dict[str, list[Transition]] = {q: [] for q in self.states}
        for t in self.transitions:
            out[t.src].append(t)
        return {q: tuple(ts) for q, ts in out.items()}

    @cached_property
    def by_letter(self) -> dict[tuple[str, str], tuple[Transition, ...]]:
        table: dict[tuple[str, str], list[Transition]] = {}
        for t in self.transitions:
            table.setdefault((t.src, t.letter), []).append(t)
        return {k: tuple(v) for k, v in table.items()}

    def successors(self, state: str, letter: str) -> tuple[Transition, ...]:
        return self.by_letter.get((state, letter), ())

    @property
    def is_unary(self) -> bool:
        return len(self.alphabet) == 1

    @cached_property
    def is_deterministic(self) -> bool:
        return all(len(ts) <= 1 for ts in self.by_letter.values())

    def with_initial(self, state: str) -> Ocn:
        return replace(self, initial=state)

    def check_state(self, state: str) -> None:
        if state not in self.outgoing:
            raise OcnError(f"unknown state {state!r}")

    def check_word(self, word: Sequence[str]) -> tuple[str, ...]:
        word = tuple(word)
        letters = set(self.alphabet)
        for a in word:
            if a not in letters:
                raise OcnError(f"letter {a!r} is not in the alphabet")
        return word

    def reachable(self, start: str | None = None) -> set[str]:
        start = self.initial if start is None else start
        seen, stack = {start}, [start]
        while stack:
            for t in self.outgoing[stack.pop()]:
                if t.dst not in seen:
                    seen.add(t.dst)
                    stack.append(t.dst)
        return seen

    def coreachable(self, targets: Iterable[str] | None = None) -> set[str]:
        targets = set(self.accepting if targets is None else targets)
        incoming: dict[str, list[str]] = {q: [] for q in self.states}
        for t in self.transitions:
            incoming[t.dst].append(t.src)
        seen, stack = set(targets), list(targets)
        while stack:
            for p in incoming[stack.pop()]:
                if p not in seen:
                    seen.add(p)
                    stack.append(p)
        return seen

    def restrict(self, keep: Iterable[str]) -> Ocn:
        """Sub-net induced by ``keep`` (which must contain the initial state)."""
        keep = set(keep)
        return Ocn(
            states=tuple(q for q in self.states if q in keep),
            alphabet=self.alphabet,
            initial=self.initial,
            transitions=tuple(t for t in self.transitions if t.src in keep and t.dst in keep),
            accepting=self.accepting & keep,
            name=self.name,
        )


@dataclass(frozen=True)
class Config:
    state: str
    counter: int

    def __post_init__(self):
        if self.counter < 0:
            raise OcnError("configuration counter must be non-negative")


@dataclass(frozen=True)
class Run:
    c0: int
    path: tuple[Transition, ...]
    trajectory: tuple[int, ...]

    @property
    def configs(self) -> tuple[Config, ...]:
        if not self.path:
            return ()
        states = [self.path[0].src] + [t.dst for t in self.path]
        return tuple(Config(s, c) for s, c in zip(states, self.trajectory))


@dataclass(frozen=True)
class Verdict:
    """Outcome of a universality decider.

    ``parameter`` carries a sufficient initial counter or ceiling for the
    existentially quantified problems; ``witness`` is a word rejected by the
    net (for initial-value problems: rejected from the counter stated in
    ``notes``).
    """

    universal: bool
    witness: tuple[str, ...] | None = None
    parameter: int | None = None
    lemma: str = ""
    notes: tuple[str, ...] = ()

    def __post_init__(self):
        if not self.universal and self.witness is None:
            raise OcnError("a negative verdict needs a witness word")
        if self.witness is not None:
            object.__setattr__(self, "witness", tuple(self.witness))
        object.__setattr__(self, "notes", tuple(self.notes))

    @property
    def answer(self) -> str:
        return "universal" if self.universal else "not-universal"

    def to_dict(self) -> dict:
        out: dict = {"answer": self.answer, "lemma": self.lemma}
        if self.witness is not None:
            out["witness"] = list(self.witness)
        if self.parameter is not None:
            out["parameter"] = self.parameter
        if self.notes:
            out["notes"] = list(self.notes)
        return out

    @classmethod
    def from_dict(cls, data: dict) -> Verdict:
        if data.get("answer") not in ("universal", "not-universal"):
            raise OcnError(f"bad verdict answer {data.get('answer')!r}")
        witness = data.get("witness")
        return cls(
            universal=data["answer"] == "universal",
            witness=tuple(witness) if witness is not None else None,
            parameter=data.get("parameter"),
            lemma=data.get("lemma", ""),
            notes=tuple(data.get("notes", ())),
        )


# ---------------------------------------------------------------------------
# net file format


def parse_ocn(text: str) -> Ocn:
    name = "net"
    alphabet: list[str] | None = None
    states: list[str] = []
    accepting: set[str] = set()
    initial: str | None = None
    trans: list[tuple[int, Transition]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        words = line.split()
        kind, args = words[0], words[1:]
        if kind == "net":
            if len(args) != 1:
                raise ParseError("expected: net <name>", lineno)
            name = args[0]
        elif kind == "alphabet":
            if alphabet is not None:
                raise ParseError("duplicate alphabet declaration", lineno)
            if not args:
                raise ParseError("empty alphabet", lineno)
            if len(set(args)) != len(args):
                raise ParseError("duplicate letter in alphabet", lineno)
            alphabet = args
        elif kind == "state":
            if not args:
                raise ParseError("expected: state <id> [initial] [accepting]", lineno)
            q, flags = args[0], args[1:]
            if q in states:
                raise ParseError(f"duplicate state {q!r}", lineno)
            for flag in flags:
                if flag == "initial":
                    if initial is not None:
                        raise ParseError("duplicate initial declaration", lineno)
                    initial = q
                elif flag == "accepting":
                    accepting.add(q)
                else:
                    raise ParseError(f"unknown state flag {flag!r}", lineno)
            states.append(q)
        elif kind == "trans":
            if len(args) != 4:
                raise ParseError("expected: trans <src> <letter> <effect> <dst>", lineno)
            src, letter, eff, dst = args
            try:
                effect = int(eff)
            except ValueError:
                raise ParseError(f"effect {eff!r} is not a decimal integer", lineno) from None
            trans.append((lineno, Transition(src, letter, effect, dst)))
        else:
            raise ParseError(f"unknown directive {kind!r}", lineno)
    if alphabet is None:
        raise ParseError("missing alphabet declaration")
    if initial is None:
        raise ParseError("missing initial state")
    declared, letters = set(states), set(alphabet)
    for lineno, t in trans:
        for q in (t.src, t.dst):
            if q not in declared:
                raise ParseError(f"undeclared state {q!r}", lineno)
        if t.letter not in letters:
            raise ParseError(f"undeclared letter {t.letter!r}", lineno)
    return Ocn(tuple(states), tuple(alphabet), initial, tuple(t for _, t in trans),
               frozenset(accepting), name=name)


def format_ocn(ocn: Ocn) -> str:
    lines = [f"net {ocn.name}", "alphabet " + " ".join(ocn.alphabet)]
    for q in ocn.states:
        flags = (["initial"] if q == ocn.initial else []) + (["accepting"] if q in ocn.accepting else [])
        lines.append(" ".join(["state", q, *flags]))
    for t in ocn.transitions:
        lines.append(f"trans {t.src} {t.letter} {t.effect} {t.dst}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# paths and runs


def _effects(path) -> list[int]:
    return [x if isinstance(x, int) else x.effect for x in path]


def check_chain(path: Sequence[Transition]) -> None:
    for i in range(1, len(path)):
        if path[i - 1].dst != path[i].src:
            raise OcnError(f"path breaks between positions {i - 1} and {i}")


def path_measures(path) -> tuple[int, int, int]:
    """Return ``(effect, height, depth)``; the empty prefix counts, so height, depth >= 0.

    ``path`` may be a sequence of transitions or of plain integer effects.
    """
    total = height = low = 0
    for e in _effects(path):
        total += e
        height = max(height, total)
        low = min(low, total)
    return total, height, -low


def run_of_path(path: Sequence[Transition], c0: int) -> Run:
    if c0 < 0:
        raise OcnError("initial counter must be non-negative")
    if path and not isinstance(path[0], int):
        check_chain(path)
    traj = [c0]
    for i, e in enumerate(_effects(path), start=1):
        c = traj[-1] + e
        if c < 0:
            raise NotExecutable(i, c)
        traj.append(c)
    return Run(c0, tuple(path), tuple(traj))


def is_executable(path, c0: int) -> bool:
    return path_measures(path)[2] <= c0


def path_word(path: Sequence[Transition]) -> tuple[str, ...]:
    return tuple(t.letter for t in path)


def underlying_nfa(ocn: Ocn) -> Ocn:
    return replace(ocn, transitions=tuple(replace(t, effect=0) for t in ocn.transitions))


def is_nfa(ocn: Ocn) -> bool:
    return all(t.effect == 0 for t in ocn.transitions)


# ---------------------------------------------------------------------------
# membership


def _max_step(ocn: Ocn, cur: dict[str, int], letter: str) -> dict[str, int]:
    nxt: dict[str, int] = {}
    for q, c in cur.items():
        for t in ocn.successors(q, letter):
            c2 = c + t.effect
            if c2 >= 0 and nxt.get(t.dst, -1) < c2:
                nxt[t.dst] = c2
    return nxt


def accepts(ocn: Ocn, s0: str, c0: int, word: Sequence[str]) -> bool:
    """Membership in ``L(s0, c0)`` via the per-state maximum-counter dynamic program.

    Keeping only the largest counter per state is exact because a step that
    is possible from counter ``c`` is possible from every ``c' >= c``.
    """
    ocn.check_state(s0)
    if c0 < 0:
        raise OcnError("initial counter must be non-negative")
    word = ocn.check_word(word)
    cur = {s0: c0}
    for a in word:
        cur = _max_step(ocn, cur, a)
        if not cur:
            return False
    return any(q in ocn.accepting for q in cur)


def accepts_via(ocn: Ocn, s0: str, c0: int, r: str, word: Sequence[str]) -> bool:
    """Membership in the sub-language of words with an accepting run visiting ``r``."""
    ocn.check_state(s0)
    ocn.check_state(r)
    if c0 < 0:
        raise OcnError("initial counter must be non-negative")
    word = ocn.check_word(word)
    cur: dict = {(s0, s0 == r): c0}
    for a in word:
        nxt: dict = {}
        for (q, seen), c in cur.items():
            for t in ocn.successors(q, a):
                c2 = c + t.effect
                if c2 < 0:
                    continue
                k2 = (t.dst, seen or t.dst == r)
                if nxt.get(k2, -1) < c2:
                    nxt[k2] = c2
        cur = nxt
        if not cur:
            return False
    return any(seen and q in ocn.accepting for (q, seen) in cur)


def accepts_bounded(ocn: Ocn, s0: str, c0: int, b: int, word: Sequence[str]) -> bool:
    """Membership in the ``b``-bounded language from ``(s0, c0)``.

    Reachable counters of each state are kept as an integer bitmask over
    ``[0, b]``; the maximum-counter shortcut is unsound here because a larger
    counter may overflow the ceiling where a smaller one survives.
    """
    ocn.check_state(s0)
    if c0 < 0 or b < 0:
        raise OcnError("counter and bound must be non-negative")
    if c0 > b:
        raise OcnError(f"initial counter {c0} exceeds the bound {b}")
    word = ocn.check_word(word)
    full = (1 << (b + 1)) - 1
    cur = {s0: 1 << c0}
    for a in word:
        cur = _bitset_step(ocn, cur, a, full)
        if not cur:
            return False
    return any(q in ocn.accepting for q in cur)


def _bitset_step(ocn: Ocn, cur: dict[str, int], letter: str, full: int) -> dict[str, int]:
    nxt: dict[str, int] = {}
    for q, mask in cur.items():
        for t in ocn.successors(q, letter):
            e = t.effect
            moved = (mask << e) & full if e >= 0 else mask >> -e
            if moved:
                nxt[t.dst] = nxt.get(t.dst, 0) | moved
    return nxt


# ---------------------------------------------------------------------------
# unary sweeps (all lengths 0..N at once)


def _require_unary(ocn: Ocn) -> str:
    if not ocn.is_unary:
        raise OcnError("operation requires a singleton alphabet")
    return ocn.alphabet[0]


def unary_table(ocn: Ocn, s0: str, c0: int, N: int, via: str | None = None) -> list[bool]:
    """``table[n]`` tells whether ``a^n`` is accepted (through ``via``, if given), for n <= N."""
    _require_unary(ocn)
    ocn.check_state(s0)
    if via is not None:
        ocn.check_state(via)
    return _sweep.max_counter_table(ocn, s0, c0, N, via)


def unary_bounded_table(ocn: Ocn, s0: str, c0: int, b: int, N: int) -> list[bool]:
    """``table[n]`` tells whether ``a^n`` is in the ``b``-bounded language, for n <= N."""
    a = _require_unary(ocn)
    ocn.check_state(s0)
    if c0 > b:
        raise OcnError(f"initial counter {c0} exceeds the bound {b}")
    full = (1 << (b + 1)) - 1
    cur = {s0: 1 << c0}
    out = []
    for _ in range(N + 1):
        out.append(any(q in ocn.accepting for q in cur))
        cur = _bitset_step(ocn, cur, a, full) if cur else cur
    return out
