import random

import pytest

from ocnkit.core import OcnError, accepts, accepts_bounded
from ocnkit.reductions import (SEP, HaltedEarly, TwoCounterMachine, alphabet_of, build_net_A,
                               build_net_Aprime, format_2cm, parse_2cm, run_2cm, trace_prefix,
                               witness_word, witness_word_bounded)

HALT = TwoCounterMachine((("halt",),))
INC_HALT = TwoCounterMachine((("inc", "x"), ("halt",)))
LOOP = TwoCounterMachine((("goto", 1),))
# counts x up forever, testing it on every round
COUNTER = parse_2cm("inc x\nifz x 1 3\ngoto 1\n")
MACHINES = [LOOP, COUNTER, parse_2cm("inc y\nifz y 1 3\ndec y\ngoto 1\n"),
            parse_2cm("ifz x 2 1\ninc x\ngoto 2\n")]
G = "goto_1"


class TestMachines:
    def test_parse_round_trip(self):
        m = parse_2cm("; comment\ninc x\nifz x 4 1\n\ndec y\nhalt\n")
        assert parse_2cm(format_2cm(m)) == m
        assert m.lines[1] == ("ifz", "x", 4, 1)

    def test_bad_target(self):
        with pytest.raises(OcnError):
            parse_2cm("goto 3\nhalt\n")

    def test_falls_off(self):
        with pytest.raises(OcnError):
            parse_2cm("inc x\n")

    def test_unguarded_decrement_warns(self):
        with pytest.warns(UserWarning):
            parse_2cm("dec x\nhalt\n")

    def test_guarded_decrement_silent(self):
        m = parse_2cm("inc x\nifz x 4 3\ndec x\nhalt\n")
        assert m.unguarded_decrements() == []

    def test_runs(self):
        r = run_2cm(HALT, 10)
        assert r.halted and r.steps == 1 and r.trace == ("halt",)
        r = run_2cm(INC_HALT, 10)
        assert r.halted and r.trace == ("inc_x", "halt") and r.x == 1
        r = run_2cm(LOOP, 5)
        assert not r.halted and r.trace == (G,) * 5

    def test_trace_prefix(self):
        assert trace_prefix(LOOP, 3) == (G,) * 3
        assert trace_prefix(INC_HALT, 1) == ("inc_x",)
        with pytest.raises(HaltedEarly):
            trace_prefix(INC_HALT, 3)


class TestNets:
    def test_q1_separator(self):
        a = build_net_A(LOOP)
        assert [(t.effect, t.dst) for t in a.successors("q1", SEP)] == [(-1, "heaven")]

    def test_q4_returns_free(self):
        a = build_net_A(COUNTER)
        for letter in a.alphabet:
            if letter.startswith("xp_"):
                assert [t.effect for t in a.successors("q4", letter) if t.dst == "q0"] == [0]

    def test_alphabet_and_q3(self):
        a = build_net_A(LOOP)
        assert len(a.alphabet) == 11 == len(alphabet_of(LOOP))
        plain = {x for x in a.alphabet
                 if [(t.effect, t.dst) for t in a.successors("q3", x)] == [(0, "q3")]}
        assert plain == set(a.alphabet) - {"halt", SEP, "inc_x", "dec_x", "xz_1"}
        assert {(t.effect, t.dst) for t in a.successors("q3", "xz_1")} == {(0, "q3"), (-1, "q0")}

    def test_aprime_shape(self):
        a, ap = build_net_A(LOOP), build_net_Aprime(LOOP)
        assert ap.initial == "q0'" and "q0'" in ap.accepting
        for x in ap.alphabet:
            assert any(t.effect == 1 and t.dst == "q0'" for t in ap.successors("q0'", x))
        assert [t.effect for t in ap.successors("q0", SEP) if t.dst == "q7"] == [0]
        assert len(ap.states) == len(a.states) + 2


class TestWitnesses:
    def test_word_shapes(self):
        assert witness_word(LOOP, 2) == (G, G, G, SEP) * 3 + (G, G, G)
        assert len(witness_word(LOOP, 1)) == 8
        with pytest.raises(HaltedEarly):
            witness_word(HALT, 1)

    def test_bounded_shapes(self):
        assert witness_word_bounded(LOOP, 1) == (G, G, SEP, G, G, SEP, G, G)
        with pytest.raises(HaltedEarly):
            witness_word_bounded(INC_HALT, 3)

    @pytest.mark.parametrize("machine", MACHINES)
    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_nonhalting_rejected(self, machine, n):
        a, ap = build_net_A(machine), build_net_Aprime(machine)
        assert not accepts(a, "q0", n, witness_word(machine, n))
        assert not accepts_bounded(ap, "q0'", 0, n, witness_word_bounded(machine, n))

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_n_separators_are_too_few(self, n):
        # n + 1 segments: q4 returns to q0 on each honest xp letter for one
        # unit, so n separators take counter n exactly to 0 and the run accepts
        segment = trace_prefix(COUNTER, n + 1)
        word = (segment + (SEP,)) * n + segment
        assert accepts(build_net_A(COUNTER), "q0", n, word)

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_segments_of_length_n_are_too_short(self, n):
        # n + 1 segments of n letters: q0' can read the first segment and its
        # separator while climbing to n, and q7 then pays for the other n
        # separators, so this word is accepted under ceiling n
        segment = trace_prefix(LOOP, n)
        word = (segment + (SEP,)) * n + segment
        assert accepts_bounded(build_net_Aprime(LOOP), "q0'", 0, n, word)

    def test_halting_machine_accepts_everything(self):
        rng = random.Random(7)
        a, ap = build_net_A(INC_HALT), build_net_Aprime(INC_HALT)
        for _ in range(60):
            w = [rng.choice(a.alphabet) for _ in range(rng.randint(0, 12))]
            assert accepts(a, "q0", 3, w)
            assert accepts_bounded(ap, "q0'", 0, 6, w)
