import random
from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ocnkit.core import Ocn, Transition, underlying_nfa
from ocnkit.generators import random_ocn
from ocnkit.oracle import (ScaleLimit, oracle_accepts, oracle_count_runs,
                           oracle_enumerate_simple_cycles, oracle_unary_bounded_table,
                           oracle_unary_table)

from conftest import loop_net, small_nets


def test_countdown_word():
    assert not oracle_accepts(loop_net(-1), "q", 1, "aa")


def test_empty_word():
    assert oracle_accepts(loop_net(), "q", 0, "")


def test_scale_limit():
    with pytest.raises(ScaleLimit):
        oracle_accepts(loop_net(0), "q", 0, "a" * 13)


def test_parallel_runs():
    ocn = Ocn(("s", "f"), ("a",), "s",
              (Transition("s", "a", 1, "f"), Transition("s", "a", -1, "f")), frozenset({"f"}))
    assert oracle_count_runs(ocn, "s", 5, "a") == 2


def test_unary_tables():
    assert all(oracle_unary_table(loop_net(1), "q", 0, 30))
    assert oracle_unary_table(loop_net(-1), "q", 2, 5) == [True, True, True, False, False, False]
    assert oracle_unary_bounded_table(loop_net(1), "q", 0, 2, 4) == [True, True, True, False, False]


def test_simple_cycles():
    assert len(oracle_enumerate_simple_cycles(loop_net(1))) == 1
    two = Ocn(("p", "q"), ("a",), "p",
              (Transition("p", "a", 0, "p"), Transition("q", "a", 0, "q"),
               Transition("p", "a", 0, "q"), Transition("q", "a", 0, "p")), frozenset())
    assert len(oracle_enumerate_simple_cycles(two)) == 4
    tri = Ocn(("p", "q", "r"), ("a",), "p",
              (Transition("p", "a", 0, "q"), Transition("q", "a", 0, "r"),
               Transition("r", "a", 0, "p")), frozenset())
    assert len(oracle_enumerate_simple_cycles(tri)) == 3


@settings(max_examples=100, deadline=None)
@given(small_nets(), st.integers(0, 3))
def test_accepts_iff_some_run(ocn, c0):
    for n in range(4):
        for w in product(ocn.alphabet, repeat=n):
            assert oracle_accepts(ocn, ocn.initial, c0, w) == (oracle_count_runs(ocn, ocn.initial, c0, w) >= 1)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_counts_match_matrix_powers(seed):
    rng = random.Random(seed)
    nfa = underlying_nfa(random_ocn(rng, rng.randint(1, 4), ("a", "b"), 0))
    idx = {q: i for i, q in enumerate(nfa.states)}
    mats = {a: np.zeros((len(idx), len(idx)), dtype=np.int64) for a in nfa.alphabet}
    for t in nfa.transitions:
        mats[t.letter][idx[t.src], idx[t.dst]] += 1
    final = np.array([q in nfa.accepting for q in nfa.states], dtype=np.int64)
    for n in range(4):
        for w in product(nfa.alphabet, repeat=n):
            vec = np.zeros(len(idx), dtype=np.int64)
            vec[idx[nfa.initial]] = 1
            for a in w:
                vec = vec @ mats[a]
            assert oracle_count_runs(nfa, nfa.initial, 0, w) == int(vec @ final)
