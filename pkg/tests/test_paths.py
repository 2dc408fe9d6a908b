import random
import time

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ocnkit.core import Transition, path_measures, run_of_path
from ocnkit.generators import random_path, random_unary_ocn
from ocnkit.paths import (LinearForm, is_good_cycle, is_simple, linear_form_executable, nadir_of,
                          shift_to_nadir, to_linear_form)


def ring(*effects):
    """A cycle q0 -> q1 -> ... -> q0 with the given effects."""
    k = len(effects)
    return tuple(Transition(f"q{i}", "a", e, f"q{(i + 1) % k}") for i, e in enumerate(effects))


def self_loop(e, q="q"):
    return (Transition(q, "a", e, q),)


class TestNadir:
    def test_mid_cycle(self):
        assert nadir_of([1, -2, 1]) == 2

    def test_single_negative(self):
        assert nadir_of([-1]) == 1

    def test_already_at_nadir(self):
        assert nadir_of([1, 1]) == 2

    def test_shift(self):
        shifted = shift_to_nadir(ring(1, -2, 1))
        assert [t.effect for t in shifted] == [1, 1, -2]
        assert path_measures(shifted)[2] == 0

    def test_shift_negative(self):
        shifted = shift_to_nadir(ring(-1, -1))
        effect, _, depth = path_measures(shifted)
        assert effect == -2 == -depth

    def test_shift_fixed_point(self):
        cyc = ring(2, -1)
        assert shift_to_nadir(cyc) == cyc

    @given(st.lists(st.integers(-3, 3), min_size=1, max_size=8))
    def test_shift_minimises_depth(self, effects):
        effect, _, _ = path_measures(effects)
        shifted = shift_to_nadir(ring(*effects))
        assert path_measures(shifted)[2] == max(0, -effect)


class TestGoodCycle:
    def test_positive_loop(self):
        assert is_good_cycle(self_loop(1))

    def test_dip(self):
        assert not is_good_cycle(ring(-1, 1))

    def test_not_simple(self):
        cyc = (Transition("p", "a", 1, "q"), Transition("q", "a", 0, "p"),
               Transition("p", "a", 0, "q"), Transition("q", "a", 0, "p"))
        assert not is_simple(cyc)
        assert not is_good_cycle(cyc)


class TestLinearForm:
    def test_acyclic_unchanged(self):
        path = (Transition("p", "a", 1, "q"), Transition("q", "a", -1, "r"))
        lf = to_linear_form(path, 0)
        assert lf.loops == () and lf.taus == (path,)

    def test_single_loop(self):
        lf = to_linear_form(self_loop(1) * 5, 0)
        assert lf.taus[0] == ()
        assert lf.loops == ((self_loop(1), 5),)

    def test_countdown(self):
        lf = LinearForm("q", ((), ()), ((self_loop(-1), 3),))
        assert linear_form_executable(lf, 3) == (True, 0)
        assert linear_form_executable(lf, 2)[0] is False

    def test_huge_exponent(self):
        lf = LinearForm("q", ((), ()), ((self_loop(2), 2**40),))
        start = time.perf_counter()
        assert linear_form_executable(lf, 0) == (True, 2**41)
        assert time.perf_counter() - start < 1e-3

    def test_bad_shape(self):
        with pytest.raises(ValueError):
            LinearForm("q", ((),), ((self_loop(1), 1),))

    @settings(max_examples=150, deadline=None)
    @given(st.integers(0, 2**32 - 1), st.integers(0, 3), st.integers(1, 40))
    def test_lemma_properties(self, seed, c0, length):
        rng = random.Random(seed)
        ocn = random_unary_ocn(rng, 5, 2)
        path = random_path(rng, ocn, c0, length)
        lf = to_linear_form(path, c0, start=ocn.initial)
        ok, final = linear_form_executable(lf, c0)
        assert ok
        assert lf.length == len(path)
        assert final >= run_of_path(path, c0).trajectory[-1]
        assert lf.underlying_length <= 2 * len(ocn.states) ** 2
        unrolled = lf.unroll()
        if path:
            assert unrolled[-1].dst == path[-1].dst
            assert run_of_path(unrolled, c0).trajectory[-1] == final

    @settings(max_examples=150, deadline=None)
    @given(st.lists(st.tuples(st.lists(st.integers(-2, 2), min_size=1, max_size=3),
                              st.integers(0, 12)), max_size=3),
           st.integers(0, 6))
    def test_executable_matches_unrolling(self, loops, c):
        lf = LinearForm("q", ((),) * (len(loops) + 1),
                        tuple((tuple(Transition("q", "a", e, "q") for e in effs), k)
                              for effs, k in loops))
        unrolled = lf.unroll()
        try:
            expected = (True, run_of_path(unrolled, c).trajectory[-1])
        except ValueError:
            expected = (False, None)
        assert linear_form_executable(lf, c) == expected
