import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ocnkit.core import Ocn, OcnError, Transition, path_measures, unary_bounded_table, unary_table
from ocnkit.generators import random_unary_ocn
from ocnkit.oracle import oracle_enumerate_simple_cycles, oracle_unary_table
from ocnkit.paths import is_cycle
from ocnkit.unary import (Bounds, StableInfo, UnaryLasso, decide_bounded_universality_unary,
                          decide_iv_universality_unary, decide_universality_unary, langvia_lasso,
                          lasso_accepts, pump_cycles, pump_states, stable_states,
                          unary_nfa_universal, zero_cycle_for)

from conftest import loop_net


def chain(*edges, accepting=("q",), initial="q"):
    """Unary net from ``(src, effect, dst)`` triples."""
    trans = tuple(Transition(p, "a", e, q) for p, e, q in edges)
    states = tuple(dict.fromkeys([initial] + [x for p, _, q in edges for x in (p, q)]))
    return Ocn(states, ("a",), initial, trans, frozenset(accepting))


def short_cycles(ocn, q):
    """Every cycle at ``q`` of length <= |Q|, enumerated transition by transition."""
    out = []

    def walk(p, path):
        if path and p == q:
            out.append(tuple(path))
        if len(path) == len(ocn.states):
            return
        for t in ocn.outgoing[p]:
            walk(t.dst, path + [t])

    walk(q, [])
    return out


def flat(cycles, want):
    return any(path_measures(c)[2] == 0 and want(path_measures(c)[0]) for c in cycles)


def expected_pump(ocn):
    return {q for q in ocn.states if flat(short_cycles(ocn, q), lambda e: e >= 0)}


def expected_stable(ocn):
    reach = {q: ocn.reachable(q) for q in ocn.states}
    negative = [c for c in oracle_enumerate_simple_cycles(ocn) if path_measures(c)[0] < 0]
    out = set()
    for q in ocn.states:
        cycles = short_cycles(ocn, q)
        if flat(cycles, lambda e: e == 0):
            out.add(q)
        elif flat(cycles, lambda e: e > 0) and any(
                q in reach[c[0].src] and c[0].src in reach[q] for c in negative):
            out.add(q)
    return out


unary_nets = st.builds(lambda seed: random_unary_ocn(random.Random(seed)), st.integers(0, 2**32 - 1))


class TestPumpStable:
    def test_up_loop(self):
        ocn = loop_net(1)
        assert pump_states(ocn) == {"q"}
        assert pump_cycles(ocn)["q"] == ocn.transitions

    def test_down_loop(self):
        assert pump_states(loop_net(-1)) == set()

    def test_negative_two_cycle(self):
        assert pump_states(chain(("q", 0, "r"), ("r", -1, "q"))) == set()

    def test_stable_examples(self):
        assert stable_states(loop_net(1, -1)) == {"q"}
        assert stable_states(loop_net(0)) == {"q"}
        assert stable_states(loop_net(1)) == set()

    def test_needs_unary(self):
        ocn = Ocn(("q",), ("a", "b"), "q", (), frozenset())
        with pytest.raises(OcnError):
            pump_states(ocn)

    @settings(max_examples=150, deadline=None)
    @given(unary_nets)
    def test_pump_matches_enumeration(self, ocn):
        assert set(pump_states(ocn)) == expected_pump(ocn)
        for q, cyc in pump_cycles(ocn).items():
            effect, _, depth = path_measures(cyc)
            assert cyc[0].src == q and is_cycle(cyc) and effect >= 0 and depth == 0
            assert len(cyc) <= len(ocn.states)

    @settings(max_examples=150, deadline=None)
    @given(unary_nets)
    def test_stable_matches_enumeration(self, ocn):
        assert set(stable_states(ocn)) == expected_stable(ocn)


class TestZeroCycle:
    def test_balanced_loops(self):
        z = zero_cycle_for(loop_net(1, -1), "q")
        assert sorted(t.effect for t in z) == [-1, 1]
        assert path_measures(z)[0] == 0 and path_measures(z)[2] == 0

    def test_zero_loop(self):
        ocn = loop_net(0)
        assert zero_cycle_for(ocn, "q") == ocn.transitions

    def test_composed(self):
        ocn = chain(("q", 2, "q"), ("q", 0, "x"), ("x", -1, "x"), ("x", 0, "q"))
        up, to_x, down, back = ocn.transitions
        z = zero_cycle_for(ocn, "q", StableInfo(None, (up,), (down,)))
        assert z == (up,) + (to_x, down, back) * 2
        assert path_measures(z)[0] == 0

    def test_not_stable(self):
        with pytest.raises(OcnError):
            zero_cycle_for(loop_net(1), "q")

    @settings(max_examples=150, deadline=None)
    @given(unary_nets)
    def test_effect_zero_depth_bounded(self, ocn):
        b5 = Bounds.of(ocn).B5
        for q in stable_states(ocn):
            z = zero_cycle_for(ocn, q)
            effect, _, depth = path_measures(z)
            assert is_cycle(z) and z[0].src == q
            assert effect == 0 and depth <= b5


class TestLasso:
    def test_all_lengths(self):
        ocn = loop_net(1)
        lasso = langvia_lasso(ocn, "q", 0, "q", "pump").minimized()
        assert lasso.period == 1 and all(lasso.table)

    def test_not_pump(self):
        with pytest.raises(OcnError):
            langvia_lasso(loop_net(-1), "q", 0, "q", "pump")

    def test_from_one(self):
        ocn = chain(("s", 0, "r"), ("r", 1, "r"), accepting=("r",), initial="s")
        lasso = langvia_lasso(ocn, "s", 0, "r", "pump")
        assert [lasso.accepts(n) for n in range(lasso.threshold + 5)] == \
            [False] + [True] * (lasso.threshold + 4)

    def test_huge_lengths(self):
        assert lasso_accepts(UnaryLasso(0, 1, (True,)), 2**64)
        odd = UnaryLasso(2, 2, (False, True, False, True))
        assert [lasso_accepts(odd, n) for n in range(6)] == [False, True, False, True, False, True]
        assert not lasso_accepts(odd, 10**12)

    def test_text_round_trip(self):
        lasso = UnaryLasso(2, 3, (True, False, True, True, False))
        assert UnaryLasso.parse(str(lasso)) == lasso

    @given(st.integers(0, 6), st.integers(1, 5), st.data())
    def test_minimized_same_set(self, t, p, data):
        table = data.draw(st.lists(st.booleans(), min_size=t + p, max_size=t + p))
        lasso = UnaryLasso(t, p, tuple(table))
        small = lasso.minimized()
        assert small.period <= p and small.threshold <= t
        assert all(small.accepts(n) == lasso.accepts(n) for n in range(60))

    @settings(max_examples=40, deadline=None)
    @given(unary_nets, st.integers(0, 3))
    def test_pump_lasso_matches_table(self, ocn, c0):
        for r, cyc in pump_cycles(ocn).items():
            lasso = langvia_lasso(ocn, ocn.initial, c0, r, "pump", cycle=cyc)
            n_max = lasso.threshold + 3 * lasso.period
            table = unary_table(ocn, ocn.initial, c0, n_max, via=r)
            assert [lasso.accepts(n) for n in range(n_max + 1)] == table


class TestNfaUniversal:
    def test_self_loop(self):
        assert unary_nfa_universal(loop_net(0), "q").universal

    def test_two_cycle(self):
        v = unary_nfa_universal(chain(("q", 0, "r"), ("r", 0, "q")), "q")
        assert not v.universal and len(v.witness) == 1

    def test_all_but_one(self):
        ocn = chain(("q", 0, "x"), ("x", 0, "y"), ("y", 0, "y"), ("q", 0, "z"), ("z", 0, "w"),
                    ("w", 0, "z"), accepting=("q", "y"))
        v = unary_nfa_universal(ocn, "q")
        assert not v.universal and len(v.witness) == 1


class TestDeciders:
    def test_up_loop_universal(self):
        assert decide_universality_unary(loop_net(1), "q", 0).universal

    def test_countdown(self):
        v = decide_universality_unary(loop_net(-1), "q", 2)
        assert not v.universal and v.witness == ("a",) * 3

    def test_iv_steep_countdown(self):
        ocn = loop_net(-5)
        v = decide_iv_universality_unary(ocn, "q")
        assert not v.universal
        for c0 in range(51):
            assert not all(oracle_unary_table(ocn, "q", c0, 100))

    def test_iv_up_loop(self):
        v = decide_iv_universality_unary(loop_net(1), "q")
        assert v.universal and v.parameter is not None

    def test_iv_mixed_loops(self):
        ocn = loop_net(-1, 1)
        v = decide_iv_universality_unary(ocn, "q")
        assert v.universal
        assert all(oracle_unary_table(ocn, "q", v.parameter, 10**4))

    def test_bounded_zero_loop(self):
        ocn = loop_net(0)
        v = decide_bounded_universality_unary(ocn, "q", 0)
        assert v.universal
        assert all(unary_bounded_table(ocn, "q", 0, v.parameter, 500))

    def test_bounded_up_loop(self):
        ocn = loop_net(1)
        v = decide_bounded_universality_unary(ocn, "q", 0)
        assert not v.universal
        for b in range(51):
            assert not unary_bounded_table(ocn, "q", 0, b, b + 1)[b + 1]

    def test_bounded_alternation(self):
        ocn = loop_net(1, -1)
        assert decide_bounded_universality_unary(ocn, "q", 0).universal
        assert all(unary_bounded_table(ocn, "q", 0, 1, 200))

    @settings(max_examples=60, deadline=None)
    @given(unary_nets, st.integers(0, 3))
    def test_universality_matches_oracle(self, ocn, c0):
        v = decide_universality_unary(ocn, ocn.initial, c0)
        table = oracle_unary_table(ocn, ocn.initial, c0, 2000)
        if v.universal:
            assert all(table)
        else:
            assert not oracle_unary_table(ocn, ocn.initial, c0, len(v.witness))[-1]
