import random

from hypothesis import strategies as st

from ocnkit.core import Ocn, Transition
from ocnkit.generators import random_ocn


def loop_net(*effects, accepting=True) -> Ocn:
    """One state ``q`` with a self-loop on ``a`` for each effect."""
    trans = tuple(Transition("q", "a", e, "q") for e in effects)
    return Ocn(("q",), ("a",), "q", trans, frozenset({"q"}) if accepting else frozenset())


@st.composite
def small_nets(draw, max_states=4, letters=("a", "b"), max_norm=2):
    """Random nets drawn through the seeded generator so shrinking stays cheap."""
    seed = draw(st.integers(0, 2**32 - 1))
    rng = random.Random(seed)
    n = draw(st.integers(1, max_states))
    k = draw(st.integers(1, len(letters)))
    return random_ocn(rng, n, letters[:k], draw(st.integers(0, max_norm)),
                      density=rng.uniform(0.15, 0.6))


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
