"""Decision procedures for universality problems of one-counter nets."""

from ocnkit.core import (
    Config,
    NotExecutable,
    Ocn,
    OcnError,
    ParseError,
    Run,
    Transition,
    Verdict,
    accepts,
    accepts_bounded,
    accepts_via,
    format_ocn,
    parse_ocn,
    path_measures,
    run_of_path,
    underlying_nfa,
)

__version__ = "0.1.0"
