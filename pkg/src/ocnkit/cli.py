"""Command-line front end.

Exit codes: 0 the property holds (word accepted), 1 it fails (a witness is
printed), 2 usage or input error, 3 the net is outside every supported class.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
import warnings

from ocnkit.core import Ocn, OcnError, Verdict, accepts, accepts_bounded, format_ocn, parse_ocn

EXIT_HOLDS, EXIT_FAILS, EXIT_INPUT, EXIT_SCOPE = 0, 1, 2, 3
CLASSES = ("auto", "unary", "det", "unamb")


class OutOfScope(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _load_net(args) -> Ocn:
    if not args.net:
        raise OcnError("--net is required")
    return parse_ocn(_read(args.net))


def _load_machine(args):
    from ocnkit.reductions import parse_2cm

    if not args.machine:
        raise OcnError("--2cm is required")
    return parse_2cm(_read(args.machine))


def _word(args) -> tuple[str, ...]:
    if args.word is None:
        raise OcnError("--word is required")
    return tuple(args.word.split())


def pick_class(ocn: Ocn, requested: str) -> str:
    """Resolve ``auto``: unary alphabet, then determinism, then structural unambiguity."""
    from ocnkit.unamb import structural_ambiguity

    if requested != "auto":
        return requested
    if ocn.is_unary:
        return "unary"
    if ocn.is_deterministic:
        return "det"
    if not structural_ambiguity(ocn, ocn.initial).ambiguous:
        return "unamb"
    raise OutOfScope("net is neither unary, deterministic nor unambiguous; "
                     "general universality deciders are out of scope")


def decide(problem: str, ocn: Ocn, cls: str, c0: int) -> Verdict:
    """Run the decider for ``problem`` in {universal, iv-universal, bounded-universal} on class ``cls``."""
    from ocnkit import det, unamb, unary

    s0 = ocn.initial
    if cls == "unary":
        if not ocn.is_unary:
            raise OutOfScope("class unary needs a one-letter alphabet")
        table = {"universal": lambda: unary.decide_universality_unary(ocn, s0, c0),
                 "iv-universal": lambda: unary.decide_iv_universality_unary(ocn, s0),
                 "bounded-universal": lambda: unary.decide_bounded_universality_unary(ocn, s0, c0)}
    elif cls == "det":
        if not ocn.is_deterministic:
            raise OutOfScope("class det needs a deterministic net")
        table = {"universal": lambda: det.decide_det_universality(ocn, s0, c0),
                 "iv-universal": lambda: det.decide_det_iv_universality(ocn, s0),
                 "bounded-universal": lambda: det.decide_det_bounded_universality(ocn, s0, c0)}
    elif cls == "unamb":
        if problem == "universal" and not ocn.is_unary:
            raise OutOfScope("universality of unambiguous nets is only supported for one-letter alphabets")
        table = {"universal": lambda: unamb.decide_uocn_universality_unary(ocn, s0, c0),
                 "iv-universal": lambda: unamb.decide_suocn_iv_universality(ocn, s0),
                 "bounded-universal": lambda: unamb.decide_uocn_bounded_universality(ocn, s0, c0)}
    else:
        raise OcnError(f"unknown class {cls!r}")
    try:
        return table[problem]()
    except unamb.AmbiguousNet as exc:
        raise OutOfScope(str(exc)) from None


def _explain(ocn: Ocn, cls: str, c0: int) -> list[str]:
    lines = []
    if cls == "unary":
        from ocnkit.unary import langvia_lasso, pump_cycles, stable_states

        cycles = pump_cycles(ocn)
        lines.append("pump states: " + (" ".join(sorted(cycles)) or "(none)"))
        lines.append("stable states: " + (" ".join(sorted(stable_states(ocn))) or "(none)"))
        for r in sorted(cycles):
            lasso = langvia_lasso(ocn, ocn.initial, c0, r, "pump", cycle=cycles[r]).minimized()
            lines.append(f"via {r}: {lasso}")
    elif cls == "det":
        from ocnkit.det import eval_conditions

        lines += str(eval_conditions(ocn, c0)).splitlines()
    elif cls == "unamb":
        from ocnkit.unamb import semantic_ambiguity

        lines.append("ambiguity: " + semantic_ambiguity(ocn, ocn.initial, c0).describe())
    return lines


def _verdict_output(args, verdict: Verdict, cls: str, seconds: float, explain: list[str]) -> str:
    if args.format == "json":
        data = verdict.to_dict()
        data["class"] = cls
        data["timings"] = {"decide_seconds": round(seconds, 6)}
        if explain:
            data["explain"] = explain
        return json.dumps(data)
    lines = [f"answer: {verdict.answer}", f"class: {cls}", f"lemma: {verdict.lemma}"]
    if verdict.parameter is not None:
        lines.append(f"parameter: {verdict.parameter}")
    if verdict.witness is not None:
        lines.append("witness: " + (" ".join(verdict.witness) or "(empty word)"))
    lines += [f"note: {n}" for n in verdict.notes]
    lines += explain
    return "\n".join(lines)


def _membership_output(args, accepted: bool) -> str:
    if args.format == "json":
        return json.dumps({"answer": "accepted" if accepted else "rejected"})
    return "accepted" if accepted else "rejected"


def run(args) -> tuple[int, str]:
    cmd = args.command
    if cmd in ("member", "member-bounded"):
        ocn = _load_net(args)
        word = _word(args)
        if cmd == "member":
            ok = accepts(ocn, ocn.initial, args.c0, word)
        else:
            if args.bound is None:
                raise OcnError("--bound is required")
            ok = accepts_bounded(ocn, ocn.initial, args.c0, args.bound, word)
        return (EXIT_HOLDS if ok else EXIT_FAILS), _membership_output(args, ok)

    if cmd in ("universal", "iv-universal", "bounded-universal"):
        ocn = _load_net(args)
        cls = pick_class(ocn, args.cls)
        start = time.perf_counter()
        verdict = decide(cmd, ocn, cls, args.c0)
        seconds = time.perf_counter() - start
        explain = _explain(ocn, cls, args.c0) if args.explain else []
        code = EXIT_HOLDS if verdict.universal else EXIT_FAILS
        return code, _verdict_output(args, verdict, cls, seconds, explain)

    if cmd == "conditions":
        from ocnkit.det import eval_conditions

        ocn = _load_net(args)
        if not ocn.is_deterministic:
            raise OutOfScope("conditions C1-C5 are defined for deterministic nets")
        rep = eval_conditions(ocn, args.c0, args.bound)
        ok = all((rep.c1, rep.c2, rep.c3, rep.c4, rep.c5))
        if args.format == "json":
            out = json.dumps({f"C{i}": v for i, v in
                              enumerate((rep.c1, rep.c2, rep.c3, rep.c4, rep.c5), 1)}
                             | {"ceiling": rep.ceiling})
        else:
            out = str(rep)
        return (EXIT_HOLDS if ok else EXIT_FAILS), out

    if cmd == "ambiguity":
        from ocnkit.unamb import semantic_ambiguity, structural_ambiguity

        ocn = _load_net(args)
        if args.c0_given:
            rep = semantic_ambiguity(ocn, ocn.initial, args.c0)
        else:
            rep = structural_ambiguity(ocn, ocn.initial)
        if args.format == "json":
            data = {"ambiguous": rep.ambiguous, "verified": rep.verified}
            if rep.witness:
                data["witness"] = list(rep.witness[0])
            out = json.dumps(data)
        else:
            out = rep.describe()
        return (EXIT_FAILS if rep.ambiguous else EXIT_HOLDS), out

    if cmd == "reduce":
        from ocnkit.reductions import build_net_A, build_net_Aprime

        m = _load_machine(args)
        net = build_net_Aprime(m) if args.prime else build_net_A(m)
        return EXIT_HOLDS, format_ocn(net).rstrip("\n")

    if cmd == "witness":
        from ocnkit.reductions import HaltedEarly, witness_word, witness_word_bounded

        m = _load_machine(args)
        if args.n is None or args.n < 1:
            raise OcnError("--n must be a positive integer")
        try:
            word = witness_word_bounded(m, args.n) if args.prime else witness_word(m, args.n)
        except HaltedEarly as exc:
            return EXIT_FAILS, f"no witness: {exc}"
        return EXIT_HOLDS, " ".join(word)

    raise OcnError(f"unknown command {cmd!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ocnkit", description="Universality tools for one-counter nets.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("member", "member-bounded", "universal", "iv-universal", "bounded-universal",
                 "conditions", "ambiguity", "reduce", "witness"):
        p = sub.add_parser(name)
        p.add_argument("--net", help="net file, or - for standard input")
        p.add_argument("--2cm", dest="machine", help="two-counter machine file, or -")
        p.add_argument("--c0", type=int, default=None, help="initial counter (default 0)")
        p.add_argument("--bound", type=int, help="counter ceiling")
        p.add_argument("--word", help='space-separated letters, e.g. "a b a"')
        p.add_argument("--class", dest="cls", choices=CLASSES, default="auto")
        p.add_argument("--n", type=int)
        p.add_argument("--prime", action="store_true", help="use the bounded-universality construction")
        p.add_argument("--explain", action="store_true")
        p.add_argument("--format", choices=("text", "json"), default="text")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    args.c0_given = args.c0 is not None
    if args.c0 is None:
        args.c0 = 0
    if args.c0 < 0 or (args.bound is not None and args.bound < 0):
        print("error: counters must be non-negative", file=sys.stderr)
        return EXIT_INPUT
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            code, out = run(args)
        for w in caught:
            print(f"warning: {w.message}", file=sys.stderr)
    except OutOfScope as exc:
        print(f"out of scope: {exc}", file=sys.stderr)
        return EXIT_SCOPE
    except (OcnError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    print(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
