"""Command-line interface.

Exit codes: 0 the property holds, 1 refuted (witness printed), 2 bounded or
inconclusive, 3 input or internal error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import fixtures
from .automaton import (RA, accepts, check_unambiguous_ra, count_accepting_runs,
                        make_clean, validate)
from .core import Domain
from .decide import (BOUND_EXCEEDED, Contained, ContainedUpToDepth, NotContained,
                     NotUniversal, Universal, accepts_safe, check_containment_gura,
                     check_containment_ra_ura_bounded, decide_universality)
from .dsl import ParseError, format_word, parse_automaton, parse_word, print_automaton
from .oracle import (OracleBudget, oracle_ambiguous, oracle_contained,
                     oracle_reachable_configs, oracle_universal)
from .config import render

HOLDS, REFUTED, BOUNDED, ERROR = 0, 1, 2, 3


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(ERROR)


def load(ref: str):
    """Automaton from a path, or from a fixture name."""
    if os.path.exists(ref):
        with open(ref, encoding="utf-8") as fh:
            return parse_automaton(fh.read(), file=ref)
    if ref in fixtures.automaton_names():
        return fixtures.load(ref)
    raise InputError(f"no such file or fixture: {ref}")


class Output:
    def __init__(self, as_json: bool):
        self.as_json = as_json

    def verdict(self, verdict: str, code: int, witness=None, stats=None, **extra):
        if self.as_json:
            doc = {"verdict": verdict}
            if witness is not None:
                doc["witness"] = format_word(witness)
            doc["stats"] = stats or {}
            doc.update(extra)
            print(json.dumps(doc, sort_keys=True))
        else:
            print(verdict)
            if witness is not None:
                print(f"witness: {format_word(witness) or 'ε'}")
            for k, v in (extra or {}).items():
                print(f"{k}: {v}")
            for k, v in (stats or {}).items():
                print(f"  {k}: {v}")
        return code


def _reverify(ok: bool):
    if not ok:
        raise RuntimeError("witness failed re-verification")


def cmd_validate(args, out):
    if os.path.exists(args.file):
        A = parse_automaton(_read(args.file), file=args.file, check=False)
    else:
        A = load(args.file)
    diags = validate(A)
    if diags:
        return out.verdict("invalid", REFUTED, diagnostics=diags)
    return out.verdict("valid", HOLDS, kind=A.kind)


def _read(path):
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def cmd_run(args, out):
    A = load(args.file)
    w = parse_word(args.word, A.domain, A.alphabet)
    ok = accepts(A, w, pool_size=args.pool_size)
    extra = {}
    if args.count_runs:
        n = count_accepting_runs(A, w, pool_size=args.pool_size)
        extra["runs"] = ">=2" if n >= 2 else str(n)
    return out.verdict("accept" if ok else "reject", HOLDS if ok else REFUTED, **extra)


def cmd_check_unambiguous(args, out):
    A = load(args.file)
    if A.kind == RA:
        wit = check_unambiguous_ra(A)
        if wit is None:
            return out.verdict("unambiguous", HOLDS)
        _reverify(count_accepting_runs(A, wit.word) >= 2)
        return out.verdict("ambiguous", REFUTED, witness=wit.word)
    budget = OracleBudget(max_len=args.oracle_len)
    hit = oracle_ambiguous(A, budget)
    if hit is None:
        return out.verdict("unambiguous-up-to-bound", BOUNDED, max_len=args.oracle_len)
    _reverify(count_accepting_runs(A, hit[0], pool_size=budget.pool_size) >= 2)
    return out.verdict("ambiguous", REFUTED, witness=hit[0])


def cmd_make_clean(args, out):
    A = load(args.file)
    A2 = make_clean(A)
    text = print_automaton(A2)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return HOLDS


def _bounded_universality(A, length, out, note):
    budget = OracleBudget(max_len=length)
    w = oracle_universal(A, budget)
    if w is None:
        return out.verdict("universal-up-to-bound", BOUNDED, max_len=length, note=note)
    _reverify(not accepts(A, w, pool_size=budget.pool_size))
    return out.verdict("not-universal", REFUTED, witness=w, reason="RejectedWord")


def cmd_check_universal(args, out):
    A = load(args.file)
    exact = A.kind == RA and (A.domain is Domain.NAT_EQ or len(A.registers) == 1)
    if exact and check_unambiguous_ra(A) is not None:
        exact = False
        note = "automaton is ambiguous; exact procedure not applicable"
    elif not exact:
        note = "no exact procedure for this automaton class"
    if not exact:
        return _bounded_universality(A, args.oracle_len, out, note)
    v = decide_universality(A, args.cap)
    if isinstance(v, Universal):
        return out.verdict("universal", HOLDS, stats=v.stats)
    if v.reason == BOUND_EXCEEDED:
        return out.verdict("not-universal", REFUTED, witness=v.witness, stats=v.stats,
                           reason=v.reason)
    _reverify(not accepts(A, v.witness))
    return out.verdict("not-universal", REFUTED, witness=v.witness, stats=v.stats, reason=v.reason)


def cmd_check_containment(args, out):
    A, B = load(args.file_a), load(args.file_b)
    if args.mode == "gura":
        v = check_containment_gura(A, B)
    else:
        v = check_containment_ra_ura_bounded(A, B, args.depth)
    if isinstance(v, NotContained):
        _reverify(accepts_safe(A, v.witness) and not accepts_safe(B, v.witness))
        return out.verdict("not-contained", REFUTED, witness=v.witness, stats=v.stats)
    if isinstance(v, ContainedUpToDepth):
        return out.verdict("contained-up-to-depth", BOUNDED, depth=v.depth)
    return out.verdict("contained", HOLDS, stats=v.stats, notes=list(v.notes))


def cmd_oracle(args, out):
    budget = OracleBudget(max_len=args.max_len)
    A = load(args.files[0])
    if args.what == "universal":
        w = oracle_universal(A, budget)
        if w is None:
            return out.verdict("none-found", BOUNDED, max_len=args.max_len)
        return out.verdict("rejected-word", REFUTED, witness=w)
    if args.what == "ambiguous":
        hit = oracle_ambiguous(A, budget)
        if hit is None:
            return out.verdict("none-found", BOUNDED, max_len=args.max_len)
        return out.verdict("ambiguous-word", REFUTED, witness=hit[0])
    if args.what == "contained":
        if len(args.files) != 2:
            raise InputError("oracle contained needs two automata")
        w = oracle_contained(A, load(args.files[1]), budget)
        if w is None:
            return out.verdict("none-found", BOUNDED, max_len=args.max_len)
        return out.verdict("separating-word", REFUTED, witness=w)
    configs = sorted(render(c) for c in oracle_reachable_configs(A, budget))
    if out.as_json:
        print(json.dumps({"verdict": "configurations", "configs": configs, "stats": {}}))
    else:
        print("\n".join(configs))
    return HOLDS


def cmd_fixtures(args, out):
    if args.action == "list":
        for n in fixtures.names():
            print(n)
        return HOLDS
    if not args.name:
        raise InputError("fixtures emit needs a name")
    try:
        sys.stdout.write(fixtures.fixture_text(args.name))
    except KeyError as exc:
        raise InputError(str(exc)) from None
    return HOLDS


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="regaut", description="Register automata over (N;=) and (Q;<,=).")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    # --json is accepted before or after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("validate", parents=[common], help="check well-formedness")
    s.add_argument("file")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("run", parents=[common], help="decide membership of a word")
    s.add_argument("file")
    s.add_argument("--word", required=True)
    s.add_argument("--count-runs", action="store_true")
    s.add_argument("--pool-size", type=int, default=None)
    s.set_defaults(func=cmd_run)

    s = sub.add_parser("check-unambiguous", parents=[common], help="exact for RA, bounded for GRA")
    s.add_argument("file")
    s.add_argument("--oracle-len", type=int, default=5)
    s.set_defaults(func=cmd_check_unambiguous)

    s = sub.add_parser("make-clean", parents=[common], help="write an equivalent clean automaton")
    s.add_argument("file")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_make_clean)

    s = sub.add_parser("check-universal", parents=[common], help="universality (exact for URA where supported)")
    s.add_argument("file")
    s.add_argument("--cap", type=int, default=None)
    s.add_argument("--oracle-len", type=int, default=5)
    s.set_defaults(func=cmd_check_universal)

    s = sub.add_parser("check-containment", parents=[common], help="is L(A) contained in L(B)?")
    s.add_argument("file_a")
    s.add_argument("file_b")
    s.add_argument("--mode", choices=["gura", "bounded"], default="gura")
    s.add_argument("--depth", type=int, default=5)
    s.set_defaults(func=cmd_check_containment)

    s = sub.add_parser("oracle", parents=[common], help="brute-force checks over canonical words")
    s.add_argument("what", choices=["universal", "ambiguous", "contained", "reachable"])
    s.add_argument("files", nargs="+")
    s.add_argument("--max-len", type=int, default=5)
    s.set_defaults(func=cmd_oracle)

    s = sub.add_parser("fixtures", parents=[common], help="list or print shipped fixtures")
    s.add_argument("action", choices=["list", "emit"])
    s.add_argument("name", nargs="?")
    s.set_defaults(func=cmd_fixtures)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else ERROR
    out = Output(args.json)
    try:
        return args.func(args, out)
    except (InputError, ParseError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ERROR
    except RuntimeError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return ERROR


if __name__ == "__main__":
    sys.exit(main())
