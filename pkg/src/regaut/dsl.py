"""The ``.ra`` text format for automata, data-word syntax, and the printer.

Example::

    automaton fig1
    domain nat-eq
    kind gra
    alphabet a
    registers r
    locations l0 l1 l2
    init l0
    accepting l2
    edge l0 a "!(r'=#)" l1
    edge l1 a "r=# & r'=r" l2
    edge l1 a "!(r=#) & r'=r" l1

``kind`` and ``locations`` are optional: without ``kind`` an automaton is
RA when every guard pins every register; without ``locations`` the
locations are collected in order of appearance.
"""
from __future__ import annotations

import re
import shlex
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .automaton import GRA, RA, Automaton, Edge, validate
from .core import (INPUT, And, Atom, Constraint, DataWord, Domain, DomainError, Input, Not,
                   Or, Reg, RegNext, TrueC, check_domain, format_datum, is_guess_free)

IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_.\-]*")


@dataclass(frozen=True)
class SourceSpan:
    file: str
    line: int
    col: int
    length: int = 1

    def __str__(self):
        return f"{self.file}:{self.line}:{self.col}"


class ParseError(ValueError):
    def __init__(self, message: str, span: SourceSpan):
        super().__init__(f"{span}: {message}")
        self.message = message
        self.span = span


# -- constraints --------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<op>[()!&|=<#])|(?P<id>[A-Za-z_][A-Za-z0-9_]*'?))")


class _GuardParser:
    def __init__(self, text: str, span: SourceSpan, registers: Optional[set]):
        self.text = text
        self.span = span
        self.registers = registers
        self.toks = []
        pos = 0
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                self.fail(f"unexpected character {text[pos:].lstrip()[:1]!r}", pos)
            start = m.start("op") if m.group("op") else m.start("id")
            self.toks.append((m.group("op") or m.group("id"), start))
            pos = m.end()
        self.i = 0

    def fail(self, msg, offset=None):
        if offset is None:
            offset = self.toks[self.i][1] if self.i < len(self.toks) else len(self.text)
        raise ParseError(msg, SourceSpan(self.span.file, self.span.line,
                                         self.span.col + 1 + offset, 1))

    def peek(self):
        return self.toks[self.i][0] if self.i < len(self.toks) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None:
            self.fail("unexpected end of guard")
        if expected is not None and tok != expected:
            self.fail(f"expected {expected!r}, found {tok!r}")
        self.i += 1
        return tok

    def parse(self) -> Constraint:
        phi = self.disj()
        if self.peek() is not None:
            self.fail(f"unexpected {self.peek()!r}")
        return phi

    def disj(self):
        phi = self.conj()
        while self.peek() == "|":
            self.take()
            phi = Or(phi, self.conj())
        return phi

    def conj(self):
        phi = self.unary()
        while self.peek() == "&":
            self.take()
            phi = And(phi, self.unary())
        return phi

    def unary(self):
        tok = self.peek()
        if tok == "!":
            self.take()
            return Not(self.unary())
        if tok == "(":
            self.take()
            phi = self.disj()
            self.take(")")
            return phi
        if tok == "true":
            self.take()
            return TrueC()
        left = self.term()
        rel = self.peek()
        if rel not in ("=", "<"):
            self.fail("expected '=' or '<'")
        self.take()
        return Atom(rel, left, self.term())

    def term(self):
        tok = self.peek()
        if tok == "#":
            self.take()
            return INPUT
        if tok is None or not IDENT.fullmatch(tok.rstrip("'")) or tok == "true":
            self.fail(f"expected a term, found {tok!r}")
        name = tok.rstrip("'")
        if self.registers is not None and name not in self.registers:
            self.fail(f"undeclared register {name!r}")
        self.take()
        return RegNext(name) if tok.endswith("'") else Reg(name)


def parse_constraint(text: str, registers=None, span: Optional[SourceSpan] = None) -> Constraint:
    span = span or SourceSpan("<guard>", 1, 0)
    return _GuardParser(text, span, None if registers is None else set(registers)).parse()


def _term_str(t) -> str:
    return str(t)


def format_constraint(phi: Constraint) -> str:
    """Print ``phi`` so that ``parse_constraint`` rebuilds the identical tree."""
    if isinstance(phi, TrueC):
        return "true"
    if isinstance(phi, Atom):
        return f"{_term_str(phi.left)}{phi.rel}{_term_str(phi.right)}"
    if isinstance(phi, Not):
        return f"!({format_constraint(phi.arg)})"
    if isinstance(phi, And):
        # the parser nests & to the left, so only a right-hand & or any | needs parens
        left = _wrap(phi.left, (Or,))
        right = _wrap(phi.right, (Or, And))
        return f"{left} & {right}"
    if isinstance(phi, Or):
        return f"{_wrap(phi.left, ())} | {_wrap(phi.right, (Or,))}"
    raise TypeError(f"not a constraint: {phi!r}")


def _wrap(phi, kinds) -> str:
    s = format_constraint(phi)
    return f"({s})" if isinstance(phi, kinds) else s


# -- automata -----------------------------------------------------------------

KEYWORDS = ("automaton", "domain", "kind", "alphabet", "registers", "locations",
            "init", "accepting", "edge")


def _strip_comment(line: str) -> str:
    quoted = False
    for i, ch in enumerate(line):
        if ch == '"':
            quoted = not quoted
        elif ch == "#" and not quoted:
            return line[:i]
    return line


def _fields(line: str, span: SourceSpan) -> list:
    """Whitespace-separated fields with their 0-based columns; quotes group."""
    out = []
    i = 0
    while i < len(line):
        if line[i].isspace():
            i += 1
            continue
        if line[i] == '"':
            j = line.find('"', i + 1)
            if j < 0:
                raise ParseError("unterminated guard string", SourceSpan(span.file, span.line, i + 1))
            out.append((line[i:j + 1], i))
            i = j + 1
        else:
            j = i
            while j < len(line) and not line[j].isspace():
                j += 1
            out.append((line[i:j], i))
            i = j
    return out


def parse_automaton(text: str, file: str = "<string>", check: bool = True) -> Automaton:
    """Parse one automaton; raise ``ParseError`` on the first problem."""
    decl = {}
    edges = []  # (src, label, guard text, dst, line, cols)
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip_comment(raw)
        if not line.strip():
            continue
        here = SourceSpan(file, lineno, 1)
        fields = _fields(line, here)
        key, col = fields[0]

        def at(c, length=1):
            return SourceSpan(file, lineno, c + 1, max(1, length))

        if key not in KEYWORDS:
            raise ParseError(f"unknown keyword {key!r}", at(col, len(key)))
        args = fields[1:]
        if key == "edge":
            if len(args) != 4:
                raise ParseError("edge needs: <src> <label> \"<guard>\" <dst>", at(col, len(key)))
            (src, c1), (lab, c2), (guard, c3), (dst, c4) = args
            if not (guard.startswith('"') and guard.endswith('"') and len(guard) >= 2):
                raise ParseError("guard must be a quoted string", at(c3, len(guard)))
            edges.append((src, lab, guard[1:-1], dst, lineno, (c1, c2, c3, c4)))
            continue
        if key in decl:
            raise ParseError(f"duplicate {key!r} line", at(col, len(key)))
        for a, c in args:
            if not IDENT.fullmatch(a) and key != "domain":
                raise ParseError(f"invalid identifier {a!r}", at(c, len(a)))
        if key in ("automaton", "domain", "kind", "init") and len(args) != 1:
            raise ParseError(f"{key} takes exactly one argument", at(col, len(key)))
        decl[key] = (args, lineno, col)

    def need(key):
        if key not in decl:
            raise ParseError(f"missing {key!r} line", SourceSpan(file, 1, 1))
        return decl[key]

    (name, _), = need("automaton")[0]
    (dom_txt, dc), = need("domain")[0]
    dom_line = decl["domain"][1]
    try:
        dom = Domain(dom_txt)
    except ValueError:
        raise ParseError(f"unknown domain {dom_txt!r} (use nat-eq or rat-ord)",
                         SourceSpan(file, dom_line, dc + 1, len(dom_txt))) from None
    alphabet = tuple(a for a, _ in need("alphabet")[0])
    if not alphabet:
        raise ParseError("alphabet must not be empty", SourceSpan(file, decl["alphabet"][1], 1))
    registers = tuple(a for a, _ in decl.get("registers", ([], 0, 0))[0])
    (init, _), = need("init")[0]
    accepting_list = [a for a, _ in decl.get("accepting", ([], 0, 0))[0]]
    declared_locs = None
    if "locations" in decl:
        declared_locs = [a for a, _ in decl["locations"][0]]
    locs = list(declared_locs) if declared_locs is not None else []

    def use_loc(loc, line, c):
        if loc in locs:
            return
        if declared_locs is not None:
            raise ParseError(f"undeclared location {loc!r}", SourceSpan(file, line, c + 1, len(loc)))
        locs.append(loc)

    use_loc(init, decl["init"][1], decl["init"][0][0][1])
    for a, c in decl.get("accepting", ([], 0, 0))[0]:
        use_loc(a, decl["accepting"][1], c)
    edge_objs = []
    for src, lab, gtext, dst, lineno, (c1, c2, c3, c4) in edges:
        use_loc(src, lineno, c1)
        use_loc(dst, lineno, c4)
        if lab not in alphabet:
            raise ParseError(f"label {lab!r} is not in the alphabet", SourceSpan(file, lineno, c2 + 1, len(lab)))
        guard = parse_constraint(gtext, registers, SourceSpan(file, lineno, c3 + 1))
        try:
            check_domain(guard, dom)
        except DomainError as exc:
            raise ParseError(str(exc), SourceSpan(file, lineno, c3 + 1, len(gtext) + 2)) from None
        edge_objs.append(Edge(src, lab, guard, dst))
    if "kind" in decl:
        (kind_txt, kc), = decl["kind"][0]
        if kind_txt.lower() not in ("ra", "gra"):
            raise ParseError(f"unknown kind {kind_txt!r} (use ra or gra)",
                             SourceSpan(file, decl["kind"][1], kc + 1, len(kind_txt)))
        kind = kind_txt.upper()
    else:
        kind = RA if all(is_guess_free(e.guard, registers) for e in edge_objs) else GRA
    A = Automaton(name=name, domain=dom, alphabet=alphabet, registers=registers,
                  locations=tuple(locs), init=init, accepting=frozenset(accepting_list),
                  edges=tuple(edge_objs), kind=kind)
    if check:
        diags = validate(A)
        if diags:
            raise ParseError(diags[0], SourceSpan(file, 1, 1))
    return A


def print_automaton(A: Automaton) -> str:
    lines = [
        f"automaton {A.name}",
        f"domain {A.domain.value}",
        f"kind {A.kind.lower()}",
        "alphabet " + " ".join(A.alphabet),
        ("registers " + " ".join(A.registers)).rstrip(),
        "locations " + " ".join(A.locations),
        f"init {A.init}",
        ("accepting " + " ".join(l for l in A.locations if l in A.accepting)).rstrip(),
    ]
    for e in A.edges:
        lines.append(f'edge {e.src} {e.label} "{format_constraint(e.guard)}" {e.dst}')
    return "\n".join(lines) + "\n"


def load_automaton(path: str) -> Automaton:
    with open(path, encoding="utf-8") as fh:
        return parse_automaton(fh.read(), file=path)


# -- data words ---------------------------------------------------------------

def parse_datum(text: str, dom: Domain):
    try:
        if dom is Domain.NAT_EQ:
            if not re.fullmatch(r"\d+", text):
                raise ValueError
            return int(text)
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"malformed {dom.value} datum {text!r}") from None


def parse_word(text: str, dom: Domain, alphabet=("a",)) -> DataWord:
    """Parse ``a:3 b:17`` (or bare ``3 17`` over a one-letter alphabet)."""
    text = text.strip()
    if text in ("", "ε", "eps"):
        return ()
    out = []
    for tok in re.split(r"[\s·]+", text):
        if not tok:
            continue
        if ":" in tok:
            label, _, datum = tok.partition(":")
            if label not in alphabet:
                raise ValueError(f"label {label!r} is not in the alphabet")
        else:
            if len(alphabet) != 1:
                raise ValueError("bare data need a one-letter alphabet; write label:datum")
            label, datum = alphabet[0], tok
        out.append((label, parse_datum(datum, dom)))
    return tuple(out)


def format_word(w: DataWord) -> str:
    """Letter syntax used in all machine-readable output; ``""`` is the empty word."""
    return " ".join(f"{a}:{format_datum(d)}" for a, d in w)
