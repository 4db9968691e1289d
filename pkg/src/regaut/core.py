"""Data values, data words and the register-constraint language.

Data are plain Python numbers: ``int`` for (N;=) and ``fractions.Fraction``
for (Q;<,=).  The undefined register value is ``BOT`` (``None``).  ``BOT``
equals only itself, is unequal to every domain value and incomparable under
``<`` with everything.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence, Tuple, Union

BOT = None

Datum = Union[int, Fraction, None]
Letter = Tuple[str, Datum]
DataWord = Tuple[Letter, ...]


class Domain(enum.Enum):
    NAT_EQ = "nat-eq"
    RAT_ORD = "rat-ord"

    @property
    def relations(self) -> frozenset:
        return frozenset({"="}) if self is Domain.NAT_EQ else frozenset({"=", "<"})

    def coerce(self, value) -> Datum:
        """Normalise a raw number to this domain's datum type."""
        if value is BOT:
            return BOT
        if self is Domain.NAT_EQ:
            if isinstance(value, Fraction):
                if value.denominator != 1:
                    raise ValueError(f"{value} is not a natural number")
                value = value.numerator
            if not isinstance(value, int) or isinstance(value, bool) or value < 0:
                raise ValueError(f"{value!r} is not a natural number")
            return value
        return Fraction(value)


class DomainError(ValueError):
    """A constraint uses a relation the domain does not provide."""


def make_word(data: Iterable, label: str = "a") -> DataWord:
    """Build a word over a singleton alphabet from bare data."""
    return tuple((label, d) for d in data)


def word_data(w: DataWord) -> set:
    return {d for _, d in w}


# -- terms -------------------------------------------------------------------

@dataclass(frozen=True)
class Input:
    def __str__(self):
        return "#"


@dataclass(frozen=True)
class Reg:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class RegNext:
    name: str

    def __str__(self):
        return self.name + "'"


Term = Union[Input, Reg, RegNext]
INPUT = Input()


# -- constraints -------------------------------------------------------------

class Constraint:
    """Base class of the constraint AST."""

    __slots__ = ()

    def __and__(self, other: "Constraint") -> "Constraint":
        return And(self, other)

    def __or__(self, other: "Constraint") -> "Constraint":
        return Or(self, other)

    def __invert__(self) -> "Constraint":
        return Not(self)


@dataclass(frozen=True)
class TrueC(Constraint):
    pass


@dataclass(frozen=True)
class Atom(Constraint):
    rel: str
    left: Term
    right: Term

    def __post_init__(self):
        if self.rel not in ("=", "<"):
            raise ValueError(f"unknown relation {self.rel!r}")


@dataclass(frozen=True)
class Not(Constraint):
    arg: Constraint


@dataclass(frozen=True)
class And(Constraint):
    left: Constraint
    right: Constraint


@dataclass(frozen=True)
class Or(Constraint):
    left: Constraint
    right: Constraint


TRUE = TrueC()


def eq(t1: Term, t2: Term) -> Atom:
    return Atom("=", t1, t2)


def lt(t1: Term, t2: Term) -> Atom:
    return Atom("<", t1, t2)


def conj(*parts: Constraint) -> Constraint:
    """Left-nested conjunction; ``conj()`` is ``TRUE``."""
    if not parts:
        return TRUE
    out = parts[0]
    for p in parts[1:]:
        out = And(out, p)
    return out


def disj(*parts: Constraint) -> Constraint:
    if not parts:
        return Not(TRUE)
    out = parts[0]
    for p in parts[1:]:
        out = Or(out, p)
    return out


def atoms(phi: Constraint):
    """Yield every atom of ``phi``."""
    stack = [phi]
    while stack:
        node = stack.pop()
        if isinstance(node, Atom):
            yield node
        elif isinstance(node, Not):
            stack.append(node.arg)
        elif isinstance(node, (And, Or)):
            stack.append(node.right)
            stack.append(node.left)


def registers_of(phi: Constraint) -> set:
    out = set()
    for a in atoms(phi):
        for t in (a.left, a.right):
            if not isinstance(t, Input):
                out.add(t.name)
    return out


def check_domain(phi: Constraint, dom: Domain) -> None:
    for a in atoms(phi):
        if a.rel not in dom.relations:
            raise DomainError(f"relation {a.rel} not available in {dom.value}")


def holds(rel: str, x: Datum, y: Datum) -> bool:
    if rel == "=":
        return x == y
    if x is BOT or y is BOT:
        return False
    return x < y


def eval_constraint(u: Mapping[str, Datum], d: Datum, v: Mapping[str, Datum],
                    phi: Constraint, dom: Domain) -> bool:
    """Decide ``(u, d, v) |= phi`` by structural induction."""
    check_domain(phi, dom)
    if d is BOT:
        raise ValueError("the input datum must not be BOT")

    def value(t: Term) -> Datum:
        if isinstance(t, Input):
            return d
        if isinstance(t, Reg):
            return u[t.name]
        return v[t.name]

    def ev(node: Constraint) -> bool:
        if isinstance(node, TrueC):
            return True
        if isinstance(node, Atom):
            return holds(node.rel, value(node.left), value(node.right))
        if isinstance(node, Not):
            return not ev(node.arg)
        if isinstance(node, And):
            return ev(node.left) and ev(node.right)
        if isinstance(node, Or):
            return ev(node.left) or ev(node.right)
        raise TypeError(f"not a constraint: {node!r}")

    return ev(phi)


def conjuncts(phi: Constraint) -> list:
    """Flatten the top-level conjunction of ``phi``."""
    out, stack = [], [phi]
    while stack:
        node = stack.pop()
        if isinstance(node, And):
            stack.append(node.right)
            stack.append(node.left)
        else:
            out.append(node)
    return out


def pins(phi: Constraint) -> dict:
    """Map each syntactically pinned register to ``'keep'`` or ``'input'``.

    A pin is a positive top-level conjunct ``r'=r`` or ``r'=#`` (either
    orientation).  When a register is pinned twice the first pin wins; the
    guard itself still has to hold, so conflicting pins simply disable the
    edge.
    """
    out = {}
    for c in conjuncts(phi):
        if not (isinstance(c, Atom) and c.rel == "="):
            continue
        for nxt, other in ((c.left, c.right), (c.right, c.left)):
            if not isinstance(nxt, RegNext) or nxt.name in out:
                continue
            if isinstance(other, Input):
                out[nxt.name] = "input"
            elif isinstance(other, Reg) and other.name == nxt.name:
                out[nxt.name] = "keep"
    return out


def is_guess_free(phi: Constraint, registers: Iterable[str]) -> bool:
    """True iff every register's next value is pinned by a top-level conjunct."""
    p = pins(phi)
    return all(r in p for r in registers)


def compile_constraint(phi: Constraint, registers: Sequence[str]
                       ) -> Callable[[tuple, Datum, tuple], bool]:
    """Turn ``phi`` into a closure over positional valuations ``(u, d, v)``."""
    index = {r: i for i, r in enumerate(registers)}

    def getter(t: Term):
        if isinstance(t, Input):
            return lambda u, d, v: d
        i = index[t.name]
        if isinstance(t, Reg):
            return lambda u, d, v: u[i]
        return lambda u, d, v: v[i]

    def build(node: Constraint):
        if isinstance(node, TrueC):
            return lambda u, d, v: True
        if isinstance(node, Atom):
            f, g = getter(node.left), getter(node.right)
            if node.rel == "=":
                return lambda u, d, v: f(u, d, v) == g(u, d, v)
            return lambda u, d, v: holds("<", f(u, d, v), g(u, d, v))
        if isinstance(node, Not):
            a = build(node.arg)
            return lambda u, d, v: not a(u, d, v)
        if isinstance(node, And):
            a, b = build(node.left), build(node.right)
            return lambda u, d, v: a(u, d, v) and b(u, d, v)
        if isinstance(node, Or):
            a, b = build(node.left), build(node.right)
            return lambda u, d, v: a(u, d, v) or b(u, d, v)
        raise TypeError(f"not a constraint: {node!r}")

    return build(phi)


def format_datum(d: Datum) -> str:
    if d is BOT:
        return "_"
    if isinstance(d, Fraction):
        return str(d.numerator) if d.denominator == 1 else f"{d.numerator}/{d.denominator}"
    return str(d)


def format_word(w: DataWord, bare: bool = False) -> str:
    if not w:
        return "ε"
    if bare:
        return " ".join(format_datum(d) for _, d in w)
    return " ".join(f"{s}:{format_datum(d)}" for s, d in w)
