import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from regaut import fixtures
from regaut.automaton import GRA, RA
from regaut.core import INPUT, TRUE, And, Atom, Domain, Not, Or, Reg, RegNext, eq
from regaut.dsl import (ParseError, format_constraint, format_word, parse_automaton,
                        parse_constraint, parse_word, print_automaton)
from regaut.generate import random_gra, random_ra

MINIMAL = """\
automaton tiny
domain nat-eq
alphabet a
registers r
init p
accepting q
edge p a "r'=#" q
"""


def test_minimal_defaults():
    A = parse_automaton(MINIMAL)
    assert A.kind == RA
    assert A.locations == ("p", "q")
    # without a locations line, names are declared by first use
    assert parse_automaton(MINIMAL.replace("accepting q", "accepting z")).locations == ("p", "z", "q")


def test_kind_inferred_from_guards():
    A = parse_automaton(MINIMAL.replace("\"r'=#\"", "\"!(r'=#)\""))
    assert A.kind == GRA


def test_guard_syntax():
    phi = parse_constraint("!(r=#) & (r'=r) | true", {"r"})
    assert phi == Or(And(Not(eq(Reg("r"), INPUT)), eq(RegNext("r"), Reg("r"))), TRUE)
    assert parse_constraint("# < r", {"r"}) == Atom("<", INPUT, Reg("r"))


@pytest.mark.parametrize("text, msg", [
    ("r=", "expected"),
    ("s=#", "undeclared register"),
    ("(r=#", "expected"),
    ("r=# r", "unexpected"),
])
def test_guard_errors(text, msg):
    with pytest.raises(ParseError, match=msg):
        parse_constraint(text, {"r"})


@pytest.mark.parametrize("text, line", [
    (MINIMAL.replace("domain nat-eq", "domain reals"), 2),
    (MINIMAL.replace("init p", "init p\nfoo bar"), 6),
    (MINIMAL.replace("\"r'=#\"", "\"r<#\""), 7),
    (MINIMAL.replace("accepting q", "locations p q\naccepting z"), None),
    (MINIMAL.replace("init p\n", ""), None),
])
def test_automaton_errors_have_location(text, line):
    with pytest.raises(ParseError) as info:
        parse_automaton(text, file="x.ra")
    assert info.value.span.file == "x.ra"
    if line is not None:
        assert info.value.span.line == line
        assert str(info.value).startswith(f"x.ra:{line}:")


def test_comments_and_quotes():
    A = parse_automaton(MINIMAL.replace("edge p a \"r'=#\" q", "edge p a \"r'=#\" q  # note # here"))
    assert len(A.edges) == 1


@pytest.mark.parametrize("name", fixtures.automaton_names())
def test_fixture_roundtrip(name):
    A = fixtures.load(name)
    text = print_automaton(A)
    assert parse_automaton(text) == A
    assert print_automaton(parse_automaton(text)) == text


@given(st.integers(0, 10_000))
def test_random_roundtrip(seed):
    rng = random.Random(seed)
    if seed % 3 == 0:
        A = random_gra(rng, k=rng.choice([1, 2]), alphabet=("a", "b"))
    else:
        dom = Domain.NAT_EQ if seed % 2 else Domain.RAT_ORD
        A = random_ra(rng, k=rng.choice([0, 1, 2]), dom=dom)
    assert parse_automaton(print_automaton(A)) == A


def test_constraint_printing_is_minimal():
    phi = And(Or(eq(Reg("r"), INPUT), TRUE), Not(eq(RegNext("r"), Reg("r"))))
    assert format_constraint(phi) == "(r=# | true) & !(r'=r)"


def test_parse_word():
    assert parse_word("1 2 3", Domain.NAT_EQ) == (("a", 1), ("a", 2), ("a", 3))
    assert parse_word("a:1·b:2", Domain.NAT_EQ, ("a", "b")) == (("a", 1), ("b", 2))
    assert parse_word("1/2 -3", Domain.RAT_ORD) == (("a", Fraction(1, 2)), ("a", Fraction(-3)))
    assert parse_word("ε", Domain.NAT_EQ) == ()
    with pytest.raises(ValueError):
        parse_word("-1", Domain.NAT_EQ)
    with pytest.raises(ValueError):
        parse_word("1", Domain.NAT_EQ, ("a", "b"))
    with pytest.raises(ValueError):
        parse_word("c:1", Domain.NAT_EQ, ("a", "b"))


def test_format_word():
    assert format_word(()) == ""
    w = parse_word("a:1/2 b:3", Domain.RAT_ORD, ("a", "b"))
    assert format_word(w) == "a:1/2 b:3"
    assert parse_word(format_word(w), Domain.RAT_ORD, ("a", "b")) == w
