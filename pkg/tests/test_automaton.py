import random

import pytest
from hypothesis import assume, given, strategies as st

from regaut import fixtures
from regaut.automaton import (GRA, RA, Automaton, Edge, State, accepts, check_unambiguous_ra,
                              count_accepting_runs, is_clean, make_clean, state_successors,
                              validate)
from regaut.core import INPUT, TRUE, Domain, Not, Reg, RegNext, conj, eq, lt, make_word
from regaut.generate import random_deterministic_ra, random_ra
from regaut.oracle import OracleBudget, canonical_words, oracle_ambiguous

BUDGET = OracleBudget(max_len=4)


def _remember_first():
    # accepts words whose last datum equals the first one
    g1 = conj(TRUE, eq(RegNext("r"), INPUT))
    keep = eq(RegNext("r"), Reg("r"))
    edges = (Edge("p", "a", g1, "q"),
             Edge("q", "a", conj(Not(eq(Reg("r"), INPUT)), keep), "q"),
             Edge("q", "a", conj(eq(Reg("r"), INPUT), keep), "f"),
             Edge("f", "a", conj(Not(eq(Reg("r"), INPUT)), keep), "q"),
             Edge("f", "a", conj(eq(Reg("r"), INPUT), keep), "f"))
    return Automaton("first", Domain.NAT_EQ, ("a",), ("r",), ("p", "q", "f"), "p",
                     frozenset({"f"}), edges, RA)


def test_validate_accepts_fixtures():
    for name in fixtures.automaton_names():
        assert validate(fixtures.load(name)) == []


def test_validate_reports_problems():
    A = Automaton("bad", Domain.NAT_EQ, ("a",), ("r",), ("p",), "x", frozenset({"y"}),
                  (Edge("p", "b", lt(Reg("r"), INPUT), "z"),), RA)
    diags = validate(A)
    assert any("initial location" in d for d in diags)
    assert any("accepting location" in d for d in diags)
    assert any("undeclared location 'z'" in d for d in diags)
    assert any("label 'b'" in d for d in diags)
    assert any("relation < not available" in d for d in diags)
    assert any("not guess-free" in d for d in diags)


def test_remember_first_language():
    A = _remember_first()
    assert accepts(A, make_word([3, 4, 3]))
    assert not accepts(A, make_word([3, 4]))
    assert not accepts(A, make_word([3]))
    for w in canonical_words(A.alphabet, A.domain, BUDGET):
        data = [d for _, d in w]
        assert accepts(A, w) == (len(data) >= 2 and data[-1] == data[0])


def test_guessing_successors(fig1):
    (s,) = {fig1.initial_state}
    succ = {t for _, t in state_successors(fig1, s, ("a", 5), pool=[5, 6, 7])}
    assert succ == {State("l1", (6,)), State("l1", (7,))}


def test_fig1_counts(fig1):
    assert count_accepting_runs(fig1, make_word([1, 2, 3])) == 1
    assert count_accepting_runs(fig1, make_word([1, 2, 1])) == 0


def test_ambiguity_witness_is_real():
    g = conj(TRUE, eq(RegNext("r"), INPUT))
    A = Automaton("amb", Domain.NAT_EQ, ("a",), ("r",), ("p", "q", "f"), "p", frozenset({"f"}),
                  (Edge("p", "a", g, "q"), Edge("p", "a", g, "f"), Edge("q", "a", g, "f"),
                   Edge("f", "a", g, "f")), RA)
    wit = check_unambiguous_ra(A)
    assert wit is not None
    assert count_accepting_runs(A, wit.word) >= 2
    assert len(wit.word) == 2


def test_unambiguity_check_rejects_gra(fig1):
    with pytest.raises(ValueError):
        check_unambiguous_ra(fig1)


@pytest.mark.parametrize("seed", range(25))
def test_exact_unambiguity_matches_oracle(seed):
    rng = random.Random(seed)
    dom = Domain.NAT_EQ if seed % 3 else Domain.RAT_ORD
    gen = random_ra if seed % 2 else random_deterministic_ra
    A = gen(rng, k=1 + seed % 2, dom=dom)
    wit = check_unambiguous_ra(A)
    hit = oracle_ambiguous(A, OracleBudget(max_len=4, rat_depth=3))
    if wit is None:
        assert hit is None
    else:
        assert count_accepting_runs(A, wit.word) >= 2
        if hit is not None:
            assert len(hit[0]) <= len(wit.word)


@given(st.integers(0, 10_000))
def test_make_clean_preserves_language(seed):
    rng = random.Random(seed)
    dom = Domain.NAT_EQ if seed % 2 else Domain.RAT_ORD
    A = random_deterministic_ra(rng, k=rng.choice([1, 2]), dom=dom)
    assume(check_unambiguous_ra(A) is None)
    A2 = make_clean(A)
    assert is_clean(A2)
    for w in canonical_words(A.alphabet, dom, OracleBudget(max_len=3, rat_depth=2)):
        assert accepts(A, w) == accepts(A2, w)


def test_make_clean_of_empty_language():
    A = Automaton("empty", Domain.NAT_EQ, ("a",), ("r",), ("p", "q"), "p", frozenset(),
                  (Edge("p", "a", conj(TRUE, eq(RegNext("r"), INPUT)), "q"),), RA)
    A2 = make_clean(A)
    assert is_clean(A2)
    assert A2.edges == ()


def test_make_clean_needs_ra(fig1):
    assert fig1.kind == GRA
    with pytest.raises(ValueError):
        make_clean(fig1)
