import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from regaut import fixtures
from regaut.automaton import RA, Automaton, Edge, accepts, make_clean
from regaut.config import (FiniteOrCofinite as FoC, GConfig, SyncConfig, State, support)
from regaut.core import BOT, INPUT, TRUE, Domain, Reg, RegNext, conj, eq, lt, make_word
from regaut.decide import (BOUND_EXCEEDED, REJECTED_WORD, Contained, ContainedUpToDepth,
                           NotContained, NotUniversal, Universal, bad_reachable_within, bound_B,
                           check_containment_gura, check_containment_ra_ura_bounded,
                           check_universality_ura_nat, check_universality_ura_rat1, collapse,
                           collapse_all, decide_universality, find_full_subset,
                           indistinguishable_pairs, is_full)
from regaut.generate import random_gra
from regaut.oracle import OracleBudget, oracle_contained, oracle_universal


def test_bound_values():
    assert [bound_B(k) for k in (1, 2)] == [4, 4096]
    assert bound_B(4) == (4 * 256 * 24) ** 4
    with pytest.raises(ValueError):
        bound_B(0)


def test_is_full():
    assert is_full({(1, 2, 3), (1, 2, 4)}, {1, 2})
    assert not is_full({(1, 2, 3), (1, 2, 4)}, {1})
    assert not is_full({(1, 2, 3), (1, 5, 3)}, {1})
    assert is_full({(1, 2), (3, 4), (5, 6)}, set())


def test_find_full_subset_none():
    assert find_full_subset({(1, 2), (1, 3)}, 2) is None
    assert find_full_subset(set(), 0) is None


@given(st.sets(st.tuples(st.integers(0, 5), st.integers(0, 5)), max_size=12),
       st.integers(0, 3))
def test_find_full_subset_brute_force(T, B):
    w = find_full_subset(T, B)
    if w is not None:
        assert len(w.tuples) > B and w.tuples <= T and is_full(w.tuples, w.indices)
        return
    # no witness: no subset of size B+1 is full for any index set
    for sub in itertools.combinations(sorted(T), B + 1):
        for r in range(3):
            for I in itertools.combinations((1, 2), r):
                assert not is_full(sub, I)


def test_arity_limit():
    with pytest.raises(ValueError):
        find_full_subset({tuple(range(7))}, 0)


def test_lemma44_universal(lemma44):
    v = check_universality_ura_nat(lemma44)
    assert isinstance(v, Universal) and v.holds
    assert v.stats["max_same_location"] == 2


def test_accept_all_universal(accept_all):
    assert isinstance(decide_universality(accept_all), Universal)


def test_rejected_word():
    A = Automaton("one", Domain.NAT_EQ, ("a",), ("r",), ("p", "q"), "p", frozenset({"q"}),
                  (Edge("p", "a", conj(TRUE, eq(RegNext("r"), INPUT)), "q"),), RA)
    v = decide_universality(A)
    assert isinstance(v, NotUniversal) and v.reason == REJECTED_WORD
    assert v.witness == () and not accepts(A, v.witness)


def test_small_cap_reports_bound(lemma44):
    v = check_universality_ura_nat(lemma44, cap_override=0)
    assert isinstance(v, NotUniversal) and v.reason == BOUND_EXCEEDED


def test_universality_preconditions(fig1, order2):
    with pytest.raises(ValueError, match="without guessing"):
        check_universality_ura_nat(fig1)
    with pytest.raises(ValueError, match="exactly one register"):
        check_universality_ura_rat1(order2)


def test_rat1_universal():
    v = check_universality_ura_rat1(fixtures.load("accept-all-rat"))
    assert isinstance(v, Universal) and v.stats["max_same_location"] == 1


def _sync(a_vals, **sets):
    return SyncConfig(State("q", a_vals), GConfig.of(sets))


def test_indistinguishable_pairs():
    S = _sync((5,), l1=FoC.finite([1, 2, 5]), l2=FoC.co([3, 4]))
    # 1 and 2 are both only in l1 (and in cofinite l2); 3 and 4 are in neither
    assert indistinguishable_pairs(S) == {(1, 2), (3, 4)}


def test_collapse_makes_datum_generic():
    S = _sync((BOT,), l1=FoC.finite([1, 2]), l2=FoC.co([3, 4]))
    S2 = collapse(S, 2)
    assert str(S2.b_config) == "{l1: {1}, l2: co{3,4}}"
    S3 = collapse(S, 4)
    assert str(S3.b_config) == "{l1: {1,2}, l2: co{3}}"
    with pytest.raises(ValueError):
        collapse(_sync((BOT,), l1=FoC.finite([1])), 1)


def test_collapse_all_is_renaming_invariant():
    S = _sync((7,), l1=FoC.finite([1, 2, 7]), l2=FoC.co([3, 4, 5]))
    T = _sync((70,), l1=FoC.finite([10, 20, 70]), l2=FoC.co([30, 40, 50]))
    (S2, n), (T2, m) = collapse_all(S), collapse_all(T)
    assert n == m == 3
    assert not indistinguishable_pairs(S2)
    assert len(support(S2.b_config)) == len(support(T2.b_config)) == 3


def test_containment_fixture_pairs(fig1, accept_all, second_to_last):
    assert isinstance(check_containment_gura(fig1, fig1), Contained)
    assert isinstance(check_containment_gura(fig1, accept_all), Contained)
    v = check_containment_gura(accept_all, fig1)
    assert isinstance(v, NotContained) and v.witness == ()
    v = check_containment_gura(second_to_last, fig1)
    assert isinstance(v, NotContained)
    assert [d for _, d in v.witness] == [0, 0, 0]
    v = check_containment_gura(fig1, second_to_last)
    assert [d for _, d in v.witness] == [0, 1]


def test_containment_notes(fig1, accept_all):
    assert "exactly" in check_containment_gura(fig1, accept_all).notes[0]
    assert "length <= 4" in check_containment_gura(fig1, fig1).notes[0]


def test_containment_rejects_ambiguous_b():
    g = conj(TRUE, eq(RegNext("r"), INPUT))
    B = Automaton("amb", Domain.NAT_EQ, ("a",), ("r",), ("p", "f1", "f2"), "p",
                  frozenset({"f1", "f2"}), (Edge("p", "a", g, "f1"), Edge("p", "a", g, "f2")), RA)
    with pytest.raises(ValueError, match="ambiguous"):
        check_containment_gura(B, B)


def test_containment_needs_one_register(fig1, lemma44):
    with pytest.raises(ValueError, match="one register"):
        check_containment_gura(fig1, lemma44)


@pytest.mark.parametrize("seed", range(15))
def test_containment_random_against_oracle(seed, fig1, second_to_last):
    rng = random.Random(seed)
    A = random_gra(rng, k=rng.choice([1, 2]), n_locs=3)
    B = (fig1, second_to_last)[seed % 2]
    v = check_containment_gura(A, B)
    o = oracle_contained(A, B, OracleBudget(max_len=5))
    if isinstance(v, Contained):
        assert o is None
    else:
        assert o is not None and len(o) == len(v.witness)


def test_collapse_keeps_bad_reachability(fig1):
    S = SyncConfig(State("l1", (9,)), GConfig.of({"l1": FoC.co([1, 2, 9]), "l2": FoC.finite([3])}))
    pairs = indistinguishable_pairs(S)
    assert pairs == {(1, 2)}
    for a, b in pairs:
        assert bad_reachable_within(fig1, fig1, S, 3) == bad_reachable_within(fig1, fig1, collapse(S, b), 3)


def test_bounded_containment(fig1, accept_all):
    assert isinstance(check_containment_ra_ura_bounded(fig1, accept_all, 3), ContainedUpToDepth)
    v = check_containment_ra_ura_bounded(accept_all, fig1, 3)
    assert isinstance(v, NotContained) and v.witness == ()


def test_rat1_increasing_pair_not_universal():
    # accepts exactly the words whose second datum exceeds the first
    keep = eq(RegNext("r"), Reg("r"))
    A = Automaton("up", Domain.RAT_ORD, ("a",), ("r",), ("p", "q", "f"), "p", frozenset({"f"}),
                  (Edge("p", "a", conj(TRUE, eq(RegNext("r"), INPUT)), "q"),
                   Edge("q", "a", conj(lt(Reg("r"), INPUT), keep), "f"),
                   Edge("f", "a", conj(TRUE, keep), "f")), RA)
    v = decide_universality(A)
    assert isinstance(v, NotUniversal) and v.reason == REJECTED_WORD
    assert v.witness == oracle_universal(A, OracleBudget(max_len=3)) == ()
    B = make_clean(A)
    assert not accepts(B, make_word([Fraction(1), Fraction(0)], "a"))
    assert accepts(B, make_word([Fraction(0), Fraction(1), Fraction(-5)], "a"))
