"""Decision procedures: universality of unambiguous register automata and
containment in one-register unambiguous automata with guessing.

All searches are breadth-first over concrete objects paired with the word
that produced them; canonical forms only serve as the visited set, so the
stored word is always a genuine path word.
"""
from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional

from . import kernels
from .automaton import (GRA, RA, Automaton, State, accepts, check_unambiguous_ra,
                        fresh_values, is_clean, make_clean, state_successors)
from .config import (FiniteOrCofinite, GConfig, SyncConfig, canonicalize, config_data,
                     gconfig_accepting, initial_config, initial_gconfig, input_representatives,
                     is_accepting, membership, plus_minus, succ_config, succ_gconfig, support)
from .core import BOT, DataWord, Domain

REJECTED_WORD = "RejectedWord"
BOUND_EXCEEDED = "BoundExceeded"


@dataclass(frozen=True)
class Universal:
    stats: dict = field(default_factory=dict, compare=False)
    holds = True


@dataclass(frozen=True)
class NotUniversal:
    witness: DataWord
    reason: str
    stats: dict = field(default_factory=dict, compare=False)
    holds = False


@dataclass(frozen=True)
class Contained:
    stats: dict = field(default_factory=dict, compare=False)
    notes: tuple = ()
    holds = True


@dataclass(frozen=True)
class NotContained:
    witness: DataWord
    stats: dict = field(default_factory=dict, compare=False)
    holds = False


@dataclass(frozen=True)
class ContainedUpToDepth:
    depth: int
    stats: dict = field(default_factory=dict, compare=False)
    holds = None


@dataclass(frozen=True)
class FullSubsetWitness:
    indices: frozenset  # 1-based positions on which all tuples agree
    tuples: frozenset


def bound_B(k: int) -> int:
    """Upper bound on same-location states in clean universal k-URA."""
    if k < 1:
        raise ValueError("k must be at least 1")
    return (k * 4 ** k * math.factorial(k)) ** k


# -- full sets ----------------------------------------------------------------

MAX_FULL_ARITY = 6


def is_full(tuples: Iterable[tuple], indices: Iterable[int]) -> bool:
    """Check the full-set conditions for ``tuples`` with 1-based ``indices``."""
    tuples = list(tuples)
    I = {i - 1 for i in indices}
    if not tuples:
        return True
    k = len(tuples[0])
    for i in I:
        if len({t[i] for t in tuples}) > 1:
            return False
    seen = {}
    for a, t in enumerate(tuples):
        for j in range(k):
            seen.setdefault(t[j], []).append((a, j))
    for a, t in enumerate(tuples):
        for i in range(k):
            if i not in I and seen[t[i]] != [(a, i)]:
                return False
    return True


def find_full_subset(T: Iterable[tuple], B: int, max_arity: int = MAX_FULL_ARITY,
                     backend: Optional[str] = None) -> Optional[FullSubsetWitness]:
    """A full subset of ``T`` with more than ``B`` tuples, if there is one.

    For every index set I and every value of the I-projection, tuples whose
    off-I values are distinct from each other and from the shared values are
    the candidates; a family of candidates with pairwise disjoint off-I data
    is then searched exactly.
    """
    T = sorted(set(T), key=lambda t: [(v is not BOT, v if v is not BOT else 0) for v in t])
    if not T:
        return None
    k = len(T[0])
    if any(len(t) != k for t in T):
        raise ValueError("all tuples must have the same arity")
    if k > max_arity:
        raise ValueError(f"arity {k} exceeds the limit {max_arity}")
    for size in range(k + 1):
        for I in itertools.combinations(range(k), size):
            groups = {}
            for t in T:
                groups.setdefault(tuple(t[i] for i in I), []).append(t)
            for shared, group in groups.items():
                if len(group) <= B:
                    continue
                cand = []
                for t in group:
                    off = [t[i] for i in range(k) if i not in I]
                    if len(set(off)) == len(off) and not set(off) & set(shared):
                        cand.append((t, off))
                if len(cand) <= B:
                    continue
                chosen = kernels.disjoint_family([off for _, off in cand], B + 1, backend)
                if chosen is not None:
                    picked = frozenset(cand[j][0] for j in chosen)
                    return FullSubsetWitness(frozenset(i + 1 for i in I), picked)
    return None


def location_blocks(C: Iterable[State]) -> dict:
    blocks = {}
    for s in C:
        blocks.setdefault(s.loc, set()).add(s.vals)
    return blocks


# -- universality -------------------------------------------------------------

def _check_ura_preconditions(A: Automaton, dom: Domain) -> None:
    if A.kind != RA:
        raise ValueError("universality check needs an automaton without guessing")
    if A.domain is not dom:
        raise ValueError(f"this procedure works over {dom.value}, not {A.domain.value}")
    if check_unambiguous_ra(A) is not None:
        raise ValueError("automaton is ambiguous")
    if not is_clean(A):
        raise ValueError("automaton is not clean (apply make_clean first)")


def _rejected(A: Automaton, w: DataWord, stats: dict) -> NotUniversal:
    if accepts(A, w):
        raise RuntimeError("internal error: rejected-word witness is accepted")
    return NotUniversal(w, REJECTED_WORD, stats)


def check_universality_ura_nat(A: Automaton, cap_override: Optional[int] = None) -> object:
    """Universality of a clean unambiguous RA over (N;=).

    Explores configurations up to renaming.  A configuration with more than
    ``n * cap`` states refutes universality; the default cap is ``bound_B(k)``.
    """
    _check_ura_preconditions(A, Domain.NAT_EQ)
    n = len(A.locations)
    k = len(A.registers)
    cap = cap_override if cap_override is not None else bound_B(max(k, 1))
    stats = {"visited": 0, "max_config_size": 0, "max_same_location": 0}
    start = initial_config(A)
    visited = {canonicalize(start)[0]}
    queue = deque([(start, ())])
    seen_configs = []
    while queue:
        C, w = queue.popleft()
        stats["visited"] += 1
        stats["max_config_size"] = max(stats["max_config_size"], len(C))
        blocks = location_blocks(C)
        stats["max_same_location"] = max([stats["max_same_location"]] +
                                         [len(b) for b in blocks.values()])
        if not is_accepting(A, C):
            return _rejected(A, w, stats)
        if len(C) > n * cap:
            return NotUniversal(w, BOUND_EXCEEDED, stats)
        seen_configs.append(C)
        reps = input_representatives(config_data(C), Domain.NAT_EQ)
        for sigma in A.alphabet:
            for d in reps:
                letter = (sigma, d)
                C2 = succ_config(A, C, letter)
                key = canonicalize(C2)[0]
                if key not in visited:
                    visited.add(key)
                    queue.append((C2, w + (letter,)))
    # structure check: no location block of a visited configuration is a large full set
    for C in seen_configs:
        for block in location_blocks(C).values():
            if len(block) > k and find_full_subset(block, k) is not None:
                raise RuntimeError("internal error: universal verdict but a visited "
                                   "configuration holds a full set larger than k")
    return Universal(stats)


def check_universality_ura_rat1(A: Automaton) -> object:
    """Universality of a clean unambiguous one-register RA over (Q;<,=).

    A configuration holding two states at one location refutes universality.
    """
    if len(A.registers) != 1:
        raise ValueError("this procedure handles exactly one register")
    _check_ura_preconditions(A, Domain.RAT_ORD)
    stats = {"visited": 0, "max_config_size": 0, "max_same_location": 0}
    start = initial_config(A)
    visited = {canonicalize(start, Domain.RAT_ORD)[0]}
    queue = deque([(start, ())])
    while queue:
        C, w = queue.popleft()
        stats["visited"] += 1
        stats["max_config_size"] = max(stats["max_config_size"], len(C))
        same = max([0] + [len(b) for b in location_blocks(C).values()])
        stats["max_same_location"] = max(stats["max_same_location"], same)
        if not is_accepting(A, C):
            return _rejected(A, w, stats)
        if same >= 2:
            return NotUniversal(w, BOUND_EXCEEDED, stats)
        reps = input_representatives(config_data(C), Domain.RAT_ORD)
        for sigma in A.alphabet:
            for d in reps:
                letter = (sigma, d)
                C2 = succ_config(A, C, letter)
                key = canonicalize(C2, Domain.RAT_ORD)[0]
                if key not in visited:
                    visited.add(key)
                    queue.append((C2, w + (letter,)))
    if stats["max_same_location"] > 1:
        raise RuntimeError("internal error: universal verdict after a same-location pair")
    return Universal(stats)


def decide_universality(A: Automaton, cap_override: Optional[int] = None) -> object:
    """Driver: clean the automaton, then run the matching procedure."""
    A2 = make_clean(A)
    if A.domain is Domain.NAT_EQ:
        v = check_universality_ura_nat(A2, cap_override)
    else:
        v = check_universality_ura_rat1(A2)
    if isinstance(v, NotUniversal) and v.reason == REJECTED_WORD and accepts(A, v.witness):
        raise RuntimeError("internal error: witness accepted by the original automaton")
    return v


# -- containment in one-register GURA ----------------------------------------

def indistinguishable_pairs(S: SyncConfig) -> set:
    """Pairs ``(a, b)``, ``a < b``, of support data outside the A-registers
    that lie in exactly the same locations of the B-configuration."""
    own = {v for v in S.a_state.vals if v is not BOT}
    cands = sorted(support(S.b_config) - own)
    by_sig = {}
    for d in cands:
        by_sig.setdefault(membership(S.b_config, d), []).append(d)
    out = set()
    for group in by_sig.values():
        out |= set(itertools.combinations(group, 2))
    return out


def collapse(S: SyncConfig, b) -> SyncConfig:
    """Make ``b`` generic in the B-configuration: ``(C - C_b^+) + C_b^-``."""
    if not any(b in p for p in indistinguishable_pairs(S)):
        raise ValueError(f"{b} is not indistinguishable from another datum")
    G = {}
    for loc, s in S.b_config.items:
        G[loc] = s.minus([b]) if not s.cofinite else FiniteOrCofinite(True, s.exceptions - {b}, s.bot)
    return SyncConfig(S.a_state, GConfig.of(G))


def collapse_all(S: SyncConfig) -> tuple:
    """Collapse until no indistinguishable pair is left; returns ``(S, count)``.

    Pairs are taken in the order of the canonical data names so the result
    does not depend on the concrete data.
    """
    count = 0
    while True:
        pairs = indistinguishable_pairs(S)
        if not pairs:
            return S, count
        _, pi = canonicalize(S)
        a, b = min(pairs, key=lambda p: sorted((pi[p[0]], pi[p[1]])))
        S = collapse(S, b if pi[b] > pi[a] else a)
        count += 1


def is_bad(A: Automaton, B: Automaton, S: SyncConfig) -> bool:
    return S.a_state.loc in A.accepting and not gconfig_accepting(B, S.b_config)


def sync_successors(A: Automaton, B: Automaton, S: SyncConfig):
    """Yield ``(letter, successor)`` over one input of every relevant type."""
    own = {v for v in S.a_state.vals if v is not BOT}
    relevant = support(S.b_config) | own
    for d in input_representatives(relevant, Domain.NAT_EQ):
        pool = sorted(relevant | set(fresh_values(Domain.NAT_EQ, relevant | {d}, len(A.registers))))
        for sigma in A.alphabet:
            letter = (sigma, d)
            a_next = {t for _, t in state_successors(A, S.a_state, letter, pool)}
            if not a_next:
                continue
            G2 = succ_gconfig(B, S.b_config, letter) if sigma in B.alphabet else GConfig()
            for t in sorted(a_next, key=str):
                yield letter, SyncConfig(t, G2)


def _check_containment_inputs(A: Automaton, B: Automaton) -> None:
    if len(B.registers) != 1:
        raise ValueError("B must have exactly one register")
    if A.domain is not Domain.NAT_EQ or B.domain is not Domain.NAT_EQ:
        raise ValueError("containment is decided over nat-eq only")


def accepts_safe(A: Automaton, w: DataWord, pool_size: Optional[int] = None) -> bool:
    """``accepts`` that rejects words using labels outside the alphabet."""
    if any(a not in A.alphabet for a, _ in w):
        return False
    return accepts(A, w, pool_size=pool_size)


def _bad_search(A, B, do_collapse: bool, stats: dict, max_nodes: Optional[int] = None):
    start = SyncConfig(A.initial_state, initial_gconfig(B))
    limit = 3 ** len(B.locations) + len(A.registers)
    visited = {canonicalize(start)[0]}
    queue = deque([(start, ())])
    while queue:
        S, w = queue.popleft()
        stats["visited"] += 1
        if is_bad(A, B, S):
            return w
        if max_nodes is not None and stats["visited"] > max_nodes:
            raise RuntimeError("witness search exceeded its node budget")
        for letter, S2 in sync_successors(A, B, S):
            if do_collapse:
                S2, c = collapse_all(S2)
                stats["collapses"] += c
                supp = len(support(S2.b_config))
                stats["max_support"] = max(stats["max_support"], supp)
                if supp > limit:
                    raise RuntimeError("internal error: collapsed support exceeds 3^|L_B| + m")
            key = canonicalize(S2)[0]
            if key not in visited:
                visited.add(key)
                queue.append((S2, w + (letter,)))
    return None


def check_containment_gura(A: Automaton, B: Automaton, b_check_len: int = 4,
                           witness_budget: int = 200000) -> object:
    """Is L(A) contained in L(B) for a GRA ``A`` and a one-register GURA ``B``?

    Searches synchronized configurations for a bad one (A accepting, B not),
    collapsing indistinguishable data after every step.  The unambiguity of
    ``B`` is required but only checked on words of length ``<= b_check_len``.
    """
    _check_containment_inputs(A, B)
    from .oracle import OracleBudget, oracle_ambiguous
    notes = []
    if B.kind == RA:
        if check_unambiguous_ra(B) is not None:
            raise ValueError("B is ambiguous")
        notes.append("B unambiguity checked exactly")
    else:
        hit = oracle_ambiguous(B, OracleBudget(max_len=b_check_len))
        if hit is not None:
            raise ValueError("B is ambiguous")
        notes.append(f"B unambiguity checked on words of length <= {b_check_len} only")
    stats = {"visited": 0, "collapses": 0, "max_support": 0}
    w = _bad_search(A, B, True, stats)
    if w is None:
        return Contained(stats, tuple(notes))
    if not (accepts_safe(A, w) and not accepts_safe(B, w)):
        # a path through collapsed nodes need not be a witness itself; a bad
        # node is reachable, so the plain search finds one
        plain = {"visited": 0, "collapses": 0, "max_support": 0}
        w = _bad_search(A, B, False, plain, witness_budget)
        stats["witness_search_visited"] = plain["visited"]
        if w is None or not (accepts_safe(A, w) and not accepts_safe(B, w)):
            raise RuntimeError("internal error: containment witness failed re-verification")
    return NotContained(w, stats)


def bad_reachable_within(A: Automaton, B: Automaton, S: SyncConfig, depth: int) -> bool:
    """Is a bad synchronized configuration reachable from ``S`` in ``<= depth`` steps?"""
    frontier = {canonicalize(S)[0]: S}
    for step in range(depth + 1):
        if any(is_bad(A, B, x) for x in frontier.values()):
            return True
        if step == depth:
            return False
        nxt = {}
        for x in frontier.values():
            for _, y in sync_successors(A, B, x):
                nxt.setdefault(canonicalize(y)[0], y)
        frontier = nxt
    return False


# -- bounded containment for RA in URA ----------------------------------------

def check_containment_ra_ura_bounded(A: Automaton, B: Automaton, depth: int) -> object:
    """Search canonical words up to ``depth`` for one accepted by A but not B."""
    from .oracle import OracleBudget, oracle_contained
    w = oracle_contained(A, B, OracleBudget(max_len=depth))
    if w is None:
        return ContainedUpToDepth(depth)
    if not (accepts_safe(A, w) and not accepts_safe(B, w)):
        raise RuntimeError("internal error: containment witness failed re-verification")
    return NotContained(w)
