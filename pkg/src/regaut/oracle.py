"""Brute-force ground truth by enumerating canonical words.

Every word over the domain is related by a renaming of data to exactly one
emitted word of the same length, so bounded questions about acceptance can
be answered exhaustively.  Answers of ``None`` only mean "nothing found
within the budget".
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional

from .automaton import RA, Automaton, fresh_values, state_successors
from .config import canonicalize
from .core import DataWord, Domain


@dataclass(frozen=True)
class OracleBudget:
    max_len: int = 5
    pool_size: Optional[int] = None
    rat_depth: Optional[int] = None

    def __post_init__(self):
        if self.pool_size is None:
            object.__setattr__(self, "pool_size", 2 * self.max_len)
        if self.rat_depth is None:
            object.__setattr__(self, "rat_depth", self.max_len)
        if min(self.max_len, self.pool_size, self.rat_depth) < 0:
            raise ValueError("budget values must be non-negative")


def _next_data(data: tuple, dom: Domain, depth: int) -> list:
    """One datum of every type relative to ``data`` (the extension step)."""
    if dom is Domain.NAT_EQ:
        top = max(data) + 1 if data else 0
        return list(range(top + 1))
    if not data:
        return [Fraction(0)]
    pts = sorted(set(data))
    out = [pts[0] - 1]
    for a, b in zip(pts, pts[1:]):
        out.append(a)
        mid = (a + b) / 2
        if mid.denominator <= 2 ** depth:
            out.append(mid)
    out += [pts[-1], pts[-1] + 1]
    return out


def _extend(prefixes, alphabet, dom, depth):
    for w in prefixes:
        data = tuple(d for _, d in w)
        for d in _next_data(data, dom, depth):
            for a in alphabet:
                yield w + ((a, d),)


def canonical_words(alphabet, dom: Domain, budget: OracleBudget = OracleBudget()) -> Iterator[DataWord]:
    """Words of length ``<= max_len``, one per renaming class, shortest first.

    Over (N;=) the i-th datum is at most one more than the largest earlier
    one.  Over (Q;<,=) a new datum is an earlier one, or lies below, above or
    halfway between earlier ones.
    """
    alphabet = tuple(alphabet)
    layer = [()]
    for n in range(budget.max_len + 1):
        yield from layer
        if n == budget.max_len:
            return
        layer = list(_extend(layer, alphabet, dom, budget.rat_depth))


def _universe(A: Automaton, budget: OracleBudget) -> tuple:
    """Guess candidates: all data a canonical word may use plus fresh values."""
    if A.kind == RA:
        return ()
    if A.domain is not Domain.NAT_EQ:
        return None
    used = set(range(budget.max_len))
    extra = max(budget.pool_size, 2 * len(A.registers))
    return tuple(sorted(used | set(fresh_values(Domain.NAT_EQ, used, extra))))


def _step(A: Automaton, layer: dict, letter, universe) -> dict:
    """Successor of a state -> run-count map (counts saturate at 2)."""
    out = {}
    if letter[0] not in A.alphabet:
        return out
    for s, c in layer.items():
        for _, t in state_successors(A, s, letter, universe):
            out[t] = min(2, out.get(t, 0) + c)
    return out


def _runs(A: Automaton, budget: OracleBudget, alphabet=None):
    """Yield ``(word, state -> run count)`` for all canonical words."""
    universe = _universe(A, budget)
    if universe is None:
        raise ValueError("guessing over rat-ord is not supported by the oracle")
    alphabet = tuple(A.alphabet if alphabet is None else alphabet)
    layer = [((), {A.initial_state: 1})]
    for n in range(budget.max_len + 1):
        yield from layer
        if n == budget.max_len:
            return
        nxt = []
        for w, runs in layer:
            for w2 in _extend([w], alphabet, A.domain, budget.rat_depth):
                nxt.append((w2, _step(A, runs, w2[-1], universe)))
        layer = nxt


def _accepting_runs(A: Automaton, runs: dict) -> int:
    return min(2, sum(c for s, c in runs.items() if s.loc in A.accepting))


def oracle_universal(A: Automaton, budget: OracleBudget = OracleBudget()) -> Optional[DataWord]:
    """First canonical word that ``A`` rejects, or ``None``."""
    for w, runs in _runs(A, budget):
        if _accepting_runs(A, runs) == 0:
            return w
    return None


def oracle_ambiguous(A: Automaton, budget: OracleBudget = OracleBudget()):
    """First canonical word with at least two accepting runs, as ``(word, 2)``."""
    for w, runs in _runs(A, budget):
        n = _accepting_runs(A, runs)
        if n >= 2:
            return w, n
    return None


def oracle_contained(A: Automaton, B: Automaton, budget: OracleBudget = OracleBudget()
                     ) -> Optional[DataWord]:
    """First canonical word accepted by ``A`` and rejected by ``B``."""
    if A.domain is not B.domain:
        raise ValueError("automata over different domains")
    ub = _universe(B, budget)
    if ub is None:
        raise ValueError("guessing over rat-ord is not supported by the oracle")
    layer = [((), {B.initial_state: 1})]
    a_runs = _runs(A, budget)
    # walk both enumerations in lockstep: they emit words in the same order
    for n in range(budget.max_len + 1):
        nxt = []
        for w, b in layer:
            w_a, a = next(a_runs)
            assert w_a == w
            if _accepting_runs(A, a) and not _accepting_runs(B, b):
                return w
            if n < budget.max_len:
                for w2 in _extend([w], A.alphabet, A.domain, budget.rat_depth):
                    nxt.append((w2, _step(B, b, w2[-1], ub)))
        layer = nxt
    return None


def oracle_reachable_configs(A: Automaton, budget: OracleBudget = OracleBudget()) -> set:
    """Canonical forms of all configurations reached on canonical words."""
    if A.kind != RA:
        raise ValueError("oracle_reachable_configs needs an automaton without guessing")
    out = set()
    for _, runs in _runs(A, budget):
        out.add(canonicalize(frozenset(runs), A.domain)[0])
    return out
