"""Register automata with and without guessing.

Transition semantics used throughout the package: an edge pins register
``r`` when its guard has a top-level conjunct ``r'=r`` or ``r'=#``; a pinned
register takes the pinned value (so ``r'=r`` keeps ``BOT``).  Every other
register guesses a value from the domain (never ``BOT``) subject to the guard.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, NamedTuple, Optional

from .core import (BOT, DataWord, Datum, Domain, DomainError, Constraint,
                   Letter, check_domain, compile_constraint, conj, eq, is_guess_free,
                   lt, Not, pins, registers_of, INPUT, Reg, RegNext, TRUE)

RA = "RA"
GRA = "GRA"


@dataclass(frozen=True)
class Edge:
    src: str
    label: str
    guard: Constraint
    dst: str


class State(NamedTuple):
    loc: str
    vals: tuple

    def __str__(self):
        from .core import format_datum
        return f"{self.loc}({', '.join(format_datum(v) for v in self.vals)})"


@dataclass(frozen=True)
class Automaton:
    name: str
    domain: Domain
    alphabet: tuple
    registers: tuple
    locations: tuple
    init: str
    accepting: frozenset
    edges: tuple
    kind: str = RA

    @property
    def k(self) -> int:
        return len(self.registers)

    @property
    def initial_state(self) -> State:
        return State(self.init, (BOT,) * len(self.registers))

    @cached_property
    def _compiled(self):
        out = []
        for e in self.edges:
            p = pins(e.guard)
            how = tuple(p.get(r) for r in self.registers)
            out.append((compile_constraint(e.guard, self.registers), how))
        return tuple(out)

    @cached_property
    def _outgoing(self):
        table = {}
        for i, e in enumerate(self.edges):
            table.setdefault((e.src, e.label), []).append(i)
        return table

    def outgoing(self, loc: str, label: str) -> list:
        return self._outgoing.get((loc, label), [])


@dataclass(frozen=True)
class AmbiguityWitness:
    word: DataWord
    run1: tuple
    run2: tuple


def validate(A: Automaton) -> list:
    """Return human-readable diagnostics; an empty list means well-formed."""
    diags = []
    locs = set(A.locations)
    regs = set(A.registers)
    if len(locs) != len(A.locations):
        diags.append("duplicate location names")
    if len(regs) != len(A.registers):
        diags.append("duplicate register names")
    if A.init not in locs:
        diags.append(f"initial location {A.init!r} is not declared")
    for loc in sorted(A.accepting - locs):
        diags.append(f"accepting location {loc!r} is not declared")
    if A.kind not in (RA, GRA):
        diags.append(f"unknown automaton kind {A.kind!r}")
    for i, e in enumerate(A.edges):
        where = f"edge {i} ({e.src} -{e.label}-> {e.dst})"
        for end in (e.src, e.dst):
            if end not in locs:
                diags.append(f"{where}: undeclared location {end!r}")
        if e.label not in A.alphabet:
            diags.append(f"{where}: label {e.label!r} not in alphabet")
        for r in sorted(registers_of(e.guard) - regs):
            diags.append(f"{where}: undeclared register {r!r}")
        try:
            check_domain(e.guard, A.domain)
        except DomainError as exc:
            diags.append(f"{where}: {exc}")
        if A.kind == RA and not is_guess_free(e.guard, A.registers):
            diags.append(f"{where}: guard is not guess-free but the automaton is declared RA")
    return diags


def sort_data(values: Iterable) -> list:
    return sorted(v for v in values if v is not BOT)


def fresh_values(dom: Domain, known: Iterable, count: int) -> list:
    """``count`` representatives of data outside ``known``.

    Over (N;=) these are the smallest naturals not in ``known``.  Over
    (Q;<,=) every gap of the sorted known data (including both unbounded
    ends) receives ``count`` evenly spaced points.
    """
    known = set(v for v in known if v is not BOT)
    if count <= 0:
        return []
    if dom is Domain.NAT_EQ:
        out, n = [], 0
        while len(out) < count:
            if n not in known:
                out.append(n)
            n += 1
        return out
    pts = sorted(Fraction(v) for v in known)
    if not pts:
        return [Fraction(i) for i in range(count)]
    out = [pts[0] - i for i in range(1, count + 1)]
    out += [pts[-1] + i for i in range(1, count + 1)]
    for a, b in zip(pts, pts[1:]):
        step = (b - a) / (count + 1)
        out += [a + step * i for i in range(1, count + 1)]
    return sorted(out)


def _edge_successors(A: Automaton, i: int, u: tuple, d: Datum, guesses) -> list:
    guard, how = A._compiled[i]
    choices = []
    for j, h in enumerate(how):
        if h == "keep":
            choices.append((u[j],))
        elif h == "input":
            choices.append((d,))
        else:
            choices.append(guesses)
    dst = A.edges[i].dst
    out = []
    for v in itertools.product(*choices):
        if guard(u, d, v):
            out.append(State(dst, v))
    return out


def _guess_candidates(s: State, d: Datum, pool) -> tuple:
    return tuple(sort_data(set(pool) | {v for v in s.vals if v is not BOT} | {d}))


def state_successors(A: Automaton, s: State, letter: Letter, pool: Iterable = ()) -> set:
    """All ``(edge index, successor state)`` pairs of ``s`` on ``letter``.

    Guessed register values are drawn from ``pool``, the values of ``s`` and
    the input datum; ``pool`` is ignored for RA.
    """
    sigma, d = letter
    if sigma not in A.alphabet:
        raise ValueError(f"symbol {sigma!r} is not in the alphabet")
    if d is BOT:
        raise ValueError("input datum must not be BOT")
    guesses = () if A.kind == RA else _guess_candidates(s, d, pool)
    out = set()
    for i in A.outgoing(s.loc, sigma):
        for t in _edge_successors(A, i, s.vals, d, guesses):
            out.add((i, t))
    return out


def step_states(A: Automaton, states: Iterable, letter: Letter, universe=()) -> frozenset:
    """Successor set of a finite set of states (guesses drawn from ``universe``)."""
    out = set()
    for s in states:
        for _, t in state_successors(A, s, letter, universe):
            out.add(t)
    return frozenset(out)


def guess_universe(A: Automaton, known: Iterable, pool_size: Optional[int]) -> tuple:
    """Known data plus ``pool_size`` fresh representatives (GRA only)."""
    if A.kind == RA:
        return ()
    if pool_size is None:
        pool_size = 2 * len(A.registers)
    known = set(v for v in known if v is not BOT)
    return tuple(sort_data(known | set(fresh_values(A.domain, known, pool_size))))


def accepts(A: Automaton, w: DataWord, start: Optional[State] = None,
            pool_size: Optional[int] = None) -> bool:
    """Does some run on ``w`` from ``start`` (default: initial state) accept?

    For GRA the guesses range over the data of ``w`` and ``start`` plus
    ``pool_size`` fresh values (default ``2*k``, which is enough for runs on
    a fixed word under (N;=)).
    """
    start = A.initial_state if start is None else start
    universe = guess_universe(A, {d for _, d in w} | set(start.vals), pool_size)
    states = frozenset([start])
    for letter in w:
        states = step_states(A, states, letter, universe)
        if not states:
            return False
    return any(s.loc in A.accepting for s in states)


def count_accepting_runs(A: Automaton, w: DataWord, pool_size: Optional[int] = None,
                         start: Optional[State] = None) -> int:
    """Number of accepting runs on ``w``, saturated at 2."""
    start = A.initial_state if start is None else start
    universe = guess_universe(A, {d for _, d in w} | set(start.vals), pool_size)
    layer = {start: 1}
    for letter in w:
        nxt = {}
        for s, c in layer.items():
            for _, t in state_successors(A, s, letter, universe):
                nxt[t] = min(2, nxt.get(t, 0) + c)
        layer = nxt
        if not layer:
            return 0
    return min(2, sum(c for s, c in layer.items() if s.loc in A.accepting))


# -- abstract types of register tuples ----------------------------------------

def value_type(values: tuple, dom: Domain) -> tuple:
    """Canonical representative of the equality (or order) type of ``values``."""
    if dom is Domain.NAT_EQ:
        names = {}
        out = []
        for v in values:
            if v is BOT:
                out.append(BOT)
            else:
                out.append(names.setdefault(v, len(names)))
        return tuple(out)
    ranks = {v: i for i, v in enumerate(sort_data(set(values)))}
    return tuple(BOT if v is BOT else ranks[v] for v in values)


def abstract_inputs(values: tuple, dom: Domain) -> list:
    """One datum per type of a next input relative to canonical ``values``.

    Returns ``(descriptor, datum)`` pairs.  Descriptors are ``('eq', slot)``,
    ``('fresh',)`` for (N;=) and ``('gap', lo_slot, hi_slot)`` for (Q;<,=),
    where slots index ``values`` and ``None`` marks an open end.
    """
    first = {}
    for j, v in enumerate(values):
        if v is not BOT:
            first.setdefault(v, j)
    distinct = sorted(first)
    out = [(("eq", first[v]), v) for v in distinct]
    if dom is Domain.NAT_EQ:
        fresh = 0
        while fresh in first:
            fresh += 1
        out.append((("fresh",), fresh))
        return out
    if not distinct:
        out.append((("gap", None, None), Fraction(0)))
        return out
    out.append((("gap", None, first[distinct[0]]), Fraction(distinct[0]) - 1))
    for a, b in zip(distinct, distinct[1:]):
        out.append((("gap", first[a], first[b]), Fraction(a + b, 2)))
    out.append((("gap", first[distinct[-1]], None), Fraction(distinct[-1]) + 1))
    return out


def concretize_input(desc: tuple, values: tuple, dom: Domain) -> Datum:
    """Pick a concrete datum of type ``desc`` relative to concrete ``values``."""
    if desc[0] == "eq":
        return values[desc[1]]
    present = [v for v in values if v is not BOT]
    if desc[0] == "fresh":
        n = 0
        while n in present:
            n += 1
        return n
    _, lo, hi = desc
    if lo is None and hi is None:
        return Fraction(0)
    if lo is None:
        return Fraction(values[hi]) - 1
    if hi is None:
        return Fraction(values[lo]) + 1
    return (Fraction(values[lo]) + Fraction(values[hi])) / 2


# -- unambiguity --------------------------------------------------------------

def _require_ra(A: Automaton, what: str) -> None:
    if A.kind != RA:
        raise ValueError(f"{what} requires an automaton without guessing (RA)")


def check_unambiguous_ra(A: Automaton) -> Optional[AmbiguityWitness]:
    """Return ``None`` if ``A`` is unambiguous, otherwise a verified witness.

    Explores pairs of runs on a common word up to renaming of data: a node is
    two locations, the joint type of both register tuples and whether the
    runs have already used different edges.
    """
    _require_ra(A, "check_unambiguous_ra")
    k = len(A.registers)
    dom = A.domain
    start = (A.init, A.init, (BOT,) * (2 * k), False)
    parent = {start: None}
    queue = deque([start])
    hit = None
    while queue and hit is None:
        node = queue.popleft()
        l1, l2, vals, div = node
        s1, s2 = State(l1, vals[:k]), State(l2, vals[k:])
        for sigma in A.alphabet:
            for desc, d in abstract_inputs(vals, dom):
                succ1 = sorted(state_successors(A, s1, (sigma, d)))
                succ2 = sorted(state_successors(A, s2, (sigma, d)))
                for (e1, t1), (e2, t2) in itertools.product(succ1, succ2):
                    nxt = (t1.loc, t2.loc, value_type(t1.vals + t2.vals, dom), div or e1 != e2)
                    if nxt in parent:
                        continue
                    parent[nxt] = (node, sigma, desc, e1, e2)
                    if nxt[3] and nxt[0] in A.accepting and nxt[1] in A.accepting:
                        hit = nxt
                        break
                    queue.append(nxt)
                if hit:
                    break
            if hit:
                break
    if hit is None:
        return None
    steps = []
    node = hit
    while parent[node] is not None:
        prev, sigma, desc, e1, e2 = parent[node]
        steps.append((sigma, desc, e1, e2))
        node = prev
    steps.reverse()
    s1 = s2 = A.initial_state
    word, run1, run2 = [], [], []
    for sigma, desc, e1, e2 in steps:
        d = concretize_input(desc, s1.vals + s2.vals, dom)
        letter = (sigma, d)
        s1 = next(t for i, t in state_successors(A, s1, letter) if i == e1)
        s2 = next(t for i, t in state_successors(A, s2, letter) if i == e2)
        word.append(letter)
        run1.append((e1, s1))
        run2.append((e2, s2))
    word = tuple(word)
    if count_accepting_runs(A, word) < 2:
        raise RuntimeError("internal error: ambiguity witness failed re-verification")
    return AmbiguityWitness(word, tuple(run1), tuple(run2))


# -- clean form ---------------------------------------------------------------

def _type_graph(A: Automaton):
    """Reachable ``(location, register type)`` nodes and their successor sets."""
    dom = A.domain
    start = (A.init, (BOT,) * len(A.registers))
    succ = {start: set()}
    queue = deque([start])
    while queue:
        node = queue.popleft()
        loc, vals = node
        s = State(loc, vals)
        for sigma in A.alphabet:
            for _, d in abstract_inputs(vals, dom):
                for _, t in state_successors(A, s, (sigma, d)):
                    nxt = (t.loc, value_type(t.vals, dom))
                    succ[node].add(nxt)
                    if nxt not in succ:
                        succ[nxt] = set()
                        queue.append(nxt)
    return start, succ


def _coaccessible(succ: dict, accepting) -> set:
    pred = {n: set() for n in succ}
    for n, ts in succ.items():
        for t in ts:
            pred[t].add(n)
    good = {n for n in succ if n[0] in accepting}
    queue = deque(good)
    while queue:
        n = queue.popleft()
        for p in pred[n]:
            if p not in good:
                good.add(p)
                queue.append(p)
    return good


def _has_duplicates(vals: tuple) -> bool:
    present = [v for v in vals if v is not BOT]
    return len(present) != len(set(present))


def is_clean(A: Automaton) -> bool:
    """Every reachable state is co-accessible and holds pairwise distinct data."""
    _require_ra(A, "is_clean")
    _, succ = _type_graph(A)
    good = _coaccessible(succ, A.accepting)
    if not good:
        # the empty language: its clean form is a lone initial location
        return not A.edges
    return all(n in good and not _has_duplicates(n[1]) for n in succ)


def make_clean(A: Automaton) -> Automaton:
    """Equivalent unambiguous automaton that is clean.

    If ``A`` never stores one datum twice and dead states are determined by
    the location alone, dead and unreachable locations are simply removed.
    Otherwise registers are re-organised as slots: equal original registers
    share one slot, a slot that is no longer needed keeps its old (distinct)
    value, and each new edge fixes the type of the input relative to the
    slots, so runs of the result and of ``A`` correspond one-to-one.
    """
    _require_ra(A, "make_clean")
    if check_unambiguous_ra(A) is not None:
        raise ValueError("make_clean requires an unambiguous automaton")
    start, succ = _type_graph(A)
    good = _coaccessible(succ, A.accepting)
    by_loc = {}
    for n in succ:
        by_loc.setdefault(n[0], set()).add(n in good)
    uniform = all(len(flags) == 1 for flags in by_loc.values())
    if uniform and not any(_has_duplicates(n[1]) for n in succ):
        live = {loc for loc, flags in by_loc.items() if True in flags}
        keep = live | {A.init}
        return Automaton(
            name=A.name, domain=A.domain, alphabet=A.alphabet, registers=A.registers,
            locations=tuple(loc for loc in A.locations if loc in keep), init=A.init,
            accepting=frozenset(A.accepting & keep),
            edges=tuple(e for e in A.edges if e.src in live and e.dst in live),
            kind=RA)
    return _slot_construction(A)


def _input_guard(desc: tuple, slots: tuple, regs: tuple) -> Constraint:
    if desc[0] == "eq":
        return eq(Reg(regs[desc[1]]), INPUT)
    if desc[0] == "fresh":
        parts = [Not(eq(Reg(regs[j]), INPUT)) for j, v in enumerate(slots) if v is not BOT]
        return conj(*parts) if parts else TRUE
    _, lo, hi = desc
    parts = []
    if lo is not None:
        parts.append(lt(Reg(regs[lo]), INPUT))
    if hi is not None:
        parts.append(lt(INPUT, Reg(regs[hi])))
    return conj(*parts) if parts else TRUE


def _slot_construction(A: Automaton) -> Automaton:
    dom = A.domain
    regs = A.registers
    k = len(regs)
    start = (A.init, (None,) * k, (BOT,) * k)
    names = {start: f"{A.init}__0"}
    out_edges = {start: []}
    queue = deque([start])
    while queue:
        node = queue.popleft()
        loc, assign, slots = node
        u = tuple(BOT if a is None else slots[a] for a in assign)
        for sigma in A.alphabet:
            for desc, d in abstract_inputs(slots, dom):
                holder = {v: j for j, v in enumerate(slots) if v is not BOT}
                for i in A.outgoing(loc, sigma):
                    for t in _edge_successors(A, i, u, d, ()):
                        new_slots = list(slots)
                        written = None
                        needed = {v for v in t.vals if v is not BOT}
                        if d in needed and d not in holder:
                            busy = {holder[v] for v in needed if v in holder}
                            written = min(j for j in range(k) if j not in busy)
                            new_slots[written] = d
                        where = {v: j for j, v in enumerate(new_slots) if v is not BOT}
                        new_assign = tuple(None if v is BOT else where[v] for v in t.vals)
                        nxt = (t.loc, new_assign, value_type(tuple(new_slots), dom))
                        if nxt not in names:
                            names[nxt] = f"{t.loc}__{len(names)}"
                            out_edges[nxt] = []
                            queue.append(nxt)
                        pin = [eq(RegNext(r), INPUT if j == written else Reg(r))
                               for j, r in enumerate(regs)]
                        guard = conj(_input_guard(desc, slots, regs), *pin)
                        out_edges[node].append((sigma, guard, nxt))
    succ = {n: {t for _, _, t in es} for n, es in out_edges.items()}
    good = _coaccessible(succ, A.accepting)
    keep = [n for n in names if n in good or n == start]
    edges = []
    for n in keep:
        for sigma, guard, t in out_edges[n]:
            if n in good and t in good:
                edges.append(Edge(names[n], sigma, guard, names[t]))
    return Automaton(
        name=A.name + "_clean", domain=dom, alphabet=A.alphabet, registers=regs,
        locations=tuple(names[n] for n in keep), init=names[start],
        accepting=frozenset(names[n] for n in keep if n[0] in A.accepting),
        edges=tuple(edges), kind=RA)


def accepts_something_from(A: Automaton, s: State, max_len: int) -> bool:
    """Bounded search for a word accepted from ``s`` (RA only)."""
    _require_ra(A, "accepts_something_from")
    frontier = {s}
    seen = set()
    for _ in range(max_len + 1):
        if any(t.loc in A.accepting for t in frontier):
            return True
        nxt = set()
        for t in frontier:
            key = (t.loc, value_type(t.vals, A.domain))
            if key in seen:
                continue
            seen.add(key)
            for sigma in A.alphabet:
                for _, d in abstract_inputs(t.vals, A.domain):
                    nxt |= {x for _, x in state_successors(A, t, (sigma, d))}
        frontier = nxt
    return False
