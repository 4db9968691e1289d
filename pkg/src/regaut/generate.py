"""Random automata, configurations and renamings for tests and benchmarks."""
from __future__ import annotations

import random
from fractions import Fraction
from typing import Optional

from .automaton import GRA, RA, Automaton, Edge, State, check_unambiguous_ra, make_clean
from .core import (BOT, INPUT, TRUE, Domain, Not, Reg, RegNext, conj, disj, eq, lt)


def _input_literals(regs, dom: Domain) -> list:
    out = [TRUE]
    for r in regs:
        out += [eq(Reg(r), INPUT), Not(eq(Reg(r), INPUT))]
        if dom is Domain.RAT_ORD:
            out += [lt(Reg(r), INPUT), lt(INPUT, Reg(r))]
    if len(regs) == 2:
        a, b = regs
        out.append(conj(Not(eq(Reg(a), INPUT)), Not(eq(Reg(b), INPUT))))
        out.append(disj(eq(Reg(a), INPUT), eq(Reg(b), INPUT)))
    return out


def _pin_guard(base, regs, rng: random.Random):
    pins = [eq(RegNext(r), INPUT if rng.random() < 0.4 else Reg(r)) for r in regs]
    return conj(base, *pins)


def random_ra(rng: random.Random, k: int = 1, n_locs: int = 3, dom: Domain = Domain.NAT_EQ,
              alphabet=("a",), edge_prob: float = 0.5, acc_prob: float = 0.6,
              name: str = "rand") -> Automaton:
    """A random automaton without guessing."""
    regs = tuple(f"r{i + 1}" for i in range(k))
    locs = tuple(f"q{i}" for i in range(n_locs))
    lits = _input_literals(regs, dom)
    edges = []
    for src in locs:
        for a in alphabet:
            for dst in locs:
                if rng.random() < edge_prob:
                    edges.append(Edge(src, a, _pin_guard(rng.choice(lits), regs, rng), dst))
    acc = frozenset(l for l in locs if rng.random() < acc_prob)
    return Automaton(name, dom, tuple(alphabet), regs, locs, locs[0], acc, tuple(edges), RA)


def random_deterministic_ra(rng: random.Random, k: int = 1, n_locs: int = 3,
                            dom: Domain = Domain.NAT_EQ, alphabet=("a",),
                            acc_prob: float = 0.7, complete_prob: float = 0.8,
                            name: str = "det") -> Automaton:
    """An RA whose guards out of each location split the input by an exclusive test."""
    regs = tuple(f"r{i + 1}" for i in range(k))
    locs = tuple(f"q{i}" for i in range(n_locs))
    edges = []
    for src in locs:
        for a in alphabet:
            r = rng.choice(regs) if regs else None
            if r is None or rng.random() < 0.3:
                cases = [TRUE]
            elif dom is Domain.RAT_ORD and rng.random() < 0.5:
                cases = [lt(Reg(r), INPUT), eq(Reg(r), INPUT), lt(INPUT, Reg(r))]
            else:
                cases = [eq(Reg(r), INPUT), Not(eq(Reg(r), INPUT))]
            for c in cases:
                if rng.random() < complete_prob:
                    edges.append(Edge(src, a, _pin_guard(c, regs, rng), rng.choice(locs)))
    acc = frozenset(l for l in locs if rng.random() < acc_prob)
    return Automaton(name, dom, tuple(alphabet), regs, locs, locs[0], acc, tuple(edges), RA)


def random_clean_ura(rng: random.Random, k: int, dom: Domain = Domain.NAT_EQ,
                     tries: int = 200, **kw) -> Optional[Automaton]:
    """A clean unambiguous RA (filtered through the exact checks)."""
    for _ in range(tries):
        gen = random_deterministic_ra if rng.random() < 0.6 else random_ra
        A = gen(rng, k=k, dom=dom, n_locs=rng.randint(2, 4), **kw)
        if check_unambiguous_ra(A) is not None:
            continue
        A2 = make_clean(A)
        if len(A2.locations) > 40:
            continue
        return A2
    return None


def _guess_literals(regs) -> list:
    out = []
    for r in regs:
        out += [Not(eq(RegNext(r), INPUT)), eq(RegNext(r), INPUT), eq(RegNext(r), Reg(r)),
                Not(eq(RegNext(r), Reg(r)))]
    if len(regs) == 2:
        a, b = regs
        out += [eq(RegNext(a), RegNext(b)), Not(eq(RegNext(a), Reg(b)))]
    return out


def random_gra(rng: random.Random, k: int = 1, n_locs: int = 3, alphabet=("a",),
               edge_prob: float = 0.45, acc_prob: float = 0.5, name: str = "grand") -> Automaton:
    """A random automaton over (N;=) whose edges may leave registers unpinned."""
    regs = tuple(f"r{i + 1}" for i in range(k))
    locs = tuple(f"q{i}" for i in range(n_locs))
    lits = _input_literals(regs, Domain.NAT_EQ)
    glits = _guess_literals(regs)
    edges = []
    for src in locs:
        for a in alphabet:
            for dst in locs:
                if rng.random() >= edge_prob:
                    continue
                if rng.random() < 0.35:
                    g = conj(rng.choice(lits), rng.choice(glits))
                else:
                    g = _pin_guard(rng.choice(lits), regs, rng)
                edges.append(Edge(src, a, g, dst))
    acc = frozenset(l for l in locs if rng.random() < acc_prob)
    return Automaton(name, Domain.NAT_EQ, tuple(alphabet), regs, locs, locs[0], acc,
                     tuple(edges), GRA)


def random_guess_then_check(rng: random.Random, n_locs: int = 3, name: str = "gtc") -> Automaton:
    """One-register automaton that guesses once, then runs a deterministic part."""
    body = random_deterministic_ra(rng, k=1, n_locs=n_locs, name=name)
    guess = rng.choice([Not(eq(RegNext("r1"), INPUT)), TRUE, eq(RegNext("r1"), INPUT)])
    start = Edge("g", "a", guess, body.init)
    locs = ("g",) + body.locations
    acc = body.accepting | ({"g"} if rng.random() < 0.2 else set())
    return Automaton(name, Domain.NAT_EQ, body.alphabet, body.registers, locs, "g",
                     frozenset(acc), (start,) + body.edges, GRA)


def random_config(rng: random.Random, A: Automaton, n_states: int, data) -> frozenset:
    data = list(data)
    out = set()
    for _ in range(n_states):
        vals = tuple(BOT if rng.random() < 0.15 else rng.choice(data) for _ in A.registers)
        out.add(State(rng.choice(A.locations), vals))
    return frozenset(out)


def random_word(rng: random.Random, A: Automaton, length: int, data) -> tuple:
    data = list(data)
    return tuple((rng.choice(A.alphabet), rng.choice(data)) for _ in range(length))


def random_renaming(rng: random.Random, data, dom: Domain) -> dict:
    """Injective renaming of ``data``; order-preserving over (Q;<,=)."""
    data = sorted(set(data))
    if dom is Domain.NAT_EQ:
        targets = rng.sample(range(10 * len(data) + 10), len(data))
        return dict(zip(data, targets))
    out, cur = {}, Fraction(rng.randint(-20, 20), rng.randint(1, 5))
    for d in data:
        out[d] = cur
        cur += Fraction(rng.randint(1, 9), rng.randint(1, 7))
    return out
