"""Configurations: finite sets of states, and finite/cofinite one-register
configurations for automata with guessing.

Also holds the canonical forms used to deduplicate search states: two
objects related by a renaming of data (order-preserving over (Q;<,=)) get the
same canonical form.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple, Optional

from . import kernels
from .automaton import GRA, RA, Automaton, State, sort_data, step_states
from .core import BOT, DataWord, Datum, Domain, compile_constraint, format_datum, pins

Configuration = frozenset


def initial_config(A: Automaton) -> Configuration:
    return frozenset([A.initial_state])


def config_data(C: Iterable[State]) -> set:
    return {v for s in C for v in s.vals if v is not BOT}


def is_accepting(A: Automaton, C: Iterable[State]) -> bool:
    return any(s.loc in A.accepting for s in C)


def succ_config(A: Automaton, C: Iterable[State], letter) -> Configuration:
    """Exact successor configuration of an automaton without guessing."""
    if A.kind != RA:
        raise ValueError("succ_config needs an RA; use succ_gconfig for one-register GRA")
    return step_states(A, C, letter)


def succ_config_word(A: Automaton, C: Iterable[State], w: DataWord) -> Configuration:
    C = frozenset(C)
    for letter in w:
        C = succ_config(A, C, letter)
    return C


# -- finite / cofinite sets ---------------------------------------------------

@dataclass(frozen=True, order=True)
class FiniteOrCofinite:
    """A subset of N extended with an optional BOT member.

    ``cofinite=False``: exactly the naturals in ``exceptions``.
    ``cofinite=True``: every natural except those in ``exceptions``.
    ``bot`` says whether BOT belongs to the set.
    """
    cofinite: bool
    exceptions: frozenset = frozenset()
    bot: bool = False

    def __post_init__(self):
        if BOT in self.exceptions:
            raise ValueError("BOT is tracked by the bot flag, not in exceptions")

    @staticmethod
    def finite(items: Iterable = ()) -> "FiniteOrCofinite":
        items = set(items)
        has_bot = BOT in items
        items.discard(BOT)
        return FiniteOrCofinite(False, frozenset(items), has_bot)

    @staticmethod
    def co(excluded: Iterable = ()) -> "FiniteOrCofinite":
        return FiniteOrCofinite(True, frozenset(excluded), False)

    def __contains__(self, d) -> bool:
        if d is BOT:
            return self.bot
        return (d in self.exceptions) != self.cofinite

    def is_empty(self) -> bool:
        return not self.cofinite and not self.exceptions and not self.bot

    def naturals(self) -> "FiniteOrCofinite":
        """The same set without BOT."""
        return FiniteOrCofinite(self.cofinite, self.exceptions, False)

    def union(self, other: "FiniteOrCofinite") -> "FiniteOrCofinite":
        bot = self.bot or other.bot
        if not self.cofinite and not other.cofinite:
            return FiniteOrCofinite(False, self.exceptions | other.exceptions, bot)
        if self.cofinite and other.cofinite:
            return FiniteOrCofinite(True, self.exceptions & other.exceptions, bot)
        co, fin = (self, other) if self.cofinite else (other, self)
        return FiniteOrCofinite(True, co.exceptions - fin.exceptions, bot)

    def minus(self, items: Iterable) -> "FiniteOrCofinite":
        items = set(items)
        bot = self.bot and BOT not in items
        items.discard(BOT)
        if self.cofinite:
            return FiniteOrCofinite(True, self.exceptions | items, bot)
        return FiniteOrCofinite(False, self.exceptions - items, bot)

    def size_at_least(self, n: int) -> bool:
        """Does the set hold at least ``n`` naturals?"""
        return self.cofinite or len(self.exceptions) >= n

    def some_naturals(self, n: int) -> list:
        """Up to ``n`` smallest naturals in the set."""
        if not self.cofinite:
            return sorted(self.exceptions)[:n]
        out, x = [], 0
        while len(out) < n:
            if x not in self.exceptions:
                out.append(x)
            x += 1
        return out

    def rename(self, pi: Mapping) -> "FiniteOrCofinite":
        return FiniteOrCofinite(self.cofinite, frozenset(pi.get(x, x) for x in self.exceptions), self.bot)

    def __str__(self):
        body = ",".join(format_datum(x) for x in sorted(self.exceptions))
        if self.cofinite:
            return f"co{{{body}}}" + ("+_" if self.bot else "")
        items = (["_"] if self.bot else []) + ([body] if body else [])
        return "{" + ",".join(items) + "}"


EMPTY = FiniteOrCofinite(False)


@dataclass(frozen=True)
class GConfig:
    """Configuration of a one-register automaton: location -> data set.

    Stored as sorted ``(location, set)`` pairs; locations mapped to the
    empty set are omitted.
    """
    items: tuple = ()

    @staticmethod
    def of(mapping: Mapping) -> "GConfig":
        return GConfig(tuple(sorted((loc, s) for loc, s in mapping.items() if not s.is_empty())))

    def get(self, loc: str) -> FiniteOrCofinite:
        for l, s in self.items:
            if l == loc:
                return s
        return EMPTY

    def as_dict(self) -> dict:
        return dict(self.items)

    def locations(self) -> list:
        return [l for l, _ in self.items]

    def contains_state(self, s: State) -> bool:
        return s.vals[0] in self.get(s.loc)

    def __str__(self):
        return "{" + ", ".join(f"{l}: {s}" for l, s in self.items) + "}"


def initial_gconfig(B: Automaton) -> GConfig:
    return GConfig.of({B.init: FiniteOrCofinite.finite([BOT])})


def gconfig_accepting(B: Automaton, G: GConfig) -> bool:
    return any(loc in B.accepting for loc, s in G.items)


def _require_one_register(B: Automaton) -> None:
    if len(B.registers) != 1:
        raise ValueError("finite/cofinite configurations need exactly one register")
    if B.domain is not Domain.NAT_EQ:
        raise ValueError("finite/cofinite configurations are only defined over nat-eq")


@dataclass(frozen=True)
class _Shape:
    """One equality type of ``(u, d, v)`` with representatives."""
    u: Datum
    v: Datum
    kind: str


# d is always 0 in the representatives
_SHAPES = (
    _Shape(0, 0, "u=d, v=d"),
    _Shape(0, 1, "u=d, v fresh"),
    _Shape(1, 1, "u, v=u"),
    _Shape(1, 0, "u, v=d"),
    _Shape(1, 2, "u, v fresh"),
    _Shape(BOT, BOT, "bot, v=bot"),
    _Shape(BOT, 0, "bot, v=d"),
    _Shape(BOT, 1, "bot, v fresh"),
)


def _shape_allowed(shape: _Shape, how: Optional[str]) -> bool:
    if how == "keep":
        return shape.v == shape.u
    if how == "input":
        return shape.v == 0
    return shape.v is not BOT


def _shape_image(shape: _Shape, S: FiniteOrCofinite, d: int) -> FiniteOrCofinite:
    """Values ``v`` of successors of ``S`` on datum ``d`` in this shape."""
    others = S.naturals().minus([d])  # candidates u with u != d
    k = shape.kind
    if k == "u=d, v=d":
        return FiniteOrCofinite.finite([d]) if d in S else EMPTY
    if k == "u=d, v fresh":
        return FiniteOrCofinite.co([d]) if d in S else EMPTY
    if k == "u, v=u":
        return others
    if k == "u, v=d":
        return FiniteOrCofinite.finite([d]) if not others.is_empty() else EMPTY
    if k == "u, v fresh":
        if others.size_at_least(2):
            return FiniteOrCofinite.co([d])
        if others.is_empty():
            return EMPTY
        (u,) = others.exceptions
        return FiniteOrCofinite.co([u, d])
    if k == "bot, v=bot":
        return FiniteOrCofinite.finite([BOT]) if S.bot else EMPTY
    if k == "bot, v=d":
        return FiniteOrCofinite.finite([d]) if S.bot else EMPTY
    if k == "bot, v fresh":
        return FiniteOrCofinite.co([d]) if S.bot else EMPTY
    raise AssertionError(k)


def succ_gconfig(B: Automaton, G: GConfig, letter) -> GConfig:
    """Exact successor of a finite/cofinite configuration of a one-register automaton.

    Each edge is split by the equality type of (old value, input, new value);
    the guard is evaluated once per type on representatives, and the images
    of the source set are unioned per target location.
    """
    _require_one_register(B)
    sigma, d = letter
    if sigma not in B.alphabet:
        raise ValueError(f"symbol {sigma!r} is not in the alphabet")
    if d is BOT:
        raise ValueError("input datum must not be BOT")
    out = {}
    for loc, S in G.items:
        for i in B.outgoing(loc, sigma):
            guard, how = B._compiled[i]
            dst = B.edges[i].dst
            for shape in _SHAPES:
                if not _shape_allowed(shape, how[0]):
                    continue
                if not guard((shape.u,), 0, (shape.v,)):
                    continue
                img = _shape_image(shape, S, d)
                if not img.is_empty():
                    out[dst] = out.get(dst, EMPTY).union(img)
    return GConfig.of(out)


def succ_gconfig_word(B: Automaton, G: GConfig, w: DataWord) -> GConfig:
    for letter in w:
        G = succ_gconfig(B, G, letter)
    return G


def support(G: GConfig) -> set:
    """Data treated specially by ``G``: finite members and cofinite exclusions."""
    out = set()
    for _, s in G.items:
        out |= s.exceptions
    return out


def plus_minus(G: GConfig, d: Datum):
    """``(C_d^+, C_d^-)``: states ``l(d)`` present in finite sets / missing from cofinite ones."""
    if d is BOT:
        raise ValueError("plus_minus is defined for proper data only")
    plus = frozenset(State(l, (d,)) for l, s in G.items if not s.cofinite and d in s)
    minus = frozenset(State(l, (d,)) for l, s in G.items if s.cofinite and d not in s)
    return plus, minus


def membership(G: GConfig, d: Datum) -> frozenset:
    """Locations ``l`` with ``l(d)`` in ``G``."""
    return frozenset(l for l, s in G.items if d in s)


# -- synchronized configurations ----------------------------------------------

class SyncConfig(NamedTuple):
    a_state: State
    b_config: GConfig

    def __str__(self):
        return f"<{self.a_state} | {self.b_config}>"


# -- renamings and canonical forms --------------------------------------------

class Renaming(dict):
    """Injective map on data; BOT and unmapped data are left unchanged."""

    def datum(self, d):
        if d is BOT:
            return BOT
        return self.get(d, d)

    def state(self, s: State) -> State:
        return State(s.loc, tuple(self.datum(v) for v in s.vals))

    def config(self, C) -> Configuration:
        return frozenset(self.state(s) for s in C)

    def word(self, w: DataWord) -> DataWord:
        return tuple((a, self.datum(d)) for a, d in w)

    def gconfig(self, G: GConfig) -> GConfig:
        return GConfig(tuple(sorted((l, s.rename(self)) for l, s in G.items)))

    def sync(self, S: SyncConfig) -> SyncConfig:
        return SyncConfig(self.state(S.a_state), self.gconfig(S.b_config))

    def inverse(self) -> "Renaming":
        return Renaming({v: k for k, v in self.items()})

    def is_injective(self) -> bool:
        return len(set(self.values())) == len(self)


def _apply(x, pi: Renaming):
    if isinstance(x, SyncConfig):
        return pi.sync(x)
    if isinstance(x, GConfig):
        return pi.gconfig(x)
    if isinstance(x, State):
        return pi.state(x)
    if isinstance(x, tuple) and len(x) == 2 and isinstance(x[0], frozenset):
        return (pi.config(x[0]), pi.word(x[1]))
    if isinstance(x, (frozenset, set)):
        return pi.config(x)
    if isinstance(x, tuple):
        return pi.word(x)
    raise TypeError(f"cannot rename {type(x).__name__}")


def apply_renaming(x, pi: Mapping):
    """Rename the data of a configuration, GConfig, SyncConfig, word or (config, word)."""
    return _apply(x, pi if isinstance(pi, Renaming) else Renaming(pi))


def _rows(x):
    """Integer rows describing ``x`` plus its data in first-seen order."""
    ids = {}
    rows = []

    def did(v):
        if v is BOT:
            return -1
        return ids.setdefault(v, len(ids))

    def config_rows(C, base):
        locs = sorted({s.loc for s in C})
        rank = {l: i for i, l in enumerate(locs)}
        for s in sorted(C, key=lambda s: (s.loc, tuple(format_datum(v) for v in s.vals))):
            rows.append([base + rank[s.loc]] + [did(v) for v in s.vals])
        return base + len(locs)

    def gconfig_rows(G, base):
        for i, (_, s) in enumerate(G.items):
            for v in sorted(s.exceptions):
                rows.append([base + 2 * i + int(s.cofinite), did(v)])
        return base + 2 * len(G.items)

    if isinstance(x, SyncConfig):
        rows.append([0] + [did(v) for v in x.a_state.vals])
        gconfig_rows(x.b_config, 1)
    elif isinstance(x, GConfig):
        gconfig_rows(x, 0)
    elif isinstance(x, tuple) and len(x) == 2 and isinstance(x[0], frozenset):
        C, w = x
        config_rows(C, 0)
        for i, (_, d) in enumerate(w):
            rows.append([-(i + 1), did(d)])
    elif isinstance(x, (frozenset, set)):
        config_rows(x, 0)
    elif isinstance(x, tuple):
        for i, (_, d) in enumerate(x):
            rows.append([-(i + 1), did(d)])
    else:
        raise TypeError(f"cannot canonicalize {type(x).__name__}")
    width = max((len(r) for r in rows), default=1)
    rows = [tuple(r + [-2] * (width - len(r))) for r in rows]
    return rows, ids


def canonicalize(x, dom: Domain = Domain.NAT_EQ):
    """Canonical representative of the renaming class of ``x``.

    Returns ``(canonical, renaming)`` with ``canonical == apply_renaming(x,
    renaming)``.  Data become ``0, 1, 2, ...``: by rank over (Q;<,=), by a
    canonical labelling of the data/structure incidence over (N;=).
    """
    rows, ids = _rows(x)
    data = list(ids)
    if dom is Domain.RAT_ORD:
        order = sorted(data)
        pi = Renaming({v: Fraction(i) for i, v in enumerate(order)})
    else:
        labels = kernels.canonical_labels(rows, len(data))
        pi = Renaming({v: labels[ids[v]] for v in data})
    return _apply(x, pi), pi


def canonical_text(x, dom: Domain = Domain.NAT_EQ) -> str:
    """Stable text rendering of the canonical form of ``x``."""
    c, _ = canonicalize(x, dom)
    return render(c)


def render(x) -> str:
    if isinstance(x, (SyncConfig, GConfig)):
        return str(x)
    if isinstance(x, tuple) and len(x) == 2 and isinstance(x[0], frozenset):
        return render(x[0]) + " / " + " ".join(f"{a}:{format_datum(d)}" for a, d in x[1])
    if isinstance(x, (frozenset, set)):
        states = sorted(x, key=lambda s: (s.loc, [(-1 if v is BOT else v) for v in s.vals]))
        return "{" + ", ".join(str(s) for s in states) + "}"
    return " ".join(f"{a}:{format_datum(d)}" for a, d in x)


def input_representatives(relevant: Iterable, dom: Domain) -> list:
    """Relevant data plus one datum of every other type relative to them."""
    rel = sort_data(set(relevant))
    if dom is Domain.NAT_EQ:
        fresh = 0
        present = set(rel)
        while fresh in present:
            fresh += 1
        return rel + [fresh]
    if not rel:
        return [Fraction(0)]
    pts = [Fraction(v) for v in rel]
    out = list(pts) + [pts[0] - 1, pts[-1] + 1]
    out += [(a + b) / 2 for a, b in zip(pts, pts[1:])]
    return sorted(out)
