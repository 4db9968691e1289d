"""Shipped example automata and configurations."""
from __future__ import annotations

from importlib import resources

from .config import FiniteOrCofinite, GConfig
from .dsl import parse_automaton

# a configuration over locations l1, l2, l3 of a one-register automaton:
# l1 holds {0, 1}, l2 holds N - {1, 2}, l3 holds N - {0, 1}
SEC6_EXAMPLE_CONFIG = GConfig.of({
    "l1": FiniteOrCofinite.finite([0, 1]),
    "l2": FiniteOrCofinite.co([1, 2]),
    "l3": FiniteOrCofinite.co([0, 1]),
})

CONFIG_FIXTURES = {"sec6-example-config": SEC6_EXAMPLE_CONFIG}


def automaton_names() -> list:
    files = resources.files(__package__).joinpath("data").iterdir()
    return sorted(f.name[:-3] for f in files if f.name.endswith(".ra"))


def names() -> list:
    return sorted(automaton_names() + list(CONFIG_FIXTURES))


def fixture_text(name: str) -> str:
    if name in CONFIG_FIXTURES:
        return str(CONFIG_FIXTURES[name]) + "\n"
    path = resources.files(__package__).joinpath("data").joinpath(f"{name}.ra")
    if not path.is_file():
        raise KeyError(f"unknown fixture {name!r}")
    return path.read_text(encoding="utf-8")


def load(name: str):
    """Parsed automaton (or configuration) of the fixture ``name``."""
    if name in CONFIG_FIXTURES:
        return CONFIG_FIXTURES[name]
    return parse_automaton(fixture_text(name), file=f"{name}.ra")
