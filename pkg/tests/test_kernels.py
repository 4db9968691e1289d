import os
import random
import subprocess
import sys

import pytest
from hypothesis import given, strategies as st

from regaut import kernels

BACKENDS = sorted(kernels.BACKENDS)


def test_cython_backend_built():
    # the extension is part of the build; pure mode must be an explicit choice
    assert "cython" in kernels.BACKENDS


def _random_rows(rng, n_data, n_rows, width):
    rows = []
    for _ in range(n_rows):
        row = [rng.randint(0, 3)] + [rng.choice([-1] + list(range(n_data))) for _ in range(width)]
        rows.append(tuple(row))
    return rows


@pytest.mark.parametrize("seed", range(40))
def test_canonical_labels_agree(seed):
    rng = random.Random(seed)
    n = rng.randint(0, 7)
    rows = _random_rows(rng, n, rng.randint(1, 6), rng.randint(1, 3))
    results = {b: kernels.canonical_labels(rows, n, backend=b) for b in BACKENDS}
    assert len({tuple(r) for r in results.values()}) == 1


@pytest.mark.parametrize("backend", BACKENDS)
def test_canonical_labels_is_canonical(backend):
    rng = random.Random(1)
    for _ in range(100):
        n = rng.randint(1, 6)
        rows = _random_rows(rng, n, rng.randint(1, 5), 2)
        perm = list(range(n))
        rng.shuffle(perm)
        moved = [tuple(r[0:1]) + tuple(perm[v] if v >= 0 else v for v in r[1:]) for r in rows]
        lab1 = kernels.canonical_labels(rows, n, backend=backend)
        lab2 = kernels.canonical_labels(moved, n, backend=backend)
        enc = lambda rs, lab: sorted(tuple(r[0:1]) + tuple(lab[v] if v >= 0 else v for v in r[1:]) for r in rs)
        assert enc(rows, lab1) == enc(moved, lab2)
        assert sorted(lab1) == list(range(n))


items_st = st.lists(st.lists(st.integers(0, 12), min_size=1, max_size=3, unique=True), max_size=12)


@given(items_st, st.integers(1, 5))
def test_disjoint_family_agrees(items, target):
    results = [kernels.disjoint_family(items, target, backend=b) for b in BACKENDS]
    assert all(r == results[0] for r in results)
    chosen = results[0]
    if chosen is not None:
        assert len(chosen) >= target
        members = [v for j in chosen for v in items[j]]
        assert len(members) == len(set(members))


def test_disjoint_family_hashable_members():
    items = [["x", None], ["y"], ["x"]]
    for b in BACKENDS:
        assert kernels.disjoint_family(items, 2, backend=b) == [0, 1]
        assert kernels.disjoint_family(items, 3, backend=b) is None


@pytest.mark.parametrize("value, expected", [("1", "python"), ("0", "cython"), ("", "cython")])
def test_env_switch(value, expected):
    env = dict(os.environ, REGAUT_PURE_PYTHON=value)
    out = subprocess.run([sys.executable, "-c", "from regaut import kernels; print(kernels.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == expected
