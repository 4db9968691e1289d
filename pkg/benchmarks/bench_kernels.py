"""Compare the compiled and pure-Python kernels.

    python3 benchmarks/bench_kernels.py [--repeat N]

Times canonical labelling on rows taken from real configurations,
the disjoint-family search on random instances, and one end-to-end
decision run with each backend switched in.
"""
import argparse
import random
import timeit

from regaut import fixtures, kernels
from regaut.config import _rows
from regaut.decide import check_containment_gura, check_universality_ura_nat
from regaut.generate import random_config, random_ra


def label_workload(n=300, seed=0):
    rng = random.Random(seed)
    out = []
    for _ in range(n):
        A = random_ra(rng, k=3)
        C = random_config(rng, A, rng.randint(3, 8), range(12))
        rows, ids = _rows(C)
        out.append((rows, len(ids)))
    return out


def family_workload(n=200, seed=1):
    rng = random.Random(seed)
    return [([rng.sample(range(30), rng.randint(1, 3)) for _ in range(40)], rng.randint(3, 8))
            for _ in range(n)]


def end_to_end():
    check_universality_ura_nat(fixtures.load("lemma44-k2"))
    check_containment_gura(fixtures.load("second-to-last"), fixtures.load("fig1-gura"))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    labels = label_workload()
    families = family_workload()
    cases = {
        "canonical_labels": lambda b: [kernels.canonical_labels(r, n, backend=b) for r, n in labels],
        "disjoint_family": lambda b: [kernels.disjoint_family(i, t, backend=b) for i, t in families],
    }
    print(f"{'kernel':<18} {'backend':<8} {'best (ms)':>10}")
    for name, fn in cases.items():
        for b in sorted(kernels.BACKENDS):
            best = min(timeit.repeat(lambda: fn(b), number=1, repeat=args.repeat))
            print(f"{name:<18} {b:<8} {1000 * best:10.2f}")
    saved = kernels._impl
    for b in sorted(kernels.BACKENDS):
        kernels._impl = kernels.BACKENDS[b]
        best = min(timeit.repeat(end_to_end, number=1, repeat=args.repeat))
        print(f"{'end-to-end':<18} {b:<8} {1000 * best:10.2f}")
    kernels._impl = saved


if __name__ == "__main__":
    main()
