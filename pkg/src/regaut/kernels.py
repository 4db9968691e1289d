"""Backend selection for the hot search kernels.

The compiled ``_speedups`` extension is used when it is importable; setting
``REGAUT_PURE_PYTHON=1`` forces the pure-Python implementation.  Both
backends produce identical results.
"""
import os

from . import _pykernels

BACKENDS = {"python": _pykernels}

try:
    from . import _speedups
except ImportError:  # extension not built
    _speedups = None
else:
    BACKENDS["cython"] = _speedups

if os.environ.get("REGAUT_PURE_PYTHON", "") not in ("", "0") or _speedups is None:
    BACKEND = "python"
else:
    BACKEND = "cython"

_impl = BACKENDS[BACKEND]


def canonical_labels(rows, n_data, backend=None):
    impl = _impl if backend is None else BACKENDS[backend]
    return impl.canonical_labels(rows, n_data)


def disjoint_family(items, target, backend=None):
    """Pairwise disjoint family of at least ``target`` items (see ``_pykernels``).

    Item members may be arbitrary hashable data; they are renumbered densely
    before reaching the kernel.
    """
    ids = {}
    dense = [[ids.setdefault(v, len(ids)) for v in it] for it in items]
    impl = _impl if backend is None else BACKENDS[backend]
    return impl.disjoint_family(dense, target)
