"""Pure-Python kernels; ``_speedups.pyx`` is a line-by-line C port.

Both backends must return identical results: the colour refinement uses the
same 64-bit mixing function, so canonical labellings agree bit for bit.
"""

MASK = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
INDIV = 0xA5A5A5A5A5A5A5A5
POSMUL = 0x100000001B3


def mix(x):
    x = (x + GOLDEN) & MASK
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & MASK
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & MASK
    return x ^ (x >> 31)


def _refine(rows, width, colors):
    n = len(colors)
    classes = len(set(colors))
    while True:
        acc = [0] * n
        for row in rows:
            h = mix(row[0] & MASK)
            for j in range(1, width):
                v = row[j]
                c = colors[v] if v >= 0 else (v & MASK)
                h = (h + mix(c ^ mix(j))) & MASK
            h = mix(h)
            for j in range(1, width):
                v = row[j]
                if v >= 0:
                    acc[v] = (acc[v] + mix(h ^ ((j * POSMUL) & MASK))) & MASK
        new = [mix(colors[x] ^ mix(acc[x])) for x in range(n)]
        count = len(set(new))
        if count == classes:
            return colors
        colors, classes = new, count


def _encode(rows, labels):
    return sorted(tuple(v if i == 0 or v < 0 else labels[v] for i, v in enumerate(row))
                  for row in rows)


def _is_swap_automorphism(rows, sorted_rows, a, b):
    def sw(v):
        return b if v == a else a if v == b else v
    swapped = sorted(tuple(v if i == 0 else sw(v) for i, v in enumerate(row)) for row in rows)
    return swapped == sorted_rows


def canonical_labels(rows, n_data):
    """Canonical relabelling of data ``0..n_data-1`` occurring in ``rows``.

    ``rows`` are equal-width integer tuples: column 0 is a tag that is never
    renamed, other entries are data ids, ``-1`` (BOT) or ``-2`` (padding).
    Returns ``labels`` with ``labels[x]`` the canonical index of datum ``x``;
    isomorphic inputs receive identical relabelled row sets.
    """
    if n_data == 0:
        return []
    rows = [tuple(r) for r in rows]
    width = len(rows[0]) if rows else 1
    sorted_rows = sorted(rows)
    best = [None, None]

    def search(colors):
        colors = _refine(rows, width, colors)
        counts = {}
        for c in colors:
            counts[c] = counts.get(c, 0) + 1
        multi = [c for c, m in counts.items() if m > 1]
        if not multi:
            order = sorted(colors)
            rank = {c: i for i, c in enumerate(order)}
            labels = [rank[c] for c in colors]
            cert = _encode(rows, labels)
            if best[0] is None or cert < best[0]:
                best[0], best[1] = cert, labels
            return
        target = min(multi)
        cell = [x for x in range(n_data) if colors[x] == target]
        if all(_is_swap_automorphism(rows, sorted_rows, cell[0], y) for y in cell[1:]):
            cell = cell[:1]
        for x in cell:
            nxt = list(colors)
            nxt[x] = mix(colors[x] ^ INDIV)
            search(nxt)

    search([mix(0)] * n_data)
    return best[1]


def disjoint_family(items, target):
    """Indices of at least ``target`` pairwise disjoint items, or ``None``.

    ``items`` are sequences of non-negative ints.  Depth-first search in index
    order; a hit is extended greedily to a maximal family.
    """
    n = len(items)
    masks = []
    for it in items:
        m = 0
        for v in it:
            m |= 1 << v
        masks.append(m)
    if target <= 0:
        chosen, used = [], 0
    else:
        def dfs(start, used, chosen):
            if len(chosen) == target:
                return chosen, used
            for j in range(start, n):
                if n - j < target - len(chosen):
                    break
                if not masks[j] & used:
                    r = dfs(j + 1, used | masks[j], chosen + [j])
                    if r is not None:
                        return r
            return None

        found = dfs(0, 0, [])
        if found is None:
            return None
        chosen, used = found
    taken = set(chosen)
    for j in range(n):
        if j not in taken and not masks[j] & used:
            taken.add(j)
            used |= masks[j]
    return sorted(taken)
