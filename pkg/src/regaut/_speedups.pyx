# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""C implementations of the search kernels in ``_pykernels``.

Results are identical to the pure-Python versions; see that module for the
semantics of each function.
"""
from libc.stdint cimport int64_t, uint64_t
from libc.stdlib cimport calloc, free, malloc
from libc.string cimport memcmp, memcpy

cdef uint64_t GOLDEN = 0x9E3779B97F4A7C15ULL
cdef uint64_t INDIV = 0xA5A5A5A5A5A5A5A5ULL
cdef uint64_t POSMUL = 0x100000001B3ULL


cdef inline uint64_t mix(uint64_t x) noexcept nogil:
    x = x + GOLDEN
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL
    return x ^ (x >> 31)


cdef int count_distinct(uint64_t* c, int n, uint64_t* tmp) noexcept nogil:
    cdef int i, j, count
    cdef uint64_t key
    memcpy(tmp, c, n * sizeof(uint64_t))
    for i in range(1, n):
        key = tmp[i]
        j = i - 1
        while j >= 0 and tmp[j] > key:
            tmp[j + 1] = tmp[j]
            j -= 1
        tmp[j + 1] = key
    count = 1 if n > 0 else 0
    for i in range(1, n):
        if tmp[i] != tmp[i - 1]:
            count += 1
    return count


cdef inline int row_cmp(int64_t* a, int64_t* b, int width) noexcept nogil:
    cdef int j
    for j in range(width):
        if a[j] < b[j]:
            return -1
        if a[j] > b[j]:
            return 1
    return 0


cdef void sort_rows(int64_t* src, int n_rows, int width, int64_t* dst, int* order) noexcept nogil:
    cdef int i, j, key
    for i in range(n_rows):
        order[i] = i
    for i in range(1, n_rows):
        key = order[i]
        j = i - 1
        while j >= 0 and row_cmp(src + order[j] * width, src + key * width, width) > 0:
            order[j + 1] = order[j]
            j -= 1
        order[j + 1] = key
    for i in range(n_rows):
        memcpy(dst + i * width, src + order[i] * width, width * sizeof(int64_t))


cdef struct Ctx:
    int64_t* rows
    int64_t* sorted_rows
    int64_t* scratch
    int64_t* scratch2
    int64_t* best_cert
    int64_t* best_labels
    int64_t* labels
    int* order
    uint64_t* tmp
    uint64_t* acc
    int n_rows
    int width
    int n
    bint have_best


cdef void refine(Ctx* ctx, uint64_t* colors) noexcept nogil:
    cdef int n = ctx.n, width = ctx.width
    cdef int classes = count_distinct(colors, n, ctx.tmp)
    cdef int r, j, x, count
    cdef int64_t v
    cdef uint64_t h, c
    cdef int64_t* row
    cdef uint64_t* new = <uint64_t*> malloc(n * sizeof(uint64_t))
    while True:
        for x in range(n):
            ctx.acc[x] = 0
        for r in range(ctx.n_rows):
            row = ctx.rows + r * width
            h = mix(<uint64_t> row[0])
            for j in range(1, width):
                v = row[j]
                if v >= 0:
                    c = colors[v]
                else:
                    c = <uint64_t> v
                h = h + mix(c ^ mix(<uint64_t> j))
            h = mix(h)
            for j in range(1, width):
                v = row[j]
                if v >= 0:
                    ctx.acc[v] = ctx.acc[v] + mix(h ^ (<uint64_t> j * POSMUL))
        for x in range(n):
            new[x] = mix(colors[x] ^ mix(ctx.acc[x]))
        count = count_distinct(new, n, ctx.tmp)
        if count == classes:
            break
        memcpy(colors, new, n * sizeof(uint64_t))
        classes = count
    free(new)


cdef void relabel(Ctx* ctx, int64_t* out, int64_t* labels) noexcept nogil:
    cdef int r, j
    cdef int64_t v
    for r in range(ctx.n_rows):
        for j in range(ctx.width):
            v = ctx.rows[r * ctx.width + j]
            if j == 0 or v < 0:
                out[r * ctx.width + j] = v
            else:
                out[r * ctx.width + j] = labels[v]


cdef bint swap_is_automorphism(Ctx* ctx, int a, int b) noexcept nogil:
    cdef int x
    for x in range(ctx.n):
        ctx.labels[x] = x
    ctx.labels[a] = b
    ctx.labels[b] = a
    relabel(ctx, ctx.scratch, ctx.labels)
    sort_rows(ctx.scratch, ctx.n_rows, ctx.width, ctx.scratch2, ctx.order)
    return memcmp(ctx.scratch2, ctx.sorted_rows, ctx.n_rows * ctx.width * sizeof(int64_t)) == 0


cdef void search(Ctx* ctx, uint64_t* colors) noexcept nogil:
    cdef int n = ctx.n
    cdef int x, y, m, total
    cdef uint64_t target = 0
    cdef bint found = False
    cdef bint twins
    cdef int* cell
    cdef int cell_size = 0
    cdef uint64_t* nxt
    refine(ctx, colors)
    for x in range(n):
        m = 0
        for y in range(n):
            if colors[y] == colors[x]:
                m += 1
        if m > 1 and (not found or colors[x] < target):
            target = colors[x]
            found = True
    if not found:
        for x in range(n):
            m = 0
            for y in range(n):
                if colors[y] < colors[x]:
                    m += 1
            ctx.labels[x] = m
        relabel(ctx, ctx.scratch, ctx.labels)
        sort_rows(ctx.scratch, ctx.n_rows, ctx.width, ctx.scratch2, ctx.order)
        total = ctx.n_rows * ctx.width
        if not ctx.have_best or _flat_less(ctx.scratch2, ctx.best_cert, total):
            memcpy(ctx.best_cert, ctx.scratch2, total * sizeof(int64_t))
            memcpy(ctx.best_labels, ctx.labels, n * sizeof(int64_t))
            ctx.have_best = True
        return
    cell = <int*> malloc(n * sizeof(int))
    for x in range(n):
        if colors[x] == target:
            cell[cell_size] = x
            cell_size += 1
    twins = True
    for y in range(1, cell_size):
        if not swap_is_automorphism(ctx, cell[0], cell[y]):
            twins = False
            break
    if twins:
        cell_size = 1
    nxt = <uint64_t*> malloc(n * sizeof(uint64_t))
    for y in range(cell_size):
        memcpy(nxt, colors, n * sizeof(uint64_t))
        nxt[cell[y]] = mix(colors[cell[y]] ^ INDIV)
        search(ctx, nxt)
    free(nxt)
    free(cell)


cdef inline bint _flat_less(int64_t* a, int64_t* b, int total) noexcept nogil:
    cdef int i
    for i in range(total):
        if a[i] < b[i]:
            return True
        if a[i] > b[i]:
            return False
    return False


def canonical_labels(rows, int n_data):
    if n_data == 0:
        return []
    rows = [tuple(row_) for row_ in rows]
    cdef int n_rows = len(rows)
    cdef int width = len(rows[0]) if rows else 1
    cdef int total = n_rows * width
    cdef int alloc = total if total > 0 else 1
    cdef Ctx ctx
    cdef int r, j, x
    cdef uint64_t* colors
    ctx.n_rows = n_rows
    ctx.width = width
    ctx.n = n_data
    ctx.have_best = False
    ctx.rows = <int64_t*> malloc(alloc * sizeof(int64_t))
    ctx.sorted_rows = <int64_t*> malloc(alloc * sizeof(int64_t))
    ctx.scratch = <int64_t*> malloc(alloc * sizeof(int64_t))
    ctx.scratch2 = <int64_t*> malloc(alloc * sizeof(int64_t))
    ctx.best_cert = <int64_t*> malloc(alloc * sizeof(int64_t))
    ctx.best_labels = <int64_t*> malloc(n_data * sizeof(int64_t))
    ctx.labels = <int64_t*> malloc(n_data * sizeof(int64_t))
    ctx.order = <int*> malloc((n_rows if n_rows > 0 else 1) * sizeof(int))
    ctx.tmp = <uint64_t*> malloc(n_data * sizeof(uint64_t))
    ctx.acc = <uint64_t*> malloc(n_data * sizeof(uint64_t))
    colors = <uint64_t*> malloc(n_data * sizeof(uint64_t))
    try:
        for r in range(n_rows):
            for j in range(width):
                ctx.rows[r * width + j] = rows[r][j]
        sort_rows(ctx.rows, n_rows, width, ctx.sorted_rows, ctx.order)
        for x in range(n_data):
            colors[x] = mix(0)
        with nogil:
            search(&ctx, colors)
        return [ctx.best_labels[x] for x in range(n_data)]
    finally:
        free(ctx.rows)
        free(ctx.sorted_rows)
        free(ctx.scratch)
        free(ctx.scratch2)
        free(ctx.best_cert)
        free(ctx.best_labels)
        free(ctx.labels)
        free(ctx.order)
        free(ctx.tmp)
        free(ctx.acc)
        free(colors)


cdef bint _dfs(uint64_t* masks, int n, int words, int target, int start, int depth,
               uint64_t* used, int* chosen) noexcept nogil:
    cdef int j, w
    cdef bint free_
    cdef uint64_t* cur = used + depth * words
    cdef uint64_t* nxt = used + (depth + 1) * words
    if depth == target:
        return True
    for j in range(start, n):
        if n - j < target - depth:
            break
        free_ = True
        for w in range(words):
            if masks[j * words + w] & cur[w]:
                free_ = False
                break
        if free_:
            for w in range(words):
                nxt[w] = cur[w] | masks[j * words + w]
            chosen[depth] = j
            if _dfs(masks, n, words, target, j + 1, depth + 1, used, chosen):
                return True
    return False


def disjoint_family(items, int target):
    cdef int n = len(items)
    cdef int top = -1
    cdef int words, j, w, v
    cdef bint ok, free_
    for it in items:
        for v in it:
            if v > top:
                top = v
    words = top // 64 + 1
    cdef int levels = (target if target > 0 else 0) + 1
    cdef uint64_t* masks = <uint64_t*> calloc(max(n, 1) * words, sizeof(uint64_t))
    cdef uint64_t* used = <uint64_t*> calloc(levels * words, sizeof(uint64_t))
    cdef int* chosen = <int*> malloc(levels * sizeof(int))
    cdef uint64_t* final
    cdef char* taken = <char*> calloc(max(n, 1), sizeof(char))
    try:
        for j, it in enumerate(items):
            for v in it:
                masks[j * words + v // 64] |= (<uint64_t> 1) << (v % 64)
        if target > 0:
            with nogil:
                ok = _dfs(masks, n, words, target, 0, 0, used, chosen)
            if not ok:
                return None
            final = used + target * words
            for j in range(target):
                taken[chosen[j]] = 1
        else:
            final = used
        for j in range(n):
            if taken[j]:
                continue
            free_ = True
            for w in range(words):
                if masks[j * words + w] & final[w]:
                    free_ = False
                    break
            if free_:
                taken[j] = 1
                for w in range(words):
                    final[w] |= masks[j * words + w]
        return [j for j in range(n) if taken[j]]
    finally:
        free(masks)
        free(used)
        free(chosen)
        free(taken)
