# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled search kernels.

Cython translation of ``_pure``; see that module for the algorithm
documentation.  Both engines must traverse identical trees with identical
node counts, so every ordering, pruning rule, and budget check here mirrors
the reference line for line.  The only representational difference is that
bitmasks live in fixed-stride arrays of 64-bit words instead of Python
ints; masks are assumed to stay within the declared universe.

The greedy seed is delegated to ``_pure.greedy_cover`` so the incumbent
both engines start from has a single definition.  It runs once per call
and is never the hot path.
"""

from cpython.mem cimport PyMem_Malloc, PyMem_Free

from . import _pure

__all__ = ["min_cover", "partition_search"]

cdef extern from *:
    """
    #if defined(__GNUC__) || defined(__clang__)
    static inline unsigned long long womkit_pc(unsigned long long x)
    { return (unsigned long long)__builtin_popcountll(x); }
    static inline int womkit_ctz(unsigned long long x)
    { return __builtin_ctzll(x); }
    #else
    static inline unsigned long long womkit_pc(unsigned long long x)
    {
        x = x - ((x >> 1) & 0x5555555555555555ULL);
        x = (x & 0x3333333333333333ULL) + ((x >> 2) & 0x3333333333333333ULL);
        x = (x + (x >> 4)) & 0x0F0F0F0F0F0F0F0FULL;
        return (x * 0x0101010101010101ULL) >> 56;
    }
    static inline int womkit_ctz(unsigned long long x)
    { int c = 0; while (!(x & 1ULL)) { x >>= 1; ++c; } return c; }
    #endif
    """
    unsigned long long womkit_pc(unsigned long long x) nogil
    int womkit_ctz(unsigned long long x) nogil

ctypedef unsigned long long u64

cdef object _MASK64 = (1 << 64) - 1


cdef int _word_count(int universe_size):
    if universe_size <= 0:
        return 1
    return (universe_size + 63) >> 6


cdef void _int_to_words(object value, u64 *dst, int width):
    cdef int w
    for w in range(width):
        dst[w] = value & _MASK64
        value = value >> 64


cdef void _fill_full(u64 *dst, int universe_size, int width):
    # (1 << universe_size) - 1, built wordwise: a single C shift would be
    # undefined once universe_size reaches the word width.
    cdef int w
    cdef int rem = universe_size & 63
    for w in range(width):
        dst[w] = 0
    for w in range(universe_size >> 6):
        dst[w] = <u64>0xFFFFFFFFFFFFFFFF
    if rem:
        dst[universe_size >> 6] = ((<u64>1) << rem) - 1


cdef void *_alloc(size_t nbytes) except NULL:
    cdef void *p = PyMem_Malloc(nbytes if nbytes > 0 else 1)
    if p == NULL:
        raise MemoryError()
    return p


# --- minimum cover -----------------------------------------------------------

ctypedef struct MC:
    int V
    int W
    u64 *masks       # V rows of W words
    u64 *full        # W words
    u64 *cov         # per-depth coverage rows, (V + 2) * W
    u64 *unc         # per-depth uncovered rows, (V + 2) * W
    int *cand_off    # universe_size + 1
    int *cand_val
    unsigned char *excluded
    int *chosen      # depth-indexed candidate stack
    int *order       # per-depth candidate ordering, (V + 2) * V
    int *gain
    int *best
    int best_size
    int lb
    long long nodes
    long long budget
    bint exhausted
    bint solved


cdef void _mc_expand(MC *s, int depth) noexcept nogil:
    cdef int W = s.W
    cdef int V = s.V
    cdef u64 *cov = s.cov + depth * W
    cdef u64 *unc = s.unc + depth * W
    cdef u64 *m
    cdef u64 *child
    cdef u64 word
    cdef long long uncount, g
    cdef int w, v, u, a, b, idx
    cdef int live_gain, pick, pick_count, count, mcount, tried_n
    cdef bint covered_all = True

    for w in range(W):
        if cov[w] != s.full[w]:
            covered_all = False
            break
    if covered_all:
        if depth < s.best_size:
            s.best_size = depth
            for v in range(depth):
                s.best[v] = s.chosen[v]
            if s.best_size == s.lb:
                s.solved = True
        return

    uncount = 0
    for w in range(W):
        unc[w] = s.full[w] & ~cov[w]
        uncount += <long long>womkit_pc(unc[w])

    live_gain = 0
    for v in range(V):
        if not s.excluded[v]:
            m = s.masks + v * W
            g = 0
            for w in range(W):
                g += <long long>womkit_pc(m[w] & unc[w])
            if g > live_gain:
                live_gain = <int>g
    if live_gain == 0:
        return
    if depth + <int>((uncount + live_gain - 1) // live_gain) >= s.best_size:
        return

    pick = -1
    pick_count = 0
    for w in range(W):
        word = unc[w]
        while word != 0:
            u = (w << 6) + womkit_ctz(word)
            word &= word - 1
            count = 0
            for a in range(s.cand_off[u], s.cand_off[u + 1]):
                if not s.excluded[s.cand_val[a]]:
                    count += 1
            if count == 0:
                return
            if pick < 0 or count < pick_count:
                pick = u
                pick_count = count

    # Insertion sort on the total key (gain descending, index ascending)
    # reproduces the reference ordering whatever the candidate list order.
    cdef int *order = s.order + depth * V
    cdef int *gain = s.gain + depth * V
    mcount = 0
    for a in range(s.cand_off[pick], s.cand_off[pick + 1]):
        v = s.cand_val[a]
        if s.excluded[v]:
            continue
        m = s.masks + v * W
        g = 0
        for w in range(W):
            g += <long long>womkit_pc(m[w] & unc[w])
        b = mcount
        while b > 0 and (gain[b - 1] < g or (gain[b - 1] == g and order[b - 1] > v)):
            order[b] = order[b - 1]
            gain[b] = gain[b - 1]
            b -= 1
        order[b] = v
        gain[b] = <int>g
        mcount += 1

    tried_n = 0
    for idx in range(mcount):
        v = order[idx]
        s.nodes += 1
        if s.nodes > s.budget:
            s.exhausted = True
            break
        s.chosen[depth] = v
        m = s.masks + v * W
        child = s.cov + (depth + 1) * W
        for w in range(W):
            child[w] = cov[w] | m[w]
        _mc_expand(s, depth + 1)
        if s.solved or s.exhausted:
            break
        s.excluded[v] = 1
        tried_n += 1
    for idx in range(tried_n):
        s.excluded[order[idx]] = 0


def min_cover(
    masks,
    universe_size,
    element_candidates,
    budget,
    root_groups=None,
    known_lb=0,
):
    """Compiled twin of ``_pure.min_cover``; same contract, same tree."""
    cdef int V = len(masks)
    cdef int U = universe_size
    cdef int W = _word_count(U)
    cdef MC s
    cdef int v, w, a, u, rep, gi, total
    cdef long long g, max_gain
    cdef u64 *row
    cdef bint proven

    if U == 0:
        return 0, 0, [], True, 0
    seed = _pure.greedy_cover(masks, universe_size)
    if seed is None:
        return 0, 0, None, True, 0

    s.V = V
    s.W = W
    s.nodes = 0
    s.budget = budget
    s.exhausted = False
    s.solved = False
    s.masks = NULL
    s.full = NULL
    s.cov = NULL
    s.unc = NULL
    s.cand_off = NULL
    s.cand_val = NULL
    s.excluded = NULL
    s.chosen = NULL
    s.order = NULL
    s.gain = NULL
    s.best = NULL

    groups = None
    if root_groups:
        groups = sorted(
            (sorted(gr) for gr in root_groups),
            key=lambda gr: (-masks[gr[0]].bit_count(), gr[0]),
        )

    try:
        s.masks = <u64 *>_alloc(V * W * sizeof(u64))
        s.full = <u64 *>_alloc(W * sizeof(u64))
        s.cov = <u64 *>_alloc((V + 2) * W * sizeof(u64))
        s.unc = <u64 *>_alloc((V + 2) * W * sizeof(u64))
        s.cand_off = <int *>_alloc((U + 1) * sizeof(int))
        s.excluded = <unsigned char *>_alloc(V)
        s.chosen = <int *>_alloc((V + 1) * sizeof(int))
        s.order = <int *>_alloc((V + 2) * V * sizeof(int))
        s.gain = <int *>_alloc((V + 2) * V * sizeof(int))
        s.best = <int *>_alloc((V + 1) * sizeof(int))

        for v in range(V):
            _int_to_words(masks[v], s.masks + v * W, W)
        _fill_full(s.full, U, W)

        total = 0
        for u in range(U):
            s.cand_off[u] = total
            total += len(element_candidates[u])
        s.cand_off[U] = total
        s.cand_val = <int *>_alloc(total * sizeof(int))
        total = 0
        for u in range(U):
            for cand in element_candidates[u]:
                s.cand_val[total] = cand
                total += 1

        for v in range(V):
            s.excluded[v] = 0

        s.best_size = len(seed)
        for v in range(s.best_size):
            s.best[v] = seed[v]

        max_gain = 0
        for v in range(V):
            row = s.masks + v * W
            g = 0
            for w in range(W):
                g += <long long>womkit_pc(row[w])
            if g > max_gain:
                max_gain = g
        s.lb = <int>((U + max_gain - 1) // max_gain)
        if known_lb > s.lb:
            s.lb = known_lb
        if s.best_size == s.lb:
            return s.best_size, s.best_size, list(seed), True, 0

        if groups is not None:
            for group in groups:
                rep = group[0]
                s.nodes += 1
                if s.nodes > s.budget:
                    s.exhausted = True
                    break
                s.chosen[0] = rep
                row = s.masks + rep * W
                for w in range(W):
                    s.cov[W + w] = row[w]
                _mc_expand(&s, 1)
                if s.solved or s.exhausted:
                    break
                for member in group:
                    s.excluded[<int>member] = 1
        else:
            for w in range(W):
                s.cov[w] = 0
            _mc_expand(&s, 0)

        proven = s.solved or not s.exhausted
        best_cover = [s.best[v] for v in range(s.best_size)]
        out_lb = s.best_size if proven else s.lb
        return out_lb, s.best_size, best_cover, proven, int(s.nodes)
    finally:
        PyMem_Free(s.masks)
        PyMem_Free(s.full)
        PyMem_Free(s.cov)
        PyMem_Free(s.unc)
        PyMem_Free(s.cand_off)
        PyMem_Free(s.cand_val)
        PyMem_Free(s.excluded)
        PyMem_Free(s.chosen)
        PyMem_Free(s.order)
        PyMem_Free(s.gain)
        PyMem_Free(s.best)


# --- partition search --------------------------------------------------------

ctypedef struct PS:
    int V
    int W
    int k
    u64 *dom         # V rows of W words
    u64 *full
    u64 *suffix      # (V + 1) rows
    u64 *cls         # k rows
    u64 *saved       # per-depth snapshot of one class row
    int *assign
    int *sol
    long long nodes
    long long budget
    bint exhausted
    bint found


cdef void _ps_place(PS *s, int v, int opened) noexcept nogil:
    cdef int W = s.W
    cdef int c, w, i
    cdef u64 *suf
    cdef u64 *m
    cdef u64 *cm
    cdef u64 *sv

    if opened + (s.V - v) < s.k:
        return
    suf = s.suffix + v * W
    for c in range(opened):
        cm = s.cls + c * W
        for w in range(W):
            if (cm[w] | suf[w]) & s.full[w] != s.full[w]:
                return
    if v == s.V:
        if opened == s.k:
            for i in range(s.V):
                s.sol[i] = s.assign[i]
            s.found = True
        return

    m = s.dom + v * W
    sv = s.saved + v * W
    for c in range(opened):
        s.nodes += 1
        if s.nodes > s.budget:
            s.exhausted = True
            return
        cm = s.cls + c * W
        for w in range(W):
            sv[w] = cm[w]
            cm[w] = cm[w] | m[w]
        s.assign[v] = c
        _ps_place(s, v + 1, opened)
        cm = s.cls + c * W
        for w in range(W):
            cm[w] = sv[w]
        s.assign[v] = -1
        if s.found or s.exhausted:
            return
    if opened < s.k:
        s.nodes += 1
        if s.nodes > s.budget:
            s.exhausted = True
            return
        cm = s.cls + opened * W
        for w in range(W):
            cm[w] = m[w]
        s.assign[v] = opened
        _ps_place(s, v + 1, opened + 1)
        cm = s.cls + opened * W
        for w in range(W):
            cm[w] = 0
        s.assign[v] = -1
        if s.found or s.exhausted:
            return
    s.nodes += 1
    if s.nodes > s.budget:
        s.exhausted = True
        return
    _ps_place(s, v + 1, opened)


def partition_search(dom_masks, universe_size, k, budget):
    """Compiled twin of ``_pure.partition_search``; same contract, same tree."""
    cdef int V = len(dom_masks)
    cdef int U = universe_size
    cdef int W = _word_count(U)
    cdef PS s
    cdef int v, w, kk
    cdef bint feasible, proven

    if k < 1:
        raise ValueError("k must be at least 1")
    kk = k

    s.V = V
    s.W = W
    s.k = kk
    s.nodes = 0
    s.budget = budget
    s.exhausted = False
    s.found = False
    s.dom = NULL
    s.full = NULL
    s.suffix = NULL
    s.cls = NULL
    s.saved = NULL
    s.assign = NULL
    s.sol = NULL

    try:
        s.dom = <u64 *>_alloc(V * W * sizeof(u64))
        s.full = <u64 *>_alloc(W * sizeof(u64))
        s.suffix = <u64 *>_alloc((V + 1) * W * sizeof(u64))
        s.cls = <u64 *>_alloc(kk * W * sizeof(u64))
        s.saved = <u64 *>_alloc(V * W * sizeof(u64))
        s.assign = <int *>_alloc(V * sizeof(int))
        s.sol = <int *>_alloc(V * sizeof(int))

        for v in range(V):
            _int_to_words(dom_masks[v], s.dom + v * W, W)
        _fill_full(s.full, U, W)

        for w in range(W):
            s.suffix[V * W + w] = 0
        for v in range(V - 1, -1, -1):
            for w in range(W):
                s.suffix[v * W + w] = s.suffix[(v + 1) * W + w] | s.dom[v * W + w]
        feasible = True
        for w in range(W):
            if s.suffix[w] & s.full[w] != s.full[w]:
                feasible = False
                break
        if not feasible:
            return False, None, True, 0

        for v in range(V):
            s.assign[v] = -1
        for w in range(kk * W):
            s.cls[w] = 0

        _ps_place(&s, 0, 0)

        solution = None
        if s.found:
            solution = [s.sol[v] for v in range(V)]
        proven = s.found or not s.exhausted
        return s.found, solution, proven, int(s.nodes)
    finally:
        PyMem_Free(s.dom)
        PyMem_Free(s.full)
        PyMem_Free(s.suffix)
        PyMem_Free(s.cls)
        PyMem_Free(s.saved)
        PyMem_Free(s.assign)
        PyMem_Free(s.sol)
