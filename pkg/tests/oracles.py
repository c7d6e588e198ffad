"""Brute-force reference implementations used to cross-check the package.

Everything here is written straight from the definitions with itertools and
explicit loops, sharing no code with womkit, so the two sides can disagree.
Only small instances are ever fed through these.
"""

import itertools
from math import comb, floor, prod


def slice_states(q, n, i):
    """All q-ary length-n states of l1 weight exactly i, lex sorted."""
    return sorted(s for s in itertools.product(range(q), repeat=n) if sum(s) == i)


def dominates(y, x):
    return all(a >= b for a, b in zip(y, x))


def is_covering_class(q, n, i, states):
    """Every weight-(i-1) state must be dominated by some member."""
    return all(any(dominates(y, x) for y in states) for x in slice_states(q, n, i - 1))


def is_suitable_partition(q, n, i, classes):
    """Disjoint nonempty covering classes drawn from the weight-i slice."""
    seen = set()
    slice_set = set(slice_states(q, n, i))
    for cls in classes:
        cls = set(map(tuple, cls))
        if not cls or cls & seen or not cls <= slice_set:
            return False
        if not is_covering_class(q, n, i, cls):
            return False
        seen |= cls
    return True


def min_cover_size(q, n, i, limit=None):
    """Smallest covering class, by exhaustive subset search (tiny cases only)."""
    pool = slice_states(q, n, i)
    top = limit if limit is not None else len(pool)
    for k in range(1, top + 1):
        for combo in itertools.combinations(pool, k):
            if is_covering_class(q, n, i, combo):
                return k
    return None


def max_partition_size(q, n, i, kmax=None):
    """Largest suitable-partition cardinality, by exhaustive assignment."""
    pool = slice_states(q, n, i)
    best = 0
    kmax = kmax if kmax is not None else len(pool)

    def extend(idx, classes):
        nonlocal best
        if idx == len(pool):
            if classes and all(is_covering_class(q, n, i, c) for c in classes):
                best = max(best, len(classes))
            return
        state = pool[idx]
        for c in classes:
            c.append(state)
            extend(idx + 1, classes)
            c.pop()
        if len(classes) < kmax:
            classes.append([state])
            extend(idx + 1, classes)
            classes.pop()
        extend(idx + 1, classes)

    extend(0, [])
    return best


def closed_form_bound(n, i):
    """floor(C(n,i) / ceil(C(n,i-1)/i)) for binary slices."""
    return floor(comb(n, i) // -(-comb(n, i - 1) // i))


# --- whole-code property oracles -------------------------------------------


def _images(generations):
    return [set(map(tuple, (s for cls in gen for s in cls))) for gen in generations]


def code_is_valid(generations):
    imgs = _images(generations)
    for gen in generations:
        seen = set()
        for cls in gen:
            cls = set(map(tuple, cls))
            if not cls or cls & seen:
                return False
            seen |= cls
    for i in range(1, len(generations)):
        for b in imgs[i - 1]:
            for cls in generations[i]:
                if not any(dominates(y, b) for y in cls):
                    return False
    return True


def code_is_decodable(generations):
    occurrences = {}
    for gi, gen in enumerate(generations, start=1):
        for mi, cls in enumerate(gen, start=1):
            for s in map(tuple, cls):
                occurrences.setdefault(s, []).append((gi, mi))
    for occ in occurrences.values():
        for ga, ma in occ:
            for gb, mb in occ:
                if ga != gb and ma != mb:
                    return False
    return True


def code_is_synchronous(generations):
    imgs = _images(generations)
    for a in range(len(imgs)):
        for b in range(a + 1, len(imgs)):
            if imgs[a] & imgs[b]:
                return False
    return True


def code_is_laminar(generations):
    weights = [set(sum(s) for s in img) for img in _images(generations)]
    for a in range(len(weights)):
        for b in range(a + 1, len(weights)):
            if weights[a] & weights[b]:
                return False
    return True


def code_rate(n, sizes):
    import math

    return math.log2(prod(sizes)) / n
