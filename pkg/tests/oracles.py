"""Independent brute-force oracles used to derive expected test values.

Everything here deliberately avoids the library's optimized paths: doms come
from literal history-pair flips, full specifications from the literal
settles-every-event definition, posets from enumerating all pair-state
assignments, conditionals from plain Fraction arithmetic. The oracles stay
slow and obvious so the production code has something honest to disagree
with.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations


_pair_cache: dict = {}


def histories_agreeing_everywhere_but(space, s):
    """All unordered history pairs that differ exactly at element s."""
    # the pair structure depends only on the shape of the product space
    key = (space.causet.n, space.q, s)
    cached = _pair_cache.get(key)
    if cached is not None:
        return cached
    pairs = []
    for h1 in range(space.size):
        for h2 in range(h1 + 1, space.size):
            diff = [
                i for i in range(space.causet.n)
                if space._value(h1, i) != space._value(h2, i)
            ]
            if diff == [s]:
                pairs.append((h1, h2))
    _pair_cache[key] = pairs
    return pairs


def brute_dom(space, event):
    """Dependency set by checking every single-element history flip."""
    dom = 0
    for s in range(space.causet.n):
        for h1, h2 in histories_agreeing_everywhere_but(space, s):
            if bool(event >> h1 & 1) != bool(event >> h2 & 1):
                dom |= 1 << s
                break
    return dom


def brute_gamma(space, region):
    """All events whose brute-force dom sits inside the region."""
    assert space.size <= 16
    return [
        e for e in range(space.omega + 1)
        if brute_dom(space, e) & ~region == 0
    ]


def brute_phi(space, region):
    """Literal full-specification filter: nonempty, decidable in the region,
    and inside or outside every event decidable in the region."""
    decidable = brute_gamma(space, region)
    out = []
    for f in decidable:
        if f == 0:
            continue
        if all((f & ~x == 0) or (f & x == 0) for x in decidable):
            out.append(f)
    return out


def brute_decides(space, event, region):
    """Does knowing a history's restriction to the region settle the event?"""
    for h1 in range(space.size):
        for h2 in range(space.size):
            agree = all(
                space._value(h1, i) == space._value(h2, i)
                for i in range(space.causet.n)
                if region >> i & 1
            )
            if agree and bool(event >> h1 & 1) != bool(event >> h2 & 1):
                return False
    return True


# -- posets -------------------------------------------------------------------


def brute_poset_count(n):
    """Number of n-element posets up to isomorphism, by trying all 3^(n(n-1)/2)
    pair states (incomparable, i<j, j<i), keeping the transitive ones and
    deduplicating by minimum over all relabelings."""
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    seen = set()
    for code in range(3 ** len(pairs)):
        rows = [0] * n
        rest = code
        for i, j in pairs:
            state = rest % 3
            rest //= 3
            if state == 1:
                rows[i] |= 1 << j
            elif state == 2:
                rows[j] |= 1 << i
        if _transitive(rows):
            seen.add(_canon_pairs(rows, n))
    return len(seen)


def _transitive(rows):
    for i, row in enumerate(rows):
        rest = row
        while rest:
            low = rest & -rest
            j = low.bit_length() - 1
            rest ^= low
            if rows[j] & ~row:
                return False
    return True


def _canon_pairs(rows, n):
    rel = [
        (i, j) for i in range(n) for j in range(n) if rows[i] >> j & 1
    ]
    best = None
    for perm in permutations(range(n)):
        mapped = tuple(sorted((perm[i], perm[j]) for i, j in rel))
        if best is None or mapped < best:
            best = mapped
    return best


# -- probability ---------------------------------------------------------------


def brute_prob(measure, event):
    return sum(
        (measure.weights[h] for h in range(measure.space.size) if event >> h & 1),
        Fraction(0),
    )


def brute_screens(measure, a, b, c):
    pc = brute_prob(measure, c)
    if pc == 0:
        return True
    return brute_prob(measure, a & b & c) / pc == (
        brute_prob(measure, a & c) / pc
    ) * (brute_prob(measure, b & c) / pc)


def brute_partitions(size):
    """All set partitions of range(size) as lists of bitmasks (recursive,
    independent of the library's restricted-growth enumeration)."""
    if size == 0:
        return [[]]
    out = []

    def rec(h, cells):
        if h == size:
            out.append([c for c in cells])
            return
        for i in range(len(cells)):
            cells[i] |= 1 << h
            rec(h + 1, cells)
            cells[i] &= ~(1 << h)
        cells.append(1 << h)
        rec(h + 1, cells)
        cells.pop()

    rec(0, [])
    return out
