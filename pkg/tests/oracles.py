"""Independent brute-force oracles shared by the test modules."""

from __future__ import annotations

import itertools
from collections import deque

from freefusion.free_product import Letter, Word


def letter_fold(ring, letters) -> dict[Word, int]:
    """Reduce a letter sequence to reduced words by fusing any adjacent same-factor pair."""
    letters = list(letters)
    for i in range(len(letters) - 1):
        a, b = letters[i], letters[i + 1]
        if a.factor == b.factor:
            factor_ring = ring.ring(a.factor)
            out: dict[Word, int] = {}
            for c, n in factor_ring.fuse(a.label, b.label).items():
                mid = [] if c == factor_ring.unit else [Letter(a.factor, c)]
                for w, k in letter_fold(ring, letters[:i] + mid + letters[i + 2 :]).items():
                    out[w] = out.get(w, 0) + n * k
            return out
    return {Word(letters): 1}


def fold_product(ring, x: Word, y: Word) -> dict[Word, int]:
    return letter_fold(ring, list(x) + list(y))


def fold_tensor(ring, words) -> dict[Word, int]:
    acc = {Word(): 1}
    for w in words:
        nxt: dict[Word, int] = {}
        for u, cu in acc.items():
            for v, cv in fold_product(ring, u, w).items():
                nxt[v] = nxt.get(v, 0) + cu * cv
        acc = nxt
    return acc


def words_upto(max_len: int, spins=(1, 2), factors=(1, 2)):
    """Every reduced word of length <= max_len over su2 factors with the given spins."""
    out = [Word()]
    frontier = [()]
    for _ in range(max_len):
        nxt = []
        for w in frontier:
            for f in factors:
                if w and w[-1].factor == f:
                    continue
                for s in spins:
                    nxt.append(w + (Letter(f, s),))
        out.extend(Word(w) for w in nxt)
        frontier = nxt
    return out


# -- polygons -------------------------------------------------------------------------


def brute_triangulations(n: int) -> set[frozenset]:
    """All maximal sets of pairwise non-crossing diagonals, by subset search."""
    diags = [(i, j) for i in range(n) for j in range(i + 2, n) if not (i == 0 and j == n - 1)]

    def cross(d, e):
        (a, b), (c, f) = d, e
        return a < c < b < f or c < a < f < b

    found = set()
    for combo in itertools.combinations(diags, n - 3):
        if all(not cross(d, e) for d, e in itertools.combinations(combo, 2)):
            found.add(frozenset(combo))
    return found


def catalan(k: int) -> int:
    from math import comb

    return comb(2 * k, k) // (k + 1)


def bfs_decreasing_distance(start, target, v, flips_fn, length_fn):
    """Shortest flip path start -> target using only strictly length-decreasing steps."""
    prev = {start: None}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        if cur == target:
            path = []
            while cur is not None:
                path.append(cur)
                cur = prev[cur]
            return path[::-1]
        for nb in flips_fn(cur):
            if nb not in prev and length_fn(nb, v) < length_fn(cur, v):
                prev[nb] = cur
                queue.append(nb)
    return None


# -- diagrams ---------------------------------------------------------------------------


def perfect_matchings(points):
    points = list(points)
    if not points:
        yield ()
        return
    first, rest = points[0], points[1:]
    for i, q in enumerate(rest):
        for tail in perfect_matchings(rest[:i] + rest[i + 1 :]):
            yield ((first, q),) + tail
