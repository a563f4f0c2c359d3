"""Independent brute-force oracles.

Nothing here imports the search or analyzer code paths under test; the
incidence checks work on plain lists of point tuples with numpy.
"""

from __future__ import annotations

from functools import lru_cache, reduce
from itertools import combinations, permutations
from operator import or_

import numpy as np

FANO = [(1, 2, 3), (1, 4, 5), (1, 6, 7), (2, 4, 6), (2, 5, 7), (3, 4, 7), (3, 5, 6)]


def incidence(v, blocks):
    mat = np.zeros((len(blocks), v), dtype=np.int64)
    for i, b in enumerate(blocks):
        for x in b:
            mat[i, x - 1] = 1
    return mat


def is_symmetric_design(v, k, lam, blocks) -> bool:
    """Gram-matrix test: N N^T = N^T N = (k - lam) I + lam J with v blocks of size k."""
    if len(blocks) != v or any(len(set(b)) != k or len(b) != k for b in blocks):
        return False
    if any(not 1 <= x <= v for b in blocks for x in b):
        return False
    n = incidence(v, blocks)
    target = (k - lam) * np.eye(v, dtype=np.int64) + lam * np.ones((v, v), dtype=np.int64)
    return bool(np.array_equal(n @ n.T, target) and np.array_equal(n.T @ n, target))


def maps_blocks(blocks, images) -> bool:
    """images: 1-based list, images[x-1] is the image of x."""
    bs = {frozenset(b) for b in blocks}
    return all(frozenset(images[x - 1] for x in b) in bs for b in blocks)


def brute_force_automorphisms(v, blocks) -> list[tuple[int, ...]]:
    return [perm for perm in permutations(range(1, v + 1)) if maps_blocks(blocks, perm)]


@lru_cache(maxsize=None)
def brute_force_fano_planes() -> frozenset[frozenset]:
    """All labelled (7,3,1) designs by scanning every 7-subset of the 35 triples."""
    pairs = {p: i for i, p in enumerate(combinations(range(1, 8), 2))}
    triples = list(combinations(range(1, 8), 3))
    masks = [sum(1 << pairs[p] for p in combinations(t, 2)) for t in triples]
    full = (1 << 21) - 1
    out = set()
    for idx in combinations(range(35), 7):
        if reduce(or_, (masks[i] for i in idx)) == full:
            blocks = [triples[i] for i in idx]
            assert is_symmetric_design(7, 3, 1, blocks)
            out.add(frozenset(blocks))
    return frozenset(out)


def difference_sets_brute(v, k, lam) -> list[tuple[int, ...]]:
    out = []
    for s in combinations(range(v), k):
        diffs = [(a - b) % v for a in s for b in s if a != b]
        if all(diffs.count(r) == lam for r in range(1, v)):
            out.append(s)
    return out


def develop_brute(s, v) -> frozenset:
    return frozenset(tuple(sorted((x + i) % v + 1 for x in s)) for i in range(v))


def perm_order_brute(images) -> int:
    ident = list(range(1, len(images) + 1))
    cur = list(images)
    n = 1
    while cur != ident:
        cur = [images[x - 1] for x in cur]
        n += 1
    return n
