"""Brute-force oracles that share no code with the search engine."""
from fractions import Fraction
from itertools import combinations, permutations

import numpy as np


def copies_as_masks(T, n):
    """All copies of T in K_n^r as bitmasks over lexicographically ordered r-sets."""
    universe = list(combinations(range(n), T.r))
    index = {e: i for i, e in enumerate(universe)}
    vt = T.vertices
    masks = set()
    for img in permutations(range(n), len(vt)):
        f = dict(zip(vt, img))
        m = 0
        for e in T.edges:
            m |= 1 << index[tuple(sorted(f[v] for v in e))]
        masks.add(m)
    return universe, sorted(masks)


def _all_subsets(m):
    return np.arange(1 << m, dtype=np.uint32)


def _popcount(x):
    x = x.astype(np.uint32)
    c = np.zeros_like(x, dtype=np.uint8)
    for b in range(32):
        c += ((x >> np.uint32(b)) & np.uint32(1)).astype(np.uint8)
    return c


def free_subsets(T, n):
    universe, masks = copies_as_masks(T, n)
    s = _all_subsets(len(universe))
    free = np.ones(s.shape, dtype=bool)
    for m in masks:
        mm = np.uint32(m)
        free &= (s & mm) != mm
    return universe, s, free


def brute_turan(T, n):
    """Plain scan of every edge subset of K_n^r (n=6, r=3 gives 2^20 subsets)."""
    universe, s, free = free_subsets(T, n)
    return int(_popcount(s[free]).max())


def brute_beta(T, n):
    universe, s, free = free_subsets(T, n)
    s = s[free]
    s = s[s != 0]
    edges = _popcount(s).astype(np.int64)
    shadow = np.zeros(s.shape, dtype=np.int64)
    for D in combinations(range(n), T.r - 1):
        m = 0
        for i, e in enumerate(universe):
            if set(D) <= set(e):
                m |= 1 << i
        shadow += ((s & np.uint32(m)) != 0)
    return max(Fraction(int(a), int(b)) for a, b in set(zip(edges.tolist(), shadow.tolist())))
