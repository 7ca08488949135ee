"""Exact Turán numbers and shadow-ratio maxima by branch and bound.

The forbidden tree is expanded once into the family of all its copies in the
complete r-graph on n vertices; each copy becomes a bitmask over the colex
ordered edge universe.  A host is then T-free iff no copy mask is a subset of
its edge mask, and adding edge ``e`` can only create copies that use ``e``, so
containment is checked incrementally against the copies through ``e``.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

from .embedding import EmbeddingError, contains, iter_embeddings
from .hypergraph import Edge, Hypergraph, complete, shadow


@dataclass
class SearchResult:
    max_edges: int
    witness: Hypergraph
    nodes_explored: int
    exhaustive: bool

    def to_dict(self) -> dict:
        return {
            "max_edges": self.max_edges,
            "witness": self.witness.to_text(),
            "nodes_explored": self.nodes_explored,
            "exhaustive": self.exhaustive,
        }


@dataclass
class RatioResult:
    best_ratio: Fraction
    witness: Hypergraph
    nodes_explored: int
    exhaustive: bool

    def to_dict(self) -> dict:
        return {
            "best_ratio": [self.best_ratio.numerator, self.best_ratio.denominator],
            "witness": self.witness.to_text(),
            "nodes_explored": self.nodes_explored,
            "exhaustive": self.exhaustive,
        }


def colex_edges(n: int, r: int) -> List[Edge]:
    return sorted(combinations(range(n), r), key=lambda e: e[::-1])


def copy_masks(T: Hypergraph, n: int) -> Tuple[List[Edge], List[int]]:
    """Edge universe in colex order and the distinct copies of ``T`` in ``K_n^r`` as masks."""
    edges = colex_edges(n, T.r)
    index = {e: i for i, e in enumerate(edges)}
    host = complete(n, T.r)
    masks = set()
    for f in iter_embeddings(T, host):
        m = 0
        for e in T.edges:
            m |= 1 << index[tuple(sorted(f[v] for v in e))]
        masks.add(m)
    return edges, sorted(masks)


class _Budget(Exception):
    pass


@dataclass
class _Task:
    pos: int
    included: int
    forbidden: int
    count: int


@dataclass
class _Outcome:
    best: object
    mask: int
    nodes: int
    complete: bool


class _Engine:
    """Include/exclude search over the colex edge order with copy-based forbidding."""

    def __init__(self, T: Hypergraph, n: int):
        if T.r > n:
            raise EmbeddingError("precondition", f"r = {T.r} exceeds n = {n}")
        self.T, self.n, self.r = T, n, T.r
        self.edges, self.copies = copy_masks(T, n)
        self.m = len(self.edges)
        self.full = (1 << self.m) - 1
        self.by_edge: List[List[int]] = [[] for _ in range(self.m)]
        for c in self.copies:
            x = c
            while x:
                low = x & -x
                self.by_edge[low.bit_length() - 1].append(c)
                x ^= low
        # a one-edge copy can never be completed, so its edge is excluded up front
        self.base = 0
        for c in self.copies:
            if c & (c - 1) == 0:
                self.base |= c
        # suffix[p] = mask of edges with index >= p
        self.suffix = [self.full & ~((1 << p) - 1) for p in range(self.m + 1)]

    def hypergraph(self, mask: int) -> Hypergraph:
        return Hypergraph(self.r, self.n, tuple(e for i, e in enumerate(self.edges) if mask >> i & 1))

    def add(self, mask: int, forbidden: int, i: int) -> Tuple[int, int]:
        mask |= 1 << i
        for c in self.by_edge[i]:
            rem = c & ~mask
            if rem & (rem - 1) == 0:
                forbidden |= rem
        return mask, forbidden

    def greedy(self) -> Tuple[int, int]:
        mask, forbidden = 0, self.base
        for i in range(self.m):
            if not forbidden >> i & 1:
                mask, forbidden = self.add(mask, forbidden, i)
        return mask, forbidden

    def packing(self, included: int, avail: int, need: int) -> int:
        """Lower bound on further exclusions: disjoint live copies, stopping once ``need`` is met."""
        live = included | avail
        used = 0
        k = 0
        x = avail
        while x and k < need:
            low = x & -x
            x ^= low
            if used & low:
                continue
            for c in self.by_edge[low.bit_length() - 1]:
                part = c & avail
                if c & ~live == 0 and part & used == 0:
                    used |= part
                    k += 1
                    break
        return k

    # -- maximum edge count

    def split(self, depth: int, seed_first: bool) -> List[_Task]:
        tasks = [_Task(0, 0, self.base, 0)]
        if seed_first and self.m and not self.base:
            # any non-empty T-free host is isomorphic to one containing edge 0
            mask, forb = self.add(0, 0, 0)
            tasks = [_Task(1, mask, forb, 1)]
        for _ in range(depth):
            nxt = []
            for tk in tasks:
                p = tk.pos
                while p < self.m and tk.forbidden >> p & 1:
                    p += 1
                if p >= self.m:
                    nxt.append(_Task(p, tk.included, tk.forbidden, tk.count))
                    continue
                mask, forb = self.add(tk.included, tk.forbidden, p)
                nxt.append(_Task(p + 1, mask, forb, tk.count + 1))
                nxt.append(_Task(p + 1, tk.included, tk.forbidden | (1 << p), tk.count))
            tasks = nxt
        return tasks

    def max_edges(self, task: _Task, floor: int, budget: Optional[int]) -> _Outcome:
        best = [floor, -1]
        nodes = [0]
        suffix = self.suffix

        def rec(p: int, mask: int, forb: int, count: int) -> None:
            nodes[0] += 1
            if budget is not None and nodes[0] > budget:
                raise _Budget
            avail = suffix[p] & ~forb
            opt = count + avail.bit_count()
            if opt <= best[0]:
                return
            if not avail:
                best[0], best[1] = count, mask
                return
            k = self.packing(mask, avail, opt - best[0])
            if opt - k <= best[0]:
                return
            i = (avail & -avail).bit_length() - 1
            m2, f2 = self.add(mask, forb, i)
            rec(i + 1, m2, f2, count + 1)
            rec(i + 1, mask, forb | (1 << i), count)

        try:
            rec(task.pos, task.included, task.forbidden, task.count)
            done = True
        except _Budget:
            done = False
        return _Outcome(best[0], best[1], nodes[0], done)


    # -- maximum shadow ratio

    def shadow_masks(self) -> List[int]:
        index: Dict[Edge, int] = {}
        out: List[int] = []
        for i, e in enumerate(self.edges):
            for D in combinations(e, self.r - 1):
                if D not in index:
                    index[D] = len(out)
                    out.append(0)
                out[index[D]] |= 1 << i
        return out

    def ratio_bound(self, dmasks: Sequence[int], mask: int, avail: int, count: int,
                    sh: int) -> Fraction:
        """Upper bound on e/|shadow| over hosts between ``mask`` and ``mask | avail``.

        ``r e(G)`` is the sum of codegrees over the shadow of ``G``; codegrees are
        capped by ``mask | avail`` and the shadow contains that of ``mask``.
        """
        live = mask | avail
        total = 0
        size = 0
        extra = []
        for dm in dmasks:
            cap = (dm & live).bit_count()
            if not cap:
                continue
            if dm & mask:
                total += cap
                size += 1
            else:
                extra.append(cap)
        extra.sort(reverse=True)
        for cap in extra:
            if size and cap * size <= total:
                break
            total += cap
            size += 1
        if not size:
            return Fraction(0)
        b = Fraction(total, self.r * size)
        if sh:
            b = min(b, Fraction(count + avail.bit_count(), sh))
        return b

    def max_ratio(self, task: _Task, floor: Fraction, budget: Optional[int]) -> _Outcome:
        dmasks = self.shadow_masks()
        best = [floor, -1]
        nodes = [0]
        suffix = self.suffix

        def shadow_size(mask: int) -> int:
            return sum(1 for dm in dmasks if dm & mask)

        def rec(p: int, mask: int, forb: int, count: int) -> None:
            nodes[0] += 1
            if budget is not None and nodes[0] > budget:
                raise _Budget
            sh = shadow_size(mask) if mask else 0
            if count and Fraction(count, sh) > best[0]:
                best[0], best[1] = Fraction(count, sh), mask
            avail = suffix[p] & ~forb
            if not avail:
                return
            if self.ratio_bound(dmasks, mask, avail, count, sh) <= best[0]:
                return
            i = (avail & -avail).bit_length() - 1
            m2, f2 = self.add(mask, forb, i)
            rec(i + 1, m2, f2, count + 1)
            rec(i + 1, mask, forb | (1 << i), count)

        try:
            rec(task.pos, task.included, task.forbidden, task.count)
            done = True
        except _Budget:
            done = False
        return _Outcome(best[0], best[1], nodes[0], done)


def _run_tasks(fn, tasks, workers: int):
    if workers <= 1:
        return [fn(tk) for tk in tasks]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, tasks))


def turan_exact(n: int, T: Hypergraph, budget: Optional[int] = None, workers: int = 1,
                split_depth: int = 3, symmetry: bool = True) -> SearchResult:
    """Maximum edge count of a T-free r-graph on ``n`` vertices.

    ``budget`` caps the number of search nodes per subtree; when it runs out
    the best host found so far is returned with ``exhaustive=False``.
    The subtree split is fixed, so the result does not depend on ``workers``.
    """
    eng = _Engine(T, n)
    if not eng.copies:
        return SearchResult(eng.m, eng.hypergraph(eng.full), 0, True)
    gmask, _ = eng.greedy()
    floor = gmask.bit_count()
    tasks = eng.split(split_depth, symmetry)
    per_task = None if budget is None else max(1, budget // len(tasks))
    outs = _run_tasks(lambda tk: eng.max_edges(tk, floor, per_task), tasks, workers)
    best, mask = floor, gmask
    for o in outs:
        if o.best > best:
            best, mask = o.best, o.mask
    nodes = sum(o.nodes for o in outs) + len(tasks)
    return SearchResult(best, eng.hypergraph(mask), nodes, all(o.complete for o in outs))


def beta_exact(n: int, T: Hypergraph, budget: Optional[int] = None, workers: int = 1,
               split_depth: int = 3, symmetry: bool = True) -> RatioResult:
    """Maximum of ``e(G)/|shadow(G)|`` over non-empty T-free r-graphs on ``n`` vertices.

    Ties keep the host found first in the fixed search order.
    """
    eng = _Engine(T, n)
    if not eng.copies:
        K = eng.hypergraph(eng.full)
        return RatioResult(Fraction(K.num_edges, len(shadow(K))), K, 0, True)
    if eng.base == eng.full:
        raise EmbeddingError("precondition", "every non-empty host contains T; the ratio is undefined")
    gmask, _ = eng.greedy()
    G0 = eng.hypergraph(gmask)
    floor = Fraction(G0.num_edges, len(shadow(G0)))
    tasks = eng.split(split_depth, symmetry)
    per_task = None if budget is None else max(1, budget // len(tasks))
    outs = _run_tasks(lambda tk: eng.max_ratio(tk, floor, per_task), tasks, workers)
    best, mask = floor, gmask
    for o in outs:
        if o.best > best:
            best, mask = o.best, o.mask
    nodes = sum(o.nodes for o in outs) + len(tasks)
    return RatioResult(best, eng.hypergraph(mask), nodes, all(o.complete for o in outs))


def _q(x: Fraction) -> List[int]:
    x = Fraction(x)
    return [x.numerator, x.denominator]


def kalai_bound(T: Hypergraph, n: int) -> Fraction:
    return Fraction(T.num_edges - 1, T.r) * comb(n, T.r - 1)


def verify_kalai(n: int, T: Hypergraph, budget: Optional[int] = None, workers: int = 1) -> dict:
    """Compare the exact Turán number with ``(t-1)/r * C(n, r-1)``."""
    res = turan_exact(n, T, budget=budget, workers=workers)
    bound = kalai_bound(T, n)
    holds = res.max_edges <= bound
    if not holds:
        verdict = "fail"
    elif res.exhaustive:
        verdict = "pass"
    else:
        verdict = "inconclusive"
    return {
        "n": n,
        "r": T.r,
        "t": T.num_edges,
        "ex": res.max_edges,
        "exhaustive": res.exhaustive,
        "bound": _q(bound),
        "slack": _q(bound - res.max_edges),
        "verdict": verdict,
        "nodes_explored": res.nodes_explored,
        "witness": res.witness.to_text(),
    }


def verify_shadow_bound(G: Hypergraph, T: Hypergraph, coefficient) -> dict:
    """Check T-freeness of ``G`` and then ``e(G) <= coefficient * |shadow(G)|``."""
    coefficient = Fraction(coefficient)
    sh = len(shadow(G))
    free = not contains(G, T)
    out = {
        "e": G.num_edges,
        "shadow": sh,
        "coefficient": _q(coefficient),
        "t_free": free,
        "bound": _q(coefficient * sh),
    }
    if not free:
        out["bound_holds"] = None
        out["verdict"] = "not-T-free"
    else:
        holds = G.num_edges <= coefficient * sh
        out["bound_holds"] = holds
        out["slack"] = _q(coefficient * sh - G.num_edges)
        out["verdict"] = "pass" if holds else "fail"
    return out
