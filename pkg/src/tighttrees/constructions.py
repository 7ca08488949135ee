"""Extremal and near-extremal host families.

Generators return :class:`~tighttrees.hypergraph.Hypergraph` values; the
packing generator also returns the placed vertex sets so that its shadow
disjointness can be audited.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .hypergraph import Hypergraph, HypergraphError, complete, shadow


def complete_hypergraph(n: int, r: int) -> Hypergraph:
    if r < 1 or n < r:
        raise HypergraphError(f"need n >= r >= 1, got n={n}, r={r}")
    return complete(n, r)


def ekr_family(n: int, r: int) -> Hypergraph:
    """All r-sets through vertex 0."""
    if r < 1 or n < r:
        raise HypergraphError(f"need n >= r >= 1, got n={n}, r={r}")
    return Hypergraph(r, n, tuple((0,) + rest for rest in combinations(range(1, n), r - 1)))


Tournament = Tuple[int, Tuple[Tuple[int, int], ...]]


def check_tournament(k: int, arcs: Iterable[Tuple[int, int]]) -> Tuple[Tuple[int, int], ...]:
    arcs = tuple((int(i), int(j)) for i, j in arcs)
    pairs = set()
    for i, j in arcs:
        if not (0 <= i < k and 0 <= j < k) or i == j:
            raise HypergraphError(f"arc {i}->{j} is not between distinct vertices of 0..{k - 1}")
        p = (min(i, j), max(i, j))
        if p in pairs:
            raise HypergraphError(f"pair {p} carries more than one arc")
        pairs.add(p)
    if len(pairs) != k * (k - 1) // 2:
        raise HypergraphError("not every pair carries an arc")
    return arcs


def cyclic_tournament(k: int) -> Tuple[Tuple[int, int], ...]:
    """The rotational tournament on ``k`` vertices, regular for odd ``k``."""
    arcs = []
    for i, j in combinations(range(k), 2):
        d = (j - i) % k
        arcs.append((i, j) if d <= (k - 1) // 2 else (j, i))
    return tuple(arcs)


def tournament_family(n: int, arcs: Iterable[Tuple[int, int]]) -> Hypergraph:
    """Triples with two vertices in block ``i`` and one in block ``j`` for an arc ``i -> j``.

    Block ``k`` is ``{3k, 3k+1, 3k+2}``.
    """
    if n % 3:
        raise HypergraphError(f"n = {n} is not divisible by 3")
    k = n // 3
    arcs = check_tournament(k, arcs)
    edges = []
    for i, j in arcs:
        for a, b in combinations(range(3 * i, 3 * i + 3), 2):
            for c in range(3 * j, 3 * j + 3):
                edges.append((a, b, c))
    return Hypergraph(3, n, tuple(edges))


def sink_blocks(k: int, arcs: Iterable[Tuple[int, int]]) -> List[int]:
    """Tournament vertices with out-degree 0; their blocks' internal pairs are not covered."""
    out = {i for i, _ in arcs}
    return [v for v in range(k) if v not in out]


def disjoint_cliques(n: int, t: int) -> Hypergraph:
    """``n/t`` vertex-disjoint copies of ``K_t`` (a graph)."""
    if t < 1 or n % t:
        raise HypergraphError(f"t = {t} does not divide n = {n}")
    edges = [e for b in range(0, n, t) for e in combinations(range(b, b + t), 2)]
    return Hypergraph(2, n, tuple(edges))


def format_tournament(k: int, arcs: Sequence[Tuple[int, int]]) -> str:
    return "\n".join([str(k)] + [f"{i} {j}" for i, j in arcs]) + "\n"


def parse_tournament(text: str) -> Tuple[int, Tuple[Tuple[int, int], ...]]:
    from .hypergraph import ParseError

    k = None
    arcs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        try:
            vals = [int(x) for x in toks]
        except ValueError:
            raise ParseError("expected integers", lineno) from None
        if k is None:
            if len(vals) != 1 or vals[0] < 1:
                raise ParseError("first line must be the vertex count", lineno)
            k = vals[0]
            continue
        if len(vals) != 2:
            raise ParseError("arc lines are 'i j'", lineno)
        arcs.append((vals[0], vals[1]))
    if k is None:
        raise ParseError("missing vertex count", 1)
    return k, check_tournament(k, arcs)


@dataclass
class PackingResult:
    vertex_sets: List[Tuple[int, ...]] = field(default_factory=list)
    copies: List[Hypergraph] = field(default_factory=list)
    union: Optional[Hypergraph] = None

    @property
    def m(self) -> int:
        return len(self.vertex_sets)

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "vertex_sets": [list(s) for s in self.vertex_sets],
            "union": self.union.to_text() if self.union is not None else None,
        }


def _placement(G: Hypergraph, target: Sequence[int]) -> Hypergraph:
    src = G.vertices
    f = dict(zip(src, target))
    return Hypergraph(G.r, max(target) + 1, tuple(tuple(f[v] for v in e) for e in G.edges))


def _compatible(a: Sequence[int], b: Sequence[int], sh_a: FrozenSet, sh_b: FrozenSet, r: int) -> bool:
    common = set(a) & set(b)
    if len(common) < r - 1:
        return True
    if len(common) == r - 1:
        D = tuple(sorted(common))
        return D not in sh_a and D not in sh_b
    return False


def shadow_disjoint_packing(G: Hypergraph, n: int, budget: Optional[int] = None,
                            candidates: Optional[Iterable[Sequence[int]]] = None) -> PackingResult:
    """First-fit packing of copies of ``G`` on ``n`` vertices with pairwise disjoint shadows.

    Candidate vertex sets are scanned in lexicographic order unless given
    explicitly; ``budget`` caps the number of candidates examined.  The
    non-isolated vertices of ``G`` are mapped in increasing order.
    """
    v = len(G.vertices)
    r = G.r
    out = PackingResult()
    if v == 0 or n < v:
        out.union = Hypergraph(r, max(n, 0), ())
        return out
    if candidates is None:
        candidates = combinations(range(n), v)
    placed_sh: List[FrozenSet] = []
    for k, cand in enumerate(candidates):
        if budget is not None and k >= budget:
            break
        cand = tuple(cand)
        H = _placement(G, cand)
        sh = shadow(H)
        if all(_compatible(cand, s, sh, psh, r) for s, psh in zip(out.vertex_sets, placed_sh)):
            out.vertex_sets.append(cand)
            out.copies.append(Hypergraph(r, n, H.edges))
            placed_sh.append(sh)
    out.union = Hypergraph(r, n, tuple(e for H in out.copies for e in H.edges))
    return out


def grid_lines(k: int) -> List[Tuple[int, ...]]:
    """Rows then columns of a ``k x k`` grid on ``0..k*k-1``; two lines share at most one point."""
    rows = [tuple(range(i * k, i * k + k)) for i in range(k)]
    cols = [tuple(range(j, k * k, k)) for j in range(k)]
    return rows + cols
