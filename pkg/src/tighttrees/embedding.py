"""Embedding machinery: a containment oracle, the colour-preserving greedy, and
the two constructive embedding procedures for trees of bounded trunk and trees
with at most four edges.

Every density comparison is done with :class:`fractions.Fraction`; nothing in
the decision logic touches floating point.
"""
from __future__ import annotations

import math
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .hypergraph import (
    Edge,
    Hypergraph,
    HypergraphError,
    default_weights,
    link,
    min_p_degree,
    shadow,
)
from .trees import (
    RPartition,
    TightTreeCert,
    TrunkCert,
    check_certificate,
    find_isomorphism,
    is_proper_coloring,
    r_partition,
    tight_order,
)

Embedding = Dict[int, int]


class EmbeddingError(HypergraphError):
    """Precondition failure of an embedding operation; ``code`` names the violated contract."""

    def __init__(self, code: str, message: str):
        super().__init__(f"{code}: {message}")
        self.code = code


class BelowThreshold(EmbeddingError):
    def __init__(self, message: str):
        super().__init__("below-threshold", message)


class InvariantViolation(EmbeddingError):
    """A proof step failed although its preconditions held; carries the partial trace."""

    def __init__(self, message: str, trace: Optional["EmbedTrace"] = None):
        super().__init__("invariant-violation", message)
        self.trace = trace


def is_embedding(f: Embedding, T: Hypergraph, G: Hypergraph) -> bool:
    """Injective on the non-isolated vertices of ``T`` and edge-preserving."""
    verts = T.vertices
    if any(v not in f for v in verts):
        return False
    images = [f[v] for v in verts]
    if len(set(images)) != len(images):
        return False
    return all(tuple(sorted(f[v] for v in e)) in G.edge_set for e in T.edges)


# ---------------------------------------------------------------------------
# containment oracle


def _vertex_plan(T: Hypergraph, first: Optional[Edge] = None) -> List[int]:
    """Order vertices so each (after the first edge) shares an edge with earlier ones."""
    cert = tight_order(T) if first is None and T.edges else None
    if cert is not None:
        plan = list(cert.edge_order[0]) + [v for v in cert.new_vertex[1:]]
        return plan
    plan: List[int] = list(first) if first is not None else []
    placed = set(plan)
    remaining = list(T.vertices)
    while len(plan) < len(remaining):
        best = None
        for e in T.edges:
            k = sum(1 for v in e if v in placed)
            if k == len(e):
                continue
            if best is None or k > best[0]:
                best = (k, e)
        if best is None:
            break
        v = next(v for v in best[1] if v not in placed)
        plan.append(v)
        placed.add(v)
    return plan


def iter_embeddings(T: Hypergraph, G: Hypergraph, through: Optional[Sequence[int]] = None
                    ) -> Iterator[Embedding]:
    """All embeddings of ``T`` into ``G`` in a fixed deterministic order.

    With ``through`` given, only embeddings whose image contains that edge of ``G``.
    """
    if T.r != G.r:
        raise EmbeddingError("uniformity-mismatch", f"T is {T.r}-uniform, G is {G.r}-uniform")
    if not T.edges:
        yield {}
        return
    if len(T.vertices) > len(G.vertices) or len(T.edges) > len(G.edges):
        return
    r = T.r
    gset = G.edge_set
    co: Dict[Edge, List[int]] = {}
    for e in G.edges:
        for x in e:
            co.setdefault(tuple(v for v in e if v != x), []).append(x)

    def run(plan: List[int], seed: Optional[Tuple[Edge, Edge]]) -> Iterator[Embedding]:
        pos = {v: k for k, v in enumerate(plan)}
        closing: List[List[Edge]] = [[] for _ in plan]
        anchor: List[Optional[Edge]] = [None] * len(plan)
        for e in T.edges:
            last = max(pos[v] for v in e)
            closing[last].append(e)
            if anchor[last] is None:
                anchor[last] = e
        f: Embedding = {}
        used: set = set()
        start = 0
        if seed is not None:
            te, ge = seed
            for u, x in zip(te, ge):
                f[u] = x
            used.update(ge)
            start = r

        def rec(k: int) -> Iterator[Embedding]:
            if k == len(plan):
                yield dict(f)
                return
            u = plan[k]
            a = anchor[k]
            if a is not None:
                D = tuple(sorted(f[w] for w in a if w != u))
                cands = co.get(D, ())
            else:
                cands = G.vertices
            for x in cands:
                if x in used:
                    continue
                f[u] = x
                if all(tuple(sorted(f[w] for w in e)) in gset for e in closing[k]):
                    used.add(x)
                    yield from rec(k + 1)
                    used.discard(x)
                del f[u]

        if seed is not None:
            if all(tuple(sorted(f[w] for w in e)) in gset for k in range(r) for e in closing[k]):
                yield from rec(start)
        else:
            yield from rec(0)

    if through is None:
        yield from run(_vertex_plan(T), None)
        return
    ge = tuple(sorted(through))
    if ge not in gset:
        return
    for te in T.edges:
        plan = _vertex_plan(T, first=te)
        for img in permutations(ge):
            yield from run(plan, (te, img))


def find_embedding(T: Hypergraph, G: Hypergraph, through: Optional[Sequence[int]] = None
                   ) -> Optional[Embedding]:
    """First embedding of ``T`` into ``G`` (optionally using edge ``through``), else ``None``."""
    return next(iter_embeddings(T, G, through), None)


def contains(G: Hypergraph, T: Hypergraph) -> bool:
    return find_embedding(T, G) is not None


# ---------------------------------------------------------------------------
# colour-preserving greedy


def partition_from_classes(classes: Sequence[Sequence[int]]) -> RPartition:
    return RPartition(len(classes), {v: i for i, cls in enumerate(classes, start=1) for v in cls})


def is_partite(G: Hypergraph, parts: RPartition) -> bool:
    full = set(range(1, parts.r + 1))
    return parts.r == G.r and all(
        all(v in parts.color for v in e) and {parts.color[v] for v in e} == full for e in G.edges
    )


def color_preserving_embed(T: Hypergraph, cert: TightTreeCert, phi: RPartition,
                           G: Hypergraph, parts: RPartition) -> Embedding:
    """Greedy embedding with ``f(u)`` in class ``phi(u)``; needs ``delta_{r-1}(G) >= t``."""
    t = len(T.edges)
    check_certificate(T, cert)
    if not is_proper_coloring(T, phi):
        raise EmbeddingError("improper-coloring", "phi does not colour every edge with all r colours")
    if not G.edges or not is_partite(G, parts):
        raise EmbeddingError("not-r-partite", "G is not r-partite with respect to the given classes")
    if min_p_degree(G, G.r - 1) < t:
        raise EmbeddingError("codegree-too-low",
                             f"delta_(r-1)(G) = {min_p_degree(G, G.r - 1)} < t = {t}")
    return _greedy_extend(cert, phi, G, parts)


def _greedy_extend(cert: TightTreeCert, phi: RPartition, G: Hypergraph,
                   parts: RPartition) -> Embedding:
    e1 = cert.edge_order[0]
    g1 = G.edges[0]
    f: Embedding = {u: parts.vertex_of_color(g1, phi.color[u]) for u in e1}
    used = set(f.values())
    for i in range(1, len(cert.edge_order)):
        e, v = cert.edge_order[i], cert.new_vertex[i]
        D = tuple(sorted(f[u] for u in e if u != v))
        z = next((x for x in G.co_neighbors(D) if x not in used), None)
        if z is None:
            raise InvariantViolation(f"no free co-neighbour of {D} while embedding {e}")
        f[v] = z
        used.add(z)
    return f


# ---------------------------------------------------------------------------
# density reductions


def extract_min_codegree(G: Hypergraph, q: int) -> Hypergraph:
    """Delete all edges through any (r-1)-set of degree <= q until none is left."""
    if not G.num_edges > q * len(shadow(G)):
        raise EmbeddingError("precondition", f"e(G)={G.num_edges} <= {q}*|shadow|={q * len(shadow(G))}")
    r = G.r
    alive = set(G.edges)
    deg = Counter(G.codegrees)
    through: Dict[Edge, List[Edge]] = {}
    for e in G.edges:
        for D in combinations(e, r - 1):
            through.setdefault(D, []).append(e)
    while True:
        low = sorted(D for D, d in deg.items() if 0 < d <= q)
        if not low:
            break
        for D in low:
            if not 0 < deg[D] <= q:
                continue
            for e in through[D]:
                if e in alive:
                    alive.discard(e)
                    for D2 in combinations(e, r - 1):
                        deg[D2] -= 1
    return G.with_edges(sorted(alive))


def dense_link_vertex(G: Hypergraph, alpha) -> Tuple[int, Hypergraph]:
    """First vertex whose link ``G1`` has ``e(G1) > alpha/(r-1) |shadow(G1)|``."""
    alpha = Fraction(alpha)
    r = G.r
    if r < 3:
        raise EmbeddingError("precondition", "dense_link_vertex needs r >= 3")
    if not G.num_edges > alpha / r * len(shadow(G)):
        raise EmbeddingError("precondition", "e(G) <= alpha/r * |shadow(G)|")
    for v in G.vertices:
        G1 = link(G, (v,))
        if G1.num_edges > alpha / (r - 1) * len(shadow(G1)):
            return v, G1
    raise InvariantViolation("no vertex has a dense link")


# ---------------------------------------------------------------------------
# rainbow subgraph via conditional expectations


def rainbow_subgraph(G: Hypergraph) -> Tuple[RPartition, Hypergraph]:
    """Partition the vertices into r classes keeping at least ``r!/r^r`` of the edges rainbow.

    Vertices are coloured one at a time, each time choosing the class that
    maximises the expected number of rainbow edges when the rest are coloured
    uniformly at random.  Expectations are scaled by ``r^r`` to stay integral.
    """
    if not G.edges:
        raise HypergraphError("rainbow_subgraph needs a non-empty hypergraph")
    r = G.r
    # weight[k] = r^r * P(k uncoloured vertices get the k missing colours bijectively)
    weight = [math.factorial(k) * r ** (r - k) for k in range(r + 1)]
    color: Dict[int, int] = {}
    incident: Dict[int, List[Edge]] = {}
    for e in G.edges:
        for v in e:
            incident.setdefault(v, []).append(e)

    def score(e: Edge) -> int:
        cols = [color[v] for v in e if v in color]
        if len(set(cols)) != len(cols):
            return 0
        return weight[r - len(cols)]

    for v in range(G.n):
        if v not in incident:
            color[v] = 1
            continue
        best, best_c = None, 1
        for c in range(1, r + 1):
            color[v] = c
            s = sum(score(e) for e in incident[v])
            if best is None or s > best:
                best, best_c = s, c
        color[v] = best_c
    parts = RPartition(r, color)
    full = set(range(1, r + 1))
    L1 = G.with_edges(e for e in G.edges if {color[v] for v in e} == full)
    return parts, L1


def rainbow_bound(r: int, m: int) -> int:
    """``ceil(r!/r^r * m)``."""
    return -(-math.factorial(r) * m // r ** r)


# ---------------------------------------------------------------------------
# patterns


def pattern(G: Hypergraph, e: Sequence[int], parts: RPartition) -> Tuple[int, ...]:
    """Classes ordered by the codegree (in ``G``) of ``e`` minus its vertex in that class."""
    e = tuple(sorted(e))
    r = len(e)
    cols = [parts.color.get(v) for v in e]
    if sorted(c for c in cols if c is not None) != list(range(1, r + 1)) or None in cols:
        raise EmbeddingError("not-rainbow", f"edge {e} is not rainbow")
    deg = {}
    for v, c in zip(e, cols):
        deg[c] = G.codegrees.get(tuple(u for u in e if u != v), 0)
    return tuple(sorted(range(1, r + 1), key=lambda c: (deg[c], c)))


# ---------------------------------------------------------------------------
# bounded trunk


def gamma(r: int, t: int, c: int) -> Fraction:
    return Fraction(t - 1, r) + (1 - Fraction(1, r)) * (c - 1)


def trunk_excess(r: int, c: int) -> Fraction:
    """``(r^r + 1 - 1/r)(c - 1)``."""
    return (r ** r + 1 - Fraction(1, r)) * (c - 1)


def trunk_threshold(r: int, t: int, c: int) -> Fraction:
    return Fraction(t - 1, r) + trunk_excess(r, c)


@dataclass
class EmbedTrace:
    r: int
    t: int
    c: int
    gamma: Fraction
    a: Fraction
    threshold: Fraction
    e_G: int
    shadow_G: int
    H_edges: int = 0
    L_edges: int = 0
    rainbow_parts: Optional[RPartition] = None
    L1_edges: int = 0
    L1_bound: int = 0
    bucket_sizes: Dict[Tuple[int, ...], int] = field(default_factory=dict)
    pattern: Tuple[int, ...] = ()
    L2_edges: int = 0
    L2_star_edges: int = 0
    L2_star_min_codegree: int = 0
    class_order: Tuple[int, ...] = ()
    codegree_chain_ok: bool = False
    trunk_embedding: Embedding = field(default_factory=dict)
    trunk_color_order: Tuple[int, ...] = ()
    extension_classes: List[List[Edge]] = field(default_factory=list)
    partial_sum_ok: bool = False
    embedding: Embedding = field(default_factory=dict)
    stage: str = "init"

    @property
    def extension_sizes(self) -> List[int]:
        return [len(x) for x in self.extension_classes]

    def to_dict(self) -> dict:
        def q(x: Fraction) -> List[int]:
            return [x.numerator, x.denominator]

        return {
            "stage": self.stage,
            "r": self.r,
            "t": self.t,
            "c": self.c,
            "gamma": q(self.gamma),
            "a": q(self.a),
            "threshold": q(self.threshold),
            "e_G": self.e_G,
            "shadow_G": self.shadow_G,
            "H_edges": self.H_edges,
            "L_edges": self.L_edges,
            "rainbow_classes": [] if self.rainbow_parts is None
            else [sorted(cls) for cls in self.rainbow_parts.classes()],
            "L1_edges": self.L1_edges,
            "L1_bound": self.L1_bound,
            "bucket_sizes": [[list(p), k] for p, k in sorted(self.bucket_sizes.items())],
            "pattern": list(self.pattern),
            "L2_edges": self.L2_edges,
            "L2_star_edges": self.L2_star_edges,
            "L2_star_min_codegree": self.L2_star_min_codegree,
            "class_order": list(self.class_order),
            "codegree_chain_ok": self.codegree_chain_ok,
            "trunk_embedding": [[u, x] for u, x in sorted(self.trunk_embedding.items())],
            "trunk_color_order": list(self.trunk_color_order),
            "extension_classes": [[list(e) for e in cls] for cls in self.extension_classes],
            "extension_sizes": self.extension_sizes,
            "partial_sum_ok": self.partial_sum_ok,
            "embedding": [[u, x] for u, x in sorted(self.embedding.items())],
        }


def _map_ordered(fn, items, workers: int):
    if workers <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def embed_bounded_trunk(G: Hypergraph, T: Hypergraph, trunk: TrunkCert,
                        workers: int = 1) -> Tuple[Embedding, EmbedTrace]:
    """Embed a tight tree with a trunk of size ``c`` into a host above the trunk threshold.

    The stages follow the weight argument: split by edge weight, keep a rainbow
    subgraph, bucket by pattern, clean to minimum codegree ``c``, embed the
    trunk colour-preservingly, then hang the remaining pendant edges class by
    class using codegrees in ``G`` itself.
    """
    if T.r != G.r:
        raise EmbeddingError("uniformity-mismatch", "T and G differ in uniformity")
    r, t, c = G.r, T.num_edges, trunk.size
    g = gamma(r, t, c)
    thr = trunk_threshold(r, t, c)
    sh = len(shadow(G))
    trace = EmbedTrace(r, t, c, g, trunk_excess(r, c), thr, G.num_edges, sh)
    if not G.num_edges > thr * sh:
        raise BelowThreshold(f"e(G) = {G.num_edges} <= {thr} * {sh}")

    if g == 0:
        # t = 1: a single edge
        (e,) = T.edges
        f = dict(zip(e, G.edges[0]))
        trace.embedding = f
        trace.stage = "done"
        return f, trace

    w = default_weights(G)
    inv = 1 / g
    L = [e for e in G.edges if w.edge_weights[e] < inv]
    trace.H_edges = G.num_edges - len(L)
    trace.L_edges = len(L)
    trace.stage = "split"
    if not L:
        raise InvariantViolation("light part L is empty", trace)

    parts, L1 = rainbow_subgraph(G.with_edges(L))
    trace.rainbow_parts = parts
    trace.L1_edges = L1.num_edges
    trace.L1_bound = rainbow_bound(r, len(L))
    trace.stage = "rainbow"
    if L1.num_edges < trace.L1_bound:
        raise InvariantViolation("rainbow subgraph below r!/r^r e(L)", trace)

    pats = _map_ordered(lambda e: pattern(G, e, parts), list(L1.edges), workers)
    buckets: Dict[Tuple[int, ...], List[Edge]] = {}
    for e, p in zip(L1.edges, pats):
        buckets.setdefault(p, []).append(e)
    trace.bucket_sizes = {p: len(es) for p, es in buckets.items()}
    sigma = min(buckets, key=lambda p: (-len(buckets[p]), p))
    trace.pattern = sigma
    L2 = G.with_edges(buckets[sigma])
    trace.L2_edges = L2.num_edges
    trace.stage = "pattern"

    try:
        L2s = extract_min_codegree(L2, c - 1)
    except EmbeddingError as exc:
        raise InvariantViolation(f"cleaning failed: {exc}", trace) from exc
    trace.L2_star_edges = L2s.num_edges
    trace.L2_star_min_codegree = min_p_degree(L2s, r - 1)
    trace.stage = "clean"
    if trace.L2_star_min_codegree < c:
        raise InvariantViolation("cleaned subgraph has codegree below c", trace)

    # relabel so that the common pattern becomes the identity
    A = parts.relabel(sigma)
    trace.class_order = sigma
    for e in L2s.edges:
        for i in range(1, r + 1):
            x = A.vertex_of_color(e, i)
            d = G.codegrees[tuple(v for v in e if v != x)]
            if not d > i * g:
                raise InvariantViolation(f"codegree chain fails at {e}, class {i}", trace)
    trace.codegree_chain_ok = True
    trace.stage = "codegree"

    # trunk colouring and extension classes
    tcert = trunk.trunk_cert()
    trunk_tree = Hypergraph(r, T.n, trunk.trunk_edges)
    B = r_partition(trunk_tree, tcert)
    rest = trunk.full_order.edge_order[c:]
    raw_cls: Dict[int, List[Edge]] = {i: [] for i in range(1, r + 1)}
    for e in rest:
        host = trunk.host[e]
        (missing,) = set(host) - set(e)
        raw_cls[B.color[missing]].append(e)
    perm = tuple(sorted(range(1, r + 1), key=lambda i: (len(raw_cls[i]), i)))
    B = B.relabel(perm)
    classes = [raw_cls[perm[i - 1]] for i in range(1, r + 1)]
    trace.trunk_color_order = perm
    trace.extension_classes = classes
    acc = 0
    for i, cls in enumerate(classes, start=1):
        acc += len(cls)
        if acc > (i * (t - c)) // r:
            raise InvariantViolation("partial sums of extension classes too large", trace)
    trace.partial_sum_ok = True
    trace.stage = "classes"

    try:
        h = color_preserving_embed(trunk_tree, tcert, B, L2s, A)
    except EmbeddingError as exc:
        raise InvariantViolation(f"trunk embedding failed: {exc}", trace) from exc
    trace.trunk_embedding = dict(h)
    trace.stage = "trunk"

    used = set(h.values())
    for i, cls in enumerate(classes, start=1):
        for e in cls:
            host = trunk.host[e]
            D = tuple(sorted(h[u] for u in e if u in host))
            (v,) = set(e) - set(host)
            z = next((x for x in G.co_neighbors(D) if x not in used), None)
            if z is None:
                raise InvariantViolation(f"no free co-neighbour of {D} in class {i}", trace)
            h[v] = z
            used.add(z)
    trace.embedding = dict(h)
    trace.stage = "done"
    if not is_embedding(h, T, G):
        raise InvariantViolation("final map is not an embedding", trace)
    return h, trace


# ---------------------------------------------------------------------------
# trees with at most four edges


def _graph_tree(edges) -> Hypergraph:
    return Hypergraph.from_edges(edges, r=2)


P4 = _graph_tree([(0, 1), (1, 2), (2, 3), (3, 4)])
S4 = _graph_tree([(0, 1), (0, 2), (0, 3), (0, 4)])
F4 = _graph_tree([(0, 1), (0, 2), (0, 3), (3, 4)])


def _adjacency(G: Hypergraph) -> Dict[int, List[int]]:
    adj: Dict[int, List[int]] = {}
    for a, b in G.edges:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    return {v: sorted(ns) for v, ns in adj.items()}


def _prune_low_degree(G: Hypergraph, k: int) -> Dict[int, List[int]]:
    """Repeatedly delete vertices of degree <= k; returns the surviving adjacency."""
    adj = {v: set(ns) for v, ns in _adjacency(G).items()}
    stack = sorted(v for v, ns in adj.items() if len(ns) <= k)
    while stack:
        v = stack.pop()
        if v not in adj or len(adj[v]) > k:
            continue
        for u in adj.pop(v):
            adj[u].discard(v)
            if len(adj[u]) <= k:
                stack.append(u)
    return {v: sorted(ns) for v, ns in adj.items()}


def _path(adj: Dict[int, List[int]], k: int) -> Optional[List[int]]:
    """A path with ``k`` edges by depth-first extension from every start vertex."""

    def dfs(p: List[int]) -> Optional[List[int]]:
        if len(p) == k + 1:
            return p
        for x in adj.get(p[-1], ()):
            if x not in p:
                got = dfs(p + [x])
                if got:
                    return got
        return None

    for v in sorted(adj):
        got = dfs([v])
        if got:
            return got
    return None


def _embed_graph_tree(G: Hypergraph, T: Hypergraph) -> Embedding:
    """Base case r = 2 with ``e(G) > (t-1)/2 |V(G)|``."""
    t = T.num_edges
    adj = _adjacency(G)
    if t == 1:
        model, img = P4.with_edges([(0, 1)]), list(G.edges[0])
    elif t == 2:
        a = next(v for v in sorted(adj) if len(adj[v]) >= 2)
        model, img = P4.with_edges([(0, 1), (1, 2)]), [adj[a][0], a, adj[a][1]]
    elif t == 3 and find_isomorphism(T, _graph_tree([(0, 1), (0, 2), (0, 3)])) is not None:
        a = next(v for v in sorted(adj) if len(adj[v]) >= 3)
        model, img = _graph_tree([(0, 1), (0, 2), (0, 3)]), [a] + adj[a][:3]
    elif t == 3:
        core = _prune_low_degree(G, 1)
        a = next(v for v in sorted(core) if len(core[v]) >= 3)
        b = core[a][0]
        x = next(u for u in core[b] if u != a)
        y = next(u for u in core[a] if u not in (b, x))
        model, img = _graph_tree([(0, 1), (1, 2), (2, 3)]), [x, b, a, y]
    elif find_isomorphism(T, S4) is not None:
        a = next(v for v in sorted(adj) if len(adj[v]) >= 4)
        model, img = S4, [a] + adj[a][:4]
    elif find_isomorphism(T, F4) is not None:
        core = _prune_low_degree(G, 1)
        a = next(v for v in sorted(core) if len(core[v]) >= 4)
        b1 = core[a][0]
        b = next(u for u in core[b1] if u != a)
        rest = [u for u in core[a][1:4] if u != b][:2]
        model, img = F4, [a, rest[0], rest[1], b1, b]
    else:
        p = _path(adj, 4)
        if p is None:
            raise InvariantViolation("no path with four edges in a graph above 3/2 density")
        model, img = P4, p
    iso = find_isomorphism(T, model)
    return {u: img[iso[u]] for u in T.vertices}


def embed_small_tree(G: Hypergraph, T: Hypergraph) -> Embedding:
    """Embed a tight tree with ``t <= 4`` edges into ``G`` with ``e(G) > (t-1)/r |shadow(G)|``.

    Recurses on vertex links while ``T`` has a vertex in every edge, bottoming
    out at graph trees; the tight path with four triples is handed to the
    containment oracle.
    """
    if T.r != G.r:
        raise EmbeddingError("uniformity-mismatch", "T and G differ in uniformity")
    t, r = T.num_edges, T.r
    if t > 4:
        raise EmbeddingError("unsupported", f"t = {t} > 4")
    if tight_order(T) is None:
        raise EmbeddingError("not-a-tight-tree", "T is not a tight tree")
    if not G.num_edges > Fraction(t - 1, r) * len(shadow(G)):
        raise BelowThreshold(f"e(G) = {G.num_edges} <= {t - 1}/{r} * {len(shadow(G))}")
    if r == 2:
        f = _embed_graph_tree(G, T)
    else:
        common = set.intersection(*(set(e) for e in T.edges))
        if common:
            v = min(common)
            a, G1 = dense_link_vertex(G, t - 1)
            f = embed_small_tree(G1, link(T, (v,)))
            f[v] = a
        else:
            f = find_embedding(T, G)
            if f is None:
                raise InvariantViolation("oracle found no copy of a four-edge tree above threshold")
    if not is_embedding(f, T, G):
        raise InvariantViolation("constructed map is not an embedding")
    return f
