"""Tight r-trees: ordering certificates, the r-partition, trunks and enumeration.

A tight r-tree is an r-graph whose edges can be listed ``e1..et`` so that each
``ei`` (i >= 2) has one vertex not seen before and its other r-1 vertices inside
a single earlier edge.  :class:`TightTreeCert` records such a listing together
with the new vertex and host edge of every step.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .hypergraph import Edge, Hypergraph, HypergraphError


class NotATightTree(HypergraphError):
    pass


class InvalidCertificate(HypergraphError):
    pass


@dataclass(frozen=True)
class TightTreeCert:
    """``edge_order[i]`` is added with ``new_vertex[i]`` inside host ``edge_order[host_index[i]]``.

    Index 0 carries ``None`` for both witnesses.
    """

    edge_order: Tuple[Edge, ...]
    new_vertex: Tuple[Optional[int], ...]
    host_index: Tuple[Optional[int], ...]

    def __len__(self) -> int:
        return len(self.edge_order)

    def to_dict(self) -> dict:
        return {
            "edges": [list(e) for e in self.edge_order],
            "new_vertex": list(self.new_vertex),
            "host_index": list(self.host_index),
        }


@dataclass(frozen=True)
class RPartition:
    """Vertex colouring with colours ``1..r``."""

    r: int
    color: Dict[int, int]

    def classes(self) -> List[FrozenSet[int]]:
        out = [set() for _ in range(self.r)]
        for v, c in self.color.items():
            out[c - 1].add(v)
        return [frozenset(s) for s in out]

    def blocks(self) -> FrozenSet[FrozenSet[int]]:
        """The colour classes as an unordered family; equal iff same partition up to renaming."""
        return frozenset(c for c in self.classes() if c)

    def relabel(self, perm: Sequence[int]) -> "RPartition":
        """New colour ``i`` is old colour ``perm[i-1]``."""
        inv = {old: new for new, old in enumerate(perm, start=1)}
        return RPartition(self.r, {v: inv[c] for v, c in self.color.items()})

    def vertex_of_color(self, e: Sequence[int], c: int) -> int:
        for v in e:
            if self.color.get(v) == c:
                return v
        raise KeyError(c)


@dataclass(frozen=True)
class TrunkCert:
    trunk_edges: Tuple[Edge, ...]
    full_order: TightTreeCert
    host: Dict[Edge, Edge]

    @property
    def size(self) -> int:
        return len(self.trunk_edges)

    def trunk_cert(self) -> TightTreeCert:
        c = len(self.trunk_edges)
        fo = self.full_order
        return TightTreeCert(fo.edge_order[:c], fo.new_vertex[:c], fo.host_index[:c])

    def to_dict(self) -> dict:
        return {
            "c": self.size,
            "trunk": [list(e) for e in self.trunk_edges],
            "order": self.full_order.to_dict(),
            "host": [[list(e), list(a)] for e, a in self.host.items()],
        }


def check_certificate(T: Hypergraph, cert: TightTreeCert) -> None:
    """Raise :class:`InvalidCertificate` unless ``cert`` certifies ``T`` as a tight tree."""
    order = cert.edge_order
    if sorted(order) != list(T.edges) or not order:
        raise InvalidCertificate("certificate does not list every edge exactly once")
    if len(cert.new_vertex) != len(order) or len(cert.host_index) != len(order):
        raise InvalidCertificate("witness lists have the wrong length")
    seen = set(order[0])
    for i in range(1, len(order)):
        e, v, s = order[i], cert.new_vertex[i], cert.host_index[i]
        if v is None or s is None or v not in e:
            raise InvalidCertificate(f"step {i}: missing or foreign new vertex")
        if v in seen:
            raise InvalidCertificate(f"step {i}: vertex {v} is not new")
        if not 0 <= s < i:
            raise InvalidCertificate(f"step {i}: host index {s} is not earlier")
        if not set(e) - {v} <= set(order[s]):
            raise InvalidCertificate(f"step {i}: {e} minus {v} not inside host {order[s]}")
        seen.add(v)
    if len(seen) != T.r + len(order) - 1:
        raise InvalidCertificate("vertex count differs from r + t - 1")


def _ordered_search(edges: Sequence[Edge], stages: Sequence[FrozenSet[Edge]],
                    first_choices: Optional[Sequence[Edge]] = None) -> Optional[TightTreeCert]:
    """Backtracking over listings that exhaust ``stages[0]`` before ``stages[1]`` and so on."""
    t = len(edges)
    order: List[Edge] = []
    newv: List[Optional[int]] = []
    hosts: List[Optional[int]] = []
    used: set = set()

    def addable(e: Edge):
        fresh = [v for v in e if v not in used]
        if len(fresh) != 1:
            return None
        v = fresh[0]
        rest = set(e) - {v}
        for s, f in enumerate(order):
            if rest <= set(f):
                return v, s
        return None

    def stage_of(k: int) -> FrozenSet[Edge]:
        acc = 0
        for st in stages:
            acc += len(st)
            if k < acc:
                return st
        return stages[-1]

    placed: set = set()

    def rec() -> bool:
        k = len(order)
        if k == t:
            return True
        allowed = stage_of(k)
        for e in edges:
            if e in placed or e not in allowed:
                continue
            w = addable(e)
            if w is None:
                continue
            v, s = w
            order.append(e)
            newv.append(v)
            hosts.append(s)
            placed.add(e)
            used.add(v)
            if rec():
                return True
            order.pop()
            newv.pop()
            hosts.pop()
            placed.discard(e)
            used.discard(v)
        return False

    starts = first_choices if first_choices is not None else [e for e in edges if e in stages[0]]
    for e0 in starts:
        order[:] = [e0]
        newv[:] = [None]
        hosts[:] = [None]
        placed.clear()
        placed.add(e0)
        used.clear()
        used.update(e0)
        if rec():
            return TightTreeCert(tuple(order), tuple(newv), tuple(hosts))
    return None


def tight_order(T: Hypergraph) -> Optional[TightTreeCert]:
    """A tight-tree certificate for ``T``, or ``None`` if ``T`` is not a tight tree."""
    if not T.edges:
        raise HypergraphError("tight_order needs a non-empty hypergraph")
    if len(T.vertices) != T.r + len(T.edges) - 1:
        return None
    return _ordered_search(T.edges, [frozenset(T.edges)])


def is_tight_tree(T: Hypergraph) -> bool:
    return bool(T.edges) and tight_order(T) is not None


def r_partition(T: Hypergraph, cert: TightTreeCert) -> RPartition:
    """Propagate colours ``1..r`` from the first edge along the certificate."""
    check_certificate(T, cert)
    order = cert.edge_order
    color = {v: i for i, v in enumerate(order[0], start=1)}
    for i in range(1, len(order)):
        e, v = order[i], cert.new_vertex[i]
        host = order[cert.host_index[i]]
        (replaced,) = set(host) - set(e)
        color[v] = color[replaced]
    return RPartition(T.r, color)


def is_proper_coloring(T: Hypergraph, phi: RPartition) -> bool:
    full = set(range(1, T.r + 1))
    return all(v in phi.color for e in T.edges for v in e) and all(
        {phi.color[v] for v in e} == full for e in T.edges
    )


def _require_tree(T: Hypergraph) -> TightTreeCert:
    cert = tight_order(T)
    if cert is None:
        raise NotATightTree("input is not a tight tree")
    return cert


def trunk_number(T: Hypergraph) -> Tuple[int, TrunkCert]:
    """Minimum trunk size ``c(T)`` with a witness, searching subsets by increasing size."""
    _require_tree(T)
    edges = T.edges
    for k in range(1, len(edges) + 1):
        for sub in combinations(edges, k):
            cert = trunk_certificate(T, sub)
            if cert is not None:
                return k, cert
    raise AssertionError("the whole edge set is always a trunk")


def trunk_certificate(T: Hypergraph, sub: Sequence[Edge]) -> Optional[TrunkCert]:
    """Certificate that ``sub`` is a trunk of ``T``, or ``None``."""
    r = T.r
    trunk = frozenset(tuple(sorted(e)) for e in sub)
    if not trunk <= T.edge_set:
        return None
    rest = [e for e in T.edges if e not in trunk]
    hosts: Dict[Edge, Edge] = {}
    for e in rest:
        for f in sorted(trunk):
            if len(set(e) & set(f)) == r - 1:
                hosts[e] = f
                break
        else:
            return None
    sub_tree = Hypergraph(r, T.n, tuple(trunk))
    if tight_order(sub_tree) is None:
        return None
    order = _ordered_search(T.edges, [trunk, frozenset(rest)] if rest else [trunk])
    if order is None:
        return None
    trunk_in_order = order.edge_order[:len(trunk)]
    host = {}
    for e in order.edge_order[len(trunk):]:
        for f in trunk_in_order:
            if len(set(e) & set(f)) == r - 1:
                host[e] = f
                break
    return TrunkCert(trunk_in_order, order, host)


def is_star_shaped(T: Hypergraph) -> bool:
    _require_tree(T)
    r = T.r
    return any(all(len(set(e) & set(e0)) == r - 1 for e in T.edges if e != e0) for e0 in T.edges)


def _invariant(G: Hypergraph) -> tuple:
    deg = G.vertex_degrees
    co = G.codegrees
    return (
        len(G.edges),
        len(G.vertices),
        tuple(sorted(deg.values())),
        tuple(sorted(co.values())),
        tuple(sorted(tuple(sorted(deg[v] for v in e)) for e in G.edges)),
    )


def find_isomorphism(G: Hypergraph, H: Hypergraph) -> Optional[Dict[int, int]]:
    """A bijection of non-isolated vertices taking the edges of ``G`` onto those of ``H``."""
    if G.r != H.r or _invariant(G) != _invariant(H):
        return None
    dg, dh = G.vertex_degrees, H.vertex_degrees
    gv = sorted(G.vertices, key=lambda v: (-dg[v], v))
    hv_by_deg: Dict[int, List[int]] = {}
    for v in H.vertices:
        hv_by_deg.setdefault(dh[v], []).append(v)
    # edges of G that become fully mapped once gv[k] is placed
    pos = {v: k for k, v in enumerate(gv)}
    closing: List[List[Edge]] = [[] for _ in gv]
    for e in G.edges:
        closing[max(pos[v] for v in e)].append(e)
    hset = H.edge_set
    f: Dict[int, int] = {}
    taken: set = set()

    def rec(k: int) -> bool:
        if k == len(gv):
            return True
        u = gv[k]
        for x in hv_by_deg.get(dg[u], ()):
            if x in taken:
                continue
            f[u] = x
            if all(tuple(sorted(f[w] for w in e)) in hset for e in closing[k]):
                taken.add(x)
                if rec(k + 1):
                    return True
                taken.discard(x)
            del f[u]
        return False

    return dict(f) if rec(0) else None


def are_isomorphic(G: Hypergraph, H: Hypergraph) -> bool:
    return find_isomorphism(G, H) is not None


def _extensions(T: Hypergraph) -> List[Hypergraph]:
    new = T.n
    out = []
    for host in T.edges:
        for drop in host:
            e = tuple(v for v in host if v != drop) + (new,)
            out.append(Hypergraph(T.r, new + 1, T.edges + (e,)))
    return out


def enumerate_tight_trees(r: int, t: int, max_vertices: int = 10) -> List[Hypergraph]:
    """One representative per isomorphism class of tight r-trees with t edges.

    Trees live on ``0..r+t-2``; class representatives are the first generated.
    """
    if r < 2 or t < 1:
        raise HypergraphError(f"need r >= 2 and t >= 1, got r={r}, t={t}")
    if r + t - 1 > max_vertices:
        raise HypergraphError(f"r + t - 1 = {r + t - 1} exceeds the supported {max_vertices}")
    level = [Hypergraph(r, r, (tuple(range(r)),))]
    for _ in range(t - 1):
        level = dedupe_isomorphic(x for T in level for x in _extensions(T))
    return level


def dedupe_isomorphic(graphs) -> List[Hypergraph]:
    buckets: Dict[tuple, List[Hypergraph]] = {}
    out = []
    for G in graphs:
        bucket = buckets.setdefault(_invariant(G), [])
        if any(are_isomorphic(G, H) for H in bucket):
            continue
        bucket.append(G)
        out.append(G)
    return out


def raw_extensions(T: Hypergraph) -> List[Hypergraph]:
    """Every one-edge extension of ``T`` by a fresh vertex, without deduplication."""
    return _extensions(T)


def degree_profile(T: Hypergraph) -> Tuple[int, ...]:
    return tuple(sorted(Counter(v for e in T.edges for v in e).values()))
