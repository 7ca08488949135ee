"""Exact r-uniform hypergraphs: shadow, link, degrees and the default weight function.

Vertices are the integers ``0..n-1``.  Edges are stored as strictly increasing
tuples and the edge tuple itself is kept in lexicographic order, so two
hypergraphs with the same edge set compare equal and serialize identically.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

Edge = Tuple[int, ...]


class HypergraphError(ValueError):
    """Raised for malformed hypergraphs and invalid arguments to hypergraph operations."""


class ParseError(HypergraphError):
    """Malformed hypergraph text; carries the 1-based line and column of the problem."""

    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Hypergraph:
    r: int
    n: int
    edges: Tuple[Edge, ...] = ()

    def __post_init__(self):
        if self.r < 1:
            raise HypergraphError(f"uniformity must be >= 1, got {self.r}")
        if self.n < 0:
            raise HypergraphError(f"vertex count must be >= 0, got {self.n}")
        canon = set()
        for e in self.edges:
            s = tuple(sorted(e))
            if len(s) != self.r or len(set(s)) != self.r:
                raise HypergraphError(f"edge {tuple(e)} is not a set of {self.r} distinct vertices")
            if s[0] < 0 or s[-1] >= self.n:
                raise HypergraphError(f"edge {tuple(e)} has a vertex outside 0..{self.n - 1}")
            if s in canon:
                raise HypergraphError(f"duplicate edge {s}")
            canon.add(s)
        object.__setattr__(self, "edges", tuple(sorted(canon)))

    @classmethod
    def from_edges(cls, edges: Iterable[Iterable[int]], r: Optional[int] = None,
                   n: Optional[int] = None) -> "Hypergraph":
        """Build a hypergraph, inferring ``r`` and ``n`` from the edges when omitted."""
        edges = [tuple(e) for e in edges]
        if r is None:
            if not edges:
                raise HypergraphError("cannot infer uniformity from an empty edge list")
            r = len(edges[0])
        if n is None:
            n = 1 + max((max(e) for e in edges), default=-1)
        return cls(r, n, tuple(edges))

    def __len__(self) -> int:
        return len(self.edges)

    def __iter__(self) -> Iterator[Edge]:
        return iter(self.edges)

    def __contains__(self, e) -> bool:
        return tuple(sorted(e)) in self.edge_set

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @cached_property
    def edge_set(self) -> FrozenSet[Edge]:
        return frozenset(self.edges)

    @cached_property
    def vertices(self) -> Tuple[int, ...]:
        """Non-isolated vertices, ascending."""
        return tuple(sorted({v for e in self.edges for v in e}))

    @cached_property
    def codegrees(self) -> Counter:
        """Degree of every (r-1)-set lying in some edge."""
        return Counter(D for e in self.edges for D in combinations(e, self.r - 1))

    @cached_property
    def vertex_degrees(self) -> Counter:
        return Counter(v for e in self.edges for v in e)

    def co_neighbors(self, D: Sequence[int]) -> List[int]:
        """Vertices ``x`` with ``D + {x}`` an edge, for an (r-1)-set ``D``."""
        Ds = set(D)
        return sorted(v for e in self.edges if Ds.issubset(e) for v in e if v not in Ds)

    def with_edges(self, edges: Iterable[Iterable[int]]) -> "Hypergraph":
        """Same uniformity and vertex universe, different edge set."""
        return Hypergraph(self.r, self.n, tuple(tuple(e) for e in edges))

    def to_text(self) -> str:
        return format_hypergraph(self)


def complete(n: int, r: int) -> Hypergraph:
    return Hypergraph(r, n, tuple(combinations(range(n), r)))


def _vertex_set(D: Iterable[int]) -> Edge:
    s = tuple(sorted(D))
    if len(set(s)) != len(s):
        raise HypergraphError(f"vertex set {tuple(D)} has repeated vertices")
    return s


def shadow(G: Hypergraph) -> FrozenSet[Edge]:
    return frozenset(G.codegrees)


def link(G: Hypergraph, D: Iterable[int]) -> Hypergraph:
    """The (r-|D|)-graph of residues ``e - D`` over edges containing ``D``."""
    D = _vertex_set(D)
    if len(D) >= G.r:
        raise HypergraphError(f"link needs |D| < r, got |D|={len(D)}, r={G.r}")
    Ds = set(D)
    res = [tuple(v for v in e if v not in Ds) for e in G.edges if Ds.issubset(e)]
    return Hypergraph(G.r - len(D), G.n, tuple(res))


def degree(G: Hypergraph, D: Iterable[int]) -> int:
    """Number of edges containing ``D``; sets in no edge have degree 0."""
    D = _vertex_set(D)
    if len(D) > G.r:
        raise HypergraphError(f"degree needs |D| <= r, got |D|={len(D)}")
    if len(D) == G.r - 1:
        return G.codegrees.get(D, 0)
    Ds = set(D)
    return sum(1 for e in G.edges if Ds.issubset(e))


def min_p_degree(G: Hypergraph, p: int) -> int:
    """Minimum degree over the p-sets that lie inside at least one edge."""
    if not 1 <= p <= G.r - 1:
        raise HypergraphError(f"p must satisfy 1 <= p <= r-1, got p={p}, r={G.r}")
    if not G.edges:
        raise HypergraphError("minimum degree of an empty hypergraph is undefined")
    if p == G.r - 1:
        return min(G.codegrees.values())
    counts = Counter(D for e in G.edges for D in combinations(e, p))
    return min(counts.values())


@dataclass(frozen=True)
class WeightMap:
    shadow_weights: Dict[Edge, Fraction] = field(default_factory=dict)
    edge_weights: Dict[Edge, Fraction] = field(default_factory=dict)

    @property
    def total(self) -> Fraction:
        return sum(self.edge_weights.values(), Fraction(0))


def default_weights(G: Hypergraph) -> WeightMap:
    """``w(D) = 1/d(D)`` on the shadow and ``w(e)`` = sum over the (r-1)-subsets of ``e``."""
    if not G.edges:
        raise HypergraphError("default weights need a non-empty hypergraph")
    sw = {D: Fraction(1, d) for D, d in G.codegrees.items()}
    ew = {e: sum((sw[D] for D in combinations(e, G.r - 1)), Fraction(0)) for e in G.edges}
    return WeightMap(sw, ew)


def sorted_codegrees(G: Hypergraph, e: Sequence[int]) -> List[int]:
    """Degrees of the r boundary (r-1)-sets of edge ``e``, ascending."""
    return sorted(G.codegrees[D] for D in combinations(tuple(sorted(e)), G.r - 1))


def arrangement_holds(degrees: Sequence[int]) -> bool:
    """Check ``d_i >= i/s`` for ascending positive ``degrees`` with ``s = sum 1/d_i``."""
    ds = sorted(degrees)
    s = sum((Fraction(1, d) for d in ds), Fraction(0))
    return all(d * s >= i for i, d in enumerate(ds, start=1))


def parse_hypergraph(text: str) -> Hypergraph:
    """Parse the ``r n`` header plus one-edge-per-line text format."""
    header = None
    edges: List[Edge] = []
    seen = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        tokens = []
        col = 0
        for tok in line.split():
            col = line.index(tok, col)
            tokens.append((tok, col + 1))
            col += len(tok)
        values = []
        for tok, c in tokens:
            try:
                values.append(int(tok))
            except ValueError:
                raise ParseError(f"expected an integer, got {tok!r}", lineno, c) from None
        if header is None:
            if len(values) != 2:
                raise ParseError("header must be 'r n'", lineno, tokens[0][1])
            r, n = values
            if r < 1 or n < 0:
                raise ParseError(f"invalid header r={r} n={n}", lineno, tokens[0][1])
            header = (r, n)
            continue
        r, n = header
        if len(values) != r:
            raise ParseError(f"edge has {len(values)} vertices, expected {r}", lineno, tokens[0][1])
        for v, (_, c) in zip(values, tokens):
            if not 0 <= v < n:
                raise ParseError(f"vertex {v} outside 0..{n - 1}", lineno, c)
        if len(set(values)) != r:
            raise ParseError("edge repeats a vertex", lineno, tokens[0][1])
        e = tuple(sorted(values))
        if e in seen:
            raise ParseError(f"duplicate edge (first seen on line {seen[e]})", lineno, tokens[0][1])
        seen[e] = lineno
        edges.append(e)
    if header is None:
        raise ParseError("missing 'r n' header", 1)
    return Hypergraph(header[0], header[1], tuple(edges))


def format_hypergraph(G: Hypergraph) -> str:
    lines = [f"{G.r} {G.n}"]
    lines.extend(" ".join(map(str, e)) for e in G.edges)
    return "\n".join(lines) + "\n"


def read_hypergraph(path) -> Hypergraph:
    with open(path) as fh:
        return parse_hypergraph(fh.read())


def random_hypergraph(n: int, r: int, p: float, rng) -> Hypergraph:
    """Each r-subset of ``0..n-1`` kept independently with probability ``p``."""
    return Hypergraph(r, n, tuple(e for e in combinations(range(n), r) if rng.random() < p))
