"""Immutable simple undirected graphs plus the small toolbox the solvers share.

Graphs live on dense integer vertex ids ``0..n-1``.  Edges are stored as a
sorted tuple of ``(u, v)`` pairs with ``u < v``; parallel edges and self loops
are rejected at construction time.

The text format accepted by :func:`parse_edge_list` is one edge per line
(``"u v"``), ``#`` starting a comment line, blank lines ignored, and an
optional ``"n <N>"`` header declaring the vertex count (needed to round-trip
isolated vertices).  Without a header the vertex count is inferred as
``max id + 1``.
"""

from __future__ import annotations

import io
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


class GraphParseError(ValueError):
    """Malformed edge-list text.  ``line`` is the 1-based offending line."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class Graph:
    """An undirected simple graph on vertices ``0..n-1``."""

    n: int
    edges: tuple[tuple[int, int], ...]
    adjacency: tuple[tuple[int, ...], ...]

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def has_edge(self, u: int, v: int) -> bool:
        if u > v:
            u, v = v, u
        return v in self.adjacency[u]


@dataclass(frozen=True)
class SubgraphResult:
    """A vertex set together with its induced edge count and average degree."""

    vertices: tuple[int, ...]
    edge_count: int
    average_degree: float


def graph_from_edges(n: int, edges: Iterable[Sequence[int]]) -> Graph:
    """Build a :class:`Graph`, normalising edge order and validating input.

    Raises ``ValueError`` on out-of-range endpoints, self loops or duplicate
    edges.
    """
    if n < 0:
        raise ValueError(f"vertex count must be non-negative, got {n}")
    seen: set[tuple[int, int]] = set()
    norm: list[tuple[int, int]] = []
    for e in edges:
        u, v = int(e[0]), int(e[1])
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
        if u == v:
            raise ValueError(f"self loop at vertex {u}")
        if u > v:
            u, v = v, u
        if (u, v) in seen:
            raise ValueError(f"duplicate edge ({u}, {v})")
        seen.add((u, v))
        norm.append((u, v))
    norm.sort()
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in norm:
        adj[u].append(v)
        adj[v].append(u)
    return Graph(n, tuple(norm), tuple(tuple(sorted(a)) for a in adj))


def parse_edge_list(source: str | bytes | io.TextIOBase) -> Graph:
    """Parse edge-list text into a :class:`Graph`.

    Errors name the offending 1-based line: non-integer tokens, wrong token
    count, negative ids, ids beyond a declared ``n`` header, duplicate edges,
    self loops, and duplicate headers are all rejected.
    """
    if isinstance(source, bytes):
        text = source.decode("utf-8")
    elif isinstance(source, str):
        text = source
    else:
        text = source.read()
        if isinstance(text, bytes):
            text = text.decode("utf-8")

    declared_n: int | None = None
    edges: list[tuple[int, int, int]] = []  # (u, v, line number)
    seen: set[tuple[int, int]] = set()
    max_id = -1
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        tokens = stripped.split()
        if tokens[0] == "n":
            if len(tokens) != 2:
                raise GraphParseError("header must be 'n <count>'", lineno)
            if declared_n is not None:
                raise GraphParseError("duplicate 'n' header", lineno)
            try:
                declared_n = int(tokens[1])
            except ValueError:
                raise GraphParseError(
                    f"non-integer vertex count {tokens[1]!r}", lineno
                ) from None
            if declared_n < 0:
                raise GraphParseError(f"negative vertex count {declared_n}", lineno)
            continue
        if len(tokens) != 2:
            raise GraphParseError(
                f"expected two vertex ids, got {len(tokens)} tokens", lineno
            )
        try:
            u, v = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise GraphParseError(f"non-integer vertex id in {stripped!r}", lineno) from None
        if u < 0 or v < 0:
            raise GraphParseError(f"negative vertex id in ({u}, {v})", lineno)
        if u == v:
            raise GraphParseError(f"self loop at vertex {u}", lineno)
        if u > v:
            u, v = v, u
        if (u, v) in seen:
            raise GraphParseError(f"duplicate edge ({u}, {v})", lineno)
        seen.add((u, v))
        edges.append((u, v, lineno))
        max_id = max(max_id, v)

    if declared_n is not None:
        for u, v, lineno in edges:
            if v >= declared_n:
                raise GraphParseError(
                    f"edge ({u}, {v}) exceeds declared vertex count {declared_n}", lineno
                )
        n = declared_n
    else:
        n = max_id + 1
    return graph_from_edges(n, [(u, v) for u, v, _ in edges])


def serialize_edge_list(G: Graph) -> str:
    """Render a graph in the text format; ``parse_edge_list`` round-trips it."""
    lines = [f"n {G.n}"]
    lines.extend(f"{u} {v}" for u, v in G.edges)
    return "\n".join(lines) + "\n"


def induced_stats(G: Graph, vertices: Iterable[int]) -> SubgraphResult:
    """Edge count and average degree of the subgraph induced by ``vertices``."""
    vset = set(vertices)
    for v in vset:
        if not (0 <= v < G.n):
            raise ValueError(f"vertex {v} out of range for n={G.n}")
    count = 0
    for v in vset:
        for u in G.adjacency[v]:
            if u > v and u in vset:
                count += 1
    verts = tuple(sorted(vset))
    avg = 0.0 if not verts else 2.0 * count / len(verts)
    return SubgraphResult(verts, count, avg)


def average_degree_fraction(r: SubgraphResult) -> Fraction:
    """Exact rational average degree of a result (0 for the empty set)."""
    if not r.vertices:
        return Fraction(0)
    return Fraction(2 * r.edge_count, len(r.vertices))


def better_than(a: SubgraphResult, b: SubgraphResult) -> bool:
    """True when ``a`` beats ``b``: higher average degree (compared exactly),
    then more induced edges, then lexicographically smaller vertex tuple."""
    fa, fb = average_degree_fraction(a), average_degree_fraction(b)
    if fa != fb:
        return fa > fb
    if a.edge_count != b.edge_count:
        return a.edge_count > b.edge_count
    return a.vertices < b.vertices


def pick_best(results: Iterable[SubgraphResult]) -> SubgraphResult:
    best: SubgraphResult | None = None
    for r in results:
        if best is None or better_than(r, best):
            best = r
    if best is None:
        raise ValueError("no candidate results")
    return best


def cut_size(G: Graph, side_a: Iterable[int], side_b: Iterable[int]) -> int:
    """Number of edges with one endpoint in each (disjoint) side."""
    sa, sb = set(side_a), set(side_b)
    if sa & sb:
        raise ValueError(f"sides overlap on {sorted(sa & sb)}")
    count = 0
    for v in sa:
        for u in G.adjacency[v]:
            if u in sb:
                count += 1
    return count


def top_degree_vertices(G: Graph, count: int) -> tuple[int, ...]:
    """The ``count`` highest-degree vertices; degree ties go to lower ids."""
    if not (0 <= count <= G.n):
        raise ValueError(f"count {count} out of range for n={G.n}")
    order = sorted(range(G.n), key=lambda v: (-G.degree(v), v))
    return tuple(order[:count])


def top_half_degree_stats(G: Graph, k: int) -> tuple[float, int]:
    """``(d_H_avg, d_H_max)``: the mean degree of the ``ceil(k/2)`` highest
    degree vertices and the maximum degree of the whole graph."""
    if not (1 <= k <= G.n):
        raise ValueError(f"k={k} out of range for n={G.n}")
    half = (k + 1) // 2
    top = top_degree_vertices(G, half)
    d_avg = sum(G.degree(v) for v in top) / half
    d_max = max((G.degree(v) for v in range(G.n)), default=0)
    return d_avg, d_max


def induced_subgraph(G: Graph, vertices: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    """The induced subgraph on ``vertices`` with ids compacted to ``0..|S|-1``.

    Returns ``(subgraph, original_ids)`` where ``original_ids[new] = old``.
    """
    old_ids = tuple(sorted(set(vertices)))
    for v in old_ids:
        if not (0 <= v < G.n):
            raise ValueError(f"vertex {v} out of range for n={G.n}")
    index = {old: new for new, old in enumerate(old_ids)}
    edges = [
        (index[u], index[v])
        for u, v in G.edges
        if u in index and v in index
    ]
    return graph_from_edges(len(old_ids), edges), old_ids


def remove_top_degrees(G: Graph, k: int) -> tuple[Graph, tuple[int, ...]]:
    """Drop the ``ceil(k/2)`` highest-degree vertices (ties to lower ids).

    Returns the remaining induced subgraph and its original-id map.  Requires
    that at least one vertex survives.
    """
    if not (1 <= k <= G.n):
        raise ValueError(f"k={k} out of range for n={G.n}")
    half = (k + 1) // 2
    if half >= G.n:
        raise ValueError(f"removing {half} of {G.n} vertices leaves nothing")
    removed = set(top_degree_vertices(G, half))
    keep = [v for v in range(G.n) if v not in removed]
    return induced_subgraph(G, keep)


def pad_lowest_id(G: Graph, vertices: Iterable[int], k: int) -> tuple[int, ...]:
    """Grow the set to exactly ``k`` vertices by adding the smallest free ids."""
    vset = set(vertices)
    if len(vset) > k:
        raise ValueError(f"set of size {len(vset)} already exceeds k={k}")
    if k > G.n:
        raise ValueError(f"k={k} exceeds n={G.n}")
    for v in range(G.n):
        if len(vset) == k:
            break
        vset.add(v)
    return tuple(sorted(vset))


def pad_most_neighbors(G: Graph, vertices: Iterable[int], k: int) -> tuple[int, ...]:
    """Grow the set to exactly ``k`` vertices, each time adding the outside
    vertex with the most neighbors already inside (ties to lower ids)."""
    vset = set(vertices)
    if len(vset) > k:
        raise ValueError(f"set of size {len(vset)} already exceeds k={k}")
    if k > G.n:
        raise ValueError(f"k={k} exceeds n={G.n}")
    inside = dict.fromkeys(range(G.n), 0)
    for v in vset:
        for u in G.adjacency[v]:
            inside[u] += 1
    while len(vset) < k:
        best = min(
            (v for v in range(G.n) if v not in vset),
            key=lambda v: (-inside[v], v),
        )
        vset.add(best)
        for u in G.adjacency[best]:
            inside[u] += 1
    return tuple(sorted(vset))


def gnp_graph(n: int, p: float, seed: int | str | random.Random = 0) -> Graph:
    """Erdos-Renyi ``G(n, p)`` sample with a deterministic per-seed stream."""
    if n < 0:
        raise ValueError(f"vertex count must be non-negative, got {n}")
    if not (0.0 <= p <= 1.0):
        raise ValueError(f"edge probability {p} outside [0, 1]")
    rng = seed if isinstance(seed, random.Random) else random.Random(f"gnp:{seed}")
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return graph_from_edges(n, edges)
