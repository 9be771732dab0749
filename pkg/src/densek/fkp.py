"""Combinatorial densest-k-subgraph heuristics and their combination.

Six interchangeable candidate generators, all returning exactly k vertices:

* ``a1_matching`` — greedy matching, k/2 guaranteed edges when the matching
  fills up; the baseline everything else is measured against.
* ``a2_top_degrees`` — half the budget on the highest-degree vertices, the
  other half on outside vertices best attached to them.
* ``a3_neighborhoods`` — closed-neighborhood and common-neighbor candidates
  around single vertices and pairs.
* ``a4_edge_dense`` — run the three algorithms above inside the joint
  neighborhood of every edge.
* ``a5_walks`` — pick the pair joined by the most length-5 walks, slice the
  graph into walk layers between them, and harvest candidate sets from the
  middle layers (including a thresholded "good vertex" sweep and random
  sparsification).
* ``a6_damks`` (in :mod:`densek.damks`) — LP rounding.

``combined_dks`` runs any subset of the six on the graph itself and on the
graph with its top-degree half removed, pads everything to exactly k, and
keeps the densest candidate; with a fixed seed, enlarging the subset can
never make the answer worse.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from typing import Iterable

from .damks import a6_damks
from .graph import (
    Graph,
    SubgraphResult,
    induced_stats,
    induced_subgraph,
    pad_lowest_id,
    pick_best,
    remove_top_degrees,
    top_degree_vertices,
)
from .reduction import fixing_trim
from .rng import derive_rng, derive_seed

ALGO_NAMES = ("a1", "a2", "a3", "a4", "a5", "a6")


@dataclass(frozen=True)
class FkpParams:
    """Shared knobs for the walk-based generator and the combiner.

    ``epsilon_ladder`` and ``dstar_ladder`` enumerate slack factors and
    density guesses for the good-vertex thresholds; both must be positive
    and strictly increasing.  ``max_candidates`` caps how many candidate
    sets one a5 invocation may enumerate; ``sample_retries`` is the number
    of random sparsification draws.
    """

    epsilon_ladder: tuple[float, ...] = tuple(2.0**i for i in range(-8, 5))
    dstar_ladder: tuple[float, ...] = tuple(float(2**i) for i in range(9))
    seed: int = 0
    max_candidates: int = 512
    sample_retries: int = 32

    def __post_init__(self) -> None:
        for name in ("epsilon_ladder", "dstar_ladder"):
            ladder = getattr(self, name)
            if not ladder:
                raise ValueError(f"{name} must be non-empty")
            if any(v <= 0 for v in ladder):
                raise ValueError(f"{name} must be positive")
            if any(b <= a for a, b in zip(ladder, ladder[1:])):
                raise ValueError(f"{name} must be strictly increasing")
        if self.max_candidates < 1:
            raise ValueError("max_candidates must be >= 1")
        if self.sample_retries < 0:
            raise ValueError("sample_retries must be >= 0")

    @classmethod
    def for_graph(cls, G: Graph, seed: int = 0) -> "FkpParams":
        """Defaults with the density-guess ladder stretched to cover n."""
        top = 1
        while top < max(2, G.n):
            top *= 2
        ladder = []
        v = 1
        while v <= top:
            ladder.append(float(v))
            v *= 2
        return cls(dstar_ladder=tuple(ladder), seed=seed)


def _check_k(G: Graph, k: int, minimum: int = 1) -> None:
    if not (minimum <= k <= G.n):
        raise ValueError(f"k={k} out of range [{minimum}, {G.n}]")


def a1_matching(G: Graph, k: int) -> SubgraphResult:
    """Greedy matching truncated at ``floor(k/2)`` edges, padded to k vertices
    with the lowest free ids.  If the greedy matching reaches ``floor(k/2)``
    edges the result keeps at least that many."""
    _check_k(G, k)
    matched: set[int] = set()
    take = k // 2
    pairs = 0
    for u, v in G.edges:
        if pairs == take:
            break
        if u not in matched and v not in matched:
            matched.add(u)
            matched.add(v)
            pairs += 1
    return induced_stats(G, pad_lowest_id(G, matched, k))


def greedy_matching_size(G: Graph, k: int) -> int:
    """Number of edges the a1 greedy sweep collects (for certificates)."""
    matched: set[int] = set()
    take = k // 2
    pairs = 0
    for u, v in G.edges:
        if pairs == take:
            break
        if u not in matched and v not in matched:
            matched.add(u)
            matched.add(v)
            pairs += 1
    return pairs


def a2_top_degrees(G: Graph, k: int) -> SubgraphResult:
    """Top ``ceil(k/2)`` degrees plus the ``floor(k/2)`` outside vertices with
    the most neighbors among them.  Requires ``k >= 2``."""
    _check_k(G, k, minimum=2)
    heavy = set(top_degree_vertices(G, (k + 1) // 2))
    rest = [v for v in range(G.n) if v not in heavy]
    rest.sort(key=lambda v: (-sum(1 for u in G.adjacency[v] if u in heavy), v))
    chosen = heavy | set(rest[: k // 2])
    return induced_stats(G, chosen)


def attachment_counts(G: Graph, heavy: set[int]) -> dict[int, int]:
    return {
        v: sum(1 for u in G.adjacency[v] if u in heavy)
        for v in range(G.n)
        if v not in heavy
    }


def a3_neighborhoods(G: Graph, k: int) -> SubgraphResult:
    """Best of: each vertex with its highest-degree neighbors, and each pair
    with its lowest-id common neighbors; all candidates padded to k."""
    _check_k(G, k)
    candidates: list[tuple[int, ...]] = []
    for v in range(G.n):
        ranked = sorted(G.adjacency[v], key=lambda u: (-G.degree(u), u))
        candidates.append(pad_lowest_id(G, [v, *ranked[: k - 1]], k))
    if k >= 2:
        neigh = [set(G.adjacency[v]) for v in range(G.n)]
        for u in range(G.n):
            for v in range(u + 1, G.n):
                common = sorted(neigh[u] & neigh[v])
                if not common:
                    continue
                cand = [u, v, *common[: k - 2]]
                candidates.append(pad_lowest_id(G, cand[:k], k))
    return pick_best(induced_stats(G, c) for c in candidates)


def a4_edge_dense(G: Graph, k: int) -> SubgraphResult:
    """Run a1/a2/a3 inside ``N(u) union N(v)`` for every edge ``(u, v)`` and
    keep the best candidate (the plain a1 answer is always in the pool)."""
    _check_k(G, k)
    candidates: list[SubgraphResult] = [a1_matching(G, k)]
    for u, v in G.edges:
        verts = set(G.adjacency[u]) | set(G.adjacency[v])
        sub, ids = induced_subgraph(G, verts)
        kk = min(k, sub.n)
        local = [a1_matching(sub, kk), a3_neighborhoods(sub, kk)]
        if kk >= 2:
            local.append(a2_top_degrees(sub, kk))
        for res in local:
            mapped = [ids[x] for x in res.vertices]
            candidates.append(induced_stats(G, pad_lowest_id(G, mapped, k)))
    return pick_best(candidates)


def _walk_powers(G: Graph, top: int) -> list[list[list[int]]]:
    """``powers[l]`` (1-based) counts walks of exactly ``l`` edges; entry 0 is
    unused.  Exact integer arithmetic throughout."""
    n = G.n
    first = [[0] * n for _ in range(n)]
    for u, v in G.edges:
        first[u][v] = 1
        first[v][u] = 1
    powers: list[list[list[int]]] = [[], first]
    for _ in range(top - 1):
        prev = powers[-1]
        nxt = [[0] * n for _ in range(n)]
        for u in range(n):
            row = prev[u]
            acc = nxt[u]
            for w in range(n):
                c = row[w]
                if c:
                    for z in G.adjacency[w]:
                        acc[z] += c
        powers.append(nxt)
    return powers


@dataclass(frozen=True)
class WalkLayers:
    """Vertices reachable at each intermediate position of a length-5 walk
    from ``u`` to ``v``: ``layer(i)`` holds every w with a length-i walk from
    u and a length-(5-i) walk to v."""

    u: int
    v: int
    n1: frozenset[int]
    n2: frozenset[int]
    n3: frozenset[int]
    n4: frozenset[int]

    def layer(self, i: int) -> frozenset[int]:
        return (self.n1, self.n2, self.n3, self.n4)[i - 1]


def build_walk_layers(G: Graph, u: int, v: int) -> WalkLayers:
    powers = _walk_powers(G, 4)
    sets = []
    for i in range(1, 5):
        fwd = powers[i][u]
        back = powers[5 - i][v]
        sets.append(frozenset(w for w in range(G.n) if fwd[w] and back[w]))
    return WalkLayers(u=u, v=v, n1=sets[0], n2=sets[1], n3=sets[2], n4=sets[3])


def _trim_to(G: Graph, verts: Iterable[int], k: int) -> tuple[int, ...]:
    vs = tuple(sorted(set(verts)))
    if len(vs) > k:
        return fixing_trim(G, vs, k)
    return vs


def _good_vertex_candidates(
    G: Graph,
    layers: WalkLayers,
    powers: list[list[list[int]]],
    tau: float,
    k: int,
) -> list[tuple[int, ...]]:
    """Sweep the layer-2/layer-3 cut edges whose walk-count load reaches
    ``tau``, repeatedly collecting an endpoint well connected to the outer
    layer on its side and deleting its edges; returns the two side sets
    augmented by their outer layers."""
    u, v = layers.u, layers.v
    w2u = powers[2][u]
    w2v = powers[2][v]
    cut: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for a, b in G.edges:
        oriented = None
        if a in layers.n2 and b in layers.n3:
            oriented = (a, b)
        if b in layers.n2 and a in layers.n3:
            alt = (b, a)
            if oriented is None or alt < oriented:
                oriented = alt
        if oriented and oriented not in seen:
            seen.add(oriented)
            cut.append(oriented)
    cut.sort()
    surviving = [e for e in cut if w2u[e[0]] * w2v[e[1]] >= tau]
    need = math.sqrt(tau)
    side2: list[int] = []
    side3: list[int] = []
    collected = 0
    while surviving and collected < k:
        w, z = surviving[0]
        if sum(1 for t in G.adjacency[w] if t in layers.n1) >= need:
            good = w
            side2.append(w)
        elif sum(1 for t in G.adjacency[z] if t in layers.n4) >= need:
            good = z
            side3.append(z)
        else:
            surviving.pop(0)
            continue
        collected += 1
        surviving = [e for e in surviving if good not in e]
    out = []
    if side2:
        out.append(tuple(sorted(set(side2) | layers.n1)))
    if side3:
        out.append(tuple(sorted(set(side3) | layers.n4)))
    return out


def a5_walks(G: Graph, k: int, params: FkpParams | None = None) -> SubgraphResult:
    """Walk-layer candidate harvest around the pair with the most length-5
    walks; falls back to a1 when no such walk exists."""
    _check_k(G, k)
    if params is None:
        params = FkpParams.for_graph(G)
    powers = _walk_powers(G, 5)
    w5 = powers[5]
    best_pair = None
    best_count = 0
    for a in range(G.n):
        row = w5[a]
        for b in range(G.n):
            if a != b and row[b] > best_count:
                best_count = row[b]
                best_pair = (a, b)
    if best_pair is None:
        return a1_matching(G, k)
    u, v = best_pair
    fwd = [None, *(powers[i][u] for i in range(1, 6))]
    back = [None, *(powers[i][v] for i in range(1, 6))]
    sets = []
    for i in range(1, 5):
        sets.append(frozenset(w for w in range(G.n) if fwd[i][w] and back[5 - i][w]))
    layers = WalkLayers(u=u, v=v, n1=sets[0], n2=sets[1], n3=sets[2], n4=sets[3])
    d_max = max(G.degree(x) for x in range(G.n))

    raw: list[tuple[int, ...]] = []
    middle = sorted(layers.n2 | layers.n3)
    raw.append(_trim_to(G, middle, k))

    rng = derive_rng(params.seed, "a5-sample", u, v)
    keep_p = min(1.0, k / (2.0 * d_max * d_max))
    for _ in range(params.sample_retries):
        sampled = [w for w in middle if rng.random() < keep_p]
        if sampled:
            raw.append(_trim_to(G, sampled, k))

    w3v = powers[3][v]
    w3u = powers[3][u]
    if layers.n2:
        star = min(layers.n2, key=lambda w: (-w3v[w], w))
        raw.append(_trim_to(G, (set(G.adjacency[star]) & layers.n3) | layers.n4, k))
    if layers.n3:
        star = min(layers.n3, key=lambda w: (-w3u[w], w))
        raw.append(_trim_to(G, (set(G.adjacency[star]) & layers.n2) | layers.n1, k))

    taus: set[float] = set()
    for dstar in params.dstar_ladder:
        closed = (
            min(
                dstar**3 / (k**0.6 * d_max**1.6),
                dstar ** (5.0 / 3.0) / (k ** (1.0 / 3.0) * d_max ** (2.0 / 3.0)),
            ),
            min(dstar**3 / (k**0.4 * d_max**2), dstar ** (5.0 / 3.0) / d_max ** (4.0 / 3.0)),
        )
        for eps in (*params.epsilon_ladder, *closed):
            if eps <= 0:
                continue
            taus.add(dstar**5 / (2.0 * d_max**2 * eps * k))
            taus.add(dstar**5 / (2.0 * d_max**4 * eps))
    for tau in sorted(taus, reverse=True):
        if len(raw) >= params.max_candidates:
            break
        for cand in _good_vertex_candidates(G, layers, powers, tau, k):
            raw.append(_trim_to(G, cand, k))

    unique = sorted(set(raw))
    return pick_best(
        induced_stats(G, pad_lowest_id(G, cand, k)) for cand in unique if cand
    )


def combined_dks(
    G: Graph,
    k: int,
    params: FkpParams | None = None,
    include: Iterable[str] = ALGO_NAMES,
    a6_reps: int | None = None,
) -> SubgraphResult:
    """Best exactly-k candidate over the selected algorithms, each run both on
    ``G`` and on ``G`` with its ``ceil(k/2)`` highest-degree vertices removed.

    Candidates are padded (lowest ids first) to exactly k before comparison.
    Random streams are keyed by ``(seed, branch, algorithm)`` independently of
    ``include``, so with a fixed seed the result is monotone in the algorithm
    subset.
    """
    _check_k(G, k)
    chosen = set(include)
    unknown = chosen.difference(ALGO_NAMES)
    if unknown:
        raise ValueError(f"unknown algorithms {sorted(unknown)}")
    if not chosen:
        raise ValueError("no algorithms selected")
    if params is None:
        params = FkpParams.for_graph(G)

    branches: list[tuple[str, Graph, tuple[int, ...] | None]] = [("main", G, None)]
    if (k + 1) // 2 < G.n:
        peeled, ids = remove_top_degrees(G, k)
        branches.append(("peeled", peeled, ids))

    candidates: list[SubgraphResult] = []
    for branch, bg, ids in branches:
        kk = min(k, bg.n)
        branch_params = (
            params
            if branch == "main"
            else dataclasses.replace(
                params, seed=derive_seed(params.seed, branch, "a5")
            )
        )
        a6_seed = (
            params.seed if branch == "main" else derive_seed(params.seed, branch, "a6")
        )
        for algo in ALGO_NAMES:
            if algo not in chosen:
                continue
            if algo == "a1":
                res = a1_matching(bg, kk)
            elif algo == "a2":
                if kk < 2:
                    continue
                res = a2_top_degrees(bg, kk)
            elif algo == "a3":
                res = a3_neighborhoods(bg, kk)
            elif algo == "a4":
                res = a4_edge_dense(bg, kk)
            elif algo == "a5":
                res = a5_walks(bg, kk, branch_params)
            else:
                reps = a6_reps if a6_reps is not None else 16 * bg.n
                res = a6_damks(bg, kk, reps=reps, seed=a6_seed)
            verts = res.vertices if ids is None else tuple(ids[x] for x in res.vertices)
            if len(verts) > k:
                verts = fixing_trim(G, verts, k)
            candidates.append(induced_stats(G, pad_lowest_id(G, verts, k)))
    return pick_best(candidates)
