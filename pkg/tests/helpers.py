"""Shared fixtures-in-spirit: reference constructions and independent oracles
used across the test modules.  Everything here is deliberately written by a
different route than the library code it checks."""

from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction

import numpy as np

from densek.graph import Graph, graph_from_edges
from densek.simplex import EQUAL, GREATER_EQUAL, LESS_EQUAL, LinearProgram


def petersen() -> Graph:
    """Outer 5-cycle 0..4, inner pentagram 5..9, spokes i -- i+5."""
    edges = []
    for i in range(5):
        edges.append((i, (i + 1) % 5))
        edges.append((5 + i, 5 + (i + 2) % 5))
        edges.append((i, i + 5))
    return graph_from_edges(10, edges)


def random_graph(rng: random.Random, n_lo: int, n_hi: int,
                 p_lo: float = 0.15, p_hi: float = 0.85) -> Graph:
    n = rng.randint(n_lo, n_hi)
    p = rng.uniform(p_lo, p_hi)
    edges = [
        (u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p
    ]
    return graph_from_edges(n, edges)


def is_connected(G: Graph) -> bool:
    if G.n == 0:
        return True
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for u in G.adjacency[v]:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return len(seen) == G.n


def connected_random_graph(rng: random.Random, n_lo: int, n_hi: int) -> Graph:
    while True:
        G = random_graph(rng, n_lo, n_hi, p_lo=0.25, p_hi=0.9)
        if G.n >= 1 and is_connected(G):
            return G


def subsets(items, size):
    return itertools.combinations(items, size)


def count_induced_edges(G: Graph, vertices) -> int:
    """Edge-list recount, independent of Graph.adjacency."""
    inside = set(vertices)
    return sum(1 for u, v in G.edges if u in inside and v in inside)


def exact_best_subsets(G: Graph, sizes) -> tuple[Fraction, list[tuple[int, ...]]]:
    """All optimal vertex sets by itertools enumeration (average degree as an
    exact fraction; the empty set counts as 0)."""
    best = Fraction(-1)
    out: list[tuple[int, ...]] = []
    for size in sizes:
        for combo in itertools.combinations(range(G.n), size):
            ec = count_induced_edges(G, combo)
            avg = Fraction(2 * ec, size) if size else Fraction(0)
            if avg > best:
                best = avg
                out = [combo]
            elif avg == best:
                out.append(combo)
    return best, out


def brute_min_cut(node_count, arcs, source, sink):
    """Minimum s-t cut by enumerating source sides; None capacity = infinite.

    Returns (value, sides) with every minimising side, value a Fraction or
    math.inf.
    """
    others = [v for v in range(node_count) if v not in (source, sink)]
    best = None
    sides = []
    for r in range(len(others) + 1):
        for extra in itertools.combinations(others, r):
            side = frozenset({source, *extra})
            value = Fraction(0)
            infinite = False
            for tail, head, cap in arcs:
                if tail in side and head not in side:
                    if cap is None:
                        infinite = True
                        break
                    value += Fraction(cap)
            if infinite:
                continue
            if best is None or value < best:
                best = value
                sides = [side]
            elif value == best:
                sides.append(side)
    return (math.inf if best is None else best), sides


def lp_feasible(lp: LinearProgram, x, tol: float = 1e-7) -> bool:
    for j, (lo, hi) in enumerate(lp.bounds):
        if x[j] < lo - tol or x[j] > hi + tol:
            return False
    for coeffs, relation, rhs in lp.rows:
        lhs = float(np.dot(coeffs, x))
        if relation == LESS_EQUAL and lhs > rhs + tol:
            return False
        if relation == GREATER_EQUAL and lhs < rhs - tol:
            return False
        if relation == EQUAL and abs(lhs - rhs) > tol:
            return False
    return True


def vertex_enum_optimum(lp: LinearProgram, tol: float = 1e-7):
    """Best objective over basic points: solve every square subsystem drawn
    from constraint hyperplanes and bound faces, keep feasible ones.  Only
    valid for LPs whose feasible set is a bounded polytope (finite boxes)."""
    nv = len(lp.objective)
    planes: list[tuple[list[float], float]] = []
    for coeffs, _, rhs in lp.rows:
        planes.append((list(coeffs), rhs))
    for j, (lo, hi) in enumerate(lp.bounds):
        unit = [0.0] * nv
        unit[j] = 1.0
        if math.isfinite(lo):
            planes.append((unit, lo))
        if math.isfinite(hi):
            planes.append((list(unit), hi))
    best = None
    best_x = None
    for combo in itertools.combinations(range(len(planes)), nv):
        A = np.array([planes[i][0] for i in combo])
        b = np.array([planes[i][1] for i in combo])
        try:
            x = np.linalg.solve(A, b)
        except np.linalg.LinAlgError:
            continue
        if not lp_feasible(lp, x, tol):
            continue
        value = float(np.dot(lp.objective, x))
        if best is None or value < best:
            best = value
            best_x = x
    if best is None:
        return "infeasible", None, None
    return "optimal", best, best_x


def random_box_lp(rng: random.Random, max_vars: int = 4) -> LinearProgram:
    """A random LP over a finite box, so the optimum sits on a vertex."""
    nv = rng.randint(1, max_vars)
    lp = LinearProgram(
        objective=[round(rng.uniform(-5, 5), 3) for _ in range(nv)],
        bounds=[
            tuple(sorted((round(rng.uniform(-4, 1), 3), round(rng.uniform(0, 5), 3))))
            for _ in range(nv)
        ],
    )
    for _ in range(rng.randint(0, 2 * nv)):
        coeffs = [round(rng.uniform(-3, 3), 3) for _ in range(nv)]
        relation = rng.choice([LESS_EQUAL, GREATER_EQUAL, EQUAL])
        rhs = round(rng.uniform(-6, 6), 3)
        if relation == EQUAL and rng.random() < 0.7:
            # Random equalities are usually infeasible over a box; anchor most
            # of them to a feasible interior point instead.
            mid = [(lo + hi) / 2.0 for lo, hi in lp.bounds]
            rhs = round(float(np.dot(coeffs, mid)), 6)
        lp.add_row(coeffs, relation, rhs)
    return lp


def scalar_grid_oracle(delta: float, algos) -> tuple[float, tuple[float, float, float], int]:
    """Triple-loop reference for the lattice max-min: g outer, then d, then K,
    strict improvement only (first-attained argmax)."""
    from densek.ratio import ExponentPoint, ratio_exponent

    steps = int(round(1.0 / delta))
    assert abs(steps * delta - 1.0) < delta / 2
    best = -math.inf
    arg = None
    count = 0
    for i in range(steps + 1):
        g = i * delta
        for j in range(i, steps + 1):
            d = j * delta
            for l in range(i, steps + 1):
                K = l * delta
                count += 1
                point = ExponentPoint(g=g, K=K, d=d)
                value = math.inf
                applicable = False
                for algo in sorted(algos):
                    r = ratio_exponent(algo, point)
                    if r is None:
                        continue
                    applicable = True
                    value = min(value, r)
                if applicable and value > best:
                    best = value
                    arg = (g, K, d)
    assert arg is not None
    return best, arg, count


def best_edges_by_size(G: Graph) -> list[int]:
    """``out[s]`` = the most edges any s-vertex subset induces, found by a
    full bitmask sweep (edge counts build up one low bit at a time)."""
    masks = [0] * G.n
    for u, v in G.edges:
        masks[u] |= 1 << v
        masks[v] |= 1 << u
    edge_count = [0] * (1 << G.n)
    out = [0] * (G.n + 1)
    for m in range(1, 1 << G.n):
        low = m & -m
        rest = m ^ low
        ec = edge_count[rest] + (masks[low.bit_length() - 1] & rest).bit_count()
        edge_count[m] = ec
        s = m.bit_count()
        if ec > out[s]:
            out[s] = ec
    return out


def best_density_at_least(profile: list[int], k: int) -> Fraction:
    return max(Fraction(2 * profile[s], s) for s in range(k, len(profile)))


def best_density_at_most(profile: list[int], k: int) -> Fraction:
    best = Fraction(0)
    for s in range(1, k + 1):
        best = max(best, Fraction(2 * profile[s], s))
    return best
