import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from densek.damks import (
    DamksLpInstance,
    a6_damks,
    build_damks_lp,
    check_cauchy_mass,
    distance_layers,
    gamma_ladder,
    min_degree_core,
    round_once,
)
from densek.rng import derive_rng
from densek.simplex import EQUAL, INFEASIBLE, OPTIMAL, solve_lp
from densek.graph import gnp_graph, graph_from_edges
from helpers import count_induced_edges, petersen


def complete_graph(n):
    return graph_from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


class TestLpConstruction:
    def test_shape(self):
        G = petersen()
        inst = build_damks_lp(G, root=0, gamma=3)
        lp = inst.lp
        assert len(lp.objective) == G.n + G.m
        assert lp.objective == [1.0] * G.n + [0.0] * G.m
        assert len(lp.rows) == 1 + G.n + 2 * G.m
        coeffs, relation, rhs = lp.rows[0]
        assert relation == EQUAL and rhs == 1.0
        assert coeffs[0] == 1.0 and sum(map(abs, coeffs)) == 1.0
        assert all(lp.bounds[i] == (0.0, 1.0) for i in range(G.n))

    def test_x_index(self):
        G = graph_from_edges(4, [(0, 1), (1, 3), (0, 2)])
        inst = build_damks_lp(G, root=1, gamma=1)
        assert inst.x_index(0, 1) == 4 + G.edges.index((0, 1))
        assert inst.x_index(3, 1) == inst.x_index(1, 3)

    def test_validation(self):
        G = complete_graph(3)
        with pytest.raises(ValueError):
            build_damks_lp(G, root=3, gamma=1)
        with pytest.raises(ValueError):
            build_damks_lp(G, root=0, gamma=0)

    @pytest.mark.parametrize("G,root,gamma,want", [
        (graph_from_edges(4, [(0, 1), (0, 2), (0, 3)]), 0, 1, 2.0),
        (graph_from_edges(2, [(0, 1)]), 0, 1, 2.0),
        (complete_graph(4), 0, 3, 4.0),
        (complete_graph(4), 0, 2, 3.0),
    ])
    def test_known_optima(self, G, root, gamma, want):
        sol = solve_lp(build_damks_lp(G, root, gamma).lp)
        assert sol.status == OPTIMAL
        assert sol.objective == pytest.approx(want)

    def test_isolated_root_infeasible(self):
        G = graph_from_edges(3, [(1, 2)])
        assert solve_lp(build_damks_lp(G, 0, 1).lp).status == INFEASIBLE

    def test_matches_scipy(self):
        opt = pytest.importorskip("scipy.optimize")
        rng = random.Random("damks-lp")
        for _ in range(12):
            G = gnp_graph(rng.randint(3, 7), 0.6, rng.randint(0, 99))
            root = rng.randrange(G.n)
            gamma = rng.choice([1, 2, 3])
            inst = build_damks_lp(G, root, gamma)
            sol = solve_lp(inst.lp)
            A_ub, b_ub, A_eq, b_eq = [], [], [], []
            for coeffs, rel, rhs in inst.lp.rows:
                if rel == EQUAL:
                    A_eq.append(coeffs)
                    b_eq.append(rhs)
                else:
                    A_ub.append(coeffs)
                    b_ub.append(rhs)
            ref = opt.linprog(
                inst.lp.objective,
                A_ub=A_ub or None,
                b_ub=b_ub or None,
                A_eq=A_eq,
                b_eq=b_eq,
                bounds=inst.lp.bounds,
                method="highs",
            )
            if ref.status == 0:
                assert sol.status == OPTIMAL
                assert sol.objective == pytest.approx(ref.fun, abs=1e-6)
            elif ref.status == 2:
                assert sol.status == INFEASIBLE


class TestDistanceLayers:
    def test_path(self):
        P5 = graph_from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4)])
        L = distance_layers(P5, 0)
        assert [sorted(s) for s in L.layers] == [[0], [1], [2], [3]]
        assert L.n0 == frozenset({0}) and L.n3 == frozenset({3})
        # vertex 4 sits at distance 4 and is outside every tracked layer
        assert all(4 not in s for s in L.layers)

    def test_disconnected(self):
        G = graph_from_edges(4, [(0, 1)])
        L = distance_layers(G, 0)
        assert L.n0 == {0} and L.n1 == {1}
        assert L.n2 == frozenset() and L.n3 == frozenset()

    def test_clique(self):
        L = distance_layers(complete_graph(5), 2)
        assert L.n0 == {2}
        assert L.n1 == {0, 1, 3, 4}

    def test_root_validation(self):
        with pytest.raises(ValueError):
            distance_layers(complete_graph(3), -1)


class TestRounding:
    def test_all_ones_keeps_windows(self):
        G = petersen()
        L = distance_layers(G, 0)
        out = round_once(G, L, [1.0] * G.n, derive_rng(0, "t"))
        assert set(out.s1) == set(L.n0 | L.n1 | L.n2)
        assert set(out.s2) == set(L.n1 | L.n2 | L.n3)
        assert out.q[0] == 1.0

    def test_all_zeros(self):
        G = petersen()
        L = distance_layers(G, 0)
        out = round_once(G, L, [0.0] * G.n, derive_rng(0, "t"))
        assert out.s1 == () and out.s2 == () and out.d1 == 0.0

    def test_deterministic_per_seed(self):
        G = petersen()
        L = distance_layers(G, 3)
        y = [0.5] * G.n
        a = round_once(G, L, y, derive_rng(7, "round"))
        b = round_once(G, L, y, derive_rng(7, "round"))
        assert (a.s1, a.s2) == (b.s1, b.s2)

    def test_length_check(self):
        G = petersen()
        with pytest.raises(ValueError):
            round_once(G, distance_layers(G, 0), [1.0], derive_rng(0))


class TestA6:
    def test_k4_power_of_two_ladder(self):
        # gamma 3 is not on the {1,2,4} ladder and gamma 4 is infeasible, so
        # the gamma-2 relaxation wins and its optimum rounds to a triangle.
        res = a6_damks(complete_graph(4), 4, seed=0)
        assert res.vertices == (0, 1, 2) and res.average_degree == 2.0

    def test_finds_clique_next_to_noise(self):
        K4K2 = graph_from_edges(
            6, [(u, v) for u in range(4) for v in range(u + 1, 4)] + [(4, 5)]
        )
        res = a6_damks(K4K2, 3, seed=0)
        assert res.vertices == (0, 1, 2) and res.edge_count == 3

    def test_edgeless_fallback(self):
        res = a6_damks(graph_from_edges(3, []), 2, seed=1)
        assert res.vertices == (0,) and res.edge_count == 0

    def test_deterministic(self):
        G = gnp_graph(9, 0.4, 5)
        a = a6_damks(G, 4, seed=11)
        b = a6_damks(G, 4, seed=11)
        assert a == b

    def test_size_and_consistency(self):
        rng = random.Random("a6-sweep")
        for _ in range(6):
            G = gnp_graph(rng.randint(4, 9), rng.uniform(0.3, 0.7), rng.randint(0, 50))
            k = rng.randint(2, G.n)
            res = a6_damks(G, k, seed=3, reps=4 * G.n)
            assert 1 <= len(res.vertices) <= k
            assert count_induced_edges(G, res.vertices) == res.edge_count

    def test_parameter_validation(self):
        with pytest.raises(ValueError):
            a6_damks(complete_graph(3), 0)
        with pytest.raises(ValueError):
            a6_damks(complete_graph(3), 2, reps=0)


class TestCoreAndLadder:
    def test_cycle_survives(self):
        C5 = graph_from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)])
        assert min_degree_core(C5, range(5), 2) == (0, 1, 2, 3, 4)
        assert min_degree_core(C5, range(5), 3) == ()

    def test_star_collapses(self):
        star = graph_from_edges(6, [(0, i) for i in range(1, 6)])
        assert min_degree_core(star, range(6), 1) == (0, 1, 2, 3, 4, 5)
        assert min_degree_core(star, range(6), 2) == ()

    def test_partial_vertex_set(self):
        K4 = complete_graph(4)
        assert min_degree_core(K4, [0, 1, 2], 2) == (0, 1, 2)
        with pytest.raises(ValueError):
            min_degree_core(K4, [0, 9], 1)

    def test_matches_independent_peeler(self):
        rng = random.Random("core")
        for _ in range(25):
            G = gnp_graph(rng.randint(3, 10), rng.uniform(0.2, 0.8), rng.randint(0, 99))
            thr = rng.randint(1, 4)
            got = set(min_degree_core(G, range(G.n), thr))
            # peel in the reverse order; the result must not depend on order
            alive = set(range(G.n))
            while True:
                doomed = [
                    v
                    for v in sorted(alive, reverse=True)
                    if sum(1 for u in G.adjacency[v] if u in alive) < thr
                ]
                if not doomed:
                    break
                alive.remove(doomed[0])
            assert got == alive
            assert all(
                sum(1 for u in G.adjacency[v] if u in got) >= thr for v in got
            )

    def test_gamma_ladder(self):
        assert gamma_ladder(1) == [1]
        assert gamma_ladder(6) == [1, 2, 4]
        assert gamma_ladder(16) == [1, 2, 4, 8, 16]
        assert gamma_ladder(17) == [1, 2, 4, 8, 16]
        with pytest.raises(ValueError):
            gamma_ladder(0)


class TestCauchyMass:
    @settings(max_examples=80)
    @given(st.lists(st.floats(0.0, 1.0), min_size=1, max_size=12))
    def test_always_holds(self, y):
        assert check_cauchy_mass(y)

    def test_dimension_validation(self):
        with pytest.raises(ValueError):
            check_cauchy_mass([1.0], n=0)
