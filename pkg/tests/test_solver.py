"""Structural solver: decomposition, forcing stages, component coloring, full solves."""

from __future__ import annotations

import pytest
from hypothesis import given, settings

from dimatch import gadget, oracle_solve
from dimatch.coloring import BLACK, WHITE
from dimatch.graph import Graph
from dimatch.solver import (
    CLASS_VIOLATION,
    NO_DIM,
    NO_DIM_WITH_ANCHOR,
    AnchorContradiction,
    AnchorSolver,
    SolverConfig,
    anchor_edges,
    decompose,
    dim_with_anchor,
    solve,
)

from conftest import cycle, path, small_connected_graphs


def spine(extra_edges, n, weights=None):
    """Anchor scaffold: 0-1 is the anchor, 2 witnesses the 3-path, 3 and 4
    hang off the endpoints as level-1 vertices feeding levels 2+."""
    base = [(0, 1), (0, 2), (0, 3), (1, 4)]
    return Graph(n, base + extra_edges, weights)


class TestAnchorEdges:
    def test_p3_both_edges(self):
        got = anchor_edges(path(3))
        assert [e for e, _ in got] == [(0, 1), (1, 2)]

    def test_triangle_none(self):
        assert anchor_edges(cycle(3)) == []

    def test_p4_all_three(self):
        assert len(anchor_edges(path(4))) == 3


class TestDecompose:
    def test_p6_structure(self):
        d = decompose(path(6), (1, 2))
        assert d.levels[1] == {0, 3}
        assert d.level2_singles == (4,)
        assert d.pools == {4: (5,)}
        assert d.level2_pairs == ()
        assert d.shared3 == frozenset()
        assert d.deep == frozenset()

    def test_c4_level1_dependent(self):
        with pytest.raises(AnchorContradiction) as err:
            decompose(cycle(4), (0, 1))
        assert err.value.reason == "level1-not-independent"

    def test_level2_path_malformed(self):
        g = Graph(7, [(0, 1), (0, 2), (0, 3), (3, 4), (3, 5), (3, 6), (4, 5), (5, 6)])
        with pytest.raises(AnchorContradiction) as err:
            decompose(g, (0, 1))
        assert err.value.reason == "level2-structure"

    def test_c6_level2_pair(self):
        d = decompose(cycle(6), (0, 1))
        assert d.level2_pairs == ((3, 4),)

    def test_shared_level3_detected(self):
        g = spine([(3, 5), (4, 6), (5, 7), (6, 7), (5, 8), (6, 9)], 10)
        d = decompose(g, (0, 1))
        assert d.shared3 == {7}
        assert d.pools == {5: (8,), 6: (9,)}

    def test_level3_odd_cycle_rejected(self):
        g = spine(
            [(3, 5), (3, 6), (3, 7), (5, 8), (6, 9), (7, 10), (8, 9), (9, 10), (8, 10)],
            11,
        )
        with pytest.raises(AnchorContradiction) as err:
            decompose(g, (0, 1))
        assert err.value.reason == "level3-odd-cycle"


class TestForcingStages:
    def test_deep_triangle_commit(self):
        g = spine([(3, 5), (5, 6), (6, 7), (6, 8), (7, 8)], 9)
        solver = AnchorSolver(g, (0, 1))
        out = solver.run()
        assert out.verdict == NO_DIM_WITH_ANCHOR
        assert "deep-triangle-commit" in out.trace
        assert (7, 8) in solver.committed
        # no anchor rescues this graph; the reference agrees
        assert solve(g).verdict == NO_DIM
        assert not oracle_solve(g).feasible

    def test_double_contact_commit(self):
        g = spine([(3, 5), (4, 6), (5, 7), (6, 8), (6, 9), (7, 8), (7, 9), (6, 10)], 11)
        out = dim_with_anchor(g, (0, 1))
        assert out.found
        assert "contact-commit" in out.trace
        assert (5, 7) in out.matching
        assert (6, 10) in out.matching

    def test_shared_contact_commit(self):
        g = spine([(3, 5), (4, 6), (5, 7), (6, 7), (5, 8), (7, 8), (6, 9)], 10)
        out = dim_with_anchor(g, (0, 1))
        assert out.found
        assert "contact-commit" in out.trace
        assert (5, 8) in out.matching and (6, 9) in out.matching

    def test_cycle4_through_owner_whitens_pool(self):
        g = spine([(3, 5), (5, 6), (5, 7), (6, 8), (7, 8)], 9)
        out = dim_with_anchor(g, (0, 1))
        assert out.verdict == NO_DIM_WITH_ANCHOR
        assert out.reason == "candidate-exhausted"
        # matches the reference answer
        assert not any(
            (0, 1) in m for m in (oracle_solve(g, mode="enumerate").all_dims or ())
        )

    def test_lone_candidate_commit(self):
        out = dim_with_anchor(path(6), (1, 2))
        assert out.found
        assert out.matching == {(1, 2), (4, 5)}
        assert "lone-candidate-commit" in out.trace

    def test_pendant_prune_keeps_cheapest(self):
        weights = {(5, 6): 3.0, (5, 7): 1.0, (5, 8): 2.0}
        g = spine([(3, 5), (5, 6), (5, 7), (5, 8)], 9, weights)
        solver = AnchorSolver(g, (0, 1), config=SolverConfig(minimize=True))
        out = solver.run()
        assert out.found
        assert (5, 7) in out.matching
        assert "pendant-prune" in out.trace

    def test_isolated_deep_forces_commit(self):
        g = spine([(3, 5), (5, 6), (5, 7), (6, 8)], 9)
        out = dim_with_anchor(g, (0, 1))
        assert out.found
        assert "isolated-deep-white" in out.trace
        assert (5, 6) in out.matching

    def test_isolated_deep_double_contact_fails(self):
        g = spine([(3, 5), (5, 6), (5, 7), (6, 8), (7, 8)], 9)
        out = dim_with_anchor(g, (0, 1))
        assert out.verdict == NO_DIM_WITH_ANCHOR
        ref = oracle_solve(g, mode="enumerate")
        assert not any((0, 1) in m for m in (ref.all_dims or ()))


class TestComponentColoring:
    def two_pool_graph(self):
        edges = [
            (3, 5), (4, 6),          # level-1 feeders to the two pool owners
            (5, 7), (5, 8),          # pool of 5
            (6, 9), (6, 10),         # pool of 6
            (7, 9), (8, 10),         # cross contacts
        ]
        return spine(edges, 11)

    def test_propagation_example(self):
        g = self.two_pool_graph()
        solver = AnchorSolver(g, (0, 1))
        d = solver.run_forcing()
        free, coupled = solver.classify_components(d)
        assert coupled == []
        assert len(free) == 1
        task = free[0]
        assert task.singles == (5, 6)
        col = solver.propagate_component(d, task, 7)
        assert col is not None
        assert col.state[7] == BLACK
        assert col.state[8] == WHITE
        assert col.state[9] == WHITE
        assert col.state[10] == BLACK

    def test_full_solve_matches_reference(self):
        g = self.two_pool_graph()
        out = dim_with_anchor(g, (0, 1))
        assert out.found
        ref = oracle_solve(g, mode="enumerate")
        assert out.matching in ref.all_dims

    def test_three_parallel_contacts_contradict(self):
        edges = [
            (3, 5), (4, 6),
            (5, 7), (5, 8), (5, 9),
            (6, 10), (6, 11), (6, 12),
            (7, 10), (8, 11), (9, 12),
        ]
        g = spine(edges, 13)
        out = dim_with_anchor(g, (0, 1))
        assert out.verdict == NO_DIM_WITH_ANCHOR
        assert out.reason == "component-infeasible"
        ref = oracle_solve(g, mode="enumerate")
        assert not any((0, 1) in m for m in (ref.all_dims or ()))

    def test_trivial_components_take_min_weight(self):
        weights = {(5, 7): 3.0, (5, 8): 1.0, (6, 9): 2.0}
        g = spine([(3, 5), (4, 6), (5, 7), (5, 8), (6, 9)], 10, weights)
        out = dim_with_anchor(g, (0, 1), config=SolverConfig(minimize=True))
        assert out.found
        assert (5, 8) in out.matching and (6, 9) in out.matching
        # anchored minimum: cheapest matching that contains the anchor edge
        anchored = [
            g.matching_weight(m)
            for m in oracle_solve(g, mode="enumerate").all_dims
            if (0, 1) in m
        ]
        assert out.weight == min(anchored)
        # the global minimum may use a different anchor; full solve finds it
        best = solve(g, minimize=True)
        assert best.weight == oracle_solve(g, mode="min_weight").best[1]


class TestDeepHandling:
    def chain_graph(self):
        """One pool of three, each pool vertex hanging a deep 3-chain."""
        edges = [(3, 4)]
        edges += [(4, 5), (4, 6), (4, 7)]
        edges += [(5, 8), (8, 11), (11, 14)]
        edges += [(6, 9), (9, 12), (12, 15)]
        edges += [(7, 10), (10, 13), (13, 16)]
        return Graph(17, [(0, 1), (0, 2), (0, 3)] + edges)

    def test_coupled_enumeration_bounded(self):
        g = self.chain_graph()
        solver = AnchorSolver(g, (0, 1))
        d = solver.run_forcing()
        free, coupled = solver.classify_components(d)
        assert free == [] and len(coupled) == 1
        assert coupled[0].seeds == (5, 6, 7)
        colorings = solver.enumerate_core_colorings(d)
        assert 1 <= len(colorings) <= 3

    def test_deep_solve_agrees_with_reference(self):
        g = self.chain_graph()
        out = solve(g, strict=True)
        ref = oracle_solve(g)
        assert out.found == ref.feasible
        if out.found:
            assert g.is_dim(out.matching)

    def test_stray_pieces_resolved(self):
        out = dim_with_anchor(path(10), (0, 1))
        assert out.verdict == NO_DIM_WITH_ANCHOR
        out2 = dim_with_anchor(path(10), (1, 2))
        assert out2.found
        assert "stray-handoff" in out2.trace

    def test_pluggable_sub_solver_is_called(self):
        calls = []

        def recording(sub, coloring, minimize=False):
            calls.append((sub.n, tuple(coloring.state)))
            from dimatch.subsolver import solve_precolored

            return solve_precolored(sub, coloring, minimize)

        g = self.chain_graph()
        out = solve(g, sub_solver=recording)
        assert out.found
        assert calls, "sub-solver should receive the deep residue"

    def test_sub_solver_infeasible_propagates(self):
        def refuse(sub, coloring, minimize=False):
            return None

        g = self.chain_graph()
        out = solve(g, sub_solver=refuse)
        assert out.verdict == NO_DIM


class TestClassViolation:
    def four_branch_hub(self):
        edges = [(0, 1), (0, 2)]
        for i in range(4):
            a = 3 + i
            u = 7 + i
            t, t2 = 11 + 2 * i, 12 + 2 * i
            edges += [(0, a), (a, u), (u, t), (u, t2)]
        hub, tail = 19, 20
        edges += [(hub, 11), (hub, 13), (hub, 15), (hub, 17), (hub, tail)]
        return Graph(21, edges)

    def test_four_coupled_components_flagged(self):
        g = self.four_branch_hub()
        out = dim_with_anchor(g, (0, 1))
        assert out.verdict == CLASS_VIOLATION
        assert out.witness is not None and out.witness.pattern == "spider"
        from dimatch.patterns import verify_witness

        assert verify_witness(g, out.witness, spider_legs=(1, 2, 4))

    def test_two_hubs_proceed(self):
        edges = [(0, 1), (0, 2)]
        for i in range(2):
            a = 3 + i
            u = 5 + i
            t, t2 = 7 + 2 * i, 8 + 2 * i
            edges += [(0, a), (a, u), (u, t), (u, t2)]
        # separate deep hubs, each with a tail so nothing is isolated
        edges += [(7, 11), (11, 13), (9, 12), (12, 14)]
        g = Graph(15, edges)
        out = solve(g, strict=True)
        ref = oracle_solve(g)
        assert out.found == ref.feasible

    def test_verify_class_rejects_spider_inputs(self):
        out = solve(gadget("s_1_2_4"), verify_class=True)
        assert out.verdict == CLASS_VIOLATION
        assert out.witness is not None


class TestSolveEndToEnd:
    def test_diamond_via_closure(self):
        out = solve(gadget("diamond"))
        assert out.found and out.matching == {(1, 3)}

    def test_c4_no_dim(self):
        assert solve(cycle(4)).verdict == NO_DIM

    def test_c6(self):
        out = solve(cycle(6))
        assert out.found and len(out.matching) == 2

    def test_k4_rejected(self):
        out = solve(gadget("k4"))
        assert out.verdict == NO_DIM and out.reason == "clique4"

    def test_gem_no_dim(self):
        assert solve(gadget("gem")).verdict == NO_DIM

    def test_single_edge_scan(self):
        out = solve(gadget("claw"))
        assert out.found and len(out.matching) == 1
        assert "single-edge" in out.trace

    def test_disconnected_components_combine(self):
        g = Graph(9, [(0, 1), (2, 3), (3, 4), (5, 6), (6, 7), (7, 8)])
        out = solve(g)
        assert out.found
        assert g.is_dim(out.matching)

    def test_disconnected_failure_propagates(self):
        g = Graph(7, [(0, 1), (1, 2), (3, 4), (4, 5), (5, 6), (3, 6)])
        assert solve(g).verdict == NO_DIM  # second piece is a 4-cycle

    def test_isolated_vertices_ignored(self):
        g = Graph(3, [(0, 1)])
        out = solve(g)
        assert out.found and out.matching == {(0, 1)}

    def test_min_weight_prefers_light_single(self):
        g = Graph(3, [(0, 1), (1, 2)], weights={(0, 1): 5, (1, 2): 2})
        out = solve(g, minimize=True)
        assert out.matching == {(1, 2)} and out.weight == 2

    @given(small_connected_graphs(min_n=2, max_n=7))
    @settings(max_examples=120, deadline=None)
    def test_matches_reference_when_in_class(self, g: Graph):
        from dimatch.patterns import find_k4

        if find_k4(g) is not None:
            return
        out = solve(g, minimize=True, strict=True)
        ref = oracle_solve(g, mode="min_weight")
        assert out.found == ref.feasible
        if out.found:
            assert g.is_dim(out.matching)
            assert out.weight == ref.best[1]


class TestAnchorLog:
    def test_log_collects_all_anchors(self):
        log: list = []
        out = solve(path(5), anchor_log=log)
        assert out.found
        assert log, "anchor attempts should be recorded"
        assert all(len(entry) == 4 for entry in log)
