import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import cmgraph as cm
from cmgraph.errors import (
    BlockedStartError,
    LoopEdgeError,
    NotAChainGraphError,
    UnknownNodeError,
)
from cmgraph.propcheck import GeneratorConfig, random_graph

from conftest import G


@st.composite
def graphs(draw, classes=("CG", "CMG", "AnG"), max_nodes=6):
    cls = draw(st.sampled_from(classes))
    n = draw(st.integers(2, max_nodes))
    density = draw(st.floats(0.0, 0.8))
    seed = draw(st.integers(0, 2**48))
    return random_graph(GeneratorConfig(n, density, seed, cls))


HYP = settings(max_examples=80, deadline=None)


class TestBuild:
    def test_minimal_arrow(self):
        g = cm.build_graph("ab", [("a", "b", cm.ARROW)])
        assert g.has_edge("a", "b", cm.ARROW)
        assert len(g.edges) == 1

    def test_loop_rejected(self):
        with pytest.raises(LoopEdgeError):
            cm.build_graph("a", [("a", "a", cm.LINE)])

    def test_unknown_node_rejected(self):
        with pytest.raises(UnknownNodeError):
            cm.build_graph("ab", [("a", "c", cm.LINE)])

    def test_multi_edge_different_types(self):
        g = cm.build_graph("ab", [("a", "b", cm.ARC), ("a", "b", cm.ARROW)])
        assert len(g.edges) == 2
        assert not g.is_simple

    def test_same_type_deduplicates(self):
        edges = [("a", "b", cm.LINE), ("b", "a", cm.LINE)]
        assert cm.build_graph("ab", edges) == cm.build_graph("ab", edges[:1])

    @given(graphs())
    @HYP
    def test_dedup_idempotent(self, g):
        doubled = g.edges_as_triples() + g.edges_as_triples()
        assert cm.build_graph(g.nodes, doubled) == g


class TestCycles:
    def test_semidirected_cycle_with_arrow(self):
        assert cm.has_semidirected_cycle_with_arrow(G("a -> b; b -- c; c -> a"))

    def test_all_line_cycle_allowed(self):
        assert not cm.has_semidirected_cycle_with_arrow(G("a -- b; b -- c; c -- a"))

    def test_no_cycle(self):
        assert not cm.has_semidirected_cycle_with_arrow(G("a -> b; b -> c"))

    def test_arcs_never_form_cycles(self):
        assert not cm.has_semidirected_cycle_with_arrow(G("a <-> b; b <-> c; c <-> a"))


class TestClassify:
    def test_arc_only_is_ang(self):
        flags = cm.classify(G("a <-> b; nodes: a b c"))
        assert flags == {cm.CMG, cm.ANG}

    def test_arc_with_anterior_path_not_ang(self):
        g = G("k <-> q; k -> j; j -- l; l -- h; h -> q")
        flags = cm.classify(g)
        assert cm.CMG in flags and cm.ANG not in flags

    def test_empty_graph_all_classes(self):
        assert cm.classify(G("nodes: a b c")) == {cm.UG, cm.DAG, cm.CG, cm.CMG, cm.ANG}

    def test_semidirected_cycle_nothing(self):
        assert cm.classify(G("a -> b; b -- c; c -> a")) == frozenset()

    def test_multi_edge_not_simple_not_ang(self):
        flags = cm.classify(G("a <-> b; a -- b"))
        assert cm.CMG in flags and cm.ANG not in flags

    @given(graphs())
    @HYP
    def test_containment_chain(self, g):
        flags = cm.classify(g)
        if cm.DAG in flags:
            assert cm.CG in flags
        if cm.CG in flags:
            assert cm.CMG in flags
        if cm.ANG in flags:
            assert cm.CMG in flags

    @given(graphs(classes=("CG",)))
    @HYP
    def test_generator_classes(self, g):
        assert cm.CG in cm.classify(g)


class TestReachability:
    def test_anterior_chain(self):
        assert cm.anteriors(G("a -> b; b -> c"), ["c"]) == {"a", "b"}

    def test_anterior_worked_example(self, g_ex):
        assert cm.anteriors(g_ex, ["j", "h", "l"]) == {"k", "q", "r"}

    def test_arcs_do_not_contribute(self):
        assert cm.anteriors(G("a <-> b"), ["b"]) == frozenset()

    def test_never_own_anterior(self):
        assert cm.anteriors(G("a -- b"), ["a"]) == {"b"}

    def test_ancestors_chain(self):
        assert cm.ancestors(G("a -> b; b -> c"), "c") == {"a", "b"}

    def test_ancestors_ignore_lines(self):
        assert cm.ancestors(G("a -- b; b -> c"), "c") == {"b"}

    def test_ancestors_isolated(self):
        assert cm.ancestors(G("nodes: a b"), "a") == frozenset()

    def test_unknown_node(self):
        with pytest.raises(UnknownNodeError):
            cm.anteriors(G("a -- b"), ["z"])

    @given(graphs())
    @HYP
    def test_anteriors_contain_ancestors(self, g):
        for v in g.nodes:
            assert cm.ancestors(g, v) <= cm.anteriors(g, [v])

    @given(graphs())
    @HYP
    def test_anteriors_transitive(self, g):
        ant = {v: cm.anteriors(g, [v]) for v in g.nodes}
        for z in g.nodes:
            for y in ant[z]:
                assert ant[y] <= ant[z] | {z}

    def test_line_reachable(self):
        g = G("a -- b; b -- c")
        assert g.line_reachable("a", blocked={"b"}) == {"a"}
        assert g.line_reachable("a") == {"a", "b", "c"}
        assert G("a -> b; b -- c").line_reachable("a") == {"a"}

    def test_line_reachable_blocked_start(self):
        with pytest.raises(BlockedStartError):
            G("a -- b").line_reachable("a", blocked={"a"})


class TestSubgraphs:
    def test_induced_identity(self, g_ex):
        assert g_ex.induced_subgraph(g_ex.nodes) == g_ex

    def test_induced_drops_edges(self):
        g = G("a -> b; b -> c").induced_subgraph(["a", "c"])
        assert g.edges == frozenset()

    def test_induced_single(self):
        assert cm.build_graph("a") == G("a -> b").induced_subgraph(["a"])


class TestChainComponents:
    def test_three_components(self):
        g = G("l -- j; j -- k; h -- q; h -> j; q -> k; p -> h")
        assert cm.chain_components(g) == [("h", "q"), ("j", "k", "l"), ("p",)]

    def test_dag_all_singletons(self):
        assert cm.chain_components(G("a -> b; b -> c")) == [("a",), ("b",), ("c",)]

    def test_connected_lines_single_component(self):
        assert cm.chain_components(G("a -- b; b -- c")) == [("a", "b", "c")]

    def test_requires_chain_graph(self):
        with pytest.raises(NotAChainGraphError):
            cm.chain_components(G("a <-> b"))

    @given(graphs(classes=("CG",)))
    @HYP
    def test_partition_and_edge_discipline(self, g):
        comps = cm.chain_components(g)
        seen = [v for comp in comps for v in comp]
        assert sorted(seen) == list(g.nodes)
        comp_of = {v: idx for idx, comp in enumerate(comps) for v in comp}
        for kind, x, y in g.edges:
            if kind == cm.LINE:
                assert comp_of[x] == comp_of[y]
            else:
                assert comp_of[x] != comp_of[y]


class TestMoralGraph:
    def test_collider_marries_parents(self):
        moral = cm.moral_graph(G("a -> c; b -> c"))
        for x, y in (("a", "b"), ("a", "c"), ("b", "c")):
            assert moral.has_edge(x, y, cm.LINE)

    def test_chain_no_marriage(self):
        moral = cm.moral_graph(G("a -> b; b -> c"))
        assert moral.edges == G("a -- b; b -- c").edges

    def test_worked_example_moral_path(self, g_ex):
        closure = {"j", "h", "l"} | cm.anteriors(g_ex, ["j", "h", "l"])
        moral = cm.moral_graph(g_ex.induced_subgraph(closure))
        assert moral.has_edge("j", "k", cm.LINE)
        assert moral.has_edge("k", "q", cm.LINE)
        assert moral.has_edge("q", "h", cm.LINE)

    @given(graphs(classes=("CG",)))
    @HYP
    def test_idempotent(self, g):
        moral = cm.moral_graph(g)
        assert cm.moral_graph(moral) == moral
