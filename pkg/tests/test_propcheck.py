import pytest

import cmgraph as cm
from cmgraph.errors import InvalidConfigError
from cmgraph.graphio import render
from cmgraph.propcheck import (
    GeneratorConfig,
    PropertyReport,
    cg_unrepresentability_demo,
    check_commutativity,
    check_marginalization,
    default_unrepresentable_dag,
    enumerate_cgs,
    enumerate_mixed_graphs,
    find_cg_matching_model,
    random_graph,
    run_suite,
    shrink_instance,
    SUITE_IDS,
)

from conftest import G


class TestGenerator:
    def test_zero_density_edgeless(self):
        g = random_graph(GeneratorConfig(2, 0.0, 1, "CG"))
        assert g.edges == frozenset()

    def test_cg_mode_yields_cg(self):
        for seed in range(30):
            g = random_graph(GeneratorConfig(5, 0.5, seed, "CG"))
            assert cm.CG in cm.classify(g)

    def test_cmg_mode_yields_cmg(self):
        for seed in range(30):
            g = random_graph(GeneratorConfig(5, 0.5, seed, "CMG"))
            assert cm.CMG in cm.classify(g)

    def test_ang_mode_yields_simple_ang(self):
        for seed in range(30):
            g = random_graph(GeneratorConfig(5, 0.5, seed, "AnG"))
            assert cm.ANG in cm.classify(g)
            assert g.is_simple

    def test_deterministic(self):
        cfg = GeneratorConfig(6, 0.4, 123456, "CMG")
        assert render(random_graph(cfg)) == render(random_graph(cfg))

    def test_invalid_config(self):
        with pytest.raises(InvalidConfigError):
            random_graph(GeneratorConfig(1, 0.5, 0, "CG"))
        with pytest.raises(InvalidConfigError):
            random_graph(GeneratorConfig(4, 1.5, 0, "CG"))
        with pytest.raises(InvalidConfigError):
            random_graph(GeneratorConfig(4, 0.5, 0, "DAG"))


class TestEnumeration:
    def test_mixed_graph_count_two_nodes(self):
        assert sum(1 for _ in enumerate_mixed_graphs(("a", "b"))) == 16

    def test_cg_count_two_nodes(self):
        # none, line, two arrow orientations
        assert sum(1 for _ in enumerate_cgs(("a", "b"))) == 4

    def test_all_enumerated_cgs_are_cgs(self):
        for g in enumerate_cgs(("a", "b", "c")):
            assert cm.CG in cm.classify(g)


class TestReports:
    def test_report_line_schema(self):
        report = PropertyReport("demo")
        report.record(True)
        assert (
            report.line()
            == "property=demo instances=1 failures=0 skipped=0 counterexample=none"
        )

    def test_failure_captures_payload(self):
        report = PropertyReport("demo")
        report.record(False, lambda: {"graph": "nodes: a"})
        assert report.failures == 1
        assert '"graph"' in report.line()

    def test_shrinking_reduces_instance(self):
        g = G("a -> b; b -> c; nodes: a b c d e")
        # failure: graph contains the a -> b arrow
        def fails(gg, ss):
            return gg.has_edge("a", "b", cm.ARROW)

        shrunk, _ = shrink_instance(g, {}, fails)
        assert shrunk.has_edge("a", "b", cm.ARROW)
        assert len(shrunk.nodes) == 2

    def test_suite_reports_deterministic(self):
        a = run_suite("marginalization", seed=5, count=40, max_nodes=6)
        b = run_suite("marginalization", seed=5, count=40, max_nodes=6)
        assert a.line() == b.line()

    def test_all_suite_ids_runnable(self):
        for sid in SUITE_IDS:
            if sid == "cg-unrepresentability":
                continue
            report = run_suite(sid, seed=1, count=5, max_nodes=5)
            assert report.instances == 5
            assert report.failures == 0


class TestChecks:
    def test_marginalization_instance(self):
        assert check_marginalization(G("a -> m; m -> b"), frozenset("m"))

    def test_commutativity_returns_both_verdicts(self):
        models_ok, graphs_ok = check_commutativity(
            G("a -> b; b -- c"), frozenset("b"), frozenset("c")
        )
        assert models_ok
        assert graphs_ok in (True, None)


class TestUnrepresentability:
    def test_default_dag_marginal_model_matches_no_cg(self):
        g, m = default_unrepresentable_dag()
        assert cm.DAG in cm.classify(g)
        marginal = cm.pairwise_model(cm.marginalize(g, m))
        assert find_cg_matching_model(marginal) is None

    def test_identity_case_finds_the_cg_itself(self):
        g = G("a -> b; b -- c; nodes: a b c d")
        found = find_cg_matching_model(cm.pairwise_model(g))
        assert found is not None
        assert cm.models_equal(cm.pairwise_model(found), cm.pairwise_model(g))

    def test_demo_report(self):
        report = cg_unrepresentability_demo()
        assert report.failures == 0
