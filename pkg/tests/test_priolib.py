import math

import pytest

from dccsearch import confgraph, greedy, priolib, vtcodes


def sizes_for(name, n_range, s=1):
    f = priolib.get(name)
    return [
        len(greedy.greedy_construct(confgraph.get_graph(n, s), f.func))
        for n in n_range
    ]


class TestRegistry:
    def test_all_builtin_names(self):
        assert sorted(priolib.BUILTINS) == [
            "graph-based",
            "min-degree",
            "number-theoretic",
            "sliding-window",
            "trivial",
            "vt-equivalent",
            "vt-indicator",
        ]

    def test_unknown_name(self):
        with pytest.raises(KeyError):
            priolib.get("nonexistent")

    def test_builtin_metadata(self):
        f = priolib.get("trivial")
        assert f.kind == "builtin"
        assert f.length == len(f.source) >= 1

    def test_sources_resolve_to_themselves(self):
        for name, builtin in priolib.BUILTINS.items():
            resolved = priolib.external(builtin.source, candidate_id="x")
            assert resolved.func is builtin.func, name
            assert resolved.kind == "external"

    def test_trivial_docstring_free_variant_resolves(self):
        resolved = priolib.external("def priority(v, G, n, s):\n    return 0.0\n")
        assert resolved.func is priolib.get("trivial").func

    def test_unknown_source_has_no_native_func(self):
        resolved = priolib.external("def priority(v, G, n, s):\n    return v[0]\n")
        assert resolved.func is None


class TestTrivial:
    def test_constant(self, graph31):
        assert priolib.prio_trivial("000", graph31, 3, 1) == 0.0

    def test_table_row(self):
        assert sizes_for("trivial", range(6, 12)) == [8, 14, 25, 42, 71, 125]


class TestVtEquivalent:
    def test_example_value(self, graph31):
        assert priolib.prio_vt_equivalent("101", graph31, 3, 1) == 1

    def test_optimal_sizes(self):
        assert sizes_for("vt-equivalent", range(6, 12)) == [10, 16, 30, 52, 94, 172]

    def test_source_matches_native(self, graph61):
        # the transcribed source and the native function agree on every vertex
        namespace = {}
        exec(priolib.get("vt-equivalent").source, namespace)
        from dccsearch import bitseq

        for v in bitseq.enumerate_strings(6):
            assert namespace["priority"](v, graph61, 6, 1) == priolib.prio_vt_equivalent(
                v, graph61, 6, 1
            )


class TestGraphBased:
    def test_zero_string_is_degree_term_only(self, graph61):
        expected = 5 * graph61.degree("000000") / 6.0
        assert priolib.prio_graph_based("000000", graph61, 6, 1) == expected

    def test_optimal_sizes(self):
        assert sizes_for("graph-based", range(6, 12)) == [10, 16, 30, 52, 94, 172]

    def test_zero_overlap_at_odd_lengths(self):
        from dccsearch import analysis

        assert analysis.overlap_with_vt0("graph-based", 7) == 0.0
        assert analysis.overlap_with_vt0("graph-based", 9) == 0.0


class TestNumberTheoretic:
    def test_returns_weight_neighbor_pair(self, graph61):
        value = priolib.prio_number_theoretic("000000", graph61, 6, 1)
        assert isinstance(value, tuple) and len(value) == 2
        assert isinstance(value[0], float) and isinstance(value[1], str)

    def test_optimal_sizes(self):
        assert sizes_for("number-theoretic", range(6, 9)) == [10, 16, 30]

    def test_full_overlap_with_vt0(self):
        from dccsearch import analysis

        assert analysis.overlap_with_vt0("number-theoretic", 8) == 1.0

    def test_isolated_vertex_fallback(self):
        class NoNeighbors:
            def neighbors_of(self, v):
                return []

        value = priolib.prio_number_theoretic("0101", NoNeighbors(), 4, 1)
        assert value == (-1.7976931348623157e308, "")


class TestSlidingWindow:
    def test_requires_n_at_least_3(self, graph31):
        with pytest.raises(ValueError):
            priolib.prio_sliding_window("01", None, 2, 1)

    def test_rounded_to_ten_decimals(self, graph61):
        value = priolib.prio_sliding_window("010101", graph61, 6, 1)
        assert value == round(value, 10)

    def test_optimal_sizes(self):
        assert sizes_for("sliding-window", range(6, 12)) == [10, 16, 30, 52, 94, 172]


class TestMinDegree:
    def test_prefers_low_degree(self, graph31):
        assert priolib.prio_min_degree("000", graph31, 3, 1) == -3
        code = greedy.greedy_construct(graph31, priolib.get("min-degree").func)
        assert code.codewords[0] == "000"

    def test_suboptimal_at_n11(self):
        assert sizes_for("min-degree", [11])[0] < 172


class TestVtIndicator:
    def test_top_for_zero_residue(self, graph31):
        assert priolib.prio_vt_indicator("101", graph31, 3, 1) == greedy.TOP
        assert priolib.prio_vt_indicator("011", graph31, 3, 1) == 0.0

    def test_equals_vt0_sizes(self):
        for n in (6, 7, 8):
            graph = confgraph.get_graph(n, 1)
            code = greedy.greedy_construct(graph, priolib.get("vt-indicator").func)
            vt0 = vtcodes.vt_code(vtcodes.VTParams(n, 0))
            # VT_0 is maximal, so the indicator adds nothing beyond it
            assert code.as_set() == vt0.as_set()


class TestDeterminism:
    @pytest.mark.parametrize("name", sorted(priolib.BUILTINS))
    def test_repeated_evaluation_identical(self, name, graph61):
        from dccsearch import bitseq

        f = priolib.get(name)
        first = [f.func(v, graph61, 6, 1) for v in bitseq.enumerate_strings(6)]
        second = [f.func(v, graph61, 6, 1) for v in bitseq.enumerate_strings(6)]
        assert first == second
