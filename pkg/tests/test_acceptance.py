"""Acceptance suite: one test per headline claim, at the stated tolerance.

Each test prints a single PASS line on success; a failing claim shows up as
a normal pytest failure.  Derived expectations come from independent
oracles elsewhere in the test suite; reference values are asserted exactly.
"""

import math
import random

import pytest

from dccsearch import analysis, bitseq, confgraph, evaluator, gateway, greedy
from dccsearch import priolib, vtcodes
from dccsearch.errors import EvaluationError
from dccsearch.evaluator import SINGLE, EvalInput, ScoreSpec
from dccsearch.orchestrator import run_search
from dccsearch.progdb import Candidate, ProgramDatabase, SearchConfig
from dccsearch.progdb import softmax_probabilities

VT0_SIZES = {
    6: 10, 7: 16, 8: 30, 9: 52, 10: 94, 11: 172,
    12: 316, 13: 586, 14: 1096, 15: 2048, 16: 3856,
}
TRIVIAL_SIZES = {
    6: 8, 7: 14, 8: 25, 9: 42, 10: 71, 11: 125, 12: 224, 13: 406, 14: 737,
}


def passline(message):
    print(f"\nPASS {message}")


def greedy_sizes(name, n_range, s=1):
    f = priolib.get(name)
    return [
        len(greedy.greedy_construct(confgraph.get_graph(n, s), f.func))
        for n in n_range
    ]


class TestConstruction:
    def test_vt_zero_class_sizes(self):
        for n, expected in VT0_SIZES.items():
            assert len(vtcodes.vt_code(vtcodes.VTParams(n, 0))) == expected
        passline("VT zero-residue class sizes match for n = 6..16")

    def test_trivial_priority_sizes(self):
        sizes = greedy_sizes("trivial", range(6, 15))
        assert sizes == [TRIVIAL_SIZES[n] for n in range(6, 15)]
        passline("constant-priority greedy sizes match for n = 6..14")

    def test_vt_equivalent_priority_reproduces_vt_codes(self):
        f = priolib.get("vt-equivalent")
        for n in range(3, 13):
            code = greedy.greedy_construct(confgraph.get_graph(n, 1), f.func)
            vt0 = vtcodes.vt_code(vtcodes.VTParams(n, 0))
            assert code.as_set() == vt0.as_set()
        passline("weight-quotient greedy equals the VT zero class for n = 3..12")

    def test_graph_based_priority_sizes_and_disjointness(self):
        assert greedy_sizes("graph-based", range(6, 12)) == [10, 16, 30, 52, 94, 172]
        for n in (7, 9, 11, 13):
            assert analysis.overlap_with_vt0("graph-based", n) == 0.0
        passline(
            "graph-derived priority hits best-known sizes for n = 6..11 with "
            "zero VT overlap at odd n"
        )

    def test_sliding_window_priority_sizes_and_overlap(self):
        assert greedy_sizes("sliding-window", range(12, 14)) == [316, 586]
        for n in range(6, 13):
            assert analysis.overlap_with_vt0("sliding-window", n) == 1.0
        passline(
            "windowed priority reaches 316/586 at n = 12/13 and rebuilds the "
            "VT zero class for n = 6..12"
        )

    def test_scoring_anchor_values(self):
        sizes = [10, 16, 30, 52, 94, 172]
        assert ScoreSpec("largest").score(sizes, SINGLE) == 172
        assert ScoreSpec("average").score(sizes, SINGLE) == pytest.approx(
            62.33, abs=0.005
        )
        assert ScoreSpec("weighted").score(sizes, SINGLE) == pytest.approx(
            72.78, abs=0.005
        )
        passline("score anchors 172 / 62.33 / 72.78 reproduce within 0.005")


class TestGraphs:
    def test_graph_builder_matches_pairwise_oracle(self):
        for n in range(3, 10):
            for s in (1, 2):
                if s >= n:
                    continue
                fast = confgraph.build_graph(n, s)
                oracle = confgraph.build_graph_pairwise(n, s)
                assert fast.edge_set() == oracle.edge_set()
        passline("bucketed graph builder matches the pairwise LCS oracle, n <= 9")

    def test_weighted_sum_gap_on_edges(self):
        for n in range(2, 11):
            assert vtcodes.property1_check(n)
        passline("adjacent strings differ in weighted sum by 1..n for n <= 10")

    def test_random_order_baseline_rates(self):
        trials = 100_000
        for n, best, expected in ((6, 10, 118), (7, 16, 8)):
            histogram = analysis.random_baseline(n, 1, trials, seed=20260825)
            hits = histogram.get(best, 0)
            p = expected / trials
            sigma = math.sqrt(trials * p * (1 - p))
            assert abs(hits - expected) <= 3 * sigma, (n, hits)
        passline(
            "random-permutation hit rates agree with 118/1e5 (n=6) and "
            "8/1e5 (n=7) within 3 sigma"
        )


class TestSearch:
    def test_deterministic_search_finds_optimal(self, tmp_path):
        config = SearchConfig(
            num_islands=3, budget=40, post_optimal_budget=6, reset_interval=8
        )
        script = [
            "    this is not valid python (\n",
            "    return 0.0\n",
            "\n".join(priolib.get("vt-equivalent").source.splitlines()[1:]) + "\n",
        ]
        state1, db1 = run_search(config, gateway.MockClient(script), seed=7)
        assert state1.best_score == 172.0
        assert state1.optimal_found_at == 3
        assert state1.processed == state1.optimal_found_at + config.post_optimal_budget
        state2, db2 = run_search(config, gateway.MockClient(script), seed=7)
        p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
        db1.snapshot(p1)
        db2.snapshot(p2)
        assert p1.read_bytes() == p2.read_bytes()
        passline(
            "scripted search flags the optimal candidate, halts on budget, and "
            "repeat runs give byte-identical snapshots"
        )

    def test_duplicate_candidates_stored_once(self):
        config = SearchConfig(num_islands=2)
        db = ProgramDatabase(config, rng=random.Random(0))
        trivial = priolib.get("trivial")
        seed_result = evaluator.evaluate(trivial)
        db.initialize(
            Candidate("seed", trivial.source, trivial.length, seed_result.vector_hash),
            seed_result.sizes,
            seed_result.score,
        )
        # two textually different candidates with the same priority vector
        variant = priolib.PriorityFunction(
            name="variant",
            kind="external",
            source="def priority(v, G, n, s):\n    return 0.0 * 1.0\n",
            func=lambda v, G, n, s: 0.0 * 1.0,
        )
        result = evaluator.evaluate(variant)
        assert result.vector_hash == seed_result.vector_hash
        before = db.islands[0].n_j
        first = db.store(
            0, Candidate("c1", "source-a", 8, result.vector_hash + 1), result
        )
        second = db.store(
            0, Candidate("c2", "source-b", 8, result.vector_hash + 1), result
        )
        assert (first, second) == ("stored", "duplicate")
        assert db.islands[0].n_j == before + 1
        assert db.stored_total == 1
        passline("functionally duplicate candidates are stored once per island")

    def test_softmax_sampling_frequencies(self):
        probs = softmax_probabilities([1.0, 2.0], 1.0)
        rng = random.Random(20260825)
        trials = 100_000
        draws = rng.choices([0, 1], weights=probs, k=trials)
        hits = sum(draws)
        expected = probs[1] * trials
        sigma = math.sqrt(trials * probs[1] * (1 - probs[1]))
        assert abs(hits - expected) <= 3 * sigma
        assert probs[1] == pytest.approx(math.e / (1 + math.e))
        passline(
            "softmax cluster sampling matches its analytic distribution over "
            "1e5 draws within 3 sigma"
        )


@pytest.fixture(scope="module")
def executor(tmp_path_factory):
    pytest.importorskip("dccsandbox")
    from dccsearch.sandboxing import SubprocessExecutor

    return SubprocessExecutor(timeout=120, cache_dir=tmp_path_factory.mktemp("graphs"))


class TestSandbox:
    def test_sandbox_agrees_with_native_execution(self, executor):
        graph = confgraph.get_graph(9, 1)
        for name, pf in priolib.BUILTINS.items():
            native = greedy.compute_priorities(graph, pf.func)
            sandboxed = [
                greedy.normalize_priority(v)
                for v in executor(pf.source, graph, 9, 1)
            ]
            assert [greedy.render_priority(v) for v in native] == [
                greedy.render_priority(v) for v in sandboxed
            ], name
        # full greedy pipeline through the sandbox, forced external
        pairs = EvalInput(((7, 1), (8, 1)))
        for name in ("trivial", "vt-equivalent", "graph-based"):
            pf = priolib.BUILTINS[name]
            forced = priolib.PriorityFunction(
                name="external", kind="external", source=pf.source, func=None
            )
            sandbox_result = evaluator.evaluate(forced, pairs, executor=executor)
            native_result = evaluator.evaluate(pf, pairs)
            assert sandbox_result.ok, name
            assert sandbox_result.sizes == native_result.sizes, name
        passline(
            "sandboxed execution of the verbatim sources matches native "
            "priorities (n = 9) and greedy sizes at (7,1) and (8,1)"
        )

    def test_sandbox_kills_hanging_candidate(self):
        pytest.importorskip("dccsandbox")
        from dccsearch.sandboxing import SubprocessExecutor

        executor = SubprocessExecutor(timeout=1.0)
        hang = priolib.external(
            "def priority(v, G, n, s):\n    while True:\n        pass\n"
        )
        with pytest.raises(EvaluationError) as exc:
            executor(hang.source, confgraph.get_graph(3, 1), 3, 1)
        assert exc.value.kind == "non_executable"
        result = evaluator.evaluate(hang, EvalInput(((3, 1),)), executor=executor)
        assert result.status == "non_executable"
        follow_up = evaluator.evaluate(priolib.get("trivial"), EvalInput(((3, 1),)))
        assert follow_up.ok
        passline(
            "a non-terminating candidate is killed at the sandbox timeout and "
            "reported non-executable; the caller continues"
        )
