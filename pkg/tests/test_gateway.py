import json

import pytest

from dccsearch import gateway, priolib
from dccsearch.gateway import (
    CANDIDATE_HEADER,
    TEMPLATES,
    LlmParams,
    MockClient,
    dynamic_temperature,
    extract_candidate,
    render_prompt,
)

TRIVIAL = priolib.get("trivial").source

BASELINE_ZERO_STATE = '''\
"""
Finds large independent set in graph G where vertices are binary strings of length n.
Vertices in G are connected if they share a subsequence of length at least n-s.
Improve f_1 over its previous versions below.
Keep the code short and comment for easy understanding.
"""
import numpy as np
import networkx as nx

def f_0(v, G):
    """Returns the priority with which we want to add vertex v."""
    return 0.0

def f_1(v, G):
    """Improved version of f_0"""
'''


class TestRenderPrompt:
    def test_baseline_zero_state_golden(self):
        assert render_prompt(TEMPLATES["baseline"], TRIVIAL) == BASELINE_ZERO_STATE

    def test_idempotent(self):
        a = render_prompt(TEMPLATES["baseline"], TRIVIAL)
        b = render_prompt(TEMPLATES["baseline"], TRIVIAL)
        assert a == b

    def test_two_example_prompt_shape(self):
        vt = priolib.get("vt-equivalent").source
        text = render_prompt(TEMPLATES["baseline"], TRIVIAL, vt)
        assert "Improve f_2 over its previous versions below." in text
        assert "def f_0(v, G):" in text
        assert "def f_1(v, G):" in text
        assert '"""Improved version of f_0"""' in text
        assert text.rstrip().endswith('def f_2(v, G):\n    """Improved version of f_1"""')

    def test_p1_states_single_deletion(self):
        text = render_prompt(TEMPLATES["p1"], TRIVIAL)
        assert "at least n-s, where s=1." in text
        assert "assign a priority to each vertex" in text

    def test_p2_embeds_evaluation_script(self):
        text = render_prompt(TEMPLATES["p2"], TRIVIAL)
        assert "def generate_graph(n, s):" in text
        assert "import itertools" in text
        assert "if current[j] >= threshold:" in text

    def test_p3_drops_networkx(self):
        text = render_prompt(TEMPLATES["p3"], TRIVIAL)
        assert "networkx" not in text
        assert "import numpy as np" in text

    def test_p4_appends_pattern_instruction_after_improve_lines(self):
        text = render_prompt(TEMPLATES["p4"], TRIVIAL)
        improve = text.index("Improve f_1")
        extra = text.index("Consider properties of the binary string v")
        assert improve < extra

    def test_p5_lists_desired_properties(self):
        text = render_prompt(TEMPLATES["p5"], TRIVIAL)
        assert "**Efficiency**" in text
        assert "Hamming weight" in text
        assert "assign a priority to each node" in text

    def test_docstrings_replaced_not_duplicated(self):
        vt = priolib.get("vt-equivalent").source
        text = render_prompt(TEMPLATES["baseline"], TRIVIAL, vt)
        assert "Improved version of previous priority functions" not in text


class TestExtractCandidate:
    def test_plain_body(self):
        source = extract_candidate("    return 0.0\n")
        assert source == CANDIDATE_HEADER + "\n    return 0.0\n"

    def test_cuts_at_first_top_level_line(self):
        completion = "    return 1.0\n\ndef f_3(v, G):\n    return 2.0\n"
        source = extract_candidate(completion)
        assert "f_3" not in source
        assert source.endswith("    return 1.0\n")

    def test_cuts_trailing_prose(self):
        completion = "    return 1.0\nThis function is better because...\n"
        source = extract_candidate(completion)
        assert "better" not in source

    def test_empty_completion_becomes_pass(self):
        assert extract_candidate("") == CANDIDATE_HEADER + "\n    pass\n"

    def test_unindented_first_line_gets_indented(self):
        source = extract_candidate("return 0.0")
        assert source == CANDIDATE_HEADER + "\n    return 0.0\n"

    def test_builtin_body_roundtrips_to_registry(self):
        vt = priolib.get("vt-equivalent")
        body = "\n".join(vt.source.splitlines()[1:]) + "\n"
        resolved = priolib.external(extract_candidate(body))
        assert resolved.func is vt.func


class TestLlmParams:
    def test_defaults(self):
        params = LlmParams()
        assert params.temperature == 0.94
        assert params.top_p == 0.78
        assert params.max_new_tokens == 246
        assert params.repetition_penalty == 1.2

    def test_to_dict(self):
        assert set(LlmParams().to_dict()) == {
            "temperature",
            "top_p",
            "max_new_tokens",
            "repetition_penalty",
        }

    def test_with_temperature(self):
        cooled = LlmParams().with_temperature(0.47)
        assert cooled.temperature == 0.47
        assert cooled.top_p == 0.78


class TestDynamicTemperature:
    def test_start(self):
        assert dynamic_temperature(0.94, 0, 1000) == 0.94

    def test_reaches_zero_at_horizon(self):
        assert dynamic_temperature(0.94, 1000, 1000) == 0.0
        assert dynamic_temperature(0.94, 2000, 1000) == 0.0

    def test_linear_midpoint(self):
        assert dynamic_temperature(0.94, 500, 1000) == pytest.approx(0.47)

    def test_invalid_horizon(self):
        with pytest.raises(ValueError):
            dynamic_temperature(0.94, 0, 0)


class TestMockClient:
    def test_replays_in_order_and_cycles(self):
        client = MockClient(["a", "b"])
        outputs = [client.generate("p", LlmParams()) for _ in range(5)]
        assert outputs == ["a", "b", "a", "b", "a"]

    def test_from_script(self, tmp_path):
        path = tmp_path / "script.json"
        path.write_text(json.dumps(["    return 0.0\n"]))
        client = MockClient.from_script(path)
        assert client.generate("p", LlmParams()) == "    return 0.0\n"

    def test_empty_script_rejected(self):
        with pytest.raises(ValueError):
            MockClient([])


class TestHttpClient:
    def test_completion_payload(self):
        client = gateway.HttpClient("http://x/v1/completions", "starcoder2")
        payload = client._payload("PROMPT", LlmParams())
        assert payload["prompt"] == "PROMPT"
        assert payload["model"] == "starcoder2"
        assert payload["temperature"] == 0.94

    def test_chat_payload(self):
        client = gateway.HttpClient("http://x/v1/chat", "gpt", style="chat")
        payload = client._payload("PROMPT", LlmParams())
        assert payload["messages"] == [{"role": "user", "content": "PROMPT"}]

    def test_retries_then_raises(self):
        class FailingSession:
            def __init__(self):
                self.calls = 0

            def post(self, *args, **kwargs):
                self.calls += 1
                import requests

                raise requests.ConnectionError("down")

        session = FailingSession()
        client = gateway.HttpClient(
            "http://x", "m", session=session, max_retries=2, backoff=0.0
        )
        with pytest.raises(gateway.RetryableTransportError):
            client.generate("p", LlmParams())
        assert session.calls == 2
