"""Prompt templates, LLM client abstraction, and the deterministic mock.

Templates reproduce the few-shot code-completion prompts used by the
search: a docstring describing the independent-set task, an import block,
the sampled example functions renamed f_0/f_1, and a trailing header f_2
for the model to complete.  The mock client replays a scripted list of
completions and makes the whole search loop deterministic.
"""

import json
import re
import time
from dataclasses import dataclass, field

import requests

from .errors import EvaluationError

_BASE_DOC = """\
Finds large independent set in graph G where vertices are binary strings of length n.
Vertices in G are connected if they share a subsequence of length at least n-s.
"""

_IMPROVE_DOC = """\
Improve f_{k} over its previous versions below.
Keep the code short and comment for easy understanding.
"""

_PROMPT1_EXTRA = """\

The functions f assign a priority to each vertex indicating its importance for inclusion in the independent set.
"""

_PROMPT4_EXTRA = """\

Consider properties of the binary string v, such as specific patterns, the number of ones/zeros.
"""

_PROMPT5_EXTRA = """\

The functions f assign a priority to each node indicating its importance for inclusion in the independent set.

Desired properties of the function f:
- **Efficiency**: The function should be computationally efficient.
- **Avoid Redundant Computations**: Do not perform unnecessary calculations or repeat work.
- **Clarity**: The code should be easy to understand, with appropriate comments.
- **Innovation**: Explore different strategies for calculating the priority. Consider specific characteristics of the binary strings, such as:
    - Patterns in the binary string.
    - The number of ones or zeros (Hamming weight).
    - Distribution of bits (e.g., runs of ones or zeros).
"""

_EVAL_SCRIPT = '''\

def generate_graph(n, s):
    G = nx.Graph()
    sequences = [''.join(seq) for seq in itertools.product('01', repeat=n)]
    for seq in sequences:
        G.add_node(seq)
    for i in range(len(sequences)):
        for j in range(i + 1, len(sequences)):
            if has_common_subsequence(sequences[i], sequences[j], n, s):
                G.add_edge(sequences[i], sequences[j])
    return G

def has_common_subsequence(seq1, seq2, n, s):
    threshold = n - s
    if threshold <= 0:
        return True
    prev = [0] * (n + 1)
    current = [0] * (n + 1)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if seq1[i - 1] == seq2[j - 1]:
                current[j] = prev[j - 1] + 1
            else:
                current[j] = max(prev[j], current[j - 1])
            if current[j] >= threshold:
                return True
        prev, current = current, prev
    return False

def evaluate(params):
    n, s = params
    independent_set = solve(n, s)
    return len(independent_set)

def solve(n, s):
    G_original = generate_graph(n, s)
    G_for_priority = G_original.copy()
    priorities = {v: f_1(v, G_for_priority, n, s) for v in G_original.nodes}
    vertices_sorted = sorted(G_original.nodes, key=lambda v: (-priorities[v], v))
    independent_set = set()
    for v in vertices_sorted:
        if v not in G_original:
            continue
        independent_set.add(v)
        neighbors = list(G_original.neighbors(v))
        G_original.remove_node(v)
        G_original.remove_nodes_from(neighbors)
    return independent_set
'''


@dataclass(frozen=True)
class PromptTemplate:
    id: str
    single_deletion_note: bool = False  # prompt 1: states s = 1 explicitly
    include_networkx: bool = True  # prompt 3 drops the networkx import
    include_eval_script: bool = False  # prompt 2 embeds the evaluation script
    extra_doc: str = ""  # inserted between the task statement and the improve lines
    extra_doc_after: str = ""  # prompt 4 appends its instruction after them
    blank_before_improve: bool = True  # every variant except the baseline

    def doc(self, next_index):
        doc = _BASE_DOC
        if self.single_deletion_note:
            doc = doc.replace("at least n-s.", "at least n-s, where s=1.")
        doc += self.extra_doc
        if self.blank_before_improve:
            doc += "\n"
        doc += _IMPROVE_DOC.format(k=next_index)
        doc += self.extra_doc_after
        return doc

    def imports(self):
        lines = ["import numpy as np"]
        if self.include_networkx:
            lines.append("import networkx as nx")
        if self.include_eval_script:
            lines.append("import itertools")
        return "\n".join(lines)


TEMPLATES = {
    "baseline": PromptTemplate("baseline", blank_before_improve=False),
    "p1": PromptTemplate("p1", single_deletion_note=True, extra_doc=_PROMPT1_EXTRA),
    "p2": PromptTemplate("p2", include_eval_script=True),
    "p3": PromptTemplate("p3", include_networkx=False),
    "p4": PromptTemplate("p4", extra_doc_after=_PROMPT4_EXTRA),
    "p5": PromptTemplate("p5", extra_doc=_PROMPT5_EXTRA),
}

_DEF_RE = re.compile(r"^def\s+\w+\s*\(.*?\)\s*:", re.MULTILINE)
_DOCSTRING_RE = re.compile(r'^(\s+)(?:"""|\'\'\')(?:.|\n)*?(?:"""|\'\'\')\n?', re.MULTILINE)

CANDIDATE_HEADER = "def priority(v, G, n, s):"


def _rename(source, new_name, docstring=None):
    """Rename a candidate function to f_k and optionally replace its docstring."""
    source = source.strip("\n")
    match = _DEF_RE.search(source)
    if not match:
        raise ValueError("candidate source has no function definition")
    header = f"def {new_name}(v, G):"
    body = source[match.end() :]
    if docstring is not None:
        doc_match = _DOCSTRING_RE.match(body.lstrip("\n") + "\n")
        if doc_match:
            body = "\n" + (body.lstrip("\n") + "\n")[doc_match.end() :].rstrip("\n")
        body = f'\n    """{docstring}"""' + body
    return header + body


def render_prompt(template, low_source, high_source=None, next_index=None):
    """Byte-stable few-shot prompt: low example, high example, trailing header.

    With ``high_source=None`` (fresh database) the rendering is the
    single-example initial prompt: f_0 plus an f_1 header.
    """
    examples = [low_source] + ([high_source] if high_source is not None else [])
    k = next_index if next_index is not None else len(examples)
    # The import block follows the closing quotes directly, without a blank line.
    parts = ['"""\n' + template.doc(k) + '"""\n' + template.imports()]
    if template.include_eval_script:
        parts.append(_EVAL_SCRIPT.strip("\n"))
    for i, src in enumerate(examples):
        idx = k - len(examples) + i
        doc = None if idx == 0 else f"Improved version of f_{idx - 1}"
        parts.append(_rename(src, f"f_{idx}", doc))
    parts.append(f'def f_{k}(v, G):\n    """Improved version of f_{k - 1}"""')
    return "\n\n".join(parts) + "\n"


def extract_candidate(completion):
    """Turn a raw completion into canonical candidate source.

    The completion continues the trailing header, so it is an (indented)
    function body possibly followed by prose or further definitions; we cut
    at the first top-level line and re-attach the canonical header.
    Extraction is forgiving; validation happens in the evaluator.
    """
    body_lines = []
    for line in completion.splitlines():
        if body_lines and line and not line[0].isspace():
            break
        if not line.strip():
            body_lines.append("")
            continue
        body_lines.append(line if line[0].isspace() else "    " + line)
    while body_lines and not body_lines[-1]:
        body_lines.pop()
    body = "\n".join(body_lines)
    if not body.strip():
        body = "    pass"
    return CANDIDATE_HEADER + "\n" + body + "\n"


@dataclass(frozen=True)
class LlmParams:
    temperature: float = 0.94
    top_p: float = 0.78
    max_new_tokens: int = 246
    repetition_penalty: float = 1.2
    decay_horizon: int | None = None

    def with_temperature(self, temperature):
        return LlmParams(
            temperature=temperature,
            top_p=self.top_p,
            max_new_tokens=self.max_new_tokens,
            repetition_penalty=self.repetition_penalty,
            decay_horizon=self.decay_horizon,
        )

    def to_dict(self):
        return {
            "temperature": self.temperature,
            "top_p": self.top_p,
            "max_new_tokens": self.max_new_tokens,
            "repetition_penalty": self.repetition_penalty,
        }


def dynamic_temperature(base, n_j, D):
    """Linear decay with stored functions, reaching greedy decoding at D."""
    if D < 1:
        raise ValueError("decay horizon must be >= 1")
    return base * max(0.0, 1 - n_j / D)


class MockClient:
    """Replays scripted completions in order, cycling when exhausted."""

    def __init__(self, completions):
        if not completions:
            raise ValueError("mock script must contain at least one completion")
        self.completions = list(completions)
        self.cursor = 0

    @classmethod
    def from_script(cls, path):
        with open(path) as fh:
            return cls(json.load(fh))

    def generate(self, prompt, params):
        completion = self.completions[self.cursor % len(self.completions)]
        self.cursor += 1
        return completion


class RetryableTransportError(RuntimeError):
    pass


class HttpClient:
    """Wire-level client for completion- or chat-style JSON endpoints.

    Configured by URL and model name only; the API key is read from the
    environment variable named by ``api_key_env``.
    """

    def __init__(
        self,
        url,
        model,
        style="completion",  # completion | chat
        api_key_env="DCC_LLM_API_KEY",
        max_retries=3,
        backoff=2.0,
        session=None,
    ):
        import os

        self.url = url
        self.model = model
        self.style = style
        self.api_key = os.environ.get(api_key_env, "")
        self.max_retries = max_retries
        self.backoff = backoff
        self.session = session or requests.Session()

    def _payload(self, prompt, params):
        payload = {"model": self.model, **params.to_dict()}
        if self.style == "chat":
            payload["messages"] = [{"role": "user", "content": prompt}]
        else:
            payload["prompt"] = prompt
        return payload

    def generate(self, prompt, params):
        headers = {"Content-Type": "application/json"}
        if self.api_key:
            headers["Authorization"] = f"Bearer {self.api_key}"
        last_error = None
        for attempt in range(self.max_retries):
            try:
                resp = self.session.post(
                    self.url,
                    json=self._payload(prompt, params),
                    headers=headers,
                    timeout=120,
                )
            except requests.RequestException as exc:
                last_error = exc
                time.sleep(self.backoff * (2**attempt))
                continue
            if resp.status_code == 429 or resp.status_code >= 500:
                last_error = RetryableTransportError(f"HTTP {resp.status_code}")
                time.sleep(self.backoff * (2**attempt))
                continue
            if resp.status_code != 200:
                raise EvaluationError(f"LLM endpoint returned HTTP {resp.status_code}")
            try:
                data = resp.json()
                choice = data["choices"][0]
                if self.style == "chat":
                    return choice["message"]["content"]
                return choice["text"]
            except (KeyError, IndexError, ValueError) as exc:
                raise EvaluationError(f"malformed LLM response: {exc}") from exc
        raise RetryableTransportError(f"LLM endpoint unreachable: {last_error}")
