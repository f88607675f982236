"""Bridge to the isolated subprocess runner for untrusted candidates.

:class:`SubprocessExecutor` satisfies the evaluator's ``executor`` protocol:
``executor(source, graph, n, s) -> list of raw priority values``.  Each call
spawns one short-lived worker process (``python -m dccsandbox`` by default),
hands it the candidate source, a serialized graph file, and the vertex list
over a JSON stdin/stdout pipe, and kills it if it exceeds the wall-clock
timeout.  A killed or erroring worker surfaces as a non-executable candidate;
the caller keeps running.
"""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

from . import bitseq, confgraph
from .errors import EvaluationError

DEFAULT_TIMEOUT = 30.0


class SubprocessExecutor:
    """Runs candidate sources in a separate process, one request per call.

    Graph files are written once per (n, s) pair into ``cache_dir`` (a
    temporary directory by default) and reused across calls.
    """

    def __init__(self, command=None, timeout=DEFAULT_TIMEOUT, cache_dir=None):
        self.command = list(command) if command else [sys.executable, "-m", "dccsandbox"]
        self.timeout = float(timeout)
        if cache_dir is None:
            self._tmp = tempfile.TemporaryDirectory(prefix="dccsearch-graphs-")
            cache_dir = self._tmp.name
        self.cache_dir = Path(cache_dir)
        self._graph_paths = {}

    def _graph_path(self, graph):
        key = (graph.n, graph.s)
        path = self._graph_paths.get(key)
        if path is None:
            path = self.cache_dir / f"g{graph.n}_{graph.s}.dccg"
            confgraph.save_graph(graph, path)
            self._graph_paths[key] = path
        return path

    def __call__(self, source, graph, n, s):
        request = {
            "source": source,
            "graph_path": str(self._graph_path(graph)) if graph is not None else None,
            "n": n,
            "s": s,
            "vertices": bitseq.enumerate_strings(n),
        }
        try:
            proc = subprocess.run(
                self.command,
                input=json.dumps(request),
                capture_output=True,
                text=True,
                timeout=self.timeout,
            )
        except subprocess.TimeoutExpired:
            raise EvaluationError(
                f"candidate exceeded the {self.timeout}s sandbox timeout",
                kind="non_executable",
            ) from None
        try:
            response = json.loads(proc.stdout)
        except json.JSONDecodeError:
            raise EvaluationError(
                f"sandbox produced no response (exit {proc.returncode}): "
                f"{proc.stderr.strip()[:200]}",
                kind="non_executable",
            ) from None
        if response.get("status") != "ok":
            raise EvaluationError(
                f"sandbox {response.get('error_kind', 'error')}: "
                f"{response.get('message', '')}",
                kind="non_executable",
            )
        return [_from_wire(p) for p in response["priorities"]]


def _from_wire(components):
    """Wire form back to a raw priority: 1-element lists collapse to scalars."""
    if not isinstance(components, list) or not components:
        raise EvaluationError(
            f"malformed sandbox priority {components!r}", kind="invalid_priority"
        )
    if len(components) == 1:
        return components[0]
    return tuple(components)
