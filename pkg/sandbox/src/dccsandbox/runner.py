"""Serve one candidate-evaluation request over stdin/stdout.

Protocol: a single JSON request on standard input
    {"source": str, "graph_path": str|null, "n": int, "s": int,
     "vertices": [str, ...]}
and a single JSON response on standard output
    {"status": "ok", "priorities": [[component, ...], ...]}
    {"status": "error", "error_kind": "syntax"|"runtime"|"resource",
     "message": str}
Exit codes: 0 ok, 2 syntax, 3 runtime, 4 resource.  A wall-clock timeout is
the parent's job: it kills the process and treats the candidate as
non-executable.

The candidate runs with a restricted builtins table and a numpy/math/
itertools allowlist; the graph is exposed as a read-only neighbor-list view
reconstructed from the serialized graph file.
"""

import inspect
import itertools
import json
import math
import sys

import numpy as np

from .graphio import GraphFileError, load_graph

EXIT_OK = 0
EXIT_SYNTAX = 2
EXIT_RUNTIME = 3
EXIT_RESOURCE = 4

_EXIT_BY_KIND = {"syntax": EXIT_SYNTAX, "runtime": EXIT_RUNTIME, "resource": EXIT_RESOURCE}

_SAFE_BUILTINS = {
    name: getattr(__builtins__, name) if hasattr(__builtins__, name) else __builtins__[name]
    for name in (
        "abs", "all", "any", "bin", "bool", "chr", "dict", "divmod", "enumerate",
        "filter", "float", "format", "frozenset", "hex", "int", "isinstance", "len",
        "list", "map", "max", "min", "next", "ord", "pow", "range", "repr",
        "reversed", "round", "set", "slice", "sorted", "str", "sum", "tuple", "zip",
        "ValueError", "TypeError", "KeyError", "IndexError", "ZeroDivisionError",
        "StopIteration", "Exception",
    )
}

#: names a candidate's non-vertex parameters may take
_PARAM_SOURCES = ("G", "graph", "g", "n", "s")


class CandidateError(Exception):
    def __init__(self, kind, message):
        super().__init__(message)
        self.kind = kind


def compile_candidate(source):
    """Compile the source and return the (single) function it defines."""
    namespace = {"__builtins__": _SAFE_BUILTINS, "np": np, "numpy": np,
                 "math": math, "itertools": itertools}
    try:
        code = compile(source, "<candidate>", "exec")
    except (SyntaxError, ValueError) as exc:
        raise CandidateError("syntax", str(exc)) from exc
    try:
        exec(code, namespace)
    except RecursionError as exc:
        raise CandidateError("resource", str(exc)) from exc
    except Exception as exc:
        raise CandidateError("runtime", str(exc)) from exc
    functions = [v for v in namespace.values() if inspect.isfunction(v)]
    if not functions:
        raise CandidateError("syntax", "source defines no function")
    return functions[-1]  # nested helpers precede the candidate itself


def bind_arguments(func, graph, n, s):
    """Map the candidate's parameter names onto available values.

    The first parameter always receives the vertex; the rest are resolved
    by name (G/graph/g, n, s), mirroring the signatures in the prompts.
    """
    params = list(inspect.signature(func).parameters)
    if not params:
        raise CandidateError("runtime", "candidate takes no parameters")
    available = {"G": graph, "graph": graph, "g": graph, "n": n, "s": s}
    extras = []
    for name in params[1:]:
        if name not in available:
            raise CandidateError("runtime", f"unknown parameter {name!r}")
        if available[name] is None:
            raise CandidateError("runtime", f"no graph provided for parameter {name!r}")
        extras.append(available[name])
    return extras


def _component(value):
    """One priority component, floats rounded to the canonical 9 digits."""
    if isinstance(value, str):
        return value
    if isinstance(value, bool):
        raise CandidateError("runtime", "boolean priority component")
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        f = float(value)
        if math.isnan(f):
            raise CandidateError("runtime", "NaN priority component")
        if math.isinf(f):
            return f
        return float(format(f, ".9g"))
    raise CandidateError("runtime", f"unsupported priority component {value!r}")


def serialize_priority(value):
    if isinstance(value, tuple):
        if not value:
            raise CandidateError("runtime", "empty priority tuple")
        return [_component(c) for c in value]
    return [_component(value)]


def serve(request):
    """Evaluate one request dict; returns the response dict."""
    source = request["source"]
    n = int(request["n"])
    s = int(request["s"])
    vertices = request["vertices"]
    graph = None
    if request.get("graph_path"):
        graph = load_graph(request["graph_path"])
        if (graph.n, graph.s) != (n, s):
            raise CandidateError(
                "runtime", f"graph file is for (n={graph.n}, s={graph.s})"
            )
    func = compile_candidate(source)
    extras = bind_arguments(func, graph, n, s)
    priorities = []
    for v in vertices:
        if len(v) != n:
            raise CandidateError("runtime", f"vertex {v!r} has wrong length")
        try:
            raw = func(v, *extras)
        except RecursionError as exc:
            raise CandidateError("resource", str(exc)) from exc
        except MemoryError as exc:
            raise CandidateError("resource", str(exc)) from exc
        except CandidateError:
            raise
        except Exception as exc:
            raise CandidateError("runtime", f"failed on {v}: {exc}") from exc
        priorities.append(serialize_priority(raw))
    return {"status": "ok", "priorities": priorities}


def main():
    sys.setrecursionlimit(10_000)
    try:
        import resource

        resource.setrlimit(resource.RLIMIT_AS, (1 << 31, 1 << 31))  # 2 GiB
    except (ImportError, ValueError, OSError):
        pass  # platform without rlimits; the parent still enforces the timeout
    try:
        request = json.load(sys.stdin)
        response = serve(request)
        exit_code = EXIT_OK
    except CandidateError as exc:
        response = {"status": "error", "error_kind": exc.kind, "message": str(exc)}
        exit_code = _EXIT_BY_KIND[exc.kind]
    except (GraphFileError, json.JSONDecodeError, KeyError, ValueError) as exc:
        response = {"status": "error", "error_kind": "runtime", "message": str(exc)}
        exit_code = EXIT_RUNTIME
    except MemoryError:
        response = {"status": "error", "error_kind": "resource", "message": "out of memory"}
        exit_code = EXIT_RESOURCE
    json.dump(response, sys.stdout)
    sys.stdout.write("\n")
    return exit_code


if __name__ == "__main__":
    sys.exit(main())
