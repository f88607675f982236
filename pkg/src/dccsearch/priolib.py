"""Built-in priority functions, addressable by stable names.

Each built-in is a pure function of (v, graph, n, s) returning a scalar or
a tuple; identical inputs give bit-identical results (floating-point
expressions are evaluated in a fixed order, with numpy reductions where the
transcribed originals use them).  Every built-in also carries a canonical
source text in the candidate dialect (``def priority(v, G, n, s)``) so it
can flow through prompts, the dedup hash, and the sandbox runner.
"""

import sys
from dataclasses import dataclass, field

import numpy as np

from . import bitseq
from .greedy import TOP

_FLOAT_MIN = -sys.float_info.max


@dataclass(frozen=True)
class PriorityFunction:
    """A native built-in or an external candidate awaiting sandboxed execution."""

    name: str
    kind: str  # "builtin" | "external"
    source: str
    func: object = None  # callable(v, graph, n, s) for builtins
    candidate_id: str = field(default="")

    @property
    def length(self):
        return len(self.source)


def prio_trivial(v, g, n, s):
    return 0.0


def prio_vt_equivalent(v, g, n, s):
    """Quotient of the reversed positional weight: floor(W(v) / (n + s))."""
    return bitseq.reverse_weight(v) // (n + s)


def prio_graph_based(v, g, n, s):
    position = [
        (j + 1) * (n - j) / (6 * s) for j, value in enumerate(v) if int(value) == 1
    ]
    total_position = np.sum(position)
    degree = g.degree(v) / float(n)
    return 4 * total_position + 5 * degree


def prio_number_theoretic(v, g, n, s):
    def _find_matches(vertex):
        counter = sum(
            [int(c) * (2**i - 1) for i, c in enumerate(reversed(list(vertex)))]
        )
        return bin(counter).count("1")

    def _count_ones(vertex):
        return sum([int(_) for _ in list(vertex)])

    weights = [
        (_find_matches(u) / (s + 0.5) * np.exp(-_count_ones(u)), u)
        for u in g.neighbors_of(v)
    ]
    if not weights:
        # lowest-possible surrogate keeping tuple arity consistent
        return (_FLOAT_MIN, "")
    return sorted(weights)[-1]


def prio_sliding_window(v, g, n, s):
    if n < 3:
        raise ValueError(f"sliding-window priority needs n >= 3, got {n}")
    lst = []
    for p in range(n - 2):
        for q in range(p + 2, n):
            string = ""
            for r in range(p, q + 1):
                string += v[r]
            lst.append(string)
    clist = [*map(lambda w: (w).count("1"), lst)]
    averageofobservations = np.mean(clist)
    deviationfromaverage = np.var(clist) ** 0.65
    priortiyvalue = (
        -(averageofobservations / 3 + 0.3) * (deviationfromaverage**0.65 * 0.7)
        + 0.8
        + 1 / (len(v) * 2.5)
    )
    return round(priortiyvalue, 10)


def prio_min_degree(v, g, n, s):
    return -g.degree(v)


def prio_vt_indicator(v, g, n, s):
    if bitseq.vt_residual(v) == 0:
        return TOP
    return 0.0


_TRIVIAL_SOURCE = '''\
def priority(v, G, n, s):
    """Returns the priority with which we want to add vertex v."""
    return 0.0
'''

_VT_EQUIVALENT_SOURCE = '''\
def priority(v, G, n, s):
    """Improved version of previous priority functions."""
    onepositions = [c for c, d in reversed(list(enumerate(v, start=-len(v)))) if d == '1']
    negonesum = sum([-c for c in onepositions])
    finalans = negonesum // ((n + s) * 1)
    return finalans
'''

_GRAPH_BASED_SOURCE = """\
def priority(v, G, n, s):
    position = [(j + 1) * (n - j) / (6 * s) for j, value in enumerate(v) if int(value) == 1]
    total_position = np.sum(position)
    degree = G.degree(v) / float(n)
    return 4 * total_position + 5 * degree
"""

_NUMBER_THEORETIC_SOURCE = """\
def priority(v, G, n, s):
    def _find_matches(vertex, n, s):
        counter = 0
        counter = sum([int(c) * (2 ** i - 1) for i, c in enumerate(reversed(list(vertex)))])
        return (bin(counter)).count("1")
    def _count_ones(vertex):
        counter = 0
        counter = sum([int(_) for _ in list(vertex)])
        return counter
    weights = [(_find_matches(vertex_, n, s) / (s + 0.5) * np.exp(-(_count_ones(vertex_))), vertex_) for vertex_ in G[v]]
    if not weights:
        return (-1.7976931348623157e+308, "")
    return sorted(weights)[-1]
"""

_SLIDING_WINDOW_SOURCE = """\
def priority(v, G, n, s):
    lst = []
    for p in range((n - 2)):
        for q in range(((p + 2)), (n)):
            string = ""
            for r in range(p, q + 1):
                string += v[r]
            lst.append(string)
    clist = [*map(lambda w: (w).count('1'), lst)]
    averageofobservations = (np.mean(clist))
    deviationfromaverage = (np.var(clist) ** .65)
    priortiyvalue = -(averageofobservations / 3 + .3) * (deviationfromaverage ** .65 * (.7)) + (.8) + (1 / (len(v) * 2.5))
    return round(priortiyvalue, 10)
"""

_MIN_DEGREE_SOURCE = """\
def priority(v, G, n, s):
    return -G.degree(v)
"""

_VT_INDICATOR_SOURCE = """\
def priority(v, G, n, s):
    if sum((i + 1) * int(c) for i, c in enumerate(v)) % (n + 1) == 0:
        return float('inf')
    return 0.0
"""


BUILTINS = {
    p.name: p
    for p in [
        PriorityFunction("trivial", "builtin", _TRIVIAL_SOURCE, prio_trivial),
        PriorityFunction(
            "vt-equivalent", "builtin", _VT_EQUIVALENT_SOURCE, prio_vt_equivalent
        ),
        PriorityFunction(
            "graph-based", "builtin", _GRAPH_BASED_SOURCE, prio_graph_based
        ),
        PriorityFunction(
            "number-theoretic",
            "builtin",
            _NUMBER_THEORETIC_SOURCE,
            prio_number_theoretic,
        ),
        PriorityFunction(
            "sliding-window", "builtin", _SLIDING_WINDOW_SOURCE, prio_sliding_window
        ),
        PriorityFunction("min-degree", "builtin", _MIN_DEGREE_SOURCE, prio_min_degree),
        PriorityFunction(
            "vt-indicator", "builtin", _VT_INDICATOR_SOURCE, prio_vt_indicator
        ),
    ]
}


def get(name):
    try:
        return BUILTINS[name]
    except KeyError:
        raise KeyError(
            f"unknown priority function {name!r}; known: {sorted(BUILTINS)}"
        ) from None


def normalize_source(source):
    """Whitespace-insensitive-at-the-edges form used for source matching."""
    lines = [line.rstrip() for line in source.strip().splitlines()]
    return "\n".join(line for line in lines if line)


#: normalized source text -> built-in, used by the native source executor
SOURCE_REGISTRY = {normalize_source(p.source): p for p in BUILTINS.values()}

# Docstring-free variant commonly emitted by models completing the prompts.
SOURCE_REGISTRY[
    normalize_source("def priority(v, G, n, s):\n    return 0.0")
] = BUILTINS["trivial"]


def external(source, candidate_id=""):
    """Wrap a candidate source text; resolves to a built-in when it matches one."""
    match = SOURCE_REGISTRY.get(normalize_source(source))
    if match is not None:
        return PriorityFunction(
            name=match.name,
            kind="external",
            source=source,
            func=match.func,
            candidate_id=candidate_id,
        )
    return PriorityFunction(
        name="external", kind="external", source=source, candidate_id=candidate_id
    )
