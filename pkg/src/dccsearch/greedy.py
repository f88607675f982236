"""Greedy code construction from static priorities, plus code validation.

The construction is exactly: evaluate the priority of every vertex against
the original, unmodified graph; sort vertices by (priority descending,
lexicographic ascending); scan the sorted list adding each surviving vertex
and removing its closed neighborhood.  Priorities are never recomputed
during the scan.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from . import bitseq
from .errors import EvaluationError

#: Distinguished highest priority (arity-1, +inf); the only place an
#: infinite component is legal.
TOP = (math.inf,)


def normalize_priority(value):
    """Coerce a raw priority into a components tuple.

    Scalars become 1-tuples.  Components must be finite numbers or strings;
    the only exception is the distinguished TOP value.
    """
    if not isinstance(value, tuple):
        value = (value,)
    if value == TOP:
        return TOP
    if not value:
        raise EvaluationError("empty priority tuple", kind="invalid_priority")
    for c in value:
        if isinstance(c, bool) or (
            not isinstance(c, (int, float, str)) and not _is_numpy_scalar(c)
        ):
            raise EvaluationError(
                f"unsupported priority component {c!r}", kind="invalid_priority"
            )
        if not isinstance(c, str):
            c = float(c)
            if math.isnan(c) or math.isinf(c):
                raise EvaluationError(
                    f"non-finite priority component {c!r}", kind="invalid_priority"
                )
    return tuple(float(c) if not isinstance(c, str) else c for c in value)


def _is_numpy_scalar(c):
    return isinstance(c, np.generic)


def priority_kinds(value):
    """Arity/kind signature used to check mutual comparability."""
    return tuple("str" if isinstance(c, str) else "num" for c in value)


def render_priority(value):
    """Canonical text form of a priority: components at 9 significant digits.

    This rendering defines functional equality for deduplication and for
    the sandbox oracle, so it must stay stable across platforms.
    """
    parts = []
    for c in value:
        if isinstance(c, str):
            parts.append("s:" + c)
        else:
            parts.append("n:" + format(float(c), ".9g"))
    return "|".join(parts)


@dataclass
class Code:
    """A deletion-correcting code; codewords kept in the order they were added."""

    n: int
    s: int
    codewords: list = field(default_factory=list)

    def __len__(self):
        return len(self.codewords)

    def as_set(self):
        return frozenset(self.codewords)


def compute_priorities(graph, func):
    """Priority of every vertex (lexicographic order) against the original graph.

    Raises EvaluationError if the function fails on any vertex or returns
    mutually incomparable values.
    """
    n, s = graph.n, graph.s
    values = []
    kinds = None
    for rank in range(graph.vertex_count):
        v = bitseq.string_of(rank, n)
        try:
            raw = func(v, graph, n, s)
        except EvaluationError:
            raise
        except Exception as exc:
            raise EvaluationError(f"priority function failed on {v}: {exc}") from exc
        value = normalize_priority(raw)
        k = priority_kinds(value)
        if kinds is None:
            kinds = k
        elif k != kinds:
            # TOP has kind ("num",) so the VT indicator mixes fine with scalars.
            raise EvaluationError(
                f"incomparable priorities: {kinds} vs {k}", kind="invalid_priority"
            )
        values.append(value)
    return values


def greedy_scan(graph, order):
    """Add vertices in the given rank order, skipping removed ones."""
    alive = np.ones(graph.vertex_count, dtype=bool)
    chosen = []
    for rank in order:
        if alive[rank]:
            chosen.append(int(rank))
            alive[graph.neighbor_ranks(rank)] = False
            alive[rank] = False
    return Code(
        n=graph.n,
        s=graph.s,
        codewords=[bitseq.string_of(r, graph.n) for r in chosen],
    )


def greedy_construct(graph, func):
    """Construct a code with the given priority function; deterministic."""
    values = compute_priorities(graph, func)
    # Base order is lexicographic ascending; the reverse sort is stable, so
    # equal priorities keep the lexicographic tie-break.
    order = sorted(range(graph.vertex_count), key=values.__getitem__, reverse=True)
    return greedy_scan(graph, order)


def greedy_by_permutation(n, s, order, graph=None):
    """Greedy scan in a caller-supplied vertex order (no priorities)."""
    from . import confgraph

    if graph is None:
        graph = confgraph.get_graph(n, s)
    order = np.asarray(order)
    if len(order) != (1 << n) or not np.array_equal(
        np.sort(order), np.arange(1 << n)
    ):
        raise ValueError("order is not a permutation of all vertex ranks")
    return greedy_scan(graph, order)


def is_deletion_correcting(code):
    """Independent oracle: pairwise ball-disjointness via subsequence buckets."""
    seen = {}
    for c in code.codewords:
        if len(c) != code.n:
            raise ValueError(f"codeword {c} has length {len(c)}, expected {code.n}")
        for member in bitseq.deletion_ball(c, code.s).members:
            owner = seen.setdefault(member, c)
            if owner != c:
                return False
    return True


def save_code(code, path):
    """Text format: line 1 "n s size", then one codeword per line in scan order."""
    with open(path, "w") as fh:
        fh.write(f"{code.n} {code.s} {len(code)}\n")
        for c in code.codewords:
            fh.write(c + "\n")


def load_code(path):
    with open(path) as fh:
        n, s, size = map(int, fh.readline().split())
        codewords = [line.strip() for line in fh if line.strip()]
    if len(codewords) != size:
        raise ValueError(f"code file declares {size} codewords, found {len(codewords)}")
    return Code(n=n, s=s, codewords=codewords)
