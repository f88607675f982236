"""Evaluate priority functions over configured (n, s) inputs and score them.

Every code constructed during an ``ok`` evaluation is re-validated with the
independent ball-disjointness oracle; this guards against buggy candidate
functions and internal regressions alike.  The evaluation also streams the
full priority vector into a 64-bit FNV-1a hash, which the program database
uses for functional deduplication.
"""

import time
from dataclasses import dataclass, field

from . import bitseq, confgraph, greedy
from .errors import EvaluationError

#: known maximum single-deletion code sizes for n in [6, 11]
OPTIMAL_SINGLE_SIZES = [10, 16, 30, 52, 94, 172]

DEFAULT_TIMEOUT = 300.0  # seconds per candidate


@dataclass(frozen=True)
class EvalInput:
    """Ordered list of (n, s) pairs; the order defines the cluster signature."""

    pairs: tuple

    def __post_init__(self):
        if not self.pairs:
            raise ValueError("evaluation input must contain at least one pair")
        for n, s in self.pairs:
            if not 1 <= s < n:
                raise ValueError(f"invalid evaluation pair (n={n}, s={s})")

    @property
    def scoring_pair(self):
        """Last pair in ascending (s, n) order; defines the "largest" score."""
        return max(self.pairs, key=lambda p: (p[1], p[0]))


SINGLE = EvalInput(tuple((n, 1) for n in range(6, 12)))
TWO = EvalInput(tuple((n, 2) for n in range(7, 13)))
JOINT = EvalInput(
    tuple((n, 1) for n in range(9, 12)) + tuple((n, 2) for n in range(10, 13))
)

PRESETS = {"single": SINGLE, "two": TWO, "joint": JOINT}


@dataclass(frozen=True)
class ScoreSpec:
    mode: str = "largest"  # largest | average | weighted

    def __post_init__(self):
        if self.mode not in ("largest", "average", "weighted"):
            raise ValueError(f"unknown scoring mode {self.mode!r}")

    def score(self, sizes, inputs):
        if self.mode == "largest":
            idx = inputs.pairs.index(inputs.scoring_pair)
            return float(sizes[idx])
        if self.mode == "average":
            return sum(sizes) / len(sizes)
        weights = [n for n, _ in inputs.pairs]
        return sum(n * size for n, size in zip(weights, sizes)) / sum(weights)


@dataclass
class EvalResult:
    candidate_id: str
    status: str  # ok | non_executable | timeout | invalid_priority
    sizes: list = field(default_factory=list)
    score: float = 0.0
    elapsed_ms: int = 0
    vector_hash: int = 0  # FNV-1a over the canonical priority vector

    @property
    def ok(self):
        return self.status == "ok"

    def to_record(self):
        return {
            "candidate_id": self.candidate_id,
            "sizes": list(self.sizes),
            "score": self.score,
            "status": self.status,
            "elapsed_ms": self.elapsed_ms,
        }


_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3
_U64 = (1 << 64) - 1


def fnv1a_update(state, data):
    """One FNV-1a step over a bytes chunk."""
    for byte in data:
        state = ((state ^ byte) * _FNV_PRIME) & _U64
    return state


def evaluate(
    f,
    inputs=SINGLE,
    spec=ScoreSpec("largest"),
    timeout=DEFAULT_TIMEOUT,
    graphs=None,
    executor=None,
):
    """Run f on every input pair; greedy-construct, validate, score, hash.

    ``f`` is a :class:`~dccsearch.priolib.PriorityFunction`.  Built-ins (and
    externals resolved to built-ins) run natively; other externals require
    an ``executor`` with signature ``executor(source, graph, n, s) -> list
    of priority values`` (e.g. the sandboxed subprocess runner).  The
    timeout covers the whole evaluation of one candidate; native execution
    checks it cooperatively between vertices.
    """
    start = time.monotonic()
    deadline = start + timeout

    def result(status, sizes=None, score=0.0, vector_hash=0):
        return EvalResult(
            candidate_id=f.candidate_id or f.name,
            status=status,
            sizes=sizes or [],
            score=score,
            elapsed_ms=int((time.monotonic() - start) * 1000),
            vector_hash=vector_hash,
        )

    sizes = []
    hash_state = _FNV_OFFSET
    for n, s in inputs.pairs:
        graph = graphs[(n, s)] if graphs else confgraph.get_graph(n, s)
        try:
            values = _priority_vector(f, graph, deadline, executor)
        except EvaluationError as exc:
            return result(exc.kind)
        for value in values:
            hash_state = fnv1a_update(
                hash_state, greedy.render_priority(value).encode() + b";"
            )
        order = sorted(range(graph.vertex_count), key=values.__getitem__, reverse=True)
        code = greedy.greedy_scan(graph, order)
        if not greedy.is_deletion_correcting(code):
            raise AssertionError(
                f"constructed code failed validation at (n={n}, s={s}); "
                "greedy construction is broken"
            )
        sizes.append(len(code))
        if time.monotonic() > deadline:
            return result("timeout")
    return result("ok", sizes, spec.score(sizes, inputs), hash_state)


def _priority_vector(f, graph, deadline, executor):
    if f.func is not None:
        values = []
        kinds = None
        for rank in range(graph.vertex_count):
            if rank % 1024 == 0 and time.monotonic() > deadline:
                raise EvaluationError("candidate timed out", kind="timeout")
            v = bitseq.string_of(rank, graph.n)
            try:
                raw = f.func(v, graph, graph.n, graph.s)
            except EvaluationError:
                raise
            except Exception as exc:
                raise EvaluationError(f"failed on {v}: {exc}") from exc
            value = greedy.normalize_priority(raw)
            k = greedy.priority_kinds(value)
            if kinds is None:
                kinds = k
            elif k != kinds:
                raise EvaluationError(
                    f"incomparable priorities: {kinds} vs {k}",
                    kind="invalid_priority",
                )
            values.append(value)
        return values
    if executor is None:
        raise EvaluationError("no executor available for external candidate")
    raw_values = executor(f.source, graph, graph.n, graph.s)
    values = [greedy.normalize_priority(v) for v in raw_values]
    kinds = {greedy.priority_kinds(v) for v in values}
    if len(kinds) > 1:
        raise EvaluationError(
            f"incomparable priorities: {sorted(kinds)}", kind="invalid_priority"
        )
    return values


def is_optimal(result, inputs):
    """True iff the sizes hit the known maxima; only defined for SINGLE."""
    if inputs != SINGLE:
        raise ValueError("optimality is only known for the single-deletion preset")
    if not result.ok:
        return False
    return list(result.sizes) == OPTIMAL_SINGLE_SIZES


def dedup_hash(f, inputs=SINGLE, graphs=None, executor=None):
    """64-bit FNV-1a over the canonical priority-vector serialization."""
    result = evaluate(f, inputs, graphs=graphs, executor=executor)
    if not result.ok:
        raise EvaluationError(f"cannot hash candidate with status {result.status}")
    return result.vector_hash
