"""Varshamov-Tenengolts codes, their partition structure, and related checks.

VT_a(n) is the set of length-n strings whose weighted sum
sum_i i * v_i is congruent to a modulo n + 1.  VT_0(n) is conjectured
maximum-size for a single deletion; proven for n <= 11.
"""

from dataclasses import dataclass

from . import bitseq
from .greedy import Code, is_deletion_correcting


@dataclass(frozen=True)
class VTParams:
    n: int
    a: int

    def __post_init__(self):
        if not 0 <= self.a <= self.n:
            raise ValueError(f"residue class must be in [0, {self.n}], got {self.a}")


def vt_code(params):
    """Enumerate all 2^n strings and keep those with the requested residue."""
    if isinstance(params, tuple):
        params = VTParams(*params)
    words = [
        v
        for v in bitseq.enumerate_strings(params.n)
        if bitseq.vt_residual(v) == params.a
    ]
    return Code(n=params.n, s=1, codewords=words)


def vt_class_sizes(n):
    """Size of each residue class VT_a(n), a in [0, n]."""
    sizes = [0] * (n + 1)
    for v in bitseq.enumerate_strings(n):
        sizes[bitseq.vt_residual(v)] += 1
    return sizes


def vt_partition_check(n):
    """The n + 1 classes are disjoint, cover {0,1}^n, and each corrects one deletion."""
    total = 0
    for a in range(n + 1):
        code = vt_code(VTParams(n, a))
        total += len(code)
        if len(code.as_set()) != len(code):
            return False
        if not is_deletion_correcting(code):
            return False
    return total == (1 << n)


def property1_check(n, graph=None):
    """Weighted-sum gap on edges: adjacent u != w satisfy 1 <= |W(u)-W(w)| <= n.

    Iterates the edges of the single-deletion graph; the property's
    hypothesis is exactly adjacency at s = 1.
    """
    from . import confgraph

    if graph is None:
        graph = confgraph.get_graph(n, 1)
    weights = [bitseq.reverse_weight(v) for v in bitseq.enumerate_strings(n)]
    for u in range(graph.vertex_count):
        wu = weights[u]
        for w in graph.neighbor_ranks(u):
            if u < w:
                diff = abs(wu - weights[w])
                if not 1 <= diff <= n:
                    return False
    return True


def maximality_check(code, graph):
    """True iff every vertex outside the code has a neighbor inside it."""
    members = {bitseq.rank_of(c) for c in code.codewords}
    for rank in range(graph.vertex_count):
        if rank in members:
            continue
        if not any(int(w) in members for w in graph.neighbor_ranks(rank)):
            return False
    return True
