"""Confusability graph over all length-n bitstrings for s deletions.

Vertices are identified by lexicographic rank (= MSB-first integer value).
Adjacency is stored in CSR form: an offsets array of length 2^n + 1 and a
flat array of sorted neighbor ranks.  Two vertices are adjacent iff their
strings share a common subsequence of length at least n - s.
"""

import struct
from dataclasses import dataclass

import numpy as np

from . import bitseq
from .errors import CapacityError, SnapshotError

_MAGIC = b"DCCG"
_VERSION = 1


@dataclass(frozen=True)
class ConfusabilityGraph:
    n: int
    s: int
    offsets: np.ndarray  # uint64/int64, len 2^n + 1
    neighbors: np.ndarray  # int64 neighbor ranks, sorted per vertex

    @property
    def vertex_count(self):
        return 1 << self.n

    @property
    def edge_count(self):
        return len(self.neighbors) // 2

    def neighbor_ranks(self, rank):
        return self.neighbors[self.offsets[rank] : self.offsets[rank + 1]]

    def neighbors_of(self, v):
        """Neighbor strings of vertex v, sorted lexicographically."""
        rank = self._check_vertex(v)
        return [bitseq.string_of(r, self.n) for r in self.neighbor_ranks(rank)]

    def degree(self, v):
        rank = self._check_vertex(v)
        return int(self.offsets[rank + 1] - self.offsets[rank])

    def _check_vertex(self, v):
        if isinstance(v, str):
            if len(v) != self.n:
                raise ValueError(f"vertex length {len(v)} != graph length {self.n}")
            return bitseq.rank_of(v)
        return int(v)

    def edge_set(self):
        """Set of (u, v) rank pairs with u < v; used by equivalence tests."""
        edges = set()
        for u in range(self.vertex_count):
            for w in self.neighbor_ranks(u):
                if u < w:
                    edges.add((u, int(w)))
        return edges


def _csr_from_pairs(n, pairs_u, pairs_v):
    """Build CSR adjacency from undirected edge pairs (may contain duplicates)."""
    vertex_count = 1 << n
    u = np.asarray(pairs_u, dtype=np.int64)
    v = np.asarray(pairs_v, dtype=np.int64)
    lo = np.minimum(u, v)
    hi = np.maximum(u, v)
    keep = lo != hi
    lo, hi = lo[keep], hi[keep]
    coded = np.unique(lo << n | hi)
    lo = coded >> n
    hi = coded & ((1 << n) - 1)
    # both directions, then sort by (source, target)
    src = np.concatenate([lo, hi])
    dst = np.concatenate([hi, lo])
    order = np.lexsort((dst, src))
    src, dst = src[order], dst[order]
    counts = np.bincount(src, minlength=vertex_count)
    offsets = np.zeros(vertex_count + 1, dtype=np.int64)
    np.cumsum(counts, out=offsets[1:])
    return offsets, dst


def build_graph(n, s):
    """Build the graph by deletion-ball bucketing.

    Every length-(n-s) subsequence maps to the bucket of vertices whose ball
    contains it; all pairs within a bucket are linked.  Equivalent to the
    pairwise-LCS construction (see :func:`build_graph_pairwise`), but avoids
    the quadratic DP over all vertex pairs.
    """
    bitseq.check_length(n)
    if not 1 <= s < n:
        raise ValueError(f"deletions must satisfy 1 <= s < n, got s={s}, n={n}")
    buckets = {}
    for rank in range(1 << n):
        for sub in bitseq.deletion_ball_ranks(rank, n, s):
            buckets.setdefault(sub, []).append(rank)
    pairs_u = []
    pairs_v = []
    for members in buckets.values():
        for i in range(len(members)):
            mi = members[i]
            for j in range(i + 1, len(members)):
                pairs_u.append(mi)
                pairs_v.append(members[j])
    offsets, neighbors = _csr_from_pairs(n, pairs_u, pairs_v)
    return ConfusabilityGraph(n=n, s=s, offsets=offsets, neighbors=neighbors)


def build_graph_pairwise(n, s):
    """Reference construction: pairwise LCS-threshold test over all vertex pairs.

    O(4^n n^2); kept as the independent oracle for testing the bucketing
    build.  Use :func:`build_graph` everywhere else.
    """
    bitseq.check_length(n)
    strings = bitseq.enumerate_strings(n)
    pairs_u = []
    pairs_v = []
    for i in range(len(strings)):
        for j in range(i + 1, len(strings)):
            if bitseq.shares_subsequence(strings[i], strings[j], s):
                pairs_u.append(i)
                pairs_v.append(j)
    offsets, neighbors = _csr_from_pairs(n, pairs_u, pairs_v)
    return ConfusabilityGraph(n=n, s=s, offsets=offsets, neighbors=neighbors)


def save_graph(g, path):
    """Write the canonical binary format (little-endian).

    Layout: magic "DCCG", version u16, n u16, s u16, vertex_count u64,
    (vertex_count + 1) u64 offsets, then u64 neighbor ranks.
    """
    with open(path, "wb") as fh:
        fh.write(_MAGIC)
        fh.write(struct.pack("<HHHQ", _VERSION, g.n, g.s, g.vertex_count))
        fh.write(g.offsets.astype("<u8").tobytes())
        fh.write(g.neighbors.astype("<u8").tobytes())


def load_graph(path):
    with open(path, "rb") as fh:
        magic = fh.read(4)
        if magic != _MAGIC:
            raise SnapshotError(f"not a graph file: bad magic {magic!r}")
        version, n, s, vertex_count = struct.unpack("<HHHQ", fh.read(14))
        if version != _VERSION:
            raise SnapshotError(f"unsupported graph file version {version}")
        if vertex_count != 1 << n:
            raise SnapshotError("corrupt graph file: vertex count mismatch")
        offsets = np.frombuffer(fh.read(8 * (vertex_count + 1)), dtype="<u8").astype(
            np.int64
        )
        neighbors = np.frombuffer(fh.read(8 * int(offsets[-1])), dtype="<u8").astype(
            np.int64
        )
    return ConfusabilityGraph(n=n, s=s, offsets=offsets, neighbors=neighbors)


def save_graph_text(g, path):
    """Debug text format: first line "n s", then one "u v" line per edge, sorted."""
    with open(path, "w") as fh:
        fh.write(f"{g.n} {g.s}\n")
        for u in range(g.vertex_count):
            for w in g.neighbor_ranks(u):
                if u < w:
                    fh.write(f"{u} {int(w)}\n")


def load_graph_text(path):
    with open(path) as fh:
        n, s = map(int, fh.readline().split())
        pairs_u = []
        pairs_v = []
        for line in fh:
            a, b = map(int, line.split())
            pairs_u.append(a)
            pairs_v.append(b)
    offsets, neighbors = _csr_from_pairs(n, pairs_u, pairs_v)
    return ConfusabilityGraph(n=n, s=s, offsets=offsets, neighbors=neighbors)


_graph_cache = {}


def get_graph(n, s):
    """Memoized :func:`build_graph`; graphs are immutable so sharing is safe."""
    key = (n, s)
    if key not in _graph_cache:
        if n > bitseq.MAX_LENGTH:
            raise CapacityError(f"code length {n} beyond cap {bitseq.MAX_LENGTH}")
        _graph_cache[key] = build_graph(n, s)
    return _graph_cache[key]
