"""Read-only view of a serialized confusability graph.

Parses the binary graph file format independently (magic "DCCG", version,
header, CSR arrays, little-endian) and exposes the minimal API surface
candidate functions use: indexing by vertex, neighbor iteration, degree.
"""

import struct

import numpy as np

_MAGIC = b"DCCG"
_VERSION = 1


class GraphFileError(ValueError):
    pass


class GraphView:
    """Immutable neighbor-list view over all length-n binary strings."""

    def __init__(self, n, s, offsets, neighbors):
        self.n = n
        self.s = s
        self._offsets = offsets
        self._neighbors = neighbors

    def _rank(self, v):
        if len(v) != self.n:
            raise ValueError(f"vertex length {len(v)} != graph length {self.n}")
        return int(v, 2)

    def neighbors(self, v):
        rank = self._rank(v)
        span = self._neighbors[self._offsets[rank] : self._offsets[rank + 1]]
        return (format(int(r), f"0{self.n}b") for r in span)

    def __getitem__(self, v):
        return list(self.neighbors(v))

    def degree(self, v):
        rank = self._rank(v)
        return int(self._offsets[rank + 1] - self._offsets[rank])

    def __contains__(self, v):
        return isinstance(v, str) and len(v) == self.n and set(v) <= {"0", "1"}

    @property
    def nodes(self):
        return [format(r, f"0{self.n}b") for r in range(1 << self.n)]


def load_graph(path):
    with open(path, "rb") as fh:
        if fh.read(4) != _MAGIC:
            raise GraphFileError(f"{path}: not a graph file")
        version, n, s, vertex_count = struct.unpack("<HHHQ", fh.read(14))
        if version != _VERSION:
            raise GraphFileError(f"{path}: unsupported version {version}")
        if vertex_count != 1 << n:
            raise GraphFileError(f"{path}: vertex count mismatch")
        offsets = np.frombuffer(fh.read(8 * (vertex_count + 1)), dtype="<u8")
        neighbors = np.frombuffer(fh.read(8 * int(offsets[-1])), dtype="<u8")
    return GraphView(n=n, s=s, offsets=offsets, neighbors=neighbors)
