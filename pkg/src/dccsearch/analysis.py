"""Reproduce the headline analyses: size tables, overlaps, random baselines.

Everything is recomputed from freshly constructed codes; emitters produce
CSV and JSON side by side so external tools can plot the series.
"""

import csv
import io
import json
from collections import Counter

import numpy as np

from . import confgraph, greedy, priolib, vtcodes

#: known maximum / VT0 sizes per length, used to flag table entries
REFERENCE_SIZES = {
    6: 10,
    7: 16,
    8: 30,
    9: 52,
    10: 94,
    11: 172,
    12: 316,
    13: 586,
    14: 1096,
    15: 2048,
    16: 3856,
}


def overlap(a, b):
    """|a intersect b| / max(|a|, |b|); 0.0 when either code is empty."""
    if a.n != b.n:
        raise ValueError(f"length mismatch: {a.n} vs {b.n}")
    if not a.codewords or not b.codewords:
        return 0.0
    shared = len(a.as_set() & b.as_set())
    return shared / max(len(a), len(b))


def size_table(priority_names, n_range, s=1):
    """Greedy code size per (function, n); flags entries hitting the reference size.

    Returns a list of row dicts: {"priority", "n", "s", "size", "matches_best"}.
    """
    rows = []
    for name in priority_names:
        f = priolib.get(name)
        for n in n_range:
            graph = confgraph.get_graph(n, s)
            code = greedy.greedy_construct(graph, f.func)
            best = REFERENCE_SIZES.get(n) if s == 1 else None
            rows.append(
                {
                    "priority": name,
                    "n": n,
                    "s": s,
                    "size": len(code),
                    "matches_best": best is not None and len(code) == best,
                }
            )
    return rows


def random_baseline(n, s, trials, seed):
    """Histogram of greedy code sizes over seeded random vertex permutations.

    Trial i uses the independent RNG stream (seed, i) so runs parallelize
    and reproduce exactly.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    graph = confgraph.get_graph(n, s)
    histogram = Counter()
    for trial in range(trials):
        rng = np.random.default_rng((seed, trial))
        order = rng.permutation(graph.vertex_count)
        code = greedy.greedy_scan(graph, order)
        histogram[len(code)] += 1
    return dict(sorted(histogram.items()))


def overlap_with_vt0(name, n, s=1):
    """Overlap of a built-in's greedy code with VT_0(n)."""
    graph = confgraph.get_graph(n, s)
    code = greedy.greedy_construct(graph, priolib.get(name).func)
    return overlap(code, vtcodes.vt_code(vtcodes.VTParams(n, 0)))


def rows_to_csv(rows):
    if not rows:
        return ""
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(rows[0]))
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def rows_to_json(rows):
    return json.dumps(rows, indent=1) + "\n"


def histogram_to_rows(histogram):
    return [{"size": size, "count": count} for size, count in histogram.items()]
