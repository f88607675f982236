"""Walk through greedy code construction on the confusability graph.

Two length-n strings are confusable under s deletions when they share a
common subsequence of length n - s: deleting the right symbols from each
lands both on the same shorter string.  A code that corrects s deletions
is exactly an independent set in that graph, so the whole construction
problem reduces to: pick a vertex order, scan it, keep every vertex whose
neighborhood is still untouched.
"""

from dccsearch import confgraph, greedy, priolib

n, s = 7, 1
graph = confgraph.get_graph(n, s)
print(f"confusability graph for n={n}, s={s}: "
      f"{graph.vertex_count} vertices, {graph.edge_count} edges")
print(f"neighbors of {'0' * n}: {graph.neighbors_of('0' * n)}")

# The order is everything.  A constant priority keeps the plain
# lexicographic scan; smarter priorities reach much larger codes.
for name in ("trivial", "min-degree", "vt-equivalent"):
    f = priolib.get(name)
    code = greedy.greedy_construct(graph, f.func)
    assert greedy.is_deletion_correcting(code)
    print(f"{name:>14}: {len(code)} codewords, first five {code.codewords[:5]}")

# Every greedy output is maximal: no codeword can be added back.
from dccsearch.vtcodes import maximality_check

code = greedy.greedy_construct(graph, priolib.get("trivial").func)
print("maximal:", maximality_check(code, graph))
