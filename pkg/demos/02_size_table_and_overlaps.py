"""Reproduce the headline size table and the VT-overlap story.

Three of the discovered priority functions all reach the best-known
single-deletion sizes 10, 16, 30, 52, 94, 172 for n = 6..11, but they do
not build the same codes: one is literally the VT zero class, one shares
nothing with it at odd lengths, and the windowed one scales two lengths
further up the table.
"""

from dccsearch import analysis

names = ["trivial", "vt-equivalent", "graph-based", "sliding-window"]
rows = analysis.size_table(names, range(6, 12))

print(f"{'priority':>16} " + " ".join(f"n={n:<4}" for n in range(6, 12)))
for name in names:
    sizes = [r["size"] for r in rows if r["priority"] == name]
    print(f"{name:>16} " + " ".join(f"{v:<6}" for v in sizes))

print("\noverlap with the VT zero class (shared / larger):")
for name in ("vt-equivalent", "graph-based", "sliding-window"):
    overlaps = [analysis.overlap_with_vt0(name, n) for n in (7, 9, 11)]
    print(f"{name:>16}: " + "  ".join(f"{o:.2f}" for o in overlaps))

# The windowed variant keeps matching the best-known sizes past the range
# it was searched on.
sizes = analysis.size_table(["sliding-window"], range(12, 14))
print("\nsliding-window extrapolation:",
      {r["n"]: r["size"] for r in sizes}, "(best known: 316, 586)")
