"""How hard is it to hit an optimal code by chance?

Scan the vertices of the n = 6 confusability graph in a uniformly random
order many times and histogram the resulting code sizes.  The optimal
size 10 shows up roughly once per thousand tries; at n = 7 the rate drops
by another order of magnitude, which is why a guided search over priority
functions beats sampling orders directly.
"""

from dccsearch import analysis

trials = 20_000
for n, best in ((6, 10), (7, 16)):
    histogram = analysis.random_baseline(n, 1, trials, seed=7)
    hits = histogram.get(best, 0)
    print(f"n={n}: sizes over {trials} random orders")
    for size, count in histogram.items():
        bar = "#" * max(1, round(60 * count / trials))
        print(f"  {size:>3} {count:>6} {bar}")
    print(f"  optimal size {best} hit {hits} times "
          f"({hits / trials:.2%})\n")
