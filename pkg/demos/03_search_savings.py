"""How much search the sharper upper bound saves.

The maximal depth is found by testing levels downward from an upper bound
until a depth region is nonempty.  Starting from floor((n - p + 2)/2) instead
of ceil(n/2) skips the levels in between.  Two ways to count the saving give
different numbers, so both are printed.

Run:  python demos/03_search_savings.py          (about a minute)
"""
from tukeymedian.cli import PUBLISHED_CLAIM, bench
from tukeymedian.median import search_savings

for n, p in [(10, 2), (20, 3), (25, 5), (40, 8)]:
    s = search_savings(n, p)
    print(f"n={n:>2} p={p}: bounds {s['bounds']}, interval reduction {s['interval_reduction']}, "
          f"level-count reduction {s['level_reduction']}")

print(f"\nPublished statement: {PUBLISHED_CLAIM}")
doc = bench(25, 5, reps=3, seed=1)
print("Measured on 3 Gaussian clouds (n=25, p=5):")
for row in doc["per_rep"]:
    print(f"  seed {row['seed']}: kappa* = {row['kappa_star']}, regions computed {row['regions_computed']}")
print(f"  total regions {doc['aggregate']['regions_computed']}, "
      f"{doc['aggregate']['regions_reduction']['percent']}% fewer with the sharper bound")
