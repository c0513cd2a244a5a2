"""How deep can the deepest point be?

For n points in general position in R^p the maximal depth count kappa* never
exceeds floor((n - p + 2)/2), and never exceeds floor((n - p + 1)/2) when the
median region is full-dimensional.  This script checks both on random clouds
and shows two clouds where the first bound is reached.

Run:  python demos/02_bounds_and_attainment.py
"""
from collections import Counter

from tukeymedian import depth_bounds, tukey_median, verify_theorem1
from tukeymedian.datasets import gen_bound_attaining, gen_gaussian

margins = Counter()
for seed in range(40):
    p = 2 + seed % 3
    n = p + 3 + seed % 11
    r = tukey_median(gen_gaussian(n, p, seed, digits=6).cloud, certify=False)
    rep = verify_theorem1(r).check()
    margins[(p, rep.details["branch"], rep.details["margin"])] += 1

print("bound minus kappa* over 40 Gaussian clouds, by (p, branch, margin):")
for key in sorted(margins):
    print(f"  {key}: {margins[key]} clouds")

for p in (2, 3):
    named = gen_bound_attaining(p)
    r = tukey_median(named.cloud)
    b = depth_bounds(named.cloud.n, p)
    print(f"\n{named.name}: n = {named.cloud.n}, kappa* = {r.kappa_star}, "
          f"bound floor((n-p+2)/2) = {b.kappa_hi_thm1}, dim M = {r.region.dim}")
