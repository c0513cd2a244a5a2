"""A cloud reaching the depth bound whose median region is not a single point.

Eight Gaussian points in R^3 (in general position) reach kappa* = 3 =
floor((8 - 3 + 2)/2), yet the median region is a short segment.  Every step
below is exact, and the segment's depth is confirmed with the exhaustive
oracle, which shares no code with the depth engine.

Run:  python demos/04_bound_without_single_point.py
"""
from fractions import Fraction
from itertools import product
from pathlib import Path

from tukeymedian import depth_bounds, tukey_median
from tukeymedian.datasets import load_csv
from tukeymedian.oracles import depth_oracle_exhaustive

path = Path(__file__).resolve().parent.parent / "tests" / "corpus" / "gauss_p3_n8.csv"
cloud = load_csv(path).cloud
print(f"general position: {cloud.in_general_position}")

r = tukey_median(cloud)
bound = depth_bounds(cloud.n, cloud.p).kappa_hi_thm1
print(f"kappa* = {r.kappa_star}, bound = {bound}, dim M = {r.region.dim}")
a, b = r.region.vertices
print("segment endpoints (decimal):")
for v in (a, b):
    print("  ", [f"{float(c):.9f}" for c in v])

print("exhaustive-oracle depth along the segment:")
for t in (Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(1)):
    x = tuple(ai + t * (bi - ai) for ai, bi in zip(a, b))
    print(f"  t = {t}: {depth_oracle_exhaustive(x, cloud)}")

mid = tuple((ai + bi) / 2 for ai, bi in zip(a, b))
off = {depth_oracle_exhaustive(tuple(m + Fraction(e, 10 ** 6) for m, e in zip(mid, step)), cloud)
       for step in product((-1, 0, 1), repeat=3) if any(step)}
print(f"depths a millionth away from the midpoint, in all 26 directions: {sorted(off)}")
