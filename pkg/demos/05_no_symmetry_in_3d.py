"""General position rules out halfspace symmetry from three dimensions on.

A cloud is halfspace symmetric about theta when every closed halfspace with
theta on its boundary holds at least half of the points.  In R^3 and up the
depth bound keeps kappa*/n below one half for clouds in general position, so
no point qualifies, however symmetric the sampling distribution.

Run:  python demos/05_no_symmetry_in_3d.py
"""
from fractions import Fraction

from tukeymedian import halfspace_symmetric, tukey_median, verify_prop1
from tukeymedian.datasets import gen_gaussian, gen_square4

for n, p, seed in [(12, 3, 3), (20, 3, 4), (15, 4, 5)]:
    cloud = gen_gaussian(n, p, seed).cloud
    r = tukey_median(cloud)
    rep = verify_prop1(cloud, r.kappa_star)
    any_symmetric = any(halfspace_symmetric(cloud, x) for x in list(cloud.points) + [r.median])
    print(f"n={n} p={p}: kappa*/n = {Fraction(r.kappa_star, n)} "
          f"(< 1/2: {rep.passed}); some sample or the median symmetric: {any_symmetric}")

# In the plane the statement does not apply: the unit square is symmetric
# about its center.
sq = gen_square4().cloud
print("unit square, center symmetric:", halfspace_symmetric(sq, (Fraction(1, 2), Fraction(1, 2))))
