"""Depth, depth regions and the Tukey median on two tiny planar clouds.

Run:  python demos/01_depth_and_median.py
"""
from fractions import Fraction

from tukeymedian import depth_region, tukey_depth, tukey_median
from tukeymedian.datasets import gen_square4, gen_triangle_plus_center

square = gen_square4().cloud
print("Unit square corners:", [tuple(map(str, x)) for x in square.points])

# Depth counts the fewest sample points in a closed halfplane whose boundary
# passes through the query.  The center is the deepest point.
for q in [(Fraction(1, 2), Fraction(1, 2)), (0, 0), (2, 2)]:
    d = tukey_depth(q, square)
    print(f"  depth of {tuple(map(str, q))}: {d}  (witness direction {tuple(map(str, d.witness))})")

# Depth regions shrink as the level rises; level 2 is the single center point.
for k in (1, 2, 3):
    reg = depth_region(square, k)
    verts = [tuple(map(str, v)) for v in reg.vertices]
    print(f"  D_{k}: dim {reg.dim}, vertices {verts}")

med = tukey_median(square)
print(f"Maximal depth {med.kappa_star}/{square.n} = {med.lambda_star}; median {tuple(map(str, med.median))}")

# A triangle with one interior point: the interior sample is the whole median
# region, so here a sample point does serve as the median.
tri = gen_triangle_plus_center().cloud
med = tukey_median(tri)
print()
print("Triangle plus interior point:")
print(f"  kappa* = {med.kappa_star}, median {tuple(map(str, med.median))}")
print(f"  deepest samples {med.deepest_sample_indices}, each a vertex of M: {med.sample_is_vertex}")
