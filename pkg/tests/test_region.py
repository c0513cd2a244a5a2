from fractions import Fraction

import numpy as np
import pytest
from scipy.spatial import ConvexHull

from helpers import random_clouds
from tukeymedian.datasets import gen_triangle_plus_center
from tukeymedian.geometry import Hyperplane, PointCloud
from tukeymedian.median import filters_agree, max_depth
from tukeymedian.oracles import GridSpec, depth_oracle_exhaustive
from tukeymedian.region import (
    Halfspace,
    UnboundedRegionError,
    depth_region,
    polytope_centroid,
    region_centroid,
    region_dim,
    region_halfspaces,
    region_nonempty,
    region_vertices,
)

SQ4 = PointCloud.from_rows([(0, 0), (1, 0), (0, 1), (1, 1)])
HALF = Fraction(1, 2)


def test_square_levels():
    d1 = depth_region(SQ4, 1)
    assert set(d1.vertices) == set(SQ4.points) and d1.dim == 2
    d2 = depth_region(SQ4, 2, certify="full")
    assert d2.vertices == ((HALF, HALF),) and d2.dim == 0
    d3 = depth_region(SQ4, 3)
    assert d3.is_empty and d3.dim == -1
    assert d3.infeasibility_certificate
    assert region_nonempty(SQ4, 2) and not region_nonempty(SQ4, 3)


def test_triangle_center_region_is_the_sample():
    cloud = gen_triangle_plus_center().cloud
    d2 = depth_region(cloud, 2, certify="full")
    assert d2.vertices == (cloud[3],)


def test_level_out_of_range():
    with pytest.raises(ValueError):
        depth_region(SQ4, 0)
    with pytest.raises(ValueError):
        depth_region(SQ4, 5)


def test_halfspaces_contain_region():
    d2 = depth_region(SQ4, 2)
    hs = region_halfspaces(SQ4, 2)
    assert hs and all(h.contains((HALF, HALF)) for h in hs)
    assert d2.contains((HALF, HALF)) and not d2.contains((HALF, Fraction(1, 3)))


def test_cdd_and_exhaustive_vertices_agree():
    for cloud in random_clouds(6, (2, 3), 8, seed=21):
        k, _ = max_depth(cloud)
        hs = region_halfspaces(cloud, k)
        assert set(region_vertices(hs)) == set(region_vertices(hs, method="exhaustive"))


def test_unbounded_intersection_reports_direction():
    h = Halfspace(Hyperplane((1, 0), Fraction(0)), 1)
    with pytest.raises(UnboundedRegionError) as info:
        region_vertices([h])
    d = info.value.direction
    assert d[0] >= 0


def test_nesting_on_random_clouds():
    for cloud in random_clouds(10, (2, 3), 10, seed=22):
        k_star, _ = max_depth(cloud)
        prev = None
        for k in range(1, k_star + 1):
            reg = depth_region(cloud, k)
            if prev is not None:
                assert all(prev.contains(v) for v in reg.vertices)
            prev = reg
        assert not region_nonempty(cloud, k_star + 1) if k_star < cloud.n else True


@pytest.mark.parametrize("seed", [31, 32, 33])
def test_completeness_on_grid(seed):
    """Membership equals ``oracle depth >= k`` at every grid point."""
    cloud = random_clouds(1, (2,), 10, seed=seed)[0]
    k_star, _ = max_depth(cloud)
    regions = {k: depth_region(cloud, k) for k in range(1, k_star + 1)}
    for g in GridSpec.around(cloud, resolution=13).points():
        depth = depth_oracle_exhaustive(g, cloud)
        for k, reg in regions.items():
            assert reg.contains(g) == (depth >= k)


def test_filters_agree_at_max_depth():
    for cloud in random_clouds(8, (2, 3), 10, seed=23):
        k, _ = max_depth(cloud)
        assert filters_agree(cloud, k)


def test_level_one_is_convex_hull():
    for cloud in random_clouds(8, (2, 3), 12, seed=24):
        pts = np.array([[float(c) for c in x] for x in cloud.points])
        hull = {cloud[i] for i in ConvexHull(pts).vertices}
        assert set(depth_region(cloud, 1).vertices) == hull


def test_polytope_centroid_simple_shapes():
    assert polytope_centroid([(0, 0), (1, 0), (0, 1), (1, 1)]) == (HALF, HALF)
    assert polytope_centroid([(0, 0), (3, 0), (0, 3)]) == (1, 1)
    assert polytope_centroid([(0, 0), (2, 2)]) == (1, 1)
    cube = [(a, b, c) for a in (0, 2) for b in (0, 2) for c in (0, 2)]
    assert polytope_centroid(cube) == (1, 1, 1)


def test_polytope_centroid_is_area_weighted():
    # a kite whose vertex average differs from its area centroid
    pts = [(0, 0), (4, 0), (4, 1), (0, 4)]
    cx, cy = polytope_centroid(pts)
    # shoelace reference
    area = Fraction(0)
    sx = sy = Fraction(0)
    ring = pts + pts[:1]
    for (x0, y0), (x1, y1) in zip(ring, ring[1:]):
        cr = Fraction(x0 * y1 - x1 * y0)
        area += cr
        sx += (x0 + x1) * cr
        sy += (y0 + y1) * cr
    assert (cx, cy) == (sx / (3 * area), sy / (3 * area))


def test_region_centroid_lies_inside():
    for cloud in random_clouds(6, (2, 3), 12, seed=25):
        k, _ = max_depth(cloud)
        reg = depth_region(cloud, k)
        c = region_centroid(reg)
        assert reg.contains(c)
        assert region_dim([c]) == 0
