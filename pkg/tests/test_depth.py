import random
from fractions import Fraction

import pytest

from helpers import random_clouds, random_query
from tukeymedian.datasets import gen_triangle_plus_center
from tukeymedian.depth import (
    closed_count,
    depth_all_samples,
    halfspace_symmetric,
    perturb_direction,
    tukey_depth,
)
from tukeymedian.geometry import GeneralPositionError, PointCloud
from tukeymedian.oracles import depth_oracle_exhaustive

SQ4 = PointCloud.from_rows([(0, 0), (1, 0), (0, 1), (1, 1)])


@pytest.mark.parametrize("x, kappa", [
    ((Fraction(1, 2), Fraction(1, 2)), 2),
    ((0, 0), 1),
    ((Fraction(1, 4), Fraction(1, 2)), 1),
    ((2, 2), 0),
    ((Fraction(1, 2), 0), 1),
])
def test_square_depths(x, kappa):
    d = tukey_depth(x, SQ4)
    assert d.kappa == kappa and d.n == 4
    assert d.depth == Fraction(kappa, 4)


def test_witness_attains_the_count():
    rng = random.Random(1)
    for cloud in random_clouds(20, (2, 3), 10, seed=3):
        x = random_query(rng, cloud)
        d = tukey_depth(x, cloud)
        assert closed_count(cloud, x, d.witness) == d.kappa


def test_triangle_center_sample_depths():
    cloud = gen_triangle_plus_center().cloud
    s = depth_all_samples(cloud)
    assert [d.kappa for d in s.depths] == [1, 1, 1, 2]
    assert s.deepest == (3,)


def test_one_dimensional_depth_is_rank_depth():
    c = PointCloud.from_rows([(0,), (1,), (3,), (7,), (8,)])
    assert [tukey_depth(x, c).kappa for x in c.points] == [1, 2, 3, 2, 1]
    assert tukey_depth((2,), c).kappa == 2


def test_degenerate_cloud_needs_force():
    c = PointCloud.from_rows([(0, 0), (1, 1), (2, 2), (0, 1)])
    with pytest.raises(GeneralPositionError):
        tukey_depth((1, 1), c)
    d = tukey_depth((1, 1), c, force=True)
    assert d.degenerate and d.kappa == depth_oracle_exhaustive((1, 1), c)


def test_engine_matches_exhaustive_small():
    rng = random.Random(7)
    for cloud in random_clouds(30, (2, 3), 9, seed=9):
        for _ in range(3):
            x = random_query(rng, cloud)
            assert tukey_depth(x, cloud).kappa == depth_oracle_exhaustive(x, cloud)


def test_halfspace_symmetric_square_center():
    assert halfspace_symmetric(SQ4, (Fraction(1, 2), Fraction(1, 2)))
    assert not halfspace_symmetric(SQ4, (0, 0))


def test_perturb_direction_pushes_on_points_off():
    cloud = gen_triangle_plus_center().cloud  # X_3 = (2, 3/2)
    z = (0, Fraction(3, 2))
    u = perturb_direction((0, 1), z, [3], cloud)
    # X_3 now lies strictly on the far side, the rest keep their sides
    assert sum(a * (b - c) for a, b, c in zip(u, cloud[3], z)) > 0
    for i in range(3):
        before = sum(a * (b - c) for a, b, c in zip((0, 1), cloud[i], z))
        after = sum(a * (b - c) for a, b, c in zip(u, cloud[i], z))
        assert (before > 0) == (after > 0)


def test_perturb_direction_rejects_unlisted_on_point():
    with pytest.raises(ValueError):
        perturb_direction((0, 1), (5, 0), [0], SQ4)


def test_perturb_direction_rejects_pivot_in_span():
    with pytest.raises(ValueError, match="affine span"):
        perturb_direction((0, 1), (Fraction(1, 2), 0), [0, 1], SQ4)


def test_perturb_direction_empty_on_set_is_identity():
    assert perturb_direction((1, 2), (5, 5), [], SQ4) == (1, 2)
