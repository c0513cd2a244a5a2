import random
from fractions import Fraction

import pytest

from helpers import random_clouds, random_query
from tukeymedian.datasets import gen_square4
from tukeymedian.geometry import PointCloud
from tukeymedian.oracles import (
    GridSpec,
    OracleLimitError,
    depth_oracle_directions,
    depth_oracle_exhaustive,
    median_oracle_grid,
)

SQ4 = gen_square4().cloud


def test_exhaustive_square_values():
    assert depth_oracle_exhaustive((Fraction(1, 2), Fraction(1, 2)), SQ4) == 2
    assert depth_oracle_exhaustive((0, 0), SQ4) == 1
    assert depth_oracle_exhaustive((5, 5), SQ4) == 0


def test_exhaustive_limits():
    big = random_clouds(1, (2,), 20, seed=1)[0]
    if big.n > 14:
        with pytest.raises(OracleLimitError):
            depth_oracle_exhaustive(big[0], big)
    c4 = PointCloud.from_rows([(i, i * i, i ** 3, i ** 4) for i in range(6)])
    with pytest.raises(OracleLimitError):
        depth_oracle_exhaustive(c4[0], c4)


def test_exhaustive_handles_rank_deficient_offsets():
    # all points on a line through the query: the arrangement has rank one
    c = PointCloud.from_rows([(0, 0), (1, 1), (2, 2), (3, 3)])
    assert depth_oracle_exhaustive((Fraction(3, 2), Fraction(3, 2)), c) == 2


def test_direction_oracle_never_undercounts():
    rng = random.Random(3)
    for cloud in random_clouds(15, (2, 3), 10, seed=51):
        x = random_query(rng, cloud)
        assert depth_oracle_directions(x, cloud, count=256) >= depth_oracle_exhaustive(x, cloud)


def test_direction_oracle_deterministic():
    cloud = random_clouds(1, (3,), 10, seed=52)[0]
    x = cloud[0]
    assert depth_oracle_directions(x, cloud, count=64, seed=4) == \
        depth_oracle_directions(x, cloud, count=64, seed=4)


def test_grid_oracle_square():
    spec = GridSpec((0, 0), (1, 1), resolution=5, directions=16)
    g = median_oracle_grid(SQ4, spec)
    assert g.max_kappa == 2 and g.argmax == ((Fraction(1, 2), Fraction(1, 2)),)
    assert g.evaluator == "exhaustive"


def test_grid_oracle_rejects_empty_box():
    with pytest.raises(ValueError, match="empty bounding box"):
        median_oracle_grid(SQ4, GridSpec((0, 0), (0, 1)))


def test_grid_spec_validation():
    with pytest.raises(ValueError):
        GridSpec((0,), (1, 1))
    with pytest.raises(ValueError):
        GridSpec((0, 0), (1, 1), resolution=1)
