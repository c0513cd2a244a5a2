from fractions import Fraction

import pytest

from helpers import CORPUS, random_clouds
from tukeymedian.datasets import gen_bound_attaining, gen_square4, gen_triangle_plus_center, load_csv
from tukeymedian.median import (
    PreconditionError,
    depth_bounds,
    max_depth,
    median_depth_check,
    search_savings,
    tukey_median,
    verify_prop1,
    verify_theorem1,
    verify_theorem2,
    verify_theorem3,
)
from tukeymedian.oracles import depth_oracle_exhaustive
from tukeymedian.geometry import PointCloud


def test_bounds_arithmetic():
    b = depth_bounds(25, 5)
    assert b.as_dict() == {"lo": 5, "dg92": 13, "thm1": 11, "fulldim": 10}
    assert depth_bounds(4, 2).as_dict() == {"lo": 2, "dg92": 2, "thm1": 2, "fulldim": 1}
    with pytest.raises(PreconditionError):
        depth_bounds(3, 3)


def test_search_savings_fractions():
    s = search_savings(25, 5)
    assert s["interval_length"] == {"dg92": 8, "thm1": 6}
    assert s["interval_reduction"] == Fraction(1, 4)
    assert s["level_count"] == {"dg92": 9, "thm1": 7}
    assert s["level_reduction"] == Fraction(2, 9)
    assert search_savings(10, 2)["interval_reduction"] == 0


def test_square_median():
    r = tukey_median(gen_square4().cloud)
    assert r.kappa_star == 2 and r.lambda_star == Fraction(1, 2)
    assert r.median == (Fraction(1, 2), Fraction(1, 2))
    assert r.is_singleton and r.deepest_sample_indices == ()
    assert median_depth_check(r)


def test_triangle_center_median_is_sample():
    r = tukey_median(gen_triangle_plus_center().cloud)
    assert r.median == (2, Fraction(3, 2))
    assert r.deepest_sample_indices == (3,) and r.sample_is_vertex == (True,)
    verify_theorem2(r).check()
    assert verify_theorem3(r).applicable


@pytest.mark.parametrize("search", ["scan", "binary"])
@pytest.mark.parametrize("strategy", ["dg92", "thm1"])
def test_strategies_agree(strategy, search):
    for cloud in random_clouds(6, (2, 3), 14, seed=41):
        k_ref, _ = max_depth(cloud, "thm1")
        k, computed = max_depth(cloud, strategy, search=search)
        assert k == k_ref and computed >= 1


def test_scan_counts_levels():
    cloud = gen_square4().cloud
    # thm1 bound is 2 and level 2 is nonempty: a single test
    assert max_depth(cloud, "thm1") == (2, 1)


def test_verifiers_on_bound_asset():
    r = tukey_median(gen_bound_attaining(3).cloud)
    rep = verify_theorem1(r)
    assert rep.passed and rep.details["margin"] == 0
    assert verify_theorem3(r).status == "pass"
    assert verify_prop1(r.cloud, r.kappa_star).status == "pass"


def test_theorem3_not_applicable_below_bound():
    cloud = random_clouds(1, (2,), 12, seed=3)[0]
    r = tukey_median(cloud)
    if r.kappa_star < r.bounds.kappa_hi_thm1:
        assert verify_theorem3(r).status == "not applicable"


def test_prop1_needs_three_dimensions():
    with pytest.raises(PreconditionError):
        verify_prop1(gen_square4().cloud)


def test_degenerate_median_needs_force():
    c = PointCloud.from_rows([(0, 0), (1, 1), (2, 2), (0, 2), (2, 0)])
    with pytest.raises(ValueError):
        tukey_median(c)
    r = tukey_median(c, force=True)
    assert r.degenerate and r.median == (1, 1)
    assert verify_theorem1(r).status == "not applicable"


def test_single_point_statement_counterexample():
    """A general-position cloud with kappa_star at the bound whose median
    region is a segment, confirmed by the independent exhaustive oracle."""
    cloud = load_csv(CORPUS / "gauss_p3_n8.csv").cloud
    assert cloud.in_general_position
    r = tukey_median(cloud)
    assert r.kappa_star == depth_bounds(8, 3).kappa_hi_thm1 == 3
    assert r.region.dim == 1
    a, b = r.region.vertices
    for t in (Fraction(0), Fraction(1, 3), Fraction(1, 2), Fraction(1)):
        x = tuple(ai + t * (bi - ai) for ai, bi in zip(a, b))
        assert depth_oracle_exhaustive(x, cloud) == 3
    assert verify_theorem3(r).status == "fail"
