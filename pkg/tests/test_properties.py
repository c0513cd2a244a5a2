"""Property-based differential tests against the independent oracles."""
from fractions import Fraction

from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from tukeymedian import _exact
from tukeymedian.depth import closed_count, perturb_direction, tukey_depth
from tukeymedian.geometry import PointCloud, affine_transform, apply_affine
from tukeymedian.oracles import depth_oracle_directions, depth_oracle_exhaustive
from tukeymedian.region import polytope_centroid, region_nonempty

SETTINGS = settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
coord = st.integers(-12, 12)


@st.composite
def clouds(draw, ps=(2, 3), n_max=9):
    p = draw(st.sampled_from(ps))
    n = draw(st.integers(p + 1, n_max))
    rows = draw(st.lists(st.tuples(*[coord] * p), min_size=n, max_size=n, unique=True))
    cloud = PointCloud.from_rows(rows)
    assume(cloud.in_general_position)
    return cloud


@st.composite
def cloud_and_query(draw):
    cloud = draw(clouds())
    if draw(st.booleans()):
        x = cloud[draw(st.integers(0, cloud.n - 1))]
    else:
        x = tuple(Fraction(draw(st.integers(-48, 48)), 4) for _ in range(cloud.p))
    return cloud, x


@SETTINGS
@given(cloud_and_query())
def test_engine_equals_exhaustive_oracle(data):
    cloud, x = data
    d = tukey_depth(x, cloud)
    assert d.kappa == depth_oracle_exhaustive(x, cloud)
    assert closed_count(cloud, x, d.witness) == d.kappa


@SETTINGS
@given(cloud_and_query())
def test_direction_oracle_is_upper_bound(data):
    cloud, x = data
    assert depth_oracle_directions(x, cloud, count=64) >= tukey_depth(x, cloud).kappa


@st.composite
def affine_maps(draw, p):
    A = [[Fraction(draw(st.integers(-5, 5)), draw(st.integers(1, 4))) for _ in range(p)]
         for _ in range(p)]
    b = [Fraction(draw(st.integers(-9, 9)), draw(st.integers(1, 3))) for _ in range(p)]
    return A, b


@SETTINGS
@given(st.data())
def test_depth_affine_invariant(data):
    cloud, x = data.draw(cloud_and_query())
    A, b = data.draw(affine_maps(cloud.p))
    try:
        image = affine_transform(cloud, A, b)
    except ValueError:
        assume(False)
    assert tukey_depth(apply_affine(A, b, x), image).kappa == tukey_depth(x, cloud).kappa


@SETTINGS
@given(st.data())
def test_centroid_affine_equivariant(data):
    cloud = data.draw(clouds(ps=(2, 3)))
    A, b = data.draw(affine_maps(cloud.p))
    try:
        image = affine_transform(cloud, A, b)
    except ValueError:
        assume(False)
    verts = list(cloud.points)
    assert polytope_centroid(image.points) == apply_affine(A, b, polytope_centroid(verts))


@SETTINGS
@given(clouds(ps=(2, 3), n_max=8))
def test_emptiness_is_monotone_in_level(cloud):
    flags = [region_nonempty(cloud, k) for k in range(1, cloud.n + 1)]
    assert flags[0]
    assert flags == sorted(flags, reverse=True)


@st.composite
def perturb_instances(draw):
    cloud = draw(clouds(ps=(2, 3), n_max=9))
    p = cloud.p
    m = draw(st.integers(1, p - 1)) if p > 1 else 1
    on = draw(st.lists(st.integers(0, cloud.n - 1), min_size=m, max_size=m, unique=True))
    # a pivot z off the affine span of the chosen samples, on a hyperplane through them
    z = tuple(Fraction(draw(st.integers(-40, 40)), 3) for _ in range(p))
    return cloud, on, z


@SETTINGS
@given(perturb_instances())
def test_perturb_direction_guarantees(data):
    cloud, on, z = data
    rows = [[a - b for a, b in zip(cloud[i], z)] for i in on]
    normals = _exact.nullspace(rows, cloud.p)
    assume(normals)
    u = normals[0]
    assume(all(_exact.dot(u, [a - b for a, b in zip(cloud[i], z)]) != 0
               for i in range(cloud.n) if i not in on))
    try:
        t = perturb_direction(u, z, on, cloud)
    except ValueError as exc:
        assert "affine span" in str(exc)
        return
    for i in range(cloud.n):
        before = _exact.dot(u, [a - b for a, b in zip(cloud[i], z)])
        after = _exact.dot(t, [a - b for a, b in zip(cloud[i], z)])
        if i in on:
            assert before == 0 and after > 0
        else:
            assert (before > 0) == (after > 0)
