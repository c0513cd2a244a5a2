import random
from fractions import Fraction

import numpy as np
import pytest

from tukeymedian import lp


def _system(rows):
    A = np.array([r[:-1] for r in rows], dtype=object)
    b = np.array([r[-1] for r in rows], dtype=object)
    return A, b


# triangle x >= 0, y >= 0, x + y <= 1
TRIANGLE = _system([(1, 0, 0), (0, 1, 0), (-1, -1, -1)])


def test_minimize_triangle_vertex():
    G, h = lp.with_box(*TRIANGLE, [-5, -5], [5, 5])
    res = lp.minimize([-1, -2], G, h)
    assert res.x == (0, 1) and res.value == -2
    assert all(y >= 0 for y in res.duals)


def test_minimize_exact_path_without_float_proposal(monkeypatch):
    monkeypatch.setattr(lp, "_float_guess", lambda c, G, h: None)
    G, h = lp.with_box(*TRIANGLE, [-5, -5], [5, 5])
    res = lp.minimize([-1, -2], G, h, basis=[0, 1])
    assert res.x == (0, 1) and res.value == -2
    with pytest.raises(lp.LPError):
        lp.minimize([-1, -2], G, h)


def test_feasible_point_is_exact():
    feas = lp.find_feasible_point(*TRIANGLE, [-5, -5], [5, 5])
    assert feas.feasible
    assert lp.is_feasible_point(*TRIANGLE, feas.point)


def test_thin_region_found_exactly():
    # 3x - 3y >= 1 and x - y <= 1/3 meet in a line segment inside the box
    A, b = _system([(3, -3, 1), (-3, 3, -1)])
    feas = lp.find_feasible_point(A, b, [0, 0], [1, 1])
    assert feas.feasible
    x, y = feas.point
    assert x - y == Fraction(1, 3)


def test_infeasible_has_certificate():
    A, b = _system([(1, 0, 1), (-1, 0, 0)])  # x >= 1 and x <= 0
    feas = lp.find_feasible_point(A, b, [-3, -3], [3, 3])
    assert not feas.feasible
    assert feas.certificate and all(y > 0 for y in feas.certificate.values())
    # the multipliers combine rows of A into 0 . x >= positive
    comb = sum((y * A[i] for i, y in feas.certificate.items()), np.zeros(2, dtype=object))
    rhs = sum(y * b[i] for i, y in feas.certificate.items())
    assert list(comb) == [0, 0] and rhs > 0


def test_random_systems_agree_with_brute_force():
    rng = random.Random(5)
    for _ in range(40):
        rows = [(rng.randint(-5, 5), rng.randint(-5, 5), rng.randint(-6, 3)) for _ in range(6)]
        A, b = _system(rows)
        feas = lp.find_feasible_point(A, b, [-4, -4], [4, 4])
        # brute force: feasibility is attained at a vertex of the boxed system
        G, h = lp.with_box(A, b, [-4, -4], [4, 4])
        found = False
        for i in range(len(G)):
            for j in range(i + 1, len(G)):
                d = G[i][0] * G[j][1] - G[i][1] * G[j][0]
                if d == 0:
                    continue
                x = Fraction(h[i] * G[j][1] - G[i][1] * h[j], d)
                y = Fraction(G[i][0] * h[j] - h[i] * G[j][0], d)
                if lp.is_feasible_point(G, h, (x, y)):
                    found = True
        assert feas.feasible == found
        if feas.feasible:
            assert lp.is_feasible_point(A, b, feas.point)
