"""Shared builders for the test suite."""
from __future__ import annotations

import random
from fractions import Fraction
from pathlib import Path

from tukeymedian.datasets import gen_gaussian
from tukeymedian.geometry import PointCloud

HERE = Path(__file__).parent
CORPUS = HERE / "corpus"
GOLDEN = HERE / "golden"


def random_clouds(count: int, ps, n_max: int, seed: int, digits: int = 6):
    """``count`` seeded Gaussian clouds with ``p`` drawn from ``ps`` and
    ``n`` uniform in ``[p + 2, n_max]``."""
    rng = random.Random(seed)
    out = []
    for i in range(count):
        p = rng.choice(list(ps))
        n = rng.randint(p + 2, n_max)
        out.append(gen_gaussian(n, p, seed * 100_000 + i, digits=digits).cloud)
    return out


def random_rational(rng: random.Random, lo: int = -20, hi: int = 20, den: int = 16) -> Fraction:
    return Fraction(rng.randint(lo * den, hi * den), rng.randint(1, den))


def random_query(rng: random.Random, cloud: PointCloud):
    """A query mixing sample points, convex combinations and far points."""
    kind = rng.random()
    if kind < 0.2:
        return cloud[rng.randrange(cloud.n)]
    if kind < 0.85:
        w = [Fraction(rng.randint(0, 9)) for _ in range(cloud.n)]
        if not any(w):
            w[0] = Fraction(1)
        s = sum(w)
        return tuple(sum(wi * x[j] for wi, x in zip(w, cloud.points)) / s for j in range(cloud.p))
    return tuple(random_rational(rng, -4, 4) for _ in range(cloud.p))


def corpus_files():
    return sorted(CORPUS.glob("*.csv"))
