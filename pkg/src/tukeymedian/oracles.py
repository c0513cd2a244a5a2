"""Slow, independent reference implementations used to test the engines.

Nothing here imports the depth or region engines' internals.  The exhaustive
oracle enumerates every open cell of the central arrangement
``{u : u . (X_i - x) = 0}`` with its own exact geometry; the direction oracle
counts over a fixed set of directions and can only overestimate depth.
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Sequence

import numpy as np
from scipy.special import ndtri
from scipy.stats import qmc

from .geometry import PointCloud, as_point


class OracleLimitError(ValueError):
    """Input outside the sizes an oracle accepts."""


EXHAUSTIVE_MAX_P = 3
EXHAUSTIVE_MAX_N = 14


@dataclass(frozen=True)
class GridSpec:
    """Bounding box, grid resolution per axis, direction count and seed."""

    lo: tuple[Fraction, ...]
    hi: tuple[Fraction, ...]
    resolution: int = 11
    directions: int = 256
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "lo", as_point(self.lo))
        object.__setattr__(self, "hi", as_point(self.hi))
        if len(self.lo) != len(self.hi):
            raise ValueError("box corners differ in dimension")
        if self.resolution < 2:
            raise ValueError("resolution must be at least 2")
        if self.directions < 1:
            raise ValueError("need at least one direction")

    @classmethod
    def around(cls, cloud: PointCloud, margin=Fraction(1, 4), **kw) -> "GridSpec":
        lo = [min(x[j] for x in cloud.points) for j in range(cloud.p)]
        hi = [max(x[j] for x in cloud.points) for j in range(cloud.p)]
        pad = [(h - low) * Fraction(margin) for low, h in zip(lo, hi)]
        return cls(tuple(a - d for a, d in zip(lo, pad)), tuple(b + d for b, d in zip(hi, pad)), **kw)

    def points(self):
        axes = []
        for a, b in zip(self.lo, self.hi):
            step = (b - a) / (self.resolution - 1)
            axes.append([a + i * step for i in range(self.resolution)])
        return product(*axes)


def _dot(u, v):
    return sum((a * b for a, b in zip(u, v)), 0)


def _closed_count(offsets, u) -> int:
    return sum(1 for v in offsets if _dot(u, v) <= 0)


# --- direction oracle ---------------------------------------------------------

@functools.lru_cache(maxsize=32)
def _direction_set(p: int, count: int, seed: int) -> tuple[tuple[Fraction, ...], ...]:
    """Signed coordinate axes first, then scrambled Sobol points mapped to the
    sphere; every direction is converted to an exact rational."""
    dirs = []
    for j in range(p):
        for s in (1, -1):
            e = [Fraction(0)] * p
            e[j] = Fraction(s)
            dirs.append(tuple(e))
    need = count - len(dirs)
    if need > 0:
        if p == 1:
            extra = []
        else:
            m = max(1, math.ceil(math.log2(need)))
            sample = qmc.Sobol(d=p, scramble=True, seed=seed).random_base2(m)[:need]
            sample = np.clip(sample, 1e-12, 1 - 1e-12)
            g = ndtri(sample)
            g /= np.linalg.norm(g, axis=1, keepdims=True)
            extra = [tuple(Fraction(float(c)) for c in row) for row in g]
        dirs.extend(extra)
    return tuple(dirs[:count])


def depth_oracle_directions(x: Sequence, cloud: PointCloud, spec: GridSpec | None = None, *,
                            count: int | None = None, seed: int = 0,
                            extra_directions: Sequence[Sequence] = ()) -> int:
    """Minimum closed count over a finite direction set: an upper bound on kappa.

    The set holds the ``2p`` signed axes followed by quasi-random directions,
    truncated to ``count`` (or ``spec.directions``); ``extra_directions`` are
    appended verbatim.
    """
    if spec is not None:
        count, seed = spec.directions, spec.seed
    count = 1024 if count is None else count
    x = as_point(x)
    offsets = [tuple(a - b for a, b in zip(X, x)) for X in cloud.points]
    dirs = list(_direction_set(cloud.p, count, seed))
    dirs += [tuple(Fraction(c) for c in d) for d in extra_directions]
    return min(_closed_count(offsets, u) for u in dirs)


# --- exhaustive oracle --------------------------------------------------------

def _cross(a, b):
    return (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])


def _half(v) -> int:
    """0 for angles in [0, pi), 1 for [pi, 2 pi)."""
    return 0 if (v[1] > 0 or (v[1] == 0 and v[0] > 0)) else 1


def _angle_cmp(a, b) -> int:
    ha, hb = _half(a), _half(b)
    if ha != hb:
        return -1 if ha < hb else 1
    c = a[0] * b[1] - a[1] * b[0]
    return -1 if c > 0 else (1 if c < 0 else 0)


def _cells_2d(vectors) -> list[tuple]:
    """One direction strictly inside every open cell of the lines ``a . w = 0``."""
    rays = []
    for a in vectors:
        rays.append((-a[1], a[0]))
        rays.append((a[1], -a[0]))
    rays.sort(key=functools.cmp_to_key(_angle_cmp))
    uniq = []
    for r in rays:
        if not uniq or _angle_cmp(uniq[-1], r) != 0:
            uniq.append(r)
    if len(uniq) == 2:
        # a single line: the two sides are represented by its normals
        a = vectors[0]
        return [tuple(a), tuple(-c for c in a)]
    return [tuple(p + q for p, q in zip(uniq[i], uniq[(i + 1) % len(uniq)])) for i in range(len(uniq))]


def _span_basis(vectors):
    """A maximal linearly independent subset of ``vectors`` (exact)."""
    basis, reduced = [], []
    for v in vectors:
        w = [Fraction(c) for c in v]
        for b, piv in reduced:
            if w[piv] != 0:
                f = w[piv] / b[piv]
                w = [p - f * q for p, q in zip(w, b)]
        piv = next((i for i, c in enumerate(w) if c != 0), None)
        if piv is not None:
            reduced.append((w, piv))
            basis.append(tuple(v))
    return basis


def _cell_directions(vectors, p):
    """Directions hitting every open cell of the central arrangement with
    normals ``vectors`` (all nonzero) in ``R^p``, for ``p <= 3``."""
    basis = _span_basis(vectors)
    r = len(basis)
    if r < p:
        # only the projection onto span(vectors) matters; work in coordinates
        reduced = [tuple(_dot(b, v) for b in basis) for v in vectors]
        return [tuple(sum((c * b[k] for c, b in zip(w, basis)), Fraction(0)) for k in range(p))
                for w in _cell_directions(reduced, r)]
    if p == 1:
        return [(Fraction(1),), (Fraction(-1),)]
    if p == 2:
        return _cells_2d(vectors)
    out = []
    for a, b in combinations(vectors, 2):
        t = _cross(a, b)
        if not any(t):
            continue
        for ray in (t, tuple(-c for c in t)):
            through = [v for v in vectors if _dot(v, ray) == 0]
            e1 = _cross(ray, through[0])
            e2 = _cross(ray, e1)
            local = [(_dot(v, e1), _dot(v, e2)) for v in through]
            for w2 in _cells_2d(local):
                w = tuple(w2[0] * c1 + w2[1] * c2 for c1, c2 in zip(e1, e2))
                eps = None
                for v in vectors:
                    vt, vw = _dot(v, ray), _dot(v, w)
                    if vt != 0 and vw != 0:
                        ratio = Fraction(abs(vt), abs(vw))
                        eps = ratio if eps is None or ratio < eps else eps
                eps = Fraction(1) if eps is None else eps / 2
                # ray + eps * w, scaled by eps.denominator to stay integral
                out.append(tuple(c * eps.denominator + eps.numerator * d for c, d in zip(ray, w)))
    return out


def depth_oracle_exhaustive(x: Sequence, cloud: PointCloud) -> int:
    """Exact ``kappa`` by visiting every open cell of the direction arrangement.

    The closed count is smallest on open cells (moving off a boundary only
    removes points), so the minimum over one representative per cell is the
    depth.  Limited to ``p <= 3`` and ``n <= 14``.
    """
    if cloud.p > EXHAUSTIVE_MAX_P or cloud.n > EXHAUSTIVE_MAX_N:
        raise OracleLimitError(f"exhaustive oracle supports p <= {EXHAUSTIVE_MAX_P}, "
                               f"n <= {EXHAUSTIVE_MAX_N}; got p={cloud.p}, n={cloud.n}")
    x = as_point(x)
    if len(x) != cloud.p:
        raise ValueError("query dimension differs from the cloud")
    offsets = [tuple(a - b for a, b in zip(X, x)) for X in cloud.points]
    scale = math.lcm(*(c.denominator for v in offsets for c in v)) if offsets else 1
    ints = [tuple(int(c * scale) for c in v) for v in offsets]
    zeros = sum(1 for v in ints if not any(v))
    nonzero = list(dict.fromkeys(v for v in ints if any(v)))
    if not nonzero:
        return cloud.n
    best = None
    for u in _cell_directions(nonzero, cloud.p):
        below = sum(1 for v in ints if any(v) and _dot(u, v) < 0)
        if any(_dot(u, v) == 0 for v in nonzero):
            raise AssertionError("cell representative lies on a boundary")
        best = below if best is None else min(best, below)
    return zeros + best


# --- median grid oracle -------------------------------------------------------

@dataclass(frozen=True)
class GridResult:
    max_kappa: int
    argmax: tuple[tuple[Fraction, ...], ...]
    evaluator: str


def median_oracle_grid(cloud: PointCloud, spec: GridSpec | None = None, *,
                       engine=None) -> GridResult:
    """Largest depth over the grid points of ``spec`` and the points attaining it.

    Uses the exhaustive oracle when it applies, otherwise ``engine``
    (a ``(x, cloud) -> kappa`` callable), and records which one ran.
    """
    if cloud.p > 3:
        raise OracleLimitError("grid oracle supports p <= 3")
    spec = GridSpec.around(cloud) if spec is None else spec
    if len(spec.lo) != cloud.p:
        raise ValueError("grid box dimension differs from the cloud")
    if any(a >= b for a, b in zip(spec.lo, spec.hi)):
        raise ValueError("empty bounding box")
    if cloud.n <= EXHAUSTIVE_MAX_N:
        evaluate, name = depth_oracle_exhaustive, "exhaustive"
    elif engine is not None:
        evaluate, name = engine, "engine"
    else:
        raise OracleLimitError("cloud too large for the exhaustive oracle and no engine given")
    best, where = -1, []
    for g in spec.points():
        k = evaluate(g, cloud)
        if k > best:
            best, where = k, [g]
        elif k == best:
            where.append(g)
    return GridResult(best, tuple(where), name)
