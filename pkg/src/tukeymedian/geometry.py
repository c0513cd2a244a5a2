"""Point clouds, hyperplanes and exact predicates.

Coordinates are stored as :class:`fractions.Fraction`.  Every predicate in
this module (orientation, side counts, general position) is exact: a single
miscounted point changes a depth value, so nothing here touches floats.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations, islice
from typing import Iterable, Sequence

import numpy as np

from . import _exact
from ._exact import as_fraction

Point = tuple[Fraction, ...]


class GeometryError(ValueError):
    """Raised for malformed geometric input (dimension mismatch, singular maps)."""


class GeneralPositionError(ValueError):
    """The cloud has more than ``p`` points on some hyperplane."""

    def __init__(self, witness: tuple[int, ...]):
        super().__init__(
            f"points {list(witness)} are affinely dependent; "
            "the cloud is not in general position"
        )
        self.witness = witness


def as_point(coords: Iterable) -> Point:
    return tuple(as_fraction(c) for c in coords)


@dataclass(frozen=True)
class PointCloud:
    """An ordered sample of ``n`` points in ``R^p`` with exact coordinates.

    Indices are 0-based and stable; every engine reports sample points by
    their index here.
    """

    points: tuple[Point, ...]

    def __post_init__(self):
        pts = tuple(as_point(x) for x in self.points)
        object.__setattr__(self, "points", pts)
        if not pts:
            raise GeometryError("empty point cloud")
        p = len(pts[0])
        if p < 1:
            raise GeometryError("points must have at least one coordinate")
        for i, x in enumerate(pts):
            if len(x) != p:
                raise GeometryError(f"point {i} has dimension {len(x)}, expected {p}")
        if len(pts) <= p:
            raise GeometryError(f"need n > p, got n={len(pts)}, p={p}")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable]) -> "PointCloud":
        return cls(tuple(as_point(r) for r in rows))

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def p(self) -> int:
        return len(self.points[0])

    def __len__(self):
        return self.n

    def __getitem__(self, i) -> Point:
        return self.points[i]

    @cached_property
    def scale(self) -> int:
        """Common denominator of all coordinates."""
        return _exact.common_denominator(c for x in self.points for c in x)

    @cached_property
    def integer_coords(self) -> np.ndarray:
        """``scale * points`` as an ``(n, p)`` object array of Python ints."""
        s = self.scale
        return np.array([[int(c * s) for c in x] for x in self.points], dtype=object)

    @cached_property
    def coord_bound(self) -> int:
        return _exact.max_abs(self.integer_coords)

    def integer_array(self, degree: int | None = None) -> np.ndarray:
        """Integer coordinates, as ``int64`` when products of ``degree``
        coordinate differences (default ``p``) provably fit."""
        degree = self.p if degree is None else degree
        bound = _exact.normals_bound(self.coord_bound, degree)
        return _exact.int_array(self.integer_coords, bound)

    @cached_property
    def general_position_witness(self) -> tuple[int, ...] | None:
        return _find_dependent_subset(self)

    @property
    def in_general_position(self) -> bool:
        return self.general_position_witness is None

    def require_general_position(self) -> None:
        if self.general_position_witness is not None:
            raise GeneralPositionError(self.general_position_witness)


@dataclass(frozen=True)
class Hyperplane:
    """``{x : normal . x == offset}`` with a primitive integer normal whose
    first nonzero entry is positive."""

    normal: tuple[int, ...]
    offset: Fraction
    defining_indices: tuple[int, ...] | None = field(default=None, compare=False)

    def value(self, x: Sequence) -> Fraction:
        return sum((a * as_fraction(c) for a, c in zip(self.normal, x)), Fraction(0)) - self.offset

    def side(self, x: Sequence) -> int:
        v = self.value(x)
        return (v > 0) - (v < 0)


@dataclass(frozen=True)
class SideCounts:
    below: int
    on: int
    above: int

    @property
    def n(self) -> int:
        return self.below + self.on + self.above


def canonical_hyperplane(normal: Sequence, point: Sequence, indices=None) -> Hyperplane:
    """Canonical form of the hyperplane with the given (rational) normal
    through ``point``."""
    fr = [as_fraction(a) for a in normal]
    nums, _ = _exact.to_integer_vector(fr)
    prim = _exact.primitive(nums)
    if not any(prim):
        raise GeometryError("zero normal vector")
    offset = sum((a * as_fraction(c) for a, c in zip(prim, point)), Fraction(0))
    return Hyperplane(prim, offset, None if indices is None else tuple(indices))


def orientation(points: Sequence[Sequence]) -> int:
    """Sign of ``det[x_1 - x_0, ..., x_p - x_0]`` for ``p + 1`` points in ``R^p``."""
    pts = [as_point(x) for x in points]
    if not pts:
        raise GeometryError("orientation needs p + 1 points")
    p = len(pts[0])
    if len(pts) != p + 1 or any(len(x) != p for x in pts):
        raise GeometryError(f"orientation needs {p + 1} points of dimension {p}")
    d = _exact.det([[a - b for a, b in zip(x, pts[0])] for x in pts[1:]])
    return (d > 0) - (d < 0)


def hyperplane_through(cloud: PointCloud, indices: Sequence[int]) -> Hyperplane:
    """Hyperplane through the ``p`` sample points with the given indices."""
    p = cloud.p
    idx = tuple(int(i) for i in indices)
    if len(idx) != p:
        raise GeometryError(f"need exactly {p} indices, got {len(idx)}")
    base = cloud[idx[0]]
    diffs = [[a - b for a, b in zip(cloud[i], base)] for i in idx[1:]]
    if p == 1:
        normal = [Fraction(1)]
    else:
        nums = [_exact.to_integer_vector(row)[0] for row in diffs]
        D = np.array([nums], dtype=object)
        normal = [Fraction(int(v)) for v in _exact.batch_normals(D)[0]]
    if not any(normal):
        raise GeometryError(f"points {list(idx)} are affinely dependent")
    return canonical_hyperplane(normal, base, sorted(idx))


def side_counts(cloud: PointCloud, h: Hyperplane) -> SideCounts:
    if len(h.normal) != cloud.p:
        raise GeometryError("hyperplane and cloud dimensions differ")
    below = on = above = 0
    for x in cloud.points:
        s = h.side(x)
        if s < 0:
            below += 1
        elif s == 0:
            on += 1
        else:
            above += 1
    return SideCounts(below, on, above)


def affine_transform(cloud: PointCloud, A: Sequence[Sequence], b: Sequence) -> PointCloud:
    """Image ``A x + b`` of every point, index order preserved."""
    Af = [[as_fraction(v) for v in row] for row in A]
    bf = [as_fraction(v) for v in b]
    p = cloud.p
    if len(Af) != p or any(len(r) != p for r in Af) or len(bf) != p:
        raise GeometryError(f"expected a {p}x{p} matrix and a length-{p} vector")
    if _exact.det(Af) == 0:
        raise GeometryError("singular transformation matrix")
    return PointCloud(tuple(apply_affine(Af, bf, x) for x in cloud.points))


def apply_affine(A, b, x) -> Point:
    return tuple(
        sum((a * c for a, c in zip(row, x)), Fraction(0)) + bi for row, bi in zip(A, b)
    )


def check_general_position(cloud: PointCloud) -> tuple[int, ...] | None:
    """``None`` if no ``p + 1`` points are affinely dependent, otherwise the
    lexicographically first dependent ``(p + 1)``-subset of indices."""
    return cloud.general_position_witness


def _find_dependent_subset(cloud: PointCloud, chunk: int = 50_000):
    Z = cloud.integer_array()
    p = cloud.p
    combos = combinations(range(cloud.n), p + 1)
    while True:
        block = list(islice(combos, chunk))
        if not block:
            return None
        idx = np.array(block)
        D = Z[idx[:, 1:]] - Z[idx[:, [0]]]
        dets = _exact.batch_det(D)
        bad = np.flatnonzero(dets == 0)
        if bad.size:
            return tuple(int(i) for i in idx[bad[0]])
