"""Depth regions ``D_k = {x : n * depth(x) >= k}`` as exact polytopes.

The H-representation comes from hyperplanes through ``p`` sample points: if
the open side of such a hyperplane holds at most ``k - 1`` samples, every
point strictly on that side has depth below ``k``, so the closed opposite side
contains ``D_k``.  Emptiness is decided with the exact LP in :mod:`.lp`;
vertices come from cddlib in rational arithmetic after discarding the
constraints that cannot touch the region's bounding box.  Every vertex is
re-certified with :func:`~tukeymedian.depth.tukey_depth`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations, islice
from typing import Sequence

import cdd
import numpy as np

from . import _exact, lp
from ._parallel import ordered_map
from .depth import tukey_depth
from .geometry import (
    Hyperplane,
    Point,
    PointCloud,
    as_point,
    canonical_hyperplane,
)


class UnboundedRegionError(ValueError):
    """The halfspaces admit a recession direction, so the region may be unbounded."""

    def __init__(self, direction):
        super().__init__("halfspace intersection is unbounded along " + str(list(map(str, direction))))
        self.direction = tuple(direction)


class CertificationError(AssertionError):
    pass


@dataclass(frozen=True)
class Halfspace:
    """Closed halfspace ``side * (normal . x - offset) >= 0``."""

    hyperplane: Hyperplane
    side: int

    def inequality(self) -> tuple[tuple[Fraction, ...], Fraction]:
        """``(a, b)`` with the halfspace equal to ``{x : a . x >= b}``."""
        a = tuple(Fraction(self.side * c) for c in self.hyperplane.normal)
        return a, self.side * self.hyperplane.offset

    def slack(self, x: Sequence) -> Fraction:
        return self.side * self.hyperplane.value(x)

    def contains(self, x: Sequence) -> bool:
        return self.slack(x) >= 0


# --- hyperplane table ---------------------------------------------------------

@dataclass(frozen=True, eq=False)
class HyperplaneTable:
    """All hyperplanes through ``p`` samples with their side counts.

    ``normals`` and ``offsets`` are in the cloud's integer coordinates
    (``cloud.scale * X``); ``below`` / ``above`` count samples strictly on
    each side.
    """

    subsets: np.ndarray
    normals: np.ndarray
    offsets: np.ndarray
    below: np.ndarray
    above: np.ndarray

    def __len__(self):
        return len(self.subsets)


@lru_cache(maxsize=16)
def hyperplane_table(cloud: PointCloud, chunk: int = 20_000) -> HyperplaneTable:
    Z = cloud.integer_array()
    p = cloud.p
    parts = []
    combos = combinations(range(cloud.n), p)
    while True:
        block = list(islice(combos, chunk))
        if not block:
            break
        idx = np.array(block)
        if p == 1:
            U = np.ones((len(idx), 1), dtype=Z.dtype)
        else:
            U = _exact.batch_normals(Z[idx[:, 1:]] - Z[idx[:, [0]]])
        keep = (U != 0).any(axis=1)
        idx, U = idx[keep], U[keep]
        q = (U * Z[idx[:, 0]]).sum(axis=1)
        vals = Z @ U.T - q
        parts.append((idx, U, q, (vals < 0).sum(axis=0), (vals > 0).sum(axis=0)))
    return HyperplaneTable(*(np.concatenate([part[k] for part in parts]) for k in range(5)))


def _level_rows(table: HyperplaneTable, kappa: int, cut: str = "at_most"):
    """Indices and sides of the constraints for level ``kappa``.

    Side ``+1`` keeps ``normal . x >= offset`` (the open ``below`` side is cut
    off), side ``-1`` keeps the opposite.
    """
    if cut == "at_most":
        lower = np.flatnonzero(table.below <= kappa - 1)
        upper = np.flatnonzero(table.above <= kappa - 1)
    elif cut == "exactly":
        lower = np.flatnonzero(table.below == kappa - 1)
        upper = np.flatnonzero(table.above == kappa - 1)
    else:
        raise ValueError(f"unknown cut filter {cut!r}")
    rows = np.concatenate([lower, upper])
    sides = np.concatenate([np.ones(len(lower), dtype=int), -np.ones(len(upper), dtype=int)])
    return rows, sides


def _system(table: HyperplaneTable, rows, sides):
    """Integer system ``A x >= b`` (cloud integer coordinates)."""
    sgn = sides.astype(object)
    A = table.normals[rows].astype(object) * sgn[:, None]
    b = table.offsets[rows].astype(object) * sgn
    return A, b


def _halfspace(cloud: PointCloud, table: HyperplaneTable, row: int, side: int) -> Halfspace:
    idx = [int(i) for i in table.subsets[row]]
    normal = [int(v) for v in table.normals[row]]
    h = canonical_hyperplane(normal, cloud[idx[0]], idx)
    # canonical_hyperplane may flip the normal; keep the kept side fixed
    flip = next(a for a in normal if a != 0) < 0
    return Halfspace(h, -side if flip else side)


def region_halfspaces(cloud: PointCloud, kappa: int, *, cut: str = "at_most",
                      force: bool = False) -> list[Halfspace]:
    """Closed halfspaces whose intersection is the depth region ``D_kappa``.

    For every hyperplane through ``p`` samples and each of its sides, the
    complementary closed halfspace is emitted when the open side holds at most
    ``kappa - 1`` samples (``cut="exactly"``: exactly ``kappa - 1``).
    """
    _check_level(cloud, kappa, force)
    table = hyperplane_table(cloud)
    rows, sides = _level_rows(table, kappa, cut)
    return [_halfspace(cloud, table, int(r), int(s)) for r, s in zip(rows, sides)]


def _check_level(cloud: PointCloud, kappa: int, force: bool):
    if not isinstance(kappa, (int, np.integer)) or not 1 <= kappa <= cloud.n:
        raise ValueError(f"level must satisfy 1 <= kappa <= n={cloud.n}, got {kappa}")
    if not force:
        cloud.require_general_position()


# --- vertex enumeration -------------------------------------------------------

def _cdd_vertices(A, b) -> list[tuple[Fraction, ...]]:
    """Vertices of the bounded polytope ``A x >= b`` (exact, via cddlib)."""
    mat = cdd.Matrix([[-int(bi)] + [int(a) for a in row] for row, bi in zip(A.tolist(), b.tolist())],
                     number_type="fraction")
    mat.rep_type = cdd.RepType.INEQUALITY
    gen = cdd.Polyhedron(mat).get_generators()
    verts = []
    for i in range(gen.row_size):
        row = gen[i]
        if row[0] == 0 or i in gen.lin_set:
            raise UnboundedRegionError(tuple(Fraction(v) for v in row[1:]))
        t = Fraction(row[0])
        verts.append(tuple(Fraction(v) / t for v in row[1:]))
    return sorted(set(verts))


def _exhaustive_vertices(A, b) -> list[tuple[Fraction, ...]]:
    """Vertices by solving every ``p``-subset of constraint hyperplanes."""
    m, p = A.shape
    rows = A.tolist()
    found = set()
    for sub in combinations(range(m), p):
        M = [rows[i] for i in sub]
        if _exact.det(M) == 0:
            continue
        x = _exact.solve(M, [b[i] for i in sub])
        if lp.is_feasible_point(A, b, x):
            found.add(tuple(x))
    return sorted(found)


def _integer_system(halfspaces: Sequence[Halfspace]):
    A, b = [], []
    for hs in halfspaces:
        a, off = hs.inequality()
        den = _exact.common_denominator(list(a) + [off])
        A.append([int(v * den) for v in a])
        b.append(int(off * den))
    return np.array(A, dtype=object), np.array(b, dtype=object)


def recession_direction(A) -> tuple[Fraction, ...] | None:
    """A nonzero ``d`` with ``A d >= 0`` if one exists (exact), else ``None``."""
    A = np.asarray(A, dtype=object)
    m, p = A.shape
    null = _exact.nullspace(A.tolist(), p) if m else [[Fraction(int(i == 0)) for i in range(p)]]
    if null:
        return tuple(null[0])
    basis = _exact.independent_rows(A.tolist())
    G, h = lp.with_box(A, np.zeros(m, dtype=object), [-1] * p, [1] * p)
    for j in range(p):
        for sign in (1, -1):
            c = [0] * p
            c[j] = -sign
            res = lp.minimize(c, G, h, basis=basis)
            if res.value < 0:
                return res.x
    return None


def _cramer_bound(A, b) -> int:
    """Bound on |coordinates| of every vertex of the integer system ``A x >= b``."""
    p = A.shape[1]
    widest = max((sum(int(v) ** 2 for v in row) + int(bi) ** 2 for row, bi in zip(A.tolist(), b.tolist())),
                 default=1)
    return (math.isqrt(widest) + 1) ** p


def region_vertices(halfspaces: Sequence[Halfspace], *, method: str = "cdd") -> list[Point]:
    """Exact vertices of the intersection of closed halfspaces.

    Returns an empty list for an empty intersection (decided by an exact LP).
    Raises :class:`UnboundedRegionError` when a recession direction exists.
    ``method="exhaustive"`` solves every ``p``-subset of constraints instead of
    calling cddlib; it is only practical for small inputs.
    """
    if not halfspaces:
        raise ValueError("need at least one halfspace")
    A, b = _integer_system(halfspaces)
    d = recession_direction(A)
    if d is not None:
        raise UnboundedRegionError(d)
    p = A.shape[1]
    R = _cramer_bound(A, b)
    feas = lp.find_feasible_point(A, b, [-R] * p, [R] * p)
    if not feas.feasible:
        return []
    if method == "cdd":
        return _cdd_vertices(A, b)
    if method == "exhaustive":
        return _exhaustive_vertices(A, b)
    raise ValueError(f"unknown method {method!r}")


def region_dim(vertices: Sequence[Sequence]) -> int:
    """Affine dimension of the convex hull of ``vertices`` (``-1`` if empty)."""
    if not vertices:
        return -1
    base = as_point(vertices[0])
    diffs = [[a - c for a, c in zip(as_point(v), base)] for v in vertices[1:]]
    return _exact.rank(diffs) if diffs else 0


# --- regions ------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class DepthRegion:
    """The depth region at level ``level_kappa`` (``D_{kappa/n}``)."""

    level_kappa: int
    cloud: PointCloud = field(repr=False)
    vertices: tuple[Point, ...]
    dim: int
    _rows: np.ndarray = field(repr=False)
    _sides: np.ndarray = field(repr=False)
    infeasibility_certificate: dict | None = field(default=None, repr=False)
    # vertex-constraint incidences (local constraints only), for face walks
    _facets: tuple[frozenset, ...] = field(default=(), repr=False)

    @property
    def is_empty(self) -> bool:
        return self.dim < 0

    @cached_property
    def halfspaces(self) -> tuple[Halfspace, ...]:
        table = hyperplane_table(self.cloud)
        return tuple(_halfspace(self.cloud, table, int(r), int(s)) for r, s in zip(self._rows, self._sides))

    def contains(self, x: Sequence) -> bool:
        """Exact membership test against every constraint."""
        x = as_point(x)
        table = hyperplane_table(self.cloud)
        A, b = _system(table, self._rows, self._sides)
        nums, den = _exact.to_integer_vector([c * self.cloud.scale for c in x])
        return bool((A @ np.array(nums, dtype=object) - b * den >= 0).all())

    def strictly_inside(self, x: Sequence) -> bool:
        """True when ``x`` satisfies every constraint strictly."""
        x = as_point(x)
        table = hyperplane_table(self.cloud)
        A, b = _system(table, self._rows, self._sides)
        nums, den = _exact.to_integer_vector([c * self.cloud.scale for c in x])
        return bool((A @ np.array(nums, dtype=object) - b * den > 0).all())


def depth_region(cloud: PointCloud, kappa: int, *, force: bool = False,
                 certify: bool | str = True, cut: str = "at_most") -> DepthRegion:
    """Assemble ``D_kappa`` with exact, depth-certified vertices.

    ``certify=True`` checks ``tukey_depth(v) >= kappa`` for every vertex;
    ``certify="full"`` additionally steps each vertex outward across every
    active constraint and checks that the depth falls below ``kappa``.
    ``cut="exactly"`` builds the intersection of the smaller constraint set
    (open side holding exactly ``kappa - 1`` samples) instead; it is only
    guaranteed to equal ``D_kappa`` at the maximal level.
    """
    _check_level(cloud, kappa, force)
    table = hyperplane_table(cloud)
    rows, sides = _level_rows(table, kappa, cut)
    A, b = _system(table, rows, sides)
    if cut != "at_most":
        d = recession_direction(A)
        if d is not None:
            raise UnboundedRegionError(d)
        R = _cramer_bound(A, b)
        lo, hi = [-R] * cloud.p, [R] * cloud.p
    else:
        lo, hi = _data_box(cloud)
    feas = lp.find_feasible_point(A, b, lo, hi)
    if not feas.feasible:
        cert = {(int(rows[i]), int(sides[i])): y for i, y in feas.certificate.items()}
        return DepthRegion(kappa, cloud, (), -1, rows, sides, cert)

    box_lo, box_hi = _bounding_box(A, b, lo, hi, feas)
    verts_scaled, signs = _cutting_plane_vertices(A, b, box_lo, box_hi)
    s = cloud.scale
    vertices = tuple(tuple(c / s for c in v) for v in verts_scaled)
    dim = region_dim(vertices)
    facets = _incidence(signs) if dim == cloud.p else ()
    region = DepthRegion(kappa, cloud, vertices, dim, rows, sides, None, facets)
    if certify:
        _certify(region, force=force, full=(certify == "full"))
    return region


def region_nonempty(cloud: PointCloud, kappa: int, *, force: bool = False) -> bool:
    """Exact emptiness test for ``D_kappa`` without building vertices.

    Answers are memoized per cloud and level, so callers comparing search
    strategies on one cloud pay for each level's LP once.
    """
    _check_level(cloud, kappa, force)
    return _nonempty(cloud, kappa)


@lru_cache(maxsize=256)
def _nonempty(cloud: PointCloud, kappa: int) -> bool:
    table = hyperplane_table(cloud)
    rows, sides = _level_rows(table, kappa)
    A, b = _system(table, rows, sides)
    lo, hi = _data_box(cloud)
    return lp.find_feasible_point(A, b, lo, hi).feasible


def _data_box(cloud: PointCloud):
    Z = cloud.integer_coords
    return ([min(Z[:, j]) for j in range(cloud.p)], [max(Z[:, j]) for j in range(cloud.p)])


def _bounding_box(A, b, lo, hi, feas):
    G, h = lp.with_box(A, b, lo, hi)
    start = lp.vertex_basis_from_phase_one(A, feas)
    p = A.shape[1]
    box_lo, box_hi = [], []
    for j in range(p):
        c = [0] * p
        c[j] = 1
        box_lo.append(lp.minimize(c, G, h, basis=start).value)
        c[j] = -1
        box_hi.append(-lp.minimize(c, G, h, basis=start).value)
    return box_lo, box_hi


def slack_signs(A, b, verts) -> np.ndarray:
    """Exact signs of ``A v - b`` for each vertex, shape ``(len(A), len(verts))``.

    A float evaluation settles every entry whose magnitude clears a generous
    rounding bound; the remaining (near-tight) entries are recomputed in
    integers.
    """
    m = len(A)
    if m == 0 or not verts:
        return np.zeros((m, len(verts)), dtype=np.int8)
    Af = A.astype(float)
    bf = b.astype(float)
    Vf = np.array([[float(c) for c in v] for v in verts])
    S = Af @ Vf.T - bf[:, None]
    err = 1e-9 * (np.abs(Af) @ np.abs(Vf).T + np.abs(bf)[:, None]) + 1e-300
    signs = np.sign(S).astype(np.int8)
    unsure = np.abs(S) <= err
    if unsure.any():
        ints = [_exact.to_integer_vector(v) for v in verts]
        Al = A.tolist()
        bl = b.tolist()
        for i, j in zip(*np.nonzero(unsure)):
            nums, den = ints[j]
            val = sum(int(a) * c for a, c in zip(Al[i], nums)) - int(bl[i]) * den
            signs[i, j] = (val > 0) - (val < 0)
    return signs


def _cutting_plane_vertices(A, b, box_lo, box_hi):
    """Vertices of ``{A x >= b}`` inside a box known to be its bounding box.

    Starts from the box and repeatedly adds, for every vertex that violates
    some row, its most violated row.  Once all vertices satisfy every row the
    current polytope lies inside the region and contains it, so the two
    coincide.
    """
    G, h = lp.with_box(A[:0], b[:0], box_lo, box_hi)
    norms = np.sqrt((A.astype(float) ** 2).sum(axis=1))
    added: set[int] = set()
    while True:
        verts = _cdd_vertices(G, h)
        signs = slack_signs(A, b, verts)
        bad = np.flatnonzero((signs < 0).any(axis=0))
        if bad.size == 0:
            return verts, signs
        Vf = np.array([[float(c) for c in verts[j]] for j in bad])
        depth = (A.astype(float) @ Vf.T - b.astype(float)[:, None]) / norms[:, None]
        depth = np.where(signs[:, bad] < 0, depth, np.inf)
        new = sorted({int(i) for i in np.argmin(depth, axis=0)} - added)
        if not new:
            raise RuntimeError("cutting-plane loop made no progress")
        added.update(new)
        G = np.vstack([A[new], G])
        h = np.concatenate([b[new], h])


def _incidence(signs: np.ndarray) -> tuple[frozenset, ...]:
    sets = {frozenset(np.flatnonzero(row == 0).tolist()) for row in signs}
    sets.discard(frozenset())
    return tuple(sorted(sets, key=sorted))


def _certify(region: DepthRegion, *, force: bool, full: bool):
    cloud = region.cloud
    depths = ordered_map(lambda v: tukey_depth(v, cloud, force=force), region.vertices)
    for v, d in zip(region.vertices, depths):
        if d.kappa < region.level_kappa:
            raise CertificationError(f"vertex {v} has depth {d} < {region.level_kappa}/{cloud.n}")
    if not full:
        return
    for hs in region.halfspaces:
        a, _ = hs.inequality()
        for v in region.vertices:
            if hs.slack(v) != 0:
                continue
            step = Fraction(1, 10**6 * max(1, max(abs(c) for c in a)))
            out = tuple(c - step * ac for c, ac in zip(v, a))
            d = tukey_depth(out, cloud, force=force)
            if d.kappa >= region.level_kappa:
                raise CertificationError(f"point {out} outside a constraint has depth {d}")


# --- centroid -----------------------------------------------------------------

def region_centroid(region: DepthRegion) -> Point:
    """Centroid of the region with respect to its own ``dim``-dimensional measure."""
    if region.is_empty:
        raise ValueError("empty region has no centroid")
    facets = region._facets if region.dim == region.cloud.p else None
    return polytope_centroid(region.vertices, facets)


def polytope_centroid(vertices: Sequence[Sequence], facets=None) -> Point:
    """Exact centroid of the convex hull of ``vertices``.

    The hull (of affine dimension ``k``) is projected onto ``k`` coordinates
    that are injective on its affine span, which scales every ``k``-volume by
    the same constant.  It is then cut into simplices by a pulling
    triangulation: each face is coned from its lowest-index vertex over the
    facets of that face not containing it, so every simplex has original
    vertices and no new denominators appear.  Simplex centroids are averaged
    with their volumes as weights, all in exact arithmetic.

    ``facets`` are vertex-index sets of supporting hyperplanes of a
    full-dimensional hull (extra lower-dimensional faces are harmless); when
    omitted they are recovered from the vertices.
    """
    verts = [as_point(v) for v in vertices]
    if not verts:
        raise ValueError("no vertices")
    verts = sorted(set(verts))
    if facets is not None and len(verts) != len(vertices):
        raise ValueError("duplicate vertices together with facet index sets")
    k = region_dim(verts)
    if k == 0:
        return verts[0]
    base = verts[0]
    cols = _exact.independent_columns([[a - c for a, c in zip(v, base)] for v in verts[1:]])
    proj = [tuple(v[c] for c in cols) for v in verts]
    if facets is None:
        facets = _hull_facets(proj)
    else:
        order = {v: i for i, v in enumerate(verts)}
        facets = [frozenset(order[as_point(vertices[i])] for i in f) for f in facets]
    walker = _FaceWalker(range(len(verts)), facets)

    hom = [_homogeneous(q) for q in proj]
    weights, moments = [], [[] for _ in base]
    for simplex in walker.pulling(walker.top, k):
        det = abs(_bareiss([list(hom[i]) for i in simplex]))
        if det == 0:
            continue
        den = 1
        for i in simplex:
            den *= hom[i][0]
        weights.append(Fraction(det, den))
        for j in range(len(base)):
            moments[j].append(Fraction(det, den) * sum(verts[i][j] for i in simplex))
    if not weights:
        raise ArithmeticError("degenerate triangulation")
    total = _tree_sum(weights)
    return tuple(_tree_sum(m) / (total * (k + 1)) for m in moments)


def _tree_sum(values: list[Fraction]) -> Fraction:
    """Pairwise sum; keeps operand sizes balanced for large denominators."""
    vals = list(values)
    while len(vals) > 1:
        vals = [vals[i] + vals[i + 1] if i + 1 < len(vals) else vals[i]
                for i in range(0, len(vals), 2)]
    return vals[0] if vals else Fraction(0)


class _FaceWalker:
    """Face lattice navigation from facet vertex sets.

    The facets of a face ``F`` are the inclusion-maximal proper intersections
    of ``F`` with the polytope's facets.
    """

    def __init__(self, indices, facets):
        self.top = frozenset(indices)
        self.facets = [frozenset(f) for f in facets]
        self._cache: dict[frozenset, list[frozenset]] = {}

    def facets_of(self, face: frozenset) -> list[frozenset]:
        if face not in self._cache:
            cands = {face & f for f in self.facets}
            cands.discard(face)
            cands.discard(frozenset())
            maximal = [c for c in cands if not any(c < d for d in cands)]
            self._cache[face] = sorted(maximal, key=sorted)
        return self._cache[face]

    def pulling(self, face: frozenset, dim: int):
        if dim == 0 or len(face) == dim + 1:
            yield tuple(sorted(face))
            return
        v = min(face)
        for sub in self.facets_of(face):
            if v not in sub:
                for simplex in self.pulling(sub, dim - 1):
                    yield (v,) + simplex


def _homogeneous(point) -> tuple[int, ...]:
    nums, den = _exact.to_integer_vector(point)
    return (den, *nums)


def _simplex_weight(rows) -> Fraction:
    """``|det [1, x_j]|`` for the points ``x_j`` given in homogeneous form."""
    det = _bareiss([list(r) for r in rows])
    scale = 1
    for r in rows:
        scale *= r[0]
    return Fraction(abs(det), scale)


def _bareiss(M: list[list[int]]) -> int:
    """Fraction-free integer determinant."""
    n = len(M)
    sign, prev = 1, 1
    for c in range(n - 1):
        if M[c][c] == 0:
            piv = next((r for r in range(c + 1, n) if M[r][c] != 0), None)
            if piv is None:
                return 0
            M[c], M[piv] = M[piv], M[c]
            sign = -sign
        for r in range(c + 1, n):
            for j in range(c + 1, n):
                M[r][j] = (M[r][j] * M[c][c] - M[r][c] * M[c][j]) // prev
        prev = M[c][c]
    return sign * M[n - 1][n - 1]


def _hull_facets(points) -> list[frozenset]:
    """Vertex-index sets of the facets of a full-dimensional hull (via cddlib)."""
    mat = cdd.Matrix([[1] + list(q) for q in points], number_type="fraction")
    mat.rep_type = cdd.RepType.GENERATOR
    ineq = cdd.Polyhedron(mat).get_inequalities()
    facets = set()
    for r in range(ineq.row_size):
        row = [Fraction(v) for v in ineq[r]]
        tight = frozenset(i for i, q in enumerate(points)
                          if row[0] + sum(a * c for a, c in zip(row[1:], q)) == 0)
        if tight:
            facets.add(tight)
    return sorted(facets, key=sorted)
