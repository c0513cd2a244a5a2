"""Exact Tukey depth of a point with respect to a sample.

The depth of ``x`` counts, over all directions ``u``, the fewest sample points
in the closed halfspace ``{y : u.y <= u.x}``.  In count form ``kappa`` it is an
integer in ``0..n``; :class:`DepthValue` carries ``kappa`` and ``n``.

Candidate directions are normals of hyperplanes through ``x`` and ``p - 1``
sample points.  A minimizing closed halfspace can be obtained by tilting such a
hyperplane about ``x``: every sample point strictly below stays below, and the
points lying on the hyperplane are pushed off whenever their offsets from
``x`` are linearly independent.  When they are not (``x`` on a line through
two samples, a region vertex on several sample hyperplanes, ...) the best
tilt is itself a depth problem for the on-hyperplane points in one dimension
less, which is solved recursively.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import NamedTuple, Sequence

import numpy as np

from . import _exact
from ._parallel import ordered_map
from .geometry import GeometryError, PointCloud, as_point

Direction = tuple[Fraction, ...]


@dataclass(frozen=True)
class DepthValue:
    """Depth ``kappa / n`` in count form.

    ``witness`` is a direction ``u`` whose closed halfspace
    ``{y : u.y <= u.x}`` holds exactly ``kappa`` sample points.
    """

    kappa: int
    n: int
    witness: Direction | None = field(default=None, compare=False)
    degenerate: bool = field(default=False, compare=False)

    @property
    def depth(self) -> Fraction:
        return Fraction(self.kappa, self.n)

    def __str__(self):
        return f"{self.kappa}/{self.n}"


class SampleDepths(NamedTuple):
    depths: list[DepthValue]
    deepest: tuple[int, ...]

    @property
    def max_kappa(self) -> int:
        return max(d.kappa for d in self.depths)


def closed_count(cloud: PointCloud, x: Sequence, u: Sequence) -> int:
    """Number of sample points with ``u . X_i <= u . x``."""
    x = as_point(x)
    u = [Fraction(c) for c in u]
    ux = sum(a * b for a, b in zip(u, x))
    return sum(1 for X in cloud.points if sum(a * b for a, b in zip(u, X)) <= ux)


def tukey_depth(x: Sequence, cloud: PointCloud, *, force: bool = False) -> DepthValue:
    """Exact depth of ``x`` with a witness direction.

    Raises :class:`~tukeymedian.geometry.GeneralPositionError` on clouds that
    are not in general position unless ``force`` is set, in which case the
    (still exact) count is returned flagged ``degenerate``.  The query point
    itself may be anywhere, including on hyperplanes spanned by samples.
    """
    degenerate = False
    if not cloud.in_general_position:
        if not force:
            cloud.require_general_position()
        degenerate = True
    x = as_point(x)
    if len(x) != cloud.p:
        raise GeometryError(f"query point has dimension {len(x)}, cloud has {cloud.p}")
    V = _offsets(cloud, x)
    kappa, witness = _min_closed_count(V)
    w, _ = _exact.to_integer_vector(witness)
    assert sum(1 for row in V.tolist() if _exact.dot(w, row) <= 0) == kappa
    return DepthValue(kappa, cloud.n, tuple(witness), degenerate)


def _offsets(cloud: PointCloud, x) -> np.ndarray:
    """Positive integer multiples of ``X_i - x``, one row per sample."""
    nums, den = _exact.to_integer_vector([c * cloud.scale for c in x])
    V = cloud.integer_coords * den - np.array(nums, dtype=object)
    bound = _exact.normals_bound(_exact.max_abs(V), cloud.p)
    return _exact.int_array(V, bound)


def _min_closed_count(V: np.ndarray) -> tuple[int, list[Fraction]]:
    """Minimum over nonzero ``w`` of ``#{i : w . V_i <= 0}`` and a minimizer.

    Zero rows are counted for every ``w``.  If the nonzero rows do not span the
    ambient space the problem is solved in a coordinate projection that is
    injective on their span.
    """
    n, d = V.shape
    nonzero = (V != 0).any(axis=1)
    zeros = int(n - nonzero.sum())
    W = V[nonzero]
    if len(W) == 0:
        return n, [Fraction(1)] + [Fraction(0)] * (d - 1)
    cols = list(range(d)) if _full_column_rank(W) else _exact.independent_columns(W.tolist())
    if len(cols) < d:
        count, w = _min_closed_count(W[:, cols])
        full = [Fraction(0)] * d
        for c, wc in zip(cols, w):
            full[c] = wc
        return zeros + count, full
    if d == 1:
        neg = int((W[:, 0] < 0).sum())
        pos = len(W) - neg
        if neg <= pos:
            return zeros + neg, [Fraction(1)]
        return zeros + pos, [Fraction(-1)]

    combos = np.array(list(combinations(range(len(W)), d - 1)))
    S, valid, raw_normal = _candidate_signs(W, combos)
    S = S[:, valid]
    cols = np.flatnonzero(valid)
    below_raw = (S < 0).sum(axis=0)
    above_raw = (S > 0).sum(axis=0)
    on = len(W) - below_raw - above_raw
    lower = np.minimum(below_raw, above_raw)
    generic = on == d - 1

    best = int(lower[generic].min()) if generic.any() else len(W)
    extra: dict[int, tuple[int, list[Fraction]]] = {}
    for j in np.flatnonzero(~generic & (lower <= best)):
        e, w = _min_closed_count(W[S[:, j] == 0])
        extra[int(j)] = (e, w)
        best = min(best, int(lower[j]) + e)

    # deterministic witness: the first attaining row combination, oriented so
    # its first nonzero entry is positive when both orientations attain
    j = next(int(j) for j in np.flatnonzero(lower <= best)
             if int(lower[j]) + (extra[int(j)][0] if int(j) in extra else 0) == best)
    raw = raw_normal(int(cols[j]))
    e = extra[j][0] if j in extra else 0
    signs = [s for s, strict in ((1, below_raw[j]), (-1, above_raw[j])) if int(strict) + e == best]
    lead = next(c for c in raw if c != 0)
    sign = signs[0] if len(signs) == 1 else (1 if lead > 0 else -1)
    u = [Fraction(sign * int(c)) for c in raw]
    if j in extra:
        direction = _tilt(u, extra[j][1], W)
    else:
        direction = _rotate_off(u, W[S[:, j] == 0], W)
    return zeros + best, direction


def _candidate_signs(W: np.ndarray, combos: np.ndarray):
    """Signs of ``U_j . W_i`` for the cofactor normals ``U_j`` of every row
    combination, a mask of combinations with ``U_j != 0``, and a function
    returning an exact ``U_j``.

    ``int64`` input is handled exactly.  For big-integer input the signs are
    taken from a float evaluation on rows rescaled to unit magnitude (positive
    row scaling preserves every sign) and recomputed exactly wherever the
    float value is too close to zero to be trusted.
    """
    if W.dtype != object:
        U = _exact.batch_normals(W[combos])
        S = np.sign(W @ U.T).astype(np.int8)
        return S, (U != 0).any(axis=1), lambda j: [int(c) for c in U[j]]

    Wf = _unit_rows(W)
    Uf = _exact.batch_normals(Wf[combos])
    Sf = Wf @ Uf.T
    S = np.sign(Sf).astype(np.int8)
    tol = 1e-9
    unsure = np.abs(Sf) <= tol
    members = np.zeros_like(unsure)
    members[combos, np.arange(len(combos))[:, None]] = True
    S[members] = 0
    unsure &= ~members
    weak = np.abs(Uf).max(axis=1) <= tol
    redo = np.flatnonzero(unsure.any(axis=0) | weak)
    exact_normals = {}
    valid = np.ones(len(combos), dtype=bool)
    if redo.size:
        Ue = _exact.batch_normals(W[combos[redo]])
        for j, row in zip(redo.tolist(), Ue):
            exact_normals[j] = [int(c) for c in row]
            if not any(exact_normals[j]):
                valid[j] = False
                continue
            for i in np.flatnonzero(unsure[:, j]):
                v = sum(a * int(b) for a, b in zip(exact_normals[j], W[i]))
                S[i, j] = (v > 0) - (v < 0)

    def raw_normal(j):
        if j not in exact_normals:
            exact_normals[j] = [int(c) for c in _exact.batch_normals(W[combos[[j]]])[0]]
        return exact_normals[j]

    return S, valid, raw_normal


def _unit_rows(W: np.ndarray) -> np.ndarray:
    """Float rows ``W_i / 2^e_i`` with largest entry in ``[1/2, 1]`` in magnitude
    (absolute error below ``2^-52``)."""
    out = np.empty(W.shape, dtype=float)
    for i, row in enumerate(W.tolist()):
        top = max(abs(int(v)).bit_length() for v in row)
        shift = max(top - 62, 0)
        out[i] = [math.ldexp(float(int(v) >> shift), shift - top) for v in row]
    return out


def _tilt(u: list[Fraction], w: Sequence[Fraction], rows: np.ndarray) -> list[Fraction]:
    """``u + t w`` with ``t`` small enough that no row with ``u . row != 0``
    changes sign."""
    ui, du = _exact.to_integer_vector(u)
    wi, dw = _exact.to_integer_vector(w)
    best = None  # (|ui . row|, |wi . row|) with the smallest ratio
    for row in rows.tolist():
        a = abs(_exact.dot(ui, row))
        if a == 0:
            continue
        b = abs(_exact.dot(wi, row))
        if b == 0:
            continue
        if best is None or a * best[1] < best[0] * b:
            best = (a, b)
    # the ratio for the unscaled vectors is (a / du) / (b / dw)
    t = Fraction(1) if best is None else Fraction(best[0] * dw, best[1] * du * 2)
    return [a + t * b for a, b in zip(u, w)]


def _full_column_rank(W: np.ndarray) -> bool:
    """True only if ``W`` certainly has full column rank.

    On rows rescaled to unit magnitude the entry errors are below ``2^-52``,
    so a smallest singular value well above that bound cannot be an artifact
    (singular values move by at most the spectral norm of the perturbation).
    ``False`` means "not certified", not "rank deficient".
    """
    m, d = W.shape
    if m < d:
        return False
    Wf = _unit_rows(W) if W.dtype == object else W / np.abs(W).max(axis=1, keepdims=True)
    s = np.linalg.svd(Wf, compute_uv=False)
    return bool(s[-1] > 1e-6)


def _residual(v: Sequence[Fraction], span_rows: list[list[Fraction]]) -> list[Fraction]:
    """Component of ``v`` orthogonal to the span of ``span_rows``."""
    basis = [span_rows[i] for i in _exact.independent_rows(span_rows)] if span_rows else []
    if not basis:
        return list(v)
    gram = [[sum(a * b for a, b in zip(r, s)) for s in basis] for r in basis]
    rhs = [sum(a * b for a, b in zip(r, v)) for r in basis]
    coef = _exact.solve(gram, rhs)
    proj = [sum(c * r[k] for c, r in zip(coef, basis)) for k in range(len(v))]
    return [a - b for a, b in zip(v, proj)]


def _rotate_off(u: list[Fraction], on_rows: np.ndarray, rows: np.ndarray) -> list[Fraction]:
    """Tilt ``u`` about the query point so every ``on_rows`` offset ends up
    strictly positive while every other sign is kept.

    Offsets are ``X_i - z``; with ``z`` the pivot, the tilt direction is the
    part of ``z - X_j1`` orthogonal to the on-hyperplane differences.
    """
    on = [[Fraction(int(c)) for c in r] for r in on_rows.tolist()]
    if not on:
        return list(u)
    anchor = [-c for c in on[0]]
    diffs = [[a - b for a, b in zip(r, on[0])] for r in on[1:]]
    resid = _residual(anchor, diffs)
    if not any(resid):
        raise ValueError("pivot lies in the affine span of the on-hyperplane points")
    return _tilt(u, [-c for c in resid], rows)


def perturb_direction(
    u: Sequence, z: Sequence, on_indices: Sequence[int], cloud: PointCloud
) -> Direction:
    """Tilt ``u`` about ``z`` so the samples in ``on_indices`` fall strictly on
    the far side of ``z`` while every other sample keeps its side.

    Returns ``u - eps * r`` where ``r`` is the residual of ``z - X_j1``
    orthogonal to the differences of the on-hyperplane samples and ``eps`` is
    half the smallest ratio ``|u.(z - X_l)| / |r.(z - X_l)|`` over the other
    samples.  Both guarantees are checked exactly before returning.
    """
    z = as_point(z)
    u = [Fraction(c) for c in u]
    if len(u) != cloud.p or len(z) != cloud.p:
        raise GeometryError("dimension mismatch")
    if not any(u):
        raise ValueError("zero direction")
    on_indices = list(on_indices)
    if not on_indices:
        return tuple(u)
    offsets = [[a - b for a, b in zip(X, z)] for X in cloud.points]
    on_set = set(on_indices)
    anchor = [-c for c in offsets[on_indices[0]]]
    diffs = [[a - b for a, b in zip(offsets[j], offsets[on_indices[0]])] for j in on_indices[1:]]
    resid = _residual(anchor, diffs)
    if not any(resid):
        raise ValueError("z lies in the affine span of the on-hyperplane points")
    eps = None
    for i, off in enumerate(offsets):
        if i in on_set:
            continue
        a = abs(sum(x * y for x, y in zip(u, off)))
        b = abs(sum(x * y for x, y in zip(resid, off)))
        if b == 0:
            continue
        if eps is None or a / b < eps:
            eps = a / b
    eps = Fraction(1) if eps is None else eps / 2
    tilted = [a - eps * b for a, b in zip(u, resid)]

    def sgn(v):
        return (v > 0) - (v < 0)

    for i, off in enumerate(offsets):
        before = sgn(-sum(x * y for x, y in zip(u, off)))
        after = sgn(-sum(x * y for x, y in zip(tilted, off)))
        if i in on_set:
            if after >= 0:
                raise ValueError(f"sample {i} was not pushed off the hyperplane")
        elif before != after:
            raise ValueError(f"sample {i} changed side; is it on the hyperplane but not listed?")
    return tuple(tilted)


def depth_all_samples(cloud: PointCloud, *, force: bool = False) -> SampleDepths:
    """Depth of every sample point, with the indices attaining the maximum."""
    cloud.in_general_position  # evaluate the cached check before fanning out
    depths = ordered_map(lambda x: tukey_depth(x, cloud, force=force), cloud.points)
    top = max(d.kappa for d in depths)
    return SampleDepths(depths, tuple(i for i, d in enumerate(depths) if d.kappa == top))


def halfspace_symmetric(cloud: PointCloud, theta: Sequence, *, force: bool = False) -> bool:
    """Whether every closed halfspace with ``theta`` on its boundary holds at
    least half of the sample, i.e. ``n * depth(theta) >= ceil(n / 2)``."""
    d = tukey_depth(theta, cloud, force=force)
    return 2 * d.kappa >= cloud.n
