"""Exact linear programming over the rationals for small dimension.

Problems have the inequality form ``min c.z  s.t.  G z >= h`` with a handful
of variables and possibly tens of thousands of integer rows.  HiGHS (through
scipy) proposes a basis in floating point; everything returned is then
established exactly: the vertex is recomputed in rationals, primal
feasibility is checked row by row, and optimality is certified by
nonnegative multipliers on the basis rows.  When the proposal fails the
certificate checks, an exact dual simplex with Bland's rule finishes the job
from a known feasible basis.
"""
from __future__ import annotations

import math
import warnings
from fractions import Fraction
from typing import NamedTuple, Sequence

import numpy as np
from scipy.optimize import linprog

from . import _exact


class LPError(RuntimeError):
    pass


class LPResult(NamedTuple):
    x: tuple[Fraction, ...]
    value: Fraction
    basis: tuple[int, ...]
    duals: tuple[Fraction, ...]


class Feasibility(NamedTuple):
    """Outcome of a feasibility test for ``A x >= b`` inside a box.

    ``point`` is an exact feasible point (``None`` when empty).  For an empty
    system ``certificate`` maps row indices of ``A`` to nonnegative
    multipliers proving infeasibility together with the box.
    """

    feasible: bool
    point: tuple[Fraction, ...] | None
    basis: tuple[int, ...] | None
    certificate: dict[int, Fraction] | None


def _as_object(G) -> np.ndarray:
    return np.asarray(G).astype(object)


def _float_rows(G: np.ndarray, h: np.ndarray):
    try:
        Gf = G.astype(float)
        hf = h.astype(float)
    except OverflowError:
        return None
    norms = np.sqrt((Gf * Gf).sum(axis=1))
    norms[norms == 0] = 1.0
    if not (np.isfinite(Gf).all() and np.isfinite(hf).all() and np.isfinite(norms).all()):
        return None
    return Gf / norms[:, None], hf / norms


def _float_guess(c, G, h) -> np.ndarray | None:
    rows = _float_rows(G, h)
    if rows is None:
        return None
    Gn, hn = rows
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        try:
            res = linprog(
                np.array([float(v) for v in c]),
                A_ub=-Gn,
                b_ub=-hn,
                bounds=[(None, None)] * G.shape[1],
                method="highs",
            )
        except (ValueError, OverflowError):
            return None
    if res.status != 0:
        return None
    return res.x


def _basis_near(xf: np.ndarray, G: np.ndarray, h: np.ndarray) -> list[int] | None:
    Gn, hn = _float_rows(G, h)
    slack = np.abs(Gn @ xf - hn)
    order = np.argsort(slack, kind="stable")
    D = G.shape[1]
    for k in (4 * D, 16 * D, len(order)):
        head = order[:k]
        picked = _exact.independent_rows(G[head].tolist())
        if len(picked) == D:
            return [int(head[i]) for i in picked]
    return None


def _vertex(G, h, basis) -> list[Fraction]:
    return _exact.solve(G[basis].tolist(), [h[i] for i in basis])


def _slacks(G, h, z) -> tuple[np.ndarray, int]:
    """Integer multiples ``den * (G z - h)`` and ``den``."""
    nums, den = _exact.to_integer_vector(z)
    return G @ np.array(nums, dtype=object) - h * den, den


def is_feasible_point(G, h, z) -> bool:
    G = _as_object(G)
    h = _as_object(h)
    s, _ = _slacks(G, h, z)
    return bool((s >= 0).all())


def minimize(c: Sequence, G, h, *, basis: Sequence[int] | None = None,
             max_iter: int = 100_000) -> LPResult:
    """Exact optimum of ``min c.z`` subject to ``G z >= h``.

    ``basis`` is a fallback starting basis: row indices whose equality system
    has a unique, primal-feasible solution.  It is only needed when the
    floating-point proposal cannot be certified.  The problem must be bounded.
    """
    G = _as_object(G)
    h = _as_object(h)
    c = [Fraction(v) for v in c]
    D = G.shape[1]

    start = None
    xf = _float_guess(c, G, h)
    if xf is not None:
        guess = _basis_near(xf, G, h)
        if guess is not None:
            z = _vertex(G, h, guess)
            if is_feasible_point(G, h, z):
                start = guess
    if start is None:
        if basis is None:
            raise LPError("no certified starting basis")
        start = list(basis)
        if len(start) != D:
            raise LPError("starting basis has the wrong size")
    return _dual_simplex(c, G, h, list(start), max_iter)


def _dual_simplex(c, G, h, B, max_iter) -> LPResult:
    D = G.shape[1]
    z = _vertex(G, h, B)
    for _ in range(max_iter):
        GB = G[B].tolist()
        y = _exact.solve([list(col) for col in zip(*GB)], c)
        negative = [k for k in range(D) if y[k] < 0]
        if not negative:
            value = sum((a * b for a, b in zip(c, z)), Fraction(0))
            return LPResult(tuple(z), value, tuple(B), tuple(y))
        k = min(negative, key=lambda k: B[k])
        e = [Fraction(0)] * D
        e[k] = Fraction(1)
        d = _exact.solve(GB, e)
        dn, dden = _exact.to_integer_vector(d)
        Gd = G @ np.array(dn, dtype=object)
        S, zden = _slacks(G, h, z)
        cand = np.flatnonzero(Gd < 0)
        if cand.size == 0:
            raise LPError("problem is unbounded")
        i = _min_ratio(S[cand], -Gd[cand], cand)
        t = Fraction(int(S[i]) * dden, -int(Gd[i]) * zden)
        z = [a + t * b for a, b in zip(z, d)]
        B[k] = int(i)
    raise LPError("iteration limit reached")


def _min_ratio(num: np.ndarray, den: np.ndarray, idx: np.ndarray) -> int:
    """Index with the smallest ``num/den`` (all ``den > 0``), lowest index on ties."""
    approx = np.array([int(a) / int(b) for a, b in zip(num, den)])
    lo = approx.min()
    near = np.flatnonzero(approx <= lo * (1 + 1e-9) + 1e-300)
    best = None
    for j in near:
        r = Fraction(int(num[j]), int(den[j]))
        if best is None or r < best[0] or (r == best[0] and idx[j] < best[1]):
            best = (r, int(idx[j]))
    return best[1]


def _ceil_norm(row) -> int:
    return math.isqrt(sum(int(v) * int(v) for v in row)) + 1


def find_feasible_point(A, b, lo: Sequence, hi: Sequence) -> Feasibility:
    """Exact feasibility of ``A x >= b`` within the box ``lo <= x <= hi``.

    Solves ``min s`` over ``A x + r s >= b``, ``s >= 0`` and the box, where
    ``r`` are positive row scales (they make the float proposal well
    conditioned and do not change feasibility).
    """
    A = _as_object(A).reshape(-1, len(lo))
    b = _as_object(b)
    m, p = A.shape
    r = np.array([_ceil_norm(row) for row in A.tolist()], dtype=object)
    eye = np.eye(p, dtype=np.int64).astype(object)
    zero = np.zeros((p, 1), dtype=object)
    G = np.vstack([
        np.hstack([A, r.reshape(-1, 1)]),
        np.hstack([eye, zero]),
        np.hstack([-eye, zero]),
        np.array([[0] * p + [1]], dtype=object),
    ])
    lo = [Fraction(v) for v in lo]
    hi = [Fraction(v) for v in hi]
    h = np.concatenate([b, _frac_to_obj(lo), _frac_to_obj([-v for v in hi]), np.array([0], dtype=object)])
    G, h = _clear_denominators(G, h)

    # crash start: x at the lower box corner, s just large enough
    worst = _most_violated(A, b, r, lo) if m else None
    start = list(range(m, m + p))
    start.append(m + 2 * p if worst is None else worst)

    c = [0] * p + [1]
    res = minimize(c, G, h, basis=start)
    x = res.x[:p]
    if res.value == 0:
        return Feasibility(True, tuple(x), res.basis, None)
    cert = {i: y for i, y in zip(res.basis, res.duals) if i < m and y != 0}
    return Feasibility(False, None, None, cert)


def _most_violated(A, b, r, lo) -> int | None:
    """Row maximizing ``(b_i - A_i . lo) / r_i`` if that maximum is positive
    (lowest index on ties), else ``None``."""
    nums, den = _exact.to_integer_vector(lo)
    viol = b * den - A @ np.array(nums, dtype=object)
    approx = np.array([int(v) / int(s) for v, s in zip(viol, r)])
    top = approx.max()
    near = np.flatnonzero(approx >= top - 1e-9 * max(1.0, abs(top)))
    best = max(near, key=lambda i: (Fraction(int(viol[i]), int(r[i])), -i))
    if viol[best] <= 0:
        return None
    return int(best)


def _frac_to_obj(vals):
    return np.array(list(vals), dtype=object)


def _clear_denominators(G, h):
    """Scale each row of ``[G | h]`` to integers (positive factors)."""
    G = G.copy()
    h = h.copy()
    for i in range(len(h)):
        vals = list(G[i]) + [h[i]]
        if all(isinstance(v, (int, np.integer)) for v in vals):
            continue
        vals = [Fraction(v) for v in vals]
        den = _exact.common_denominator(vals)
        G[i] = [int(v * den) for v in vals[:-1]]
        h[i] = int(vals[-1] * den)
    return G, h


def vertex_basis_from_phase_one(A, feas: Feasibility) -> list[int]:
    """Rows of ``[A; I; -I]`` forming a vertex basis at ``feas.point``.

    Drops the slack row from the phase-one basis and keeps ``p`` rows whose
    ``x``-parts are independent.
    """
    A = _as_object(A)
    m, p = A.shape
    eye = np.eye(p, dtype=np.int64).astype(object)
    rows = np.vstack([A, eye, -eye]) if m else np.vstack([eye, -eye])
    cand = [i for i in feas.basis if i < m + 2 * p]
    keep = _exact.independent_rows(rows[cand].tolist())
    if len(keep) != p:
        raise LPError("phase-one basis does not determine a vertex")
    return [cand[i] for i in keep]


def with_box(A, b, lo: Sequence, hi: Sequence):
    """Integer system ``[A; I; -I] x >= [b; lo; -hi]`` (rows scaled to integers)."""
    A = _as_object(A).reshape(-1, len(lo))
    p = A.shape[1]
    eye = np.eye(p, dtype=np.int64).astype(object)
    G = np.vstack([A, eye, -eye])
    h = np.concatenate([_as_object(b), _frac_to_obj(Fraction(v) for v in lo),
                        _frac_to_obj(-Fraction(v) for v in hi)])
    return _clear_denominators(G, h)
