"""Exact rational and integer linear algebra used throughout the package.

Small dense systems are solved with :class:`fractions.Fraction`; batched
determinants and cofactor normals run on numpy integer arrays.  Arrays are
``int64`` only when a magnitude bound proves the arithmetic cannot overflow,
otherwise ``object`` arrays of Python ints are used.
"""
from __future__ import annotations

import math
from decimal import Decimal
from fractions import Fraction
from itertools import combinations
from numbers import Rational
from typing import Iterable, Sequence

import numpy as np

_INT64_SAFE = 2**62


def as_fraction(value) -> Fraction:
    """Convert a literal to an exact Fraction.

    Strings are parsed as decimal (or ``num/den``) literals.  Floats go through
    their shortest ``repr`` so ``0.1`` becomes ``1/10`` rather than the binary
    expansion of the double.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not coordinates")
    if isinstance(value, (int, np.integer)):
        return Fraction(int(value))
    if isinstance(value, str):
        text = value.strip()
        if not text:
            raise ValueError("empty numeric field")
        return Fraction(text)
    if isinstance(value, (float, np.floating)):
        if not math.isfinite(value):
            raise ValueError(f"non-finite coordinate {value!r}")
        return Fraction(repr(float(value)))
    if isinstance(value, (Decimal, Rational)):
        return Fraction(value)
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


def int_array(values, bound: int | None = None) -> np.ndarray:
    """Integer array, ``int64`` when ``bound`` (a magnitude bound on every
    intermediate result) is known to fit, else an object array."""
    arr = np.array(values, dtype=object)
    if bound is not None and bound < _INT64_SAFE:
        return arr.astype(np.int64)
    return arr


def max_abs(arr: np.ndarray) -> int:
    if arr.size == 0:
        return 0
    return int(max(abs(int(v)) for v in arr.ravel()))


def common_denominator(values: Iterable[Fraction]) -> int:
    den = 1
    for v in values:
        den = math.lcm(den, v.denominator)
    return den


def to_integer_vector(values: Sequence[Fraction]) -> tuple[list[int], int]:
    """Return ``(nums, den)`` with ``values[i] == nums[i] / den`` and ``den > 0``."""
    den = common_denominator(values)
    return [int(v * den) for v in values], den


def primitive(vec: Sequence[int]) -> tuple[int, ...]:
    """Divide an integer vector by the gcd of its entries and make the first
    nonzero entry positive."""
    g = 0
    for v in vec:
        g = math.gcd(g, int(v))
    if g == 0:
        return tuple(int(v) for v in vec)
    out = [int(v) // g for v in vec]
    for v in out:
        if v != 0:
            if v < 0:
                out = [-w for w in out]
            break
    return tuple(out)


def batch_minors(D: np.ndarray) -> dict[tuple[int, ...], np.ndarray]:
    """All maximal minors of a stack of ``r x p`` matrices.

    ``D`` has shape ``(m, r, p)``.  Returns a mapping from each sorted column
    tuple of size ``r`` to the ``(m,)`` array of corresponding minors.  Built
    by Laplace expansion along the last row, sharing sub-minors between
    column sets.
    """
    m, r, p = D.shape
    prev: dict[tuple[int, ...], np.ndarray] = {(): np.ones(m, dtype=D.dtype)}
    for k in range(r):
        cur = {}
        for cols in combinations(range(p), k + 1):
            acc = None
            for pos, c in enumerate(cols):
                term = D[:, k, c] * prev[cols[:pos] + cols[pos + 1:]]
                if (k + pos) % 2:
                    term = -term
                acc = term if acc is None else acc + term
            cur[cols] = acc
        prev = cur
    return prev


def batch_det(D: np.ndarray) -> np.ndarray:
    """Determinants of a stack of square integer matrices, shape ``(m, p, p)``."""
    p = D.shape[1]
    if p == 0:
        return np.ones(D.shape[0], dtype=D.dtype)
    return batch_minors(D)[tuple(range(p))]


def batch_normals(D: np.ndarray) -> np.ndarray:
    """Cofactor normals of a stack of ``(p-1) x p`` matrices.

    Row ``i`` of the result is orthogonal to every row of ``D[i]``; it is the
    zero vector exactly when those rows are linearly dependent.
    """
    m, r, p = D.shape
    assert r == p - 1
    minors = batch_minors(D)
    out = np.empty((m, p), dtype=D.dtype)
    for j in range(p):
        minor = minors[tuple(c for c in range(p) if c != j)]
        out[:, j] = -minor if j % 2 else minor
    return out


def normals_bound(coord_bound: int, p: int) -> int:
    """Bound on |u . (x - y)| where u is a cofactor normal of differences of
    points whose coordinates are bounded by ``coord_bound``."""
    return math.factorial(p) * (2 * coord_bound + 1) ** p


def sign_normalize(U: np.ndarray) -> np.ndarray:
    """Flip rows so the first nonzero entry is positive (zero rows untouched)."""
    U = U.copy()
    nz = U != 0
    first = np.argmax(nz, axis=1)
    lead = U[np.arange(len(U)), first]
    flip = lead < 0
    U[flip] = -U[flip]
    return U


# --- small dense rational systems -------------------------------------------

def _frac_rows(M) -> list[list[Fraction]]:
    return [[Fraction(int(v)) if not isinstance(v, Fraction) else v for v in row] for row in M]


def det(M) -> Fraction:
    """Exact determinant of a square matrix of rationals."""
    A = _frac_rows(M)
    n = len(A)
    result = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            result = -result
        result *= A[c][c]
        for r in range(c + 1, n):
            if A[r][c] != 0:
                f = A[r][c] / A[c][c]
                A[r] = [a - f * b for a, b in zip(A[r], A[c])]
    return result


def solve(A, b) -> list[Fraction]:
    """Solve the square system ``A x = b`` exactly; raises on singular ``A``."""
    M = [row + [Fraction(bi)] for row, bi in zip(_frac_rows(A), b)]
    n = len(M)
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c] != 0), None)
        if piv is None:
            raise np.linalg.LinAlgError("singular system")
        M[c], M[piv] = M[piv], M[c]
        inv = 1 / M[c][c]
        M[c] = [v * inv for v in M[c]]
        for r in range(n):
            if r != c and M[r][c] != 0:
                f = M[r][c]
                M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    return [M[r][n] for r in range(n)]


def echelon(rows) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    A = _frac_rows(rows)
    if not A:
        return [], []
    ncols = len(A[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(A)) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = 1 / A[r][c]
        A[r] = [v * inv for v in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A[:r], pivots


def rank(rows) -> int:
    return len(echelon(rows)[1])


def independent_columns(rows) -> list[int]:
    """Pivot columns: a lexicographically first set of columns whose
    projection is injective on the row space."""
    return echelon(rows)[1]


def independent_rows(rows) -> list[int]:
    """Indices of a lexicographically first maximal independent subset of rows."""
    chosen: list[int] = []
    basis: list[list[Fraction]] = []
    pivots: list[int] = []
    for idx, row in enumerate(_frac_rows(rows)):
        v = list(row)
        for brow, pc in zip(basis, pivots):
            if v[pc] != 0:
                f = v[pc]
                v = [a - f * b for a, b in zip(v, brow)]
        pc = next((c for c, a in enumerate(v) if a != 0), None)
        if pc is None:
            continue
        inv = 1 / v[pc]
        v = [a * inv for a in v]
        for i, brow in enumerate(basis):
            if brow[pc] != 0:
                f = brow[pc]
                basis[i] = [a - f * b for a, b in zip(brow, v)]
        basis.append(v)
        pivots.append(pc)
        chosen.append(idx)
    return chosen


def nullspace(rows, ncols: int) -> list[list[Fraction]]:
    """Basis of ``{x : rows @ x = 0}``."""
    R, pivots = echelon(rows) if len(rows) else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, pc in zip(R, pivots):
            x[pc] = -row[f]
        basis.append(x)
    return basis


def dot(u: Sequence, v: Sequence):
    return sum((a * b for a, b in zip(u, v)), 0)
