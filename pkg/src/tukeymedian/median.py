"""Maximum depth, the Tukey median, and executable checks of the depth bounds.

The maximal depth ``kappa_star`` is the largest level whose depth region is
nonempty.  Levels are searched downward from an a-priori upper bound: either
``ceil(n/2)`` or the sharper ``floor((n - p + 2)/2)``.  Every level tested
counts as one region computation, which is the effort figure reported by the
benchmark.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .depth import depth_all_samples, tukey_depth
from .geometry import Point, PointCloud
from .region import DepthRegion, depth_region, region_centroid, region_nonempty

STRATEGIES = ("dg92", "thm1")


class PreconditionError(ValueError):
    """An operation was called outside the setting it is defined for."""


@dataclass(frozen=True)
class DepthBounds:
    """Integer bounds on ``kappa_star`` for ``n`` points in general position in ``R^p``."""

    n: int
    p: int
    kappa_lo: int
    kappa_hi_dg92: int
    kappa_hi_thm1: int
    kappa_hi_fulldim: int

    def upper(self, strategy: str) -> int:
        if strategy == "dg92":
            return self.kappa_hi_dg92
        if strategy == "thm1":
            return self.kappa_hi_thm1
        raise ValueError(f"unknown strategy {strategy!r}; expected one of {STRATEGIES}")

    def as_dict(self) -> dict[str, int]:
        return {"lo": self.kappa_lo, "dg92": self.kappa_hi_dg92,
                "thm1": self.kappa_hi_thm1, "fulldim": self.kappa_hi_fulldim}


def depth_bounds(n: int, p: int) -> DepthBounds:
    """The search floor ``ceil(n/(p+1))`` and the three upper bounds.

    >>> b = depth_bounds(25, 5)
    >>> (b.kappa_lo, b.kappa_hi_dg92, b.kappa_hi_thm1, b.kappa_hi_fulldim)
    (5, 13, 11, 10)
    """
    if not (isinstance(n, int) and isinstance(p, int)) or p < 1 or n <= p:
        raise PreconditionError(f"need integers n > p >= 1, got n={n}, p={p}")
    lo = -(-n // (p + 1))
    bounds = DepthBounds(n, p, lo, -(-n // 2), (n - p + 2) // 2, (n - p + 1) // 2)
    if not bounds.kappa_lo <= bounds.kappa_hi_thm1:
        raise AssertionError(f"empty search interval for n={n}, p={p}: {bounds}")
    assert bounds.kappa_hi_fulldim <= bounds.kappa_hi_thm1 <= bounds.kappa_hi_dg92
    return bounds


def max_depth(cloud: PointCloud, strategy: str = "thm1", *, search: str = "scan",
              force: bool = False) -> tuple[int, int]:
    """``(kappa_star, regions_computed)``.

    ``search="scan"`` walks down from the strategy's upper bound and stops at
    the first nonempty region.  ``search="binary"`` bisects between the floor
    and the upper bound using monotonicity of emptiness in the level.
    """
    bounds = depth_bounds(cloud.n, cloud.p)
    hi = bounds.upper(strategy)
    if not force:
        cloud.require_general_position()
    computed = 0

    def nonempty(k):
        nonlocal computed
        computed += 1
        return region_nonempty(cloud, k, force=force)

    if search == "scan":
        k = hi
        while k >= 1 and not nonempty(k):
            k -= 1
    elif search == "binary":
        # invariant: level ``good`` is nonempty (or 0), every level above ``bad`` is empty
        good, bad = 0, hi + 1
        if nonempty(bounds.kappa_lo):
            good = bounds.kappa_lo
        else:
            bad = bounds.kappa_lo
        while bad - good > 1:
            mid = (good + bad) // 2
            if nonempty(mid):
                good = mid
            else:
                bad = mid
        k = good
    else:
        raise ValueError(f"unknown search {search!r}")
    if k < 1:
        raise AssertionError("no nonempty depth region; level 1 is the convex hull")
    if not force and k < bounds.kappa_lo:
        raise AssertionError(f"kappa_star={k} below the floor {bounds.kappa_lo}")
    return k, computed


@dataclass(frozen=True, eq=False)
class MedianResult:
    """The deepest region ``M``, its centroid ``T*`` and related facts."""

    kappa_star: int
    region: DepthRegion
    median: Point
    is_singleton: bool
    deepest_sample_indices: tuple[int, ...]
    sample_is_vertex: tuple[bool, ...]
    regions_computed: int
    strategy: str
    bounds: DepthBounds
    degenerate: bool = False
    sample_kappas: tuple[int, ...] = field(default=(), repr=False)

    @property
    def cloud(self) -> PointCloud:
        return self.region.cloud

    @property
    def lambda_star(self) -> Fraction:
        return Fraction(self.kappa_star, self.cloud.n)


def tukey_median(cloud: PointCloud, *, strategy: str = "thm1", search: str = "scan",
                 force: bool = False, certify: bool = True) -> MedianResult:
    """Compute ``M`` and ``T*``; sample points of depth ``kappa_star`` are located
    among the vertices of ``M``."""
    degenerate = not cloud.in_general_position
    kappa, computed = max_depth(cloud, strategy, search=search, force=force)
    region = depth_region(cloud, kappa, force=force, certify=certify)
    if region.is_empty:
        raise AssertionError(f"region at kappa_star={kappa} came out empty")
    median = region_centroid(region)
    samples = depth_all_samples(cloud, force=force)
    deepest = tuple(i for i, d in enumerate(samples.depths) if d.kappa == kappa)
    verts = set(region.vertices)
    return MedianResult(
        kappa_star=kappa,
        region=region,
        median=median,
        is_singleton=region.dim == 0,
        deepest_sample_indices=deepest,
        sample_is_vertex=tuple(cloud[i] in verts for i in deepest),
        regions_computed=computed,
        strategy=strategy,
        bounds=depth_bounds(cloud.n, cloud.p),
        degenerate=degenerate,
        sample_kappas=tuple(d.kappa for d in samples.depths),
    )


# --- verifiers -----------------------------------------------------------------

@dataclass(frozen=True)
class Report:
    """Outcome of one verifier.  ``applicable`` is false when the statement is
    vacuous for the input (or skipped on degenerate data)."""

    name: str
    applicable: bool
    passed: bool
    details: dict[str, Any] = field(default_factory=dict)

    @property
    def status(self) -> str:
        if not self.passed:
            return "fail"
        return "pass" if self.applicable else "not applicable"

    def check(self) -> "Report":
        if not self.passed:
            raise AssertionError(f"{self.name} failed: {self.details}")
        return self


def _skipped(name: str) -> Report:
    return Report(name, False, True, {"reason": "degenerate input; general position required"})


def verify_theorem1(result: MedianResult, n: int | None = None, p: int | None = None) -> Report:
    """``kappa_star <= floor((n-p+2)/2)``, and ``<= floor((n-p+1)/2)`` when ``M``
    is full-dimensional."""
    n = result.cloud.n if n is None else n
    p = result.cloud.p if p is None else p
    if result.degenerate:
        return _skipped("thm1")
    b = depth_bounds(n, p)
    full = result.region.dim == p
    bound = b.kappa_hi_fulldim if full else b.kappa_hi_thm1
    details = {"kappa_star": result.kappa_star, "dim": result.region.dim,
               "branch": "fulldim" if full else "general", "bound": bound,
               "margin": bound - result.kappa_star}
    passed = result.kappa_star <= b.kappa_hi_thm1 and result.kappa_star <= bound
    return Report("thm1", True, passed, details)


def verify_theorem2(result: MedianResult) -> Report:
    """Every sample point of depth ``kappa_star`` is a vertex of ``M`` and never
    strictly interior to it."""
    if result.degenerate:
        return _skipped("thm2")
    idx = result.deepest_sample_indices
    interior = [i for i in idx if result.region.strictly_inside(result.cloud[i])]
    missing = [i for i, ok in zip(idx, result.sample_is_vertex) if not ok]
    details = {"deepest_samples": list(idx), "not_vertices": missing, "interior": interior}
    return Report("thm2", bool(idx), not missing and not interior, details)


def verify_theorem3(result: MedianResult, n: int | None = None, p: int | None = None) -> Report:
    """If ``kappa_star`` reaches ``floor((n-p+2)/2)`` then ``M`` is a single point."""
    n = result.cloud.n if n is None else n
    p = result.cloud.p if p is None else p
    if p < 2:
        raise PreconditionError("the single-point statement needs p >= 2")
    if result.degenerate:
        return _skipped("thm3")
    bound = depth_bounds(n, p).kappa_hi_thm1
    applicable = result.kappa_star == bound
    details = {"kappa_star": result.kappa_star, "bound": bound, "dim": result.region.dim}
    return Report("thm3", applicable, not applicable or result.is_singleton, details)


def verify_prop1(cloud: PointCloud, kappa_star: int | None = None) -> Report:
    """For ``p >= 3``, no point has depth ``1/2``: ``kappa_star < ceil(n/2)``."""
    if cloud.p < 3:
        raise PreconditionError("the statement is for p >= 3")
    cloud.require_general_position()
    if kappa_star is None:
        kappa_star, _ = max_depth(cloud)
    half = -(-cloud.n // 2)
    details = {"kappa_star": kappa_star, "half": half, "n": cloud.n}
    return Report("prop1", True, kappa_star < half, details)


def filters_agree(cloud: PointCloud, kappa: int) -> bool:
    """Whether the "exactly ``kappa - 1``" constraint subset cuts out the same
    polytope as the full "at most ``kappa - 1``" set."""
    full = depth_region(cloud, kappa, certify=False)
    exact = depth_region(cloud, kappa, certify=False, cut="exactly")
    return set(full.vertices) == set(exact.vertices)


def search_savings(n: int, p: int) -> dict[str, Any]:
    """Arithmetic of the two search intervals ``[lo, dg92]`` and ``[lo, thm1]``."""
    b = depth_bounds(n, p)
    len_dg, len_thm = b.kappa_hi_dg92 - b.kappa_lo, b.kappa_hi_thm1 - b.kappa_lo
    levels_dg, levels_thm = len_dg + 1, len_thm + 1
    return {
        "bounds": b.as_dict(),
        "interval_length": {"dg92": len_dg, "thm1": len_thm},
        "interval_reduction": Fraction(len_dg - len_thm, len_dg) if len_dg else Fraction(0),
        "level_count": {"dg92": levels_dg, "thm1": levels_thm},
        "level_reduction": Fraction(levels_dg - levels_thm, levels_dg),
    }


def median_depth_check(result: MedianResult) -> bool:
    """``T*`` lies in ``M`` and has depth exactly ``kappa_star``."""
    return result.region.contains(result.median) and \
        tukey_depth(result.median, result.cloud, force=result.degenerate).kappa == result.kappa_star


__all__ = [
    "DepthBounds", "MedianResult", "PreconditionError", "Report", "STRATEGIES",
    "depth_bounds", "filters_agree", "max_depth", "median_depth_check", "search_savings",
    "tukey_median", "verify_prop1", "verify_theorem1", "verify_theorem2", "verify_theorem3",
]
