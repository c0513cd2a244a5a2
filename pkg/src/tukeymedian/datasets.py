"""Named point clouds: generators, CSV ingestion and JSON output.

Every generator is deterministic in its arguments.  Gaussian samples are
truncated to a fixed number of decimal digits and then treated as exact
rationals, so a seed pins down the cloud byte for byte.
"""
from __future__ import annotations

import contextlib
import csv
import json
import os
import re
import sys
import tempfile
from dataclasses import dataclass
from decimal import ROUND_DOWN, Decimal, localcontext
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any

import numpy as np

from .geometry import GeometryError, PointCloud

SCHEMA_VERSION = 1
GAUSSIAN_DIGITS = 9
DECIMAL_DIGITS = 20


class DatasetError(ValueError):
    """Malformed input data (the message names the offending row)."""


class RecipeError(ValueError):
    """Unknown or malformed generator recipe."""


@dataclass(frozen=True)
class Provenance:
    kind: str  # "generated" or "ingested"
    recipe: str | None = None
    seed: int | None = None
    path: str | None = None

    def __str__(self):
        if self.kind == "ingested":
            return f"ingested({self.path})"
        return f"generated({self.recipe}, seed={self.seed})"


@dataclass(frozen=True)
class NamedCloud:
    name: str
    cloud: PointCloud
    provenance: Provenance
    certified_general_position: bool


def certify(name: str, cloud: PointCloud, provenance: Provenance) -> NamedCloud:
    return NamedCloud(name, cloud, provenance, cloud.in_general_position)


# --- generators -----------------------------------------------------------------

def truncate(value: float, digits: int = GAUSSIAN_DIGITS) -> Fraction:
    """``value`` truncated toward zero to ``digits`` decimals, exactly."""
    q = Decimal(value).quantize(Decimal(1).scaleb(-digits), rounding=ROUND_DOWN)
    return Fraction(q)


def gen_gaussian(n: int, p: int, seed: int, *, digits: int = GAUSSIAN_DIGITS,
                 max_retries: int = 100) -> NamedCloud:
    """Standard normal sample with coordinates truncated to ``digits`` decimals.

    Draws are repeated from the same generator until the cloud is in general
    position; with continuous draws a retry is essentially never needed.
    """
    if not (isinstance(n, int) and isinstance(p, int)) or p < 1 or n <= p:
        raise GeometryError(f"need n > p >= 1, got n={n}, p={p}")
    rng = np.random.default_rng(seed)
    for _ in range(max_retries):
        draw = rng.standard_normal((n, p))
        cloud = PointCloud(tuple(tuple(truncate(float(v), digits) for v in row) for row in draw))
        if cloud.in_general_position:
            recipe = f"gaussian:n={n},p={p},seed={seed}"
            if digits != GAUSSIAN_DIGITS:
                recipe += f",digits={digits}"
            return certify(recipe, cloud, Provenance("generated", recipe, seed))
    raise RuntimeError(f"no general-position sample after {max_retries} draws")


def gen_square4() -> NamedCloud:
    """The unit square's corners; its deepest point is the center, at depth 2/4."""
    cloud = PointCloud.from_rows([(0, 0), (1, 0), (0, 1), (1, 1)])
    return certify("square4", cloud, Provenance("generated", "square4"))


def gen_triangle_plus_center() -> NamedCloud:
    """A triangle with one interior point, which is the unique deepest point."""
    cloud = PointCloud.from_rows([(0, 0), (4, 0), (2, 4), ("2", "1.5")])
    return certify("triangle-center", cloud, Provenance("generated", "triangle-center"))


BOUND_ASSET = "bound_attaining_p3.csv"


def gen_bound_attaining(p: int, seed: int = 0) -> NamedCloud:
    """A cloud whose maximal depth equals ``floor((n - p + 2)/2)``.

    ``p = 2`` gives the unit square.  ``p = 3`` loads the frozen result of
    :func:`search_bound_attaining` shipped with the package.
    """
    if p == 2:
        return gen_square4()
    if p == 3:
        ref = resources.files("tukeymedian") / "data" / BOUND_ASSET
        with resources.as_file(ref) as path:
            rows = _read_rows(path, header=False)
        cloud = PointCloud(tuple(rows))
        return certify("bound-attaining:p=3", cloud, Provenance("generated", "bound-attaining:p=3", seed))
    raise RecipeError(f"bound-attaining clouds are only available for p in (2, 3), got p={p}")


def search_bound_attaining(n: int = 7, seed: int = 0, *, spread: str = "0.02",
                           max_tries: int = 2000, kappa_star=None) -> tuple[NamedCloud, int]:
    """Randomized search in ``R^3`` for ``n`` points (odd ``n``) whose maximal
    depth reaches ``floor((n - 1)/2)``.

    Starts from ``(n - 1)/2`` antipodal pairs on the sphere plus the origin
    and perturbs every coordinate by up to ``spread``; coordinates are kept to
    three decimals.  ``kappa_star`` is the function computing maximal depth
    (by default the search engine).  Returns the cloud and the attempt index.
    """
    if n % 2 == 0 or n < 5:
        raise ValueError("n must be odd and at least 5")
    if kappa_star is None:
        from .median import max_depth

        def kappa_star(cloud):
            return max_depth(cloud)[0]

    rng = np.random.default_rng(seed)
    target = (n - 1) // 2
    amp = float(spread)
    for attempt in range(max_tries):
        dirs = rng.standard_normal(((n - 1) // 2, 3))
        dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
        base = np.vstack([dirs, -dirs, np.zeros((1, 3))])
        pts = base + rng.uniform(-amp, amp, size=base.shape)
        cloud = PointCloud(tuple(tuple(truncate(float(v), 3) for v in row) for row in pts))
        if cloud.in_general_position and kappa_star(cloud) == target:
            name = f"bound-attaining:p=3,n={n},seed={seed}"
            return certify(name, cloud, Provenance("generated", name, seed)), attempt
    raise RuntimeError(f"no bound-attaining configuration in {max_tries} attempts")


_RECIPE = re.compile(r"^(?P<name>[a-z0-9-]+)(?::(?P<args>.*))?$")


def parse_recipe(spec: str) -> tuple[str, dict[str, int]]:
    m = _RECIPE.match(spec.strip())
    if not m:
        raise RecipeError(f"malformed recipe {spec!r}")
    args = {}
    if m.group("args"):
        for part in m.group("args").split(","):
            key, sep, val = part.partition("=")
            if not sep or not re.fullmatch(r"-?\d+", val.strip()):
                raise RecipeError(f"malformed recipe argument {part!r} in {spec!r}")
            args[key.strip()] = int(val)
    return m.group("name"), args


def from_recipe(spec: str) -> NamedCloud:
    """Build a cloud from ``square4``, ``triangle-center``,
    ``gaussian:n=..,p=..,seed=..[,digits=..]`` or ``bound-attaining:p=..``."""
    name, args = parse_recipe(spec)
    allowed = {
        "square4": set(),
        "triangle-center": set(),
        "gaussian": {"n", "p", "seed", "digits"},
        "bound-attaining": {"p", "seed"},
    }
    if name not in allowed:
        raise RecipeError(f"unknown recipe {name!r}; expected one of {sorted(allowed)}")
    extra = set(args) - allowed[name]
    if extra:
        raise RecipeError(f"unexpected arguments {sorted(extra)} for recipe {name!r}")
    if name == "square4":
        return gen_square4()
    if name == "triangle-center":
        return gen_triangle_plus_center()
    if name == "gaussian":
        missing = {"n", "p", "seed"} - set(args)
        if missing:
            raise RecipeError(f"gaussian recipe needs {sorted(missing)}")
        return gen_gaussian(args["n"], args["p"], args["seed"],
                            digits=args.get("digits", GAUSSIAN_DIGITS))
    if "p" not in args:
        raise RecipeError("bound-attaining recipe needs p")
    return gen_bound_attaining(args["p"], args.get("seed", 0))


# --- CSV ------------------------------------------------------------------------

def _read_rows(path, header: bool) -> list[tuple[Fraction, ...]]:
    rows: list[tuple[Fraction, ...]] = []
    width = None
    with open(path, newline="") as fh:
        for lineno, raw in enumerate(csv.reader(fh), start=1):
            if header and lineno == 1:
                continue
            if not raw or all(not f.strip() for f in raw):
                continue
            if width is None:
                width = len(raw)
            elif len(raw) != width:
                raise DatasetError(f"{path}: row {lineno} has {len(raw)} fields, expected {width}")
            try:
                rows.append(tuple(Fraction(f.strip()) for f in raw))
            except (ValueError, ZeroDivisionError):
                bad = next(f for f in raw if not _is_number(f))
                raise DatasetError(f"{path}: row {lineno} has a non-numeric field {bad!r}") from None
    return rows


def _is_number(text: str) -> bool:
    try:
        Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        return False
    return True


def load_csv(path, *, header: bool = False) -> NamedCloud:
    """Read one point per row.  Fields are decimal literals (``num/den`` is
    also accepted) converted exactly; ``header=True`` skips the first line."""
    rows = _read_rows(path, header)
    if not rows:
        raise DatasetError(f"{path}: no data rows")
    p = len(rows[0])
    if len(rows) <= p:
        raise GeometryError(f"{path}: need n > p, got n={len(rows)}, p={p}")
    cloud = PointCloud(tuple(rows))
    return certify(Path(path).stem, cloud, Provenance("ingested", path=str(path)))


def format_rational_literal(x: Fraction) -> str:
    """Shortest exact literal: a terminating decimal when one exists, else ``num/den``."""
    x = Fraction(x)
    den = x.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        return f"{x.numerator}/{x.denominator}"
    digits = max(twos, fives)
    scaled = x * 10 ** digits
    assert scaled.denominator == 1
    text = str(abs(scaled.numerator)).rjust(digits + 1, "0")
    body = text if digits == 0 else text[:-digits] + "." + text[-digits:]
    return ("-" if x < 0 else "") + body


def csv_text(cloud: PointCloud) -> str:
    return "".join(",".join(format_rational_literal(c) for c in x) + "\n" for x in cloud.points)


def save_csv(cloud: PointCloud, path) -> None:
    """Write the cloud so that :func:`load_csv` reproduces it exactly."""
    write_atomic(path, csv_text(cloud))


# --- output ---------------------------------------------------------------------

@contextlib.contextmanager
def unlimited_int_digits():
    """Lift the interpreter's cap on int-to-str conversion (huge exact rationals)."""
    getter = getattr(sys, "get_int_max_str_digits", None)
    if getter is None:
        yield
        return
    old = getter()
    sys.set_int_max_str_digits(0)
    try:
        yield
    finally:
        sys.set_int_max_str_digits(old)


def write_atomic(path, text: str) -> None:
    """Write through a temporary file in the same directory, then rename."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.chmod(tmp, 0o644)  # mkstemp creates 0600; outputs are ordinary files
        os.replace(tmp, path)
    except BaseException:
        with contextlib.suppress(FileNotFoundError):
            os.unlink(tmp)
        raise


def rational(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def decimal_string(x, digits: int = DECIMAL_DIGITS) -> str:
    """``x`` rounded to ``digits`` significant digits (half-even)."""
    x = Fraction(x)
    with localcontext() as ctx:
        ctx.prec = digits
        value = Decimal(x.numerator) / Decimal(x.denominator)
    return format(value, "f") if abs(value.adjusted()) < 30 else str(value)


def region_json(region) -> dict[str, Any]:
    halfspaces = []
    for hs in region.halfspaces:
        a, b = hs.inequality()
        halfspaces.append({"normal": [rational(c) for c in a], "offset": rational(b)})
    return {
        "level_kappa": region.level_kappa,
        "dim": region.dim,
        "vertices": [[rational(c) for c in v] for v in region.vertices],
        "halfspaces": halfspaces,
    }


def median_json(result) -> dict[str, Any]:
    """The stable, versioned JSON document for a median computation.

    Halfspaces read ``normal . x >= offset``.
    """
    cloud = result.cloud
    with unlimited_int_digits():
        return {
            "schema_version": SCHEMA_VERSION,
            "n": cloud.n,
            "p": cloud.p,
            "kappa_star": result.kappa_star,
            "lambda_star": f"{result.kappa_star}/{cloud.n}",
            "median": [rational(c) for c in result.median],
            "median_decimal": [decimal_string(c) for c in result.median],
            "region": region_json(result.region),
            "flags": {
                "is_singleton": result.is_singleton,
                "deepest_samples": list(result.deepest_sample_indices),
                "sample_is_vertex": list(result.sample_is_vertex),
                "degenerate": result.degenerate,
            },
            "effort": {
                "strategy": result.strategy,
                "regions_computed": result.regions_computed,
                "bounds": result.bounds.as_dict(),
            },
        }


def dumps(doc: Any) -> str:
    with unlimited_int_digits():
        return json.dumps(doc, indent=2, sort_keys=False) + "\n"


def save_json(result, path) -> None:
    """Serialize a :class:`~tukeymedian.median.MedianResult` (or any
    JSON-ready mapping) atomically."""
    doc = result if isinstance(result, dict) else median_json(result)
    write_atomic(path, dumps(doc))

