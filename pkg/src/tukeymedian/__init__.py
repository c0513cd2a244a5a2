"""Exact Tukey halfspace depth, depth regions and the Tukey median.

All geometry is done in rational arithmetic; floats are only used to guide
searches whose answers are then confirmed exactly.
"""
from .datasets import from_recipe, gen_gaussian, load_csv, median_json, save_csv
from .depth import DepthValue, depth_all_samples, halfspace_symmetric, perturb_direction, tukey_depth
from .geometry import GeneralPositionError, GeometryError, Hyperplane, PointCloud, affine_transform
from .median import (
    DepthBounds,
    MedianResult,
    PreconditionError,
    Report,
    depth_bounds,
    max_depth,
    search_savings,
    tukey_median,
    verify_prop1,
    verify_theorem1,
    verify_theorem2,
    verify_theorem3,
)
from .region import DepthRegion, depth_region, polytope_centroid, region_centroid, region_nonempty

__version__ = "0.1.0"

__all__ = [
    "DepthBounds", "DepthRegion", "DepthValue", "GeneralPositionError", "GeometryError",
    "Hyperplane", "MedianResult", "PointCloud", "PreconditionError", "Report",
    "affine_transform", "depth_all_samples", "depth_bounds", "depth_region", "from_recipe",
    "gen_gaussian", "halfspace_symmetric", "load_csv", "max_depth", "median_json",
    "perturb_direction", "polytope_centroid", "region_centroid", "region_nonempty",
    "save_csv", "search_savings", "tukey_depth", "tukey_median", "verify_prop1",
    "verify_theorem1", "verify_theorem2", "verify_theorem3",
]
