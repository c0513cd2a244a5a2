"""Plain SVG plots of planar clouds, depth regions and the median (p = 2 only)."""
from __future__ import annotations

import math

from .geometry import PointCloud
from .region import DepthRegion

SIZE = 480
PAD = 24


class _Frame:
    """Maps data coordinates to the canvas, y pointing up."""

    def __init__(self, cloud: PointCloud):
        xs = [float(x[0]) for x in cloud.points]
        ys = [float(x[1]) for x in cloud.points]
        self.x0, self.y0 = min(xs), min(ys)
        span = max(max(xs) - self.x0, max(ys) - self.y0) or 1.0
        self.scale = (SIZE - 2 * PAD) / span

    def __call__(self, pt) -> tuple[str, str]:
        u = PAD + (float(pt[0]) - self.x0) * self.scale
        v = SIZE - PAD - (float(pt[1]) - self.y0) * self.scale
        return f"{u:.3f}", f"{v:.3f}"


def _ordered(vertices):
    """Vertices of a convex polygon in counterclockwise order."""
    cx = sum(float(v[0]) for v in vertices) / len(vertices)
    cy = sum(float(v[1]) for v in vertices) / len(vertices)
    return sorted(vertices, key=lambda v: math.atan2(float(v[1]) - cy, float(v[0]) - cx))


def _shape(frame: _Frame, vertices, style: str) -> str:
    if not vertices:
        return ""
    if len(vertices) == 1:
        u, v = frame(vertices[0])
        return f'<circle cx="{u}" cy="{v}" r="5" {style}/>'
    if len(vertices) == 2:
        (u1, v1), (u2, v2) = frame(vertices[0]), frame(vertices[1])
        return f'<line x1="{u1}" y1="{v1}" x2="{u2}" y2="{v2}" stroke-width="3" {style}/>'
    pts = " ".join(",".join(frame(v)) for v in _ordered(vertices))
    return f'<polygon points="{pts}" {style}/>'


def _document(body: list[str], title: str) -> str:
    head = (f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" '
            f'viewBox="0 0 {SIZE} {SIZE}">')
    return "\n".join([head, f"<title>{title}</title>",
                      f'<rect width="{SIZE}" height="{SIZE}" fill="white"/>', *body, "</svg>"]) + "\n"


def _points(frame: _Frame, cloud: PointCloud) -> list[str]:
    out = []
    for i, x in enumerate(cloud.points):
        u, v = frame(x)
        out.append(f'<circle cx="{u}" cy="{v}" r="3" fill="black"><title>X{i}</title></circle>')
    return out


def _require_plane(cloud: PointCloud) -> None:
    if cloud.p != 2:
        raise ValueError(f"not plottable: SVG output needs p = 2, got p = {cloud.p}")


def region_svg(region: DepthRegion) -> str:
    cloud = region.cloud
    _require_plane(cloud)
    frame = _Frame(cloud)
    body = [_shape(frame, list(region.vertices),
                   'fill="#9ecae1" fill-opacity="0.6" stroke="#3182bd"')]
    body += _points(frame, cloud)
    return _document([b for b in body if b], f"depth region, level {region.level_kappa}")


def median_svg(result) -> str:
    cloud = result.cloud
    _require_plane(cloud)
    frame = _Frame(cloud)
    body = [_shape(frame, list(result.region.vertices),
                   'fill="#fdae6b" fill-opacity="0.6" stroke="#e6550d"')]
    body += _points(frame, cloud)
    u, v = frame(result.median)
    body.append(f'<circle cx="{u}" cy="{v}" r="4" fill="#de2d26"><title>median</title></circle>')
    return _document([b for b in body if b],
                     f"deepest region, kappa* = {result.kappa_star} of n = {cloud.n}")
