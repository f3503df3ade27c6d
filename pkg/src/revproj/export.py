"""File emitters: projected graticules as SVG, the embedded surface as
Wavefront OBJ, and coordinate sample tables as CSV.

All writes are atomic (temp file + rename) and numeric fields use the
shortest round-trip representation so emitted files re-ingest losslessly.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

from .errors import CollinearityViolation, IoFailure
from .profile import DomainInterval, QuadraticProfile, SurfacePoint, embed, profile_jet
from .projection import ProjectionParams, project

# Internal guard on meridian images before they are collapsed to two-point
# polylines; they are straight by construction, so anything above this is a bug.
MERIDIAN_DEVIATION_GUARD = 1e-9

SVG_MARGIN_FRACTION = 0.05


@dataclass(frozen=True)
class GraticuleSpec:
    """Curve families to draw: meridian images (straight) and parallel
    images (sampled curves) over a (t, u) window."""

    t_range: tuple
    u_range: DomainInterval
    n_meridians: int = 9
    n_parallels: int = 5
    samples_per_curve: int = 64

    def __post_init__(self):
        if self.n_meridians < 2 or self.n_parallels < 2:
            raise ValueError("need at least 2 meridians and 2 parallels")
        if self.samples_per_curve < 8:
            raise ValueError("samples_per_curve must be at least 8")
        if not self.t_range[0] < self.t_range[1]:
            raise ValueError("t_range must be increasing")


@dataclass(frozen=True)
class MeshSpec:
    """Surface mesh resolution: t_divisions around the axis (seam closed),
    u_divisions along the profile, with g anchored at u_ref."""

    t_divisions: int
    u_divisions: int
    u_range: DomainInterval
    u_ref: float

    def __post_init__(self):
        if self.t_divisions < 3 or self.u_divisions < 3:
            raise ValueError("mesh divisions must be at least 3")


def _fmt(value: float) -> str:
    return repr(float(value))


def _linspace(a: float, b: float, n: int):
    if n == 1:
        return [a]
    step = (b - a) / (n - 1)
    return [a + i * step for i in range(n)]


def _atomic_write(path: str, text: str):
    tmp = path + ".tmp"
    try:
        with open(tmp, "w", newline="\n") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except OSError as exc:
        raise IoFailure("cannot write %s: %s" % (path, exc)) from exc


def _perpendicular_deviation(pts):
    first, last = pts[0], pts[-1]
    chord = math.hypot(last[0] - first[0], last[1] - first[1])
    if chord < 1e-15:
        return 0.0
    ex, ey = (last[0] - first[0]) / chord, (last[1] - first[1]) / chord
    return max(abs((x - first[0]) * ey - (y - first[1]) * ex) for x, y in pts)


def export_graticule_svg(
    p: QuadraticProfile, params: ProjectionParams, spec: GraticuleSpec, path: str
) -> dict:
    """Write an SVG graticule: one two-point polyline per meridian image
    (intermediate samples asserted collinear first) and one sampled polyline
    per parallel image.  Screen y is the flipped plane y; the viewBox is
    fitted with a 5% margin."""
    t0, t1 = spec.t_range
    u_lo, u_hi = spec.u_range.lo, spec.u_range.hi
    t_values = _linspace(t0, t1, spec.n_meridians)
    u_values = _linspace(u_lo, u_hi, spec.n_parallels)
    u_samples = _linspace(u_lo, u_hi, spec.samples_per_curve)
    t_samples = _linspace(t0, t1, spec.samples_per_curve)

    meridians = []
    for t in t_values:
        pts = [project(p, params, SurfacePoint(t, u)) for u in u_samples]
        screen = [(q.x, -q.y) for q in pts]
        deviation = _perpendicular_deviation(screen)
        if deviation > MERIDIAN_DEVIATION_GUARD:
            raise CollinearityViolation(
                "meridian image at t=%g deviates %g from a straight line" % (t, deviation)
            )
        meridians.append([screen[0], screen[-1]])

    parallels = []
    for u in u_values:
        pts = [project(p, params, SurfacePoint(t, u)) for t in t_samples]
        parallels.append([(q.x, -q.y) for q in pts])

    all_pts = [pt for line in meridians + parallels for pt in line]
    min_x = min(x for x, _ in all_pts)
    max_x = max(x for x, _ in all_pts)
    min_y = min(y for _, y in all_pts)
    max_y = max(y for _, y in all_pts)
    span = max(max_x - min_x, max_y - min_y, 1e-9)
    pad = SVG_MARGIN_FRACTION * span
    view = (min_x - pad, min_y - pad, (max_x - min_x) + 2 * pad, (max_y - min_y) + 2 * pad)
    stroke_width = 0.004 * span

    def polyline(points, color):
        coords = " ".join("%s,%s" % (_fmt(x), _fmt(y)) for x, y in points)
        return '  <polyline points="%s" fill="none" stroke="%s" stroke-width="%s"/>' % (
            coords,
            color,
            _fmt(stroke_width),
        )

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="%s %s %s %s">'
        % tuple(_fmt(v) for v in view),
    ]
    lines += [polyline(points, "#202020") for points in meridians]
    lines += [polyline(points, "#777777") for points in parallels]
    lines.append("</svg>")
    _atomic_write(path, "\n".join(lines) + "\n")
    return {
        "path": path,
        "meridians": len(meridians),
        "parallels": len(parallels),
        "viewbox": view,
    }


def export_mesh_obj(p: QuadraticProfile, spec: MeshSpec, path: str) -> dict:
    """Write the embedded surface as OBJ: vertices (f cos t, f sin t, g)
    row-major in (t, u), quad faces with 1-based indices, seam closed at
    t = 2 pi by wrapping the last ring of faces back to the first."""
    nt, nu = spec.t_divisions, spec.u_divisions
    t_values = [2.0 * math.pi * i / nt for i in range(nt)]
    u_values = _linspace(spec.u_range.lo, spec.u_range.hi, nu)
    heights = [0.0] * nu
    for j, u in enumerate(u_values):
        _, _, z = embed(p, SurfacePoint(0.0, u), spec.u_ref)
        heights[j] = z

    rows = []
    for t in t_values:
        cos_t, sin_t = math.cos(t), math.sin(t)
        for j, u in enumerate(u_values):
            f, _, _ = profile_jet(p, u)
            rows.append("v %s %s %s" % (_fmt(f * cos_t), _fmt(f * sin_t), _fmt(heights[j])))

    def vid(i, j):
        return i * nu + j + 1

    for i in range(nt):
        i_next = (i + 1) % nt
        for j in range(nu - 1):
            rows.append("f %d %d %d %d" % (vid(i, j), vid(i_next, j), vid(i_next, j + 1), vid(i, j + 1)))

    _atomic_write(path, "\n".join(rows) + "\n")
    return {"path": path, "vertices": nt * nu, "faces": nt * (nu - 1)}


def sample_table_csv(
    p: QuadraticProfile, params: ProjectionParams, grid, path: str
) -> dict:
    """Write header ``t,u,x,y`` then one row per (t, u) grid point with the
    projected coordinates, full double precision."""
    lines = ["t,u,x,y"]
    count = 0
    for t, u in grid:
        q = project(p, params, SurfacePoint(t, u))
        lines.append("%s,%s,%s,%s" % (_fmt(t), _fmt(u), _fmt(q.x), _fmt(q.y)))
        count += 1
    _atomic_write(path, "\n".join(lines) + "\n")
    return {"path": path, "rows": count}
