"""Closed-form plane maps for quadratic-profile surfaces of revolution.

The map Phi(t, u) = (x, y) sends meridians (t fixed) to straight lines while
preserving infinitesimal length along meridians and parallels:
|dPhi/du| = 1 and |dPhi/dt| = f(u).  Its ingredients are

    a(u) = arctan((2c / sqrt(-delta)) (u + d/2c))   meridian turning angle,
    b(t) = -sqrt(c) t + c0                          line direction angle
                                                    (+sqrt(c) t + c0 on the
                                                    mirrored branch),
    theta0 with sin(theta0) = d / (2 sqrt(ck)),

and the plane point is x = u g1(t) + G2(t), y = u h1(t) + H2(t) with
(g1, h1) the unit meridian image direction and (G2, H2) the anchored
antiderivatives of sqrt(k) (cos, sin)(theta0 - b(t)).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import NoConvergence
from .profile import QuadraticProfile, SurfacePoint


class Branch(enum.Enum):
    """Which of the two solution branches fixes the map: CASE_A has
    b' = -sqrt(c), CASE_B the mirrored b' = +sqrt(c)."""

    CASE_A = "a"
    CASE_B = "b"


@dataclass(frozen=True)
class ProjectionParams:
    """Integration constants picking one concrete map out of the family.

    c0 shifts b(t); theta0 satisfies sin(theta0) = d/(2 sqrt(ck)); t_base
    anchors the t-antiderivatives so G2(t_base) = H2(t_base) = 0.
    """

    c0: float
    theta0: float
    branch: Branch
    t_base: float


@dataclass(frozen=True)
class PlanePoint:
    x: float
    y: float


@dataclass(frozen=True)
class FrameFunctions:
    """Frame at a fixed t: (g1, h1) is the unit direction of the meridian
    image, (G2, H2) the anchored antiderivatives whose t-derivatives have
    norm sqrt(k)."""

    g1: float
    h1: float
    G2: float
    H2: float


def make_projection_params(
    p: QuadraticProfile,
    c0: float = 0.0,
    branch: Branch = Branch.CASE_A,
    t_base: float = 0.0,
    mirror_theta0: bool = False,
) -> ProjectionParams:
    """theta0 = arcsin(d / (2 sqrt(ck))), principal branch by default;
    ``mirror_theta0`` selects the supplementary angle pi - theta0, which has
    the same sine and therefore also satisfies both preserved-length
    conditions."""
    s = p.d / (2.0 * math.sqrt(p.c * p.k))
    theta0 = math.asin(s)
    if mirror_theta0:
        theta0 = math.pi - theta0
    return ProjectionParams(c0=float(c0), theta0=theta0, branch=branch, t_base=float(t_base))


def meridian_turning(p: QuadraticProfile, u: float):
    """(a, a') with a(u) = arctan((2c/sqrt(-delta))(u + d/2c)) and
    a' = (sqrt(-delta)/2) / f(u)^2."""
    a = math.atan(2.0 * p.c / p.sqrt_neg_delta * (u + p.d / (2.0 * p.c)))
    w = (p.c * u + p.d) * u + p.k
    a_prime = 0.5 * p.sqrt_neg_delta / w
    return a, a_prime


def b_slope(params: ProjectionParams, p: QuadraticProfile) -> float:
    """db/dt: -sqrt(c) on CASE_A, +sqrt(c) on CASE_B."""
    return -p.sqrt_c if params.branch is Branch.CASE_A else p.sqrt_c


def angle_b(params: ProjectionParams, p: QuadraticProfile, t: float) -> float:
    return b_slope(params, p) * t + params.c0


def omega(p: QuadraticProfile, params: ProjectionParams, t: float, u: float) -> float:
    """Direction angle of the parallel image tangent: omega = a(u) + b(t)."""
    a, _ = meridian_turning(p, u)
    return a + angle_b(params, p, t)


def phi(params: ProjectionParams, p: QuadraticProfile, t: float) -> float:
    """Direction angle of the meridian image: -b(t) on CASE_A,
    pi - b(t) on CASE_B."""
    b = angle_b(params, p, t)
    return -b if params.branch is Branch.CASE_A else math.pi - b


def frame_functions(params: ProjectionParams, p: QuadraticProfile, t: float) -> FrameFunctions:
    """Frame at t.  On CASE_A: (g1, h1) = (cos b, -sin b) and

        G2 = (sqrt(k)/sqrt(c)) [sin(theta0 - b(t)) - sin(theta0 - b(t_base))]
        H2 = -(sqrt(k)/sqrt(c)) [cos(theta0 - b(t)) - cos(theta0 - b(t_base))]

    which are the exact antiderivatives of sqrt(k) cos(theta0 - b) and
    sqrt(k) sin(theta0 - b) vanishing at t_base.  On CASE_B all four signs
    flip, matching b' = +sqrt(c).
    """
    b = angle_b(params, p, t)
    b0 = angle_b(params, p, params.t_base)
    amp = math.sqrt(p.k) / p.sqrt_c
    ds = math.sin(params.theta0 - b) - math.sin(params.theta0 - b0)
    dc = math.cos(params.theta0 - b) - math.cos(params.theta0 - b0)
    if params.branch is Branch.CASE_A:
        return FrameFunctions(g1=math.cos(b), h1=-math.sin(b), G2=amp * ds, H2=-amp * dc)
    return FrameFunctions(g1=-math.cos(b), h1=math.sin(b), G2=-amp * ds, H2=amp * dc)


def project(p: QuadraticProfile, params: ProjectionParams, pt: SurfacePoint) -> PlanePoint:
    """Phi(t, u) = (u g1 + G2, u h1 + H2): affine in u along each meridian."""
    fr = frame_functions(params, p, pt.t)
    return PlanePoint(pt.u * fr.g1 + fr.G2, pt.u * fr.h1 + fr.H2)


def jacobian(p: QuadraticProfile, params: ProjectionParams, pt: SurfacePoint) -> np.ndarray:
    """2x2 Jacobian of Phi, columns (d/dt, d/du).

    The u-column is the unit vector (g1, h1); the t-column is
    (u g1' + sqrt(k) cos(theta0 - b), u h1' + sqrt(k) sin(theta0 - b))
    and has norm exactly f(u), since its squared norm expands to
    c u^2 + 2u sqrt(ck) sin(theta0) + k = f(u)^2.
    """
    b = angle_b(params, p, pt.t)
    bp = b_slope(params, p)
    sqrt_k = math.sqrt(p.k)
    cr = math.cos(params.theta0 - b)
    sr = math.sin(params.theta0 - b)
    if params.branch is Branch.CASE_A:
        g1, h1 = math.cos(b), -math.sin(b)
        g1p, h1p = -bp * math.sin(b), -bp * math.cos(b)
    else:
        g1, h1 = -math.cos(b), math.sin(b)
        g1p, h1p = bp * math.sin(b), bp * math.cos(b)
    dx_dt = pt.u * g1p + sqrt_k * cr
    dy_dt = pt.u * h1p + sqrt_k * sr
    return np.array([[dx_dt, g1], [dy_dt, h1]])


def t_period(p: QuadraticProfile) -> float:
    """Phi is exactly periodic in t with period 2 pi / sqrt(c)."""
    return 2.0 * math.pi / p.sqrt_c


def invert(
    p: QuadraticProfile,
    params: ProjectionParams,
    q: PlanePoint,
    seed: SurfacePoint,
    tol: float = 1e-10,
    max_iter: int = 50,
) -> SurfacePoint:
    """Invert Phi by Newton iteration with the analytic Jacobian.

    Returns (t, u) with |Phi(t, u) - q| <= tol, with t folded into the
    period window centred on the seed (the map repeats every 2 pi / sqrt(c)
    in t, so the seed selects the sheet).  Raises NoConvergence after
    ``max_iter`` steps or when |det J| falls below 1e-14.
    """
    t, u = seed.t, seed.u
    residual = math.inf
    for iteration in range(max_iter + 1):
        img = project(p, params, SurfacePoint(t, u))
        rx, ry = q.x - img.x, q.y - img.y
        residual = math.hypot(rx, ry)
        if residual <= tol:
            period = t_period(p)
            t -= period * round((t - seed.t) / period)
            return SurfacePoint(t, u)
        if iteration == max_iter:
            break
        jac = jacobian(p, params, SurfacePoint(t, u))
        det = float(jac[0, 0] * jac[1, 1] - jac[0, 1] * jac[1, 0])
        if abs(det) < 1e-14:
            raise NoConvergence(
                "Jacobian determinant %g below 1e-14 at (t=%g, u=%g)" % (det, t, u),
                iterations=iteration,
                residual=residual,
            )
        t += float(jac[1, 1] * rx - jac[0, 1] * ry) / det
        u += float(-jac[1, 0] * rx + jac[0, 0] * ry) / det
    raise NoConvergence(
        "no convergence to %g after %d iterations (residual %g)" % (tol, max_iter, residual),
        iterations=max_iter,
        residual=residual,
    )
