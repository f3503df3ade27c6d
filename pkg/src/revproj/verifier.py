"""Numerical certification of the projection and the existence test.

Three kinds of checks live here:

* residual checks on the constructed map (preserved lengths, straight
  meridian images, and the structural identities tying f, a and sqrt(c)),
* an independent fixed-step RK4 oracle for the turning-angle ODE
  a'' = -2 (f'/f) a', compared against the closed form,
* the existence classifier for an arbitrary profile: a length-preserving,
  meridian-straightening map exists iff (f f')'' vanishes identically,
  i.e. iff f^2 is a quadratic in u with the right coefficient signs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .errors import DegenerateLine, DomainExceeded, InsufficientDomain
from .profile import (
    DomainInterval,
    GeneralProfile,
    QuadraticProfile,
    SurfacePoint,
    gaussian_curvature,
    profile_jet,
    slope_feasible_span,
)
from .projection import ProjectionParams, jacobian, meridian_turning, project


@dataclass(frozen=True)
class ResidualReport:
    """Per-identity residual statistics over a sample set."""

    identity_name: str
    max_abs_residual: float
    mean_abs_residual: float
    worst_point: object
    samples: int


@dataclass(frozen=True)
class ExistenceVerdict:
    """Outcome of the existence classifier.

    ``residual_sup`` is the scale-normalized sup of |(f f')''| over the
    sampled domain, attained at ``worst_u``; ``fitted`` holds the
    least-squares (c, d, k) when the residual passed the threshold, whether
    or not the coefficients turned out admissible.
    """

    exists: bool
    residual_sup: float
    fitted: Optional[Tuple[float, float, float]]
    curvature_range: Tuple[float, float]
    worst_u: float = math.nan


def _summarize(name, residuals, points):
    residuals = np.asarray(residuals, dtype=float)
    worst = int(np.argmax(residuals))
    return ResidualReport(
        identity_name=name,
        max_abs_residual=float(residuals[worst]),
        mean_abs_residual=float(residuals.mean()),
        worst_point=points[worst],
        samples=len(points),
    )


def check_local_isometry(
    p: QuadraticProfile,
    params: ProjectionParams,
    u_span: DomainInterval,
    t_span=(0.0, math.pi),
    nt: int = 50,
    nu: int = 50,
    fd_step: float = 1e-5,
):
    """Residuals of the two preserved-length conditions on an nt x nu grid:
    | |dPhi/du| - 1 | and | |dPhi/dt| - f(u) |.

    With fd_step > 0 the derivatives are central differences of the map;
    fd_step = 0 switches to the analytic Jacobian.  Raises DomainExceeded
    when the u-stencil would leave the admissible interval.
    """
    if fd_step != 0.0 and not 1e-8 <= fd_step <= 1e-3:
        raise ValueError("fd_step must be 0 (analytic) or within [1e-8, 1e-3]")
    lo_st, hi_st = u_span.lo - fd_step, u_span.hi + fd_step
    if lo_st <= p.singular_u <= hi_st:
        raise DomainExceeded("stencil [%g, %g] touches the zero-slope abscissa u*=%g" % (lo_st, hi_st, p.singular_u))
    feas_lo, feas_hi = slope_feasible_span(p)
    if lo_st < feas_lo or hi_st > feas_hi:
        raise DomainExceeded("stencil [%g, %g] leaves the arc-length-feasible window" % (lo_st, hi_st))

    ts = np.linspace(t_span[0], t_span[1], nt)
    us = np.linspace(u_span.lo, u_span.hi, nu)
    res_u, res_t, points = [], [], []
    h = fd_step
    for t in ts:
        for u in us:
            f, _, _ = profile_jet(p, u)
            if h == 0.0:
                jac = jacobian(p, params, SurfacePoint(t, u))
                du_norm = math.hypot(jac[0, 1], jac[1, 1])
                dt_norm = math.hypot(jac[0, 0], jac[1, 0])
            else:
                up = project(p, params, SurfacePoint(t, u + h))
                um = project(p, params, SurfacePoint(t, u - h))
                tp = project(p, params, SurfacePoint(t + h, u))
                tm = project(p, params, SurfacePoint(t - h, u))
                du_norm = math.hypot(up.x - um.x, up.y - um.y) / (2.0 * h)
                dt_norm = math.hypot(tp.x - tm.x, tp.y - tm.y) / (2.0 * h)
            res_u.append(abs(du_norm - 1.0))
            res_t.append(abs(dt_norm - f))
            points.append((t, u))
    return (
        _summarize("|dPhi/du| - 1", res_u, points),
        _summarize("|dPhi/dt| - f(u)", res_t, points),
    )


def check_meridian_straightness(p, params, t: float, u_samples) -> ResidualReport:
    """Max perpendicular distance of the sampled meridian image from the
    straight line through its first and last points."""
    u_samples = list(u_samples)
    if len(u_samples) < 3:
        raise ValueError("straightness check needs at least 3 u-samples")
    pts = [project(p, params, SurfacePoint(t, u)) for u in u_samples]
    first, last = pts[0], pts[-1]
    chord = math.hypot(last.x - first.x, last.y - first.y)
    if chord < 1e-15:
        raise DegenerateLine("meridian image endpoints coincide at t=%g" % t)
    ex, ey = (last.x - first.x) / chord, (last.y - first.y) / chord
    deviations = [abs((q.x - first.x) * ey - (q.y - first.y) * ex) for q in pts]
    points = [(t, u) for u in u_samples]
    return _summarize("meridian image collinearity", deviations, points)


def check_structural_identities(p: QuadraticProfile, u_samples):
    """Residual reports for the four identities tying f and the turning angle:

        f'' = (a')^2 f
        2 f' a' + f a'' = 0          (a'' taken analytically from a' ~ 1/f^2)
        f' cos a - f a' sin a = 0
        f' sin a + f a' cos a = sqrt(c)
    """
    u_samples = list(u_samples)
    rows = {name: [] for name in ("f'' - (a')^2 f", "2 f' a' + f a''",
                                  "f' cos a - f a' sin a",
                                  "f' sin a + f a' cos a - sqrt(c)")}
    for u in u_samples:
        f, fp, fpp = profile_jet(p, u)
        a, ap = meridian_turning(p, u)
        app = -p.sqrt_neg_delta * fp / (f * f * f)
        rows["f'' - (a')^2 f"].append(abs(fpp - ap * ap * f))
        rows["2 f' a' + f a''"].append(abs(2.0 * fp * ap + f * app))
        rows["f' cos a - f a' sin a"].append(abs(fp * math.cos(a) - f * ap * math.sin(a)))
        rows["f' sin a + f a' cos a - sqrt(c)"].append(
            abs(fp * math.sin(a) + f * ap * math.cos(a) - p.sqrt_c)
        )
    return [_summarize(name, residuals, u_samples) for name, residuals in rows.items()]


def ode_oracle_a(p: QuadraticProfile, u0: float, u1: float, step: float) -> ResidualReport:
    """Integrate a'' = -2 (f'/f) a' from closed-form initial conditions at u0
    with classical fixed-step RK4 and report max |a_numeric - a_closed_form|
    over the grid.  Fixed stepping keeps the global error O(step^4), which
    the convergence tests rely on."""
    if step <= 0 or step > 1e-2:
        raise ValueError("step must be positive and at most 1e-2")

    def rhs(u, a, ap):
        f, fp, _ = profile_jet(p, u)
        return ap, -2.0 * fp / f * ap

    a, ap = meridian_turning(p, u0)
    errors = [0.0]
    points = [u0]
    n_steps = max(0, math.ceil(abs(u1 - u0) / step))
    if n_steps == 0:
        return _summarize("a(u): RK4 vs closed form", errors, points)
    h = (u1 - u0) / n_steps
    u = u0
    for _ in range(n_steps):
        k1a, k1p = rhs(u, a, ap)
        k2a, k2p = rhs(u + 0.5 * h, a + 0.5 * h * k1a, ap + 0.5 * h * k1p)
        k3a, k3p = rhs(u + 0.5 * h, a + 0.5 * h * k2a, ap + 0.5 * h * k2p)
        k4a, k4p = rhs(u + h, a + h * k3a, ap + h * k3p)
        a += h * (k1a + 2.0 * k2a + 2.0 * k3a + k4a) / 6.0
        ap += h * (k1p + 2.0 * k2p + 2.0 * k3p + k4p) / 6.0
        u += h
        a_exact, _ = meridian_turning(p, u)
        errors.append(abs(a - a_exact))
        points.append(u)
    return _summarize("a(u): RK4 vs closed form", errors, points)


# Built-in profiles exercising both non-existence regimes: positive curvature
# (unit sphere, f = cos u) and constant negative curvature (pseudosphere,
# f = e^u for u < 0).
def sphere_profile() -> GeneralProfile:
    return GeneralProfile(evaluator=math.cos, domain=DomainInterval(0.2, 1.2))


def pseudosphere_profile() -> GeneralProfile:
    return GeneralProfile(evaluator=math.exp, domain=DomainInterval(-2.0, -0.5))


BUILTIN_PROFILES = {
    "sphere": sphere_profile,
    "pseudosphere": pseudosphere_profile,
}


def _fd_second(fn, u, h):
    """Fourth-order five-point stencil for f''; accurate to ~1e-10 for
    well-scaled smooth profiles, which plain O(h^2) differences cannot reach."""
    return (
        -fn(u + 2 * h) + 16.0 * fn(u + h) - 30.0 * fn(u) + 16.0 * fn(u - h) - fn(u - 2 * h)
    ) / (12.0 * h * h)


def _fd_curvature(gp: GeneralProfile, u: float, h: float = 5e-3) -> float:
    return -_fd_second(gp.evaluator, u, h) / gp.evaluator(u)


def existence_classifier(
    gp: GeneralProfile,
    n_samples: int = 200,
    fd_step: float = 1e-3,
    threshold: float = 1e-4,
) -> ExistenceVerdict:
    """Decide whether a length-preserving, meridian-straightening plane map
    can exist for the profile.

    Estimates (f f')'' by a second central difference of s(u) = f(u) f'(u)
    (f' itself a central difference) at interior samples, normalizes the sup
    by max(1, sup f^2), and accepts only when it stays below ``threshold``.
    On acceptance, f^2 is least-squares fitted by c u^2 + d u + k and the
    admissibility constraints (c > 0, k > 0, d^2 - 4ck < 0, f' nonzero on
    the domain) are re-validated.
    """
    if n_samples < 10:
        raise ValueError("classifier needs n_samples >= 10")
    lo, hi = gp.domain.lo, gp.domain.hi
    h = fd_step
    if hi - lo <= 6.0 * h:
        raise InsufficientDomain(
            "domain width %g cannot host the +-3h stencil with fd_step %g" % (hi - lo, h)
        )
    us = np.linspace(lo, hi, n_samples)
    f_vals = np.array([gp.evaluator(u) for u in us])
    if not np.all(f_vals > 0):
        raise ValueError("profile must be positive on its domain")

    def s(v):
        # inner derivative at fourth order: the O(h^2) three-point form
        # leaves an h^2 f''' term whose second difference can cross the
        # threshold on small-radius profiles
        fe = gp.evaluator
        fp = (-fe(v + 2 * h) + 8.0 * fe(v + h) - 8.0 * fe(v - h) + fe(v - 2 * h)) / (12.0 * h)
        return fe(v) * fp

    interior = [u for u in us if u - 3.0 * h >= lo and u + 3.0 * h <= hi]
    if not interior:
        raise InsufficientDomain("no sample admits the +-3h stencil")
    bend = [abs((s(u + h) - 2.0 * s(u) + s(u - h)) / (h * h)) for u in interior]
    scale = max(1.0, float(np.max(f_vals) ** 2))
    worst = int(np.argmax(bend))
    residual_sup = bend[worst] / scale

    h_k = min(5e-3, (hi - lo) / 8.0)
    k_samples = np.linspace(lo + 2.0 * h_k, hi - 2.0 * h_k, min(len(interior), 101))
    curvatures = [_fd_curvature(gp, u, h_k) for u in k_samples]
    curvature_range = (float(min(curvatures)), float(max(curvatures)))

    if residual_sup >= threshold:
        return ExistenceVerdict(False, residual_sup, None, curvature_range, worst_u=float(interior[worst]))

    c_fit, d_fit, k_fit = (float(v) for v in np.polyfit(us, f_vals**2, 2))
    # strict inequalities need scale-aware margins: a cylinder fits c at
    # rounding-noise level and a cone fits the discriminant at exactly zero,
    # and neither may slip through on the noise sign
    c_floor = 1e-9 * scale / ((hi - lo) ** 2)
    admissible = c_fit > c_floor and k_fit > 0
    if admissible:
        admissible = d_fit * d_fit < 4.0 * c_fit * k_fit * (1.0 - 1e-9)
    if admissible:
        u_star = -d_fit / (2.0 * c_fit)
        admissible = not (lo <= u_star <= hi)
    return ExistenceVerdict(
        admissible, residual_sup, (c_fit, d_fit, k_fit), curvature_range, worst_u=float(interior[worst])
    )


def curvature_report(p_or_gp, interval: DomainInterval, n: int = 100):
    """(K_min, K_max, all_negative) sampled at n points.  Closed form for a
    QuadraticProfile; five-point finite differences for a GeneralProfile
    (samples inset by the stencil width)."""
    if isinstance(p_or_gp, QuadraticProfile):
        us = np.linspace(interval.lo, interval.hi, n)
        ks = [gaussian_curvature(p_or_gp, u) for u in us]
    else:
        h = min(5e-3, interval.width / 8.0)
        us = np.linspace(interval.lo + 2 * h, interval.hi - 2 * h, n)
        ks = [_fd_curvature(p_or_gp, u, h) for u in us]
    k_min, k_max = float(min(ks)), float(max(ks))
    return k_min, k_max, k_max < 0.0
