"""Coordinate charts of the hyperbolic plane in the hyperboloid model.

Two orthogonal charts are used throughout:

* geodesic-orthogonal coordinates ``psi(u, v)``, metric
  ``du^2 + cosh^2(u/r) dv^2``; the u-curves are geodesics orthogonal to
  the reference geodesic ``u = 0``;
* horocycle-geodesic coordinates ``phi(u, v)``, metric
  ``exp(-2v/r) du^2 + dv^2``; the u-curves are horocycles, the v-curves
  geodesics.

Signed curvature convention: the curvature of a chart curve equals
``<gamma x1 gamma', gamma''> / (r |gamma'|^3)`` in ambient coordinates
(:func:`kappa_extrinsic`), with the cross-product orientation of
:func:`hypcat.lorentz.cross3`. The chart formulas below are
sign-consistent with that anchor; the test suite enforces it on random
curves rather than trusting any displayed orientation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DomainError
from .lorentz import cross3, inner1

#: chart coordinates are restricted to |u|/r, |v|/r <= CHART_RANGE so
#: cosh/sinh stay far from double-precision overflow
CHART_RANGE = 25.0


class ChartId(Enum):
    SEMI_GEODESIC = "semi-geodesic"
    HORO_GEODESIC = "horo-geodesic"


@dataclass(frozen=True)
class ChartPoint:
    """A point (u, v) of a named chart on the hyperbolic plane of radius r."""

    chart: ChartId
    u: float
    v: float
    r: float

    def __post_init__(self):
        if self.r <= 0:
            raise ValueError("curvature radius r must be positive")
        check_range(self.u, self.v, self.r)


@dataclass(frozen=True)
class ChartJet2:
    """2-jet of a chart curve: point plus first and second derivatives."""

    point: ChartPoint
    du: float
    dv: float
    ddu: float = 0.0
    ddv: float = 0.0


@dataclass(frozen=True)
class MetricCoeffs:
    E: float
    F: float
    G: float


@dataclass(frozen=True)
class ChristoffelSet:
    """Christoffel symbols G^k_ij at a point; symmetric in the lower pair."""

    G111: float
    G112: float
    G122: float
    G211: float
    G212: float
    G222: float


def check_range(u, v, r):
    """Reject chart coordinates where cosh/sinh would lose precision."""
    bound = CHART_RANGE * r
    if np.any(np.abs(u) > bound) or np.any(np.abs(v) > bound):
        raise DomainError(
            "chart coordinates exceed |u|,|v| <= %g*r" % CHART_RANGE
        )


# ---------------------------------------------------------------------------
# geodesic-orthogonal chart
# ---------------------------------------------------------------------------


def psi(u, v, r):
    """Chart map r*(cosh(u/r)cosh(v/r), cosh(u/r)sinh(v/r), sinh(u/r))."""
    if r <= 0:
        raise ValueError("r must be positive")
    check_range(u, v, r)
    u = np.asarray(u, dtype=float) / r
    v = np.asarray(v, dtype=float) / r
    ch_u, sh_u = np.cosh(u), np.sinh(u)
    return r * np.stack(
        [ch_u * np.cosh(v), ch_u * np.sinh(v), sh_u * np.ones_like(v)],
        axis=-1,
    )


def psi_partials(u, v, r):
    """First partials (psi_u, psi_v) of the geodesic-orthogonal chart."""
    if r <= 0:
        raise ValueError("r must be positive")
    check_range(u, v, r)
    u = np.asarray(u, dtype=float) / r
    v = np.asarray(v, dtype=float) / r
    ch_u, sh_u = np.cosh(u), np.sinh(u)
    ch_v, sh_v = np.cosh(v), np.sinh(v)
    pu = np.stack([sh_u * ch_v, sh_u * sh_v, ch_u * np.ones_like(v)], axis=-1)
    pv = np.stack([ch_u * sh_v, ch_u * ch_v, np.zeros(np.broadcast(u, v).shape)], axis=-1)
    return pu, pv


def psi_second_partials(u, v, r):
    """Second partials (psi_uu, psi_uv, psi_vv)."""
    if r <= 0:
        raise ValueError("r must be positive")
    check_range(u, v, r)
    u = np.asarray(u, dtype=float) / r
    v = np.asarray(v, dtype=float) / r
    ch_u, sh_u = np.cosh(u), np.sinh(u)
    ch_v, sh_v = np.cosh(v), np.sinh(v)
    zero = np.zeros(np.broadcast(u, v).shape)
    puu = np.stack([ch_u * ch_v, ch_u * sh_v, sh_u * np.ones_like(v)], axis=-1) / r
    puv = np.stack([sh_u * sh_v, sh_u * ch_v, zero], axis=-1) / r
    pvv = np.stack([ch_u * ch_v, ch_u * sh_v, zero], axis=-1) / r
    return puu, puv, pvv


# ---------------------------------------------------------------------------
# horocycle-geodesic chart
# ---------------------------------------------------------------------------


def phi(u, v, r):
    """Chart map built by sliding the reference geodesic along horocycles.

    ``phi(u, v) = r*(cosh(v/r) + q*e, sinh(v/r) + q*e, (u/r)*e)`` with
    ``q = u^2/(2 r^2)`` and ``e = exp(-v/r)``. The v = const curves are
    horocycles orthogonal to the geodesic ``u = 0``.
    """
    if r <= 0:
        raise ValueError("r must be positive")
    check_range(u, v, r)
    u = np.asarray(u, dtype=float) / r
    v = np.asarray(v, dtype=float) / r
    e = np.exp(-v)
    q = 0.5 * u * u * e
    return r * np.stack([np.cosh(v) + q, np.sinh(v) + q, u * e], axis=-1)


def phi_partials(u, v, r):
    """First partials (phi_u, phi_v)."""
    if r <= 0:
        raise ValueError("r must be positive")
    check_range(u, v, r)
    u = np.asarray(u, dtype=float) / r
    v = np.asarray(v, dtype=float) / r
    e = np.exp(-v)
    q = 0.5 * u * u * e
    pu = np.stack([u * e, u * e, e * np.ones_like(u)], axis=-1)
    pv = np.stack([np.sinh(v) - q, np.cosh(v) - q, -u * e], axis=-1)
    return pu, pv


def phi_second_partials(u, v, r):
    """Second partials (phi_uu, phi_uv, phi_vv)."""
    if r <= 0:
        raise ValueError("r must be positive")
    check_range(u, v, r)
    un = np.asarray(u, dtype=float) / r
    vn = np.asarray(v, dtype=float) / r
    e = np.exp(-vn)
    zero = np.zeros(np.broadcast(un, vn).shape)
    puu = np.stack([e, e, zero], axis=-1) / r
    puv = -np.stack([un * e, un * e, e * np.ones_like(un)], axis=-1) / r
    pvv = phi(u, v, r) / (r * r)
    return puu, puv, pvv


def lightlike_rotation(theta, p):
    """Apply the one-parameter orthogonal family fixing the null plane
    through (1, 1, 0) and (0, 0, 1) pointwise.

    Preserves the Minkowski product; theta = 0 is the identity and the
    family composes additively in theta.
    """
    t = float(theta)
    mat = np.array(
        [
            [1.0 + 0.5 * t * t, -0.5 * t * t, t],
            [0.5 * t * t, 1.0 - 0.5 * t * t, t],
            [t, -t, 1.0],
        ]
    )
    p = np.asarray(p, dtype=float)
    return p @ mat.T


def horocycle_distance(u, v, r):
    """Length of the horocycle arc from the reference geodesic to phi(u, v).

    Equals ``u * exp(-v/r)``, which is also the z-coordinate of phi(u, v).
    """
    if r <= 0:
        raise ValueError("r must be positive")
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    return u * np.exp(-v / r)


# ---------------------------------------------------------------------------
# metric data
# ---------------------------------------------------------------------------


def metric(chart, point):
    """Closed-form metric coefficients (E, F, G) at a chart point."""
    if chart is ChartId.SEMI_GEODESIC:
        ch = math.cosh(point.u / point.r)
        return MetricCoeffs(1.0, 0.0, ch * ch)
    if chart is ChartId.HORO_GEODESIC:
        return MetricCoeffs(math.exp(-2.0 * point.v / point.r), 0.0, 1.0)
    raise ValueError("unknown chart: %r" % (chart,))


def christoffel(chart, point):
    """Closed-form Christoffel symbols at a chart point."""
    r = point.r
    if chart is ChartId.SEMI_GEODESIC:
        ch = math.cosh(point.u / r)
        sh = math.sinh(point.u / r)
        return ChristoffelSet(
            G111=0.0,
            G112=0.0,
            G122=-sh * ch / r,
            G211=0.0,
            G212=sh / (ch * r),
            G222=0.0,
        )
    if chart is ChartId.HORO_GEODESIC:
        return ChristoffelSet(
            G111=0.0,
            G112=-1.0 / r,
            G122=0.0,
            G211=math.exp(-2.0 * point.v / r) / r,
            G212=0.0,
            G222=0.0,
        )
    raise ValueError("unknown chart: %r" % (chart,))


# ---------------------------------------------------------------------------
# curvature
# ---------------------------------------------------------------------------


def _require_regular(speed2):
    if speed2 <= 0.0:
        raise DomainError("curve jet has zero velocity")


def kappa_semigeo(jet):
    """Signed curvature of a curve given by a 2-jet in the geodesic-orthogonal chart.

    Evaluates the full Christoffel expansion, including the
    ``ddu*dv - du*ddv`` jet terms, so it applies to arbitrary regular
    curves and agrees with :func:`kappa_extrinsic`.
    """
    pt = jet.point
    if pt.chart is not ChartId.SEMI_GEODESIC:
        raise ValueError("kappa_semigeo expects a geodesic-orthogonal jet")
    r = pt.r
    ch = math.cosh(pt.u / r)
    sh = math.sinh(pt.u / r)
    du, dv = jet.du, jet.dv
    speed2 = du * du + ch * ch * dv * dv
    _require_regular(speed2)
    bracket = (
        -(sh * ch / r) * dv ** 3
        - (2.0 * sh / (r * ch)) * du * du * dv
        + jet.ddu * dv
        - du * jet.ddv
    )
    return ch * bracket / speed2 ** 1.5


def kappa_horo(jet):
    """Signed curvature of a curve given by a 2-jet in the horocycle-geodesic chart."""
    pt = jet.point
    if pt.chart is not ChartId.HORO_GEODESIC:
        raise ValueError("kappa_horo expects a horocycle-geodesic jet")
    r = pt.r
    w2 = math.exp(-2.0 * pt.v / r)
    du, dv = jet.du, jet.dv
    speed2 = w2 * du * du + dv * dv
    _require_regular(speed2)
    num = jet.ddu * dv - du * (jet.ddv + du * du * w2 / r + 2.0 * dv * dv / r)
    return math.exp(-pt.v / r) * num / speed2 ** 1.5


def kappa_extrinsic(p, dp, ddp, r):
    """Signed curvature from ambient data: ``<p x1 dp, ddp> / (r |dp|^3)``.

    This is the orientation anchor for the chart formulas. The velocity
    must be spacelike (regular curve on the hyperbolic plane).
    """
    if r <= 0:
        raise ValueError("r must be positive")
    n2 = inner1(dp, dp)
    if np.any(n2 <= 0.0):
        raise DomainError("curve velocity is not spacelike")
    return inner1(cross3(p, dp), ddp) / (r * n2 ** 1.5)


# ---------------------------------------------------------------------------
# normal and gradient in chart components
# ---------------------------------------------------------------------------


def chart_normal(jet):
    """Unit normal of a chart curve, as chart components (n_u, n_v).

    The normal is the velocity rotated a quarter turn in the oriented
    orthonormal frame of the chart; in the geodesic-orthogonal chart this
    is ``(-dv*cosh(u/r), du/cosh(u/r)) / |gamma'|``. Works in both charts.
    """
    pt = jet.point
    g = metric(pt.chart, pt)
    se, sg = math.sqrt(g.E), math.sqrt(g.G)
    du, dv = jet.du, jet.dv
    speed2 = g.E * du * du + g.G * dv * dv
    _require_regular(speed2)
    speed = math.sqrt(speed2)
    return (-sg * dv / (se * speed), se * du / (sg * speed))


def chart_gradient(f_u, f_v, point):
    """Raise a differential (f_u, f_v) with the inverse chart metric."""
    g = metric(point.chart, point)
    return (f_u / g.E, f_v / g.G)


# ---------------------------------------------------------------------------
# jets between charts and the ambient space
# ---------------------------------------------------------------------------


def embed_jet(jet):
    """Ambient position, velocity and acceleration of a chart 2-jet."""
    pt = jet.point
    u, v, r = pt.u, pt.v, pt.r
    if pt.chart is ChartId.SEMI_GEODESIC:
        p = psi(u, v, r)
        pu, pv = psi_partials(u, v, r)
        puu, puv, pvv = psi_second_partials(u, v, r)
    else:
        p = phi(u, v, r)
        pu, pv = phi_partials(u, v, r)
        puu, puv, pvv = phi_second_partials(u, v, r)
    du, dv = jet.du, jet.dv
    dp = pu * du + pv * dv
    ddp = (
        puu * du * du
        + 2.0 * puv * du * dv
        + pvv * dv * dv
        + pu * jet.ddu
        + pv * jet.ddv
    )
    return p, dp, ddp


def semigeo_from_ambient(p, r):
    """Invert the geodesic-orthogonal chart: (x, y, z) -> (u, v)."""
    p = np.asarray(p, dtype=float)
    x, y, z = p[..., 0], p[..., 1], p[..., 2]
    u = r * np.arcsinh(z / r)
    v = r * np.arctanh(y / x)
    return u, v


def horo_from_ambient(p, r):
    """Invert the horocycle-geodesic chart: (x, y, z) -> (u, v).

    Uses x - y = r*exp(-v/r) and z = u*exp(-v/r); requires x > y.
    """
    p = np.asarray(p, dtype=float)
    x, y, z = p[..., 0], p[..., 1], p[..., 2]
    d = x - y
    if np.any(d <= 0.0):
        raise DomainError("point not in the horocycle-geodesic chart (x <= y)")
    v = -r * np.log(d / r)
    u = r * z / d
    return u, v


def horo_jet_from_ambient(p, dp, ddp, r):
    """Convert an ambient 2-jet to a horocycle-geodesic chart 2-jet."""
    p = np.asarray(p, dtype=float)
    dp = np.asarray(dp, dtype=float)
    ddp = np.asarray(ddp, dtype=float)
    d = p[0] - p[1]
    if d <= 0.0:
        raise DomainError("point not in the horocycle-geodesic chart (x <= y)")
    dd = dp[0] - dp[1]
    ddd = ddp[0] - ddp[1]
    z, dz, ddz = p[2], dp[2], ddp[2]
    u = r * z / d
    v = -r * math.log(d / r)
    du = r * (dz / d - z * dd / (d * d))
    dv = -r * dd / d
    ddu = r * (
        ddz / d
        - 2.0 * dz * dd / (d * d)
        - z * ddd / (d * d)
        + 2.0 * z * dd * dd / (d * d * d)
    )
    ddv = -r * (ddd * d - dd * dd) / (d * d)
    return ChartJet2(ChartPoint(ChartId.HORO_GEODESIC, u, v, r), du, dv, ddu, ddv)
