"""Extrinsic catenaries: curvature laws, unit-speed integration, diagnostics.

An extrinsic catenary is a critical curve of the weighted length
``W[gamma] = integral (f + lam) |gamma'| dt`` on the hyperbolic plane,
where f is the ambient distance to a reference 2-plane (up to a
constant factor) and lam is the length-constraint multiplier. The three
plane types give the weights::

    elliptic    f = sinh(u/r)                 (plane spanned by e_x, e_y)
    hyperbolic  f = cosh(u/r) cosh(v/r)       (plane spanned by e_y, e_z)
    parabolic   f = exp(-v/r) cosh(u/r)       (null plane)

Critical curves satisfy the prescribed-curvature law
``kappa = (dv f_u cosh(u/r) - du f_v / cosh(u/r)) / ((f + lam) |gamma'|)``
in the geodesic-orthogonal chart. :func:`integrate` realizes the law as
a forced geodesic equation and integrates it at unit speed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
from scipy.integrate import simpson
from scipy.interpolate import CubicHermiteSpline

from . import charts
from .charts import ChartId, ChartJet2, ChartPoint
from .errors import DomainError
from .lorentz import PlaneType, inner1

#: integration halts with status "hit-reference-plane" when the weight
#: drops below this floor (times r)
WEIGHT_FLOOR = 1e-8


class CatenaryType(Enum):
    ELLIPTIC = "elliptic"
    HYPERBOLIC = "hyperbolic"
    PARABOLIC = "parabolic"

    @property
    def plane(self):
        return {
            CatenaryType.ELLIPTIC: PlaneType.SPAN_XY,
            CatenaryType.HYPERBOLIC: PlaneType.SPAN_YZ,
            CatenaryType.PARABOLIC: PlaneType.SPAN_LIGHT,
        }[self]


def weight_partials(ctype, u, v, r):
    """Weight f and its chart partials (f, f_u, f_v), without the multiplier."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if ctype is CatenaryType.ELLIPTIC:
        f = np.sinh(u / r)
        return f, np.cosh(u / r) / r, np.zeros(np.broadcast(u, v).shape)
    if ctype is CatenaryType.HYPERBOLIC:
        ch_u, sh_u = np.cosh(u / r), np.sinh(u / r)
        ch_v, sh_v = np.cosh(v / r), np.sinh(v / r)
        return ch_u * ch_v, sh_u * ch_v / r, ch_u * sh_v / r
    if ctype is CatenaryType.PARABOLIC:
        e = np.exp(-v / r)
        ch_u, sh_u = np.cosh(u / r), np.sinh(u / r)
        return e * ch_u, e * sh_u / r, -e * ch_u / r
    raise ValueError("unknown catenary type: %r" % (ctype,))


def weight(ctype, u, v, r, lam=0.0):
    """Total weight f + lam; raises DomainError when it is not positive."""
    f, _, _ = weight_partials(ctype, u, v, r)
    w = f + lam
    if np.any(w <= 0.0):
        raise DomainError(
            "nonpositive weight (curve on the wrong side of the reference plane)"
        )
    return w


def catenary_kappa(ctype, u, v, du, dv, r, lam=0.0):
    """Curvature a catenary of the given type must have at chart state (u, v, du, dv).

    Parametrization invariant; for lam = 0 this reduces to the three
    closed-form laws of the individual types.
    """
    f, fu, fv = weight_partials(ctype, u, v, r)
    w = f + lam
    if np.any(w <= 0.0):
        raise DomainError("nonpositive weight in curvature law")
    ch = np.cosh(np.asarray(u, dtype=float) / r)
    speed2 = np.asarray(du, dtype=float) ** 2 + ch * ch * np.asarray(dv, dtype=float) ** 2
    if np.any(speed2 <= 0.0):
        raise ValueError("zero velocity")
    return (dv * fu * ch - du * fv / ch) / (w * np.sqrt(speed2))


def clairaut(u, theta, r):
    """First integral ``sinh(2u/r) cos(theta) / 2`` of the elliptic family.

    theta is the angle between the curve and the v-coordinate curves;
    at unit speed ``cos(theta) = dv * cosh(u/r)``.
    """
    return 0.5 * np.sinh(2.0 * np.asarray(u, dtype=float) / r) * np.cos(theta)


def clairaut_of_state(u, dv, r):
    """Clairaut value from a unit-speed chart state (cos angle = dv*cosh(u/r))."""
    u = np.asarray(u, dtype=float)
    return 0.5 * np.sinh(2.0 * u / r) * np.asarray(dv, dtype=float) * np.cosh(u / r)


# ---------------------------------------------------------------------------
# Killing-field characterization
# ---------------------------------------------------------------------------


def killing_field(ctype, r):
    """Constant ambient field whose flow lines measure the weight distance.

    elliptic e_z, hyperbolic -e_x, parabolic -(e_x + e_y)/(r sqrt(2)).
    The fields are position independent.
    """
    if ctype is CatenaryType.ELLIPTIC:
        return np.array([0.0, 0.0, 1.0])
    if ctype is CatenaryType.HYPERBOLIC:
        return np.array([-1.0, 0.0, 0.0])
    if ctype is CatenaryType.PARABOLIC:
        c = 1.0 / (r * math.sqrt(2.0))
        return np.array([-c, -c, 0.0])
    raise ValueError("unknown catenary type: %r" % (ctype,))


def tangent_part(X, p, r):
    """Project an ambient vector onto the tangent plane of the hyperboloid at p."""
    X = np.asarray(X, dtype=float)
    p = np.asarray(p, dtype=float)
    return X + (inner1(X, p) / (r * r))[..., None] * p


def killing_residual(ctype, jet):
    """Defect of the curvature law written with the type's Killing field.

    Returns ``kappa + <n, X> / <X, gamma>`` on the embedded jet, which
    vanishes identically on extrinsic catenaries. The denominator
    ``<X, gamma>`` equals the plane distance for the elliptic and
    hyperbolic fields and distance/r for the parabolic one (whose field
    carries a 1/r normalization); either scaling of X leaves the zero
    set unchanged.
    """
    pt = jet.point
    if pt.chart is not ChartId.SEMI_GEODESIC:
        raise ValueError("killing_residual expects a geodesic-orthogonal jet")
    p, dp, ddp = charts.embed_jet(jet)
    kap = float(charts.kappa_extrinsic(p, dp, ddp, pt.r))
    nu, nv = charts.chart_normal(jet)
    pu, pv = charts.psi_partials(pt.u, pt.v, pt.r)
    n_emb = nu * pu + nv * pv
    X = killing_field(ctype, pt.r)
    denom = float(inner1(X, p))
    if denom <= 0.0:
        raise DomainError("point on the reference plane: zero distance")
    return kap + float(inner1(n_emb, X)) / denom


# ---------------------------------------------------------------------------
# unit-speed integration of the curvature law
# ---------------------------------------------------------------------------


@dataclass
class Curve:
    """A unit-speed sampled solution curve in the geodesic-orthogonal chart."""

    ctype: CatenaryType | None
    chart: ChartId
    r: float
    lam: float
    s: np.ndarray
    u: np.ndarray
    v: np.ndarray
    du: np.ndarray
    dv: np.ndarray
    ddu: np.ndarray
    ddv: np.ndarray
    embedded: np.ndarray = field(repr=False)
    status: str = "ok"

    def __len__(self):
        return len(self.s)

    def jet_at(self, i):
        pt = ChartPoint(self.chart, float(self.u[i]), float(self.v[i]), self.r)
        return ChartJet2(
            pt, float(self.du[i]), float(self.dv[i]),
            float(self.ddu[i]), float(self.ddv[i]),
        )


def _rhs(ctype, u, v, du, dv, r, lam):
    """Chart accelerations of the forced geodesic equation (scalar fast path)."""
    ch = math.cosh(u / r)
    sh = math.sinh(u / r)
    speed2 = du * du + ch * ch * dv * dv
    if ctype is CatenaryType.ELLIPTIC:
        f = sh
        fu = ch / r
        fv = 0.0
    elif ctype is CatenaryType.HYPERBOLIC:
        ch_v = math.cosh(v / r)
        sh_v = math.sinh(v / r)
        f = ch * ch_v
        fu = sh * ch_v / r
        fv = ch * sh_v / r
    else:
        e = math.exp(-v / r)
        f = e * ch
        fu = e * sh / r
        fv = -e * ch / r
    w = f + lam
    if w <= 0.0:
        raise DomainError("curve crossed the reference plane (weight <= 0)")
    speed = math.sqrt(speed2)
    kappa = (dv * fu * ch - du * fv / ch) / (w * speed)
    # The signed-curvature convention of kappa_semigeo/kappa_extrinsic
    # measures bending along the *negated* chart_normal, so the forcing
    # that realizes kappa is -kappa*|v|^2 times chart_normal.
    force = kappa * speed2 / speed
    ddu = (sh * ch / r) * dv * dv + force * dv * ch
    ddv = -(2.0 * sh / (r * ch)) * du * dv - force * du / ch
    return ddu, ddv, w


def integrate(ctype, ic, r, lam=0.0, s_max=4.0, step=None):
    """Integrate the catenary curvature law at unit speed.

    Parameters
    ----------
    ctype : CatenaryType
    ic : (u0, v0, theta0)
        Launch point and heading. theta0 is the metric angle from the
        u-coordinate direction: du0 = cos(theta0),
        dv0 = sin(theta0)/cosh(u0/r).
    r : curvature radius.
    lam : additive weight offset (length-constraint multiplier).
    s_max : arc length to integrate.
    step : fixed step of the classical 4th-order Runge-Kutta scheme;
        defaults to 1e-3 * r. Velocity is renormalized to unit chart
        norm after every step.

    Returns a :class:`Curve`. Integration stops early with status
    "hit-reference-plane" when the weight falls below the positivity
    floor, or "chart-limit" when the coordinates leave the safe range.
    """
    if step is None:
        step = 1e-3 * r
    if step <= 0.0:
        raise ValueError("step must be positive")
    if s_max <= 0.0:
        raise ValueError("s_max must be positive")
    u0, v0, theta0 = ic
    charts.check_range(u0, v0, r)
    floor = WEIGHT_FLOOR * r
    w0 = weight(ctype, u0, v0, r, lam)  # raises on the wrong side
    if w0 < floor:
        raise DomainError("launch weight below the positivity floor")

    n = int(round(s_max / step))
    u = np.empty(n + 1)
    v = np.empty(n + 1)
    du = np.empty(n + 1)
    dv = np.empty(n + 1)
    ddu = np.empty(n + 1)
    ddv = np.empty(n + 1)

    ch0 = math.cosh(u0 / r)
    state = (float(u0), float(v0), math.cos(theta0), math.sin(theta0) / ch0)
    accel = _rhs(ctype, *state, r, lam)[:2]
    status = "ok"
    bound = charts.CHART_RANGE * r
    h = float(step)
    filled = 0
    for k in range(n + 1):
        # the current state is valid: record it
        u[k], v[k], du[k], dv[k] = state
        ddu[k], ddv[k] = accel
        filled = k + 1
        if k == n:
            break

        # classical RK4 on (u, v, du, dv); a stage crossing the
        # reference plane aborts the step
        uk, vk, pk, qk = state
        try:
            k1 = (pk, qk, *accel)
            u2, v2 = uk + 0.5 * h * k1[0], vk + 0.5 * h * k1[1]
            p2, q2 = pk + 0.5 * h * k1[2], qk + 0.5 * h * k1[3]
            a2u, a2v, _ = _rhs(ctype, u2, v2, p2, q2, r, lam)
            k2 = (p2, q2, a2u, a2v)
            u3, v3 = uk + 0.5 * h * k2[0], vk + 0.5 * h * k2[1]
            p3, q3 = pk + 0.5 * h * k2[2], qk + 0.5 * h * k2[3]
            a3u, a3v, _ = _rhs(ctype, u3, v3, p3, q3, r, lam)
            k3 = (p3, q3, a3u, a3v)
            u4, v4 = uk + h * k3[0], vk + h * k3[1]
            p4, q4 = pk + h * k3[2], qk + h * k3[3]
            a4u, a4v, _ = _rhs(ctype, u4, v4, p4, q4, r, lam)
            k4 = (p4, q4, a4u, a4v)
        except DomainError:
            status = "hit-reference-plane"
            break

        un = uk + (h / 6.0) * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0])
        vn = vk + (h / 6.0) * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1])
        pn = pk + (h / 6.0) * (k1[2] + 2.0 * k2[2] + 2.0 * k3[2] + k4[2])
        qn = qk + (h / 6.0) * (k1[3] + 2.0 * k2[3] + 2.0 * k3[3] + k4[3])
        if abs(un) > bound or abs(vn) > bound:
            status = "chart-limit"
            break
        # project the velocity back onto the unit-speed constraint
        chn = math.cosh(un / r)
        nrm = math.sqrt(pn * pn + chn * chn * qn * qn)
        state = (un, vn, pn / nrm, qn / nrm)
        try:
            au, av, w = _rhs(ctype, *state, r, lam)
        except DomainError:
            status = "hit-reference-plane"
            break
        if w < floor:
            status = "hit-reference-plane"
            break
        accel = (au, av)

    sl = slice(0, filled)
    emb = charts.psi(u[sl], v[sl], r)
    return Curve(
        ctype=ctype,
        chart=ChartId.SEMI_GEODESIC,
        r=r,
        lam=lam,
        s=np.arange(filled) * h,
        u=u[sl].copy(),
        v=v[sl].copy(),
        du=du[sl].copy(),
        dv=dv[sl].copy(),
        ddu=ddu[sl].copy(),
        ddv=ddv[sl].copy(),
        embedded=emb,
        status=status,
    )


def ambient_jets(curve):
    """Embedded positions, velocities and accelerations at every sample."""
    pu, pv = charts.psi_partials(curve.u, curve.v, curve.r)
    puu, puv, pvv = charts.psi_second_partials(curve.u, curve.v, curve.r)
    du = curve.du[:, None]
    dv = curve.dv[:, None]
    dp = pu * du + pv * dv
    ddp = (
        puu * du * du
        + 2.0 * puv * du * dv
        + pvv * dv * dv
        + pu * curve.ddu[:, None]
        + pv * curve.ddv[:, None]
    )
    return curve.embedded, dp, ddp


def embedded_interpolant(curve):
    """C1 interpolant of the embedded curve (positions + exact velocities)."""
    p, dp, _ = ambient_jets(curve)
    return CubicHermiteSpline(curve.s, p, dp, axis=0)


def kappa_residuals(curve):
    """Realized minus prescribed curvature at every sample (target law)."""
    realized = np.array(
        [charts.kappa_semigeo(curve.jet_at(i)) for i in range(len(curve))]
    )
    target = catenary_kappa(
        curve.ctype, curve.u, curve.v, curve.du, curve.dv, curve.r, curve.lam
    )
    return realized - target


def killing_residuals(curve):
    """Killing-law defect at every sample of an integrated curve."""
    return np.array(
        [killing_residual(curve.ctype, curve.jet_at(i)) for i in range(len(curve))]
    )


# ---------------------------------------------------------------------------
# first-variation diagnostics
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Bump:
    """Smooth compactly supported chart perturbation, zero at the curve ends.

    The profile is the classic mollifier exp(1 - 1/(1 - x^2)) on
    |x| < 1 with x = (s - center)/width; amp_u and amp_v scale its u and
    v components.
    """

    center: float
    width: float
    amp_u: float
    amp_v: float

    def profile(self, s):
        x = (np.asarray(s, dtype=float) - self.center) / self.width
        out = np.zeros_like(x)
        inside = np.abs(x) < 1.0
        xi = x[inside]
        out[inside] = np.exp(1.0 - 1.0 / (1.0 - xi * xi))
        return out

    def profile_derivative(self, s):
        x = (np.asarray(s, dtype=float) - self.center) / self.width
        out = np.zeros_like(x)
        inside = np.abs(x) < 1.0
        xi = x[inside]
        g = 1.0 - xi * xi
        out[inside] = np.exp(1.0 - 1.0 / g) * (-2.0 * xi / (g * g)) / self.width
        return out


def functional_value(curve, eps, bump):
    """Weighted length of the curve perturbed by eps * bump (Simpson rule)."""
    s = curve.s
    b = bump.profile(s)
    db = bump.profile_derivative(s)
    uu = curve.u + eps * bump.amp_u * b
    vv = curve.v + eps * bump.amp_v * b
    duu = curve.du + eps * bump.amp_u * db
    dvv = curve.dv + eps * bump.amp_v * db
    f, _, _ = weight_partials(curve.ctype, uu, vv, curve.r)
    w = f + curve.lam
    if np.any(w <= 0.0):
        raise DomainError("perturbed curve violates weight positivity")
    ch = np.cosh(uu / curve.r)
    speed = np.sqrt(duu * duu + ch * ch * dvv * dvv)
    return float(simpson(w * speed, x=s))


def el_first_variation(curve, bump, eps):
    """Energy change W[curve + eps*bump] - W[curve].

    Second-order small in eps on catenaries, first-order on non-critical
    curves. The bump support must lie strictly inside the arc range.
    """
    if eps == 0.0:
        return 0.0
    s0, s1 = float(curve.s[0]), float(curve.s[-1])
    if bump.center - bump.width <= s0 or bump.center + bump.width >= s1:
        raise ValueError("bump support must be interior to the curve")
    return functional_value(curve, eps, bump) - functional_value(curve, 0.0, bump)


# ---------------------------------------------------------------------------
# horocatenaries
# ---------------------------------------------------------------------------


def horocatenary_kappa(u, v, du, dv, r):
    """Curvature law for chains weighted by the horocycle distance.

    In the horocycle-geodesic chart with weight f = u*exp(-v/r) the
    gradient law -<n, grad f>/f evaluates to::

        kappa = (dv + (u*du/r) exp(-2v/r)) / (u exp(-v/r) |gamma'|)

    with |gamma'|^2 = exp(-2v/r) du^2 + dv^2. Requires u > 0.
    """
    u = np.asarray(u, dtype=float)
    if np.any(u <= 0.0):
        raise DomainError("horocycle distance weight requires u > 0")
    v = np.asarray(v, dtype=float)
    e2 = np.exp(-2.0 * v / r)
    speed2 = e2 * np.asarray(du, dtype=float) ** 2 + np.asarray(dv, dtype=float) ** 2
    if np.any(speed2 <= 0.0):
        raise ValueError("zero velocity")
    return (dv + u * du * e2 / r) / (u * np.exp(-v / r) * np.sqrt(speed2))
