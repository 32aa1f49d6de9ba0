"""Shared fixtures and helpers for the test suite."""

import math

import numpy as np
import pytest

from hypcat import catenary, charts
from hypcat.catenary import CatenaryType, Curve
from hypcat.charts import ChartId


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def make_circle_curve(ctype, u0=1.0, r=1.0, s_max=4.0, step=1e-3):
    """Unit-speed v-coordinate circle stored as a Curve.

    Constant-curvature control: it is not a critical curve of any of the
    three weight functionals, so it serves as the negative control for
    criticality diagnostics.
    """
    n = int(round(s_max / step))
    s = np.arange(n + 1) * step
    ch = math.cosh(u0 / r)
    u = np.full(n + 1, float(u0))
    v = s / ch
    return Curve(
        ctype=ctype,
        chart=ChartId.SEMI_GEODESIC,
        r=r,
        lam=0.0,
        s=s,
        u=u,
        v=v,
        du=np.zeros(n + 1),
        dv=np.full(n + 1, 1.0 / ch),
        ddu=np.zeros(n + 1),
        ddv=np.zeros(n + 1),
        embedded=charts.psi(u, v, r),
        status="ok",
    )


def shoot_elliptic(a, b, length, r, theta0, lam0, h0=1e-3):
    """Match an elliptic catenary to endpoints a -> b with prescribed length.

    Two-parameter shooting on (theta0, lam). The step is adjusted so the
    fixed RK4 grid lands exactly on the prescribed arc length. Returns
    the matched Curve.
    """
    from scipy.optimize import root

    step = length / int(round(length / h0))

    def residual(params):
        th, lam = params
        try:
            cur = catenary.integrate(
                CatenaryType.ELLIPTIC, (a[0], a[1], th), r=r, lam=lam,
                s_max=length, step=step,
            )
        except Exception:
            return [10.0, 10.0]
        if cur.status != "ok":
            return [10.0, 10.0]
        return [cur.u[-1] - b[0], cur.v[-1] - b[1]]

    sol = root(residual, [theta0, lam0], method="hybr", tol=1e-13)
    assert sol.success, f"shooting failed: {sol.message}"
    return catenary.integrate(
        CatenaryType.ELLIPTIC, (a[0], a[1], sol.x[0]), r=r, lam=sol.x[1],
        s_max=length, step=step,
    )


def loglog_slope(eps_values, deltas):
    """Least-squares slope of log|delta| against log(eps)."""
    x = np.log(np.asarray(eps_values, dtype=float))
    y = np.log(np.abs(np.asarray(deltas, dtype=float)))
    A = np.vstack([x, np.ones_like(x)]).T
    coef, *_ = np.linalg.lstsq(A, y, rcond=None)
    return float(coef[0])
