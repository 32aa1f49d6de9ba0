"""Surfaces of revolution in hyperbolic 3-space and their mean curvature.

A generating curve in the hyperbolic plane (embedded with w = 0) is
swept by the one-parameter isometry group fixing a reference 2-plane
pointwise. The three causal characters of the plane give the elliptic,
hyperbolic and parabolic rotation families; their orbits are circles,
hypercycles and horocycles.

Mean curvature comes in two routes that audit each other: closed forms
in the generating jet (:func:`mean_curvature_closed`) and a fully
finite-difference evaluation of the fundamental forms
(:func:`mean_curvature_numeric`).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import catenary as _catenary
from .catenary import CatenaryType
from .errors import DomainError
from .lorentz import cross4, embed_h2_in_h3, inner1

#: default finite-difference steps (times r): first and second derivatives
FD_STEP_FIRST = 1e-4
FD_STEP_SECOND = 1e-3

#: generating curves closer than this (times r) to the axis plane are rejected
AXIS_TOL = 1e-9


def rotation_matrix(ctype, theta):
    """4x4 orthogonal transformation of the rotation family at parameter theta."""
    t = float(theta)
    if ctype is CatenaryType.ELLIPTIC:
        c, s = np.cos(t), np.sin(t)
        return np.array(
            [
                [1.0, 0.0, 0.0, 0.0],
                [0.0, 1.0, 0.0, 0.0],
                [0.0, 0.0, c, -s],
                [0.0, 0.0, s, c],
            ]
        )
    if ctype is CatenaryType.HYPERBOLIC:
        c, s = np.cosh(t), np.sinh(t)
        return np.array(
            [
                [c, 0.0, 0.0, s],
                [0.0, 1.0, 0.0, 0.0],
                [0.0, 0.0, 1.0, 0.0],
                [s, 0.0, 0.0, c],
            ]
        )
    if ctype is CatenaryType.PARABOLIC:
        q = 0.5 * t * t
        return np.array(
            [
                [1.0 + q, -q, 0.0, -t],
                [q, 1.0 - q, 0.0, -t],
                [0.0, 0.0, 1.0, 0.0],
                [-t, t, 0.0, 1.0],
            ]
        )
    raise ValueError("unknown rotation type: %r" % (ctype,))


def rotate(ctype, p4, theta):
    """Apply the family's rotation to 4-vectors (batched over leading axes)."""
    p4 = np.asarray(p4, dtype=float)
    if p4.shape[-1] != 4:
        raise ValueError("rotate expects 4-vectors")
    return p4 @ rotation_matrix(ctype, theta).T


@dataclass(frozen=True)
class GeneratingJet:
    """Ambient 2-jet (p, dp, ddp) of a generating curve on the hyperbolic plane."""

    p: np.ndarray
    dp: np.ndarray
    ddp: np.ndarray
    r: float


def _axis_gap(ctype, x, y, z, r):
    if ctype is CatenaryType.ELLIPTIC:
        return z
    if ctype is CatenaryType.HYPERBOLIC:
        return x
    return x - y


def _closed_form_pieces(ctype, jet):
    p = np.asarray(jet.p, dtype=float)
    dp = np.asarray(jet.dp, dtype=float)
    ddp = np.asarray(jet.ddp, dtype=float)
    x, y, z = p[..., 0], p[..., 1], p[..., 2]
    dx, dy, dz = dp[..., 0], dp[..., 1], dp[..., 2]
    gap = _axis_gap(ctype, x, y, z, jet.r)
    if np.any(np.abs(gap) <= AXIS_TOL * jet.r):
        raise DomainError("generating curve touches the axis plane")
    n2 = inner1(dp, dp)
    if np.any(n2 <= 0.0):
        raise DomainError("generating velocity is not spacelike")
    ddx, ddy, ddz = ddp[..., 0], ddp[..., 1], ddp[..., 2]
    T = (
        x * (ddy * dz - dy * ddz)
        - y * (ddx * dz - dx * ddz)
        + z * (ddx * dy - dx * ddy)
    )
    if ctype is CatenaryType.ELLIPTIC:
        m = x * dy - dx * y
    elif ctype is CatenaryType.HYPERBOLIC:
        m = -(y * dz - dy * z)
    else:
        m = (x - y) * dz - (dx - dy) * z
    return gap, n2, T, m


def mean_curvature_closed(ctype, jet):
    """Mean curvature of the swept surface, from the generating 2-jet.

    With T the triple bracket of (p, dp, ddp) components::

        elliptic    H = (z T + (x y' - x' y) |g'|^2) / (2 r z |g'|^3)
        hyperbolic  H = (x T - (y z' - y' z) |g'|^2) / (2 r x |g'|^3)
        parabolic   H = -((x-y) T + ((x-y) z' - (x'-y') z) |g'|^2)
                        / (2 r (x-y) |g'|^3)

    Constant along each orbit, so it is a function of the curve
    parameter only.
    """
    gap, n2, T, m = _closed_form_pieces(ctype, jet)
    if ctype is CatenaryType.PARABOLIC:
        return -(gap * T + m * n2) / (2.0 * jet.r * gap * n2 ** 1.5)
    return (gap * T + m * n2) / (2.0 * jet.r * gap * n2 ** 1.5)


def minimal_kappa_target(ctype, jet):
    """Curvature the generating curve must have for the swept surface
    to be minimal (the zero set of the closed-form mean curvature).

    elliptic ``(x y' - x' y)/(r z |g'|)``, hyperbolic
    ``-(y z' - y' z)/(r x |g'|)``, parabolic
    ``+((x-y) z' - (x'-y') z)/(r (x-y) |g'|)``. Note the parabolic
    normalization: setting the parabolic mean curvature to zero forces
    the factor 1/r and the plus sign (the curvature sign convention of
    :func:`hypcat.charts.kappa_extrinsic` relates the two routes by
    H = (target - kappa)/2 for the first two families and
    H = (kappa - target)/2 for the parabolic one).
    """
    gap, n2, T, m = _closed_form_pieces(ctype, jet)
    return m / (jet.r * gap * np.sqrt(n2))


@dataclass(frozen=True)
class SurfaceSample:
    """Pointwise fundamental-form data of a swept surface."""

    S: np.ndarray
    S_t: np.ndarray
    S_theta: np.ndarray
    g11: float
    g12: float
    g22: float
    h11: float
    h12: float
    h22: float
    H: float


def surface_sample(ctype, curve, t, theta, h_fd=None, h_fd2=None):
    """Fundamental forms of the swept surface by centered finite differences.

    Parameters
    ----------
    curve : callable
        t -> ambient 3-vector on the hyperbolic plane (positive side of
        the axis plane).
    t, theta : surface parameters at which to evaluate.
    h_fd, h_fd2 : steps for first and second derivatives; default
        1e-4*r and 1e-3*r with r read off the curve point.

    Builds the swept surface pointwise and assembles both fundamental
    forms with the ternary-product unit normal (asserted spacelike);
    the mean curvature is ``(g22 h11 - 2 g12 h12 + g11 h22)/(2 det g)``.
    """
    p0 = np.asarray(curve(t), dtype=float)
    r = float(np.sqrt(-inner1(p0, p0)))
    if h_fd is None:
        h_fd = FD_STEP_FIRST * r
    if h_fd2 is None:
        h_fd2 = FD_STEP_SECOND * r

    def S(tt, th):
        return rotate(ctype, embed_h2_in_h3(np.asarray(curve(tt), dtype=float)), th)

    s0 = S(t, theta)
    st = (S(t + h_fd, theta) - S(t - h_fd, theta)) / (2.0 * h_fd)
    sh = (S(t, theta + h_fd) - S(t, theta - h_fd)) / (2.0 * h_fd)
    stt = (S(t + h_fd2, theta) - 2.0 * s0 + S(t - h_fd2, theta)) / h_fd2 ** 2
    shh = (S(t, theta + h_fd2) - 2.0 * s0 + S(t, theta - h_fd2)) / h_fd2 ** 2
    sth = (
        S(t + h_fd2, theta + h_fd2)
        - S(t + h_fd2, theta - h_fd2)
        - S(t - h_fd2, theta + h_fd2)
        + S(t - h_fd2, theta - h_fd2)
    ) / (4.0 * h_fd2 ** 2)

    g11 = float(inner1(st, st))
    g12 = float(inner1(st, sh))
    g22 = float(inner1(sh, sh))
    det = g11 * g22 - g12 * g12
    if det <= 0.0:
        raise DomainError("degenerate first fundamental form")
    xi = cross4(st, sh, s0, r)
    xi2 = float(inner1(xi, xi))
    if xi2 <= 0.0:
        raise DomainError("surface normal is not spacelike")
    xi = xi / np.sqrt(xi2)
    h11 = float(inner1(stt, xi))
    h12 = float(inner1(sth, xi))
    h22 = float(inner1(shh, xi))
    H = (g22 * h11 - 2.0 * g12 * h12 + g11 * h22) / (2.0 * det)
    return SurfaceSample(S=s0, S_t=st, S_theta=sh, g11=g11, g12=g12, g22=g22,
                         h11=h11, h12=h12, h22=h22, H=H)


def mean_curvature_numeric(ctype, curve, t, theta, h_fd=None, h_fd2=None):
    """Mean curvature by centered finite differences of the swept surface."""
    return surface_sample(ctype, curve, t, theta, h_fd, h_fd2).H


@dataclass
class Mesh:
    """Sampled surface of revolution with per-vertex mean curvature."""

    rows: int
    cols: int
    vertices: np.ndarray  # (rows, cols, 4)
    H: np.ndarray  # (rows, cols)


def build_mesh(ctype, curve, theta_min, theta_max, n_theta):
    """Sweep a solved generating curve over a uniform rotation grid.

    Vertices are rotate(embed(curve)) on the (sample, theta) grid; each
    vertex carries the closed-form mean curvature of its generating
    sample. Raises DomainError when the curve touches the axis plane.
    """
    if n_theta < 2:
        raise ValueError("n_theta must be at least 2")
    if len(curve) == 0:
        raise ValueError("empty generating curve")
    p, dp, ddp = _catenary.ambient_jets(curve)
    jets = GeneratingJet(p, dp, ddp, curve.r)
    h_row = mean_curvature_closed(ctype, jets)  # raises on axis touch
    p4 = embed_h2_in_h3(p)
    thetas = np.linspace(theta_min, theta_max, n_theta)
    rows, cols = len(curve), n_theta
    vertices = np.empty((rows, cols, 4))
    for j, th in enumerate(thetas):
        vertices[:, j, :] = rotate(ctype, p4, th)
    return Mesh(rows=rows, cols=cols, vertices=vertices,
                H=np.repeat(h_row[:, None], cols, axis=1))
