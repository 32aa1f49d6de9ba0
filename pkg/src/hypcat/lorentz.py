"""Lorentzian linear algebra for the hyperboloid model.

Index 0 is the timelike direction: ``<x, y> = -x0*y0 + x1*y1 + ...``
All functions accept sequences or numpy arrays and broadcast over
leading axes, so a single point and a whole sampled curve go through
the same code path.

The hyperbolic plane of curvature radius ``r`` is the set
``<X, X> = -r**2, X0 > 0`` in the 3-dimensional Lorentz space, and
embeds into the 4-dimensional one by appending a zero coordinate.
"""

from __future__ import annotations

from enum import Enum

import numpy as np

from .errors import DomainError

#: default tolerance for algebraic identities (orthogonality, norms)
IDENTITY_TOL = 1e-10
#: default tolerance for finite-difference comparisons
FD_TOL = 1e-6


def inner1(a, b):
    """Minkowski inner product ``-a0*b0 + sum(ai*bi)``.

    Both arguments must have the same last-axis dimension; leading axes
    broadcast. Raises ValueError on a 3-vector / 4-vector mix.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape[-1] != b.shape[-1]:
        raise ValueError(
            "dimension mismatch: %d vs %d" % (a.shape[-1], b.shape[-1])
        )
    prod = a * b
    return prod[..., 1:].sum(axis=-1) - prod[..., 0]


def spacelike_norm(v):
    """Norm ``sqrt(<v, v>)`` of a spacelike vector.

    Raises DomainError when ``<v, v> <= 0`` (lightlike or timelike input).
    """
    n2 = inner1(v, v)
    if np.any(n2 <= 0.0):
        raise DomainError("vector is not spacelike: <v,v> = %s" % np.min(n2))
    return np.sqrt(n2)


def cross3(a, b):
    """Lorentzian cross product in the 3-dimensional Lorentz space.

    Component convention, with a = (x, y, z) and b = (x', y', z')::

        a x1 b = (y'z - yz', x'z - xz', xy' - x'y)

    The result is <.,.>-orthogonal to both arguments, and the convention
    makes ``<a x1 b, c>`` the determinant of the rows (a, b, c).
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    return np.stack(
        [
            b[..., 1] * a[..., 2] - a[..., 1] * b[..., 2],
            b[..., 0] * a[..., 2] - a[..., 0] * b[..., 2],
            a[..., 0] * b[..., 1] - b[..., 0] * a[..., 1],
        ],
        axis=-1,
    )


def cross4(x, y, p, r):
    """Binary cross product on hyperbolic 3-space via the ternary product.

    Returns ``x x1 y x1 (p/r)``: the formal determinant with rows
    (x, y, p/r) and the basis row signed so that
    ``e_x x1 e_y x1 e_z = e_w``. The result is orthogonal to x, y and p.
    """
    if r <= 0:
        raise ValueError("r must be positive")
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    p = np.asarray(p, dtype=float) / r
    rows = np.stack(np.broadcast_arrays(x, y, p), axis=-2)  # (..., 3, 4)

    def minor(j):
        cols = [c for c in range(4) if c != j]
        return np.linalg.det(rows[..., cols])

    return np.stack([minor(0), minor(1), -minor(2), minor(3)], axis=-1)


def on_hyperboloid(p, r, tol=IDENTITY_TOL):
    """True when ``<p, p> = -r**2`` within tol and the time component is positive."""
    if r <= 0:
        raise ValueError("r must be positive")
    if tol <= 0:
        raise ValueError("tol must be positive")
    p = np.asarray(p, dtype=float)
    ok = np.abs(inner1(p, p) + r * r) <= tol
    return np.logical_and(ok, p[..., 0] > 0.0)


class PlaneType(Enum):
    """Reference 2-planes for the three rotation families.

    SPAN_XY is Lorentzian, SPAN_YZ is Riemannian, SPAN_LIGHT (spanned by
    the null direction (e_x + e_y)/sqrt(2) and e_z) is degenerate.
    """

    SPAN_XY = "xy"
    SPAN_YZ = "yz"
    SPAN_LIGHT = "light"

    @property
    def generators(self):
        s = 1.0 / np.sqrt(2.0)
        return {
            PlaneType.SPAN_XY: (
                np.array([1.0, 0.0, 0.0, 0.0]),
                np.array([0.0, 1.0, 0.0, 0.0]),
            ),
            PlaneType.SPAN_YZ: (
                np.array([0.0, 1.0, 0.0, 0.0]),
                np.array([0.0, 0.0, 1.0, 0.0]),
            ),
            PlaneType.SPAN_LIGHT: (
                np.array([s, s, 0.0, 0.0]),
                np.array([0.0, 0.0, 1.0, 0.0]),
            ),
        }[self]


def dist_to_plane(p, plane, r):
    """Ambient distance from a point of hyperbolic 3-space to a reference plane.

    Closed forms in ambient coordinates (x, y, z, w), all invariant
    under the rotation family that fixes the plane::

        SPAN_XY    -> sqrt(z**2 + w**2)
        SPAN_YZ    -> sqrt(x**2 - w**2)
        SPAN_LIGHT -> |x - y| / sqrt(2)

    On embedded chart points (w = 0) these evaluate to r*sinh(u/r),
    r*cosh(u/r)*cosh(v/r) and (r/sqrt(2))*exp(-v/r)*cosh(u/r).
    """
    if r <= 0:
        raise ValueError("r must be positive")
    p = np.asarray(p, dtype=float)
    if p.shape[-1] != 4:
        raise ValueError("dist_to_plane expects 4-vectors")
    x, y, z, w = p[..., 0], p[..., 1], p[..., 2], p[..., 3]
    if plane is PlaneType.SPAN_XY:
        return np.sqrt(z * z + w * w)
    if plane is PlaneType.SPAN_YZ:
        return np.sqrt(x * x - w * w)
    if plane is PlaneType.SPAN_LIGHT:
        return np.abs(x - y) / np.sqrt(2.0)
    raise ValueError("unknown plane type: %r" % (plane,))


def embed_h2_in_h3(p):
    """Embed the hyperbolic plane into hyperbolic 3-space by appending w = 0."""
    p = np.asarray(p, dtype=float)
    if p.shape[-1] != 3:
        raise ValueError("embed_h2_in_h3 expects 3-vectors")
    pad = np.zeros(p.shape[:-1] + (1,))
    return np.concatenate([p, pad], axis=-1)
