"""Minkowski linear algebra: products, planes, distances."""

import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from hypcat import lorentz
from hypcat.lorentz import (
    PlaneType, cross3, cross4, dist_to_plane, embed_h2_in_h3, inner1,
    on_hyperboloid,
)
from hypcat import charts
from hypcat.errors import DomainError

coord = st.floats(-5.0, 5.0, allow_nan=False)
vec3 = st.tuples(coord, coord, coord)
vec4 = st.tuples(coord, coord, coord, coord)


def test_inner_basis_values():
    assert inner1([1, 0, 0], [1, 0, 0]) == -1.0
    assert inner1([0, 1, 0], [0, 0, 1]) == 0.0
    assert inner1([2, 1, 0], [2, 1, 0]) == -3.0


def test_inner_dimension_mismatch():
    with pytest.raises(ValueError):
        inner1([1, 0, 0], [1, 0, 0, 0])


@given(vec3, vec3, vec3, st.floats(-3, 3), st.floats(-3, 3))
def test_inner_bilinear_symmetric(a, b, c, s, t):
    a, b, c = np.array(a), np.array(b), np.array(c)
    lhs = inner1(s * a + t * b, c)
    rhs = s * inner1(a, c) + t * inner1(b, c)
    assert abs(lhs - rhs) <= 1e-14 * max(1.0, abs(lhs), abs(rhs))
    assert inner1(a, b) == inner1(b, a)


def test_cross3_basis():
    assert np.allclose(cross3([1, 0, 0], [0, 1, 0]), [0, 0, 1])


@given(vec3, vec3)
def test_cross3_antisymmetric_orthogonal(a, b):
    c = cross3(a, b)
    assert np.allclose(c, -cross3(b, a), atol=1e-12)
    scale = max(1.0, np.abs(c).max() * np.abs(a).max())
    assert abs(inner1(c, a)) <= 1e-12 * scale
    assert abs(inner1(c, b)) <= 1e-12 * scale


def test_cross3_self_is_zero():
    assert np.allclose(cross3([1, 2, 3], [1, 2, 3]), 0.0)


def test_cross4_orientation():
    # e_x x1 e_y x1 e_z = e_w pins the determinant convention
    ex, ey, ez = np.eye(4)[0], np.eye(4)[1], np.eye(4)[2]
    out = cross4(ex, ey, ez * 2.0, 2.0)
    assert np.allclose(out, [0, 0, 0, 1])


def test_cross4_vertex_example():
    out = cross4([0, 1, 0, 0], [0, 0, 1, 0], [2.0, 0, 0, 0], 2.0)
    assert np.allclose(np.abs(out), [0, 0, 0, 1])


@given(vec4, vec4, vec4)
def test_cross4_orthogonal_and_alternating(x, y, p):
    out = cross4(x, y, p, 1.0)
    scale = max(1.0, np.abs(out).max() * 5.0)
    for w in (x, y, p):
        assert abs(inner1(out, w)) <= 1e-10 * scale
    assert np.allclose(cross4(x, x, p, 1.0), 0.0, atol=1e-12)


def test_on_hyperboloid():
    r = 1.5
    assert on_hyperboloid([r, 0, 0], r, 1e-12)
    assert not on_hyperboloid([-r, 0, 0], r, 1e-12)
    p = [r * math.cosh(1), r * math.sinh(1), 0.0]
    assert on_hyperboloid(p, r, 1e-12)


def test_plane_gram_signatures():
    for plane, expect in (
        (PlaneType.SPAN_XY, (-1.0, 1.0)),
        (PlaneType.SPAN_YZ, (1.0, 1.0)),
        (PlaneType.SPAN_LIGHT, (0.0, 1.0)),
    ):
        g1, g2 = plane.generators
        gram = np.array(
            [[inner1(g1, g1), inner1(g1, g2)], [inner1(g2, g1), inner1(g2, g2)]]
        )
        eig = np.sort(np.linalg.eigvalsh(gram))
        assert np.allclose(eig, sorted(expect), atol=1e-14)


@pytest.mark.parametrize(
    "plane,u,v,expect",
    [
        (PlaneType.SPAN_XY, math.asinh(1.0), 0.0, 1.0),
        (PlaneType.SPAN_YZ, 0.0, 0.0, 1.0),
        (PlaneType.SPAN_LIGHT, 0.0, 0.0, 1.0 / math.sqrt(2.0)),
    ],
)
def test_dist_to_plane_examples(plane, u, v, expect):
    for r in (1.0, 2.0):
        p = embed_h2_in_h3(charts.psi(r * u, r * v, r))
        assert dist_to_plane(p, plane, r) == pytest.approx(r * expect, abs=1e-13)


def test_dist_to_plane_closed_forms_on_chart_grid():
    r = 1.3
    us = np.linspace(0.1, 3.0, 9)
    vs = np.linspace(-3.0, 3.0, 9)
    for u in us:
        for v in vs:
            p = embed_h2_in_h3(charts.psi(u, v, r))
            assert dist_to_plane(p, PlaneType.SPAN_XY, r) == pytest.approx(
                r * math.sinh(u / r), abs=1e-12 * math.cosh(u / r) ** 2
            )
            assert dist_to_plane(p, PlaneType.SPAN_YZ, r) == pytest.approx(
                r * math.cosh(u / r) * math.cosh(v / r), rel=1e-12
            )
            assert dist_to_plane(p, PlaneType.SPAN_LIGHT, r) == pytest.approx(
                r / math.sqrt(2.0) * math.exp(-v / r) * math.cosh(u / r),
                rel=1e-12,
            )


def test_embed_preserves_inner(rng):
    a = rng.normal(size=(20, 3))
    b = rng.normal(size=(20, 3))
    assert np.allclose(inner1(embed_h2_in_h3(a), embed_h2_in_h3(b)), inner1(a, b))


def test_embedded_chart_point_on_h3():
    p4 = embed_h2_in_h3(charts.psi(1.0, 2.0, 1.0))
    assert on_hyperboloid(p4, 1.0, 1e-10)


def test_spacelike_norm_rejects_timelike():
    with pytest.raises(DomainError):
        lorentz.spacelike_norm([1.0, 0.0, 0.0])
