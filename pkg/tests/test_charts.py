"""Chart maps, metrics, Christoffel symbols, curvature formulas."""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hypcat import charts, checks
from hypcat.charts import (
    ChartId, ChartJet2, ChartPoint, chart_gradient, chart_normal,
    christoffel, horocycle_distance, kappa_extrinsic, kappa_horo,
    kappa_semigeo, lightlike_rotation, metric, phi, psi, psi_partials,
)
from hypcat.errors import DomainError
from hypcat.lorentz import inner1, on_hyperboloid

u_st = st.floats(0.1, 3.0)
v_st = st.floats(-3.0, 3.0)
r_st = st.floats(0.8, 2.0)
vel = st.floats(-2.0, 2.0)


class TestChartMaps:
    def test_psi_origin(self):
        assert np.allclose(psi(0.0, 0.0, 1.0), [1.0, 0.0, 0.0])

    def test_psi_axis_is_reference_geodesic(self):
        r = 2.0
        v = 1.7
        expect = r * np.array([math.cosh(v / r), math.sinh(v / r), 0.0])
        assert np.allclose(psi(0.0, v, r), expect)

    def test_phi_axis_is_reference_geodesic(self):
        r = 1.5
        v = -0.8
        assert np.allclose(phi(0.0, v, r), psi(0.0, v, r))

    @given(u_st, v_st, r_st)
    @settings(max_examples=60)
    def test_images_on_hyperboloid(self, u, v, r):
        assert on_hyperboloid(psi(u, v, r), r, 1e-10)
        assert on_hyperboloid(phi(u, v, r), r, 1e-10)

    def test_phi_height_is_horocycle_distance(self):
        u, v, r = 1.1, -0.4, 1.5
        assert phi(u, v, r)[2] == pytest.approx(u * math.exp(-v / r), abs=1e-14)
        assert horocycle_distance(u, v, r) == pytest.approx(
            u * math.exp(-v / r), abs=1e-15
        )

    def test_horocycle_distance_trivia(self):
        assert horocycle_distance(0.0, 1.3, 1.0) == 0.0
        assert horocycle_distance(0.7, 0.0, 2.0) == pytest.approx(0.7)

    def test_chart_range_enforced(self):
        with pytest.raises(DomainError):
            psi(30.0, 0.0, 1.0)
        with pytest.raises(DomainError):
            ChartPoint(ChartId.SEMI_GEODESIC, 0.0, 26.0, 1.0)


class TestPartials:
    def test_psi_partials_at_origin(self):
        pu, pv = psi_partials(0.0, 0.0, 1.0)
        assert np.allclose(pu, [0.0, 0.0, 1.0])
        assert np.allclose(pv, [0.0, 1.0, 0.0])

    @given(u_st, v_st, r_st)
    @settings(max_examples=40)
    def test_partials_match_finite_differences(self, u, v, r):
        h = 1e-5
        for fun, dfun in ((psi, charts.psi_partials), (phi, charts.phi_partials)):
            pu, pv = dfun(u, v, r)
            fd_u = (fun(u + h, v, r) - fun(u - h, v, r)) / (2 * h)
            fd_v = (fun(u, v + h, r) - fun(u, v - h, r)) / (2 * h)
            assert np.abs(fd_u - pu).max() < 1e-7
            assert np.abs(fd_v - pv).max() < 1e-7

    @given(u_st, v_st, r_st)
    @settings(max_examples=40)
    def test_second_partials_match_finite_differences(self, u, v, r):
        h = 1e-4
        for fun, dfun in (
            (psi, charts.psi_second_partials),
            (phi, charts.phi_second_partials),
        ):
            puu, puv, pvv = dfun(u, v, r)
            fd_uu = (fun(u + h, v, r) - 2 * fun(u, v, r) + fun(u - h, v, r)) / h**2
            fd_vv = (fun(u, v + h, r) - 2 * fun(u, v, r) + fun(u, v - h, r)) / h**2
            fd_uv = (
                fun(u + h, v + h, r) - fun(u + h, v - h, r)
                - fun(u - h, v + h, r) + fun(u - h, v - h, r)
            ) / (4 * h * h)
            # second differences divide eps-level cancellation by h^2,
            # so the tolerance has to scale with the value magnitude
            scale = 1.0 + float(np.abs(fun(u, v, r)).max())
            assert np.abs(fd_uu - puu).max() < 1e-5 * scale
            assert np.abs(fd_uv - puv).max() < 1e-5 * scale
            assert np.abs(fd_vv - pvv).max() < 1e-5 * scale

    @given(u_st, v_st, r_st)
    @settings(max_examples=40)
    def test_chart_frames_orthogonal(self, u, v, r):
        pu, pv = psi_partials(u, v, r)
        assert abs(inner1(pu, pv)) < 1e-10 * math.cosh(u / r) ** 2
        pu, pv = charts.phi_partials(u, v, r)
        assert abs(inner1(pu, pv)) < 1e-10


class TestMetricAndChristoffel:
    def test_metric_values(self):
        pt = ChartPoint(ChartId.SEMI_GEODESIC, 0.0, 1.0, 1.0)
        g = metric(ChartId.SEMI_GEODESIC, pt)
        assert (g.E, g.F, g.G) == (1.0, 0.0, 1.0)
        pt = ChartPoint(ChartId.HORO_GEODESIC, 2.0, 0.0, 1.0)
        g = metric(ChartId.HORO_GEODESIC, pt)
        assert (g.E, g.F, g.G) == (1.0, 0.0, 1.0)

    @given(u_st, v_st, r_st)
    @settings(max_examples=50)
    def test_metric_matches_pullback(self, u, v, r):
        pt = ChartPoint(ChartId.SEMI_GEODESIC, u, v, r)
        pu, pv = psi_partials(u, v, r)
        g = metric(ChartId.SEMI_GEODESIC, pt)
        assert inner1(pu, pu) == pytest.approx(g.E, abs=1e-10)
        assert inner1(pu, pv) == pytest.approx(g.F, abs=1e-10)
        assert inner1(pv, pv) == pytest.approx(g.G, abs=1e-10)
        pt = ChartPoint(ChartId.HORO_GEODESIC, u, v, r)
        pu, pv = charts.phi_partials(u, v, r)
        g = metric(ChartId.HORO_GEODESIC, pt)
        assert inner1(pu, pu) == pytest.approx(g.E, abs=1e-10)
        assert inner1(pv, pv) == pytest.approx(g.G, abs=1e-10)

    def test_christoffel_semigeo_axis_vanishes(self):
        pt = ChartPoint(ChartId.SEMI_GEODESIC, 0.0, 0.7, 1.0)
        c = christoffel(ChartId.SEMI_GEODESIC, pt)
        assert all(
            getattr(c, f) == 0.0
            for f in ("G111", "G112", "G122", "G211", "G212", "G222")
        )

    def test_christoffel_horo_constant_mixed_symbol(self):
        for u, v, r in ((0.3, -1.0, 1.0), (2.0, 2.0, 1.0), (1.0, 0.5, 2.0)):
            c = christoffel(ChartId.HORO_GEODESIC, ChartPoint(ChartId.HORO_GEODESIC, u, v, r))
            assert c.G112 == pytest.approx(-1.0 / r, abs=1e-15)

    @given(u_st, v_st, r_st)
    @settings(max_examples=30)
    def test_christoffel_matches_fd_oracle(self, u, v, r):
        for chart in ChartId:
            pt = ChartPoint(chart, u, v, r)
            c = christoffel(chart, pt)
            closed = np.array(
                [
                    [[c.G111, c.G112], [c.G112, c.G122]],
                    [[c.G211, c.G212], [c.G212, c.G222]],
                ]
            )
            fd = checks.christoffel_fd(chart, pt)
            assert np.abs(closed - fd).max() < 1e-6


def _random_jet(rng, chart, r=None):
    r = r if r is not None else float(rng.uniform(0.8, 2.0))
    u = float(rng.uniform(0.1, 2.5))
    v = float(rng.uniform(-2.5, 2.5))
    while True:
        du, dv = rng.uniform(-2, 2, 2)
        if du * du + dv * dv > 1e-2:
            break
    ddu, ddv = rng.uniform(-2, 2, 2)
    return ChartJet2(ChartPoint(chart, u, v, r), du, dv, float(ddu), float(ddv))


class TestCurvature:
    def test_semigeo_u_lines_are_geodesics(self):
        jet = ChartJet2(ChartPoint(ChartId.SEMI_GEODESIC, 0.9, 0.3, 1.2), 1.0, 0.0)
        assert kappa_semigeo(jet) == 0.0

    def test_horo_v_lines_are_geodesics(self):
        jet = ChartJet2(ChartPoint(ChartId.HORO_GEODESIC, 0.9, 0.3, 1.2), 0.0, 1.0)
        assert kappa_horo(jet) == 0.0

    def test_semigeo_circle_value(self):
        r, u0 = 1.3, 0.8
        ch = math.cosh(u0 / r)
        jet = ChartJet2(ChartPoint(ChartId.SEMI_GEODESIC, u0, 0.0, r), 0.0, 1.0 / ch)
        assert kappa_semigeo(jet) == pytest.approx(-math.tanh(u0 / r) / r, abs=1e-8)

    def test_horocycles_have_curvature_one_over_r(self):
        r, v0 = 1.3, 0.7
        jet = ChartJet2(
            ChartPoint(ChartId.HORO_GEODESIC, 0.5, v0, r), math.exp(v0 / r), 0.0
        )
        assert abs(kappa_horo(jet)) == pytest.approx(1.0 / r, abs=1e-8)

    def test_extrinsic_on_reference_geodesic(self):
        r = 1.0
        p = psi(0.0, 0.5, r)
        pu, pv = psi_partials(0.0, 0.5, r)
        ddp = charts.psi_second_partials(0.0, 0.5, r)[2]
        assert kappa_extrinsic(p, pv, ddp, r) == pytest.approx(0.0, abs=1e-14)

    def test_extrinsic_reparametrization_invariance(self, rng):
        jet = _random_jet(rng, ChartId.SEMI_GEODESIC)
        p, dp, ddp = charts.embed_jet(jet)
        k1 = kappa_extrinsic(p, dp, ddp, jet.point.r)
        k2 = kappa_extrinsic(p, 2.0 * dp, 4.0 * ddp, jet.point.r)
        assert k1 == pytest.approx(k2, rel=1e-12)

    def test_extrinsic_rejects_nonspacelike_velocity(self):
        with pytest.raises(DomainError):
            kappa_extrinsic([1.0, 0, 0], [1.0, 0.5, 0], [0, 0, 0], 1.0)

    def test_zero_velocity_rejected(self):
        jet = ChartJet2(ChartPoint(ChartId.SEMI_GEODESIC, 1.0, 0.0, 1.0), 0.0, 0.0)
        with pytest.raises(DomainError):
            kappa_semigeo(jet)

    def test_chart_formulas_match_extrinsic(self, rng):
        for _ in range(200):
            for chart, kfun in (
                (ChartId.SEMI_GEODESIC, kappa_semigeo),
                (ChartId.HORO_GEODESIC, kappa_horo),
            ):
                jet = _random_jet(rng, chart)
                p, dp, ddp = charts.embed_jet(jet)
                k_ext = float(kappa_extrinsic(p, dp, ddp, jet.point.r))
                assert kfun(jet) == pytest.approx(k_ext, abs=1e-6)


class TestLightlikeRotation:
    def test_identity_at_zero(self, rng):
        p = rng.normal(size=3)
        assert np.allclose(lightlike_rotation(0.0, p), p)

    def test_axis_fixed(self):
        assert np.allclose(lightlike_rotation(1.7, [1.0, 1.0, 0.0]), [1.0, 1.0, 0.0])

    @given(st.floats(-3, 3), st.floats(-3, 3))
    @settings(max_examples=40)
    def test_one_parameter_group(self, a, b):
        p = np.array([0.3, -1.2, 0.8])
        combined = lightlike_rotation(a, lightlike_rotation(b, p))
        assert np.allclose(combined, lightlike_rotation(a + b, p), atol=1e-10)

    def test_preserves_inner_product(self, rng):
        for _ in range(40):
            theta = rng.uniform(-3, 3)
            p, q = rng.normal(size=(2, 3))
            lhs = inner1(lightlike_rotation(theta, p), lightlike_rotation(theta, q))
            assert lhs == pytest.approx(float(inner1(p, q)), abs=1e-12 * (1 + abs(theta)) ** 4)

    def test_builds_horo_chart(self):
        u, v, r = 1.4, -0.6, 1.2
        ell = psi(0.0, v, r)
        assert np.allclose(lightlike_rotation(u / r, ell), phi(u, v, r), atol=1e-12)


class TestNormalAndGradient:
    def test_normal_example(self):
        jet = ChartJet2(ChartPoint(ChartId.SEMI_GEODESIC, 0.0, 0.0, 1.0), 1.0, 0.0)
        assert chart_normal(jet) == pytest.approx((0.0, 1.0))

    def test_normal_unit_and_orthogonal(self, rng):
        for _ in range(50):
            for chart in ChartId:
                jet = _random_jet(rng, chart)
                g = metric(chart, jet.point)
                nu, nv = chart_normal(jet)
                assert g.E * nu * nu + g.G * nv * nv == pytest.approx(1.0, abs=1e-12)
                assert g.E * nu * jet.du + g.G * nv * jet.dv == pytest.approx(
                    0.0, abs=1e-12
                )

    def test_gradient_trivia(self):
        pt = ChartPoint(ChartId.SEMI_GEODESIC, 1.3, 0.2, 1.0)
        assert chart_gradient(1.0, 0.0, pt) == pytest.approx((1.0, 0.0))
        pt = ChartPoint(ChartId.SEMI_GEODESIC, 0.0, 0.2, 1.0)
        assert chart_gradient(0.0, 1.0, pt) == pytest.approx((0.0, 1.0))

    def test_gradient_defining_property(self, rng):
        for _ in range(30):
            pt = ChartPoint(
                ChartId.SEMI_GEODESIC,
                float(rng.uniform(0.1, 2.5)),
                float(rng.uniform(-2, 2)),
                float(rng.uniform(0.8, 2.0)),
            )
            fu, fv = rng.normal(size=2)
            xu, xv = rng.normal(size=2)
            g = metric(pt.chart, pt)
            gu, gv = chart_gradient(fu, fv, pt)
            assert g.E * gu * xu + g.G * gv * xv == pytest.approx(
                fu * xu + fv * xv, rel=1e-12, abs=1e-12
            )


class TestChartConversions:
    def test_semigeo_roundtrip(self, rng):
        for _ in range(20):
            u = float(rng.uniform(0.1, 3.0))
            v = float(rng.uniform(-3.0, 3.0))
            r = float(rng.uniform(0.8, 2.0))
            uu, vv = charts.semigeo_from_ambient(psi(u, v, r), r)
            assert (uu, vv) == pytest.approx((u, v), abs=1e-12)

    def test_horo_roundtrip(self, rng):
        for _ in range(20):
            u = float(rng.uniform(-3.0, 3.0))
            v = float(rng.uniform(-3.0, 3.0))
            r = float(rng.uniform(0.8, 2.0))
            uu, vv = charts.horo_from_ambient(phi(u, v, r), r)
            assert (uu, vv) == pytest.approx((u, v), abs=1e-11)

    def test_horo_jet_conversion_preserves_curvature(self, rng):
        # ambient jet of a curve expressed in the horo chart must come
        # back with the same curvature
        for _ in range(20):
            jet = _random_jet(rng, ChartId.HORO_GEODESIC)
            p, dp, ddp = charts.embed_jet(jet)
            back = charts.horo_jet_from_ambient(p, dp, ddp, jet.point.r)
            assert kappa_horo(back) == pytest.approx(kappa_horo(jet), rel=1e-9, abs=1e-10)
