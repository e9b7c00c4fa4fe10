#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "desitter/conical_surface.hpp"
#include "desitter/frenet.hpp"
#include "desitter/golden.hpp"
#include "test_support.hpp"

using namespace desitter;

namespace {
constexpr Real pi = std::numbers::pi_v<Real>;

// kappa_gamma = q / r with r = 3/5
ParamCurve small_circle(Real q = 0.8L) {
    return ParamCurve::from_generic(
               [q](auto t) {
                   using std::cosh;
                   using std::sinh;
                   using T = decltype(t);
                   return BasicVec4<T>{0.6L * sinh(t / 0.6L), T(0.0), 0.6L * cosh(t / 0.6L), T(q)};
               },
               {-1.0, 1.0})
        .as_arc_length(-1.0);
}

ParamCurve pseudo_sphere_geodesic() {
    return ParamCurve::from_generic(
               [](auto t) {
                   using std::cosh;
                   using std::sinh;
                   using T = decltype(t);
                   return BasicVec4<T>{sinh(t), T(0.0), cosh(t), T(0.0)};
               },
               {-1.0, 1.0})
        .as_arc_length(-1.0);
}

ConicalSurface small_cone(Real q = 0.8L) { return ConicalSurface(basis::e2, small_circle(q)); }

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::IoError;
}
} // namespace

TEST(Cone, EvaluateRulings) {
    const ConicalSurface S = small_cone();
    EXPECT_LT(max_abs_diff(evaluate(S, 0.3, pi / 2), S.directrix()(0.3)), 1e-15);
    EXPECT_LT(max_abs_diff(evaluate(S, 0.3, 1e-8), basis::e2), 1e-7);
    EXPECT_EQ(code_of([&] { evaluate(S, 0.3, 0.0); }), ErrorCode::ApexSingularity);
    EXPECT_EQ(code_of([&] { evaluate(S, 0.3, pi); }), ErrorCode::ApexSingularity);
    for (int i = 0; i < 100; ++i) {
        const Vec4 x = evaluate(S, support::uniform(-1, 1), support::uniform(0.01L, pi - 0.01L));
        EXPECT_NEAR(lorentz_dot(x, x), 1.0, 1e-15);
    }
}

TEST(Cone, EvaluateMatchesExponentialMap) {
    const ConicalSurface S = small_cone();
    for (Real u : {-0.4L, 0.2L})
        for (Real v : {0.3L, 1.2L, 2.5L}) {
            const Vec4 g = S.directrix()(u);
            const Vec4 direct = std::cos(v) * basis::e2 + std::sin(v) * g;
            EXPECT_LT(max_abs_diff(evaluate(S, u, v), direct), 1e-15);
        }
}

TEST(Cone, CuspedConeAtOrigin) {
    const ConicalSurface S(basis::e2, golden::cusped_directrix_unit_speed_curve());
    const Real r2 = std::sqrt(2.0L);
    const Vec4 expected{15.0L / (8.0L * r2), 1.0L / r2, 17.0L / (8.0L * r2), 0.0};
    EXPECT_LT(max_abs_diff(evaluate(S, 0.0, pi / 4), expected), 1e-15);
}

TEST(Cone, RejectsForeignDirectrix) {
    EXPECT_EQ(code_of([] { ConicalSurface(basis::e4, small_circle()); }), ErrorCode::NotOnPseudoSphere);
}

TEST(FundamentalForm, Values) {
    const ConicalSurface S = small_cone();
    const FundamentalForm a = fundamental_form_and_normal(S, 0.2, pi / 2);
    EXPECT_NEAR(a.E, -1.0, 1e-10);
    EXPECT_NEAR(a.F, 0.0, 1e-10);
    EXPECT_NEAR(a.G, 1.0, 1e-10);
    EXPECT_NEAR(fundamental_form_and_normal(S, -0.5, pi / 6).E, -0.25, 1e-10);
    EXPECT_NEAR(lorentz_dot(a.xi, a.xi), 1.0, 1e-14);
}

TEST(FundamentalForm, RandomPointsAndNormal) {
    const ConicalSurface S = small_cone();
    for (int i = 0; i < 100; ++i) {
        const Real u = support::uniform(-0.9, 0.9), v = support::uniform(0.05L, pi - 0.05L);
        const FundamentalForm f = fundamental_form_and_normal(S, u, v);
        const Real sv = std::sin(v);
        EXPECT_NEAR(f.E, -sv * sv, 1e-8);
        EXPECT_NEAR(f.F, 0.0, 1e-8);
        EXPECT_NEAR(f.G, 1.0, 1e-8);
        EXPECT_NEAR(lorentz_dot(f.xi, f.Phi_u), 0.0, 1e-8);
        EXPECT_NEAR(lorentz_dot(f.xi, f.Phi_v), 0.0, 1e-8);
        EXPECT_NEAR(lorentz_dot(f.xi, evaluate(S, u, v)), 0.0, 1e-14);
    }
}

TEST(Curvatures, ShapeOperator) {
    const ConicalSurface S = small_cone();
    const Curvatures c = curvatures(S, 0.1, pi / 2);
    EXPECT_EQ(c.K, 1.0);
    EXPECT_NEAR(c.H, 2.0 / 3.0, 1e-14);
    EXPECT_NEAR(c.H_shape, 2.0 / 3.0, 1e-6);
    EXPECT_NEAR(c.K_shape, 1.0, 1e-6);
    for (int i = 0; i < 100; ++i) {
        const Real u = support::uniform(-0.9, 0.9), v = support::uniform(0.05L, pi - 0.05L);
        const Curvatures r = curvatures(S, u, v);
        EXPECT_NEAR(r.K_shape, 1.0, 1e-5);
        EXPECT_NEAR(r.H_shape, r.H, 1e-5 * std::max<Real>(1.0, std::abs(r.H)));
    }
}

TEST(Curvatures, GeodesicDirectrixIsTotallyGeodesic) {
    const ConicalSurface S(basis::e2, pseudo_sphere_geodesic());
    const Curvatures c = curvatures(S, 0.2, 1.0);
    EXPECT_NEAR(c.H, 0.0, 1e-15);
    EXPECT_NEAR(c.H_shape, 0.0, 1e-8);
}

TEST(ConeGeodesic, DegenerateParametersGiveEquator) {
    const auto g = cone_geodesic_params(0.0, 0.0, 0.2);
    EXPECT_EQ(g.c, 1.0);
    for (const auto& pt : cone_geodesic_closed_form(g, {-0.5, 0.5}, 11)) {
        EXPECT_NEAR(pt.v, pi / 2, 1e-15);
        EXPECT_NEAR(pt.u, pt.s + 0.2, 1e-12);
    }
}

TEST(ConeGeodesic, UnitSpeedResidual) {
    const auto g = cone_geodesic_params(0.3, 0.1, 0.0);
    EXPECT_NEAR(g.c * g.c, 1.08, 1e-15);
    Real worst = 0.0;
    for (Real s = -0.5; s <= 0.5; s += 0.01) {
        const auto [u, v] = cone_geodesic_uv(g, Jet3::variable(s));
        const Real sv = std::sin(v.v);
        worst = std::max(worst, std::abs(-u.d1 * u.d1 * sv * sv + v.d1 * v.d1 + 1.0));
    }
    EXPECT_LT(worst, 1e-8);
}

TEST(ConeGeodesic, DomainExitReportsArcLength) {
    const auto g = cone_geodesic_params(0.3, 0.1, 0.0);
    try {
        cone_geodesic_closed_form(g, {0.0, 5.0}, 501);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DomainExit);
        ASSERT_TRUE(e.where().has_value());
        EXPECT_GT(*e.where(), 0.0);
        EXPECT_LT(*e.where(), 5.0);
    }
    EXPECT_THROW(cone_geodesic_params(0.0, 2.0, 0.0), Error);
}

TEST(ConeGeodesic, ClosedFormPassesGeodesicTest) {
    const ConicalSurface S = small_cone();
    const auto path = cone_geodesic_closed_form(cone_geodesic_params(0.3, 0.1, 0.0), {-0.5, 0.5}, 1001);
    const ConeGeodesicReport r = is_geodesic_on_cone(S, path);
    EXPECT_TRUE(r.is_geodesic) << r.max_residual;
    EXPECT_LT(r.max_residual, 1e-6);
}

TEST(ConeGeodesic, ConstantLatitudeFails) {
    const ConicalSurface S = small_cone();
    const Real v = 1.0;
    std::vector<ConePathPoint> path;
    for (int i = 0; i <= 200; ++i) {
        const Real s = -0.5 + 0.005 * i;
        path.push_back({s, s / std::sin(v), v}); // unit speed, but not geodesic
    }
    const ConeGeodesicReport r = is_geodesic_on_cone(S, path);
    EXPECT_FALSE(r.is_geodesic);
    EXPECT_NEAR(r.max_v_equation, std::cos(v) / std::sin(v), 1e-6);
}

TEST(ConeGeodesic, EquatorPasses) {
    const ConicalSurface S = small_cone();
    std::vector<ConePathPoint> path;
    for (int i = 0; i <= 200; ++i) path.push_back({-0.5L + 0.005L * i, -0.5L + 0.005L * i, pi / 2});
    EXPECT_TRUE(is_geodesic_on_cone(S, path).is_geodesic);
}

TEST(ConeGeodesic, NormalIsSurfaceNormal) {
    // a cone geodesic is a curve whose principal normal is normal to the cone
    for (Real q : {0.8L, -0.8L}) {
        const ConicalSurface S = small_cone(q);
        const auto g = cone_geodesic_params(0.3, 0.1, 0.0);
        const ParamCurve alpha = cone_geodesic_curve(S, g, {-0.5, 0.5});
        for (Real s = -0.45; s <= 0.45; s += 0.05) {
            const FramedSample f = frame_at(alpha, s);
            const auto [u, v] = cone_geodesic_uv(g, Jet3::variable(s));
            const FundamentalForm I = fundamental_form_and_normal(S, u.v, v.v);
            EXPECT_LT(std::abs(lorentz_dot(f.N, I.Phi_u)), 1e-5);
            EXPECT_LT(std::abs(lorentz_dot(f.N, I.Phi_v)), 1e-5);
            const Real kg = sabban_frame(S.chart(), S.directrix(), u.v).kappa_gamma;
            EXPECT_NEAR(u.d1 * u.d1 * std::abs(kg) * std::sin(v.v), f.kappa_g, 1e-4);
            // tau/kappa = sign(kappa_gamma) (lambda2 sinh(s + s0) + lambda1 cosh(s + s0)) / c
            const Real ratio = -(g.lambda2 * std::sinh(s + g.s0) + g.lambda1 * std::cosh(s + g.s0)) / g.c;
            EXPECT_NEAR(f.tau_g / f.kappa_g, kg < 0 ? ratio : -ratio, 1e-8) << "q=" << q << " s=" << s;
        }
    }
}
