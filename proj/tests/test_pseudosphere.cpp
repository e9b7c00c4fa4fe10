#include <cmath>

#include <gtest/gtest.h>

#include "desitter/pseudosphere.hpp"
#include "test_support.hpp"

using namespace desitter;

namespace {
constexpr Real r35 = 0.6L, q45 = 0.8L;

// Unit-speed curve in S^2_1 of p = e2 with kappa_gamma = q / r.
ParamCurve small_circle(Real shift = 0.0) {
    return ParamCurve::from_generic(
               [shift](auto t) {
                   using std::cosh;
                   using std::sinh;
                   using T = decltype(t);
                   return BasicVec4<T>{r35 * sinh((t + shift) / r35), T(0.0), r35 * cosh((t + shift) / r35), T(q45)};
               },
               {-1.0, 1.0})
        .as_arc_length(-1.0);
}
} // namespace

TEST(Chart, BasisIsPseudoOrthonormal) {
    for (int i = 0; i < 200; ++i) {
        const Vec4 p = support::random_point();
        const TangentSphereChart chart(p);
        const auto& f = chart.basis();
        const std::array<Vec4, 3> fs{f[0], f[1], f[2]};
        EXPECT_LT(gram_error(fs, {-1, +1, +1}), 1e-12);
        for (const auto& v : fs) EXPECT_LT(std::abs(lorentz_dot(v, p)), 1e-12);
    }
    const TangentSphereChart e2(basis::e2);
    EXPECT_LT(max_abs_diff(e2.f1(), basis::e1), 1e-15);
    EXPECT_LT(max_abs_diff(e2.f2(), basis::e3), 1e-15);
    EXPECT_LT(max_abs_diff(e2.f3(), basis::e4), 1e-15);
}

TEST(Sabban, GeodesicOfPseudoSphere) {
    const TangentSphereChart chart(basis::e2);
    const ParamCurve g = ParamCurve::from_generic(
        [](auto t) {
            using std::cosh;
            using std::sinh;
            using T = decltype(t);
            return BasicVec4<T>{sinh(t), T(0.0), cosh(t), T(0.0)};
        },
        {-1.0, 1.0});
    EXPECT_NEAR(sabban_frame(chart, g, 0.3).kappa_gamma, 0.0, 1e-15);
}

TEST(Sabban, SmallCircleCurvature) {
    const TangentSphereChart chart(basis::e2);
    const ParamCurve g = small_circle();
    for (Real t : {-0.5L, 0.0L, 0.7L}) {
        const SabbanSample s = sabban_frame(chart, g, t);
        EXPECT_NEAR(s.kappa_gamma, 4.0 / 3.0, 1e-14);
        EXPECT_NEAR(lorentz_dot(s.T_gamma, s.T_gamma), -1.0, 1e-14);
        EXPECT_NEAR(lorentz_dot(s.N_gamma, s.N_gamma), 1.0, 1e-14);
        EXPECT_NEAR(lorentz_dot(s.N_gamma, s.gamma), 0.0, 1e-14);
        EXPECT_NEAR(lorentz_dot(s.N_gamma, basis::e2), 0.0, 1e-14);
        // gamma'' = gamma + kappa N
        const CurveJet j = g.derivatives(t);
        EXPECT_LT(max_abs_diff(j.d2, s.gamma + s.kappa_gamma * s.N_gamma), 1e-13);
    }
}

TEST(Sabban, CuspedDirectrixOnPseudoSphere) {
    const Vec4 g0{15.0L / 8, 0.0, 17.0L / 8, 0.0};
    EXPECT_NEAR(lorentz_dot(g0, g0), 1.0, 1e-15);
    EXPECT_EQ(lorentz_dot(g0, basis::e2), 0.0);
}

TEST(Sabban, RejectsCurvesOffPseudoSphere) {
    const TangentSphereChart chart(basis::e3);
    try {
        sabban_frame(chart, small_circle(), 0.0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotOnPseudoSphere);
    }
}

TEST(Directrix, ZeroCurvatureIsGeodesic) {
    const TangentSphereChart chart(basis::e2);
    const auto samples = synthesize_directrix(chart, [](Real) { return 0.0L; }, chart_initial_sample(chart), {-1.0, 1.0}, 1e-3);
    Real worst = 0.0;
    for (const auto& s : samples) {
        // gamma(0) = e3, T(0) = e1
        const Vec4 exact{std::sinh(s.t), 0.0, std::cosh(s.t), 0.0};
        worst = std::max(worst, max_abs_diff(s.gamma, exact));
    }
    EXPECT_LT(worst, 1e-12);
}

TEST(Directrix, ConstantCurvatureMatchesSmallCircle) {
    const TangentSphereChart chart(basis::e2);
    const ParamCurve g = small_circle();
    const SabbanSample init = sabban_frame(chart, g, 0.0);
    const auto samples = synthesize_directrix(chart, [](Real) { return 4.0L / 3.0L; }, init, {-1.0, 1.0}, 1e-3);
    Real worst = 0.0, membership = 0.0;
    for (const auto& s : samples) {
        worst = std::max(worst, max_abs_diff(s.gamma, g(s.t)));
        membership = std::max({membership, std::abs(lorentz_dot(s.gamma, basis::e2)), std::abs(lorentz_dot(s.gamma, s.gamma) - 1.0)});
    }
    EXPECT_LT(worst, 1e-6);
    EXPECT_LT(membership, 1e-9);
}

TEST(Directrix, SpiralRoundTrip) {
    const TangentSphereChart chart(basis::e2);
    const auto kappa = spiral_curvature(1.0, 4.0, 0.0);
    const auto samples = synthesize_directrix(chart, kappa, chart_initial_sample(chart), {-3.0, 3.0}, 1e-3);
    const ParamCurve g = curve_through_sabban(samples);
    Real worst = 0.0;
    for (std::size_t i = 0; i < samples.size(); i += 7)
        worst = std::max(worst, std::abs(sabban_frame(chart, g, samples[i].t).kappa_gamma - kappa(samples[i].t)));
    EXPECT_LT(worst, 1e-5);
}

TEST(Directrix, OriginShiftShiftsProfile) {
    const TangentSphereChart chart(basis::e2);
    const Real delta = 0.25;
    const ParamCurve g = small_circle();
    const ParamCurve shifted = small_circle(delta);
    // a non-constant check: kappa of the spiral synthesized on shifted grids
    const auto kappa = spiral_curvature(1.0, 4.0, 0.0);
    const auto a = synthesize_directrix(chart, kappa, chart_initial_sample(chart, 0.0), {-1.0, 1.0}, 1e-3);
    const auto shifted_kappa = [&](Real t) { return kappa(t + delta); };
    const auto b = synthesize_directrix(chart, shifted_kappa, chart_initial_sample(chart, -delta), {-1.0 - delta, 1.0 - delta}, 1e-3);
    const ParamCurve ga = curve_through_sabban(a), gb = curve_through_sabban(b);
    for (Real t : {-0.5L, 0.0L, 0.5L})
        EXPECT_NEAR(sabban_frame(chart, ga, t).kappa_gamma, sabban_frame(chart, gb, t - delta).kappa_gamma, 1e-7);
    EXPECT_NEAR(sabban_frame(chart, g, 0.1).kappa_gamma, sabban_frame(chart, shifted, 0.1 - delta).kappa_gamma, 1e-13);
}

TEST(Spiral, Values) {
    const auto k = spiral_curvature(1.0, 4.0, 0.0);
    EXPECT_NEAR(k(0.0), std::sqrt(2.0L), 1e-15);
    EXPECT_LT(k(60.0), 1e-70);
    EXPECT_LT(k(-60.0), 1e-70);
    const Real a = 1.0, kappa0 = 2.0;
    EXPECT_EQ(a * (1.0 + a * a) * kappa0, 4.0);
    EXPECT_THROW(spiral_curvature(0.0, 4.0, 0.0), Error);
    EXPECT_THROW(spiral_curvature(1.0, 0.0, 0.0), Error);
}
