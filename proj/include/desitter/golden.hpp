#pragma once

#include <cmath>
#include <numbers>

#include "curve.hpp"
#include "jet.hpp"
#include "minkowski.hpp"
#include "real.hpp"
#include "synthesis.hpp"

/// Reference curves used by the CLI `example` command and the acceptance suite.
namespace desitter::golden {

/// kappa_g = 10, tau_g = 2 sinh s + 2 cosh s; ratio coefficients (0.2, 0.2).
inline CurvatureProfile exponential_torsion_profile() {
    return {[](Real) { return Real(10.0); }, [](Real s) { return 2.0 * std::sinh(s) + 2.0 * std::cosh(s); }};
}

inline constexpr Interval exponential_torsion_range{-1.0, 1.0};

/**
 * Closed curve in the pseudo-sphere of p = e2 with cusps at t = k pi / 17:
 *   (15/8 cos 17t, 0, 25/16 cos 9t + 9/16 cos 25t, 25/16 sin 9t - 9/16 sin 25t).
 * Its speed is 15 |sin 17t|.
 */
template <class T>
BasicVec4<T> cusped_directrix(const T& t) {
    using std::cos;
    using std::sin;
    return {15.0L / 8.0L * cos(17.0L * t), T(0.0), 25.0L / 16.0L * cos(9.0L * t) + 9.0L / 16.0L * cos(25.0L * t),
            25.0L / 16.0L * sin(9.0L * t) - 9.0L / 16.0L * sin(25.0L * t)};
}

/// Arc length of the cusped directrix on its regular arc [0, pi/17].
inline constexpr Real cusped_arc_length = 30.0L / 17.0L;

/// The cusped directrix by arc length sigma on [0, 30/17]:
/// t(sigma) = acos(1 - 17 sigma / 15) / 17.
template <class T>
BasicVec4<T> cusped_directrix_unit_speed(const T& sigma) {
    using std::acos;
    return cusped_directrix(acos(1.0L - 17.0L / 15.0L * sigma) / 17.0L);
}

inline ParamCurve cusped_directrix_curve(Interval t_range = {-4.0, 4.0}) {
    return ParamCurve::from_generic([](auto t) { return cusped_directrix(t); }, t_range);
}

inline ParamCurve cusped_directrix_unit_speed_curve() {
    return ParamCurve::from_generic([](auto s) { return cusped_directrix_unit_speed(s); }, {0.0, cusped_arc_length})
        .as_arc_length(0.0);
}

/// cos(eta) e2 + sin(eta) gamma(t) with eta = arctan(sech t), gamma the cusped directrix.
template <class T>
BasicVec4<T> cusped_cone_curve(const T& t) {
    using std::atan;
    using std::cos;
    using std::sin;
    const T eta = atan(sech(t));
    const BasicVec4<T> g = cusped_directrix(t);
    return {sin(eta) * g[0], cos(eta), sin(eta) * g[2], sin(eta) * g[3]};
}

inline ParamCurve cusped_cone_curve_param(Interval t_range = {-4.0, 4.0}) {
    return ParamCurve::from_generic([](auto t) { return cusped_cone_curve(t); }, t_range);
}

/// alpha(t) = (sec t sinh(t/15), cosh(t/15), cosh(t/15) tan t, 1) / sqrt(1 + sec^2 t).
template <class T>
BasicVec4<T> secant_curve(const T& t) {
    using std::cos;
    using std::cosh;
    using std::sinh;
    using std::sqrt;
    using std::tan;
    const T sec = 1.0L / cos(t);
    const T n = sqrt(1.0L + sec * sec);
    return {sec * sinh(t / 15.0L) / n, cosh(t / 15.0L) / n, cosh(t / 15.0L) * tan(t) / n, 1.0L / n};
}

/// gamma(t) = (sinh(t/15), cosh(t/15) cos t, cosh(t/15) sin t, 0), in the pseudo-sphere of e4.
template <class T>
BasicVec4<T> secant_directrix(const T& t) {
    using std::cos;
    using std::cosh;
    using std::sin;
    using std::sinh;
    return {sinh(t / 15.0L), cosh(t / 15.0L) * cos(t), cosh(t / 15.0L) * sin(t), T(0.0)};
}

inline constexpr Interval secant_range{-1.52, 1.52};
inline constexpr Real secant_min_cos = 0.05;

} // namespace desitter::golden
