#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include "curve.hpp"
#include "error.hpp"
#include "minkowski.hpp"
#include "tolerances.hpp"

namespace desitter {

/**
 * Curve-hypersurface frame {alpha, T, N, B} of a timelike curve at one
 * sample, with geodesic curvature and torsion. Signatures are
 * (+1, -1, +1, +1) and B = alpha × T × N.
 */
struct FramedSample {
    Real t = 0.0; // curve parameter
    Real s = 0.0; // arc length
    Vec4 alpha, T, N, B;
    Real kappa_g = 0.0;
    Real tau_g = 0.0;

    [[nodiscard]] std::array<Vec4, 4> frame() const { return {alpha, T, N, B}; }
};

inline constexpr std::array<int, 4> frame_signatures{+1, -1, +1, +1};

inline Real frame_gram_error(const FramedSample& f) { return gram_error(f.frame(), frame_signatures); }

/// Largest |B - alpha × T × N| component.
inline Real binormal_error(const FramedSample& f) {
    return max_abs_diff(f.B, wedge3(f.alpha, f.T, f.N));
}

namespace detail {
struct KinematicData {
    Real speed;    // |x'|
    Vec4 T;          // unit tangent
    Vec4 curvature;  // dT/ds - alpha = kappa_g N
    Real kappa_g;
};

inline KinematicData kinematics(const CurveJet& j, Real t) {
    const Real v = timelike_speed(j.d1, t);
    const Real vp = -lorentz_dot(j.d1, j.d2) / v;
    const Vec4 T = j.d1 / v;
    const Vec4 dT = (j.d2 - (vp / v) * j.d1) / (v * v);
    const Vec4 k = dT - j.x;
    const Real k2 = lorentz_dot(k, k);
    return {v, T, k, std::sqrt(std::max<Real>(k2, 0.0))};
}
} // namespace detail

/**
 * Frame and curvatures from the position jet in any regular timelike
 * parametrization; derivatives with respect to arc length are obtained by
 * the chain rule. The torsion uses
 *   tau_g = <N', B> = -det(alpha, alpha', alpha'', alpha''') / kappa_g^2
 * (arc-length derivatives), the sign that agrees with the Frenet system
 * for B = alpha × T × N.
 */
inline FramedSample frame_from_jet(const CurveJet& j, Real t, Real s) {
    const auto k = detail::kinematics(j, t);
    if (k.kappa_g <= tol::geodesic)
        throw Error(ErrorCode::GeodesicPoint, "T' - alpha vanishes at t=" + std::to_string(t), t);
    FramedSample out;
    out.t = t;
    out.s = s;
    out.alpha = j.x;
    out.T = k.T;
    out.N = k.curvature / k.kappa_g;
    out.B = wedge3(out.alpha, out.T, out.N);
    out.kappa_g = k.kappa_g;
    const Real v6 = std::pow(k.speed, 6);
    out.tau_g = -det4(j.x, j.d1, j.d2, j.d3) / (v6 * k.kappa_g * k.kappa_g);
    return out;
}

inline FramedSample frame_at(const ParamCurve& c, Real t) {
    return frame_from_jet(c.derivatives(t), t, arc_length_at(c, t));
}

/// ||T' - alpha||; zero (no error) at geodesic points.
inline Real geodesic_curvature(const ParamCurve& c, Real t) {
    return detail::kinematics(c.derivatives(t), t).kappa_g;
}

inline Real geodesic_torsion(const ParamCurve& c, Real t) {
    return frame_from_jet(c.derivatives(t), t, 0.0).tau_g;
}

/// Frames on a uniform parameter grid of `count` points over `range`.
inline std::vector<FramedSample> sample_frames(const ParamCurve& c, Interval range, std::size_t count) {
    if (count < 2) throw Error(ErrorCode::InvalidArgument, "need at least two samples");
    std::vector<FramedSample> out;
    out.reserve(count);
    Real s = arc_length_at(c, range.lo);
    Real prev = range.lo;
    for (std::size_t i = 0; i < count; ++i) {
        const Real t = i + 1 == count ? range.hi : range.lo + range.length() * static_cast<Real>(i) / (count - 1);
        if (i > 0) s += c.is_unit_speed() ? t - prev : arc_length(c, prev, t);
        out.push_back(frame_from_jet(c.derivatives(t), t, s));
        prev = t;
    }
    return out;
}

} // namespace desitter
