#pragma once

#include <cmath>
#include <numbers>

#include "error.hpp"
#include "frenet.hpp"
#include "minkowski.hpp"
#include "real.hpp"
#include "tolerances.hpp"

namespace desitter {

enum class GeodesicKind { PseudoCircle, Circle, Line };

constexpr const char* to_string(GeodesicKind k) {
    switch (k) {
        case GeodesicKind::PseudoCircle: return "pseudo-circle";
        case GeodesicKind::Circle: return "circle";
        case GeodesicKind::Line: return "line";
    }
    return "?";
}

/**
 * Geodesic of S^3_1 through `base` with initial velocity `direction`:
 *   PseudoCircle (<w,w> = -1): cosh(t) p + sinh(t) w
 *   Circle       (<w,w> = +1): cos(t) p + sin(t) w
 *   Line         (<w,w> =  0): p + t w
 * `theta` is the parameter of the target point when built by geodesic_between.
 */
struct GeodesicArc {
    GeodesicKind kind = GeodesicKind::Circle;
    Vec4 base;
    Vec4 direction;
    Real theta = 0.0;

    [[nodiscard]] Vec4 evaluate(Real t) const {
        switch (kind) {
            case GeodesicKind::PseudoCircle: return std::cosh(t) * base + std::sinh(t) * direction;
            case GeodesicKind::Circle: return std::cos(t) * base + std::sin(t) * direction;
            case GeodesicKind::Line: break;
        }
        return base + t * direction;
    }

    [[nodiscard]] Vec4 tangent(Real t) const {
        switch (kind) {
            case GeodesicKind::PseudoCircle: return std::sinh(t) * base + std::cosh(t) * direction;
            case GeodesicKind::Circle: return -std::sin(t) * base + std::cos(t) * direction;
            case GeodesicKind::Line: break;
        }
        return direction;
    }
};

/// Geodesic starting at p with unit or null tangent w.
inline GeodesicArc geodesic_from(const PointOnS13& p, const Vec4& w) {
    if (std::abs(lorentz_dot(p.vec(), w)) > tol::tangent)
        throw Error(ErrorCode::NotTangent, "direction is not tangent at the base point");
    const Real n = lorentz_dot(w, w);
    GeodesicArc arc{GeodesicKind::Line, p.vec(), w, 0.0};
    if (std::abs(n + 1.0) <= tol::unit) arc.kind = GeodesicKind::PseudoCircle;
    else if (std::abs(n - 1.0) <= tol::unit) arc.kind = GeodesicKind::Circle;
    else if (std::abs(n) > tol::causal)
        throw Error(ErrorCode::NotNormalized, "<w,w> = " + std::to_string(n) + " is not -1, 0 or +1");
    return arc;
}

/// exp_p(t w) for a unit or null tangent w.
inline Vec4 exp_map(const PointOnS13& p, const Vec4& w, Real t) { return geodesic_from(p, w).evaluate(t); }

/**
 * Geodesic from p through q, classified by d = <p,q>: d > 1 pseudo-circle,
 * -1 < d < 1 circle, d = 1 null line. For d <= -1 (q != -p) no geodesic
 * joins the points.
 */
inline GeodesicArc geodesic_between(const PointOnS13& p, const PointOnS13& q) {
    const Vec4& a = p.vec();
    const Vec4& b = q.vec();
    if (max_abs_diff(a, b) <= tol::line_case || max_abs_diff(a, -b) <= tol::line_case)
        throw Error(ErrorCode::Antipodal, "endpoints coincide or are antipodal");
    const Real d = lorentz_dot(a, b);
    if (d < -1.0 - tol::line_case)
        throw Error(ErrorCode::NoGeodesic, "<p,q> = " + std::to_string(d) + " < -1");
    if (std::abs(d + 1.0) <= tol::line_case)
        throw Error(ErrorCode::NoGeodesic, "<p,q> = -1 with q != -p");
    const Vec4 omega = b - d * a;
    if (std::abs(d - 1.0) <= tol::line_case) return {GeodesicKind::Line, a, omega, 1.0};
    if (d > 1.0) {
        const Real r = std::sqrt(d * d - 1.0);
        return {GeodesicKind::PseudoCircle, a, omega / r, std::log(d + r)};
    }
    return {GeodesicKind::Circle, a, omega / std::sqrt(1.0 - d * d), std::acos(d)};
}

/// Transported T, N, B together with the new base point exp_alpha(u N).
struct TransportedFrame {
    Vec4 base;
    Vec4 T, N, B;
};

/**
 * Parallel transport of {T, N, B} along the spacelike geodesic
 * u ↦ cos(u) alpha + sin(u) N. T and B are orthogonal to the geodesic's
 * plane and stay fixed; N rotates into the geodesic's velocity.
 */
inline TransportedFrame parallel_transport_normal_geodesic(const FramedSample& f, Real u) {
    const Real c = std::cos(u), s = std::sin(u);
    return {c * f.alpha + s * f.N, f.T, -s * f.alpha + c * f.N, f.B};
}

} // namespace desitter
