#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <vector>

#include "curve.hpp"
#include "error.hpp"
#include "jet.hpp"
#include "minkowski.hpp"
#include "pseudosphere.hpp"
#include "real.hpp"
#include "sampled_curve.hpp"
#include "tolerances.hpp"

namespace desitter {

/**
 * Timelike conical surface Phi(u, v) = cos(v) p + sin(v) gamma(u) with apex p
 * and a unit-speed timelike directrix gamma in the pseudo-sphere of T_p S^3_1.
 * Each ruling v ↦ Phi(u, v) is the geodesic exp_p(v gamma(u)).
 */
class ConicalSurface {
public:
    ConicalSurface(const PointOnS13& apex, ParamCurve directrix)
        : chart_(apex), gamma_(std::move(directrix)) {
        const Interval d = gamma_.domain();
        constexpr int probes = 17;
        for (int k = 0; k < probes; ++k) {
            const Real u = d.lo + d.length() * k / (probes - 1);
            check_on_pseudosphere(chart_.apex(), gamma_(u), u);
            if (k == 0 || k + 1 == probes) continue; // derivatives may be singular at the ends
            const Vec4 v = gamma_.derivatives(u).d1;
            const Real q = lorentz_dot(v, v);
            if (std::abs(q + 1.0) > 1e-6)
                throw Error(ErrorCode::NotUnitSpeed, "directrix <g',g'> = " + std::to_string(q) + " at u=" + std::to_string(u), u);
        }
    }

    [[nodiscard]] const Vec4& apex() const noexcept { return chart_.apex(); }
    [[nodiscard]] const TangentSphereChart& chart() const noexcept { return chart_; }
    [[nodiscard]] const ParamCurve& directrix() const noexcept { return gamma_; }

private:
    TangentSphereChart chart_;
    ParamCurve gamma_;
};

inline void check_cone_chart(Real v) {
    if (!(v > tol::apex && v < std::numbers::pi_v<Real> - tol::apex))
        throw Error(ErrorCode::ApexSingularity, "v = " + std::to_string(v) + " outside (0, pi)", v);
}

inline Vec4 evaluate(const ConicalSurface& S, Real u, Real v) {
    check_cone_chart(v);
    return std::cos(v) * S.apex() + std::sin(v) * S.directrix()(u);
}

struct FundamentalForm {
    Real E = 0.0, F = 0.0, G = 0.0;
    Vec4 xi;           // unit normal -N_gamma(u)
    Vec4 Phi_u, Phi_v; // numerical partial derivatives
};

namespace detail {
// Central difference with one Richardson extrapolation.
template <class F>
Vec4 richardson_derivative(F&& f, Real x, Real h) {
    const Vec4 coarse = (f(x + h) - f(x - h)) / (2.0 * h);
    const Vec4 fine = (f(x + 0.5 * h) - f(x - 0.5 * h)) / h;
    return (4.0 * fine - coarse) / 3.0;
}

inline constexpr Real surface_step = 1e-4;

inline Vec4 cone_normal(const ConicalSurface& S, Real u) {
    const CurveJet j = S.directrix().derivatives(u);
    const Vec4 T = j.d1 / timelike_speed(j.d1, u);
    return -wedge3(S.apex(), j.x, T);
}
} // namespace detail

/// E, F, G from numerically differentiated Phi, and the normal xi = -N_gamma(u).
inline FundamentalForm fundamental_form_and_normal(const ConicalSurface& S, Real u, Real v) {
    check_cone_chart(v);
    FundamentalForm out;
    out.Phi_u = detail::richardson_derivative([&](Real x) { return evaluate(S, x, v); }, u, detail::surface_step);
    out.Phi_v = detail::richardson_derivative([&](Real x) { return evaluate(S, u, x); }, v, detail::surface_step);
    out.E = lorentz_dot(out.Phi_u, out.Phi_u);
    out.F = lorentz_dot(out.Phi_u, out.Phi_v);
    out.G = lorentz_dot(out.Phi_v, out.Phi_v);
    out.xi = detail::cone_normal(S, u);
    return out;
}

namespace detail {
// Unit normal from the differentiated parametrization, oriented like cone_normal.
inline Vec4 chart_normal(const ConicalSurface& S, Real u, Real v) {
    const FundamentalForm I = fundamental_form_and_normal(S, u, v);
    Vec4 n = wedge3(evaluate(S, u, v), I.Phi_u, I.Phi_v);
    n = n / std::sqrt(std::abs(lorentz_dot(n, n)));
    return lorentz_dot(n, I.xi) < 0.0 ? -n : n;
}
} // namespace detail

/**
 * K = 1 and H = kappa_gamma(u) / (2 sin v), plus the same quantities from a
 * finite-difference shape operator S = I^{-1} II with II_ij = -<xi_i, Phi_j>,
 * K = 1 + det S, H = tr S / 2.
 */
struct Curvatures {
    Real K = 1.0;
    Real H = 0.0;
    Real K_shape = 0.0;
    Real H_shape = 0.0;
    Real kappa_gamma = 0.0;
};

inline Curvatures curvatures(const ConicalSurface& S, Real u, Real v) {
    check_cone_chart(v);
    const FundamentalForm I = fundamental_form_and_normal(S, u, v);
    const Real h = detail::surface_step;
    const Vec4 xi_u = detail::richardson_derivative([&](Real x) { return detail::chart_normal(S, x, v); }, u, h);
    const Vec4 xi_v = detail::richardson_derivative([&](Real x) { return detail::chart_normal(S, u, x); }, v, h);
    const Real II_uu = -lorentz_dot(xi_u, I.Phi_u), II_uv = -lorentz_dot(xi_u, I.Phi_v);
    const Real II_vu = -lorentz_dot(xi_v, I.Phi_u), II_vv = -lorentz_dot(xi_v, I.Phi_v);
    const Real det_I = I.E * I.G - I.F * I.F;
    // I^{-1} II
    const Real s11 = (I.G * II_uu - I.F * II_vu) / det_I, s12 = (I.G * II_uv - I.F * II_vv) / det_I;
    const Real s21 = (-I.F * II_uu + I.E * II_vu) / det_I, s22 = (-I.F * II_uv + I.E * II_vv) / det_I;

    Curvatures out;
    out.kappa_gamma = sabban_frame(S.chart(), S.directrix(), u).kappa_gamma;
    out.K = 1.0;
    out.H = out.kappa_gamma / (2.0 * std::sin(v));
    out.K_shape = 1.0 + (s11 * s22 - s12 * s21);
    out.H_shape = 0.5 * (s11 + s22);
    return out;
}

/// Constants of the closed-form cone geodesics; c^2 = lambda1^2 - lambda2^2 + 1.
struct ConeGeodesicParams {
    Real lambda1 = 0.0, lambda2 = 0.0, s0 = 0.0, c = 1.0;
};

inline ConeGeodesicParams cone_geodesic_params(Real lambda1, Real lambda2, Real s0, int sign = +1) {
    const Real c2 = lambda1 * lambda1 - lambda2 * lambda2 + 1.0;
    if (!(c2 > 0.0)) throw Error(ErrorCode::InvalidArgument, "lambda1^2 - lambda2^2 + 1 must be positive");
    return {lambda1, lambda2, s0, (sign < 0 ? -1.0L : 1.0L) * std::sqrt(c2)};
}

inline void check_params(const ConeGeodesicParams& g) {
    if (g.c == 0.0 || std::abs(g.c * g.c - (g.lambda1 * g.lambda1 - g.lambda2 * g.lambda2 + 1.0)) > 1e-12)
        throw Error(ErrorCode::InvalidArgument, "cone geodesic constants violate c^2 = l1^2 - l2^2 + 1");
}

struct ConePathPoint {
    Real s = 0.0;
    Real u = 0.0;
    Real v = 0.0;
};

/**
 * v(s) = arccos(l1 sinh(s + s0) + l2 cosh(s + s0)),
 * u(s) = atanh(l1 l2 / c + (1 + l1^2) / c tanh(s + s0)),
 * for plain or jet arguments. Raises DomainExit where either inverse
 * function leaves its domain.
 */
template <class T>
std::pair<T, T> cone_geodesic_uv(const ConeGeodesicParams& g, const T& s) {
    using std::acos;
    using std::atanh;
    using std::cosh;
    using std::sinh;
    using std::tanh;
    const T x = s + g.s0;
    const T f = g.lambda1 * sinh(x) + g.lambda2 * cosh(x);
    const Real sv = value_of(s);
    if (!(std::abs(value_of(f)) < 1.0))
        throw Error(ErrorCode::DomainExit, "arccos argument leaves (-1, 1) at s=" + std::to_string(sv), sv);
    T arg = g.lambda1 * g.lambda2 / g.c + (1.0 + g.lambda1 * g.lambda1) / g.c * tanh(x);
    const Real a = value_of(arg);
    if (!(std::abs(a) < 1.0))
        throw Error(ErrorCode::DomainExit, "atanh argument leaves (-1, 1) at s=" + std::to_string(sv), sv);
    constexpr Real limit = 1.0 - 1e-12;
    if (std::abs(a) > limit) {
        if constexpr (std::is_same_v<T, Real>) arg = std::copysign(limit, a);
        else arg.v = std::copysign(limit, a);
    }
    return {atanh(arg), acos(f)};
}

/// Samples (s, u(s), v(s)) of a closed-form cone geodesic on a uniform grid.
inline std::vector<ConePathPoint> cone_geodesic_closed_form(const ConeGeodesicParams& g, Interval s_range,
                                                            std::size_t count) {
    check_params(g);
    if (count < 2) throw Error(ErrorCode::InvalidArgument, "need at least two samples");
    std::vector<ConePathPoint> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const Real s = i + 1 == count ? s_range.hi : s_range.lo + s_range.length() * static_cast<Real>(i) / (count - 1);
        const auto [u, v] = cone_geodesic_uv(g, s);
        out.push_back({s, u, v});
    }
    return out;
}

/// The cone geodesic s ↦ Phi(u(s), v(s)) as an arc-length curve with analytic derivatives.
inline ParamCurve cone_geodesic_curve(const ConicalSurface& S, const ConeGeodesicParams& g, Interval s_range) {
    check_params(g);
    auto surface = std::make_shared<ConicalSurface>(S);
    auto jet = [surface, g](Real s) {
        const auto [u, v] = cone_geodesic_uv(g, Jet3::variable(s));
        const JetVec4 gamma = compose(surface->directrix().derivatives(u.v), u);
        return to_curve_jet(cos(v) * surface->apex() + sin(v) * gamma);
    };
    auto position = [surface, g](Real s) {
        const auto [u, v] = cone_geodesic_uv(g, s);
        return evaluate(*surface, u, v);
    };
    return ParamCurve(position, s_range, jet).as_arc_length(s_range.lo);
}

/**
 * Residuals of a sampled path (u(s), v(s)) against the cone geodesic system
 *   u'' + 2 u' v' cot v = 0,   v'' + (u')^2 sin v cos v = 0,
 * the tangential part of the ambient covariant acceleration, and the unit
 * speed condition -(u')^2 sin^2 v + (v')^2 = -1. Derivatives come from
 * Fornberg weights on the (possibly nonuniform) s grid.
 */
struct ConeGeodesicReport {
    bool is_geodesic = false;
    Real max_residual = 0.0;
    Real max_u_equation = 0.0;
    Real max_v_equation = 0.0;
    Real max_tangential = 0.0;
    Real max_speed = 0.0;
};

inline ConeGeodesicReport is_geodesic_on_cone(const ConicalSurface& S, const std::vector<ConePathPoint>& path,
                                              Real tolerance = tol::cone_geodesic, std::size_t window = 9) {
    ConeGeodesicReport r;
    if (path.size() < window) throw Error(ErrorCode::InsufficientSamples, "path too short for differentiation");
    std::vector<Real> s(path.size());
    for (std::size_t i = 0; i < path.size(); ++i) s[i] = path[i].s;
    const Vec4& p = S.apex();
    for (std::size_t i = 0; i < path.size(); ++i) {
        const std::size_t half = window / 2;
        const std::size_t start = std::min(i > half ? i - half : 0, path.size() - window);
        const std::vector<Real> local(s.begin() + static_cast<std::ptrdiff_t>(start),
                                      s.begin() + static_cast<std::ptrdiff_t>(start + window));
        const auto w = fornberg_weights(local, s[i]);
        Real u1 = 0, u2 = 0, v1 = 0, v2 = 0;
        for (std::size_t k = 0; k < window; ++k) {
            u1 += w[k][1] * path[start + k].u;
            u2 += w[k][2] * path[start + k].u;
            v1 += w[k][1] * path[start + k].v;
            v2 += w[k][2] * path[start + k].v;
        }
        const Real u = path[i].u, v = path[i].v;
        check_cone_chart(v);
        const Real sv = std::sin(v), cv = std::cos(v);
        const Real eq_u = u2 + 2.0 * u1 * v1 * cv / sv;
        const Real eq_v = v2 + u1 * u1 * sv * cv;
        const Real speed = -u1 * u1 * sv * sv + v1 * v1 + 1.0;

        const CurveJet g = S.directrix().derivatives(u);
        const Vec4 Phi = cv * p + sv * g.x;
        const Vec4 Phi_u = sv * g.d1, Phi_v = -sv * p + cv * g.x;
        const Vec4 Phi_uu = sv * g.d2, Phi_uv = cv * g.d1, Phi_vv = -Phi;
        const Vec4 vel = u1 * Phi_u + v1 * Phi_v;
        const Vec4 acc = u1 * u1 * Phi_uu + 2.0 * u1 * v1 * Phi_uv + v1 * v1 * Phi_vv + u2 * Phi_u + v2 * Phi_v;
        const Vec4 cov = acc + lorentz_dot(vel, vel) * Phi; // drop the component normal to S^3_1
        const Real tangential = std::max(std::abs(lorentz_dot(cov, Phi_u)) / (sv * sv), std::abs(lorentz_dot(cov, Phi_v)));

        r.max_u_equation = std::max(r.max_u_equation, std::abs(eq_u));
        r.max_v_equation = std::max(r.max_v_equation, std::abs(eq_v));
        r.max_tangential = std::max(r.max_tangential, tangential);
        r.max_speed = std::max(r.max_speed, std::abs(speed));
    }
    r.max_residual = std::max({r.max_u_equation, r.max_v_equation, r.max_tangential, r.max_speed});
    r.is_geodesic = r.max_residual < tolerance;
    return r;
}

} // namespace desitter
