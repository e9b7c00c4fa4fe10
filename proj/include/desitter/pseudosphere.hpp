#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <memory>
#include <vector>

#include "curve.hpp"
#include "error.hpp"
#include "integrate.hpp"
#include "minkowski.hpp"
#include "real.hpp"
#include "sampled_curve.hpp"
#include "tolerances.hpp"

namespace desitter {

/**
 * Pseudo-orthonormal basis (f1 timelike; f2, f3 spacelike) of T_p S^3_1,
 * the home of the pseudo-sphere S^2_1 = {x in T_p S^3_1 : <x,x> = 1}.
 */
class TangentSphereChart {
public:
    explicit TangentSphereChart(const PointOnS13& p) : p_(p.vec()) {
        const std::array<Vec4, 4> axes{basis::e1, basis::e2, basis::e3, basis::e4};
        std::array<Vec4, 4> candidates;
        for (std::size_t i = 0; i < 4; ++i) candidates[i] = axes[i] - lorentz_dot(axes[i], p_) * p_;

        std::size_t timelike = 4;
        for (std::size_t i = 0; i < 4 && timelike == 4; ++i)
            if (lorentz_dot(candidates[i], candidates[i]) < -tol::degenerate) timelike = i;
        if (timelike == 4) throw Error(ErrorCode::DegenerateFrame, "no timelike direction in the tangent space");

        std::vector<Vec4> found{candidates[timelike] / std::sqrt(-lorentz_dot(candidates[timelike], candidates[timelike]))};
        std::vector<int> sig{-1};
        for (std::size_t i = 0; i < 4 && found.size() < 3; ++i) {
            if (i == timelike) continue;
            Vec4 u = candidates[i];
            for (int pass = 0; pass < 2; ++pass)
                for (std::size_t j = 0; j < found.size(); ++j) u -= (sig[j] * lorentz_dot(u, found[j])) * found[j];
            const Real q = lorentz_dot(u, u);
            if (q <= 1e-6) continue;
            found.push_back(u / std::sqrt(q));
            sig.push_back(+1);
        }
        if (found.size() != 3) throw Error(ErrorCode::DegenerateFrame, "tangent basis construction failed");
        f_ = {found[0], found[1], found[2]};
    }

    [[nodiscard]] const Vec4& apex() const noexcept { return p_; }
    [[nodiscard]] const std::array<Vec4, 3>& basis() const noexcept { return f_; }
    [[nodiscard]] const Vec4& f1() const noexcept { return f_[0]; }
    [[nodiscard]] const Vec4& f2() const noexcept { return f_[1]; }
    [[nodiscard]] const Vec4& f3() const noexcept { return f_[2]; }

    /// Point a f1 + b f2 + c f3 of T_p S^3_1.
    [[nodiscard]] Vec4 embed(Real a, Real b, Real c) const { return a * f_[0] + b * f_[1] + c * f_[2]; }

private:
    Vec4 p_;
    std::array<Vec4, 3> f_;
};

/// Sabban frame {gamma, T_gamma, N_gamma} of a timelike curve in S^2_1.
struct SabbanSample {
    Real t = 0.0;
    Vec4 gamma, T_gamma, N_gamma;
    Real kappa_gamma = 0.0;
};

inline void check_on_pseudosphere(const Vec4& p, const Vec4& x, Real t, Real tolerance = tol::sphere) {
    const Real dp = lorentz_dot(x, p), dx = lorentz_dot(x, x) - 1.0;
    if (std::abs(dp) > tolerance || std::abs(dx) > tolerance)
        throw Error(ErrorCode::NotOnPseudoSphere,
                    "<x,p> = " + std::to_string(dp) + ", <x,x> - 1 = " + std::to_string(dx) + " at t=" + std::to_string(t), t);
}

/**
 * Sabban frame and kappa_gamma = det(gamma, gamma', gamma'', p) at t; for a
 * non-unit-speed parametrization the determinant is divided by |gamma'|^3.
 * N_gamma = gamma ∧ T_gamma, the cross product of T_p S^3_1.
 */
inline SabbanSample sabban_frame(const TangentSphereChart& chart, const ParamCurve& gamma, Real t) {
    const Vec4& p = chart.apex();
    const CurveJet j = gamma.derivatives(t);
    check_on_pseudosphere(p, j.x, t);
    const Real v = timelike_speed(j.d1, t);
    SabbanSample out;
    out.t = t;
    out.gamma = j.x;
    out.T_gamma = j.d1 / v;
    out.N_gamma = wedge3(p, out.gamma, out.T_gamma);
    out.kappa_gamma = det4(j.x, j.d1, j.d2, p) / (v * v * v);
    return out;
}

/// Initial Sabban frame gamma = f2, T = f1 at parameter t.
inline SabbanSample chart_initial_sample(const TangentSphereChart& chart, Real t = 0.0) {
    SabbanSample s;
    s.t = t;
    s.gamma = chart.f2();
    s.T_gamma = chart.f1();
    s.N_gamma = wedge3(chart.apex(), s.gamma, s.T_gamma);
    return s;
}

inline constexpr std::array<int, 4> sabban_signatures{+1, +1, -1, +1};

/**
 * Integrates gamma' = T, T' = gamma + kappa N, N' = kappa T inside the
 * pseudo-sphere of the chart, re-orthonormalizing (p, gamma, T, N) after
 * every step. Samples are ordered by increasing t.
 */
inline std::vector<SabbanSample> synthesize_directrix(const TangentSphereChart& chart,
                                                      const std::function<Real(Real)>& kappa_gamma,
                                                      const SabbanSample& init, Interval t_range, Real step) {
    if (!kappa_gamma) throw Error(ErrorCode::InvalidArgument, "missing curvature function");
    if (!(step > 0.0)) throw Error(ErrorCode::InvalidArgument, "step must be positive");
    if (!(t_range.hi > t_range.lo) || !t_range.contains(init.t))
        throw Error(ErrorCode::InvalidArgument, "initial parameter must lie in the synthesis range");
    const Vec4& p = chart.apex();
    check_on_pseudosphere(p, init.gamma, init.t);
    const FrameState<4> y0{p, init.gamma, init.T_gamma, init.N_gamma};
    if (gram_error(y0, sabban_signatures) > tol::frame ||
        max_abs_diff(init.N_gamma, wedge3(p, init.gamma, init.T_gamma)) > tol::frame)
        throw Error(ErrorCode::DegenerateFrame, "initial Sabban frame is not pseudo-orthonormal");

    auto rhs = [&kappa_gamma](Real t, const FrameState<4>& y) {
        const Real k = kappa_gamma(t);
        return FrameState<4>{Vec4{}, y[2], y[1] + k * y[3], k * y[2]};
    };
    auto sample = [&kappa_gamma](Real t, const FrameState<4>& y) {
        return SabbanSample{t, y[1], y[2], y[3], kappa_gamma(t)};
    };

    std::vector<SabbanSample> backward, forward;
    integrate_frame<4>(rhs, y0, march_grid(init.t, t_range.lo, step), sabban_signatures,
                       [&](Real t, const FrameState<4>& y) { backward.push_back(sample(t, y)); });
    integrate_frame<4>(rhs, y0, march_grid(init.t, t_range.hi, step), sabban_signatures,
                       [&](Real t, const FrameState<4>& y) { forward.push_back(sample(t, y)); });
    std::vector<SabbanSample> out(backward.rbegin(), backward.rend());
    out.insert(out.end(), forward.begin() + 1, forward.end());
    return out;
}

/// Unit-speed directrix through synthesized samples (positions and tangents).
inline ParamCurve curve_through_sabban(const std::vector<SabbanSample>& samples, std::size_t window = 9) {
    std::vector<Real> t;
    std::vector<Vec4> x, v;
    for (const auto& s : samples) {
        t.push_back(s.t);
        x.push_back(s.gamma);
        v.push_back(s.T_gamma);
    }
    const Real origin = samples.empty() ? 0.0 : samples.front().t;
    return curve_through_points(std::move(t), std::move(x), std::move(v), window).as_arc_length(origin);
}

/// t ↦ b (cosh^2(t + t0) + a^2)^(-3/2).
inline std::function<Real(Real)> spiral_curvature(Real a, Real b, Real t0) {
    if (a == 0.0 || b == 0.0) throw Error(ErrorCode::InvalidArgument, "spiral curvature needs a != 0 and b != 0");
    return [a, b, t0](Real t) {
        const Real c = std::cosh(t + t0);
        return b * std::pow(c * c + a * a, Real(-1.5));
    };
}

} // namespace desitter
