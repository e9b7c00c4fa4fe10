#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "jet.hpp"
#include "minkowski.hpp"
#include "tolerances.hpp"

namespace desitter {

struct Interval {
    Real lo = 0.0;
    Real hi = 0.0;

    [[nodiscard]] constexpr Real length() const { return hi - lo; }
    [[nodiscard]] constexpr bool contains(Real t) const { return t >= lo && t <= hi; }
};

/// Position and its first three derivatives at one parameter value.
struct CurveJet {
    Vec4 x, d1, d2, d3;
};

inline CurveJet to_curve_jet(const JetVec4& j) {
    CurveJet out;
    for (std::size_t i = 0; i < 4; ++i) {
        out.x[i] = j[i].v;
        out.d1[i] = j[i].d1;
        out.d2[i] = j[i].d2;
        out.d3[i] = j[i].d3;
    }
    return out;
}

inline JetVec4 to_jet_vec(const CurveJet& c) {
    JetVec4 out;
    for (std::size_t i = 0; i < 4; ++i) out[i] = Jet3(c.x[i], c.d1[i], c.d2[i], c.d3[i]);
    return out;
}

/// x(g(s)) given the jet of x at g.v (in its own parameter) and the jet of g.
inline JetVec4 compose(const CurveJet& outer, const Jet3& inner) {
    JetVec4 out;
    for (std::size_t i = 0; i < 4; ++i)
        out[i] = compose(inner, outer.x[i], outer.d1[i], outer.d2[i], outer.d3[i]);
    return out;
}

/// Central-difference steps used when a curve has no analytic derivatives.
struct DifferenceSteps {
    Real first = 1e-4;  // order 1
    Real higher = 1e-3; // orders 2 and 3
};

/**
 * A parametrized curve t ↦ x(t) in S^3_1 on a closed domain.
 *
 * Derivatives come from an analytic jet evaluator when one is supplied and
 * from once-Richardson-extrapolated central differences otherwise. The
 * arc-length origin is the arc length assigned to domain().lo (0 unless set).
 */
class ParamCurve {
public:
    using PointFn = std::function<Vec4(Real)>;
    using JetFn = std::function<CurveJet(Real)>;

    /// Membership in S^3_1 is checked at `probes`, or at 17 evenly spaced
    /// parameters when none are given.
    ParamCurve(PointFn position, Interval domain, JetFn jet = {}, DifferenceSteps steps = {},
               const std::vector<Real>& probes = {})
        : position_(std::move(position)), jet_(std::move(jet)), domain_(domain), steps_(steps) {
        if (!position_) throw Error(ErrorCode::InvalidArgument, "curve needs a position evaluator");
        if (!(domain_.hi > domain_.lo)) throw Error(ErrorCode::InvalidArgument, "empty curve domain");
        if (probes.empty()) {
            constexpr int count = 17;
            for (int k = 0; k < count; ++k) check_membership(domain_.lo + domain_.length() * k / (count - 1));
        } else {
            for (Real t : probes) check_membership(t);
        }
    }

    /// Builds a curve from one generic callable usable with both Real and
    /// Jet3 arguments (returning BasicVec4 of the same scalar type).
    template <class F>
    static ParamCurve from_generic(F f, Interval domain) {
        auto fn = std::make_shared<F>(std::move(f));
        return ParamCurve([fn](Real t) { return (*fn)(t); }, domain,
                          [fn](Real t) { return to_curve_jet((*fn)(Jet3::variable(t))); });
    }

    Vec4 operator()(Real t) const { return position_(t); }

    [[nodiscard]] CurveJet derivatives(Real t) const {
        if (jet_) return jet_(t);
        return finite_difference_jet(t);
    }

    [[nodiscard]] bool has_analytic_derivatives() const noexcept { return static_cast<bool>(jet_); }
    [[nodiscard]] const Interval& domain() const noexcept { return domain_; }
    [[nodiscard]] Real arc_length_origin() const noexcept { return s_origin_; }
    [[nodiscard]] bool is_unit_speed() const noexcept { return unit_speed_; }

    /// Marks the curve as parametrized by arc length, with s = origin + (t - domain.lo).
    [[nodiscard]] ParamCurve as_arc_length(Real origin = 0.0) const {
        ParamCurve c = *this;
        c.unit_speed_ = true;
        c.s_origin_ = origin;
        return c;
    }

    [[nodiscard]] ParamCurve with_arc_length_origin(Real origin) const {
        ParamCurve c = *this;
        c.s_origin_ = origin;
        return c;
    }

private:
    void check_membership(Real t) const {
        const Vec4 p = position_(t);
        const Real q = lorentz_dot(p, p);
        if (!(std::abs(q - 1.0) <= tol::sphere))
            throw Error(ErrorCode::NotOnSphere, "curve point at t=" + std::to_string(t) + " has <x,x> = " + std::to_string(q), t);
    }

    [[nodiscard]] CurveJet finite_difference_jet(Real t) const {
        const auto& f = position_;
        auto d1 = [&](Real h) { return (f(t + h) - f(t - h)) / (2.0 * h); };
        auto d2 = [&](Real h) { return (f(t + h) - 2.0 * f(t) + f(t - h)) / (h * h); };
        auto d3 = [&](Real h) {
            return (f(t + 2.0 * h) - 2.0 * f(t + h) + 2.0 * f(t - h) - f(t - 2.0 * h)) / (2.0 * h * h * h);
        };
        auto richardson = [](const Vec4& coarse, const Vec4& fine) { return (4.0 * fine - coarse) / 3.0; };
        const Real h1 = steps_.first, h2 = steps_.higher;
        return {f(t), richardson(d1(h1), d1(0.5 * h1)), richardson(d2(h2), d2(0.5 * h2)),
                richardson(d3(h2), d3(0.5 * h2))};
    }

    PointFn position_;
    JetFn jet_;
    Interval domain_;
    DifferenceSteps steps_;
    Real s_origin_ = 0.0;
    bool unit_speed_ = false;
};

namespace detail {
// 8-point Gauss-Legendre rule on [-1, 1].
inline constexpr std::array<Real, 8> gl_nodes{
    -0.96028985649753623168L, -0.79666647741362673959L, -0.52553240991632898582L, -0.18343464249564980494L,
    0.18343464249564980494L,  0.52553240991632898582L,  0.79666647741362673959L,  0.96028985649753623168L};
inline constexpr std::array<Real, 8> gl_weights{
    0.10122853629037625915L, 0.22238103445337447054L, 0.31370664587788728734L, 0.36268378337836198297L,
    0.36268378337836198297L, 0.31370664587788728734L, 0.22238103445337447054L, 0.10122853629037625915L};

template <class F>
Real gauss_legendre(F&& f, Real a, Real b) {
    const Real half = 0.5 * (b - a), mid = 0.5 * (a + b);
    Real sum = 0.0;
    for (std::size_t i = 0; i < gl_nodes.size(); ++i) sum += gl_weights[i] * f(mid + half * gl_nodes[i]);
    return half * sum;
}

template <class F>
Real composite_gauss_legendre(F&& f, Real a, Real b, Real max_panel) {
    if (a == b) return 0.0;
    const auto panels = static_cast<std::size_t>(std::ceil(std::abs(b - a) / max_panel));
    const std::size_t n = std::max<std::size_t>(panels, 1);
    const Real h = (b - a) / static_cast<Real>(n);
    Real sum = 0.0;
    for (std::size_t k = 0; k < n; ++k) sum += gauss_legendre(f, a + h * k, a + h * (k + 1));
    return sum;
}
} // namespace detail

/// Speed sqrt(-<x',x'>) of a timelike curve; throws NotTimelike otherwise.
inline Real timelike_speed(const Vec4& velocity, Real t, Real tolerance = tol::causal) {
    const Real q = lorentz_dot(velocity, velocity);
    if (!(q < -tolerance))
        throw Error(ErrorCode::NotTimelike, "<x',x'> = " + std::to_string(q) + " at t=" + std::to_string(t), t);
    return std::sqrt(-q);
}

/// Arc length of a timelike curve between two parameter values (signed).
inline Real arc_length(const ParamCurve& c, Real t_from, Real t_to, Real max_panel = 1e-2) {
    auto speed = [&](Real t) { return timelike_speed(c.derivatives(t).d1, t); };
    return detail::composite_gauss_legendre(speed, t_from, t_to, max_panel);
}

/// Arc length s(t) with s(domain.lo) = arc_length_origin().
inline Real arc_length_at(const ParamCurve& c, Real t) {
    if (c.is_unit_speed()) return c.arc_length_origin() + (t - c.domain().lo);
    return c.arc_length_origin() + arc_length(c, c.domain().lo, t);
}

/**
 * Reparametrizes a timelike curve by arc length, with s = 0 at the start of
 * its domain. The parameter map is tabulated by Gauss-Legendre quadrature
 * and inverted by Newton's method; derivatives of the result follow from the
 * chain rule applied to the base curve's derivatives, so analytic base
 * derivatives stay analytic.
 */
inline ParamCurve arclength_reparametrize(const ParamCurve& c, std::size_t panels = 1024) {
    struct Table {
        ParamCurve base;
        std::vector<Real> t;
        std::vector<Real> s;
    };
    auto table = std::make_shared<Table>(Table{c, {}, {}});
    const Interval dom = c.domain();
    const Real h = dom.length() / static_cast<Real>(panels);
    auto speed = [&c](Real t) { return timelike_speed(c.derivatives(t).d1, t); };

    table->t.reserve(panels + 1);
    table->s.reserve(panels + 1);
    table->t.push_back(dom.lo);
    table->s.push_back(0.0);
    for (std::size_t k = 0; k < panels; ++k) {
        const Real a = dom.lo + h * k;
        const Real b = k + 1 == panels ? dom.hi : dom.lo + h * (k + 1);
        speed(a);
        table->t.push_back(b);
        table->s.push_back(table->s.back() + detail::gauss_legendre(speed, a, b));
    }
    speed(dom.hi);

    auto param_at = [table](Real s) {
        const auto& ts = table->t;
        const auto& ss = table->s;
        s = std::clamp(s, ss.front(), ss.back());
        auto it = std::upper_bound(ss.begin(), ss.end(), s);
        std::size_t k = it == ss.begin() ? 0 : static_cast<std::size_t>(it - ss.begin()) - 1;
        if (k + 1 >= ss.size()) k = ss.size() - 2;
        const Real t0 = ts[k], t1 = ts[k + 1], s0 = ss[k], s1 = ss[k + 1];
        Real t = t0 + (t1 - t0) * (s - s0) / (s1 - s0);
        auto sp = [&](Real u) {
            const Vec4 d1 = table->base.derivatives(u).d1;
            return std::sqrt(-lorentz_dot(d1, d1));
        };
        for (int iter = 0; iter < 30; ++iter) {
            const Real f = s0 + detail::gauss_legendre(sp, t0, t) - s;
            const Real dt = f / sp(t);
            t = std::clamp(t - dt, t0, t1);
            if (std::abs(dt) <= 1e-15 * std::max<Real>(1.0, std::abs(t))) break;
        }
        return t;
    };

    auto jet = [table, param_at](Real s) {
        const Real t = param_at(s);
        const CurveJet j = table->base.derivatives(t);
        const Real v = std::sqrt(-lorentz_dot(j.d1, j.d1));
        const Real vp = -lorentz_dot(j.d1, j.d2) / v;
        const Real vpp = (-lorentz_dot(j.d2, j.d2) - lorentz_dot(j.d1, j.d3) - vp * vp) / v;
        const Jet3 tj(t, 1.0 / v, -vp / (v * v * v), (3.0 * vp * vp - v * vpp) / std::pow(v, 5));
        return to_curve_jet(compose(j, tj));
    };
    auto position = [table, param_at](Real s) { return table->base(param_at(s)); };

    return ParamCurve(position, Interval{0.0, table->s.back()}, jet).as_arc_length(0.0);
}

} // namespace desitter
