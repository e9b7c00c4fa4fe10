#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <memory>
#include <vector>

#include "curve.hpp"
#include "error.hpp"
#include "frenet.hpp"

namespace desitter {

/**
 * Fornberg's recursion: weights w[i][k] such that sum_i w[i][k] f(nodes[i])
 * approximates the k-th derivative (k = 0..3) of f at z, exact for
 * polynomials of degree nodes.size() - 1. Nodes may be unevenly spaced.
 */
inline std::vector<std::array<Real, 4>> fornberg_weights(const std::vector<Real>& nodes, Real z) {
    constexpr int m = 3;
    const std::size_t n = nodes.size();
    std::vector<std::array<Real, 4>> c(n, std::array<Real, 4>{0.0, 0.0, 0.0, 0.0});
    if (n == 0) return c;
    Real c1 = 1.0;
    Real c4 = nodes[0] - z;
    c[0][0] = 1.0;
    for (std::size_t i = 1; i < n; ++i) {
        const int mn = std::min<int>(static_cast<int>(i), m);
        Real c2 = 1.0;
        const Real c5 = c4;
        c4 = nodes[i] - z;
        for (std::size_t j = 0; j < i; ++j) {
            const Real c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k)
                    c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    return c;
}

namespace detail {
struct SampleTable {
    std::vector<Real> t;
    std::vector<Vec4> x;
    std::vector<Vec4> v; // velocities; empty when only positions are known
    std::size_t window;
};

inline void check_table(const SampleTable& d) {
    if (d.t.size() != d.x.size() || (!d.v.empty() && d.v.size() != d.x.size()))
        throw Error(ErrorCode::InvalidArgument, "parameter/point count mismatch");
    if (d.window < 4) throw Error(ErrorCode::InvalidArgument, "interpolation window must hold at least 4 nodes");
    if (d.t.size() < d.window)
        throw Error(ErrorCode::InsufficientSamples, "need at least " + std::to_string(d.window) + " points");
    for (std::size_t i = 1; i < d.t.size(); ++i)
        if (!(d.t[i] > d.t[i - 1])) throw Error(ErrorCode::InvalidArgument, "parameters must increase strictly");
}

inline CurveJet table_jet(const SampleTable& d, Real t) {
    const auto& ts = d.t;
    const std::size_t n = ts.size(), w = d.window;
    auto it = std::lower_bound(ts.begin(), ts.end(), t);
    std::size_t nearest = static_cast<std::size_t>(it - ts.begin());
    if (nearest == n || (nearest > 0 && t - ts[nearest - 1] < ts[nearest] - t)) nearest = nearest == 0 ? 0 : nearest - 1;
    const std::size_t half = w / 2;
    const std::size_t start = std::min(nearest > half ? nearest - half : 0, n - w);
    const std::vector<Real> local(ts.begin() + static_cast<std::ptrdiff_t>(start),
                                  ts.begin() + static_cast<std::ptrdiff_t>(start + w));
    const auto weights = fornberg_weights(local, t);
    CurveJet out{};
    for (std::size_t i = 0; i < w; ++i) {
        const Vec4& p = d.x[start + i];
        out.x += weights[i][0] * p;
        if (d.v.empty()) {
            out.d1 += weights[i][1] * p;
            out.d2 += weights[i][2] * p;
            out.d3 += weights[i][3] * p;
        } else {
            const Vec4& q = d.v[start + i];
            out.d1 += weights[i][0] * q;
            out.d2 += weights[i][1] * q;
            out.d3 += weights[i][2] * q;
        }
    }
    return out;
}

inline ParamCurve table_curve(SampleTable table) {
    check_table(table);
    auto data = std::make_shared<SampleTable>(std::move(table));
    auto jet = [data](Real t) { return table_jet(*data, t); };
    auto position = [data](Real t) { return table_jet(*data, t).x; };
    // tabulated points are the data; between nodes the interpolant may leave the sphere slightly
    std::vector<Real> nodes;
    const std::size_t n = data->t.size();
    for (std::size_t k = 0; k < 17; ++k) nodes.push_back(data->t[k * (n - 1) / 16]);
    return ParamCurve(position, Interval{data->t.front(), data->t.back()}, jet, {}, nodes);
}
} // namespace detail

/**
 * Curve through tabulated points: position and derivatives at t come from a
 * local polynomial through the `window` nodes nearest to t.
 */
inline ParamCurve curve_through_points(std::vector<Real> params, std::vector<Vec4> points, std::size_t window = 9) {
    return detail::table_curve({std::move(params), std::move(points), {}, window});
}

/// As curve_through_points, with known velocities at the nodes; higher
/// derivatives then come from differentiating the velocities.
inline ParamCurve curve_through_points(std::vector<Real> params, std::vector<Vec4> points, std::vector<Vec4> velocities,
                                       std::size_t window = 9) {
    return detail::table_curve({std::move(params), std::move(points), std::move(velocities), window});
}

/// Arc-length curve through integrator output, using each sample's position
/// and unit tangent.
inline ParamCurve curve_through_samples(const std::vector<FramedSample>& samples, std::size_t window = 9) {
    std::vector<Real> s;
    std::vector<Vec4> x, v;
    s.reserve(samples.size());
    x.reserve(samples.size());
    v.reserve(samples.size());
    for (const auto& f : samples) {
        s.push_back(f.s);
        x.push_back(f.alpha);
        v.push_back(f.T);
    }
    const Real origin = samples.empty() ? 0.0 : samples.front().s;
    return curve_through_points(std::move(s), std::move(x), std::move(v), window).as_arc_length(origin);
}

/// Re-extracts frames and curvatures at every sample's arc length.
inline std::vector<FramedSample> extract_frames(const ParamCurve& c, const std::vector<Real>& params) {
    std::vector<FramedSample> out;
    out.reserve(params.size());
    for (Real t : params) out.push_back(frame_at(c, t));
    return out;
}

} // namespace desitter
