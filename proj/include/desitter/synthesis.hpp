#pragma once

#include <algorithm>
#include <functional>
#include <vector>

#include "curve.hpp"
#include "error.hpp"
#include "frenet.hpp"
#include "integrate.hpp"
#include "tolerances.hpp"

namespace desitter {

/// Prescribed geodesic curvature and torsion as functions of arc length.
struct CurvatureProfile {
    std::function<Real(Real)> kappa_g;
    std::function<Real(Real)> tau_g;
};

/// alpha = e2, T = e1, N = e3, B = e4 at arc length s.
inline FramedSample canonical_frame(Real s = 0.0) {
    FramedSample f;
    f.t = s;
    f.s = s;
    f.alpha = basis::e2;
    f.T = basis::e1;
    f.N = basis::e3;
    f.B = basis::e4;
    return f;
}

/**
 * Integrates the Frenet system
 *   alpha' = T, T' = alpha + kappa_g N, N' = kappa_g T + tau_g B, B' = -tau_g N
 * from `init` (whose s must lie in `s_range`) forward and backward over the
 * range. Returns samples ordered by increasing s; each carries the prescribed
 * curvature and torsion at its grid point.
 */
inline std::vector<FramedSample> synthesize_from_curvatures(const CurvatureProfile& profile, const FramedSample& init,
                                                            Interval s_range, Real step) {
    if (!profile.kappa_g || !profile.tau_g) throw Error(ErrorCode::InvalidArgument, "profile needs both functions");
    if (!(step > 0.0)) throw Error(ErrorCode::InvalidArgument, "step must be positive");
    if (!(s_range.hi > s_range.lo) || !s_range.contains(init.s))
        throw Error(ErrorCode::InvalidArgument, "initial arc length must lie in the synthesis range");
    if (frame_gram_error(init) > tol::frame || binormal_error(init) > tol::frame)
        throw Error(ErrorCode::DegenerateFrame, "initial frame is not pseudo-orthonormal with B = alpha x T x N");

    auto rhs = [&profile](Real s, const FrameState<4>& y) {
        const Real k = profile.kappa_g(s), t = profile.tau_g(s);
        return FrameState<4>{y[1], y[0] + k * y[2], k * y[1] + t * y[3], -t * y[2]};
    };
    auto sample = [&profile](Real s, const FrameState<4>& y) {
        FramedSample f;
        f.t = s;
        f.s = s;
        f.alpha = y[0];
        f.T = y[1];
        f.N = y[2];
        f.B = y[3];
        f.kappa_g = profile.kappa_g(s);
        f.tau_g = profile.tau_g(s);
        return f;
    };

    const FrameState<4> y0{init.alpha, init.T, init.N, init.B};
    std::vector<FramedSample> backward, forward;
    integrate_frame<4>(rhs, y0, march_grid(init.s, s_range.lo, step), frame_signatures,
                       [&](Real s, const FrameState<4>& y) { backward.push_back(sample(s, y)); });
    integrate_frame<4>(rhs, y0, march_grid(init.s, s_range.hi, step), frame_signatures,
                       [&](Real s, const FrameState<4>& y) { forward.push_back(sample(s, y)); });

    std::vector<FramedSample> out(backward.rbegin(), backward.rend());
    out.insert(out.end(), forward.begin() + 1, forward.end());
    return out;
}

} // namespace desitter
