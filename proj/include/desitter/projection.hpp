#pragma once

#include <array>
#include <cmath>
#include <string>

#include "error.hpp"
#include "minkowski.hpp"
#include "tolerances.hpp"

namespace desitter {

/**
 * Stereographic projection of S^3_1 from the pole -pole_sign * e_axis
 * (axis is 1-based and spacelike: 2, 3 or 4):
 *   pi(x) = (x_i)_{i != axis} / (1 + pole_sign * x_axis).
 * The first projected coordinate is always the timelike x1.
 */
struct ProjectionSpec {
    int pole_axis = 2;
    int pole_sign = +1;

    [[nodiscard]] std::size_t index() const { return static_cast<std::size_t>(pole_axis - 1); }

    [[nodiscard]] Vec4 pole() const {
        Vec4 p;
        p[index()] = -static_cast<Real>(pole_sign);
        return p;
    }
};

inline void check_projection(const ProjectionSpec& spec) {
    if (spec.pole_axis < 2 || spec.pole_axis > 4)
        throw Error(ErrorCode::InvalidArgument, "pole axis must be 2, 3 or 4, got " + std::to_string(spec.pole_axis));
    if (spec.pole_sign != 1 && spec.pole_sign != -1)
        throw Error(ErrorCode::InvalidArgument, "pole sign must be +1 or -1");
}

using Vec3 = std::array<Real, 3>;

inline Vec3 stereographic_project(const PointOnS13& x, const ProjectionSpec& spec) {
    check_projection(spec);
    const std::size_t k = spec.index();
    const Real d = 1.0 + spec.pole_sign * x[k];
    if (std::abs(d) <= tol::pole) throw Error(ErrorCode::AtPole, "point is the projection pole");
    Vec3 out{};
    std::size_t j = 0;
    for (std::size_t i = 0; i < 4; ++i)
        if (i != k) out[j++] = x[i] / d;
    return out;
}

/// Inverse projection: D = 2 / (1 + Q(y)) with Q(y) = -y1^2 + y2^2 + y3^2.
inline Vec4 stereographic_unproject(const Vec3& y, const ProjectionSpec& spec) {
    check_projection(spec);
    const Real q = -y[0] * y[0] + y[1] * y[1] + y[2] * y[2];
    if (std::abs(1.0 + q) <= tol::pole) throw Error(ErrorCode::AtPole, "image of the pole's light cone");
    const Real d = 2.0 / (1.0 + q);
    const std::size_t k = spec.index();
    Vec4 x;
    x[k] = spec.pole_sign * (d - 1.0);
    std::size_t j = 0;
    for (std::size_t i = 0; i < 4; ++i)
        if (i != k) x[i] = d * y[j++];
    return x;
}

} // namespace desitter
