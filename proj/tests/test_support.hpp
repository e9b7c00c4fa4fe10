#pragma once

#include <random>

#include <Eigen/Dense>

#include "desitter/minkowski.hpp"

namespace desitter::support {

inline std::mt19937_64& rng() {
    static std::mt19937_64 gen(20261016);
    return gen;
}

inline Real uniform(Real lo, Real hi) { return std::uniform_real_distribution<Real>(lo, hi)(rng()); }

inline Vec4 random_vec(Real scale = 1.0) {
    return {uniform(-scale, scale), uniform(-scale, scale), uniform(-scale, scale), uniform(-scale, scale)};
}

/// Independent determinant oracle (LU via Eigen).
inline Real det_oracle(const Vec4& a, const Vec4& b, const Vec4& c, const Vec4& d) {
    Eigen::Matrix<Real, 4, 4> m;
    for (int j = 0; j < 4; ++j) {
        m(0, j) = a[j];
        m(1, j) = b[j];
        m(2, j) = c[j];
        m(3, j) = d[j];
    }
    return m.determinant();
}

/// Random point of S^3_1: a spacelike vector scaled to <x,x> = 1.
inline Vec4 random_point() {
    for (;;) {
        Vec4 v = random_vec(2.0);
        const Real q = lorentz_dot(v, v);
        if (q > 0.2) return v / std::sqrt(q);
    }
}

/// Random vector tangent at q.
inline Vec4 random_tangent(const Vec4& q) {
    const Vec4 w = random_vec();
    return w - lorentz_dot(w, q) * q;
}

} // namespace desitter::support
