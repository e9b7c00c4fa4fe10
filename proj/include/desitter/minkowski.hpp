#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <ostream>
#include <type_traits>

#include "error.hpp"
#include "jet.hpp"
#include "tolerances.hpp"

namespace desitter {

/**
 * Four components in R^4_1. Index 0 is the timelike axis, so the scalar
 * product is -x0*y0 + x1*y1 + x2*y2 + x3*y3. The component type is a template
 * parameter so that the same formulas run on doubles and on Jet3.
 */
template <class T>
struct BasicVec4 {
    std::array<T, 4> x{};

    constexpr BasicVec4() = default;
    constexpr BasicVec4(T a, T b, T c, T d) : x{a, b, c, d} {}

    constexpr T& operator[](std::size_t i) { return x[i]; }
    constexpr const T& operator[](std::size_t i) const { return x[i]; }

    constexpr BasicVec4& operator+=(const BasicVec4& o) {
        for (std::size_t i = 0; i < 4; ++i) x[i] += o.x[i];
        return *this;
    }
    constexpr BasicVec4& operator-=(const BasicVec4& o) {
        for (std::size_t i = 0; i < 4; ++i) x[i] -= o.x[i];
        return *this;
    }
    template <class S>
    constexpr BasicVec4& operator*=(const S& s) {
        for (auto& c : x) c *= s;
        return *this;
    }
    template <class S>
    constexpr BasicVec4& operator/=(const S& s) {
        for (auto& c : x) c /= s;
        return *this;
    }

    constexpr bool operator==(const BasicVec4&) const = default;
};

using Vec4 = BasicVec4<Real>;
using JetVec4 = BasicVec4<Jet3>;

template <class T>
struct is_vec4 : std::false_type {};
template <class T>
struct is_vec4<BasicVec4<T>> : std::true_type {};

template <class T>
constexpr BasicVec4<T> operator-(BasicVec4<T> a) {
    for (auto& c : a.x) c = -c;
    return a;
}
template <class T>
constexpr BasicVec4<T> operator+(BasicVec4<T> a, const BasicVec4<T>& b) { return a += b; }
template <class T>
constexpr BasicVec4<T> operator-(BasicVec4<T> a, const BasicVec4<T>& b) { return a -= b; }

template <class T, class S>
    requires(!is_vec4<S>::value)
constexpr BasicVec4<T> operator*(BasicVec4<T> a, const S& s) {
    for (auto& c : a.x) c = c * s;
    return a;
}
template <class T, class S>
    requires(!is_vec4<S>::value)
constexpr BasicVec4<T> operator*(const S& s, BasicVec4<T> a) {
    for (auto& c : a.x) c = s * c;
    return a;
}
template <class T, class S>
    requires(!is_vec4<S>::value)
constexpr BasicVec4<T> operator/(BasicVec4<T> a, const S& s) {
    for (auto& c : a.x) c = c / s;
    return a;
}

/// Scaling a Real vector by a jet lifts it to a jet vector.
inline JetVec4 operator*(const Jet3& s, const Vec4& a) {
    return {s * a[0], s * a[1], s * a[2], s * a[3]};
}

inline std::ostream& operator<<(std::ostream& os, const Vec4& v) {
    return os << '(' << v[0] << ", " << v[1] << ", " << v[2] << ", " << v[3] << ')';
}

namespace basis {
inline constexpr Vec4 e1{1.0, 0.0, 0.0, 0.0};
inline constexpr Vec4 e2{0.0, 1.0, 0.0, 0.0};
inline constexpr Vec4 e3{0.0, 0.0, 1.0, 0.0};
inline constexpr Vec4 e4{0.0, 0.0, 0.0, 1.0};
} // namespace basis

/// Lorentzian scalar product -x1*y1 + x2*y2 + x3*y3 + x4*y4.
template <class T>
constexpr T lorentz_dot(const BasicVec4<T>& a, const BasicVec4<T>& b) {
    return -(a[0] * b[0]) + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

/// sqrt(|<x,x>|).
inline Real lorentz_norm(const Vec4& a) { return std::sqrt(std::abs(lorentz_dot(a, a))); }

inline Real euclidean_norm(const Vec4& a) {
    return std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2] + a[3] * a[3]);
}

inline Real max_abs_diff(const Vec4& a, const Vec4& b) {
    Real m = 0.0;
    for (std::size_t i = 0; i < 4; ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

enum class CausalCharacter { Spacelike, Timelike, Null };

constexpr const char* to_string(CausalCharacter c) {
    switch (c) {
        case CausalCharacter::Spacelike: return "spacelike";
        case CausalCharacter::Timelike: return "timelike";
        case CausalCharacter::Null: return "null";
    }
    return "?";
}

inline CausalCharacter causal_character(const Vec4& a, Real tolerance = tol::causal) {
    if (!(tolerance > 0.0)) throw Error(ErrorCode::InvalidArgument, "causal tolerance must be positive");
    const Real q = lorentz_dot(a, a);
    if (std::abs(q) <= tolerance) return CausalCharacter::Null;
    return q < 0.0 ? CausalCharacter::Timelike : CausalCharacter::Spacelike;
}

namespace detail {
template <class T>
constexpr T det3(const T& a, const T& b, const T& c,
                 const T& d, const T& e, const T& f,
                 const T& g, const T& h, const T& i) {
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g);
}

// Minor of the 3x4 block (x;y;z) with column `skip` removed.
template <class T>
constexpr T minor3(const BasicVec4<T>& x, const BasicVec4<T>& y, const BasicVec4<T>& z, std::size_t skip) {
    std::array<std::size_t, 3> c{};
    std::size_t k = 0;
    for (std::size_t j = 0; j < 4; ++j)
        if (j != skip) c[k++] = j;
    return det3(x[c[0]], x[c[1]], x[c[2]],
                y[c[0]], y[c[1]], y[c[2]],
                z[c[0]], z[c[1]], z[c[2]]);
}
} // namespace detail

/// Determinant of the 4x4 matrix whose rows are a, b, c, d (Euclidean
/// component determinant, cofactor expansion along the first row).
template <class T>
constexpr T det4(const BasicVec4<T>& a, const BasicVec4<T>& b, const BasicVec4<T>& c, const BasicVec4<T>& d) {
    return a[0] * detail::minor3(b, c, d, 0) - a[1] * detail::minor3(b, c, d, 1)
         + a[2] * detail::minor3(b, c, d, 2) - a[3] * detail::minor3(b, c, d, 3);
}

/**
 * Triple wedge product x × y × z: the formal determinant with first row
 * (-e1, e2, e3, e4). Satisfies <w, x×y×z> = det(w, x, y, z) for every w.
 */
template <class T>
constexpr BasicVec4<T> wedge3(const BasicVec4<T>& x, const BasicVec4<T>& y, const BasicVec4<T>& z) {
    return {-detail::minor3(x, y, z, 0), -detail::minor3(x, y, z, 1),
            detail::minor3(x, y, z, 2), -detail::minor3(x, y, z, 3)};
}

/**
 * A point of the De Sitter space S^3_1 = {<x,x> = 1}. Inputs within
 * tol::sphere are kept verbatim; inputs off by less than
 * tol::sphere_projection are rescaled once; anything else is rejected.
 */
class PointOnS13 {
public:
    PointOnS13(const Vec4& v) : v_(v) { // NOLINT: implicit from Vec4 is the common case
        const Real q = lorentz_dot(v, v);
        if (!std::isfinite(q)) throw Error(ErrorCode::NotOnSphere, "non-finite components");
        const Real dev = std::abs(q - 1.0);
        if (dev <= tol::sphere) return;
        if (dev < tol::sphere_projection) {
            v_ = v / std::sqrt(q);
            return;
        }
        throw Error(ErrorCode::NotOnSphere, "<x,x> = " + std::to_string(q));
    }

    [[nodiscard]] const Vec4& vec() const noexcept { return v_; }
    operator const Vec4&() const noexcept { return v_; } // NOLINT
    Real operator[](std::size_t i) const { return v_[i]; }

private:
    Vec4 v_;
};

/**
 * Cross product in T_q S^3_1 induced from the wedge product: u ∧ v = q × u × v.
 * For tangent w this satisfies <w, u ∧ v> = -det(q, u, v, w).
 */
inline Vec4 tangent_cross(const PointOnS13& q, const Vec4& u, const Vec4& v, Real tolerance = tol::tangent) {
    if (std::abs(lorentz_dot(q.vec(), u)) > tolerance || std::abs(lorentz_dot(q.vec(), v)) > tolerance)
        throw Error(ErrorCode::NotTangent, "cross product arguments must be tangent at q");
    return wedge3(q.vec(), u, v);
}

/// Largest deviation of the Gram matrix of `vectors` from diag(signatures).
template <std::size_t N>
Real gram_error(const std::array<Vec4, N>& vectors, const std::array<int, N>& signatures) {
    Real worst = 0.0;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = i; j < N; ++j) {
            const Real target = i == j ? static_cast<Real>(signatures[i]) : 0.0;
            worst = std::max(worst, std::abs(lorentz_dot(vectors[i], vectors[j]) - target));
        }
    return worst;
}

/**
 * Lorentzian Gram-Schmidt. The first vector keeps its direction; each later
 * vector is projected off the earlier ones and scaled so that
 * <v_i, v_i> = signatures[i]. A projected vector whose squared norm is tiny
 * or of the wrong sign makes the frame degenerate.
 */
template <std::size_t N>
std::array<Vec4, N> reorthonormalize_frame(const std::array<Vec4, N>& vectors, const std::array<int, N>& signatures) {
    std::array<Vec4, N> out{};
    for (std::size_t i = 0; i < N; ++i) {
        Vec4 u = vectors[i];
        // two passes of modified Gram-Schmidt
        for (int pass = 0; pass < 2; ++pass)
            for (std::size_t j = 0; j < i; ++j)
                u -= (signatures[j] * lorentz_dot(u, out[j])) * out[j];
        const Real q = lorentz_dot(u, u);
        if (std::abs(q) < tol::degenerate || q * signatures[i] <= 0.0)
            throw Error(ErrorCode::DegenerateFrame, "vector " + std::to_string(i) + " has <v,v> = " + std::to_string(q));
        out[i] = u / std::sqrt(std::abs(q));
    }
    return out;
}

} // namespace desitter
