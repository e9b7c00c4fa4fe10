#pragma once

#include <cmath>

#include "real.hpp"

namespace desitter {

/**
 * A scalar together with its first three derivatives with respect to one
 * independent parameter. Arithmetic propagates derivatives exactly, so curve
 * formulas written once as generic lambdas give analytic velocity,
 * acceleration and jerk without finite differences.
 */
struct Jet3 {
    Real v = 0.0;
    Real d1 = 0.0;
    Real d2 = 0.0;
    Real d3 = 0.0;

    constexpr Jet3() = default;
    constexpr Jet3(Real value) : v(value) {} // NOLINT: implicit constant promotion
    constexpr Jet3(Real value, Real first, Real second, Real third)
        : v(value), d1(first), d2(second), d3(third) {}

    static constexpr Jet3 variable(Real t) { return {t, 1.0, 0.0, 0.0}; }

    constexpr Jet3& operator+=(const Jet3& o) {
        v += o.v; d1 += o.d1; d2 += o.d2; d3 += o.d3;
        return *this;
    }
    constexpr Jet3& operator-=(const Jet3& o) {
        v -= o.v; d1 -= o.d1; d2 -= o.d2; d3 -= o.d3;
        return *this;
    }
    constexpr Jet3& operator*=(const Jet3& o);
    constexpr Jet3& operator/=(const Jet3& o);

    constexpr bool operator==(const Jet3&) const = default;
};

constexpr Jet3 operator-(const Jet3& a) { return {-a.v, -a.d1, -a.d2, -a.d3}; }
constexpr Jet3 operator+(Jet3 a, const Jet3& b) { return a += b; }
constexpr Jet3 operator-(Jet3 a, const Jet3& b) { return a -= b; }

constexpr Jet3 operator*(const Jet3& a, const Jet3& b) {
    return {a.v * b.v,
            a.d1 * b.v + a.v * b.d1,
            a.d2 * b.v + 2.0 * a.d1 * b.d1 + a.v * b.d2,
            a.d3 * b.v + 3.0 * a.d2 * b.d1 + 3.0 * a.d1 * b.d2 + a.v * b.d3};
}

/// Chain rule: returns f(g) given f and its first three derivatives at g.v.
constexpr Jet3 compose(const Jet3& g, Real f0, Real f1, Real f2, Real f3) {
    return {f0,
            f1 * g.d1,
            f2 * g.d1 * g.d1 + f1 * g.d2,
            f3 * g.d1 * g.d1 * g.d1 + 3.0 * f2 * g.d1 * g.d2 + f1 * g.d3};
}

constexpr Jet3 reciprocal(const Jet3& a) {
    const Real r = 1.0 / a.v;
    return compose(a, r, -r * r, 2.0 * r * r * r, -6.0 * r * r * r * r);
}

constexpr Jet3 operator/(const Jet3& a, const Jet3& b) { return a * reciprocal(b); }

constexpr Jet3& Jet3::operator*=(const Jet3& o) { return *this = *this * o; }
constexpr Jet3& Jet3::operator/=(const Jet3& o) { return *this = *this / o; }

inline Jet3 sin(const Jet3& a) {
    const Real s = std::sin(a.v), c = std::cos(a.v);
    return compose(a, s, c, -s, -c);
}

inline Jet3 cos(const Jet3& a) {
    const Real s = std::sin(a.v), c = std::cos(a.v);
    return compose(a, c, -s, -c, s);
}

inline Jet3 tan(const Jet3& a) {
    const Real t = std::tan(a.v);
    const Real sec2 = 1.0 + t * t;
    return compose(a, t, sec2, 2.0 * t * sec2, sec2 * (2.0 + 6.0 * t * t));
}

inline Jet3 sinh(const Jet3& a) {
    const Real s = std::sinh(a.v), c = std::cosh(a.v);
    return compose(a, s, c, s, c);
}

inline Jet3 cosh(const Jet3& a) {
    const Real s = std::sinh(a.v), c = std::cosh(a.v);
    return compose(a, c, s, c, s);
}

inline Jet3 tanh(const Jet3& a) {
    const Real t = std::tanh(a.v);
    const Real w = 1.0 - t * t;
    return compose(a, t, w, -2.0 * t * w, w * (6.0 * t * t - 2.0));
}

inline Jet3 exp(const Jet3& a) {
    const Real e = std::exp(a.v);
    return compose(a, e, e, e, e);
}

inline Jet3 log(const Jet3& a) {
    const Real r = 1.0 / a.v;
    return compose(a, std::log(a.v), r, -r * r, 2.0 * r * r * r);
}

inline Jet3 sqrt(const Jet3& a) {
    const Real r = std::sqrt(a.v);
    return compose(a, r, 0.5 / r, -0.25 / (a.v * r), 0.375 / (a.v * a.v * r));
}

inline Jet3 pow(const Jet3& a, Real p) {
    return compose(a, std::pow(a.v, p), p * std::pow(a.v, p - 1.0),
                   p * (p - 1.0) * std::pow(a.v, p - 2.0),
                   p * (p - 1.0) * (p - 2.0) * std::pow(a.v, p - 3.0));
}

inline Jet3 atan(const Jet3& a) {
    const Real q = 1.0 / (1.0 + a.v * a.v);
    return compose(a, std::atan(a.v), q, -2.0 * a.v * q * q, (6.0 * a.v * a.v - 2.0) * q * q * q);
}

inline Jet3 acos(const Jet3& a) {
    const Real w = 1.0 - a.v * a.v;
    const Real r = 1.0 / std::sqrt(w);
    return compose(a, std::acos(a.v), -r, -a.v * r / w, -(1.0 + 2.0 * a.v * a.v) * r / (w * w));
}

inline Jet3 atanh(const Jet3& a) {
    const Real q = 1.0 / (1.0 - a.v * a.v);
    return compose(a, std::atanh(a.v), q, 2.0 * a.v * q * q, (2.0 + 6.0 * a.v * a.v) * q * q * q);
}

inline Real sech(Real x) { return 1.0 / std::cosh(x); }
inline Jet3 sech(const Jet3& a) { return reciprocal(cosh(a)); }

/// Value part for both plain scalars and jets, for generic code.
constexpr Real value_of(Real x) { return x; }
constexpr Real value_of(const Jet3& x) { return x.v; }

} // namespace desitter
