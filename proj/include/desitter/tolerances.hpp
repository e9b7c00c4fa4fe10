#pragma once

namespace desitter::tol {

// |<x,x>| at or below this classifies a vector as null.
inline constexpr double causal = 1e-9;
// Accepted deviation of <x,x> from 1 for points of S^3_1.
inline constexpr double sphere = 1e-9;
// Beyond `sphere` but below this, a point is projected back instead of rejected.
inline constexpr double sphere_projection = 1e-6;
// Tangency |<q,u>| tolerance for tangent-space operations.
inline constexpr double tangent = 1e-9;
// Unit-length tolerance for exponential-map directions.
inline constexpr double unit = 1e-9;
// kappa_g at or below this is treated as zero (geodesic point).
inline constexpr double geodesic = 1e-7;
// Gram-matrix tolerance for pseudo-orthonormal frames.
inline constexpr double frame = 1e-8;
// A projected Gram-Schmidt vector with |<v,v>| below this is degenerate.
inline constexpr double degenerate = 1e-10;
// Max pre-projection Gram drift accepted in one integrator step.
inline constexpr double drift = 1e-3;
// |<p,q> - 1| at or below this selects the null (straight line) geodesic.
inline constexpr double line_case = 1e-9;
// Distance from v = 0 or v = pi at which a conical surface is singular.
inline constexpr double apex = 1e-9;
// RMS residual below which a sinh/cosh ratio fit counts as rectifying.
inline constexpr double rectifying_fit = 1e-4;
// Residual below which all apex conditions count as satisfied.
inline constexpr double apex_conditions = 1e-4;
// RMS of <p,N> above which recover_apex reports NotRectifying.
inline constexpr double apex_recovery = 1e-3;
// Residual threshold for the cone geodesic equations.
inline constexpr double cone_geodesic = 1e-4;
// Euclidean distance below which the apex counts as a point of the curve.
inline constexpr double apex_distance = 1e-6;
// Admissibility boundary band where no verdict is assigned.
inline constexpr double admissibility_band = 1e-9;
// Stereographic projection denominator guard.
inline constexpr double pole = 1e-9;

} // namespace desitter::tol
