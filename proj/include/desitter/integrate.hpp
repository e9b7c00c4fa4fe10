#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "error.hpp"
#include "minkowski.hpp"
#include "tolerances.hpp"

namespace desitter {

template <std::size_t N>
using FrameState = std::array<Vec4, N>;

template <std::size_t N>
FrameState<N> axpy(const FrameState<N>& y, Real h, const FrameState<N>& k) {
    FrameState<N> out = y;
    for (std::size_t i = 0; i < N; ++i) out[i] += h * k[i];
    return out;
}

/// One classical fourth-order Runge-Kutta step of y' = f(s, y).
template <std::size_t N, class F>
FrameState<N> rk4_step(F&& f, Real s, const FrameState<N>& y, Real h) {
    const FrameState<N> k1 = f(s, y);
    const FrameState<N> k2 = f(s + 0.5 * h, axpy(y, 0.5 * h, k1));
    const FrameState<N> k3 = f(s + 0.5 * h, axpy(y, 0.5 * h, k2));
    const FrameState<N> k4 = f(s + h, axpy(y, h, k3));
    FrameState<N> out = y;
    for (std::size_t i = 0; i < N; ++i) out[i] += (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    return out;
}

/**
 * Grid from `start` to `end` in steps of `step` (either direction), ending
 * exactly at `end`; a trailing step shorter than 1e-9 * step is merged.
 */
inline std::vector<Real> march_grid(Real start, Real end, Real step) {
    std::vector<Real> grid{start};
    if (start == end) return grid;
    const Real dir = end > start ? 1.0 : -1.0;
    const Real span = std::abs(end - start);
    const auto full = static_cast<std::size_t>(std::floor(span / step + 1e-9));
    for (std::size_t k = 1; k <= full; ++k) grid.push_back(start + dir * step * static_cast<Real>(k));
    if (std::abs(end - grid.back()) > 1e-9 * step) grid.push_back(end);
    else grid.back() = end;
    return grid;
}

/**
 * Integrates a pseudo-orthonormal frame system over `grid` with a Gram-Schmidt
 * projection after every step. `emit(s, state)` is called at each grid point,
 * including the first.
 */
template <std::size_t N, class F, class Emit>
void integrate_frame(F&& f, const FrameState<N>& init, const std::vector<Real>& grid,
                     const std::array<int, N>& signatures, Emit&& emit) {
    FrameState<N> y = init;
    emit(grid.front(), y);
    for (std::size_t k = 1; k < grid.size(); ++k) {
        const Real s = grid[k - 1];
        FrameState<N> next = rk4_step<N>(f, s, y, grid[k] - s);
        const Real drift = gram_error(next, signatures);
        if (drift > tol::drift)
            throw Error(ErrorCode::FrameDrift, "frame drift " + std::to_string(drift) + " in one step at s=" + std::to_string(s), s);
        y = reorthonormalize_frame(next, signatures);
        emit(grid[k], y);
    }
}

} // namespace desitter
