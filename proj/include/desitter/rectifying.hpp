#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "conical_surface.hpp"
#include "curve.hpp"
#include "error.hpp"
#include "frenet.hpp"
#include "jet.hpp"
#include "minkowski.hpp"
#include "pseudosphere.hpp"
#include "sampled_curve.hpp"
#include "tolerances.hpp"

namespace desitter {

/// Least-squares y ≈ A sinh(s) + B cosh(s).
struct SinhCoshFit {
    Real A = 0.0;
    Real B = 0.0;
    Real rms = 0.0;
};

inline SinhCoshFit fit_sinh_cosh(const std::vector<Real>& s, const std::vector<Real>& y) {
    if (s.size() != y.size()) throw Error(ErrorCode::InvalidArgument, "fit abscissa/ordinate size mismatch");
    if (s.size() < 2) throw Error(ErrorCode::InsufficientSamples, "need at least two points to fit");
    using Mat = Eigen::Matrix<Real, Eigen::Dynamic, 2>;
    using Col = Eigen::Matrix<Real, Eigen::Dynamic, 1>;
    const auto n = static_cast<Eigen::Index>(s.size());
    Mat X(n, 2);
    Col rhs(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        X(i, 0) = std::sinh(s[static_cast<std::size_t>(i)]);
        X(i, 1) = std::cosh(s[static_cast<std::size_t>(i)]);
        rhs(i) = y[static_cast<std::size_t>(i)];
    }
    const Eigen::Matrix<Real, 2, 1> c = X.colPivHouseholderQr().solve(rhs);
    const Col r = X * c - rhs;
    return {c(0), c(1), std::sqrt(r.squaredNorm() / static_cast<Real>(n))};
}

/**
 * tau_g / kappa_g = mu1 sinh(s + s0) + mu2 cosh(s + s0), fitted as
 * A sinh s + B cosh s. When |B| > |A| the shift s0 = atanh(A / B) removes
 * the sinh term; otherwise s0 = 0 and (mu1, mu2) = (A, B). Either way
 * mu2^2 - mu1^2 = B^2 - A^2.
 */
struct RatioFit {
    Real A = 0.0, B = 0.0;
    Real mu1 = 0.0, mu2 = 0.0, s0 = 0.0;
    Real residual_rms = 0.0;
    std::size_t samples = 0;
    bool admissible = false;      // mu2^2 - mu1^2 < 1
    bool near_boundary = false;   // within tol::admissibility_band of mu2^2 - mu1^2 = 1
    std::optional<bool> rectifying; // empty near the boundary

    [[nodiscard]] Real invariant() const { return B * B - A * A; }
};

inline RatioFit ratio_fit_from(const SinhCoshFit& f, std::size_t n, Real tolerance = tol::rectifying_fit) {
    RatioFit r;
    r.A = f.A;
    r.B = f.B;
    r.residual_rms = f.rms;
    r.samples = n;
    if (std::abs(f.B) > std::abs(f.A) + 1e-12) {
        r.s0 = std::atanh(f.A / f.B);
        r.mu1 = 0.0;
        r.mu2 = std::copysign(std::sqrt(f.B * f.B - f.A * f.A), f.B);
    } else {
        r.mu1 = f.A;
        r.mu2 = f.B;
    }
    const Real q = r.invariant();
    r.admissible = q < 1.0;
    r.near_boundary = std::abs(q - 1.0) <= tol::admissibility_band;
    if (!r.near_boundary) r.rectifying = r.admissible && r.residual_rms < tolerance;
    return r;
}

/// Samples with kappa_g at or below tol::geodesic are skipped.
inline RatioFit fit_ratio_form(const std::vector<FramedSample>& samples, Real tolerance = tol::rectifying_fit) {
    std::vector<Real> s, y;
    for (const auto& f : samples) {
        if (f.kappa_g <= tol::geodesic) continue;
        s.push_back(f.s);
        y.push_back(f.tau_g / f.kappa_g);
    }
    if (s.empty() && !samples.empty()) throw Error(ErrorCode::GeodesicCurve, "kappa_g vanishes at every sample");
    if (s.size() < 8)
        throw Error(ErrorCode::InsufficientSamples, "need 8 samples with nonzero kappa_g, got " + std::to_string(s.size()));
    return ratio_fit_from(fit_sinh_cosh(s, y), s.size(), tolerance);
}

/**
 * Residuals of the characterizations of a rectifying curve with apex p.
 * Fits are in arc length: <p,alpha> = m1 sinh + m2 cosh,
 * <p,T> = n1 sinh + n2 cosh, cos(eta) = k1 sinh + k2 cosh where eta is the
 * distance from p. sigma is the mean of <p,B> and n the RMS of |p^perp| in
 * the normal plane span{N, B}.
 *
 * eta exists only where |<p,alpha>| <= 1 (alpha reached from p along a
 * spacelike geodesic); the cos(eta) fit uses those samples and
 * eta_coverage is their fraction.
 */
struct ApexReport {
    Vec4 p;
    Real max_pN = 0.0;
    Real sigma = 0.0, sigma_dev = 0.0;
    Real n1 = 0.0, n2 = 0.0, n_fit_rms = 0.0;
    Real n = 0.0, pperp_dev = 0.0;
    Real unit_identity_residual = 0.0;
    Real m1 = 0.0, m2 = 0.0, m_fit_rms = 0.0;
    Real k1 = 0.0, k2 = 0.0, k_fit_rms = 0.0;
    Real eta_coverage = 0.0;
    bool verdict = false;

    [[nodiscard]] Real max_residual() const {
        return std::max({max_pN, sigma_dev, n_fit_rms, pperp_dev, unit_identity_residual, m_fit_rms, k_fit_rms});
    }
};

inline ApexReport apex_conditions(const std::vector<FramedSample>& samples, const PointOnS13& apex,
                                  Real tolerance = tol::apex_conditions) {
    if (samples.size() < 8) throw Error(ErrorCode::InsufficientSamples, "need at least 8 samples");
    const Vec4& p = apex.vec();
    ApexReport r;
    r.p = p;
    const std::size_t n = samples.size();
    std::vector<Real> s(n), pa(n), pt(n), pn(n), pb(n), s_eta, cos_eta;
    Real min_dist = std::numeric_limits<Real>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        const FramedSample& f = samples[i];
        min_dist = std::min(min_dist, euclidean_norm(p - f.alpha));
        s[i] = f.s;
        pa[i] = lorentz_dot(p, f.alpha);
        pt[i] = lorentz_dot(p, f.T);
        pn[i] = lorentz_dot(p, f.N);
        pb[i] = lorentz_dot(p, f.B);
        if (std::abs(pa[i]) <= 1.0) {
            const Real eta = std::acos(pa[i]); // distance from p
            s_eta.push_back(s[i]);
            cos_eta.push_back(std::cos(eta));
        }
    }
    if (min_dist < tol::apex_distance)
        throw Error(ErrorCode::ApexOnCurve, "apex lies on the curve (distance " + std::to_string(min_dist) + ")");

    Real sum_b = 0.0, sum_perp = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        r.max_pN = std::max(r.max_pN, std::abs(pn[i]));
        sum_b += pb[i];
        sum_perp += pn[i] * pn[i] + pb[i] * pb[i];
    }
    r.sigma = sum_b / static_cast<Real>(n);
    const Real perp2 = sum_perp / static_cast<Real>(n);
    r.n = std::sqrt(perp2);
    for (std::size_t i = 0; i < n; ++i) {
        r.sigma_dev = std::max(r.sigma_dev, std::abs(pb[i] - r.sigma));
        r.pperp_dev = std::max(r.pperp_dev, std::abs(pn[i] * pn[i] + pb[i] * pb[i] - perp2));
    }

    const SinhCoshFit fn = fit_sinh_cosh(s, pt);
    r.n1 = fn.A;
    r.n2 = fn.B;
    r.n_fit_rms = fn.rms;
    r.unit_identity_residual = std::abs(r.n1 * r.n1 - r.n2 * r.n2 + perp2 - 1.0);

    const SinhCoshFit fm = fit_sinh_cosh(s, pa);
    r.m1 = fm.A;
    r.m2 = fm.B;
    r.m_fit_rms = fm.rms;

    r.eta_coverage = static_cast<Real>(s_eta.size()) / static_cast<Real>(n);
    if (s_eta.size() >= 2) {
        const SinhCoshFit fk = fit_sinh_cosh(s_eta, cos_eta);
        r.k1 = fk.A;
        r.k2 = fk.B;
        r.k_fit_rms = fk.rms;
    }

    const bool m_admissible = r.m2 * r.m2 - r.m1 * r.m1 <= 1.0 + tol::admissibility_band;
    r.verdict = m_admissible && r.max_residual() < tolerance;
    return r;
}

/**
 * eta(t) = arctan(a sech(t + t0)), the distance from the apex along a
 * rectifying curve built over a unit-speed directrix.
 */
struct EtaProfile {
    Real a = 1.0;
    Real t0 = 0.0;

    EtaProfile(Real a_, Real t0_) : a(a_), t0(t0_) {
        if (a == 0.0) throw Error(ErrorCode::InvalidArgument, "eta profile needs a != 0");
    }

    template <class T>
    T operator()(const T& t) const {
        using std::atan;
        return atan(a * sech(t + t0));
    }

    [[nodiscard]] Jet3 jet(Real t) const { return (*this)(Jet3::variable(t)); }

    /// sin(eta) eta'' - 2 cos(eta) eta'^2 + cos(eta) sin^2(eta).
    [[nodiscard]] Real ode_residual(Real t) const {
        const Jet3 e = jet(t);
        const Real s = std::sin(e.v), c = std::cos(e.v);
        return s * e.d2 - 2.0 * c * e.d1 * e.d1 + c * s * s;
    }

    /// sin^2(eta) - eta'^2, the squared speed of the constructed curve.
    [[nodiscard]] Real regularity(Real t) const {
        const Jet3 e = jet(t);
        const Real s = std::sin(e.v);
        return s * s - e.d1 * e.d1;
    }
};

/**
 * alpha(t) = cos(eta(t)) p + sin(eta(t)) gamma(t) = exp_p(eta(t) gamma(t))
 * for any eta callable on Jet3. Raises RegularityFailure at the first probe
 * of t_range where alpha is not timelike.
 */
template <class Eta>
ParamCurve exp_cone_curve(const PointOnS13& apex, const ParamCurve& gamma, Eta eta, Interval t_range,
                          std::size_t probes = 1001) {
    if (!(t_range.hi > t_range.lo)) throw Error(ErrorCode::InvalidArgument, "empty parameter range");
    if (t_range.lo < gamma.domain().lo || t_range.hi > gamma.domain().hi)
        throw Error(ErrorCode::InvalidArgument, "range exceeds the directrix domain");
    struct Data {
        Vec4 p;
        ParamCurve gamma;
        Eta eta;
    };
    auto d = std::make_shared<Data>(Data{apex.vec(), gamma, std::move(eta)});
    auto jet = [d](Real t) {
        const Jet3 e = d->eta(Jet3::variable(t));
        const JetVec4 g = to_jet_vec(d->gamma.derivatives(t));
        return to_curve_jet(cos(e) * d->p + sin(e) * g);
    };
    for (std::size_t k = 0; k < probes; ++k) {
        const Real t = t_range.lo + t_range.length() * static_cast<Real>(k) / static_cast<Real>(probes - 1);
        const Vec4 v = jet(t).d1;
        if (!(lorentz_dot(v, v) < -tol::causal))
            throw Error(ErrorCode::RegularityFailure, "curve is not timelike at t=" + std::to_string(t), t);
    }
    auto position = [d](Real t) {
        const Real e = value_of(d->eta(t));
        return std::cos(e) * d->p + std::sin(e) * d->gamma(t);
    };
    return ParamCurve(position, t_range, jet);
}

/// Rectifying curve with apex p over a unit-speed directrix in the pseudo-sphere of T_p S^3_1.
inline ParamCurve construct_rectifying(const PointOnS13& p, const ParamCurve& gamma, const EtaProfile& eta,
                                       Interval t_range) {
    const ConicalSurface cone(p, gamma); // validates the directrix
    return exp_cone_curve(p, gamma, eta, t_range);
}

struct ApexRecovery {
    Vec4 p;
    Real residual = 0.0; // RMS of <p, N>
};

/**
 * Point p of S^3_1 minimizing sum <p, N_i>^2. With G = diag(-1,1,1,1) and
 * M = sum (G N_i)(G N_i)^T the stationary points solve M p = lambda G p; the
 * spacelike eigenvector of G M with the least lambda is taken, signed so that
 * <p, alpha> > 0 at the middle sample.
 */
inline ApexRecovery fit_apex(const std::vector<FramedSample>& samples) {
    if (samples.size() < 8) throw Error(ErrorCode::InsufficientSamples, "need at least 8 samples");
    Real max_tau = 0.0;
    for (const auto& f : samples) max_tau = std::max(max_tau, std::abs(f.tau_g));
    if (max_tau <= tol::geodesic)
        throw Error(ErrorCode::PlanarDegenerate, "curve is planar; its apex is not unique");

    using Mat4 = Eigen::Matrix<Real, 4, 4>;
    using Vec = Eigen::Matrix<Real, 4, 1>;
    const Mat4 G = Vec(-1.0, 1.0, 1.0, 1.0).asDiagonal();
    Mat4 M = Mat4::Zero();
    for (const auto& f : samples) {
        const Vec gn(-f.N[0], f.N[1], f.N[2], f.N[3]);
        M += gn * gn.transpose();
    }
    const Real n = static_cast<Real>(samples.size());
    M /= n;

    Eigen::EigenSolver<Mat4> es(G * M);
    if (es.info() != Eigen::Success) throw Error(ErrorCode::NotRectifying, "eigen-decomposition failed");
    const Real scale = M.trace();
    int null_count = 0;
    std::optional<Vec> best;
    Real best_value = std::numeric_limits<Real>::infinity();
    for (int k = 0; k < 4; ++k) {
        const std::complex<Real> lambda = es.eigenvalues()(k);
        if (std::abs(lambda) <= 1e-12L * scale) ++null_count;
        if (std::abs(lambda.imag()) > 1e-12L * scale) continue;
        const Vec v = es.eigenvectors().col(k).real();
        const Real q = v.dot(G * v);
        if (!(q > 1e-12L * v.squaredNorm())) continue;
        const Real value = v.dot(M * v) / q;
        if (value < best_value) {
            best_value = value;
            best = v / std::sqrt(q);
        }
    }
    if (null_count >= 2) throw Error(ErrorCode::PlanarDegenerate, "normals leave a plane of candidate apexes");
    if (!best) throw Error(ErrorCode::NotRectifying, "no spacelike stationary direction");

    Vec4 p{(*best)(0), (*best)(1), (*best)(2), (*best)(3)};
    if (lorentz_dot(p, samples[samples.size() / 2].alpha) < 0.0) p = -p;
    Real sum = 0.0;
    for (const auto& f : samples) {
        const Real d = lorentz_dot(p, f.N);
        sum += d * d;
    }
    return {p, std::sqrt(sum / n)};
}

/// fit_apex, rejecting curves whose best apex leaves RMS <p,N> above tol::apex_recovery.
inline ApexRecovery recover_apex(const std::vector<FramedSample>& samples) {
    const ApexRecovery a = fit_apex(samples);
    if (a.residual > tol::apex_recovery)
        throw Error(ErrorCode::NotRectifying, "best apex leaves RMS <p,N> = " + std::to_string(a.residual));
    return a;
}

/**
 * One sample of kappa_gamma^2 <= |alpha'|^4 kappa_g^2 / sin^2(eta), with
 * |alpha'|^2 = sin^2(eta) - eta'^2. Equality holds exactly for rectifying
 * curves; cos2_theta = lhs / rhs clamped to [0, 1].
 */
struct ExtremalReport {
    Real t = 0.0;
    Real lhs = 0.0;
    Real rhs = 0.0;
    Real gap = 0.0;
    Real cos2_theta = 0.0;
};

template <class Eta>
std::vector<ExtremalReport> extremal_check(const PointOnS13& p, const ParamCurve& gamma, Eta eta, Interval t_range,
                                           std::size_t count = 201) {
    if (count < 2) throw Error(ErrorCode::InvalidArgument, "need at least two samples");
    const ConicalSurface cone(p, gamma);
    const ParamCurve alpha = exp_cone_curve(p, gamma, eta, t_range);
    std::vector<ExtremalReport> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const Real t = i + 1 == count ? t_range.hi : t_range.lo + t_range.length() * static_cast<Real>(i) / (count - 1);
        const Jet3 e = eta(Jet3::variable(t));
        const Real s = std::sin(e.v);
        const Real speed2 = s * s - e.d1 * e.d1;
        if (!(speed2 > 0.0) || s == 0.0)
            throw Error(ErrorCode::RegularityFailure, "sin^2(eta) - eta'^2 <= 0 at t=" + std::to_string(t), t);
        const Real kg = detail::kinematics(alpha.derivatives(t), t).kappa_g;
        const Real kgamma = sabban_frame(cone.chart(), gamma, t).kappa_gamma;
        ExtremalReport r;
        r.t = t;
        r.lhs = kgamma * kgamma;
        r.rhs = speed2 * speed2 * kg * kg / (s * s);
        r.gap = r.rhs - r.lhs;
        r.cos2_theta = r.rhs > 0.0 ? std::clamp<Real>(r.lhs / r.rhs, 0.0, 1.0) : 1.0;
        out.push_back(r);
    }
    return out;
}

inline Real min_gap(const std::vector<ExtremalReport>& reports) {
    Real m = std::numeric_limits<Real>::infinity();
    for (const auto& r : reports) m = std::min(m, r.gap);
    return m;
}

struct SpiralRoundTripReport {
    Real b = 0.0;
    Real max_kappa_error = 0.0; // max |kappa_g - |kappa0||
    RatioFit fit;
    std::vector<FramedSample> samples;
};

/**
 * Builds the directrix with kappa_gamma = b (cosh^2(t + t0) + a^2)^(-3/2),
 * b = a (1 + a^2) kappa0, in the pseudo-sphere of p = e2, constructs the
 * rectifying curve with eta = arctan(a sech(t + t0)) and re-extracts its
 * curvatures. The geodesic curvature should be the constant |kappa0|.
 */
inline SpiralRoundTripReport corollary_roundtrip(Real a, Real t0, Real kappa0, Interval t_range, Real step = 1e-3,
                                           std::size_t count = 401) {
    if (a == 0.0 || kappa0 == 0.0) throw Error(ErrorCode::InvalidArgument, "a and kappa0 must be nonzero");
    SpiralRoundTripReport r;
    r.b = a * (1.0 + a * a) * kappa0;
    const PointOnS13 p(basis::e2);
    const TangentSphereChart chart(p);
    const Real start = std::clamp(-t0, t_range.lo, t_range.hi);
    const auto directrix =
        synthesize_directrix(chart, spiral_curvature(a, r.b, t0), chart_initial_sample(chart, start), t_range, step);
    const ParamCurve gamma = curve_through_sabban(directrix);
    const ParamCurve alpha = construct_rectifying(p, gamma, EtaProfile(a, t0), t_range);
    r.samples = sample_frames(alpha, t_range, count);
    for (const auto& f : r.samples) r.max_kappa_error = std::max(r.max_kappa_error, std::abs(f.kappa_g - std::abs(kappa0)));
    r.fit = fit_ratio_form(r.samples);
    return r;
}

} // namespace desitter
