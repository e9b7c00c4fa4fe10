#pragma once

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "error.hpp"
#include "frenet.hpp"
#include "golden.hpp"
#include "integrate.hpp"
#include "io.hpp"
#include "projection.hpp"
#include "rectifying.hpp"
#include "sampled_curve.hpp"
#include "synthesis.hpp"

namespace desitter {

struct ExampleOptions {
    std::string out_dir = ".";
    std::optional<Real> step;
    std::optional<Interval> range;
    std::optional<ProjectionSpec> projection;
    bool json = false; // also write JSON next to CSV and SVG
};

struct ExampleResult {
    std::string id;
    bool verdict = false;
    std::vector<std::pair<std::string, std::string>> summary;
    std::vector<std::string> files;

    void add(std::string key, Real value) { summary.emplace_back(std::move(key), format_number(static_cast<double>(value))); }
    void add(std::string key, std::string value) { summary.emplace_back(std::move(key), std::move(value)); }
    void add_flag(std::string key, bool value) { summary.emplace_back(std::move(key), value ? "true" : "false"); }
};

namespace detail {
inline void write_example_files(const std::string& stem, const std::vector<CurveRecord>& records,
                                const ProjectionSpec& spec, const nlohmann::ordered_json& meta,
                                const ExampleOptions& opt, ExampleResult& result) {
    std::filesystem::create_directories(opt.out_dir);
    const std::string base = (std::filesystem::path(opt.out_dir) / stem).string();
    export_curve(records, base + ".csv", Format::Csv);
    export_curve(records, base + ".svg", Format::Svg, spec);
    result.files.push_back(base + ".csv");
    result.files.push_back(base + ".svg");
    if (opt.json) {
        export_curve(records, base + ".json", Format::Json, spec, meta);
        result.files.push_back(base + ".json");
    }
}

inline nlohmann::ordered_json projection_meta(const ProjectionSpec& spec) {
    return {{"pole_axis", spec.pole_axis}, {"pole_sign", spec.pole_sign}};
}

// Frame at t when the curve is timelike and not geodesic there; NaN fields otherwise.
inline CurveRecord record_with_frame(const ParamCurve& c, Real t) {
    CurveRecord r = to_record(t, c(t));
    try {
        const FramedSample f = frame_from_jet(c.derivatives(t), t, 0.0);
        r.kappa_g = static_cast<double>(f.kappa_g);
        r.tau_g = static_cast<double>(f.tau_g);
    } catch (const Error&) {
    }
    return r;
}

inline Real max_sphere_deviation(const std::vector<CurveRecord>& records) {
    Real worst = 0.0;
    for (const auto& r : records) {
        const Vec4 x = position(r);
        worst = std::max(worst, std::abs(lorentz_dot(x, x) - 1.0));
    }
    return worst;
}
} // namespace detail

/// Synthesis from kappa_g = 10, tau_g = 2 sinh s + 2 cosh s and the ratio fit.
inline ExampleResult run_exponential_torsion(const ExampleOptions& opt) {
    ExampleResult res;
    res.id = "4.1";
    const Real step = opt.step.value_or(1e-3);
    const Interval range = opt.range.value_or(golden::exponential_torsion_range);
    const ProjectionSpec spec = opt.projection.value_or(ProjectionSpec{2, +1});
    const Real s_init = std::clamp<Real>(0.0, range.lo, range.hi);
    const auto samples = synthesize_from_curvatures(golden::exponential_torsion_profile(), canonical_frame(s_init), range, step);

    const ParamCurve c = curve_through_samples(samples);
    std::vector<Real> s;
    for (std::size_t i = 0; i < samples.size(); i += std::max<std::size_t>(1, samples.size() / 200)) s.push_back(samples[i].s);
    const RatioFit fit = fit_ratio_form(extract_frames(c, s));
    Real gram = 0.0;
    for (const auto& f : samples) gram = std::max(gram, frame_gram_error(f));

    res.add("samples", std::to_string(samples.size()));
    res.add("A", fit.A);
    res.add("B", fit.B);
    res.add("mu1", fit.mu1);
    res.add("mu2", fit.mu2);
    res.add("s0", fit.s0);
    res.add("residual_rms", fit.residual_rms);
    res.add_flag("admissible", fit.admissible);
    res.add("max_gram_error", gram);
    res.verdict = fit.rectifying.value_or(false);
    res.add_flag("rectifying", res.verdict);

    nlohmann::ordered_json meta{{"example", "4.1"}, {"kappa_g", "10"}, {"tau_g", "2 sinh(s) + 2 cosh(s)"},
                                {"step", static_cast<double>(step)}, {"projection", detail::projection_meta(spec)}};
    detail::write_example_files("example_4_1", to_records(samples), spec, meta, opt, res);
    return res;
}

/// Rectifying curve over the cusped directrix with apex e2 and eta = arctan(sech t).
inline ExampleResult run_cusped_rectifying(const ExampleOptions& opt) {
    ExampleResult res;
    res.id = "4.2";
    const Real step = opt.step.value_or(5e-3);
    const Interval range = opt.range.value_or(Interval{-4.0, 4.0});
    const ProjectionSpec spec = opt.projection.value_or(ProjectionSpec{2, +1});
    const Vec4 p = basis::e2;

    const ParamCurve alpha_param = golden::cusped_cone_curve_param(range);
    std::vector<CurveRecord> alpha, gamma;
    for (Real t : march_grid(range.lo, range.hi, step)) {
        alpha.push_back(detail::record_with_frame(alpha_param, t));
        gamma.push_back(to_record(t, golden::cusped_directrix(t)));
    }

    const Real r2 = std::sqrt(Real(2.0));
    const Vec4 alpha0_expected{15.0L / (8.0L * r2), 1.0L / r2, 17.0L / (8.0L * r2), 0.0};
    const EtaProfile eta(1.0, 0.0);
    const Vec4 alpha0 = std::cos(eta(Real(0.0))) * p + std::sin(eta(Real(0.0))) * golden::cusped_directrix_unit_speed(Real(0.0));
    const Real alpha0_error = std::max(max_abs_diff(alpha0, alpha0_expected), max_abs_diff(golden::cusped_cone_curve(Real(0.0)), alpha0_expected));

    // frame checks on the regular arc between the cusp and the geodesic point
    const Interval arc{0.05, 0.8};
    const ParamCurve alpha_unit = construct_rectifying(p, golden::cusped_directrix_unit_speed_curve(), eta, arc);
    const auto frames = sample_frames(alpha_unit, arc, 301);
    const ApexReport apex = apex_conditions(frames, p);
    const ApexRecovery found = recover_apex(frames);
    const RatioFit fit = fit_ratio_form(frames);

    res.add("samples", std::to_string(alpha.size()));
    res.add("alpha0_error", alpha0_error);
    res.add("max_pN", apex.max_pN);
    res.add("sigma", apex.sigma);
    res.add("sigma_dev", apex.sigma_dev);
    res.add("unit_identity_residual", apex.unit_identity_residual);
    res.add("max_apex_residual", apex.max_residual());
    res.add("recovered_apex_error", max_abs_diff(found.p, p));
    res.add("recovery_residual", found.residual);
    res.add("ratio_residual_rms", fit.residual_rms);
    res.add_flag("admissible", fit.admissible);
    res.verdict = apex.verdict && apex.max_residual() < 1e-5 && max_abs_diff(found.p, p) < 1e-5 && alpha0_error < 1e-12;
    res.add_flag("rectifying", res.verdict);

    nlohmann::ordered_json meta{{"example", "4.2"}, {"apex", {0, 1, 0, 0}}, {"eta", "arctan(sech t)"},
                                {"step", static_cast<double>(step)}, {"projection", detail::projection_meta(spec)}};
    detail::write_example_files("example_4_2_alpha", alpha, spec, meta, opt, res);
    meta["curve"] = "directrix";
    detail::write_example_files("example_4_2_directrix", gamma, spec, meta, opt, res);
    return res;
}

/// Direct evaluation of the secant curve and its directrix; no frame theory.
inline ExampleResult run_secant_curve(const ExampleOptions& opt) {
    ExampleResult res;
    res.id = "4.3";
    const Real step = opt.step.value_or(1e-3);
    const Interval range = opt.range.value_or(golden::secant_range);
    const ProjectionSpec spec = opt.projection.value_or(ProjectionSpec{4, +1});
    std::vector<CurveRecord> alpha, gamma;
    for (Real t : march_grid(range.lo, range.hi, step)) {
        if (std::abs(std::cos(t)) < golden::secant_min_cos) continue;
        alpha.push_back(to_record(t, golden::secant_curve(t)));
        gamma.push_back(to_record(t, golden::secant_directrix(t)));
    }
    const Real dev = detail::max_sphere_deviation(alpha);
    res.add("samples", std::to_string(alpha.size()));
    res.add("max_sphere_deviation", dev);
    res.add("directrix_sphere_deviation", detail::max_sphere_deviation(gamma));
    res.verdict = dev < 1e-9;
    res.add_flag("on_sphere", res.verdict);

    nlohmann::ordered_json meta{{"example", "4.3"}, {"apex", {0, 0, 0, 1}}, {"eta", "arctan(sec t)"},
                                {"step", static_cast<double>(step)}, {"projection", detail::projection_meta(spec)}};
    detail::write_example_files("example_4_3_alpha", alpha, spec, meta, opt, res);
    meta["curve"] = "directrix";
    detail::write_example_files("example_4_3_directrix", gamma, spec, meta, opt, res);
    return res;
}

inline ExampleResult run_example(const std::string& id, const ExampleOptions& opt = {}) {
    if (id == "4.1") return run_exponential_torsion(opt);
    if (id == "4.2") return run_cusped_rectifying(opt);
    if (id == "4.3") return run_secant_curve(opt);
    throw Error(ErrorCode::InvalidArgument, "unknown example '" + id + "' (expected 4.1, 4.2 or 4.3)");
}

} // namespace desitter
