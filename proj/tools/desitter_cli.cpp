#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "desitter/desitter.hpp"

using namespace desitter;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_error = 1;
constexpr int exit_rejected = 2;

struct Common {
    std::string out;
    std::string format = "csv";
    std::string range;
    double step = 0.0;
    int pole_axis = 0;
    int pole_sign = 1;
    double tol = 0.0;
};

Interval parse_range(const std::string& text, Interval fallback) {
    if (text.empty()) return fallback;
    std::string s = text;
    for (char& c : s)
        if (c == ',' || c == ':') c = ' ';
    std::istringstream is(s);
    double lo = 0, hi = 0;
    if (!(is >> lo >> hi) || !(hi > lo)) throw Error(ErrorCode::InvalidArgument, "range must be 'lo,hi' with lo < hi");
    return {lo, hi};
}

Vec4 parse_vec4(const std::string& text) {
    std::string s = text;
    for (char& c : s)
        if (c == ',') c = ' ';
    std::istringstream is(s);
    double a = 0, b = 0, c = 0, d = 0;
    if (!(is >> a >> b >> c >> d)) throw Error(ErrorCode::InvalidArgument, "expected four comma-separated components");
    return {a, b, c, d};
}

ProjectionSpec projection(const Common& c, ProjectionSpec fallback) {
    if (c.pole_axis == 0) return fallback;
    ProjectionSpec spec{c.pole_axis, c.pole_sign};
    check_projection(spec);
    return spec;
}

Real step_or(const Common& c, Real fallback) {
    if (c.step == 0.0) return fallback;
    if (!(c.step > 0.0)) throw Error(ErrorCode::InvalidArgument, "step must be positive");
    return c.step;
}

Real tol_or(const Common& c, Real fallback) { return c.tol > 0.0 ? c.tol : fallback; }

void add_common(CLI::App* cmd, Common& c, bool curve_output) {
    cmd->add_option("--range", c.range, "parameter range lo,hi");
    cmd->add_option("--step", c.step, "sampling or integration step");
    cmd->add_option("--tol", c.tol, "verdict tolerance");
    if (curve_output) {
        cmd->add_option("--out", c.out, "output file (default: stdout)");
        cmd->add_option("--format", c.format, "csv, json or svg")->check(CLI::IsMember({"csv", "json", "svg"}));
        cmd->add_option("--pole-axis", c.pole_axis, "stereographic pole axis (2, 3 or 4) for svg output");
        cmd->add_option("--pole-sign", c.pole_sign, "pole at -sign * e_axis")->check(CLI::IsMember({-1, 1}));
    }
}

void emit(const std::vector<CurveRecord>& records, const Common& c, const nlohmann::ordered_json& meta,
          ProjectionSpec fallback = {2, +1}) {
    const Format f = parse_format(c.format);
    const ProjectionSpec spec = projection(c, fallback);
    if (!c.out.empty()) {
        export_curve(records, c.out, f, spec, meta);
        return;
    }
    switch (f) {
        case Format::Csv: write_csv(std::cout, records); break;
        case Format::Json: write_json(std::cout, records, meta); break;
        case Format::Svg: write_svg(std::cout, project_records(records, spec)); break;
    }
}

// Summary goes to stdout when the curve went to a file, to stderr otherwise.
std::ostream& report(const Common& c) { return c.out.empty() ? std::cerr : std::cout; }

void print(std::ostream& os, const std::string& key, Real v) { os << key << " = " << format_number(static_cast<double>(v)) << '\n'; }
void print(std::ostream& os, const std::string& key, const std::string& v) { os << key << " = " << v << '\n'; }
void print(std::ostream& os, const std::string& key, const char* v) { print(os, key, std::string(v)); }
void print(std::ostream& os, const std::string& key, bool v) { os << key << " = " << (v ? "true" : "false") << '\n'; }

void print_fit(std::ostream& os, const RatioFit& fit) {
    print(os, "A", fit.A);
    print(os, "B", fit.B);
    print(os, "mu1", fit.mu1);
    print(os, "mu2", fit.mu2);
    print(os, "s0", fit.s0);
    print(os, "residual_rms", fit.residual_rms);
    print(os, "admissible", fit.admissible);
    print(os, "near_boundary", fit.near_boundary);
    print(os, "rectifying", fit.rectifying ? (*fit.rectifying ? "true" : "false") : "undecided");
}

void print_apex(std::ostream& os, const ApexReport& r) {
    print(os, "apex", "(" + format_number(static_cast<double>(r.p[0])) + ", " + format_number(static_cast<double>(r.p[1])) +
                          ", " + format_number(static_cast<double>(r.p[2])) + ", " +
                          format_number(static_cast<double>(r.p[3])) + ")");
    print(os, "max_pN", r.max_pN);
    print(os, "sigma", r.sigma);
    print(os, "sigma_dev", r.sigma_dev);
    print(os, "n_fit_rms", r.n_fit_rms);
    print(os, "pperp_dev", r.pperp_dev);
    print(os, "unit_identity_residual", r.unit_identity_residual);
    print(os, "m_fit_rms", r.m_fit_rms);
    print(os, "k_fit_rms", r.k_fit_rms);
    print(os, "eta_coverage", r.eta_coverage);
    print(os, "apex_verdict", r.verdict);
}

/// Frames of the curve through the file's points, at every `stride`-th point.
/// Arc length starts at the first point's s (or t) and is accumulated from the
/// node speeds with the end-corrected trapezoid rule, so only data points are evaluated.
std::vector<FramedSample> frames_from_records(const std::vector<CurveRecord>& records, std::size_t stride,
                                              bool keep_failures, std::vector<CurveRecord>* out = nullptr) {
    std::vector<Real> t;
    std::vector<Vec4> x;
    std::vector<CurveRecord> kept;
    for (std::size_t i = 0; i < records.size(); i += stride) {
        t.push_back(records[i].t);
        x.push_back(position(records[i]));
        kept.push_back(records[i]);
    }
    const ParamCurve c = curve_through_points(t, x);
    std::vector<FramedSample> frames;
    Real s = std::isfinite(kept.front().s) ? kept.front().s : kept.front().t;
    Real prev_speed = 0.0, prev_accel = 0.0;
    bool have_prev = false;
    for (std::size_t i = 0; i < t.size(); ++i) {
        CurveRecord rec = kept[i];
        try {
            const CurveJet j = c.derivatives(t[i]);
            const Real speed = timelike_speed(j.d1, t[i]);
            const Real accel = -lorentz_dot(j.d1, j.d2) / speed;
            if (have_prev) {
                const Real h = t[i] - t[i - 1];
                s += 0.5 * h * (prev_speed + speed) + h * h / 12.0 * (prev_accel - accel);
            }
            prev_speed = speed;
            prev_accel = accel;
            have_prev = true;
            const FramedSample f = frame_from_jet(j, t[i], s);
            frames.push_back(f);
            rec = to_record(f);
        } catch (const Error&) {
            if (!keep_failures) throw;
            have_prev = false;
            rec.kappa_g = rec.tau_g = std::nan("");
        }
        if (out) out->push_back(rec);
    }
    return frames;
}

std::size_t auto_stride(const std::vector<CurveRecord>& records, double spacing) {
    if (records.size() < 2) return 1;
    const double h = (records.back().t - records.front().t) / static_cast<double>(records.size() - 1);
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(spacing / std::abs(h))));
}

ParamCurve pseudo_circle_directrix(Real q) {
    if (!(std::abs(q) < 1.0)) throw Error(ErrorCode::InvalidArgument, "directrix offset q must satisfy |q| < 1");
    const Real r = std::sqrt(1.0 - q * q);
    return ParamCurve::from_generic(
        [r, q](auto t) {
            using std::cosh;
            using std::sinh;
            using T = decltype(t);
            return BasicVec4<T>{r * sinh(t / r), T(0.0), r * cosh(t / r), T(q)};
        },
        {-3.0, 3.0}).as_arc_length(-3.0);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Timelike curves, conical surfaces and rectifying curves in De Sitter 3-space"};
    app.require_subcommand(1);
    int code = exit_ok;

    Common frame_opt;
    std::string frame_in;
    std::size_t frame_stride = 1;
    auto* frame = app.add_subcommand("frame", "frames, kappa_g and tau_g of a sampled curve (CSV with t, x1..x4)");
    frame->add_option("--in", frame_in, "input curve CSV")->required();
    frame->add_option("--stride", frame_stride, "use every n-th point");
    add_common(frame, frame_opt, true);
    frame->callback([&] {
        const auto records = import_curve(frame_in);
        std::vector<CurveRecord> out;
        frames_from_records(records, std::max<std::size_t>(1, frame_stride), true, &out);
        emit(out, frame_opt, {{"command", "frame"}, {"source", frame_in}});
    });

    Common syn_opt;
    double kappa = 1.0, tau_const = 0.0, tau_sinh = 0.0, tau_cosh = 0.0, init_s = 0.0;
    auto* syn = app.add_subcommand("synthesize", "integrate the frame equations for kappa_g = K, tau_g = a + b sinh s + c cosh s");
    syn->add_option("--kappa", kappa, "constant geodesic curvature");
    syn->add_option("--tau-const", tau_const, "a");
    syn->add_option("--tau-sinh", tau_sinh, "b");
    syn->add_option("--tau-cosh", tau_cosh, "c");
    syn->add_option("--init-s", init_s, "arc length of the canonical initial frame");
    add_common(syn, syn_opt, true);
    syn->callback([&] {
        const Real k = kappa, a = tau_const, b = tau_sinh, c = tau_cosh;
        const CurvatureProfile profile{[k](Real) { return k; },
                                       [a, b, c](Real s) { return a + b * std::sinh(s) + c * std::cosh(s); }};
        const Interval range = parse_range(syn_opt.range, {-1.0, 1.0});
        const auto samples = synthesize_from_curvatures(profile, canonical_frame(init_s), range, step_or(syn_opt, 1e-3));
        Real gram = 0.0;
        for (const auto& f : samples) gram = std::max(gram, frame_gram_error(f));
        emit(to_records(samples), syn_opt,
             {{"command", "synthesize"}, {"kappa_g", kappa}, {"tau_g", {tau_const, tau_sinh, tau_cosh}}});
        print(report(syn_opt), "samples", std::to_string(samples.size()));
        print(report(syn_opt), "max_gram_error", gram);
    });

    Common chk_opt;
    std::string chk_in, chk_apex;
    double chk_spacing = 0.01;
    auto* chk = app.add_subcommand("check-rectifying", "sinh/cosh ratio fit and apex conditions for a sampled curve");
    chk->add_option("--in", chk_in, "input curve CSV")->required();
    chk->add_option("--apex", chk_apex, "apex x1,x2,x3,x4 (default: recovered from the normals)");
    chk->add_option("--spacing", chk_spacing, "parameter spacing of the points used for differentiation");
    add_common(chk, chk_opt, false);
    chk->callback([&] {
        auto records = import_curve(chk_in);
        if (!chk_opt.range.empty()) {
            const Interval r = parse_range(chk_opt.range, {});
            std::erase_if(records, [&](const CurveRecord& c) { return c.t < r.lo || c.t > r.hi; });
        }
        const auto frames = frames_from_records(records, auto_stride(records, chk_spacing), false);
        const RatioFit fit = fit_ratio_form(frames, tol_or(chk_opt, tol::rectifying_fit));
        print_fit(std::cout, fit);
        bool ok = fit.rectifying.value_or(false);
        if (!chk_apex.empty()) {
            const ApexReport r = apex_conditions(frames, parse_vec4(chk_apex), tol_or(chk_opt, tol::apex_conditions));
            print_apex(std::cout, r);
            ok = ok && r.verdict;
        } else {
            try {
                const ApexRecovery a = recover_apex(frames);
                print(std::cout, "recovery_residual", a.residual);
                print_apex(std::cout, apex_conditions(frames, a.p, tol_or(chk_opt, tol::apex_conditions)));
            } catch (const Error& e) {
                print(std::cout, "apex", std::string(to_string(e.code())));
                if (e.code() == ErrorCode::NotRectifying) ok = false;
            }
        }
        code = ok ? exit_ok : exit_rejected;
    });

    Common con_opt;
    std::string directrix = "cusped";
    double a = 1.0, t0 = 0.0, kappa0 = 2.0, q = -0.8;
    std::size_t con_count = 0;
    auto* con = app.add_subcommand("construct", "rectifying curve cos(eta) p + sin(eta) gamma with eta = arctan(a sech(t + t0)), p = e2");
    con->add_option("--directrix", directrix, "cusped, spiral or circle")->check(CLI::IsMember({"cusped", "spiral", "circle"}));
    con->add_option("--a", a, "eta amplitude (nonzero)");
    con->add_option("--t0", t0, "eta shift");
    con->add_option("--kappa0", kappa0, "target geodesic curvature for the spiral directrix");
    con->add_option("--q", q, "offset of the circle directrix, kappa_gamma = q / sqrt(1 - q^2)");
    con->add_option("--count", con_count, "number of output samples");
    add_common(con, con_opt, true);
    con->callback([&] {
        const PointOnS13 p(basis::e2);
        const EtaProfile eta(a, t0);
        std::optional<ParamCurve> gamma;
        Interval range{-1.0, 1.0};
        if (directrix == "cusped") {
            gamma = golden::cusped_directrix_unit_speed_curve();
            range = parse_range(con_opt.range, {0.05, 0.8});
        } else if (directrix == "spiral") {
            range = parse_range(con_opt.range, {-1.0, 1.0});
            const TangentSphereChart chart(p);
            const Real b = a * (1.0 + a * a) * kappa0;
            const Real start = std::clamp<Real>(-t0, range.lo, range.hi);
            gamma = curve_through_sabban(synthesize_directrix(chart, spiral_curvature(a, b, t0),
                                                              chart_initial_sample(chart, start), range, 1e-3));
        } else {
            gamma = pseudo_circle_directrix(q);
            range = parse_range(con_opt.range, {-1.0, 1.0});
        }
        const ParamCurve alpha = construct_rectifying(p, *gamma, eta, range);
        const std::size_t n = con_count ? con_count
                                        : static_cast<std::size_t>(std::llround(range.length() / step_or(con_opt, 2.5e-3))) + 1;
        const auto frames = sample_frames(alpha, range, n);
        const RatioFit fit = fit_ratio_form(frames, tol_or(con_opt, tol::rectifying_fit));
        const ApexReport apex = apex_conditions(frames, p);
        emit(to_records(frames), con_opt,
             {{"command", "construct"}, {"directrix", directrix}, {"a", a}, {"t0", t0}, {"apex", {0, 1, 0, 0}}});
        print_fit(report(con_opt), fit);
        print_apex(report(con_opt), apex);
        code = fit.rectifying.value_or(false) && apex.verdict ? exit_ok : exit_rejected;
    });

    Common cg_opt;
    double l1 = 0.3, l2 = 0.1, s0 = 0.0, cg_q = -0.8;
    auto* cg = app.add_subcommand("cone-geodesic", "closed-form geodesic of the cone over a circle directrix, apex e2");
    cg->add_option("--lambda1", l1, "lambda1");
    cg->add_option("--lambda2", l2, "lambda2");
    cg->add_option("--s0", s0, "arc-length shift");
    cg->add_option("--q", cg_q, "offset of the circle directrix");
    add_common(cg, cg_opt, true);
    cg->callback([&] {
        const ConicalSurface S(basis::e2, pseudo_circle_directrix(cg_q));
        const auto g = cone_geodesic_params(l1, l2, s0);
        const Interval range = parse_range(cg_opt.range, {-0.5, 0.5});
        const Real step = step_or(cg_opt, 1e-3);
        const std::size_t n = static_cast<std::size_t>(std::llround(range.length() / step)) + 1;
        const auto path = cone_geodesic_closed_form(g, range, n);
        const ConeGeodesicReport rep = is_geodesic_on_cone(S, path, tol_or(cg_opt, tol::cone_geodesic));
        const auto frames = sample_frames(cone_geodesic_curve(S, g, range), range, n);
        const RatioFit fit = fit_ratio_form(frames);
        emit(to_records(frames), cg_opt, {{"command", "cone-geodesic"}, {"lambda", {l1, l2}}, {"s0", s0}, {"q", cg_q}});
        auto& os = report(cg_opt);
        print(os, "c", g.c);
        print(os, "max_u_equation", rep.max_u_equation);
        print(os, "max_v_equation", rep.max_v_equation);
        print(os, "max_tangential", rep.max_tangential);
        print(os, "max_speed", rep.max_speed);
        print(os, "is_geodesic", rep.is_geodesic);
        print_fit(os, fit);
        code = rep.is_geodesic ? exit_ok : exit_rejected;
    });

    Common prj_opt;
    std::string prj_in;
    auto* prj = app.add_subcommand("project", "stereographic projection of a curve CSV");
    prj->add_option("--in", prj_in, "input curve CSV")->required();
    add_common(prj, prj_opt, true);
    prj->callback([&] {
        const auto records = import_curve(prj_in);
        const ProjectionSpec spec = projection(prj_opt, {2, +1});
        const Format f = parse_format(prj_opt.format);
        std::ofstream file;
        if (!prj_opt.out.empty()) file = open_output(prj_opt.out);
        std::ostream& os = prj_opt.out.empty() ? std::cout : file;
        if (f == Format::Svg) {
            write_svg(os, project_records(records, spec));
        } else if (f == Format::Csv) {
            os << "t,y1,y2,y3\n";
            for (const auto& r : records) {
                const Vec3 y = stereographic_project(position(r), spec);
                os << format_number(r.t) << ',' << format_number(static_cast<double>(y[0])) << ','
                   << format_number(static_cast<double>(y[1])) << ',' << format_number(static_cast<double>(y[2])) << '\n';
            }
        } else {
            nlohmann::ordered_json doc;
            doc["meta"] = {{"pole_axis", spec.pole_axis}, {"pole_sign", spec.pole_sign}, {"source", prj_in}};
            doc["samples"] = nlohmann::ordered_json::array();
            for (const auto& r : records) {
                const Vec3 y = stereographic_project(position(r), spec);
                doc["samples"].push_back({{"t", r.t}, {"y", {static_cast<double>(y[0]), static_cast<double>(y[1]), static_cast<double>(y[2])}}});
            }
            os << doc.dump(2) << '\n';
        }
        if (!os) throw Error(ErrorCode::IoError, "write failed");
    });

    Common ex_opt;
    std::string ex_id, ex_dir = ".";
    auto* ex = app.add_subcommand("example", "reproduce a worked example: 4.1, 4.2 or 4.3");
    ex->add_option("id", ex_id, "example id")->required()->check(CLI::IsMember({"4.1", "4.2", "4.3"}));
    ex->add_option("--out", ex_dir, "output directory");
    ex->add_option("--format", ex_opt.format, "csv (CSV and SVG) or json (also JSON)")->check(CLI::IsMember({"csv", "json", "svg"}));
    ex->add_option("--range", ex_opt.range, "parameter range lo,hi");
    ex->add_option("--step", ex_opt.step, "sampling or integration step");
    ex->add_option("--pole-axis", ex_opt.pole_axis, "stereographic pole axis (2, 3 or 4)");
    ex->add_option("--pole-sign", ex_opt.pole_sign, "pole at -sign * e_axis")->check(CLI::IsMember({-1, 1}));
    ex->add_option("--tol", ex_opt.tol, "unused; accepted for a uniform flag set");
    ex->callback([&] {
        ExampleOptions opt;
        opt.out_dir = ex_dir;
        if (ex_opt.step != 0.0) opt.step = step_or(ex_opt, 1e-3);
        if (!ex_opt.range.empty()) opt.range = parse_range(ex_opt.range, {});
        if (ex_opt.pole_axis != 0) opt.projection = projection(ex_opt, {});
        opt.json = ex_opt.format == "json";
        const ExampleResult r = run_example(ex_id, opt);
        print(std::cout, "example", r.id);
        for (const auto& [k, v] : r.summary) print(std::cout, k, v);
        for (const auto& f : r.files) print(std::cout, "wrote", f);
        code = r.verdict ? exit_ok : exit_rejected;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_error;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_error;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_error;
    }
    return code;
}
