#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "desitter/desitter.hpp"
#include "test_support.hpp"

using namespace desitter;
namespace fs = std::filesystem;

namespace {

constexpr Real pi = std::numbers::pi_v<Real>;

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

class Clock {
public:
    Clock() : start_(std::chrono::steady_clock::now()) {}
    [[nodiscard]] double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

std::string sci(Real v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", static_cast<double>(v));
    return buf;
}

ParamCurve circle_directrix(Real q) {
    const Real r = std::sqrt(1.0 - q * q);
    return ParamCurve::from_generic(
               [r, q](auto t) {
                   using std::cosh;
                   using std::sinh;
                   using T = decltype(t);
                   return BasicVec4<T>{r * sinh(t / r), T(0.0), r * cosh(t / r), T(q)};
               },
               {-1.0, 1.0})
        .as_arc_length(-1.0);
}

std::vector<FramedSample> reextracted(const std::vector<FramedSample>& samples, std::size_t every = 10) {
    const ParamCurve c = curve_through_samples(samples);
    std::vector<Real> s;
    for (std::size_t i = 0; i < samples.size(); i += every) s.push_back(samples[i].s);
    return extract_frames(c, s);
}

CurvatureProfile exponential_torsion() {
    return {[](Real) { return 10.0L; }, [](Real s) { return 2.0 * std::sinh(s) + 2.0 * std::cosh(s); }};
}

void metric_identities(Outcome& o) {
    const Clock clock;
    Real wedge = 0.0, cross = 0.0;
    for (int i = 0; i < 2000; ++i) {
        const Vec4 w = support::random_vec(), x = support::random_vec(), y = support::random_vec(), z = support::random_vec();
        wedge = std::max(wedge, std::abs(lorentz_dot(w, wedge3(x, y, z)) - support::det_oracle(w, x, y, z)));
        const Vec4 q = support::random_point();
        const Vec4 u = support::random_tangent(q), v = support::random_tangent(q), t = support::random_tangent(q);
        cross = std::max(cross, std::abs(lorentz_dot(t, tangent_cross(q, u, v)) + support::det_oracle(q, u, v, t)));
    }
    const double sec = clock.seconds();
    o.detail << "2000 draws, wedge3 err " << sci(wedge) << ", tangent cross err " << sci(cross) << ", " << sec << " s";
    o.require(wedge < 1e-11 && cross < 1e-11, "identity error < 1e-11");
    o.require(sec < 1.0, "runtime < 1 s");
}

void round_trip(Outcome& o) {
    const Clock clock;
    const CurvatureProfile circle{[](Real) { return 1.0L; }, [](Real) { return 0.0L; }};
    Real err = 0.0, gram = 0.0;
    for (const CurvatureProfile& profile : {circle, exponential_torsion()}) {
        const auto samples = synthesize_from_curvatures(profile, canonical_frame(), {-1.0, 1.0}, 1e-3);
        const ParamCurve c = curve_through_samples(samples);
        for (const auto& f : samples) {
            const FramedSample g = frame_at(c, f.s);
            err = std::max({err, std::abs(g.kappa_g - profile.kappa_g(f.s)), std::abs(g.tau_g - profile.tau_g(f.s))});
            gram = std::max(gram, frame_gram_error(f));
        }
    }
    const double sec = clock.seconds();
    o.detail << "profile err " << sci(err) << ", Gram drift " << sci(gram) << ", " << sec << " s";
    o.require(err < 1e-5, "profile error < 1e-5");
    o.require(gram < 1e-9, "Gram drift < 1e-9");
    o.require(sec < 5.0, "runtime < 5 s");
}

void exponential_torsion_fit(Outcome& o) {
    const auto samples = synthesize_from_curvatures(exponential_torsion(), canonical_frame(), {-1.0, 1.0}, 1e-3);
    const RatioFit fit = fit_ratio_form(reextracted(samples));
    o.detail << "A = " << static_cast<double>(fit.A) << ", B = " << static_cast<double>(fit.B)
             << ", rms " << sci(fit.residual_rms) << ", admissible " << fit.admissible;
    o.require(std::abs(fit.A - 0.2) < 1e-4 && std::abs(fit.B - 0.2) < 1e-4, "(A, B) within 1e-4 of (0.2, 0.2)");
    o.require(fit.admissible, "admissible");
}

void cusped_construction(Outcome& o) {
    const Vec4 p = basis::e2;
    const ParamCurve gamma = golden::cusped_directrix_unit_speed_curve();
    const EtaProfile eta(1.0, 0.0);
    const Real r2 = std::sqrt(Real(2.0));
    const Vec4 expected{15.0L / (8.0L * r2), 1.0L / r2, 17.0L / (8.0L * r2), 0.0};
    const Vec4 alpha0 = std::cos(eta(Real(0.0))) * p + std::sin(eta(Real(0.0))) * gamma(Real(0.0));
    const Real start_err = max_abs_diff(alpha0, expected);

    const Interval arc{0.05, 0.8};
    const auto frames = sample_frames(construct_rectifying(p, gamma, eta, arc), arc, 301);
    const ApexReport apex = apex_conditions(frames, p);
    const Real found = max_abs_diff(recover_apex(frames).p, p);
    o.detail << "alpha(0) err " << sci(start_err) << ", apex residual " << sci(apex.max_residual())
             << ", recovered apex err " << sci(found);
    o.require(start_err < 1e-12, "alpha(0) within 1e-12");
    o.require(apex.verdict && apex.max_residual() < 1e-5, "apex conditions < 1e-5");
    o.require(found < 1e-5, "recovered apex within 1e-5");
}

void cone_closure(Outcome& o) {
    const ParamCurve gamma = golden::cusped_directrix_unit_speed_curve();
    const ConicalSurface cone(basis::e2, gamma);
    const EtaProfile eta(1.0, 0.0);
    const Interval range{0.05, 1.7};
    const ParamCurve alpha = construct_rectifying(basis::e2, gamma, eta, range);
    std::vector<ConePathPoint> path;
    Real s = 0.0;
    const int n = 1650;
    for (int i = 0; i <= n; ++i) {
        const Real t = range.lo + range.length() * i / n;
        if (i > 0) s += arc_length(alpha, path.back().u, t);
        path.push_back({s, t, eta(t)});
    }
    const ConeGeodesicReport forward = is_geodesic_on_cone(cone, path);

    const Real l1 = 0.3, l2 = 0.1;
    const ConicalSurface circle_cone(basis::e2, circle_directrix(-0.8));
    const auto g = cone_geodesic_params(l1, l2, 0.0);
    const Interval sr{-0.5, 0.5};
    const auto closed = cone_geodesic_closed_form(g, sr, 1001);
    const ConeGeodesicReport closed_rep = is_geodesic_on_cone(circle_cone, closed);
    const RatioFit fit = fit_ratio_form(sample_frames(cone_geodesic_curve(circle_cone, g, sr), sr, 1001));
    const Real mu_err = std::max(std::abs(fit.A + l2 / g.c), std::abs(fit.B + l1 / g.c));
    o.detail << "construction residual " << sci(forward.max_residual) << ", closed form residual "
             << sci(closed_rep.max_residual) << ", (mu1, mu2) err " << sci(mu_err) << ", rms " << sci(fit.residual_rms);
    o.require(forward.is_geodesic && forward.max_residual < 1e-4, "construction is a cone geodesic");
    o.require(closed_rep.is_geodesic, "closed form passes the geodesic test");
    o.require(mu_err < 1e-3 && fit.rectifying.value_or(false), "ratio fit (-lambda2/c, -lambda1/c) within 1e-3");
}

void cone_geometry(Outcome& o) {
    const Clock clock;
    Real eg = 0.0, k = 0.0;
    for (Real q : {0.8L, -0.8L}) {
        const ConicalSurface S(basis::e2, circle_directrix(q));
        for (int i = 0; i < 50; ++i) {
            const Real u = support::uniform(-0.9, 0.9), v = support::uniform(0.05L, pi - 0.05L);
            const FundamentalForm f = fundamental_form_and_normal(S, u, v);
            const Real sv = std::sin(v);
            eg = std::max({eg, std::abs(f.E + sv * sv), std::abs(f.F), std::abs(f.G - 1.0)});
            k = std::max(k, std::abs(curvatures(S, u, v).K_shape - 1.0));
        }
    }
    const double sec = clock.seconds();
    o.detail << "100 points, (E,F,G) err " << sci(eg) << ", K err " << sci(k) << ", " << sec << " s";
    o.require(eg < 1e-8, "(E,F,G) within 1e-8");
    o.require(k < 1e-5, "K within 1e-5");
    o.require(sec < 2.0, "runtime < 2 s");
}

void spiral_round_trip(Outcome& o) {
    const SpiralRoundTripReport r = corollary_roundtrip(1.0, 0.0, 2.0, {-1.0, 1.0});
    o.detail << "b = " << static_cast<double>(r.b) << ", kappa err " << sci(r.max_kappa_error) << ", rms "
             << sci(r.fit.residual_rms) << ", admissible " << r.fit.admissible;
    o.require(r.b == 4.0, "b = 4");
    o.require(r.max_kappa_error < 1e-3, "kappa_g within 1e-3 of 2");
    o.require(r.fit.admissible && r.fit.residual_rms < 1e-3, "admissible fit with residual < 1e-3");
}

void extremal(Outcome& o) {
    Real equality = 0.0, lowest = 0.0, perturbed = 0.0;
    auto scan = [&](const std::vector<ExtremalReport>& reports, bool rectifying) {
        for (const auto& r : reports) {
            if (rectifying) equality = std::max(equality, std::abs(r.gap) / std::max<Real>(1.0, r.rhs));
            lowest = std::min(lowest, r.gap);
        }
    };
    scan(extremal_check(basis::e2, golden::cusped_directrix_unit_speed_curve(), EtaProfile(1.0, 0.0), {0.05, 1.7}), true);
    for (Real q : {0.8L, -0.8L}) scan(extremal_check(basis::e2, circle_directrix(q), EtaProfile(1.3, 0.4), {-1.0, 1.0}), true);

    auto bent = [](auto t) {
        using std::atan;
        using std::sin;
        return atan(sech(t)) + 0.05 * sin(t);
    };
    const auto off = extremal_check(basis::e2, circle_directrix(0.8), bent, {-1.0, 1.0});
    for (const auto& r : off) perturbed = std::max(perturbed, r.gap);
    scan(off, false);
    scan(extremal_check(basis::e2, circle_directrix(0.8), [](auto t) { return 0.7L + 0.0 * t; }, {-1.0, 1.0}), false);

    o.detail << "equality gap " << sci(equality) << ", perturbed max gap " << sci(perturbed) << ", min gap " << sci(lowest);
    o.require(equality < 1e-6, "equality gap < 1e-6");
    o.require(perturbed > 1e-3, "perturbed gap > 1e-3");
    o.require(lowest >= -1e-6, "no gap below -1e-6");
}

void negative_control(Outcome& o) {
    const CurvatureProfile linear{[](Real) { return 1.0L; }, [](Real s) { return s; }};
    const auto frames = reextracted(synthesize_from_curvatures(linear, canonical_frame(), {-1.0, 1.0}, 1e-3));
    const RatioFit fit = fit_ratio_form(frames);
    bool apex_rejected = false;
    std::string apex_note;
    try {
        const ApexRecovery a = recover_apex(frames);
        apex_rejected = a.residual > 1e-3;
        apex_note = "residual " + sci(a.residual);
    } catch (const Error& e) {
        apex_rejected = e.code() == ErrorCode::NotRectifying;
        apex_note = to_string(e.code());
    }
    o.detail << "fit rms " << sci(fit.residual_rms) << ", recover_apex " << apex_note;
    o.require(fit.residual_rms > 1e-2 && !fit.rectifying.value_or(true), "fit rejects");
    o.require(apex_rejected, "recover_apex rejects");
}

std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

bool well_formed_svg(const std::string& doc, std::size_t& points) {
    if (doc.rfind("<?xml", 0) != 0) return false;
    const auto open = doc.find("<svg ");
    const auto close = doc.rfind("</svg>");
    if (open == std::string::npos || close == std::string::npos || close < open) return false;
    const auto attr = doc.find("points=\"", open);
    if (attr == std::string::npos) return false;
    const auto end = doc.find('"', attr + 8);
    if (end == std::string::npos || doc.compare(end, 3, "\"/>") != 0) return false;
    std::istringstream is(doc.substr(attr + 8, end - attr - 8));
    std::string pair;
    points = 0;
    while (is >> pair) {
        double x = 0, y = 0;
        char comma = 0;
        std::istringstream ps(pair);
        if (!(ps >> x >> comma >> y) || comma != ',' || x < 0 || x > 800 || y < 0 || y > 800) return false;
        ++points;
    }
    return points > 1;
}

void golden_files(Outcome& o, const std::string& cli) {
    const fs::path root = fs::temp_directory_path() / ("desitter_acceptance_" + std::to_string(::getpid()));
    const std::vector<std::string> ids{"4.1", "4.2", "4.3"};
    for (const char* run : {"a", "b"}) {
        for (const auto& id : ids) {
            const fs::path dir = root / run;
            if (cli.empty()) {
                ExampleOptions opt;
                opt.out_dir = dir.string();
                o.require(run_example(id, opt).verdict, "example " + id + " verdict");
            } else {
                const std::string cmd = "\"" + cli + "\" example " + id + " --out \"" + dir.string() + "\" > /dev/null";
                o.require(std::system(cmd.c_str()) == 0, "cli example " + id + " exits 0");
            }
        }
    }
    std::size_t files = 0, svg_points = 0;
    for (const auto& entry : fs::directory_iterator(root / "a")) {
        const fs::path a = entry.path(), b = root / "b" / a.filename();
        const std::string da = slurp(a);
        o.require(fs::exists(b) && da == slurp(b), a.filename().string() + " byte-stable");
        if (a.extension() == ".svg") {
            std::size_t n = 0;
            o.require(well_formed_svg(da, n), a.filename().string() + " well-formed");
            svg_points += n;
        } else if (a.extension() == ".csv") {
            o.require(da.rfind(std::string(csv_header) + "\n", 0) == 0, a.filename().string() + " header");
        }
        ++files;
    }
    o.require(files == 10, "ten output files");
    o.detail << files << " files compared across two runs" << (cli.empty() ? " (library)" : " (cli)") << ", "
             << svg_points << " SVG points";
    fs::remove_all(root);
}

} // namespace

int main(int argc, char** argv) {
    const std::string cli = argc > 1 ? argv[1] : "";
    const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
        {"metric identities", metric_identities},
        {"curvature round trip", round_trip},
        {"exponential torsion ratio fit", exponential_torsion_fit},
        {"cusped rectifying construction", cusped_construction},
        {"rectifying curves and cone geodesics", cone_closure},
        {"conical surface geometry", cone_geometry},
        {"spiral directrix round trip", spiral_round_trip},
        {"extremal inequality", extremal},
        {"non-rectifying control", negative_control},
        {"cli golden files", [&cli](Outcome& o) { golden_files(o, cli); }},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            criteria[i].second(o);
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << " [exception: " << e.what() << "]";
        }
        if (!o.pass) ++failed;
        std::cout << "criterion " << (i + 1) << ": " << (o.pass ? "PASS" : "FAIL") << "  " << criteria[i].first << ": "
                  << o.detail.str() << std::endl;
    }
    std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria passed"
              << std::endl;
    return failed == 0 ? 0 : 1;
}
