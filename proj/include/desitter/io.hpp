#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "error.hpp"
#include "frenet.hpp"
#include "minkowski.hpp"
#include "projection.hpp"

namespace desitter {

/// One exported curve sample; NaN marks a field that is not available.
struct CurveRecord {
    double t = 0.0;
    double s = std::numeric_limits<double>::quiet_NaN();
    std::array<double, 4> x{};
    double kappa_g = std::numeric_limits<double>::quiet_NaN();
    double tau_g = std::numeric_limits<double>::quiet_NaN();
};

inline CurveRecord to_record(const FramedSample& f) {
    return {static_cast<double>(f.t), static_cast<double>(f.s),
            {static_cast<double>(f.alpha[0]), static_cast<double>(f.alpha[1]), static_cast<double>(f.alpha[2]),
             static_cast<double>(f.alpha[3])},
            static_cast<double>(f.kappa_g), static_cast<double>(f.tau_g)};
}

inline CurveRecord to_record(Real t, const Vec4& x) {
    CurveRecord r;
    r.t = static_cast<double>(t);
    for (std::size_t i = 0; i < 4; ++i) r.x[i] = static_cast<double>(x[i]);
    return r;
}

inline std::vector<CurveRecord> to_records(const std::vector<FramedSample>& samples) {
    std::vector<CurveRecord> out;
    out.reserve(samples.size());
    for (const auto& f : samples) out.push_back(to_record(f));
    return out;
}

inline Vec4 position(const CurveRecord& r) { return {r.x[0], r.x[1], r.x[2], r.x[3]}; }

enum class Format { Csv, Json, Svg };

inline Format parse_format(std::string_view name) {
    if (name == "csv") return Format::Csv;
    if (name == "json") return Format::Json;
    if (name == "svg") return Format::Svg;
    throw Error(ErrorCode::InvalidArgument, "unknown format '" + std::string(name) + "'");
}

inline const char* extension(Format f) {
    switch (f) {
        case Format::Csv: return ".csv";
        case Format::Json: return ".json";
        case Format::Svg: return ".svg";
    }
    return "";
}

/// %.17g, with "nan" / "inf" / "-inf" for non-finite values.
inline std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline constexpr std::string_view csv_header = "t,s,x1,x2,x3,x4,kappa_g,tau_g";

inline void write_csv(std::ostream& os, const std::vector<CurveRecord>& records) {
    os << csv_header << '\n';
    for (const auto& r : records) {
        os << format_number(r.t) << ',' << format_number(r.s);
        for (double c : r.x) os << ',' << format_number(c);
        os << ',' << format_number(r.kappa_g) << ',' << format_number(r.tau_g) << '\n';
    }
}

namespace detail {
inline double parse_number(const std::string& field, std::size_t line) {
    if (field == "nan") return std::numeric_limits<double>::quiet_NaN();
    if (field == "inf") return std::numeric_limits<double>::infinity();
    if (field == "-inf") return -std::numeric_limits<double>::infinity();
    try {
        std::size_t used = 0;
        const double v = std::stod(field, &used);
        if (used == field.size()) return v;
    } catch (const std::exception&) {
    }
    throw Error(ErrorCode::IoError, "bad number '" + field + "' on line " + std::to_string(line));
}

inline std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}
} // namespace detail

/// Reads a file written by write_csv. Columns are located by header name;
/// only t and x1..x4 are mandatory.
inline std::vector<CurveRecord> read_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw Error(ErrorCode::IoError, "empty curve file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto header = detail::split_csv(line);
    auto column = [&](std::string_view name) -> int {
        const auto it = std::find(header.begin(), header.end(), name);
        return it == header.end() ? -1 : static_cast<int>(it - header.begin());
    };
    const int ct = column("t"), cs = column("s"), ck = column("kappa_g"), cg = column("tau_g");
    const std::array<int, 4> cx{column("x1"), column("x2"), column("x3"), column("x4")};
    if (ct < 0 || std::any_of(cx.begin(), cx.end(), [](int c) { return c < 0; }))
        throw Error(ErrorCode::IoError, "curve file needs columns t, x1, x2, x3, x4");

    std::vector<CurveRecord> out;
    std::size_t n = 1;
    while (std::getline(is, line)) {
        ++n;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto f = detail::split_csv(line);
        if (f.size() != header.size())
            throw Error(ErrorCode::IoError, "line " + std::to_string(n) + " has " + std::to_string(f.size()) +
                                                " fields, header has " + std::to_string(header.size()));
        CurveRecord r;
        r.t = detail::parse_number(f[static_cast<std::size_t>(ct)], n);
        if (cs >= 0) r.s = detail::parse_number(f[static_cast<std::size_t>(cs)], n);
        for (std::size_t i = 0; i < 4; ++i) r.x[i] = detail::parse_number(f[static_cast<std::size_t>(cx[i])], n);
        if (ck >= 0) r.kappa_g = detail::parse_number(f[static_cast<std::size_t>(ck)], n);
        if (cg >= 0) r.tau_g = detail::parse_number(f[static_cast<std::size_t>(cg)], n);
        out.push_back(r);
    }
    return out;
}

/// {"meta": meta, "samples": [{t, s, x: [x1..x4], kappa_g, tau_g}, ...]}; NaN becomes null.
inline nlohmann::ordered_json to_json(const std::vector<CurveRecord>& records, const nlohmann::ordered_json& meta = {}) {
    auto num = [](double v) -> nlohmann::ordered_json {
        if (std::isfinite(v)) return v;
        return nullptr;
    };
    nlohmann::ordered_json samples = nlohmann::ordered_json::array();
    for (const auto& r : records) {
        nlohmann::ordered_json j;
        j["t"] = num(r.t);
        j["s"] = num(r.s);
        j["x"] = {num(r.x[0]), num(r.x[1]), num(r.x[2]), num(r.x[3])};
        j["kappa_g"] = num(r.kappa_g);
        j["tau_g"] = num(r.tau_g);
        samples.push_back(std::move(j));
    }
    nlohmann::ordered_json doc;
    doc["meta"] = meta.is_null() ? nlohmann::ordered_json::object() : meta;
    doc["samples"] = std::move(samples);
    return doc;
}

inline void write_json(std::ostream& os, const std::vector<CurveRecord>& records, const nlohmann::ordered_json& meta = {}) {
    os << desitter::to_json(records, meta).dump(2) << '\n';
}

/**
 * SVG 1.1 document with one polyline through the first two coordinates of
 * each point, scaled uniformly into an 800x800 view box with a 5% margin.
 * The vertical axis points up.
 */
inline void write_svg(std::ostream& os, const std::vector<std::array<double, 2>>& pts, std::string_view title = {}) {
    constexpr double size = 800.0, margin = 0.05 * size;
    double lo_x = 0, hi_x = 0, lo_y = 0, hi_y = 0;
    if (!pts.empty()) {
        lo_x = hi_x = pts.front()[0];
        lo_y = hi_y = pts.front()[1];
        for (const auto& p : pts) {
            lo_x = std::min(lo_x, p[0]);
            hi_x = std::max(hi_x, p[0]);
            lo_y = std::min(lo_y, p[1]);
            hi_y = std::max(hi_y, p[1]);
        }
    }
    const double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-300});
    const double scale = (size - 2.0 * margin) / span;
    const double off_x = margin + 0.5 * ((size - 2.0 * margin) - scale * (hi_x - lo_x));
    const double off_y = margin + 0.5 * ((size - 2.0 * margin) - scale * (hi_y - lo_y));

    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"800\" height=\"800\" viewBox=\"0 0 800 800\">\n";
    if (!title.empty()) os << "  <title>" << title << "</title>\n";
    os << "  <polyline fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" points=\"";
    char buf[64];
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const double x = off_x + scale * (pts[i][0] - lo_x);
        const double y = size - (off_y + scale * (pts[i][1] - lo_y));
        std::snprintf(buf, sizeof buf, "%s%.4f,%.4f", i ? " " : "", x, y);
        os << buf;
    }
    os << "\"/>\n</svg>\n";
}

/// First two stereographic coordinates of every record.
inline std::vector<std::array<double, 2>> project_records(const std::vector<CurveRecord>& records,
                                                          const ProjectionSpec& spec) {
    std::vector<std::array<double, 2>> out;
    out.reserve(records.size());
    for (const auto& r : records) {
        const Vec3 y = stereographic_project(position(r), spec);
        out.push_back({static_cast<double>(y[0]), static_cast<double>(y[1])});
    }
    return out;
}

inline std::ofstream open_output(const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error(ErrorCode::IoError, "cannot open '" + path + "' for writing");
    return os;
}

/// Writes records as CSV, JSON or an SVG of their stereographic projection.
inline void export_curve(const std::vector<CurveRecord>& records, const std::string& path, Format format,
                         const ProjectionSpec& spec = {}, const nlohmann::ordered_json& meta = {}) {
    std::ofstream os = open_output(path);
    switch (format) {
        case Format::Csv: write_csv(os, records); break;
        case Format::Json: write_json(os, records, meta); break;
        case Format::Svg: write_svg(os, project_records(records, spec)); break;
    }
    os.flush();
    if (!os) throw Error(ErrorCode::IoError, "write to '" + path + "' failed");
}

inline std::vector<CurveRecord> import_curve(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw Error(ErrorCode::IoError, "cannot open '" + path + "'");
    return read_csv(is);
}

} // namespace desitter
