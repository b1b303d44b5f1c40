#include "jetgeo/report_io.hpp"

#include "jetgeo/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <utility>

namespace jetgeo {

namespace {

using nlohmann::json;

/// A double as a JSON token: bare number when finite, quoted "inf"/"-inf"
/// otherwise (unbounded interval endpoints must survive serialization).
std::string json_value(double v) {
    if (std::isfinite(v))
        return format_double(v);
    return "\"" + format_double(v) + "\"";
}

double double_from(const json& v, const char* what) {
    if (v.is_number())
        return v.get<double>();
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        if (s == "inf")
            return std::numeric_limits<double>::infinity();
        if (s == "-inf")
            return -std::numeric_limits<double>::infinity();
    }
    throw ConfigError(std::string(what) + ": expected a number or \"inf\"/\"-inf\"");
}

Verdict parse_verdict(const std::string& s) {
    if (s == "no-periodic-geodesics")
        return Verdict::NoPeriodicGeodesics;
    if (s == "degenerate-input")
        return Verdict::DegenerateInput;
    throw ConfigError("unknown verdict: " + s);
}

void write_number_array(std::ostringstream& out, const std::vector<double>& values) {
    out << '[';
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i)
            out << ", ";
        out << json_value(values[i]);
    }
    out << ']';
}

void write_interval(std::ostringstream& out, const HillInterval& h) {
    out << "{\"lo\": " << json_value(h.lo) << ", \"hi\": " << json_value(h.hi)
        << ", \"lo_kind\": \"" << to_string(h.lo_kind) << "\", \"hi_kind\": \""
        << to_string(h.hi_kind) << "\", \"geo_class\": \"" << to_string(h.geo_class) << "\"}";
}

std::vector<double> coefficient_vector(const Polynomial& f) {
    const auto span = f.coeffs();
    return std::vector<double>(span.begin(), span.end());
}

struct Bounds {
    double xmin, xmax, ymin, ymax;
};

Bounds padded_bounds(const std::vector<std::pair<double, double>>& pts) {
    Bounds b{pts.front().first, pts.front().first, pts.front().second, pts.front().second};
    for (const auto& [x, y] : pts) {
        b.xmin = std::min(b.xmin, x);
        b.xmax = std::max(b.xmax, x);
        b.ymin = std::min(b.ymin, y);
        b.ymax = std::max(b.ymax, y);
    }
    const double dx = std::max(b.xmax - b.xmin, 1e-12);
    const double dy = std::max(b.ymax - b.ymin, 1e-12);
    b.xmin -= 0.05 * dx;
    b.xmax += 0.05 * dx;
    b.ymin -= 0.05 * dy;
    b.ymax += 0.05 * dy;
    return b;
}

std::string two_places(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

/// 800x600 canvas, 60px margins, axes through the data origin when it is
/// in view (clamped to the frame edge otherwise), one polyline.
std::string svg_figure(const std::vector<std::pair<double, double>>& pts) {
    const Bounds b = padded_bounds(pts);
    const double px_lo = 60.0, px_hi = 740.0, py_lo = 560.0, py_hi = 40.0;
    const auto map_x = [&](double x) {
        return px_lo + (x - b.xmin) / (b.xmax - b.xmin) * (px_hi - px_lo);
    };
    const auto map_y = [&](double y) {
        return py_lo + (y - b.ymin) / (b.ymax - b.ymin) * (py_hi - py_lo);
    };
    const double axis_x = map_x(std::clamp(0.0, b.xmin, b.xmax));
    const double axis_y = map_y(std::clamp(0.0, b.ymin, b.ymax));

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" "
           "viewBox=\"0 0 800 600\">\n";
    out << "  <line x1=\"" << two_places(px_lo) << "\" y1=\"" << two_places(axis_y) << "\" x2=\""
        << two_places(px_hi) << "\" y2=\"" << two_places(axis_y)
        << "\" stroke=\"#888888\" stroke-width=\"1\"/>\n";
    out << "  <line x1=\"" << two_places(axis_x) << "\" y1=\"" << two_places(py_lo) << "\" x2=\""
        << two_places(axis_x) << "\" y2=\"" << two_places(py_hi)
        << "\" stroke=\"#888888\" stroke-width=\"1\"/>\n";
    out << "  <polyline fill=\"none\" stroke=\"#000000\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i)
            out << ' ';
        out << two_places(map_x(pts[i].first)) << ',' << two_places(map_y(pts[i].second));
    }
    out << "\"/>\n</svg>\n";
    return out.str();
}

}  // namespace

std::string format_double(double v) {
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string to_string(EndpointKind kind) {
    switch (kind) {
    case EndpointKind::Regular: return "regular";
    case EndpointKind::Critical: return "critical";
    case EndpointKind::Unbounded: return "unbounded";
    }
    throw std::invalid_argument("unknown EndpointKind");
}

std::string to_string(GeoClass gc) {
    switch (gc) {
    case GeoClass::XPeriodic: return "x-periodic";
    case GeoClass::EndpointCritical: return "endpoint-critical";
    case GeoClass::HorizontalLine: return "horizontal-line";
    case GeoClass::AbnormalPoint: return "abnormal-point";
    }
    throw std::invalid_argument("unknown GeoClass");
}

EndpointKind parse_endpoint_kind(const std::string& s) {
    if (s == "regular")
        return EndpointKind::Regular;
    if (s == "critical")
        return EndpointKind::Critical;
    if (s == "unbounded")
        return EndpointKind::Unbounded;
    throw ConfigError("unknown endpoint kind: " + s);
}

GeoClass parse_geo_class(const std::string& s) {
    if (s == "x-periodic")
        return GeoClass::XPeriodic;
    if (s == "endpoint-critical")
        return GeoClass::EndpointCritical;
    if (s == "horizontal-line")
        return GeoClass::HorizontalLine;
    if (s == "abnormal-point")
        return GeoClass::AbnormalPoint;
    throw ConfigError("unknown geodesic class: " + s);
}

std::string hill_report_json(const Polynomial& f, const std::vector<HillInterval>& intervals) {
    std::ostringstream out;
    out << "{\n  \"polynomial\": ";
    write_number_array(out, coefficient_vector(f));
    out << ",\n  \"intervals\": [";
    for (std::size_t i = 0; i < intervals.size(); ++i) {
        out << (i ? ",\n    " : "\n    ");
        write_interval(out, intervals[i]);
    }
    out << "\n  ]\n}\n";
    return out.str();
}

std::string period_report_json(const PeriodReport& r) {
    std::ostringstream out;
    out << "{\n  \"polynomial\": ";
    write_number_array(out, coefficient_vector(r.interval.f));
    out << ",\n  \"interval\": ";
    write_interval(out, r.interval);
    out << ",\n  \"period\": " << json_value(r.period);
    out << ",\n  \"action\": " << json_value(r.action);
    out << ",\n  \"delta_theta\": ";
    write_number_array(out, r.delta_theta);
    out << ",\n  \"delta_theta_gram\": ";
    write_number_array(out, r.delta_theta_gram);
    out << ",\n  \"gram\": [";
    for (std::size_t i = 0; i < r.gram.size(); ++i) {
        if (i)
            out << ", ";
        write_number_array(out, r.gram[i]);
    }
    out << "]";
    out << ",\n  \"lambda_min\": " << json_value(r.lambda_min);
    out << ",\n  \"gram_residual\": " << json_value(r.gram_residual);
    out << ",\n  \"identity_residual\": " << json_value(r.identity_residual);
    out << ",\n  \"margin\": " << json_value(r.margin);
    out << ",\n  \"verdict\": \"" << to_string(r.verdict) << "\"\n}\n";
    return out.str();
}

PeriodReport parse_period_report(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("invalid report JSON: ") + e.what());
    }
    try {
        PeriodReport r;
        std::vector<double> coeffs;
        for (const json& c : root.at("polynomial"))
            coeffs.push_back(double_from(c, "polynomial"));
        r.interval.f = Polynomial(coeffs);
        const json& iv = root.at("interval");
        r.interval.lo = double_from(iv.at("lo"), "interval.lo");
        r.interval.hi = double_from(iv.at("hi"), "interval.hi");
        r.interval.lo_kind = parse_endpoint_kind(iv.at("lo_kind").get<std::string>());
        r.interval.hi_kind = parse_endpoint_kind(iv.at("hi_kind").get<std::string>());
        r.interval.geo_class = parse_geo_class(iv.at("geo_class").get<std::string>());
        r.period = double_from(root.at("period"), "period");
        r.action = double_from(root.at("action"), "action");
        for (const json& v : root.at("delta_theta"))
            r.delta_theta.push_back(double_from(v, "delta_theta"));
        for (const json& v : root.at("delta_theta_gram"))
            r.delta_theta_gram.push_back(double_from(v, "delta_theta_gram"));
        for (const json& row : root.at("gram")) {
            std::vector<double> entries;
            for (const json& v : row)
                entries.push_back(double_from(v, "gram"));
            r.gram.push_back(std::move(entries));
        }
        r.lambda_min = double_from(root.at("lambda_min"), "lambda_min");
        r.gram_residual = double_from(root.at("gram_residual"), "gram_residual");
        r.identity_residual = double_from(root.at("identity_residual"), "identity_residual");
        r.margin = double_from(root.at("margin"), "margin");
        r.verdict = parse_verdict(root.at("verdict").get<std::string>());
        return r;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed report: ") + e.what());
    }
}

std::string trajectory_csv(const Polynomial& f, const Trajectory& traj) {
    if (traj.samples.empty())
        throw std::invalid_argument("trajectory_csv: empty trajectory");
    const std::size_t n_thetas = traj.samples.front().thetas.size();
    std::ostringstream out;
    out << "t,x,p_x";
    for (std::size_t i = 0; i < n_thetas; ++i)
        out << ",theta_" << i;
    out << ",energy_drift\n";
    for (const State& s : traj.samples) {
        const double fx = f.eval(s.x);
        const double drift = s.px * s.px + fx * fx - 1.0;
        out << format_double(s.t) << ',' << format_double(s.x) << ',' << format_double(s.px);
        for (double th : s.thetas)
            out << ',' << format_double(th);
        out << ',' << format_double(drift) << '\n';
    }
    return out.str();
}

std::string sweep_report_json(std::uint64_t seed, int count, const std::vector<SweepRow>& rows,
                              int failures) {
    std::ostringstream out;
    out << "{\n  \"seed\": " << seed << ",\n  \"count\": " << count
        << ",\n  \"kept\": " << rows.size() << ",\n  \"failures\": " << failures
        << ",\n  \"rows\": [";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const SweepRow& row = rows[i];
        out << (i ? ",\n    " : "\n    ");
        out << "{\"index\": " << row.index << ", \"degree\": " << row.degree
            << ", \"period\": " << json_value(row.period)
            << ", \"action\": " << json_value(row.action)
            << ", \"lambda_min\": " << json_value(row.lambda_min)
            << ", \"identity_residual\": " << json_value(row.identity_residual)
            << ", \"verdict\": \"" << row.verdict << "\"}";
    }
    out << (rows.empty() ? "]" : "\n  ]");
    out << ",\n  \"aggregate\": ";
    if (rows.empty()) {
        out << "{\"min_lambda_min\": null, \"max_identity_residual\": null}";
    } else {
        double min_lambda = rows.front().lambda_min;
        double max_residual = rows.front().identity_residual;
        for (const SweepRow& row : rows) {
            min_lambda = std::min(min_lambda, row.lambda_min);
            max_residual = std::max(max_residual, row.identity_residual);
        }
        out << "{\"min_lambda_min\": " << json_value(min_lambda)
            << ", \"max_identity_residual\": " << json_value(max_residual) << "}";
    }
    out << "\n}\n";
    return out.str();
}

std::string svg_phase(const HillInterval& h, int samples_per_branch) {
    if (h.geo_class != GeoClass::XPeriodic)
        throw CriticalEndpointError("phase portrait requires an x-periodic interval");
    if (samples_per_branch < 2)
        throw std::invalid_argument("svg_phase: need at least two samples per branch");
    const int n = samples_per_branch;
    std::vector<std::pair<double, double>> pts;
    pts.reserve(static_cast<std::size_t>(2 * n) + 1);
    const auto momentum = [&](double x) {
        const double fx = h.f.eval(x);
        return std::sqrt(std::max(0.0, 1.0 - fx * fx));
    };
    for (int j = 0; j < n; ++j) {
        const double x = h.lo + h.width() * j / (n - 1);
        pts.emplace_back(x, momentum(x));
    }
    for (int j = n - 1; j >= 0; --j) {
        const double x = h.lo + h.width() * j / (n - 1);
        pts.emplace_back(x, -momentum(x));
    }
    pts.push_back(pts.front());  // close the loop
    return svg_figure(pts);
}

std::string svg_projection(const Trajectory& traj) {
    if (traj.samples.empty())
        throw std::invalid_argument("svg_projection: empty trajectory");
    if (traj.samples.front().thetas.empty())
        throw std::invalid_argument("svg_projection: trajectory carries no fiber angles");
    std::vector<std::pair<double, double>> pts;
    pts.reserve(traj.samples.size());
    for (const State& s : traj.samples)
        pts.emplace_back(s.x, s.thetas.front());
    return svg_figure(pts);
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ConfigError("cannot write file: " + path);
    out << content;
    if (!out)
        throw ConfigError("write failed: " + path);
}

}  // namespace jetgeo
