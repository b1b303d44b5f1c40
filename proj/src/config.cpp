#include "jetgeo/config.hpp"

#include "jetgeo/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace jetgeo {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& where) {
    for (const auto& item : obj.items()) {
        if (!allowed.count(item.key()))
            throw ConfigError("unknown key \"" + item.key() + "\" in " + where);
    }
}

double number_at(const json& obj, const std::string& key, double fallback) {
    if (!obj.contains(key))
        return fallback;
    if (!obj.at(key).is_number())
        throw ConfigError("\"" + key + "\" must be a number");
    return obj.at(key).get<double>();
}

long long integer_at(const json& obj, const std::string& key, long long fallback) {
    if (!obj.contains(key))
        return fallback;
    if (!obj.at(key).is_number_integer())
        throw ConfigError("\"" + key + "\" must be an integer");
    return obj.at(key).get<long long>();
}

}  // namespace

void ScenarioConfig::validate() const {
    if (k < 0 || k > 15)
        throw ConfigError("k must lie in [0, 15]");
    if (coefficients.size() != static_cast<std::size_t>(k) + 1)
        throw ConfigError("coefficients must have length k + 1");
    for (double c : coefficients) {
        if (!std::isfinite(c))
            throw ConfigError("coefficients must be finite");
    }
    try {
        quadrature.validate();
    } catch (const std::exception& e) {
        throw ConfigError(std::string("quadrature: ") + e.what());
    }
    if (!(ode_tol > 0.0) || !std::isfinite(ode_tol))
        throw ConfigError("ode_tol must be positive and finite");
    if (samples_per_period < 16)
        throw ConfigError("samples_per_period must be at least 16");
    if (interval_hint) {
        const auto& [lo, hi] = *interval_hint;
        if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi))
            throw ConfigError("interval_hint must be a finite pair with lo < hi");
    }
}

ScenarioConfig parse_scenario(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("invalid JSON: ") + e.what());
    }
    if (!root.is_object())
        throw ConfigError("scenario must be a JSON object");
    reject_unknown_keys(root,
                        {"k", "coefficients", "interval_hint", "quadrature", "ode_tol",
                         "samples_per_period", "seed"},
                        "scenario");
    if (!root.contains("k") || !root.contains("coefficients"))
        throw ConfigError("scenario requires \"k\" and \"coefficients\"");

    ScenarioConfig cfg;
    if (!root.at("k").is_number_integer())
        throw ConfigError("\"k\" must be an integer");
    cfg.k = root.at("k").get<int>();

    const json& coeffs = root.at("coefficients");
    if (!coeffs.is_array())
        throw ConfigError("\"coefficients\" must be an array");
    cfg.coefficients.clear();
    for (const json& c : coeffs) {
        if (!c.is_number())
            throw ConfigError("\"coefficients\" entries must be numbers");
        cfg.coefficients.push_back(c.get<double>());
    }

    if (root.contains("interval_hint")) {
        const json& hint = root.at("interval_hint");
        if (!hint.is_array() || hint.size() != 2 || !hint[0].is_number() || !hint[1].is_number())
            throw ConfigError("\"interval_hint\" must be an array [lo, hi]");
        cfg.interval_hint = std::array<double, 2>{hint[0].get<double>(), hint[1].get<double>()};
    }

    if (root.contains("quadrature")) {
        const json& q = root.at("quadrature");
        if (!q.is_object())
            throw ConfigError("\"quadrature\" must be an object");
        reject_unknown_keys(q, {"rel_tol", "abs_tol", "max_level"}, "quadrature");
        cfg.quadrature.rel_tol = number_at(q, "rel_tol", cfg.quadrature.rel_tol);
        cfg.quadrature.abs_tol = number_at(q, "abs_tol", cfg.quadrature.abs_tol);
        cfg.quadrature.max_level =
            static_cast<int>(integer_at(q, "max_level", cfg.quadrature.max_level));
    }

    cfg.ode_tol = number_at(root, "ode_tol", cfg.ode_tol);
    const long long samples = integer_at(root, "samples_per_period", cfg.samples_per_period);
    if (samples < 0 || samples > 1'000'000)
        throw ConfigError("samples_per_period out of range");
    cfg.samples_per_period = static_cast<int>(samples);
    const long long seed = integer_at(root, "seed", 0);
    if (root.contains("seed") && seed < 0)
        throw ConfigError("\"seed\" must be non-negative");
    if (root.contains("seed"))
        cfg.seed = static_cast<std::uint64_t>(seed);

    cfg.validate();
    return cfg;
}

ScenarioConfig load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open scenario file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

const HillInterval& select_interval(const std::vector<HillInterval>& intervals,
                                    const std::optional<std::array<double, 2>>& hint) {
    if (intervals.empty())
        throw NoHillIntervalError("no Hill intervals to select from");
    if (hint) {
        const double mid = 0.5 * ((*hint)[0] + (*hint)[1]);
        for (const auto& h : intervals) {
            if (h.lo <= mid && mid <= h.hi)
                return h;
        }
        for (const auto& h : intervals) {
            if (h.lo <= (*hint)[1] && (*hint)[0] <= h.hi)
                return h;
        }
        throw ConfigError("interval_hint matches no Hill interval");
    }
    for (const auto& h : intervals) {
        if (h.geo_class == GeoClass::XPeriodic)
            return h;
    }
    return intervals.front();
}

}  // namespace jetgeo
