#include "omtx/io/report.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include <json.hpp>

#include "omtx/errors.hpp"

namespace omtx::io {

using nlohmann::json;

bool ConformanceReport::all_passed() const {
    for (const auto& c : checks) {
        if (!c.passed) return false;
    }
    return true;
}

namespace {

// JSON has no NaN/inf; those deviations are written as null.
json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double number_from(const json& j) {
    return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

}  // namespace

std::string ConformanceReport::to_json() const {
    json j;
    j["environment"] = environment;
    j["config_digest"] = config_digest;
    j["all_passed"] = all_passed();
    j["checks"] = json::array();
    for (const auto& c : checks) {
        j["checks"].push_back({{"name", c.name},
                               {"grid", c.grid},
                               {"max_rel_deviation", number_or_null(c.max_rel_deviation)},
                               {"tolerance", c.tolerance},
                               {"passed", c.passed},
                               {"note", c.note}});
    }
    return j.dump(2) + "\n";
}

ConformanceReport ConformanceReport::from_json(std::string_view text) {
    try {
        const json j = json::parse(text);
        ConformanceReport r;
        r.environment = j.at("environment").get<std::string>();
        r.config_digest = j.at("config_digest").get<std::string>();
        for (const auto& c : j.at("checks")) {
            r.checks.push_back(CheckRecord{c.at("name").get<std::string>(), c.at("grid").get<std::string>(),
                                           number_from(c.at("max_rel_deviation")), c.at("tolerance").get<double>(),
                                           c.at("passed").get<bool>(), c.at("note").get<std::string>()});
        }
        return r;
    } catch (const json::exception& e) {
        throw IoError(std::string("malformed conformance report: ") + e.what());
    }
}

std::string digest_hex(std::string_view text) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string environment_stamp() {
    std::string s;
#if defined(__clang__)
    s += "clang " __clang_version__;
#elif defined(__GNUC__)
    s += "gcc " __VERSION__;
#else
    s += "unknown compiler";
#endif
    s += "; C++ " + std::to_string(__cplusplus);
#if defined(__linux__)
    s += "; linux";
#elif defined(__APPLE__)
    s += "; macos";
#elif defined(_WIN32)
    s += "; windows";
#endif
    return s;
}

}  // namespace omtx::io
