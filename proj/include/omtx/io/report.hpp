#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace omtx::io {

struct CheckRecord {
    std::string name;
    std::string grid;  ///< human-readable grid summary
    double max_rel_deviation = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    std::string note;

    bool operator==(const CheckRecord&) const = default;
};

struct ConformanceReport {
    std::vector<CheckRecord> checks;
    std::string environment;
    std::string config_digest;

    bool all_passed() const;
    std::string to_json() const;
    /// Throws IoError on malformed input.
    static ConformanceReport from_json(std::string_view text);

    bool operator==(const ConformanceReport&) const = default;
};

/// 64-bit FNV-1a digest as 16 hex digits.
std::string digest_hex(std::string_view text);

/// Compiler, language level and platform of this build.
std::string environment_stamp();

}  // namespace omtx::io
