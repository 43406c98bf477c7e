#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "omtx/sweep.hpp"

namespace omtx::io {

/// Writes `content` to `path` through a temporary file and a rename, creating
/// parent directories. Throws IoError naming the path.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

std::string spectrum_csv(const Spectrum& s);
std::string curve_csv(const CharacteristicCurve& c);

/// Columns: delta_s, delta, re_b_plus, im_b_plus, re_eps_t, im_eps_t, abs_eps_t_sq, stable.
void write_csv(const Spectrum& s, const std::filesystem::path& path);
/// Columns: pump, w0, gain, stable, leading_eig_re.
void write_csv(const CharacteristicCurve& c, const std::filesystem::path& path);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

/// Reads a numeric CSV as written above. Throws IoError.
CsvTable read_csv(const std::filesystem::path& path);

}  // namespace omtx::io
