#include "omtx/io/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "omtx/errors.hpp"
#include "omtx/io/config.hpp"

namespace omtx::io {

namespace fs = std::filesystem;

void write_file_atomic(const fs::path& path, const std::string& content) {
    std::error_code ec;
    if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create directory for " + path.string() + ": " + ec.message());

    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw IoError("cannot open " + tmp.string() + " for writing");
        os.write(content.data(), static_cast<std::streamsize>(content.size()));
        os.flush();
        if (!os) throw IoError("write failed for " + tmp.string());
    }
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw IoError("cannot rename temporary file onto " + path.string());
    }
}

namespace {

void row(std::ostringstream& os, std::initializer_list<double> values) {
    bool first = true;
    for (double v : values) {
        if (!first) os << ',';
        os << format_double(v);
        first = false;
    }
    os << '\n';
}

}  // namespace

std::string spectrum_csv(const Spectrum& s) {
    std::ostringstream os;
    os << "delta_s,delta,re_b_plus,im_b_plus,re_eps_t,im_eps_t,abs_eps_t_sq,stable\n";
    const double stable = s.steady.stable ? 1.0 : 0.0;
    for (const auto& p : s.points) {
        row(os, {p.delta_s, p.delta, p.b_plus.real(), p.b_plus.imag(), p.eps_t.real(), p.eps_t.imag(),
                 p.power_response, stable});
    }
    return os.str();
}

std::string curve_csv(const CharacteristicCurve& c) {
    std::ostringstream os;
    os << "pump,w0,gain,stable,leading_eig_re\n";
    for (std::size_t i = 0; i < c.pump_axis.size(); ++i) {
        row(os, {c.pump_axis[i], c.w0[i], c.gain[i], c.stable[i] ? 1.0 : 0.0, c.leading_re[i]});
    }
    return os.str();
}

void write_csv(const Spectrum& s, const fs::path& path) { write_file_atomic(path, spectrum_csv(s)); }

void write_csv(const CharacteristicCurve& c, const fs::path& path) { write_file_atomic(path, curve_csv(c)); }

CsvTable read_csv(const fs::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open " + path.string());
    CsvTable table;
    std::string line;
    if (!std::getline(is, line)) throw IoError(path.string() + ": missing header");
    {
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) table.header.push_back(cell);
    }
    int line_no = 1;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::vector<double> values;
        std::size_t pos = 0;
        while (pos <= line.size()) {
            const std::size_t comma = std::min(line.find(',', pos), line.size());
            double v = 0.0;
            const auto [ptr, ec] = std::from_chars(line.data() + pos, line.data() + comma, v);
            if (ec != std::errc{} || ptr != line.data() + comma) {
                throw IoError(path.string() + ": bad number on line " + std::to_string(line_no));
            }
            values.push_back(v);
            pos = comma + 1;
        }
        if (values.size() != table.header.size()) {
            throw IoError(path.string() + ": wrong column count on line " + std::to_string(line_no));
        }
        table.rows.push_back(std::move(values));
    }
    return table;
}

}  // namespace omtx::io
