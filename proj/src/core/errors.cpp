#include "omtx/errors.hpp"

#include <sstream>

namespace omtx {

namespace {

std::string describe(const char* what, const char* name, double value) {
    std::ostringstream os;
    os.precision(17);
    os << what << " at " << name << " = " << value;
    return os.str();
}

std::string with_line(const std::string& what, int line) {
    if (line <= 0) return what;
    return "line " + std::to_string(line) + ": " + what;
}

}  // namespace

SingularResponse::SingularResponse(double delta)
    : NumericalError(describe("singular response (|f| below floor)", "delta", delta)), delta_(delta) {}

SingularSystem::SingularSystem(double delta)
    : NumericalError(describe("singular linearized system", "delta", delta)), delta_(delta) {}

DivergenceError::DivergenceError(double escape_time)
    : NumericalError(describe("field amplitude exceeded ceiling", "t", escape_time)),
      escape_time_(escape_time) {}

ConfigError::ConfigError(const std::string& what, int line)
    : Error(with_line(what, line)), line_(line) {}

}  // namespace omtx
