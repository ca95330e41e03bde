#include "cdw/errors.hpp"

namespace cdw {

OverflowError::OverflowError(std::size_t step, const std::string& detail)
    : Error("overflow", "step " + std::to_string(step) + ": " + detail), step_(step) {}

ConfigError::ConfigError(std::size_t line, const std::string& detail)
    : Error("config", line == 0 ? detail : "line " + std::to_string(line) + ": " + detail),
      line_(line) {}

void require(bool condition, std::string_view what) {
    if (!condition) throw DomainError(std::string(what));
}

}  // namespace cdw
