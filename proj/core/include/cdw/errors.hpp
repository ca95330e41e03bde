#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cdw {

// Base of every error raised by the library. code() is a short stable tag
// used by the CLI when it prints `error: <code>: <detail>`.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& detail)
        : std::runtime_error(detail), code_(std::move(code)) {}

    [[nodiscard]] const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

class DomainError : public Error {
public:
    explicit DomainError(const std::string& detail) : Error("domain", detail) {}
};

// A time stepper produced a non-finite value.
class OverflowError : public Error {
public:
    OverflowError(std::size_t step, const std::string& detail);

    [[nodiscard]] std::size_t step() const noexcept { return step_; }

private:
    std::size_t step_;
};

class QuadratureError : public Error {
public:
    explicit QuadratureError(const std::string& detail) : Error("quadrature", detail) {}
};

// Measurement failed to find the feature it was looking for
// (e.g. no unique kink crossing in a snapshot).
class DiagnosticError : public Error {
public:
    explicit DiagnosticError(const std::string& detail) : Error("diagnostic", detail) {}
};

class ConfigError : public Error {
public:
    ConfigError(std::size_t line, const std::string& detail);

    // 0 when the error is not tied to a config line (e.g. a --set override).
    [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

void require(bool condition, std::string_view what);

}  // namespace cdw
