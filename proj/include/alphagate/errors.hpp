#pragma once

#include <stdexcept>
#include <string>

namespace alphagate {

/// Argument outside the mathematical domain of an operation (alpha not in
/// (0,1), k = 0, successes > trials, ...).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Structurally invalid input: a malformed battery, scenario or config.
/// `code()` is a stable identifier such as "InvalidBattery".
class ValidationError : public std::runtime_error {
public:
    ValidationError(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

} // namespace alphagate
