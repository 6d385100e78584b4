#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace oppenheim {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Caller supplied an empty or malformed argument (grid, table, ...).
class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A numerical procedure did not reach its tolerance.
class AccuracyError : public std::runtime_error {
public:
    AccuracyError(const std::string& what, double achieved)
        : std::runtime_error(what + " (achieved error estimate " + format(achieved) + ")"),
          achieved_(achieved) {}

    double achieved() const noexcept { return achieved_; }

private:
    static std::string format(double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3g", v);
        return buf;
    }

    double achieved_;
};

/// Oppenheim scheme misuse, e.g. phi == 0 makes delta degenerate.
class SchemeError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Experiment/family/weight configuration problem. `field` names the offending key.
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& field, const std::string& message)
        : std::runtime_error(field.empty() ? message : field + ": " + message), field_(field), message_(message) {}

    const std::string& field() const noexcept { return field_; }
    const std::string& message() const noexcept { return message_; }

private:
    std::string field_;
    std::string message_;
};

/// A run refused because its weight or family hypotheses fail numerically.
class ConditionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace oppenheim
