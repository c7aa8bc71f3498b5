#pragma once

#include <stdexcept>
#include <string>

namespace gmwb {

// Bad parameter or configuration value. The message names the offending field.
class ValidationError : public std::invalid_argument {
public:
    ValidationError(std::string field, const std::string& what)
        : std::invalid_argument(field + ": " + what), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

// A PDE step or pricing run produced a non-finite value.
class NumericalError : public std::runtime_error {
public:
    NumericalError(const std::string& what, std::size_t level, std::size_t node)
        : std::runtime_error(what + " at (level " + std::to_string(level) + ", node " +
                             std::to_string(node) + ")"),
          level_(level),
          node_(node) {}

    std::size_t level() const noexcept { return level_; }
    std::size_t node() const noexcept { return node_; }

private:
    std::size_t level_;
    std::size_t node_;
};

// A withdrawal outside the admissible set (negative, or larger than the guarantee).
class AdmissibilityError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace gmwb
