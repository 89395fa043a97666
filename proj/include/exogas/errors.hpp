#pragma once

#include <stdexcept>
#include <string>

namespace exogas {

// Error taxonomy shared by all modules. Every failure mode named in a
// module contract maps to one of these types.

struct StatePositivityViolation : std::domain_error {
    explicit StatePositivityViolation(const std::string& what)
        : std::domain_error(what) {}
};

struct DegenerateStencil : std::domain_error {
    explicit DegenerateStencil(const std::string& what)
        : std::domain_error(what) {}
};

struct InvalidDensity : std::domain_error {
    explicit InvalidDensity(const std::string& what)
        : std::domain_error(what) {}
};

struct InvalidArgument : std::invalid_argument {
    explicit InvalidArgument(const std::string& what)
        : std::invalid_argument(what) {}
};

struct NewtonDivergence : std::runtime_error {
    explicit NewtonDivergence(const std::string& what)
        : std::runtime_error(what) {}
};

struct StepFailure : std::runtime_error {
    explicit StepFailure(const std::string& what)
        : std::runtime_error(what) {}
};

struct HistoryGap : std::logic_error {
    explicit HistoryGap(const std::string& what)
        : std::logic_error(what) {}
};

struct OracleUnstable : std::runtime_error {
    explicit OracleUnstable(const std::string& what)
        : std::runtime_error(what) {}
};

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what)
        : std::runtime_error(what) {}
};

}  // namespace exogas
