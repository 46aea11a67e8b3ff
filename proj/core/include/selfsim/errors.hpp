#ifndef SELFSIM_ERRORS_HPP
#define SELFSIM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace selfsim {

struct InvalidInputError : std::runtime_error {
    explicit InvalidInputError(const std::string& msg) : std::runtime_error(msg) {}
};

struct BudgetExceededError : std::runtime_error {
    explicit BudgetExceededError(const std::string& msg) : std::runtime_error(msg) {}
};

struct PreconditionError : std::runtime_error {
    explicit PreconditionError(const std::string& msg) : std::runtime_error(msg) {}
};

// Exact division is supported over the rationals and over simple extensions
// Q(alpha).  Inverting an element that genuinely involves several distinct
// irrational generators is rejected rather than approximated.
struct UnsupportedFieldError : PreconditionError {
    explicit UnsupportedFieldError(const std::string& msg) : PreconditionError(msg) {}
};

// A certified identity that arithmetic guarantees failed to verify.
struct InternalError : std::logic_error {
    explicit InternalError(const std::string& msg) : std::logic_error(msg) {}
};

}  // namespace selfsim

#endif
