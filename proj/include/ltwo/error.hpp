#ifndef LTWO_ERROR_HPP
#define LTWO_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace ltwo {

enum class ErrorCode {
    domain,            // boundary or shape mismatch between morphisms
    duplicate_label,   // FiniteSet with repeated labels
    unknown_label,     // pair component not in dom/cod
    non_injective,     // graph is not a partial injection
    directedness,      // sup/max of a family without an upper bound in it
    consistency,       // internal postcondition or malformed cocone
    precondition,      // operation-specific precondition violated
    numerical_failure, // iteration did not converge
    structural,        // malformed presentation table
    resource,          // search bounds too large
    unknown_suite,
    parse,             // malformed JSON input
};

inline std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::domain: return "domain";
    case ErrorCode::duplicate_label: return "duplicate_label";
    case ErrorCode::unknown_label: return "unknown_label";
    case ErrorCode::non_injective: return "non_injective";
    case ErrorCode::directedness: return "directedness";
    case ErrorCode::consistency: return "consistency";
    case ErrorCode::precondition: return "precondition";
    case ErrorCode::numerical_failure: return "numerical_failure";
    case ErrorCode::structural: return "structural";
    case ErrorCode::resource: return "resource";
    case ErrorCode::unknown_suite: return "unknown_suite";
    case ErrorCode::parse: return "parse";
    }
    return "unknown";
}

/// Exception thrown by every operation in the library. The code lets callers
/// (and the CLI exit-code mapping) distinguish failure classes.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace ltwo

#endif // LTWO_ERROR_HPP
