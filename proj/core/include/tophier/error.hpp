#pragma once

#include <stdexcept>
#include <string>

namespace tophier {

enum class ErrorKind {
    IllFormedExpression,
    UnsupportedDensity,
    SingularSubstitution,
    SolverFailure,
    InternalConsistency,
    VerificationFailure,
    PolynomialityFailure,
    ValidationError,
    ParseError,
    Precondition,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& what) {
    throw Error(kind, what);
}

inline const char* error_kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::IllFormedExpression: return "ill-formed-expression";
        case ErrorKind::UnsupportedDensity: return "unsupported-density";
        case ErrorKind::SingularSubstitution: return "singular-substitution";
        case ErrorKind::SolverFailure: return "solver-failure";
        case ErrorKind::InternalConsistency: return "internal-consistency";
        case ErrorKind::VerificationFailure: return "verification-failure";
        case ErrorKind::PolynomialityFailure: return "polynomiality-failure";
        case ErrorKind::ValidationError: return "validation-error";
        case ErrorKind::ParseError: return "parse-error";
        case ErrorKind::Precondition: return "precondition";
    }
    return "unknown";
}

}  // namespace tophier
