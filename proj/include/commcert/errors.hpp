#pragma once

#include <stdexcept>
#include <string>

namespace commcert {

/// Base for domain refusals (well-formed input the theory rejects).
/// The CLI maps these to exit code 1; malformed input maps to 2.
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionError : DomainError {
    using DomainError::DomainError;
};

struct FieldMismatchError : DomainError {
    using DomainError::DomainError;
};

struct ZeroElementError : DomainError {
    using DomainError::DomainError;
};

struct IsAFieldError : DomainError {
    using DomainError::DomainError;
};

struct NotAnIdentityError : DomainError {
    using DomainError::DomainError;
};

struct NotOnSphereError : DomainError {
    using DomainError::DomainError;
};

struct TooLargeError : DomainError {
    using DomainError::DomainError;
};

/// Raised when a bounded randomized search hits its retry cap.
/// Carries a transcript of the attempts for failure forensics.
struct SearchExhaustedError : DomainError {
    std::string transcript;
    SearchExhaustedError(const std::string& what, std::string log)
        : DomainError(what), transcript(std::move(log)) {}
};

/// Malformed input (bad JSON, schema violation, unparseable scalar).
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace commcert
