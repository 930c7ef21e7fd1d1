#pragma once

#include <stdexcept>
#include <string>

namespace slipline {

// Base for every library error. CLI maps DomainErrorBase subclasses to exit 3.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DomainError : Error { using Error::Error; };
struct YieldViolation : DomainError { using DomainError::DomainError; };
struct SingularCoords : DomainError { using DomainError::DomainError; };
struct NoRootInBracket : DomainError { using DomainError::DomainError; };
struct MultipleRoots : DomainError { using DomainError::DomainError; };
struct QuadratureSingularity : DomainError { using DomainError::DomainError; };
struct QuadratureFailure : DomainError { using DomainError::DomainError; };
struct NoEnvelope : DomainError { using DomainError::DomainError; };
struct NoSignChange : DomainError { using DomainError::DomainError; };
struct StartOutsideDomain : DomainError { using DomainError::DomainError; };
struct StagnationPoint : DomainError { using DomainError::DomainError; };
struct SingularJacobian : DomainError { using DomainError::DomainError; };
struct IndeterminateAtStressIsotropy : DomainError { using DomainError::DomainError; };

struct UnsupportedField : Error { using Error::Error; };
struct BackgroundMismatch : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };

}  // namespace slipline
