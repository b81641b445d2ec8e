#pragma once

#include <stdexcept>
#include <string>

namespace bksim {

enum class ErrorCode {
    InvalidArgument,
    SingularPermeability,
    NoConvergence,
    CflViolation,
    NonFinite,
    UnknownKey,
    TypeMismatch,
    ConstraintViolation,
    MissingKey,
    MalformedLine,
    BadMagic,
    SizeMismatch,
    NonFinitePayload,
    EmptySeries,
    Io,
};

const char* to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above; the
/// message holds the context (key names, line numbers, residuals, paths).
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace bksim
