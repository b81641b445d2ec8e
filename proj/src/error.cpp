#include "bksim/error.hpp"

namespace bksim {

const char* to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::SingularPermeability: return "SingularPermeability";
        case ErrorCode::NoConvergence: return "NoConvergence";
        case ErrorCode::CflViolation: return "CflViolation";
        case ErrorCode::NonFinite: return "NonFinite";
        case ErrorCode::UnknownKey: return "UnknownKey";
        case ErrorCode::TypeMismatch: return "TypeMismatch";
        case ErrorCode::ConstraintViolation: return "ConstraintViolation";
        case ErrorCode::MissingKey: return "MissingKey";
        case ErrorCode::MalformedLine: return "MalformedLine";
        case ErrorCode::BadMagic: return "BadMagic";
        case ErrorCode::SizeMismatch: return "SizeMismatch";
        case ErrorCode::NonFinitePayload: return "NonFinitePayload";
        case ErrorCode::EmptySeries: return "EmptySeries";
        case ErrorCode::Io: return "Io";
    }
    return "Unknown";
}

}  // namespace bksim
