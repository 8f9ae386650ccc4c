#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace csg {

enum class ErrorKind {
    Singular,
    NotSymmetric,
    VariableUnknown,
    ParseError,
    NotSelfAdjoint,
    STooSmall,
    DimMismatch,
    KTooLarge,
    KTooSmall,
    NotDefinitePlane,
    NoAuxForm,
    DegenerateAtPoint,
    BadVariables,
    NormalizationFailed,
    PhiNotAdmissible,
    NotRiemannian,
    InvalidModel,
};

constexpr std::string_view to_string(ErrorKind k) {
    switch (k) {
    case ErrorKind::Singular: return "Singular";
    case ErrorKind::NotSymmetric: return "NotSymmetric";
    case ErrorKind::VariableUnknown: return "VariableUnknown";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::NotSelfAdjoint: return "NotSelfAdjoint";
    case ErrorKind::STooSmall: return "STooSmall";
    case ErrorKind::DimMismatch: return "DimMismatch";
    case ErrorKind::KTooLarge: return "KTooLarge";
    case ErrorKind::KTooSmall: return "KTooSmall";
    case ErrorKind::NotDefinitePlane: return "NotDefinitePlane";
    case ErrorKind::NoAuxForm: return "NoAuxForm";
    case ErrorKind::DegenerateAtPoint: return "DegenerateAtPoint";
    case ErrorKind::BadVariables: return "BadVariables";
    case ErrorKind::NormalizationFailed: return "NormalizationFailed";
    case ErrorKind::PhiNotAdmissible: return "PhiNotAdmissible";
    case ErrorKind::NotRiemannian: return "NotRiemannian";
    case ErrorKind::InvalidModel: return "InvalidModel";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above so that
/// callers (and tests) can dispatch on it without parsing messages.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace csg
