#include "rsft/error.hpp"

namespace rsft {

const char* error_code_name(ErrorCode code)
{
    switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ContextMismatch: return "ContextMismatch";
    case ErrorCode::InhomogeneousInput: return "InhomogeneousInput";
    case ErrorCode::DegreeMismatch: return "DegreeMismatch";
    case ErrorCode::MasterEquationFails: return "MasterEquationFails";
    case ErrorCode::WindowNotClosed: return "WindowNotClosed";
    case ErrorCode::NotOverline: return "NotOverline";
    case ErrorCode::NonTerminating: return "NonTerminating";
    case ErrorCode::CutoffExceeded: return "CutoffExceeded";
    case ErrorCode::ZeroFiltration: return "ZeroFiltration";
    case ErrorCode::NotMaurerCartan: return "NotMaurerCartan";
    case ErrorCode::NotChainMap: return "NotChainMap";
    case ErrorCode::NotHat: return "NotHat";
    case ErrorCode::NotAugmentation: return "NotAugmentation";
    case ErrorCode::BracketNotZero: return "BracketNotZero";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnknownGenerator: return "UnknownGenerator";
    case ErrorCode::OddPowerViolation: return "OddPowerViolation";
    case ErrorCode::DegreeAnnotationMismatch: return "DegreeAnnotationMismatch";
    }
    return "Unknown";
}

} // namespace rsft
