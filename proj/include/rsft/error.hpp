#ifndef RSFT_ERROR_HPP
#define RSFT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace rsft {

enum class ErrorCode {
    InvalidArgument,
    ContextMismatch,
    InhomogeneousInput,
    DegreeMismatch,
    MasterEquationFails,
    WindowNotClosed,
    NotOverline,
    NonTerminating,
    CutoffExceeded,
    ZeroFiltration,
    NotMaurerCartan,
    NotChainMap,
    NotHat,
    NotAugmentation,
    BracketNotZero,
    SyntaxError,
    UnknownGenerator,
    OddPowerViolation,
    DegreeAnnotationMismatch,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code)
    {
    }

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

/// Parse failure carrying a 1-based source location.
class ParseError : public Error {
public:
    ParseError(ErrorCode code, const std::string& message, int line, int column)
        : Error(code, message + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"),
          line_(line), column_(column)
    {
    }

    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

} // namespace rsft

#endif
