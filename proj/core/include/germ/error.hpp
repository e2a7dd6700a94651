#pragma once

#include <stdexcept>
#include <string>

namespace germ {

enum class ErrorCode {
    SyntaxError,
    ArityError,
    DomainError,
    Undecided,
    PositivityError,
    DepthExceeded,
    Undecomposable,
    NotStandardDomain,
    NotInfinitelyIncreasing,
    BranchCollision,
    DomainViolation,
    PrecisionExhausted,
    NoSandwichFound,
    InvalidArgument,
};

const char *error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string &what)
        : std::runtime_error(what), code_(code)
    {
    }
    ErrorCode code() const noexcept { return code_; }
    const char *code_name() const noexcept { return error_code_name(code_); }

private:
    ErrorCode code_;
};

class SyntaxError : public Error {
public:
    SyntaxError(std::size_t pos, const std::string &what)
        : Error(ErrorCode::SyntaxError, what + " at position " + std::to_string(pos)),
          pos_(pos)
    {
    }
    std::size_t position() const noexcept { return pos_; }

private:
    std::size_t pos_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string &what)
{
    throw Error(code, what);
}

} // namespace germ
