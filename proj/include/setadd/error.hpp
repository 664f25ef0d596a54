#pragma once

#include <stdexcept>
#include <string>

namespace setadd {

enum class ErrorKind {
    invalid_argument,   // out-of-range element, empty input, malformed request
    invalid_spec,       // group / automorphism descriptor fails validation
    parse,              // unreadable JSON or set literal
    cap_exceeded,       // a configured size cap would be exceeded
    hypothesis,         // a verifier's theorem hypothesis does not hold
    group_mismatch,     // operands belong to different groups
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what)
{
    throw Error(kind, what);
}

} // namespace setadd
