#pragma once

#include <stdexcept>
#include <string>

namespace rsc {

enum class ErrorKind {
    InvalidInput,
    InvalidAtThisN,
    ArithmeticOverflow,
    SearchSpaceTooLarge,
    GuardExceeded,
    Infeasible,
};

const char* to_string(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) { throw Error(kind, msg); }

}  // namespace rsc
