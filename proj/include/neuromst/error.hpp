#pragma once

#include <stdexcept>
#include <string>

namespace neuromst {

enum class ErrorKind {
    InvalidArgument,   // bad values: negative threshold, malformed flags, ...
    DuplicateSynapse,  // would violate the one-synapse-per-(pre,post) rule
    Precondition,      // operation not legal in current state (multigraph for Prim, ...)
    PastTime,          // injection scheduled before the current clock
    GuardTripped,      // non-termination guard exceeded
    Io,                // file / parse errors
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
    throw Error(kind, message);
}

} // namespace neuromst
